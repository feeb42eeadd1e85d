#include "fatplanes/fp_matrix.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include "fatplanes/rng.hpp"

namespace fatplanes {

PrimeFieldMatrix PrimeFieldMatrix::transposed() const {
  PrimeFieldMatrix out(cols_, rows_, field_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out.set(j, i, at(i, j));
  return out;
}

namespace {

// Echelon elimination on a working copy.  `parallel` only changes who runs the
// row updates; the arithmetic is identical either way.
std::size_t echelon_rank(const PrimeFieldMatrix& m, bool parallel,
                         std::vector<std::uint64_t>* work_out,
                         std::vector<std::size_t>* pivot_cols) {
  const PrimeField& f = m.field();
  const std::size_t R = m.rows(), C = m.cols();
  std::vector<std::uint64_t> a = m.data();
  std::size_t rank = 0;
  for (std::size_t col = 0; col < C && rank < R; ++col) {
    std::size_t piv = rank;
    while (piv < R && a[piv * C + col] == 0) ++piv;
    if (piv == R) continue;
    if (piv != rank)
      for (std::size_t j = col; j < C; ++j)
        std::swap(a[piv * C + j], a[rank * C + j]);
    const std::uint64_t inv_piv = f.inv(a[rank * C + col]);
    const std::size_t pivot_row = rank;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#endif
    for (std::size_t i = pivot_row + 1; i < R; ++i) {
      std::uint64_t factor = f.mul(a[i * C + col], inv_piv);
      if (factor == 0) continue;
      for (std::size_t j = col; j < C; ++j)
        a[i * C + j] = f.sub(a[i * C + j], f.mul(factor, a[pivot_row * C + j]));
    }
    if (pivot_cols) pivot_cols->push_back(col);
    ++rank;
  }
  if (work_out) *work_out = std::move(a);
  (void)parallel;
  return rank;
}

}  // namespace

std::size_t mat_rank_serial(const PrimeFieldMatrix& m) {
  return echelon_rank(m, false, nullptr, nullptr);
}

std::size_t mat_rank_parallel(const PrimeFieldMatrix& m) {
  return echelon_rank(m, true, nullptr, nullptr);
}

std::size_t mat_rank(const PrimeFieldMatrix& m) {
  // below ~64 rows the fork/join overhead dominates
  return m.rows() >= 64 ? mat_rank_parallel(m) : mat_rank_serial(m);
}

std::vector<std::vector<std::uint64_t>> mat_kernel(const PrimeFieldMatrix& m) {
  const PrimeField& f = m.field();
  const std::size_t R = m.rows(), C = m.cols();
  std::vector<std::uint64_t> a;
  std::vector<std::size_t> pivots;
  std::size_t rank = echelon_rank(m, false, &a, &pivots);

  // back-substitute to reduced echelon form
  for (std::size_t k = rank; k-- > 0;) {
    std::size_t col = pivots[k];
    std::uint64_t inv_piv = f.inv(a[k * C + col]);
    for (std::size_t j = col; j < C; ++j)
      a[k * C + j] = f.mul(a[k * C + j], inv_piv);
    for (std::size_t i = 0; i < k; ++i) {
      std::uint64_t factor = a[i * C + col];
      if (factor == 0) continue;
      for (std::size_t j = col; j < C; ++j)
        a[i * C + j] = f.sub(a[i * C + j], f.mul(factor, a[k * C + j]));
    }
  }

  std::vector<bool> is_pivot(C, false);
  for (std::size_t col : pivots) is_pivot[col] = true;
  std::vector<std::vector<std::uint64_t>> basis;
  for (std::size_t free_col = 0; free_col < C; ++free_col) {
    if (is_pivot[free_col]) continue;
    std::vector<std::uint64_t> v(C, 0);
    v[free_col] = 1;
    for (std::size_t k = 0; k < rank; ++k)
      v[pivots[k]] = f.neg(a[k * C + free_col]);
    basis.push_back(std::move(v));
  }
  (void)R;
  return basis;
}

PrimeFieldMatrix random_matrix(std::size_t rows, std::size_t cols,
                               const PrimeField& f, std::uint64_t seed) {
  PrimeFieldMatrix m(rows, cols, f);
  SplitMix64 g(seed);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m.set(i, j, g.below(f.modulus()));
  return m;
}

}  // namespace fatplanes
