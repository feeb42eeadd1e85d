#pragma once

#include <cstdint>
#include <vector>

#include "fatplanes/prime_field.hpp"

namespace fatplanes {

// Dense row-major matrix over GF(p).  Treated as a value: rank computation
// works on a private copy.
class PrimeFieldMatrix {
 public:
  PrimeFieldMatrix(std::size_t rows, std::size_t cols, const PrimeField& f)
      : rows_(rows), cols_(cols), field_(f), a_(rows * cols, 0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const PrimeField& field() const { return field_; }

  std::uint64_t at(std::size_t i, std::size_t j) const {
    return a_[i * cols_ + j];
  }
  void set(std::size_t i, std::size_t j, std::uint64_t v) {
    a_[i * cols_ + j] = v % field_.modulus();
  }

  PrimeFieldMatrix transposed() const;
  const std::vector<std::uint64_t>& data() const { return a_; }

 private:
  std::size_t rows_, cols_;
  PrimeField field_;
  std::vector<std::uint64_t> a_;
};

// Row-echelon rank, partial pivoting by first nonzero entry.
// The serial version is the reference; the parallel one distributes the row
// updates with OpenMP and returns bit-identical results (exact arithmetic).
// mat_rank picks the parallel kernel for matrices big enough to amortize the
// fork overhead.
std::size_t mat_rank_serial(const PrimeFieldMatrix& m);
std::size_t mat_rank_parallel(const PrimeFieldMatrix& m);
std::size_t mat_rank(const PrimeFieldMatrix& m);

// kernel (null space) basis vectors of m, one vector per non-pivot column
std::vector<std::vector<std::uint64_t>> mat_kernel(const PrimeFieldMatrix& m);

PrimeFieldMatrix random_matrix(std::size_t rows, std::size_t cols,
                               const PrimeField& f, std::uint64_t seed);

}  // namespace fatplanes
