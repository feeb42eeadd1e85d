#pragma once

#include <cstdint>
#include <vector>

#include "fatplanes/prime_field.hpp"

namespace fatplanes {

// Uniform element operations so polynomial evaluation and elimination code
// can run over GF(p) and GF(p^2) alike.

struct BaseOps {
  using V = std::uint64_t;
  const PrimeField& f;

  V zero() const { return 0; }
  V one() const { return 1; }
  V from_residue(std::uint64_t r) const { return r % f.modulus(); }
  bool is_zero(const V& x) const { return x == 0; }
  V add(const V& x, const V& y) const { return f.add(x, y); }
  V sub(const V& x, const V& y) const { return f.sub(x, y); }
  V mul(const V& x, const V& y) const { return f.mul(x, y); }
  V neg(const V& x) const { return f.neg(x); }
  V inv(const V& x) const { return f.inv(x); }
};

struct ExtOps {
  using V = QuadExt::Elem;
  const QuadExt& e;

  V zero() const { return e.zero(); }
  V one() const { return e.one(); }
  V from_residue(std::uint64_t r) const {
    return e.from_base(r % e.base().modulus());
  }
  bool is_zero(const V& x) const { return e.is_zero(x); }
  V add(const V& x, const V& y) const { return e.add(x, y); }
  V sub(const V& x, const V& y) const { return e.sub(x, y); }
  V mul(const V& x, const V& y) const { return e.mul(x, y); }
  V neg(const V& x) const { return e.neg(x); }
  V inv(const V& x) const { return e.inv(x); }
};

// Row-echelon rank of a small dense matrix given as rows; works over any Ops.
template <class Ops>
std::size_t generic_rank(const Ops& ops,
                         std::vector<std::vector<typename Ops::V>> rows) {
  if (rows.empty()) return 0;
  std::size_t R = rows.size(), C = rows[0].size(), rank = 0;
  for (std::size_t col = 0; col < C && rank < R; ++col) {
    std::size_t piv = rank;
    while (piv < R && ops.is_zero(rows[piv][col])) ++piv;
    if (piv == R) continue;
    std::swap(rows[piv], rows[rank]);
    auto inv_piv = ops.inv(rows[rank][col]);
    for (std::size_t i = rank + 1; i < R; ++i) {
      if (ops.is_zero(rows[i][col])) continue;
      auto factor = ops.mul(rows[i][col], inv_piv);
      for (std::size_t j = col; j < C; ++j)
        rows[i][j] = ops.sub(rows[i][j], ops.mul(factor, rows[rank][j]));
    }
    ++rank;
  }
  return rank;
}

}  // namespace fatplanes
