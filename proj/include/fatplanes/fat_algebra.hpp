#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "fatplanes/combinatorics.hpp"
#include "fatplanes/fp_matrix.hpp"
#include "fatplanes/monomials.hpp"
#include "fatplanes/prime_field.hpp"

namespace fatplanes {

// Homogeneous element of O_L (or O_H via zero x_0-exponents): coefficients
// over ol_basis(r, t, degree) in basis order.
struct RingElement {
  int degree = 0;
  std::vector<std::uint64_t> coeffs;
  bool is_zero() const;
};

// System of homogeneous equations over GF(p) in x_0..x_n, each stored as a
// dense coefficient vector over ambient_basis(n, degree).
//
// Wire format (stable):
//   {"p": <modulus>, "n": <n>, "equations":
//     [{"degree": d, "coeffs": {"e0,e1,...,en": residue, ...}}, ...]}
// with one key per nonzero coefficient.
struct PolySystem {
  struct Equation {
    int degree = 0;
    std::vector<std::uint64_t> coeffs;
  };

  PrimeField field;
  int n = 0;
  std::vector<Equation> equations;

  PolySystem(const PrimeField& f, int n_) : field(f), n(n_) {}

  int max_degree() const;
  nlohmann::ordered_json to_json() const;
  static PolySystem from_json(const nlohmann::ordered_json& j);
};

// Restriction H^0(P^n, O(d)) -> H^0(O_L(d)) for the canonical fat plane:
// kill x_1..x_{n-r-1}, rename the survivors, truncate x_0^t.
// Rows: ol_basis(r, t, d); columns: ambient_basis(n, d).
PrimeFieldMatrix restriction_matrix(int n, int r, int t, int degree,
                                    const PrimeField& f);

// Same map applied to one coefficient vector.
RingElement restrict_to_plane(const PolySystem::Equation& eq, int n, int r,
                              int t, const PrimeField& f);

// Product in O_L (x_0^t truncated away).
RingElement multiply(int r, int t, const RingElement& a, const RingElement& b,
                     const PrimeField& f);

// Matrix of multiplication by g (degree e) from the degree-a piece to the
// degree-(a+e) piece of O_L.
PrimeFieldMatrix mult_matrix(int r, int t, const RingElement& g,
                             int source_degree, const PrimeField& f);

// Matrix of the induced map on first-order deformations of the canonical fat
// plane inside V(b):
//   domain  = p' copies of H^0(O_L(1)), one per killed coordinate x_1..x_{p'},
//             followed by H^0(O_H(1));
//   codomain = direct sum of H^0(O_L(d_i)).
// Column (j, x_k): class of x_k * (db_i/dx_j restricted to L) stacked over i.
// The O_H(1) block uses db_i/dx_0 restricted to L, which is a multiple of
// x_0^{t-1} whenever b vanishes on the fat plane.
// Requires every equation to vanish on the fat plane and p > max degree.
PrimeFieldMatrix normal_map_matrix(const PolySystem& b, const FatShape& shape);

// Does the fat plane lie in V(b)?  The placement is an invertible change of
// coordinates: canonical coordinates y map to ambient x = P*y, so the tested
// plane is y_0^t = y_1 = ... = y_{n-r-1} = 0 pushed through P.  Implemented by
// substitution and truncation, independently of restriction_matrix.
bool is_fat_plane_contained(const PolySystem& b, const FatShape& shape);
bool is_fat_plane_contained(const PolySystem& b, const FatShape& shape,
                            const PrimeFieldMatrix& placement);
// Placement with entries in GF(p^2), for witnesses found over the extension.
bool is_fat_plane_contained(const PolySystem& b, const FatShape& shape,
                            const QuadExt& ext,
                            const std::vector<std::vector<QuadExt::Elem>>& placement);

// Random element of the degree-dd part of the ideal of the canonical fat
// plane: b_i = sum_j x_j * m_ij + x_0^t * f_i (the last term only when
// d_i >= t), coefficients drawn from one SplitMix64 stream.
// Requires p > max(dd).
PolySystem sample_ideal_element(const FatShape& shape, const Multidegree& dd,
                                const PrimeField& f, std::uint64_t seed);

}  // namespace fatplanes
