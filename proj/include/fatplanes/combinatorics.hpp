#pragma once

#include <string>
#include <vector>

#include "fatplanes/bigint.hpp"

namespace fatplanes {

// Non-decreasing list of hypersurface degrees, every entry >= 2.
// Construction rejects anything else; nothing is sorted silently.
class Multidegree {
 public:
  explicit Multidegree(std::vector<int> degrees);
  static Multidegree parse(const std::string& csv);  // "2,3" style

  const std::vector<int>& degrees() const { return degrees_; }
  int size() const { return static_cast<int>(degrees_.size()); }
  int operator[](int i) const { return degrees_[static_cast<size_t>(i)]; }
  int max() const { return degrees_.back(); }
  bool max_is_unique() const;
  // true when s == 1 or d_{s-1} < d_s
  bool top_degree_strict() const;
  std::string to_string() const;

 private:
  std::vector<int> degrees_;
};

// Fat r-plane shape: t-th infinitesimal neighborhood of an r-plane inside an
// (r+1)-plane in P^n.  Canonical model: x_0^t = x_1 = ... = x_{n-r-1} = 0.
struct FatShape {
  int n, r, t;
  FatShape(int n_, int r_, int t_);
  // number of killed linear coordinates, p' = n - r - 1
  int codim() const { return n - r - 1; }
};

// Expected dimension of the Hilbert scheme of fat r-planes in a complete
// intersection, with the pieces it is assembled from:
//   rho = flag_dim - c,  c = sum of c_per_degree,
//   flag_dim = (r+2)(n-r) - 1 (dimension of the flag variety of pairs
//   r-plane in (r+1)-plane), c_per_degree[i] = conditions cut by equation i.
struct RhoBreakdown {
  Bigint rho;
  Bigint flag_dim;
  Bigint c;
  std::vector<Bigint> c_per_degree;
};

// binomial(p, q); zero whenever p < q (including negative p); q < 0 is a
// usage error.
Bigint binomial(long long p, long long q);

// count of degree-e monomials in `vars` variables = binomial(e+vars-1, vars-1);
// zero for e < 0
Bigint monomial_count(int vars, long long degree);
// sum over the entries of a degree list (entries may be arbitrary ints;
// negative entries contribute 0, zero entries contribute 1)
Bigint monomial_count(int vars, const std::vector<int>& degrees);
Bigint monomial_count(int vars, const Multidegree& dd);

// dimension of the degree-d part of k[x_0..x_{r+1}]/(x_0^t):
//   binomial(d+r+1, r+1) - binomial(d-t+r+1, r+1); zero for d < 0
Bigint fat_section_dim(int r, int t, long long d);

// Formula-level rho: validates only r >= 0, n > r, t >= 2 and accepts raw
// degree lists (entries >= 1).  Degree-t entries contribute the truncation
// correction through fat_section_dim.
RhoBreakdown rho_formula(int n, int r, int t, const std::vector<int>& degrees);

// Validated expected dimension: additionally requires t <= max(dd) and
// s <= n - r - 1.
RhoBreakdown rho_expected(int n, int r, int t, const Multidegree& dd);

// Degree lists for the Taylor-coefficient trick: a degree-d equation
// contributes coefficients of degrees 1..d (with_linear) resp. 2..d (reduced).
struct TaylorDegrees {
  std::vector<int> with_linear;  // sorted union of 1..d_i over all i
  std::vector<int> reduced;      // same with the 1's dropped
};
TaylorDegrees taylor_degrees(const Multidegree& dd);

}  // namespace fatplanes
