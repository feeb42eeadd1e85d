#pragma once

#include <map>
#include <string>
#include <vector>

namespace fatplanes {

// Exponent vector; variable 0 is the greatest in the monomial order.
struct Monomial {
  std::vector<int> exponents;
  int degree() const;
  bool operator==(const Monomial&) const = default;
  std::string to_string() const;  // "x0^2.x3" style, "1" for the constant
};

// All degree-d monomials in `vars` variables, listed in lexicographic
// descending order of exponent vectors (graded-lex with x_0 > x_1 > ...).
// x0_cap >= 0 keeps only exponents of variable 0 below the cap.
std::vector<Monomial> monomials_of_degree(int vars, int degree,
                                          int x0_cap = -1);

enum class RingKind {
  TruncatedPlane,  // O_L = k[x_0..x_{r+1}]/(x_0^t)
  ReducedPlane,    // O_H = k[x_1..x_{r+1}], embedded with x_0-exponent 0
};

// Monomial basis of one graded piece of O_L or O_H.  Monomials always have
// r+2 exponent slots (variable 0 first) so they multiply uniformly.
class GradedBasis {
 public:
  GradedBasis(RingKind kind, int r, int t, int degree);

  RingKind kind() const { return kind_; }
  int r() const { return r_; }
  int t() const { return t_; }
  int degree() const { return degree_; }
  std::size_t size() const { return monomials_.size(); }
  const Monomial& operator[](std::size_t i) const { return monomials_[i]; }
  const std::vector<Monomial>& monomials() const { return monomials_; }
  // position of a monomial in this basis, -1 if absent
  int index_of(const std::vector<int>& exponents) const;

 private:
  RingKind kind_;
  int r_, t_, degree_;
  std::vector<Monomial> monomials_;
  std::map<std::vector<int>, int> index_;
};

GradedBasis ol_basis(int r, int t, int degree);
GradedBasis oh_basis(int r, int degree);

// Degree-d monomials in the n+1 ambient variables x_0..x_n, same order.
std::vector<Monomial> ambient_basis(int n, int degree);

}  // namespace fatplanes
