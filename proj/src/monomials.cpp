#include "fatplanes/monomials.hpp"

#include <numeric>
#include <stdexcept>

namespace fatplanes {

int Monomial::degree() const {
  return std::accumulate(exponents.begin(), exponents.end(), 0);
}

std::string Monomial::to_string() const {
  std::string out;
  for (size_t i = 0; i < exponents.size(); ++i) {
    if (exponents[i] == 0) continue;
    if (!out.empty()) out += ".";
    out += "x" + std::to_string(i);
    if (exponents[i] > 1) out += "^" + std::to_string(exponents[i]);
  }
  return out.empty() ? "1" : out;
}

namespace {

void enumerate(int vars, int degree, int x0_cap, std::vector<int>& current,
               std::vector<Monomial>& out) {
  int pos = static_cast<int>(current.size());
  if (pos == vars - 1) {
    current.push_back(degree);
    out.push_back(Monomial{current});
    current.pop_back();
    return;
  }
  int hi = degree;
  if (pos == 0 && x0_cap >= 0) hi = std::min(hi, x0_cap - 1);
  for (int e = hi; e >= 0; --e) {
    current.push_back(e);
    enumerate(vars, degree - e, x0_cap, current, out);
    current.pop_back();
  }
}

}  // namespace

std::vector<Monomial> monomials_of_degree(int vars, int degree, int x0_cap) {
  if (vars < 1)
    throw std::invalid_argument("monomials: needs at least one variable");
  std::vector<Monomial> out;
  if (degree < 0) return out;
  if (vars == 1) {
    if (x0_cap < 0 || degree < x0_cap)
      out.push_back(Monomial{std::vector<int>{degree}});
    return out;
  }
  std::vector<int> current;
  enumerate(vars, degree, x0_cap, current, out);
  return out;
}

GradedBasis::GradedBasis(RingKind kind, int r, int t, int degree)
    : kind_(kind), r_(r), t_(t), degree_(degree) {
  if (r < 0) throw std::invalid_argument("graded basis: needs r >= 0");
  if (t < 2) throw std::invalid_argument("graded basis: needs t >= 2");
  if (degree >= 0) {
    if (kind == RingKind::TruncatedPlane) {
      monomials_ = monomials_of_degree(r + 2, degree, t);
    } else {
      // x_0 exponent pinned to zero
      for (Monomial m : monomials_of_degree(r + 1, degree)) {
        m.exponents.insert(m.exponents.begin(), 0);
        monomials_.push_back(std::move(m));
      }
    }
  }
  for (size_t i = 0; i < monomials_.size(); ++i)
    index_[monomials_[i].exponents] = static_cast<int>(i);
}

int GradedBasis::index_of(const std::vector<int>& exponents) const {
  auto it = index_.find(exponents);
  return it == index_.end() ? -1 : it->second;
}

GradedBasis ol_basis(int r, int t, int degree) {
  return GradedBasis(RingKind::TruncatedPlane, r, t, degree);
}

GradedBasis oh_basis(int r, int degree) {
  return GradedBasis(RingKind::ReducedPlane, r, 2, degree);
}

std::vector<Monomial> ambient_basis(int n, int degree) {
  return monomials_of_degree(n + 1, degree);
}

}  // namespace fatplanes
