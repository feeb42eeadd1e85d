#include "fatplanes/combinatorics.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace fatplanes {

Multidegree::Multidegree(std::vector<int> degrees)
    : degrees_(std::move(degrees)) {
  if (degrees_.empty())
    throw std::invalid_argument("multidegree: needs at least one degree");
  for (size_t i = 0; i < degrees_.size(); ++i) {
    if (degrees_[i] < 2)
      throw std::invalid_argument("multidegree: degrees must be >= 2");
    if (i > 0 && degrees_[i] < degrees_[i - 1])
      throw std::invalid_argument("multidegree: degrees must be non-decreasing");
  }
}

Multidegree Multidegree::parse(const std::string& csv) {
  std::vector<int> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    size_t pos = 0;
    int v;
    try {
      v = std::stoi(item, &pos);
    } catch (const std::exception&) {
      throw std::invalid_argument("multidegree: bad entry '" + item + "'");
    }
    if (pos != item.size())
      throw std::invalid_argument("multidegree: bad entry '" + item + "'");
    out.push_back(v);
  }
  if (out.empty())
    throw std::invalid_argument("multidegree: empty degree list");
  return Multidegree(std::move(out));
}

bool Multidegree::max_is_unique() const {
  int s = size();
  return s == 1 || degrees_[s - 2] != degrees_[s - 1];
}

bool Multidegree::top_degree_strict() const { return max_is_unique(); }

std::string Multidegree::to_string() const {
  std::string out = "(";
  for (size_t i = 0; i < degrees_.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(degrees_[i]);
  }
  return out + ")";
}

FatShape::FatShape(int n_, int r_, int t_) : n(n_), r(r_), t(t_) {
  if (r < 0 || r >= n)
    throw std::invalid_argument("fat shape: needs 0 <= r < n");
  if (t < 2) throw std::invalid_argument("fat shape: needs t >= 2");
}

Bigint binomial(long long p, long long q) {
  if (q < 0) throw std::invalid_argument("binomial: negative lower index");
  if (p < q) return 0;
  Bigint res = 1;
  for (long long i = 1; i <= q; ++i) {
    res *= p - q + i;
    res /= i;
  }
  return res;
}

Bigint monomial_count(int vars, long long degree) {
  if (vars < 1)
    throw std::invalid_argument("monomial_count: needs at least one variable");
  return binomial(degree + vars - 1, vars - 1);
}

Bigint monomial_count(int vars, const std::vector<int>& degrees) {
  Bigint sum = 0;
  for (int d : degrees) sum += monomial_count(vars, d);
  return sum;
}

Bigint monomial_count(int vars, const Multidegree& dd) {
  return monomial_count(vars, dd.degrees());
}

Bigint fat_section_dim(int r, int t, long long d) {
  if (r < 0) throw std::invalid_argument("fat_section_dim: needs r >= 0");
  if (t < 2) throw std::invalid_argument("fat_section_dim: needs t >= 2");
  return binomial(d + r + 1, r + 1) - binomial(d - t + r + 1, r + 1);
}

RhoBreakdown rho_formula(int n, int r, int t, const std::vector<int>& degrees) {
  if (r < 0 || r >= n)
    throw std::invalid_argument("rho: needs 0 <= r < n");
  if (t < 2) throw std::invalid_argument("rho: needs t >= 2");
  RhoBreakdown out;
  out.flag_dim = Bigint(r + 2) * (n - r) - 1;
  out.c = 0;
  for (int d : degrees) {
    out.c_per_degree.push_back(fat_section_dim(r, t, d));
    out.c += out.c_per_degree.back();
  }
  out.rho = out.flag_dim - out.c;
  return out;
}

RhoBreakdown rho_expected(int n, int r, int t, const Multidegree& dd) {
  if (t > dd.max())
    throw std::invalid_argument("rho: needs t <= max degree");
  if (dd.size() > n - r - 1)
    throw std::invalid_argument("rho: needs s <= n - r - 1");
  return rho_formula(n, r, t, dd.degrees());
}

TaylorDegrees taylor_degrees(const Multidegree& dd) {
  TaylorDegrees out;
  for (int d : dd.degrees()) {
    for (int j = 1; j <= d; ++j) {
      out.with_linear.push_back(j);
      if (j >= 2) out.reduced.push_back(j);
    }
  }
  std::sort(out.with_linear.begin(), out.with_linear.end());
  std::sort(out.reduced.begin(), out.reduced.end());
  return out;
}

}  // namespace fatplanes
