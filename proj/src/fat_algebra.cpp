#include "fatplanes/fat_algebra.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "fatplanes/field_ops.hpp"
#include "fatplanes/rng.hpp"

namespace fatplanes {

namespace {

std::map<std::vector<int>, int> index_map(const std::vector<Monomial>& basis) {
  std::map<std::vector<int>, int> out;
  for (size_t i = 0; i < basis.size(); ++i)
    out[basis[i].exponents] = static_cast<int>(i);
  return out;
}

}  // namespace

bool RingElement::is_zero() const {
  return std::all_of(coeffs.begin(), coeffs.end(),
                     [](std::uint64_t c) { return c == 0; });
}

int PolySystem::max_degree() const {
  int d = 0;
  for (const auto& eq : equations) d = std::max(d, eq.degree);
  return d;
}

nlohmann::ordered_json PolySystem::to_json() const {
  nlohmann::ordered_json j;
  j["p"] = field.modulus();
  j["n"] = n;
  j["equations"] = nlohmann::ordered_json::array();
  for (const auto& eq : equations) {
    nlohmann::ordered_json je;
    je["degree"] = eq.degree;
    nlohmann::ordered_json coeffs = nlohmann::ordered_json::object();
    auto basis = ambient_basis(n, eq.degree);
    for (size_t i = 0; i < basis.size(); ++i) {
      if (eq.coeffs[i] == 0) continue;
      std::string key;
      for (size_t k = 0; k < basis[i].exponents.size(); ++k) {
        if (k) key += ",";
        key += std::to_string(basis[i].exponents[k]);
      }
      coeffs[key] = eq.coeffs[i];
    }
    je["coeffs"] = std::move(coeffs);
    j["equations"].push_back(std::move(je));
  }
  return j;
}

PolySystem PolySystem::from_json(const nlohmann::ordered_json& j) {
  PrimeField f(j.at("p").get<std::uint64_t>());
  int n = j.at("n").get<int>();
  if (n < 1) throw std::invalid_argument("poly system: needs n >= 1");
  PolySystem sys(f, n);
  for (const auto& je : j.at("equations")) {
    Equation eq;
    eq.degree = je.at("degree").get<int>();
    if (eq.degree < 1)
      throw std::invalid_argument("poly system: equation degree must be >= 1");
    auto basis = ambient_basis(n, eq.degree);
    auto lookup = index_map(basis);
    eq.coeffs.assign(basis.size(), 0);
    for (const auto& [key, value] : je.at("coeffs").items()) {
      std::vector<int> exps;
      std::stringstream ss(key);
      std::string item;
      while (std::getline(ss, item, ',')) exps.push_back(std::stoi(item));
      if (static_cast<int>(exps.size()) != n + 1)
        throw std::invalid_argument("poly system: exponent tuple of wrong length");
      auto it = lookup.find(exps);
      if (it == lookup.end())
        throw std::invalid_argument("poly system: exponents do not match degree");
      eq.coeffs[static_cast<size_t>(it->second)] =
          f.reduce(value.get<long long>());
    }
    sys.equations.push_back(std::move(eq));
  }
  return sys;
}

namespace {

// survival of an ambient monomial under x_1 = ... = x_{p'} = 0 and x_0^t = 0;
// fills the r+2 local exponents on success
bool restrict_monomial(const std::vector<int>& amb, int n, int r, int t,
                       std::vector<int>& local) {
  int pp = n - r - 1;
  if (amb[0] >= t) return false;
  for (int j = 1; j <= pp; ++j)
    if (amb[static_cast<size_t>(j)] != 0) return false;
  local.clear();
  local.push_back(amb[0]);
  for (int k = pp + 1; k <= n; ++k) local.push_back(amb[static_cast<size_t>(k)]);
  return true;
}

std::vector<std::vector<std::uint64_t>> identity_placement(int n) {
  std::vector<std::vector<std::uint64_t>> P(
      static_cast<size_t>(n + 1), std::vector<std::uint64_t>(n + 1, 0));
  for (int i = 0; i <= n; ++i) P[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1;
  return P;
}

// f(P*y) reduced mod (y_1..y_{p'}, y_0^t), as coefficients over
// ol_basis(r, t, degree).  Generic over the coefficient field of P.
template <class Ops>
std::vector<typename Ops::V> substitute_restrict(
    const Ops& ops, const PolySystem::Equation& eq, int n, int r, int t,
    const std::vector<std::vector<typename Ops::V>>& placement) {
  using V = typename Ops::V;
  int d = eq.degree;
  int pp = n - r - 1;

  std::vector<GradedBasis> bases;
  for (int k = 0; k <= d; ++k) bases.push_back(ol_basis(r, t, k));

  // per ambient variable, the surviving local linear form (r+2 coordinates)
  std::vector<std::vector<V>> lf(static_cast<size_t>(n + 1));
  for (int i = 0; i <= n; ++i) {
    auto& row = lf[static_cast<size_t>(i)];
    row.push_back(placement[static_cast<size_t>(i)][0]);
    for (int k = pp + 1; k <= n; ++k)
      row.push_back(placement[static_cast<size_t>(i)][static_cast<size_t>(k)]);
  }

  std::vector<V> result(bases[static_cast<size_t>(d)].size(), ops.zero());
  auto amb = ambient_basis(n, d);
  for (size_t mi = 0; mi < amb.size(); ++mi) {
    if (eq.coeffs[mi] == 0) continue;
    std::vector<V> prod{ops.from_residue(eq.coeffs[mi])};
    int deg = 0;
    for (int var = 0; var <= n; ++var) {
      for (int rep = 0; rep < amb[mi].exponents[static_cast<size_t>(var)]; ++rep) {
        const auto& src_basis = bases[static_cast<size_t>(deg)];
        const auto& tgt_basis = bases[static_cast<size_t>(deg + 1)];
        std::vector<V> next(tgt_basis.size(), ops.zero());
        for (size_t b = 0; b < src_basis.size(); ++b) {
          if (ops.is_zero(prod[b])) continue;
          std::vector<int> exps = src_basis[b].exponents;
          for (int k = 0; k < r + 2; ++k) {
            const V& coef = lf[static_cast<size_t>(var)][static_cast<size_t>(k)];
            if (ops.is_zero(coef)) continue;
            ++exps[static_cast<size_t>(k)];
            if (exps[0] < t) {
              int idx = tgt_basis.index_of(exps);
              next[static_cast<size_t>(idx)] = ops.add(
                  next[static_cast<size_t>(idx)], ops.mul(prod[b], coef));
            }
            --exps[static_cast<size_t>(k)];
          }
        }
        prod = std::move(next);
        ++deg;
      }
    }
    for (size_t b = 0; b < result.size(); ++b)
      result[b] = ops.add(result[b], prod[b]);
  }
  return result;
}

template <class Ops>
bool contained_impl(const Ops& ops, const PolySystem& b, const FatShape& shape,
                    const std::vector<std::vector<typename Ops::V>>& placement) {
  if (b.n != shape.n)
    throw std::invalid_argument("containment: system and shape disagree on n");
  if (static_cast<int>(placement.size()) != b.n + 1)
    throw std::invalid_argument("containment: placement must be (n+1)x(n+1)");
  for (const auto& row : placement)
    if (static_cast<int>(row.size()) != b.n + 1)
      throw std::invalid_argument("containment: placement must be (n+1)x(n+1)");
  if (generic_rank(ops, placement) != static_cast<size_t>(b.n + 1))
    throw std::invalid_argument("containment: placement is not invertible");
  for (const auto& eq : b.equations) {
    auto res = substitute_restrict(ops, eq, b.n, shape.r, shape.t, placement);
    for (const auto& c : res)
      if (!ops.is_zero(c)) return false;
  }
  return true;
}

}  // namespace

PrimeFieldMatrix restriction_matrix(int n, int r, int t, int degree,
                                    const PrimeField& f) {
  FatShape shape(n, r, t);
  GradedBasis rows = ol_basis(r, t, degree);
  auto cols = ambient_basis(n, degree);
  PrimeFieldMatrix m(rows.size(), cols.size(), f);
  std::vector<int> local;
  for (size_t j = 0; j < cols.size(); ++j) {
    if (!restrict_monomial(cols[j].exponents, n, r, t, local)) continue;
    int i = rows.index_of(local);
    m.set(static_cast<size_t>(i), j, 1);
  }
  return m;
}

RingElement restrict_to_plane(const PolySystem::Equation& eq, int n, int r,
                              int t, const PrimeField& f) {
  GradedBasis target = ol_basis(r, t, eq.degree);
  RingElement out{eq.degree, std::vector<std::uint64_t>(target.size(), 0)};
  auto amb = ambient_basis(n, eq.degree);
  std::vector<int> local;
  for (size_t j = 0; j < amb.size(); ++j) {
    if (eq.coeffs[j] == 0) continue;
    if (!restrict_monomial(amb[j].exponents, n, r, t, local)) continue;
    int i = target.index_of(local);
    out.coeffs[static_cast<size_t>(i)] =
        f.add(out.coeffs[static_cast<size_t>(i)], eq.coeffs[j]);
  }
  return out;
}

RingElement multiply(int r, int t, const RingElement& a, const RingElement& b,
                     const PrimeField& f) {
  GradedBasis ba = ol_basis(r, t, a.degree);
  GradedBasis bb = ol_basis(r, t, b.degree);
  GradedBasis bt = ol_basis(r, t, a.degree + b.degree);
  RingElement out{a.degree + b.degree,
                  std::vector<std::uint64_t>(bt.size(), 0)};
  for (size_t i = 0; i < ba.size(); ++i) {
    if (a.coeffs[i] == 0) continue;
    for (size_t j = 0; j < bb.size(); ++j) {
      if (b.coeffs[j] == 0) continue;
      std::vector<int> exps(static_cast<size_t>(r + 2));
      for (int k = 0; k < r + 2; ++k)
        exps[static_cast<size_t>(k)] = ba[i].exponents[static_cast<size_t>(k)] +
                                       bb[j].exponents[static_cast<size_t>(k)];
      if (exps[0] >= t) continue;
      int idx = bt.index_of(exps);
      out.coeffs[static_cast<size_t>(idx)] =
          f.add(out.coeffs[static_cast<size_t>(idx)],
                f.mul(a.coeffs[i], b.coeffs[j]));
    }
  }
  return out;
}

PrimeFieldMatrix mult_matrix(int r, int t, const RingElement& g,
                             int source_degree, const PrimeField& f) {
  GradedBasis src = ol_basis(r, t, source_degree);
  GradedBasis tgt = ol_basis(r, t, source_degree + g.degree);
  PrimeFieldMatrix m(tgt.size(), src.size(), f);
  for (size_t j = 0; j < src.size(); ++j) {
    RingElement unit{source_degree,
                     std::vector<std::uint64_t>(src.size(), 0)};
    unit.coeffs[j] = 1;
    RingElement col = multiply(r, t, g, unit, f);
    for (size_t i = 0; i < tgt.size(); ++i) m.set(i, j, col.coeffs[i]);
  }
  return m;
}

PrimeFieldMatrix normal_map_matrix(const PolySystem& b, const FatShape& shape) {
  const PrimeField& f = b.field;
  int n = shape.n, r = shape.r, t = shape.t, pp = shape.codim();
  if (b.n != n)
    throw std::invalid_argument("normal map: system and shape disagree on n");
  if (f.modulus() <= static_cast<std::uint64_t>(b.max_degree()))
    throw std::invalid_argument("normal map: needs p > all degrees");

  // row layout: one block of H^0(O_L(d_i)) per equation
  std::vector<GradedBasis> blocks;
  std::vector<size_t> offset{0};
  for (const auto& eq : b.equations) {
    blocks.push_back(ol_basis(r, t, eq.degree));
    offset.push_back(offset.back() + blocks.back().size());
  }
  size_t rows = offset.back();
  size_t cols = static_cast<size_t>(pp) * (r + 2) + (r + 1);
  PrimeFieldMatrix m(rows, cols, f);

  // ambient partial derivative of eq with respect to variable `var`
  auto derivative = [&](const PolySystem::Equation& eq, int var) {
    PolySystem::Equation out;
    out.degree = eq.degree - 1;
    auto src = ambient_basis(n, eq.degree);
    auto tgt = ambient_basis(n, out.degree);
    auto lookup = index_map(tgt);
    out.coeffs.assign(tgt.size(), 0);
    for (size_t i = 0; i < src.size(); ++i) {
      if (eq.coeffs[i] == 0) continue;
      int e = src[i].exponents[static_cast<size_t>(var)];
      if (e == 0) continue;
      std::vector<int> exps = src[i].exponents;
      --exps[static_cast<size_t>(var)];
      int idx = lookup.at(exps);
      out.coeffs[static_cast<size_t>(idx)] =
          f.add(out.coeffs[static_cast<size_t>(idx)],
                f.mul(eq.coeffs[i], static_cast<std::uint64_t>(e)));
    }
    return out;
  };

  GradedBasis ol1 = ol_basis(r, t, 1);
  GradedBasis oh1 = oh_basis(r, 1);

  auto fill_column = [&](size_t col, const std::vector<RingElement>& restricted,
                         const Monomial& by) {
    RingElement mono{1, std::vector<std::uint64_t>(ol1.size(), 0)};
    mono.coeffs[static_cast<size_t>(ol1.index_of(by.exponents))] = 1;
    for (size_t i = 0; i < blocks.size(); ++i) {
      RingElement prod = multiply(r, t, mono, restricted[i], f);
      for (size_t k = 0; k < prod.coeffs.size(); ++k)
        m.set(offset[i] + k, col, prod.coeffs[k]);
    }
  };

  for (const auto& eq : b.equations) {
    RingElement res = restrict_to_plane(eq, n, r, t, f);
    if (!res.is_zero())
      throw std::invalid_argument(
          "normal map: an equation does not vanish on the fat plane");
  }

  size_t col = 0;
  for (int j = 1; j <= pp; ++j) {
    std::vector<RingElement> restricted;
    for (const auto& eq : b.equations)
      restricted.push_back(restrict_to_plane(derivative(eq, j), n, r, t, f));
    for (size_t k = 0; k < ol1.size(); ++k) fill_column(col++, restricted, ol1[k]);
  }
  {
    std::vector<RingElement> restricted;
    for (const auto& eq : b.equations) {
      RingElement d0 = restrict_to_plane(derivative(eq, 0), n, r, t, f);
      // vanishing on the plane forces this to be a multiple of x_0^{t-1}
      GradedBasis basis = ol_basis(r, t, d0.degree);
      for (size_t i = 0; i < basis.size(); ++i)
        if (d0.coeffs[i] != 0 && basis[i].exponents[0] != t - 1)
          throw std::logic_error(
              "normal map: x_0-derivative is not a multiple of x_0^(t-1)");
      restricted.push_back(std::move(d0));
    }
    for (size_t k = 0; k < oh1.size(); ++k) fill_column(col++, restricted, oh1[k]);
  }
  return m;
}

bool is_fat_plane_contained(const PolySystem& b, const FatShape& shape) {
  BaseOps ops{b.field};
  return contained_impl(ops, b, shape, identity_placement(b.n));
}

bool is_fat_plane_contained(const PolySystem& b, const FatShape& shape,
                            const PrimeFieldMatrix& placement) {
  BaseOps ops{b.field};
  std::vector<std::vector<std::uint64_t>> P(
      placement.rows(), std::vector<std::uint64_t>(placement.cols(), 0));
  for (size_t i = 0; i < placement.rows(); ++i)
    for (size_t j = 0; j < placement.cols(); ++j) P[i][j] = placement.at(i, j);
  return contained_impl(ops, b, shape, P);
}

bool is_fat_plane_contained(
    const PolySystem& b, const FatShape& shape, const QuadExt& ext,
    const std::vector<std::vector<QuadExt::Elem>>& placement) {
  ExtOps ops{ext};
  return contained_impl(ops, b, shape, placement);
}

PolySystem sample_ideal_element(const FatShape& shape, const Multidegree& dd,
                                const PrimeField& f, std::uint64_t seed) {
  int n = shape.n, t = shape.t, pp = shape.codim();
  if (f.modulus() <= static_cast<std::uint64_t>(dd.max()))
    throw std::invalid_argument("sample: needs p > all degrees");
  if (dd.size() > pp)
    throw std::invalid_argument("sample: needs s <= n - r - 1");
  PolySystem sys(f, n);
  SplitMix64 g(seed);
  for (int ei = 0; ei < dd.size(); ++ei) {
    int d = dd[ei];
    auto basis = ambient_basis(n, d);
    auto lookup = index_map(basis);
    PolySystem::Equation eq{d, std::vector<std::uint64_t>(basis.size(), 0)};
    // x_j * (random degree d-1), one multiplier per killed coordinate
    auto low = ambient_basis(n, d - 1);
    for (int j = 1; j <= pp; ++j) {
      for (const auto& mono : low) {
        std::uint64_t c = g.below(f.modulus());
        if (c == 0) continue;
        std::vector<int> exps = mono.exponents;
        ++exps[static_cast<size_t>(j)];
        int idx = lookup.at(exps);
        eq.coeffs[static_cast<size_t>(idx)] =
            f.add(eq.coeffs[static_cast<size_t>(idx)], c);
      }
    }
    // x_0^t * (random degree d-t) when the degree allows it
    if (d >= t) {
      for (const auto& mono : ambient_basis(n, d - t)) {
        std::uint64_t c = g.below(f.modulus());
        if (c == 0) continue;
        std::vector<int> exps = mono.exponents;
        exps[0] += t;
        int idx = lookup.at(exps);
        eq.coeffs[static_cast<size_t>(idx)] =
            f.add(eq.coeffs[static_cast<size_t>(idx)], c);
      }
    }
    sys.equations.push_back(std::move(eq));
  }
  return sys;
}

}  // namespace fatplanes
