#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "fatplanes/combinatorics.hpp"
#include "fatplanes/prime_field.hpp"

namespace fatplanes {

enum class Verdict { Pass, Fail, Inconclusive, Info };

const char* verdict_name(Verdict v);

struct ExperimentReport {
  std::string name;
  std::vector<std::pair<std::string, nlohmann::ordered_json>> params;
  int trials = 0;
  int successes = 0;
  std::optional<nlohmann::ordered_json> witness;
  Verdict verdict = Verdict::Inconclusive;
  std::uint64_t seed = 0;
  std::string detail;

  bool failed() const { return verdict == Verdict::Fail; }
  nlohmann::ordered_json to_json() const;
  void add_param(const std::string& key, nlohmann::ordered_json value);
  const nlohmann::ordered_json* find_param(const std::string& key) const;
};

// Deterministic: restriction H^0(P^n(d)) -> H^0(O_L(d)) has full row rank
// fat_section_dim(r,t,d) and kernel of the complementary dimension.
ExperimentReport verify_codim(int n, int r, int t, int d, const PrimeField& f);

// Monte Carlo maximal-rank check for the general morphism
// O_L(1)^p_count + O_H(1) -> sum O_L(d_i): every trial must reach rank
// sum fat_section_dim(r,t,d_i).  Requires t = max(dd), unique, >= 3 and
// p > t; pass `informational` to run outside those restrictions with an
// info verdict.
ExperimentReport maxrank_mc(int r, int t, const Multidegree& dd, int p_count,
                            const PrimeField& f, int trials,
                            std::uint64_t seed, bool informational = false);

// Deterministic inequality chain behind the maximal-rank count:
// monomial_count(u, dd) + (r+1-u)u <= p_count*u for u in [1, r+2], plus
// convexity of the defect (monomial_count(u+2, dd-2) >= 2).
ExperimentReport lastineg_check(int r, const Multidegree& dd,
                                long long p_count);

// Monte Carlo rank of normal_map_matrix on random ideal elements.  Pass iff
// the max observed rank equals the condition count c when rho >= 0 and the
// t = max unique >= 3 restrictions hold; the one known exception
// (n=3, r=1, t=2, dd=(2)) passes iff max rank < c; anything else is
// informational.
ExperimentReport tangent_rank_mc(int n, int r, int t, const Multidegree& dd,
                                 const PrimeField& f, int trials,
                                 std::uint64_t seed);

// The double-line-in-a-quadric-surface exception: rho = 0 but no smooth
// quadric in P^3 contains a double line.  (a) rho check, (b) every quadric
// through the double line has singular Gram matrix (random trials of an
// identity), (c) a smooth quadric fails containment.
ExperimentReport quadric_exception(const PrimeField& f, int trials,
                                   std::uint64_t seed);

// Three-way agreement for the expected dimension rho' of the auxiliary
// Taylor-coefficient problem: via rho_formula at (n-1, r-1, dd'), via
// rho_formula at (n-s-1, r-1, dd''), and via rho + r - n + s directly.
// Requires r >= 1 and max(dd) unique.
ExperimentReport rho_prime_identity(int n, int r, const Multidegree& dd);

struct FatPointOptions {
  int max_extension = 2;       // 1 = base field only, 2 = allow GF(p^2)
  int max_base_points = 25;    // points of Y to try before giving up
  int max_point_probes = 20000;  // random probes per point search
  std::uint64_t direction_budget = 4000000;  // cap on directions enumerated
};

// Random complete intersection Y of multidegree dd over a small field, random
// point, exhaustive search for a tangent direction satisfying the Taylor
// conditions, i.e. a t-fat point (t = d_s) inside Y.  The witness is
// re-verified through is_fat_plane_contained.  Exhaustion gives verdict
// inconclusive, never fail.  Requires d_{s-1} < d_s, d_s >= 3 and
// n - s >= sum(d_i - 1).
ExperimentReport fat_point_search(int n, const Multidegree& dd,
                                  const PrimeField& f, std::uint64_t seed,
                                  FatPointOptions opts = {});

}  // namespace fatplanes
