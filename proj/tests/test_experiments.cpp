#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stdexcept>
#include <string>

#include "fatplanes/experiments.hpp"
#include "fatplanes/rng.hpp"

using namespace fatplanes;

namespace {

nlohmann::ordered_json param(const ExperimentReport& rep,
                             const std::string& key) {
  for (const auto& [k, v] : rep.params)
    if (k == key) return v;
  FAIL("missing param ", key);
  return {};
}

}  // namespace

TEST_CASE("verify_codim pinned example and grid") {
  PrimeField f(32003);
  ExperimentReport rep = verify_codim(3, 1, 2, 2, f);
  CHECK(rep.verdict == Verdict::Pass);
  CHECK(param(rep, "rank") == 5);
  CHECK(param(rep, "kernel_dim") == 5);
  CHECK_FALSE(rep.failed());

  for (int n = 2; n <= 5; ++n)
    for (int r = 0; r <= std::min(2, n - 1); ++r)
      for (int t = 2; t <= 4; ++t)
        for (int d = t; d <= 4; ++d)
          CHECK(verify_codim(n, r, t, d, f).verdict == Verdict::Pass);

  // linear forms restrict injectively when the plane spans
  ExperimentReport lin = verify_codim(3, 2, 2, 1, f);
  CHECK(lin.verdict == Verdict::Pass);
  CHECK(param(lin, "kernel_dim") == 0);
}

TEST_CASE("maxrank_mc reaches full rank on the certified configurations") {
  PrimeField f(32003);

  ExperimentReport a = maxrank_mc(1, 3, Multidegree({3}), 3, f, 20, 42);
  CHECK(a.verdict == Verdict::Pass);
  CHECK(a.trials == 20);
  CHECK(a.successes == 20);
  CHECK(param(a, "target_dim") == 9);
  CHECK(param(a, "domain_dim") == 11);

  ExperimentReport b = maxrank_mc(1, 3, Multidegree({2, 3}), 5, f, 20, 42);
  CHECK(b.verdict == Verdict::Pass);
  CHECK(b.successes == 20);
  CHECK(param(b, "target_dim") == 15);
  CHECK(param(b, "domain_dim") == 17);

  ExperimentReport c = maxrank_mc(2, 3, Multidegree({3}), 4, f, 20, 42);
  CHECK(c.verdict == Verdict::Pass);
  CHECK(c.successes == 20);
  CHECK(param(c, "target_dim") == 19);
  CHECK(param(c, "domain_dim") == 19);
}

TEST_CASE("maxrank_mc below the dimension threshold never succeeds") {
  PrimeField f(32003);
  ExperimentReport rep = maxrank_mc(1, 3, Multidegree({3}), 2, f, 20, 42);
  CHECK(rep.verdict == Verdict::Inconclusive);
  CHECK(rep.successes == 0);
  CHECK(param(rep, "domain_dim") == 8);
  CHECK(param(rep, "target_dim") == 9);
  CHECK(param(rep, "inequality_holds") == false);
  CHECK(param(rep, "max_rank") == 8);  // bounded by the domain
  CHECK_FALSE(rep.failed());
}

TEST_CASE("maxrank_mc outside its restrictions needs the informational flag") {
  PrimeField f(32003);
  // t below 3
  CHECK_THROWS_AS(maxrank_mc(1, 2, Multidegree({2}), 3, f, 5, 42),
                  std::invalid_argument);
  // t not the maximal degree
  CHECK_THROWS_AS(maxrank_mc(1, 3, Multidegree({3, 4}), 5, f, 5, 42),
                  std::invalid_argument);
  // tied maximum
  CHECK_THROWS_AS(maxrank_mc(1, 3, Multidegree({3, 3}), 5, f, 5, 42),
                  std::invalid_argument);

  ExperimentReport info = maxrank_mc(1, 2, Multidegree({2}), 3, f, 5, 42, true);
  CHECK(info.verdict == Verdict::Info);
  CHECK_FALSE(info.failed());
}

TEST_CASE("maxrank_mc is deterministic per seed") {
  PrimeField f(32003);
  ExperimentReport a = maxrank_mc(1, 3, Multidegree({3}), 3, f, 8, 7);
  ExperimentReport b = maxrank_mc(1, 3, Multidegree({3}), 3, f, 8, 7);
  CHECK(a.to_json() == b.to_json());
}

TEST_CASE("lastineg_check pinned chain") {
  ExperimentReport rep = lastineg_check(1, Multidegree({3}), 3);
  CHECK(rep.verdict == Verdict::Pass);
  CHECK(rep.detail == "u=1: 2 <= 3, u=2: 4 <= 6, u=3: 7 <= 9");
  CHECK(param(rep, "convexity_ok") == true);

  CHECK(lastineg_check(2, Multidegree({3}), 4).verdict == Verdict::Pass);
}

TEST_CASE("lastineg_check holds at the minimal admissible count") {
  SplitMix64 rng(314);
  int tested = 0;
  while (tested < 150) {
    int r = static_cast<int>(rng.below(5));
    int s = 1 + static_cast<int>(rng.below(3));
    std::vector<int> degs;
    for (int i = 0; i < s - 1; ++i)
      degs.push_back(2 + static_cast<int>(rng.below(4)));
    std::sort(degs.begin(), degs.end());
    int top = std::max(3, degs.empty() ? 3 : degs.back() + 1);
    top += static_cast<int>(rng.below(3));
    if (top > 6) top = 6;
    if (!degs.empty() && top <= degs.back()) continue;
    degs.push_back(top);
    Multidegree dd(degs);

    // minimal p_count with (r+2)*p + r + 1 >= monomial_count(r+2, dd) - 1
    Bigint need = monomial_count(r + 2, dd) - r - 2;
    long long p_min =
        static_cast<long long>(ceil_div(need, Bigint(r + 2)));
    ExperimentReport rep = lastineg_check(r, dd, p_min);
    CHECK(rep.verdict == Verdict::Pass);
    CHECK(param(rep, "convexity_ok") == true);
    CHECK_THROWS_AS(lastineg_check(r, dd, p_min - 1), std::invalid_argument);
    ++tested;
  }
}

TEST_CASE("tangent_rank_mc certifies the full-rank regime") {
  PrimeField f(32003);
  ExperimentReport rep = tangent_rank_mc(5, 1, 3, Multidegree({3}), f, 20, 42);
  CHECK(rep.verdict == Verdict::Pass);
  CHECK(rep.successes == 20);
  CHECK(param(rep, "c") == 9);
  CHECK(param(rep, "max_rank") == 9);
  CHECK(param(rep, "rho") == 2);
}

TEST_CASE("tangent_rank_mc outside the restrictions reports informationally") {
  PrimeField f(32003);
  ExperimentReport rep = tangent_rank_mc(2, 0, 2, Multidegree({2}), f, 10, 42);
  CHECK(rep.verdict == Verdict::Info);
  CHECK(param(rep, "c") == 2);
  CHECK(param(rep, "max_rank") == 2);
  CHECK_FALSE(rep.failed());
}

TEST_CASE("tangent_rank_mc confirms the double-line exception") {
  PrimeField f(32003);
  ExperimentReport rep = tangent_rank_mc(3, 1, 2, Multidegree({2}), f, 50, 42);
  CHECK(rep.verdict == Verdict::Pass);
  CHECK(rep.successes == 50);
  CHECK(param(rep, "c") == 5);
  CHECK(param(rep, "max_rank") == 4);
  CHECK(param(rep, "rho") == 0);
}

TEST_CASE("tangent_rank_mc rank never exceeds its dimension bounds") {
  PrimeField f(101);
  SplitMix64 rng(5150);
  for (int iter = 0; iter < 10; ++iter) {
    int r = static_cast<int>(rng.below(2));
    int n = r + 2 + static_cast<int>(rng.below(3));
    int t = 2 + static_cast<int>(rng.below(2));
    int top = std::max(t, 2 + static_cast<int>(rng.below(3)));
    Multidegree dd({top});
    ExperimentReport rep = tangent_rank_mc(n, r, t, dd, f, 5, rng.next());
    long long c = param(rep, "c").get<long long>();
    long long domain = param(rep, "domain_dim").get<long long>();
    long long max_rank = param(rep, "max_rank").get<long long>();
    CHECK(max_rank <= c);
    CHECK(max_rank <= domain);
    CHECK(domain == (r + 2ll) * (n - r - 1) + r + 1);
  }
}

TEST_CASE("quadric_exception holds at several primes") {
  for (std::uint64_t p : {5ull, 7ull, 32003ull}) {
    ExperimentReport rep = quadric_exception(PrimeField(p), 100, 42);
    CHECK(rep.verdict == Verdict::Pass);
    CHECK(rep.trials == 100);
    CHECK(rep.successes == 100);
    CHECK(param(rep, "rho") == 0);
    CHECK(param(rep, "smooth_quadric_contained") == false);
  }
}

TEST_CASE("rho_prime_identity worked values") {
  ExperimentReport a = rho_prime_identity(5, 1, Multidegree({2, 3}));
  CHECK(a.verdict == Verdict::Pass);
  CHECK(param(a, "via_full_taylor") == -6);
  CHECK(param(a, "via_reduced_taylor") == -6);
  CHECK(param(a, "via_direct") == -6);

  ExperimentReport b = rho_prime_identity(3, 1, Multidegree({2}));
  CHECK(b.verdict == Verdict::Pass);
  CHECK(param(b, "via_direct") == -1);

  ExperimentReport c = rho_prime_identity(6, 2, Multidegree({2, 3}));
  CHECK(c.verdict == Verdict::Pass);
  CHECK(param(c, "via_direct") == -16);

  CHECK_THROWS_AS(rho_prime_identity(5, 0, Multidegree({2, 3})),
                  std::invalid_argument);
  CHECK_THROWS_AS(rho_prime_identity(5, 1, Multidegree({3, 3})),
                  std::invalid_argument);
}

TEST_CASE("rho_prime_identity on random admissible tuples") {
  SplitMix64 rng(60);
  int tested = 0;
  while (tested < 300) {
    int r = 1 + static_cast<int>(rng.below(4));
    int s = 1 + static_cast<int>(rng.below(3));
    std::vector<int> degs;
    for (int i = 0; i < s - 1; ++i)
      degs.push_back(2 + static_cast<int>(rng.below(4)));
    std::sort(degs.begin(), degs.end());
    int top = std::max(3, (degs.empty() ? 2 : degs.back()) + 1 +
                              static_cast<int>(rng.below(2)));
    if (top > 6) continue;
    degs.push_back(top);
    int n = r + s + 1 + static_cast<int>(rng.below(6));
    if (n > 12) continue;
    ExperimentReport rep = rho_prime_identity(n, r, Multidegree(degs));
    CHECK(rep.verdict == Verdict::Pass);
    ++tested;
  }
}

TEST_CASE("fat_point_search finds a verified witness in P^6") {
  ExperimentReport rep =
      fat_point_search(6, Multidegree({2, 3}), PrimeField(7), 42);
  CHECK(rep.verdict == Verdict::Pass);
  REQUIRE(rep.witness.has_value());
  CHECK((*rep.witness)["verified"] == true);
  CHECK((*rep.witness)["field"] == "GF(7)");
  CHECK((*rep.witness)["point"].size() == 7);
  CHECK((*rep.witness)["direction"].size() == 7);
  CHECK(param(rep, "condition_count") == 2);
  CHECK(param(rep, "condition_count_expected") == 2);
}

TEST_CASE("fat_point_search in P^5 may need the quadratic extension") {
  ExperimentReport rep =
      fat_point_search(5, Multidegree({2, 3}), PrimeField(7), 42);
  CHECK(rep.verdict == Verdict::Pass);
  REQUIRE(rep.witness.has_value());
  CHECK((*rep.witness)["verified"] == true);
  std::string field = (*rep.witness)["field"].get<std::string>();
  CHECK((field == "GF(7)" || field == "GF(7^2)"));
}

TEST_CASE("fat_point_search exhaustion is inconclusive, not a failure") {
  FatPointOptions opts;
  opts.max_base_points = 1;
  opts.max_extension = 1;
  opts.direction_budget = 0;
  ExperimentReport rep =
      fat_point_search(6, Multidegree({2, 3}), PrimeField(7), 42, opts);
  CHECK(rep.verdict == Verdict::Inconclusive);
  CHECK_FALSE(rep.failed());
  CHECK_FALSE(rep.witness.has_value());
}

TEST_CASE("fat_point_search validates its covering precondition") {
  // n - s < sum(d_i - 1)
  CHECK_THROWS_AS(fat_point_search(3, Multidegree({2, 3}), PrimeField(7), 1),
                  std::invalid_argument);
  // tied top degree
  CHECK_THROWS_AS(fat_point_search(8, Multidegree({3, 3}), PrimeField(7), 1),
                  std::invalid_argument);
  // top degree below 3
  CHECK_THROWS_AS(fat_point_search(4, Multidegree({2}), PrimeField(7), 1),
                  std::invalid_argument);
}

TEST_CASE("ExperimentReport serialization shape") {
  PrimeField f(32003);
  ExperimentReport rep = maxrank_mc(1, 3, Multidegree({3}), 3, f, 3, 9);
  nlohmann::ordered_json j = rep.to_json();
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  CHECK(keys == std::vector<std::string>{"name", "params", "trials",
                                         "successes", "witness", "verdict",
                                         "seed", "detail"});
  CHECK(j["name"] == "maxrank");
  CHECK(j["seed"] == 9);
  CHECK(j["verdict"] == "pass");
  CHECK(verdict_name(Verdict::Fail) == std::string("fail"));
  CHECK(verdict_name(Verdict::Inconclusive) == std::string("inconclusive"));
  CHECK(verdict_name(Verdict::Info) == std::string("info"));
}
