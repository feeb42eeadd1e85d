#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>
#include <stdexcept>
#include <vector>

#include "fatplanes/fp_matrix.hpp"
#include "fatplanes/prime_field.hpp"
#include "fatplanes/rng.hpp"

using namespace fatplanes;

TEST_CASE("primality checker spot values") {
  CHECK(is_prime_u64(2));
  CHECK(is_prime_u64(3));
  CHECK(is_prime_u64(7));
  CHECK(is_prime_u64(32003));
  CHECK(is_prime_u64(2147483647ull));
  CHECK_FALSE(is_prime_u64(0));
  CHECK_FALSE(is_prime_u64(1));
  CHECK_FALSE(is_prime_u64(9));
  CHECK_FALSE(is_prime_u64(32001));  // 3 * 10667
  CHECK_FALSE(is_prime_u64(1ull << 40));
}

TEST_CASE("PrimeField construction constraints") {
  CHECK_NOTHROW(PrimeField(7));
  CHECK_NOTHROW(PrimeField(32003));
  CHECK_NOTHROW(PrimeField(2147483647ull));
  CHECK_THROWS_AS(PrimeField(4), std::invalid_argument);
  CHECK_THROWS_AS(PrimeField(2), std::invalid_argument);
  CHECK_THROWS_AS(PrimeField(1), std::invalid_argument);
  // first prime above the 2^31 word-size cap
  CHECK_THROWS_AS(PrimeField(2147483659ull), std::invalid_argument);
}

TEST_CASE("field arithmetic basics") {
  PrimeField f(7);
  CHECK(f.add(5, 4) == 2);
  CHECK(f.sub(2, 5) == 4);
  CHECK(f.neg(3) == 4);
  CHECK(f.neg(0) == 0);
  CHECK(f.mul(4, 5) == 6);
  CHECK(f.pow(3, 0) == 1);
  CHECK(f.pow(3, 6) == 1);  // Fermat
  CHECK(f.reduce(-1) == 6);
  CHECK(f.reduce(15) == 1);
  CHECK(f.reduce(-14) == 0);
}

TEST_CASE("inverse pinned values and Fermat cross-check") {
  PrimeField f7(7);
  CHECK(f7.inv(3) == 5);
  CHECK(f7.inv(1) == 1);
  CHECK_THROWS_AS(f7.inv(0), std::domain_error);

  for (std::uint64_t p : {101ull, 32003ull}) {
    PrimeField f(p);
    SplitMix64 rng(p);
    for (int i = 0; i < 200; ++i) {
      std::uint64_t a = 1 + rng.below(p - 1);
      std::uint64_t via_gcd = f.inv(a);
      CHECK(via_gcd == f.pow(a, p - 2));
      CHECK(f.mul(a, via_gcd) == 1);
    }
  }
}

TEST_CASE("mat_rank pinned values") {
  PrimeField f7(7);
  PrimeFieldMatrix id(3, 3, f7);
  for (int i = 0; i < 3; ++i) id.set(i, i, 1);
  CHECK(mat_rank(id) == 3);

  PrimeField f5(5);
  PrimeFieldMatrix dep(2, 2, f5);
  dep.set(0, 0, 1);
  dep.set(0, 1, 2);
  dep.set(1, 0, 2);
  dep.set(1, 1, 4);
  CHECK(mat_rank(dep) == 1);

  PrimeFieldMatrix zero(1, 1, f5);
  CHECK(mat_rank(zero) == 0);
}

TEST_CASE("rank invariants on random matrices") {
  PrimeField f(32003);
  SplitMix64 rng(31337);
  for (int iter = 0; iter < 40; ++iter) {
    size_t rows = 1 + rng.below(12);
    size_t cols = 1 + rng.below(12);
    PrimeFieldMatrix m = random_matrix(rows, cols, f, rng.next());
    size_t rank = mat_rank(m);
    CHECK(rank <= std::min(rows, cols));
    CHECK(rank == mat_rank(m.transposed()));

    std::vector<size_t> perm(rows);
    for (size_t i = 0; i < rows; ++i) perm[i] = i;
    for (size_t i = rows; i > 1; --i)
      std::swap(perm[i - 1], perm[rng.below(i)]);
    PrimeFieldMatrix shuffled(rows, cols, f);
    for (size_t i = 0; i < rows; ++i)
      for (size_t j = 0; j < cols; ++j)
        shuffled.set(i, j, m.at(perm[i], j));
    CHECK(mat_rank(shuffled) == rank);
  }
}

TEST_CASE("serial and parallel elimination agree") {
  PrimeField f(32003);
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    PrimeFieldMatrix m = random_matrix(200, 300, f, seed);
    CHECK(mat_rank_serial(m) == mat_rank_parallel(m));
  }
  // low-rank case: outer product plus a few extra rows
  PrimeFieldMatrix low(150, 100, f);
  SplitMix64 rng(17);
  std::vector<std::uint64_t> u(150), v(100);
  for (auto& x : u) x = rng.below(f.modulus());
  for (auto& x : v) x = rng.below(f.modulus());
  for (size_t i = 0; i < 150; ++i)
    for (size_t j = 0; j < 100; ++j) low.set(i, j, f.mul(u[i], v[j]));
  CHECK(mat_rank_serial(low) == 1);
  CHECK(mat_rank_parallel(low) == 1);
}

TEST_CASE("mat_kernel spans the null space") {
  PrimeField f(101);
  SplitMix64 rng(4242);
  for (int iter = 0; iter < 25; ++iter) {
    size_t rows = 1 + rng.below(10);
    size_t cols = 1 + rng.below(10);
    PrimeFieldMatrix m = random_matrix(rows, cols, f, rng.next());
    auto kernel = mat_kernel(m);
    CHECK(kernel.size() == cols - mat_rank(m));
    for (const auto& vec : kernel) {
      REQUIRE(vec.size() == cols);
      bool nonzero = false;
      for (auto x : vec) nonzero = nonzero || x != 0;
      CHECK(nonzero);
      for (size_t i = 0; i < rows; ++i) {
        std::uint64_t acc = 0;
        for (size_t j = 0; j < cols; ++j)
          acc = f.add(acc, f.mul(m.at(i, j), vec[j]));
        CHECK(acc == 0);
      }
    }
  }
  PrimeFieldMatrix id(4, 4, f);
  for (int i = 0; i < 4; ++i) id.set(i, i, 1);
  CHECK(mat_kernel(id).empty());
  PrimeFieldMatrix zero(3, 5, f);
  CHECK(mat_kernel(zero).size() == 5);
}

TEST_CASE("generator matches the reference splitmix64 vectors") {
  SplitMix64 rng(0);
  CHECK(rng.next() == 0xE220A8397B1DCDAFull);
  CHECK(rng.next() == 0x6E789E6AA1B965F4ull);
  CHECK(rng.next() == 0x06C45D188009454Full);
}

TEST_CASE("bounded draws stay in range and are deterministic") {
  SplitMix64 a(987), b(987);
  for (int i = 0; i < 1000; ++i) {
    std::uint64_t x = a.below(17);
    CHECK(x < 17);
    CHECK(x == b.below(17));
  }
}

TEST_CASE("seeded_sample determinism and mean sanity") {
  PrimeField f(32003);
  CHECK(seeded_sample(0, f, 1).empty());
  auto s1 = seeded_sample(64, f, 99);
  auto s2 = seeded_sample(64, f, 99);
  CHECK(s1 == s2);
  CHECK(s1 != seeded_sample(64, f, 100));

  auto big = seeded_sample(10000, f, 5);
  long double mean = 0;
  for (auto x : big) {
    CHECK(x < f.modulus());
    mean += x;
  }
  mean /= big.size();
  long double target = (f.modulus() - 1) / 2.0L;
  CHECK(mean > target * 0.95L);
  CHECK(mean < target * 1.05L);
}

TEST_CASE("child seeds are distinct and order-independent") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 200; ++i)
    seen.insert(child_seed(42, i));
  CHECK(seen.size() == 200);
  CHECK(child_seed(42, 7) == child_seed(42, 7));
  CHECK(child_seed(42, 7) != child_seed(43, 7));
}

TEST_CASE("quadratic extension arithmetic") {
  PrimeField f7(7);
  QuadExt e(f7);
  CHECK(e.nonresidue() == 3);  // squares mod 7 are {1,2,4}

  // (1+2w)(3+w) = 3+7w+2w^2 = 3+6 = 2 with w^2 = 3
  QuadExt::Elem x{1, 2}, y{3, 1};
  CHECK(e.mul(x, y) == QuadExt::Elem{2, 0});
  CHECK(e.add(x, y) == QuadExt::Elem{4, 3});
  CHECK(e.sub(x, y) == QuadExt::Elem{5, 1});
  CHECK(e.is_zero(e.sub(x, x)));
  CHECK(e.mul(x, e.one()) == x);
  CHECK(e.is_zero(e.mul(x, e.zero())));

  PrimeField f(32003);
  QuadExt big(f);
  std::uint64_t nr = big.nonresidue();
  CHECK(f.pow(nr, (f.modulus() - 1) / 2) == f.modulus() - 1);  // Euler test
}

TEST_CASE("quadratic extension inverse and Frobenius") {
  PrimeField f(101);
  QuadExt e(f);
  SplitMix64 rng(55);
  std::uint64_t p = f.modulus();
  for (int i = 0; i < 100; ++i) {
    QuadExt::Elem x{rng.below(p), rng.below(p)};
    if (e.is_zero(x)) continue;
    CHECK(e.mul(x, e.inv(x)) == e.one());
    CHECK(e.pow(x, p * p) == x);            // Frobenius squared is identity
    CHECK(e.pow(x, p * p - 1) == e.one());  // multiplicative group order
  }
  CHECK_THROWS_AS(e.inv(e.zero()), std::domain_error);
  // a base-field element is fixed by Frobenius itself
  QuadExt::Elem base = e.from_base(17);
  CHECK(e.pow(base, p) == base);
  // w is moved by Frobenius: w^p = -w
  QuadExt::Elem w{0, 1};
  CHECK(e.pow(w, p) == e.neg(w));
}
