#include "fatplanes/prime_field.hpp"

namespace fatplanes {

namespace {

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(
      static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod_u64(r, a, m);
    a = mulmod_u64(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL,
                          23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // deterministic witness set for 64-bit inputs
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL,
                          23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 0; i < s - 1; ++i) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

PrimeField::PrimeField(std::uint64_t p) : p_(p) {
  if (p <= 2) throw std::invalid_argument("prime field: needs an odd prime");
  if (p >= (1ULL << 31))
    throw std::invalid_argument("prime field: modulus must be < 2^31");
  if (!is_prime_u64(p))
    throw std::invalid_argument("prime field: modulus is not prime");
}

std::uint64_t PrimeField::pow(std::uint64_t a, std::uint64_t e) const {
  std::uint64_t r = 1;
  a %= p_;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

std::uint64_t PrimeField::inv(std::uint64_t a) const {
  a %= p_;
  if (a == 0) throw std::domain_error("prime field: inverse of zero");
  long long t = 0, new_t = 1;
  long long r = static_cast<long long>(p_), new_r = static_cast<long long>(a);
  while (new_r != 0) {
    long long q = r / new_r;
    long long tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (t < 0) t += static_cast<long long>(p_);
  return static_cast<std::uint64_t>(t);
}

std::uint64_t PrimeField::reduce(long long v) const {
  long long m = static_cast<long long>(p_);
  long long r = v % m;
  if (r < 0) r += m;
  return static_cast<std::uint64_t>(r);
}

QuadExt::QuadExt(const PrimeField& base) : f_(base), nr_(0) {
  std::uint64_t p = f_.modulus();
  for (std::uint64_t g = 2; g < p; ++g) {
    if (f_.pow(g, (p - 1) / 2) == p - 1) {
      nr_ = g;
      break;
    }
  }
  if (nr_ == 0)
    throw std::logic_error("quadratic extension: no nonresidue found");
}

QuadExt::Elem QuadExt::inv(const Elem& x) const {
  if (is_zero(x)) throw std::domain_error("quadratic extension: inverse of zero");
  // (a + bw)^-1 = (a - bw) / (a^2 - nr * b^2)
  std::uint64_t denom =
      f_.sub(f_.mul(x.a, x.a), f_.mul(nr_, f_.mul(x.b, x.b)));
  std::uint64_t d = f_.inv(denom);
  return Elem{f_.mul(x.a, d), f_.mul(f_.neg(x.b), d)};
}

QuadExt::Elem QuadExt::pow(Elem x, std::uint64_t e) const {
  Elem r = one();
  while (e) {
    if (e & 1) r = mul(r, x);
    x = mul(x, x);
    e >>= 1;
  }
  return r;
}

}  // namespace fatplanes
