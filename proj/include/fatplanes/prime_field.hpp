#pragma once

#include <cstdint>
#include <stdexcept>

namespace fatplanes {

bool is_prime_u64(std::uint64_t n);

// GF(p) for an odd prime p < 2^31 (products fit in uint64 without widening).
// Residues are canonical representatives in [0, p).
class PrimeField {
 public:
  explicit PrimeField(std::uint64_t p);

  std::uint64_t modulus() const { return p_; }

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    std::uint64_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const {
    return a >= b ? a - b : a + p_ - b;
  }
  std::uint64_t neg(std::uint64_t a) const { return a == 0 ? 0 : p_ - a; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    return (a * b) % p_;
  }
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;
  // extended-Euclid inverse; a == 0 raises std::domain_error
  std::uint64_t inv(std::uint64_t a) const;
  // canonical residue of a signed integer
  std::uint64_t reduce(long long v) const;

  bool operator==(const PrimeField& o) const { return p_ == o.p_; }

 private:
  std::uint64_t p_;
};

// GF(p^2) = GF(p)[w]/(w^2 - nonresidue), used only by the fat-point search
// when directions over the base field run out.
class QuadExt {
 public:
  struct Elem {
    std::uint64_t a = 0, b = 0;  // a + b*w
    bool operator==(const Elem&) const = default;
  };

  explicit QuadExt(const PrimeField& base);

  const PrimeField& base() const { return f_; }
  std::uint64_t nonresidue() const { return nr_; }

  Elem from_base(std::uint64_t a) const { return Elem{a, 0}; }
  Elem zero() const { return Elem{0, 0}; }
  Elem one() const { return Elem{1, 0}; }
  bool is_zero(const Elem& x) const { return x.a == 0 && x.b == 0; }

  Elem add(const Elem& x, const Elem& y) const {
    return Elem{f_.add(x.a, y.a), f_.add(x.b, y.b)};
  }
  Elem sub(const Elem& x, const Elem& y) const {
    return Elem{f_.sub(x.a, y.a), f_.sub(x.b, y.b)};
  }
  Elem neg(const Elem& x) const { return Elem{f_.neg(x.a), f_.neg(x.b)}; }
  Elem mul(const Elem& x, const Elem& y) const {
    std::uint64_t aa = f_.mul(x.a, y.a), bb = f_.mul(x.b, y.b);
    std::uint64_t cross = f_.add(f_.mul(x.a, y.b), f_.mul(x.b, y.a));
    return Elem{f_.add(aa, f_.mul(nr_, bb)), cross};
  }
  Elem inv(const Elem& x) const;
  Elem pow(Elem x, std::uint64_t e) const;

 private:
  PrimeField f_;
  std::uint64_t nr_;
};

}  // namespace fatplanes
