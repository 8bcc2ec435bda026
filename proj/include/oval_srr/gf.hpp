#pragma once

// Exact arithmetic in GF(p^m).
//
// An element is stored as its canonical integer: the coefficients of its
// polynomial representative, read as base-p digits (coefficient of x^j is
// digit j). Multiplication and inversion go through exp/log tables built
// from the primitive element; addition is digit-wise mod p.

#include <cstdint>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "caps.hpp"
#include "errors.hpp"

namespace oval {

class Field;
using FieldPtr = std::shared_ptr<const Field>;

class FieldElement {
 public:
  FieldElement() = default;

  std::uint32_t rep() const noexcept { return rep_; }
  const Field* field() const noexcept { return field_; }
  bool is_zero() const noexcept { return rep_ == 0; }

  friend bool operator==(const FieldElement& a, const FieldElement& b) noexcept {
    return a.field_ == b.field_ && a.rep_ == b.rep_;
  }

  FieldElement operator-() const;
  FieldElement inv() const;
  FieldElement pow(std::uint64_t e) const;

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b);
  FieldElement& operator+=(const FieldElement& b) { return *this = *this + b; }
  FieldElement& operator-=(const FieldElement& b) { return *this = *this - b; }
  FieldElement& operator*=(const FieldElement& b) { return *this = *this * b; }

  friend std::ostream& operator<<(std::ostream& os, const FieldElement& a) { return os << a.rep_; }

 private:
  friend class Field;
  FieldElement(const Field* f, std::uint32_t rep) : field_(f), rep_(rep) {}

  const Field* field_ = nullptr;
  std::uint32_t rep_ = 0;
};

/// (p, m, modulus coefficients low to high)
struct FieldDescriptor {
  std::uint32_t p = 0;
  std::uint32_t m = 0;
  std::vector<std::uint32_t> modulus;

  friend bool operator==(const FieldDescriptor&, const FieldDescriptor&) = default;
};

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

/// Returns (p, m) with q = p^m, or nullopt-like {0,0} when q is not a prime power.
inline std::pair<std::uint32_t, std::uint32_t> prime_power_decompose(std::uint64_t q) {
  if (q < 2) return {0, 0};
  auto f = prime_factors(q);
  if (f.size() != 1) return {0, 0};
  std::uint32_t m = 0;
  while (q > 1) {
    q /= f[0];
    ++m;
  }
  return {static_cast<std::uint32_t>(f[0]), m};
}

namespace detail {

// Dense polynomials over GF(p), coefficients low to high, no trailing zeros
// (the zero polynomial is empty).
using Poly = std::vector<std::uint32_t>;

inline void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::uint32_t inv_mod_prime(std::uint32_t a, std::uint32_t p) {
  std::uint64_t r = 1, b = a % p;
  for (std::uint64_t e = p - 2; e > 0; e >>= 1) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
  }
  return static_cast<std::uint32_t>(r);
}

inline Poly poly_mod(Poly a, const Poly& mod, std::uint32_t p) {
  trim(a);
  const std::size_t dm = mod.size() - 1;
  const std::uint32_t lead_inv = inv_mod_prime(mod.back(), p);
  while (a.size() > dm) {
    const std::size_t shift = a.size() - 1 - dm;
    const std::uint64_t factor = static_cast<std::uint64_t>(a.back()) * lead_inv % p;
    for (std::size_t j = 0; j <= dm; ++j) {
      const std::uint64_t sub = factor * mod[j] % p;
      a[shift + j] = static_cast<std::uint32_t>((a[shift + j] + p - sub) % p);
    }
    trim(a);
  }
  return a;
}

inline Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& mod, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = static_cast<std::uint32_t>((r[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p);
  return poly_mod(std::move(r), mod, p);
}

inline Poly poly_from_rep(std::uint64_t rep, std::uint32_t p) {
  Poly a;
  while (rep > 0) {
    a.push_back(static_cast<std::uint32_t>(rep % p));
    rep /= p;
  }
  return a;
}

inline std::uint64_t poly_to_rep(const Poly& a, std::uint32_t p) {
  std::uint64_t rep = 0;
  for (std::size_t j = a.size(); j-- > 0;) rep = rep * p + a[j];
  return rep;
}

inline std::uint64_t ipow(std::uint64_t b, std::uint32_t e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// Trial division by every monic polynomial of degree 1..m/2.
inline bool is_irreducible(const Poly& f, std::uint32_t p) {
  const std::size_t m = f.size() - 1;
  for (std::size_t d = 1; d <= m / 2; ++d) {
    const std::uint64_t first = ipow(p, static_cast<std::uint32_t>(d));
    for (std::uint64_t rep = first; rep < 2 * first; ++rep) {
      if (poly_mod(f, poly_from_rep(rep, p), p).empty()) return false;
    }
  }
  return true;
}

}  // namespace detail

/// A finite field GF(p^m). Immutable after construction; share it through
/// FieldPtr. Elements keep a raw pointer to their field, so the field must
/// outlive them.
class Field {
 public:
  std::uint32_t p() const noexcept { return p_; }
  std::uint32_t m() const noexcept { return m_; }
  std::uint32_t q() const noexcept { return q_; }
  bool is_even() const noexcept { return p_ == 2; }
  const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }
  FieldDescriptor descriptor() const { return {p_, m_, modulus_}; }

  FieldElement zero() const { return {this, 0}; }
  FieldElement one() const { return {this, 1}; }
  FieldElement primitive() const { return {this, primitive_}; }

  FieldElement element(std::uint64_t rep) const {
    if (rep >= q_) throw Error(Errc::InvalidParameters, "element rep " + std::to_string(rep) + " outside GF(" + std::to_string(q_) + ")");
    return {this, static_cast<std::uint32_t>(rep)};
  }

  /// primitive^e
  FieldElement exp(std::uint64_t e) const { return {this, exp_[e % (q_ - 1)]}; }

  /// Discrete log to the primitive base; a must be nonzero.
  std::uint32_t log(const FieldElement& a) const {
    check(a);
    if (a.rep_ == 0) throw Error(Errc::DivisionByZero, "log of zero");
    return log_[a.rep_];
  }

  FieldElement add(const FieldElement& a, const FieldElement& b) const {
    check(a, b);
    if (m_ == 1) return {this, static_cast<std::uint32_t>((a.rep_ + b.rep_) % p_)};
    if (p_ == 2) return {this, a.rep_ ^ b.rep_};
    std::uint32_t x = a.rep_, y = b.rep_, r = 0, place = 1;
    for (std::uint32_t j = 0; j < m_; ++j) {
      r += ((x % p_ + y % p_) % p_) * place;
      x /= p_;
      y /= p_;
      place *= p_;
    }
    return {this, r};
  }

  FieldElement neg(const FieldElement& a) const {
    check(a);
    if (p_ == 2) return a;
    if (m_ == 1) return {this, (p_ - a.rep_) % p_};
    std::uint32_t x = a.rep_, r = 0, place = 1;
    for (std::uint32_t j = 0; j < m_; ++j) {
      r += ((p_ - x % p_) % p_) * place;
      x /= p_;
      place *= p_;
    }
    return {this, r};
  }

  FieldElement sub(const FieldElement& a, const FieldElement& b) const { return add(a, neg(b)); }

  FieldElement mul(const FieldElement& a, const FieldElement& b) const {
    check(a, b);
    if (a.rep_ == 0 || b.rep_ == 0) return zero();
    std::uint32_t e = log_[a.rep_] + log_[b.rep_];
    if (e >= q_ - 1) e -= q_ - 1;
    return {this, exp_[e]};
  }

  FieldElement inv(const FieldElement& a) const {
    check(a);
    if (a.rep_ == 0) throw Error(Errc::DivisionByZero, "inverse of zero");
    return {this, exp_[(q_ - 1 - log_[a.rep_]) % (q_ - 1)]};
  }

  FieldElement pow(const FieldElement& a, std::uint64_t e) const {
    check(a);
    FieldElement r = one(), b = a;
    for (; e > 0; e >>= 1) {
      if (e & 1) r = mul(r, b);
      b = mul(b, b);
    }
    return r;
  }

  /// Euler criterion for odd q; every element is a square when q is even.
  bool is_square(const FieldElement& a) const {
    check(a);
    if (p_ == 2 || a.rep_ == 0) return true;
    return pow(a, (q_ - 1) / 2).rep_ == 1;
  }

  /// Multiplicative order of a nonzero element, by brute-force powering.
  std::uint64_t order(const FieldElement& a) const {
    check(a);
    if (a.rep_ == 0) throw Error(Errc::DivisionByZero, "order of zero");
    FieldElement x = a;
    std::uint64_t k = 1;
    while (x.rep_ != 1) {
      x = mul(x, a);
      ++k;
    }
    return k;
  }

  std::vector<FieldElement> elements() const {
    std::vector<FieldElement> out;
    out.reserve(q_);
    for (std::uint32_t r = 0; r < q_; ++r) out.push_back({this, r});
    return out;
  }

  void check(const FieldElement& a) const {
    if (a.field_ != this) throw Error(Errc::FieldMismatch, "element does not belong to GF(" + std::to_string(q_) + ")");
  }
  void check(const FieldElement& a, const FieldElement& b) const {
    check(a);
    check(b);
  }

  friend FieldPtr field_new(std::uint64_t p, std::uint64_t m, const Caps& caps);

 private:
  Field() = default;

  std::uint32_t p_ = 0, m_ = 0, q_ = 0;
  std::vector<std::uint32_t> modulus_;
  std::uint32_t primitive_ = 0;
  std::vector<std::uint32_t> exp_;  // size q-1
  std::vector<std::uint32_t> log_;  // size q, log_[0] unused
};

/// Builds GF(p^m) with the smallest monic irreducible modulus (by canonical
/// integer) and the smallest primitive element. Reproducible.
inline FieldPtr field_new(std::uint64_t p, std::uint64_t m, const Caps& caps = {}) {
  if (m < 1) throw Error(Errc::InvalidParameters, "extension degree must be >= 1");
  if (!is_prime(p)) throw Error(Errc::NonPrimeCharacteristic, std::to_string(p) + " is not prime");
  std::uint64_t q = 1;
  for (std::uint64_t i = 0; i < m; ++i) {
    q *= p;
    if (q > caps.field_size) throw Error(Errc::SizeCapExceeded, "p^m exceeds cap " + std::to_string(caps.field_size));
  }
  const auto pp = static_cast<std::uint32_t>(p);

  std::shared_ptr<Field> f(new Field());
  f->p_ = pp;
  f->m_ = static_cast<std::uint32_t>(m);
  f->q_ = static_cast<std::uint32_t>(q);

  detail::Poly modulus;
  for (std::uint64_t rep = q; rep < 2 * q; ++rep) {
    auto cand = detail::poly_from_rep(rep, pp);
    if (detail::is_irreducible(cand, pp)) {
      modulus = std::move(cand);
      break;
    }
  }
  f->modulus_ = modulus;

  // exp/log tables need a primitive element; find it with polynomial
  // arithmetic first.
  const auto order_divisors = prime_factors(q - 1);
  auto poly_pow = [&](const detail::Poly& base, std::uint64_t e) {
    detail::Poly r{1}, b = base;
    for (; e > 0; e >>= 1) {
      if (e & 1) r = detail::poly_mulmod(r, b, modulus, pp);
      b = detail::poly_mulmod(b, b, modulus, pp);
    }
    return r;
  };
  for (std::uint64_t rep = 1; rep < q; ++rep) {
    const auto g = detail::poly_from_rep(rep, pp);
    bool primitive = true;
    for (auto r : order_divisors) {
      if (poly_pow(g, (q - 1) / r) == detail::Poly{1}) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      f->primitive_ = static_cast<std::uint32_t>(rep);
      break;
    }
  }

  f->exp_.resize(q - 1);
  f->log_.assign(q, 0);
  const auto g = detail::poly_from_rep(f->primitive_, pp);
  detail::Poly x{1};
  for (std::uint64_t e = 0; e + 1 < q; ++e) {
    const auto rep = static_cast<std::uint32_t>(detail::poly_to_rep(x, pp));
    f->exp_[e] = rep;
    f->log_[rep] = static_cast<std::uint32_t>(e);
    x = detail::poly_mulmod(x, g, modulus, pp);
  }
  return f;
}

inline FieldPtr field_from_size(std::uint64_t q, const Caps& caps = {}) {
  auto [p, m] = prime_power_decompose(q);
  if (p == 0) throw Error(Errc::NonPrimeCharacteristic, std::to_string(q) + " is not a prime power");
  return field_new(p, m, caps);
}

inline FieldElement FieldElement::operator-() const {
  if (!field_) throw Error(Errc::FieldMismatch, "uninitialized element");
  return field_->neg(*this);
}
inline FieldElement FieldElement::inv() const {
  if (!field_) throw Error(Errc::FieldMismatch, "uninitialized element");
  return field_->inv(*this);
}
inline FieldElement FieldElement::pow(std::uint64_t e) const {
  if (!field_) throw Error(Errc::FieldMismatch, "uninitialized element");
  return field_->pow(*this, e);
}
inline FieldElement operator+(const FieldElement& a, const FieldElement& b) {
  if (!a.field_) throw Error(Errc::FieldMismatch, "uninitialized element");
  return a.field_->add(a, b);
}
inline FieldElement operator-(const FieldElement& a, const FieldElement& b) {
  if (!a.field_) throw Error(Errc::FieldMismatch, "uninitialized element");
  return a.field_->sub(a, b);
}
inline FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  if (!a.field_) throw Error(Errc::FieldMismatch, "uninitialized element");
  return a.field_->mul(a, b);
}
inline FieldElement operator/(const FieldElement& a, const FieldElement& b) {
  if (!a.field_) throw Error(Errc::FieldMismatch, "uninitialized element");
  return a.field_->mul(a, a.field_->inv(b));
}

}  // namespace oval
