#pragma once

// Table-driven arithmetic in the finite fields GF(p^e), q = p^e <= 16.
//
// A scalar is an index in 0..q-1. For a prime field the index is the residue.
// For an extension field the index encodes the polynomial representative
// c_0 + c_1 x + ... + c_{e-1} x^{e-1} as sum c_i p^i, so in GF(4) the index 2
// is x and 3 is x + 1.

#include <array>
#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "lincx/errors.hpp"

namespace lincx {

using Scalar = std::uint8_t;

inline constexpr unsigned kMaxFieldOrder = 16;

class Field {
 public:
  unsigned characteristic() const { return p_; }
  unsigned degree() const { return e_; }
  unsigned order() const { return q_; }
  // Monic modulus, coefficients low degree first (length e + 1). For prime
  // fields this is x.
  const std::vector<unsigned>& modulus() const { return modulus_; }

  Scalar add(Scalar a, Scalar b) const { return add_[a][b]; }
  Scalar sub(Scalar a, Scalar b) const { return add_[a][neg_[b]]; }
  Scalar neg(Scalar a) const { return neg_[a]; }
  Scalar mul(Scalar a, Scalar b) const { return mul_[a][b]; }

  Scalar inv(Scalar a) const {
    if (a == 0) throw DivisionByZero();
    return inv_[a];
  }
  Scalar div(Scalar a, Scalar b) const { return mul(a, inv(b)); }

  Scalar pow(Scalar a, unsigned k) const {
    Scalar r = 1;
    for (unsigned i = 0; i < k; ++i) r = mul(r, a);
    return r;
  }

  // Discrete log with respect to the primitive element; a != 0.
  unsigned log(Scalar a) const {
    if (a == 0) throw DivisionByZero();
    return log_[a];
  }
  Scalar antilog(unsigned k) const { return exp_[k % (q_ - 1)]; }
  Scalar primitive_element() const { return exp_[1 % (q_ - 1)]; }

  bool operator==(const Field& o) const { return q_ == o.q_; }

  // Builds GF(q). Throws NotPrimePower for q that is not a prime power or is
  // larger than kMaxFieldOrder.
  static Field create(unsigned q);

  // Shared immutable instance for GF(q).
  static const Field& get(unsigned q);

 private:
  Field() = default;

  unsigned p_ = 0, e_ = 0, q_ = 0;
  std::vector<unsigned> modulus_;
  std::array<std::array<Scalar, kMaxFieldOrder>, kMaxFieldOrder> add_{};
  std::array<std::array<Scalar, kMaxFieldOrder>, kMaxFieldOrder> mul_{};
  std::array<Scalar, kMaxFieldOrder> neg_{}, inv_{};
  std::array<unsigned, kMaxFieldOrder> log_{};
  std::array<Scalar, kMaxFieldOrder> exp_{};
};

namespace detail {

inline bool is_prime(unsigned p) {
  if (p < 2) return false;
  for (unsigned d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

// Polynomials over GF(p) as coefficient vectors, low degree first.
using Poly = std::vector<unsigned>;

inline void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo the monic polynomial m.
inline Poly poly_mod(Poly a, const Poly& m, unsigned p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  while (a.size() > dm) {
    const unsigned lead = a.back();
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i)
      a[shift + i] = (a[shift + i] + p - (lead * m[i]) % p) % p;
    trim(a);
  }
  return a;
}

// Monic polynomial of the given degree whose low coefficients are the base-p
// digits of `code`, least significant first.
inline Poly monic_from_code(unsigned code, unsigned degree, unsigned p) {
  Poly f(degree + 1, 0);
  for (unsigned i = 0; i < degree; ++i) {
    f[i] = code % p;
    code /= p;
  }
  f[degree] = 1;
  return f;
}

// Irreducibility by trial division with every monic polynomial of degree
// 1..deg/2. Adequate for the degrees that occur here (<= 4).
inline bool is_irreducible(const Poly& f, unsigned p) {
  const unsigned deg = static_cast<unsigned>(f.size() - 1);
  for (unsigned d = 1; 2 * d <= deg; ++d) {
    unsigned count = 1;
    for (unsigned i = 0; i < d; ++i) count *= p;
    for (unsigned code = 0; code < count; ++code) {
      if (poly_mod(f, monic_from_code(code, d, p), p).empty()) return false;
    }
  }
  return true;
}

// Lexicographically smallest monic irreducible polynomial of degree e over
// GF(p), comparing coefficients from the constant term upwards.
inline Poly smallest_irreducible(unsigned p, unsigned e) {
  unsigned count = 1;
  for (unsigned i = 0; i < e; ++i) count *= p;
  // Enumerate coefficient tuples with c_0 most significant.
  for (unsigned rank = 0; rank < count; ++rank) {
    Poly f(e + 1, 0);
    unsigned r = rank;
    for (unsigned i = e; i-- > 0;) {
      f[i] = r % p;
      r /= p;
    }
    f[e] = 1;
    if (is_irreducible(f, p)) return f;
  }
  throw InternalInconsistency("no irreducible polynomial found");
}

}  // namespace detail

inline Field Field::create(unsigned q) {
  if (q < 2 || q > kMaxFieldOrder)
    throw NotPrimePower("field order " + std::to_string(q) + " not supported (need a prime power <= 16)");
  unsigned p = 2;
  while (q % p != 0) ++p;
  unsigned e = 0, rest = q;
  while (rest % p == 0) {
    rest /= p;
    ++e;
  }
  if (rest != 1 || !detail::is_prime(p))
    throw NotPrimePower("field order " + std::to_string(q) + " is not a prime power");

  Field f;
  f.p_ = p;
  f.e_ = e;
  f.q_ = q;
  f.modulus_ = (e == 1) ? detail::Poly{0, 1} : detail::smallest_irreducible(p, e);

  auto to_poly = [&](unsigned idx) {
    detail::Poly a(e, 0);
    for (unsigned i = 0; i < e; ++i) {
      a[i] = idx % p;
      idx /= p;
    }
    return a;
  };
  auto to_index = [&](const detail::Poly& a) {
    unsigned idx = 0;
    for (std::size_t i = a.size(); i-- > 0;) idx = idx * p + a[i];
    return static_cast<Scalar>(idx);
  };

  for (unsigned a = 0; a < q; ++a) {
    const auto pa = to_poly(a);
    for (unsigned b = 0; b < q; ++b) {
      const auto pb = to_poly(b);
      detail::Poly s(e);
      for (unsigned i = 0; i < e; ++i) s[i] = (pa[i] + pb[i]) % p;
      f.add_[a][b] = to_index(s);

      detail::Poly prod(2 * e, 0);
      for (unsigned i = 0; i < e; ++i)
        for (unsigned j = 0; j < e; ++j) prod[i + j] = (prod[i + j] + pa[i] * pb[j]) % p;
      auto red = (e == 1) ? detail::Poly{prod[0]} : detail::poly_mod(prod, f.modulus_, p);
      red.resize(e, 0);
      f.mul_[a][b] = to_index(red);
    }
  }
  for (unsigned a = 0; a < q; ++a) {
    for (unsigned b = 0; b < q; ++b) {
      if (f.add_[a][b] == 0) f.neg_[a] = static_cast<Scalar>(b);
      if (f.mul_[a][b] == 1) f.inv_[a] = static_cast<Scalar>(b);
    }
  }
  // Smallest primitive element.
  for (unsigned g = 1; g < q; ++g) {
    unsigned order = 1;
    Scalar x = static_cast<Scalar>(g);
    while (x != 1) {
      x = f.mul_[x][g];
      ++order;
    }
    if (order != q - 1) continue;
    x = 1;
    for (unsigned k = 0; k < q - 1; ++k) {
      f.exp_[k] = x;
      f.log_[x] = k;
      x = f.mul_[x][g];
    }
    break;
  }
  return f;
}

inline const Field& Field::get(unsigned q) {
  static std::array<std::unique_ptr<Field>, kMaxFieldOrder + 1> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  if (q > kMaxFieldOrder) Field::create(q);  // throws
  if (!cache[q]) cache[q] = std::make_unique<Field>(Field::create(q));
  return *cache[q];
}

inline Field field_create(unsigned q) { return Field::create(q); }

// A scalar tagged with its field. Arithmetic between elements of different
// fields throws MixedFields; the untagged Field methods are the fast path.
class Element {
 public:
  Element(const Field& f, Scalar v) : f_(&f), v_(v) {
    if (v >= f.order()) throw Error("scalar index out of range");
  }

  const Field& field() const { return *f_; }
  Scalar value() const { return v_; }

  friend Element operator+(Element a, Element b) { return {check(a, b), a.f_->add(a.v_, b.v_)}; }
  friend Element operator-(Element a, Element b) { return {check(a, b), a.f_->sub(a.v_, b.v_)}; }
  friend Element operator*(Element a, Element b) { return {check(a, b), a.f_->mul(a.v_, b.v_)}; }
  friend Element operator/(Element a, Element b) { return {check(a, b), a.f_->div(a.v_, b.v_)}; }
  Element operator-() const { return {*f_, f_->neg(v_)}; }
  Element inverse() const { return {*f_, f_->inv(v_)}; }

  friend bool operator==(Element a, Element b) { return check(a, b), a.v_ == b.v_; }

 private:
  static const Field& check(Element a, Element b) {
    if (!(*a.f_ == *b.f_)) throw MixedFields();
    return *a.f_;
  }

  const Field* f_;
  Scalar v_;
};

}  // namespace lincx
