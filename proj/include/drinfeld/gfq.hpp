#pragma once

// Finite fields F_q, q = p^e <= 2^20.
//
// Elements are carried around as a canonical integer code in [0, q). For a
// prime field the code is the residue. For an extension the code of
// c_0 + c_1 a + ... + c_{e-1} a^{e-1} (a a root of the modulus) is
// sum_i c_i p^(e-1-i), so that integer order on codes is the lexicographic
// order on (c_0, c_1, ...) read from the constant term upward.

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "drinfeld/error.hpp"

namespace drinfeld {

using Coeff = std::uint32_t;

inline constexpr std::uint64_t kMaxFieldSize = std::uint64_t{1} << 20;

namespace detail {
struct FieldData;
}

class FqElem;

/// Immutable handle to F_q. Copies share the same tables.
class Field {
 public:
  /// Builds F_{p^e}. For e > 1 the modulus is the first monic irreducible
  /// of degree e over F_p in canonical polynomial order.
  static Field make(std::uint64_t p, unsigned e = 1);

  /// Builds the field of order q (q must be a prime power).
  static Field of_order(std::uint64_t q);

  std::uint64_t p() const noexcept;
  unsigned e() const noexcept;
  std::uint64_t q() const noexcept;

  /// Monic modulus over F_p, low degree first (e + 1 entries); empty when e == 1.
  std::span<const std::uint32_t> modulus() const noexcept;

  Coeff zero() const noexcept { return 0; }
  Coeff one() const noexcept;

  Coeff add(Coeff a, Coeff b) const noexcept;
  Coeff sub(Coeff a, Coeff b) const noexcept;
  Coeff neg(Coeff a) const noexcept;
  Coeff mul(Coeff a, Coeff b) const noexcept;
  /// Throws DomainError on zero.
  Coeff inv(Coeff a) const;
  /// Negative exponents invert first.
  Coeff pow(Coeff a, std::int64_t k) const;

  /// Coordinates (c_0, ..., c_{e-1}) of an element code.
  std::vector<std::uint32_t> digits(Coeff a) const;
  Coeff from_digits(std::span<const std::uint32_t> digits) const;

  /// Every element in canonical order, zero first.
  std::vector<FqElem> elements() const;
  FqElem elem(Coeff code) const;

  /// `gf(q)`.
  std::string spec_string() const;
  /// Decimal residue (e == 1) or `[c0,c1,...]`.
  std::string format(Coeff a) const;
  Coeff parse(std::string_view text) const;

  friend bool operator==(const Field& a, const Field& b) noexcept {
    return a.data_ == b.data_ || (a.p() == b.p() && a.e() == b.e());
  }

  const detail::FieldData& data() const noexcept { return *data_; }

 private:
  explicit Field(std::shared_ptr<const detail::FieldData> d) : data_(std::move(d)) {}
  std::shared_ptr<const detail::FieldData> data_;
};

/// Parses `gf(q)` or a bare `q`.
Field parse_field(std::string_view text);

/// Field element tagged with its field. Arithmetic between elements of
/// different fields throws DomainError.
class FqElem {
 public:
  FqElem(Field field, Coeff code);

  const Field& field() const noexcept { return field_; }
  Coeff code() const noexcept { return code_; }
  bool is_zero() const noexcept { return code_ == 0; }
  std::vector<std::uint32_t> coeffs() const { return field_.digits(code_); }

  FqElem inv() const { return {field_, field_.inv(code_)}; }
  FqElem pow(std::int64_t k) const { return {field_, field_.pow(code_, k)}; }

  friend FqElem operator+(const FqElem& a, const FqElem& b);
  friend FqElem operator-(const FqElem& a, const FqElem& b);
  friend FqElem operator*(const FqElem& a, const FqElem& b);
  friend FqElem operator/(const FqElem& a, const FqElem& b);
  friend FqElem operator-(const FqElem& a) { return {a.field_, a.field_.neg(a.code_)}; }

  friend bool operator==(const FqElem& a, const FqElem& b) noexcept {
    return a.field_ == b.field_ && a.code_ == b.code_;
  }
  friend auto operator<=>(const FqElem& a, const FqElem& b) noexcept { return a.code_ <=> b.code_; }

  std::string to_string() const { return field_.format(code_); }

 private:
  Field field_;
  Coeff code_;
};

inline FqElem inv(const FqElem& a) { return a.inv(); }
inline FqElem pow(const FqElem& a, std::int64_t k) { return a.pow(k); }

bool is_prime(std::uint64_t n) noexcept;

namespace detail {

struct FieldData {
  std::uint64_t p = 0;
  unsigned e = 1;
  std::uint64_t q = 0;
  std::vector<std::uint32_t> modulus;
  // p^(e-1-i): weight of coordinate i inside a code
  std::vector<std::uint64_t> place_value;
  // extension fields only: exp[k] = g^k, log[exp[k]] = k for a primitive g
  std::vector<Coeff> exp;
  std::vector<std::uint32_t> log;
  // extension fields with small q: full addition table
  std::vector<Coeff> add_table;

  Coeff add_slow(Coeff a, Coeff b) const noexcept;
  Coeff neg_slow(Coeff a) const noexcept;
};

}  // namespace detail

inline std::uint64_t Field::p() const noexcept { return data_->p; }
inline unsigned Field::e() const noexcept { return data_->e; }
inline std::uint64_t Field::q() const noexcept { return data_->q; }
inline std::span<const std::uint32_t> Field::modulus() const noexcept { return data_->modulus; }

inline Coeff Field::one() const noexcept {
  return static_cast<Coeff>(data_->place_value.front());
}

inline Coeff Field::add(Coeff a, Coeff b) const noexcept {
  const auto& d = *data_;
  if (d.p == 2) return a ^ b;
  if (d.e == 1) {
    std::uint64_t s = std::uint64_t{a} + b;
    return static_cast<Coeff>(s >= d.p ? s - d.p : s);
  }
  if (!d.add_table.empty()) return d.add_table[a * d.q + b];
  return d.add_slow(a, b);
}

inline Coeff Field::neg(Coeff a) const noexcept {
  const auto& d = *data_;
  if (d.p == 2 || a == 0) return a;
  if (d.e == 1) return static_cast<Coeff>(d.p - a);
  return d.neg_slow(a);
}

inline Coeff Field::sub(Coeff a, Coeff b) const noexcept { return add(a, neg(b)); }

inline Coeff Field::mul(Coeff a, Coeff b) const noexcept {
  const auto& d = *data_;
  if (a == 0 || b == 0) return 0;
  if (d.e == 1) return static_cast<Coeff>(std::uint64_t{a} * b % d.p);
  std::uint64_t k = std::uint64_t{d.log[a]} + d.log[b];
  if (k >= d.q - 1) k -= d.q - 1;
  return d.exp[k];
}

}  // namespace drinfeld
