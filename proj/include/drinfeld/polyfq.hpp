#pragma once

// The ring A = F_q[T] and the places of K = F_q(T).

#include <compare>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "drinfeld/gfq.hpp"
#include "drinfeld/rational.hpp"

namespace drinfeld {

/// Degree of the zero polynomial. Absorbing under add_degrees.
inline constexpr int kNegInfDegree = std::numeric_limits<int>::min();

constexpr int add_degrees(int a, int b) noexcept {
  return (a == kNegInfDegree || b == kNegInfDegree) ? kNegInfDegree : a + b;
}

/// Element of F_q[T]; coefficients low degree first, no trailing zeros.
class Poly {
 public:
  explicit Poly(Field field) : field_(std::move(field)) {}
  Poly(Field field, std::vector<Coeff> coeffs);

  static Poly constant(Field field, Coeff c);
  static Poly monomial(Field field, Coeff c, int k);
  /// The indeterminate T.
  static Poly t(Field field);

  const Field& field() const noexcept { return field_; }
  int degree() const noexcept { return c_.empty() ? kNegInfDegree : static_cast<int>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  bool is_constant() const noexcept { return c_.size() <= 1; }
  bool is_one() const noexcept { return c_.size() == 1 && c_[0] == field_.one(); }
  bool is_monic() const noexcept { return !c_.empty() && c_.back() == field_.one(); }
  Coeff leading() const noexcept { return c_.empty() ? 0 : c_.back(); }
  Coeff operator[](int k) const noexcept {
    return (k >= 0 && static_cast<std::size_t>(k) < c_.size()) ? c_[static_cast<std::size_t>(k)] : 0;
  }
  FqElem coeff(int k) const { return field_.elem((*this)[k]); }
  std::span<const Coeff> coeffs() const noexcept { return c_; }

  /// Monic associate; zero stays zero.
  Poly monic() const;
  Poly scaled(Coeff c) const;
  Poly pow(std::uint64_t k) const;
  /// Evaluates at an element of F_q.
  Coeff eval(Coeff x) const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const Poly& b) { return a *= b; }
  friend Poly operator-(const Poly& a);

  friend bool operator==(const Poly& a, const Poly& b) noexcept { return a.field_ == b.field_ && a.c_ == b.c_; }
  /// Canonical order: by degree, then coefficient codes compared from the
  /// constant term upward.
  friend std::strong_ordering operator<=>(const Poly& a, const Poly& b) noexcept;

  std::string to_string() const;

  // buffer access for enumeration kernels
  std::vector<Coeff>& raw() noexcept { return c_; }

 private:
  void trim() noexcept;
  void check_field(const Poly& o) const;

  Field field_;
  std::vector<Coeff> c_;
};

struct DivMod {
  Poly quotient;
  Poly remainder;
};

/// Euclidean division; throws DomainError when b is zero.
DivMod divmod(const Poly& a, const Poly& b);
Poly operator/(const Poly& a, const Poly& b);
Poly operator%(const Poly& a, const Poly& b);
/// Monic gcd; gcd(0, 0) = 0.
Poly gcd(const Poly& a, const Poly& b);
/// d | f, with every d dividing 0.
bool divides(const Poly& d, const Poly& f);

/// Ben-Or: certifies that a monic f has no factor of degree <= deg(f)/2.
bool is_irreducible(const Poly& f);

/// A monic irreducible polynomial, i.e. a finite place of F_q(T).
struct PrimeAccess;

class Prime {
 public:
  /// Throws DomainError unless `poly` is monic and irreducible.
  explicit Prime(Poly poly);

  const Poly& poly() const noexcept { return poly_; }
  int degree() const noexcept { return poly_.degree(); }
  /// N(p) = q^deg(p).
  const BigInt& norm() const noexcept { return norm_; }

  friend bool operator==(const Prime& a, const Prime& b) noexcept { return a.poly_ == b.poly_; }
  friend std::strong_ordering operator<=>(const Prime& a, const Prime& b) noexcept { return a.poly_ <=> b.poly_; }

  std::string to_string() const { return poly_.to_string(); }

 private:
  struct Certified {};
  Prime(Poly poly, Certified);
  friend struct PrimeAccess;

  Poly poly_;
  BigInt norm_;
};

struct Infinity {
  friend bool operator==(Infinity, Infinity) noexcept { return true; }
};

/// Finite(Prime) | Infinity. The infinite place has degree 1.
using Place = std::variant<Prime, Infinity>;

int place_degree(const Place& v) noexcept;

/// Every monic irreducible of degree exactly d in canonical order.
/// Throws WorkBoundError when q^d > 2^26. Results are cached per field.
std::vector<Prime> enumerate_monic_irreducibles(const Field& field, int d);
const std::vector<Prime>& monic_irreducibles(const Field& field, int d);

/// Necklace count (1/d) sum_{e|d} mu(e) q^(d/e).
BigInt count_irreducibles(const Field& field, int d);
BigInt count_irreducibles(std::uint64_t q, int d);
int mobius(std::uint64_t n) noexcept;

/// Every polynomial of degree <= d_max (zero first), canonical order.
std::vector<Poly> enumerate_polys(const Field& field, int d_max);
/// The polynomial at position `index` of enumerate_polys(field, *).
Poly poly_at(const Field& field, std::uint64_t index);

struct PrimePower {
  Prime prime;
  int multiplicity;
};

struct Factorization {
  Coeff unit;
  std::vector<PrimePower> factors;  // increasing prime order

  Poly expand(const Field& field) const;
};

/// Trial division against the monic irreducibles in increasing degree.
Factorization factor(const Poly& f);

/// Multiplicity of p in f; +INF (kInfiniteValuation) for f = 0.
using Valuation = std::int64_t;
inline constexpr Valuation kInfiniteValuation = std::numeric_limits<Valuation>::max();

Valuation valuation(const Poly& f, const Prime& p);

/// Reduced fraction num/den with den monic.
class RationalFunction {
 public:
  explicit RationalFunction(Field field) : num_(field), den_(Poly::constant(field, field.one())) {}
  RationalFunction(Poly num);  // NOLINT(google-explicit-constructor)
  RationalFunction(Poly num, Poly den);

  const Poly& num() const noexcept { return num_; }
  const Poly& den() const noexcept { return den_; }
  const Field& field() const noexcept { return num_.field(); }
  bool is_zero() const noexcept { return num_.is_zero(); }
  bool is_integral() const noexcept { return den_.is_constant(); }

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
  friend bool operator==(const RationalFunction& a, const RationalFunction& b) noexcept {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  std::string to_string() const;

 private:
  Poly num_;
  Poly den_;
};

/// v_p(x) = mult_p(num) - mult_p(den); v_inf(x) = deg(den) - deg(num);
/// +INF for x = 0.
Valuation valuation(const RationalFunction& x, const Place& v);

/// `c*T^k` terms joined by `+`, descending powers, zero terms and unit
/// coefficients omitted, e.g. `T^2+T+2`.
std::string format_poly(const Poly& f);
Poly parse_poly(const Field& field, std::string_view text);
/// Parses and certifies a monic irreducible.
Prime parse_prime(const Field& field, std::string_view text);

}  // namespace drinfeld
