#pragma once

// Rank-r Drinfeld F_q[T]-modules over F_q(T) as points of
// P(q-1, q^2-1, ..., q^r-1), with reduction types at primes.

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "drinfeld/wps.hpp"

namespace drinfeld {

/// StableRank(s) for s in [1, r], or Unstable (s == 0).
class ReductionType {
 public:
  static ReductionType stable_rank(int s) { return ReductionType(s); }
  static ReductionType unstable() { return ReductionType(0); }

  bool is_unstable() const noexcept { return s_ == 0; }
  bool is_stable() const noexcept { return s_ > 0; }
  /// 0 when unstable.
  int rank() const noexcept { return s_; }
  bool is_good(int r) const noexcept { return s_ == r; }

  std::string to_string() const;
  friend bool operator==(ReductionType, ReductionType) = default;

 private:
  explicit ReductionType(int s) : s_(s) {}
  int s_;
};

struct LocalCondition {
  enum class Kind { Good, Bad, Stable, Unstable, StableRankEq, StableRankGeq };
  Kind kind;
  int s = 0;

  static LocalCondition good() { return {Kind::Good}; }
  static LocalCondition bad() { return {Kind::Bad}; }
  static LocalCondition stable() { return {Kind::Stable}; }
  static LocalCondition unstable() { return {Kind::Unstable}; }
  static LocalCondition stable_eq(int s) { return {Kind::StableRankEq, s}; }
  static LocalCondition stable_geq(int s) { return {Kind::StableRankGeq, s}; }

  /// Throws DomainError when s is outside [1, r].
  void check_rank(int r) const;
  bool holds(ReductionType t, int r) const;

  /// `good|bad|stable|unstable|stable=s|stable>=s`.
  std::string to_string() const;
  friend bool operator==(const LocalCondition&, const LocalCondition&) = default;
};

LocalCondition parse_condition(std::string_view text);

/// Table 1 density of a condition at a prime of norm Np, exact.
Rational kappa(const LocalCondition& c, const BigInt& Np, int r);

/// Classification of a residue tuple: largest i with component i nonzero.
ReductionType classify(std::span<const Poly> g, const Prime& p);

class DrinfeldModule {
 public:
  /// Normalizes g = (g_1, ..., g_r). Throws DomainError when g_r = 0.
  static DrinfeldModule from_coeffs(const Field& field, std::span<const RationalFunction> g);
  static DrinfeldModule from_coeffs(const Field& field, std::span<const Poly> g);
  /// Wraps an already normalized point with Drinfeld weights.
  static DrinfeldModule from_point(WppPoint point);

  const Field& field() const noexcept { return point_.coords.front().field(); }
  int rank() const noexcept { return static_cast<int>(point_.coords.size()); }
  std::span<const Poly> g() const noexcept { return point_.coords; }
  const WppPoint& point() const noexcept { return point_; }
  std::int64_t height() const noexcept { return point_.height; }

  /// `phi_T = T + (g_1)*tau + ... + (g_r)*tau^r over gf(q)`.
  std::string to_string() const;
  friend bool operator==(const DrinfeldModule& a, const DrinfeldModule& b) { return a.point_ == b.point_; }

 private:
  explicit DrinfeldModule(WppPoint p) : point_(std::move(p)) {}
  WppPoint point_;
};

ReductionType reduction_type(const DrinfeldModule& phi, const Prime& p);
bool satisfies(const DrinfeldModule& phi, const Prime& p, const LocalCondition& c);
bool satisfies(std::span<const Poly> g, const Prime& p, const LocalCondition& c);

/// Stable reduction of rank >= s at every prime (1 <= s < r).
bool everywhere_stable_geq(const DrinfeldModule& phi, int s);
/// The same, ignoring the primes in `excluded`.
bool everywhere_stable_geq(std::span<const Poly> g, int s, std::span<const Prime> excluded = {});

/// Height-b modules: wps points for the Drinfeld weights with g_r != 0.
std::vector<DrinfeldModule> enumerate_drinfeld(const Field& field, int r, std::int64_t b,
                                               EnumerationOptions options = {});

}  // namespace drinfeld
