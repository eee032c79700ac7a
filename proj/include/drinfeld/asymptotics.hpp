#pragma once

// Closed-form leading coefficients for point counts by height.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "drinfeld/drinfeld_module.hpp"

namespace drinfeld {

struct CurveParams {
  std::uint64_t q = 2;
  std::uint64_t genus = 0;
  BigInt class_number = 1;
  std::uint64_t d_inf = 1;

  static CurveParams rational(std::uint64_t q) { return CurveParams{q, 0, 1, 1}; }
};

/// count(b) ~ leading * q^(exponent * b), error O(q^(error_exponent * b)),
/// times log(q^b) when log_factor is set.
struct AsymptoticPrediction {
  Rational leading;
  std::uint64_t exponent = 0;
  Rational error_exponent;
  bool log_factor = false;

  /// leading * q^(exponent * b), exact.
  Rational predicted(std::uint64_t q, std::int64_t b) const;

  nlohmann::json to_json() const;
  static AsymptoticPrediction from_json(const nlohmann::json& j);
  friend bool operator==(const AsymptoticPrediction&, const AsymptoticPrediction&) = default;
};

/// 1 / ((1 - q^-s)(1 - q^(1-s))). Throws DomainError for s < 2.
Rational zeta_FqT(std::uint64_t q, std::int64_t s);

/// The leading coefficient for points of P(w)(K) by height:
/// h_K gcd(q-1, w) / (zeta_K(|w|) q^(#w (g-1)) (q-1)) * infinity_ratio * prod local.
/// For g = 0 zeta_K is zeta_FqT; higher genus needs `zeta_value` supplied.
AsymptoticPrediction kappa_wps(const CurveParams& params, const WeightVector& w, std::span<const Rational> local = {},
                               const Rational& infinity_ratio = Rational(1),
                               const std::optional<Rational>& zeta_value = std::nullopt);

using PrimeCondition = std::pair<Prime, LocalCondition>;

/// Throws DomainError when a prime repeats.
void check_distinct_primes(std::span<const PrimeCondition> conditions);

/// prod_i kappa(L_i, N(p_i), r).
Rational finite_density(int r, std::span<const PrimeCondition> conditions);

/// Rank-r modules with reduction type L_i at p_i.
AsymptoticPrediction kappa_drinfeld_finite(std::uint64_t q, int r, std::span<const PrimeCondition> conditions = {});

/// zeta(r-s+1)^-1 prod_i kappa_i / (1 - N(p_i)^(-r+s-1)).
Rational everywhere_density(std::uint64_t q, int r, int s, std::span<const PrimeCondition> conditions = {});
/// (1 - q^-(r-s)) (1 - q^-(r-s+1)).
Rational everywhere_density_closed_form(std::uint64_t q, int r, int s);

/// Rank-r modules with stable reduction of rank >= s outside the listed
/// primes and type L_i at p_i.
AsymptoticPrediction kappa_drinfeld_everywhere(std::uint64_t q, int r, int s,
                                               std::span<const PrimeCondition> conditions = {});

/// sum_{i=1}^r (q^i - 1), the total moduli weight.
std::uint64_t drinfeld_weight_exponent(std::uint64_t q, int r);
/// (q^(r+1) - q) / (q - 1) = sum_{i=1}^r q^i.
std::uint64_t drinfeld_alt_exponent(std::uint64_t q, int r);

}  // namespace drinfeld
