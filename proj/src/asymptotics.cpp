#include "drinfeld/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace drinfeld {

namespace {

// exact q^(|w|) beyond this many bits is refused
constexpr double kMaxExactBits = 1 << 16;

Rational q_pow(std::uint64_t q, std::int64_t k) { return rpow(Rational(BigInt(static_cast<unsigned long>(q))), k); }

void check_q(std::uint64_t q) {
  if (q < 2) throw DomainError("q must be at least 2");
}

}  // namespace

Rational AsymptoticPrediction::predicted(std::uint64_t q, std::int64_t b) const {
  return leading * q_pow(q, static_cast<std::int64_t>(exponent) * b);
}

nlohmann::json AsymptoticPrediction::to_json() const {
  return nlohmann::json{{"leading_num", leading.get_num().get_str()},
                        {"leading_den", leading.get_den().get_str()},
                        {"exponent", exponent},
                        {"error_exponent", to_fraction_string(error_exponent)},
                        {"log_factor", log_factor}};
}

AsymptoticPrediction AsymptoticPrediction::from_json(const nlohmann::json& j) {
  AsymptoticPrediction p;
  p.leading = Rational(BigInt(j.at("leading_num").get<std::string>()), BigInt(j.at("leading_den").get<std::string>()));
  p.leading.canonicalize();
  p.exponent = j.at("exponent").get<std::uint64_t>();
  p.error_exponent = parse_fraction(j.at("error_exponent").get<std::string>());
  p.log_factor = j.at("log_factor").get<bool>();
  return p;
}

Rational zeta_FqT(std::uint64_t q, std::int64_t s) {
  check_q(q);
  if (s < 2) throw DomainError("zeta is evaluated only at s >= 2");
  if (static_cast<double>(s) * std::log2(static_cast<double>(q)) > kMaxExactBits)
    throw DomainError("zeta(" + std::to_string(s) + ") is too large to evaluate exactly");
  const Rational inv = (Rational(1) - q_pow(q, -s)) * (Rational(1) - q_pow(q, 1 - s));
  return Rational(1) / inv;
}

AsymptoticPrediction kappa_wps(const CurveParams& params, const WeightVector& w, std::span<const Rational> local,
                               const Rational& infinity_ratio, const std::optional<Rational>& zeta_value) {
  check_q(params.q);
  if (params.d_inf < 1) throw DomainError("d_inf must be positive");
  if (w.total() < 2) throw DomainError("|w| must be at least 2");
  Rational zeta;
  if (zeta_value) {
    zeta = *zeta_value;
  } else if (params.genus == 0 && params.class_number == 1) {
    zeta = zeta_FqT(params.q, static_cast<std::int64_t>(w.total()));
  } else {
    throw DomainError("curves other than the projective line need an explicit zeta value");
  }
  std::uint64_t g = params.q - 1;
  for (auto wi : w.weights()) g = std::gcd(g, wi);

  const std::int64_t n = static_cast<std::int64_t>(w.size());
  const std::int64_t genus = static_cast<std::int64_t>(params.genus);
  Rational k = Rational(params.class_number) * Rational(BigInt(static_cast<unsigned long>(g))) /
               (zeta * q_pow(params.q, n * (genus - 1)) * Rational(BigInt(static_cast<unsigned long>(params.q - 1))));
  k *= infinity_ratio;
  for (const auto& l : local) k *= l;
  k.canonicalize();

  AsymptoticPrediction p;
  p.leading = k;
  p.exponent = w.total();
  if (w.size() == 2 && params.d_inf == 1) {
    p.error_exponent = Rational(1);
    p.log_factor = true;
  } else {
    p.error_exponent = Rational(BigInt(static_cast<unsigned long>(w.total()))) -
                       Rational(BigInt(static_cast<unsigned long>(w.min())), BigInt(static_cast<unsigned long>(params.d_inf)));
    p.error_exponent.canonicalize();
  }
  return p;
}

void check_distinct_primes(std::span<const PrimeCondition> conditions) {
  for (std::size_t i = 0; i < conditions.size(); ++i)
    for (std::size_t j = i + 1; j < conditions.size(); ++j)
      if (conditions[i].first == conditions[j].first)
        throw DomainError("repeated prime " + conditions[i].first.to_string());
}

Rational finite_density(int r, std::span<const PrimeCondition> conditions) {
  check_distinct_primes(conditions);
  Rational d(1);
  for (const auto& [p, c] : conditions) d *= kappa(c, p.norm(), r);
  return d;
}

AsymptoticPrediction kappa_drinfeld_finite(std::uint64_t q, int r, std::span<const PrimeCondition> conditions) {
  const Rational local = finite_density(r, conditions);
  const auto w = WeightVector::drinfeld(q, r);
  return kappa_wps(CurveParams::rational(q), w, std::span<const Rational>(&local, 1));
}

Rational everywhere_density(std::uint64_t q, int r, int s, std::span<const PrimeCondition> conditions) {
  if (s < 1 || s >= r) throw DomainError("everywhere condition needs 1 <= s < r");
  check_distinct_primes(conditions);
  Rational d = Rational(1) / zeta_FqT(q, r - s + 1);
  for (const auto& [p, c] : conditions) {
    const Rational k = kappa(c, p.norm(), r);
    const Rational removed = Rational(1) - Rational(BigInt(1), ipow(p.norm(), static_cast<std::uint64_t>(r - s + 1)));
    d *= k / removed;
  }
  d.canonicalize();
  return d;
}

Rational everywhere_density_closed_form(std::uint64_t q, int r, int s) {
  if (s < 1 || s >= r) throw DomainError("everywhere condition needs 1 <= s < r");
  check_q(q);
  return (Rational(1) - q_pow(q, -(r - s))) * (Rational(1) - q_pow(q, -(r - s + 1)));
}

AsymptoticPrediction kappa_drinfeld_everywhere(std::uint64_t q, int r, int s,
                                               std::span<const PrimeCondition> conditions) {
  const Rational local = everywhere_density(q, r, s, conditions);
  const auto w = WeightVector::drinfeld(q, r);
  return kappa_wps(CurveParams::rational(q), w, std::span<const Rational>(&local, 1));
}

std::uint64_t drinfeld_weight_exponent(std::uint64_t q, int r) { return WeightVector::drinfeld(q, r).total(); }

std::uint64_t drinfeld_alt_exponent(std::uint64_t q, int r) {
  return drinfeld_weight_exponent(q, r) + static_cast<std::uint64_t>(r);
}

}  // namespace drinfeld
