#pragma once

// Exact counts by height against the asymptotic predictions.

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "drinfeld/asymptotics.hpp"

namespace drinfeld {

struct DrinfeldRank {
  int r;
  friend bool operator==(const DrinfeldRank&, const DrinfeldRank&) = default;
};

using Population = std::variant<DrinfeldRank, WeightVector>;

struct CensusQuery {
  Field field;
  Population population;
  /// Inclusive; empty when b_min > b_max.
  std::int64_t b_min = 0;
  std::int64_t b_max = -1;
  std::vector<PrimeCondition> finite_conditions;
  /// Stable reduction of rank >= s at every prime outside finite_conditions.
  std::optional<int> everywhere;
  EnumerationOptions options;

  /// Throws DomainError on repeated primes, out-of-range ranks, or
  /// conditions on a non-Drinfeld population.
  void validate() const;
  WeightVector weights() const;
};

struct CensusRow {
  std::int64_t b = 0;
  BigInt exact_count;
  BigInt population_count;
  Rational predicted;
  std::uint64_t exponent_used = 0;
  std::uint64_t alt_exponent = 0;
  Rational alt_predicted;

  Rational ratio() const;
  Rational alt_ratio() const;
  Rational empirical_density() const;
  friend bool operator==(const CensusRow&, const CensusRow&) = default;
};

struct CensusReport {
  std::string field;       // gf(q)
  std::string population;  // rank=r or w=(...)
  std::vector<std::string> conditions;
  std::optional<int> everywhere;
  AsymptoticPrediction prediction;
  std::vector<CensusRow> rows;

  std::string to_csv() const;
  nlohmann::json to_json() const;
  std::string to_pretty() const;
  static CensusReport from_csv(std::string_view text);
  static CensusReport from_json(const nlohmann::json& j);
  friend bool operator==(const CensusReport&, const CensusReport&) = default;
};

/// The leading coefficient and exponent used for the query.
AsymptoticPrediction census_prediction(const CensusQuery& query);
CensusReport run_census(const CensusQuery& query);

/// Fraction of all N(p)^r residue tuples over A/p whose classification
/// satisfies c. Throws WorkBoundError when N(p)^r > 10^6.
Rational residue_density_oracle(const Field& field, const Prime& p, int r, const LocalCondition& c);

struct ConvergenceRow {
  std::int64_t b;
  Rational ratio;
  /// log_q(count(b+1)) - log_q(count(b)); empty for zero counts and the last row.
  std::optional<double> log_q_increment;
};

std::vector<std::optional<double>> log_increments(std::uint64_t q, const std::vector<BigInt>& counts);
std::vector<ConvergenceRow> convergence_table(const CensusReport& report, std::uint64_t q);
std::vector<ConvergenceRow> convergence_table(const CensusQuery& query);

struct ExponentVerdict {
  std::uint64_t winner;
  double distance;  // |last increment - winner|
};

/// Candidate nearest to the last available increment. Throws DomainError
/// when there is no increment.
ExponentVerdict adjudicate_exponent(const std::vector<std::optional<double>>& increments,
                                    const std::vector<std::uint64_t>& candidates);

}  // namespace drinfeld
