#pragma once

// Lattice points of A^n = F_q[T]^n in weighted dilations of boxes.
//
// A box is a product of balls {deg x_i <= d_i} in K_inf with optional
// congruence classes x_i = r (mod m). Every such region is a finite union of
// cosets of polynomial sublattices, so counts and measures are exact.

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "drinfeld/wps.hpp"

namespace drinfeld {

struct Congruence {
  std::size_t coord = 0;
  /// A prime or a prime power; any nonzero modulus is accepted.
  Poly modulus;
  Poly residue;
};

struct BoxSpec {
  std::size_t n = 0;
  /// d_i >= -1: the ball of measure q^{d_i + 1}.
  std::vector<std::int64_t> bounds;
  std::vector<Congruence> congruences;

  /// Throws DomainError on bad bounds, coordinates or moduli.
  void validate(const Field& field) const;

  nlohmann::json to_json() const;
  static BoxSpec from_json(const Field& field, const nlohmann::json& j);
};

/// Adds x_i = 0 (mod a^{k w_i}) on every coordinate.
BoxSpec with_ideal(BoxSpec box, const Poly& a, const WeightVector& w, std::uint64_t k = 1);

struct LatticeCount {
  BigInt count;
  Rational main_term;
  Rational error() const { return Rational(count) - main_term; }
};

/// Brute-force count of {x in A^n : deg x_i <= t w_i + d_i, congruences hold}
/// with main term prod q^{d_i} prod 1/N(m) q^n q^{t |w|}.
/// Throws WorkBoundError past 2^30 candidate tuples.
LatticeCount count_lattice_points(const Field& field, const BoxSpec& box, const std::vector<std::uint64_t>& w,
                                  std::uint64_t t_exp);

struct BoxErrorRow {
  std::uint64_t t_exp;
  BigInt count;
  Rational main_term;
  Rational error;
  /// q^{t (|w| - w_min)}
  BigInt scale;
};

struct BoxErrorScan {
  std::vector<BoxErrorRow> rows;
  /// max |error| / scale over the rows; zero for an empty scan.
  Rational constant;
};

BoxErrorScan box_error_scan(const Field& field, const BoxSpec& box, const std::vector<std::uint64_t>& w,
                            std::uint64_t t_min, std::uint64_t t_max);

/// #{x in A^{n+1} nonzero : max_i ceil(deg x_i / w_i) = b}, from box counts.
BigInt fundamental_domain_count(const Field& field, const WeightVector& w, std::int64_t b);

struct FundamentalDomainCheck {
  std::int64_t b;
  BigInt domain_count;            // #F(b) cap A^{n+1}
  BigInt content_free_tuples;     // #F(b) - q #F(b-1)
  BigInt orbit_weighted_points;   // sum over enumerated points of orbit size
  std::size_t points;             // deduped points
  bool holds() const { return content_free_tuples == orbit_weighted_points; }
};

/// Tuples of height b factor uniquely as D^{w_i} y_i with D monic and y
/// content-free of height b - deg D, and q^k monic D have degree k. Hence
/// #F(b) - q #F(b-1) counts content-free tuples, i.e. points weighted by
/// their unit-orbit size.
FundamentalDomainCheck fundamental_domain_check(const Field& field, const WeightVector& w, std::int64_t b,
                                                EnumerationOptions options = {});

}  // namespace drinfeld
