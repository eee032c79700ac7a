#pragma once

// Points of the weighted projective space P(w) over K = F_q(T).

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "drinfeld/polyfq.hpp"

namespace drinfeld {

/// Enumerations refuse more than 2^34 candidate tuples unless overridden.
inline constexpr double kDefaultWorkLog2 = 34.0;
/// Overrides never go past 2^36.
inline constexpr double kHardWorkLog2 = 36.0;

class WeightVector {
 public:
  /// Throws DomainError unless every w_i >= 1 and #w >= 2.
  explicit WeightVector(std::vector<std::uint64_t> weights);

  /// (q-1, q^2-1, ..., q^r-1).
  static WeightVector drinfeld(std::uint64_t q, int r);

  std::size_t size() const noexcept { return w_.size(); }
  std::uint64_t total() const noexcept { return total_; }
  std::uint64_t min() const noexcept { return min_; }
  std::uint64_t operator[](std::size_t i) const noexcept { return w_[i]; }
  std::span<const std::uint64_t> weights() const noexcept { return w_; }

  /// `(w_0,...,w_n)`.
  std::string to_string() const;

  friend bool operator==(const WeightVector&, const WeightVector&) = default;

 private:
  std::vector<std::uint64_t> w_;
  std::uint64_t total_ = 0;
  std::uint64_t min_ = 0;
};

/// Integral, weighted-content-free, orbit-canonical representative.
struct WppPoint {
  WeightVector weights;
  std::vector<Poly> coords;
  std::int64_t height = 0;

  /// `[x_0:...:x_n] @ w=(w_0,...,w_n) over gf(q)`.
  std::string to_string() const;
  friend bool operator==(const WppPoint& a, const WppPoint& b) {
    return a.weights == b.weights && a.coords == b.coords;
  }
};

/// Lexicographic on coordinates, each in canonical polynomial order.
bool tuple_less(std::span<const Poly> a, std::span<const Poly> b) noexcept;

/// (lambda^{w_0} x_0, ..., lambda^{w_n} x_n) for a unit lambda.
std::vector<Poly> scale_by_unit(std::span<const Poly> coords, const WeightVector& w, Coeff lambda);
/// Distinct members of the unit orbit, sorted.
std::vector<std::vector<Poly>> orbit(std::span<const Poly> coords, const WeightVector& w);
std::size_t orbit_size(std::span<const Poly> coords, const WeightVector& w);
/// gcd(q-1, w_0, ..., w_n) == q-1, i.e. every unit acts as the identity.
bool unit_action_trivial(const Field& field, const WeightVector& w);
/// Orbit minimum. Throws DomainError on the all-zero tuple.
std::vector<Poly> canonicalize(std::span<const Poly> coords, const WeightVector& w);

/// No prime p with v_p(x_i) >= w_i for every i (zero coordinates satisfy
/// any bound). Throws DomainError on the all-zero tuple.
bool content_free(std::span<const Poly> coords, const WeightVector& w);

/// Scales to an integral model, strips weighted content, canonicalizes.
WppPoint normalize(std::span<const RationalFunction> coords, const WeightVector& w);
WppPoint normalize(std::span<const Poly> coords, const WeightVector& w);

struct HeightTerm {
  Place place;
  /// deg(v) * min_i floor(v(x_i) / w_i)
  std::int64_t contribution;
};

struct HeightBreakdown {
  /// -sum_v deg(v) min_i floor(v(x_i)/w_i); the value used everywhere.
  std::int64_t adopted = 0;
  /// The same sum without the leading minus sign.
  std::int64_t unsigned_sum = 0;
  std::vector<HeightTerm> terms;
};

/// Place-by-place evaluation over the places supporting some coordinate,
/// plus infinity. Valid for any representative of the projective point.
HeightBreakdown height_breakdown(std::span<const RationalFunction> coords, const WeightVector& w);
std::int64_t height_via_places(std::span<const RationalFunction> coords, const WeightVector& w);
std::int64_t height_via_places(const WppPoint& x);

/// max over nonzero x_i of ceil(deg x_i / w_i); valid on integral
/// content-free representatives.
std::int64_t height_closed_form(std::span<const Poly> coords, const WeightVector& w);
inline std::int64_t height_closed_form(const WppPoint& x) { return height_closed_form(x.coords, x.weights); }

struct EnumerationOptions {
  unsigned workers = 1;
  double max_work_log2 = kDefaultWorkLog2;
};

/// log2 of the candidate tuple count sum_i (b w_i + 1) log2 q.
double enumeration_work_log2(const Field& field, const WeightVector& w, std::int64_t b);

/// Streams the points of height exactly b.
///
/// The outer coordinate's candidates are cut into a fixed number of slices
/// that does not depend on the worker count. `visit(slice, coords)` runs
/// concurrently for distinct slices and in enumeration order within a slice,
/// so per-slice accumulators merged in slice order are deterministic.
class PointEnumerator {
 public:
  PointEnumerator(Field field, WeightVector w, std::int64_t b, EnumerationOptions options = {});

  std::size_t slices() const noexcept { return slice_starts_.size() - 1; }
  void run(const std::function<void(std::size_t slice, std::span<const Poly> coords)>& visit) const;

 private:
  void run_slice(std::size_t slice, const std::function<void(std::size_t, std::span<const Poly>)>& visit) const;

  Field field_;
  WeightVector w_;
  std::int64_t b_;
  EnumerationOptions options_;
  bool trivial_action_;
  std::vector<std::uint64_t> slice_starts_;
};

/// Every point of height exactly b, each once, in enumeration order.
std::vector<WppPoint> enumerate_points(const Field& field, const WeightVector& w, std::int64_t b,
                                       EnumerationOptions options = {});

std::string format_point_coords(std::span<const Poly> coords);

}  // namespace drinfeld
