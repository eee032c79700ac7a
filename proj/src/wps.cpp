#include "drinfeld/wps.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <numeric>
#include <thread>

#include "poly_kernels.hpp"

namespace drinfeld {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

void check_arity(std::size_t n, const WeightVector& w) {
  if (n != w.size())
    throw DomainError("point has " + std::to_string(n) + " coordinates but weights have " +
                      std::to_string(w.size()));
}

template <class T>
void check_not_all_zero(std::span<const T> coords) {
  if (std::all_of(coords.begin(), coords.end(), [](const T& x) { return x.is_zero(); }))
    throw DomainError("the all-zero tuple is not a point");
}

// Next polynomial in canonical order: the leading coefficient varies fastest,
// the constant term slowest, then the degree grows.
void next_poly(std::uint64_t q, std::vector<Coeff>& c) {
  if (c.empty()) {
    c.push_back(1);
    return;
  }
  const std::size_t d = c.size() - 1;
  if (c[d] + 1 < q) {
    ++c[d];
    return;
  }
  c[d] = 1;
  for (std::size_t k = d; k-- > 0;) {
    if (c[k] + 1 < q) {
      ++c[k];
      return;
    }
    c[k] = 0;
  }
  c.assign(d + 2, 0);
  c.back() = 1;
}

std::uint64_t upow(std::uint64_t base, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= base;
  return r;
}

}  // namespace

WeightVector::WeightVector(std::vector<std::uint64_t> weights) : w_(std::move(weights)) {
  if (w_.size() < 2) throw DomainError("a weight vector needs at least two entries");
  for (auto wi : w_)
    if (wi < 1) throw DomainError("weights must be positive");
  total_ = std::accumulate(w_.begin(), w_.end(), std::uint64_t{0});
  min_ = *std::min_element(w_.begin(), w_.end());
}

WeightVector WeightVector::drinfeld(std::uint64_t q, int r) {
  if (r < 2) throw DomainError("rank must be at least 2");
  std::vector<std::uint64_t> w;
  std::uint64_t qi = 1;
  for (int i = 1; i <= r; ++i) {
    if (qi > (std::uint64_t{1} << 62) / q) throw DomainError("Drinfeld weights overflow 64 bits");
    qi *= q;
    w.push_back(qi - 1);
  }
  return WeightVector(std::move(w));
}

std::string WeightVector::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < w_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(w_[i]);
  }
  return s + ")";
}

std::string format_point_coords(std::span<const Poly> coords) {
  std::string s = "[";
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (i) s += ':';
    s += coords[i].to_string();
  }
  return s + "]";
}

std::string WppPoint::to_string() const {
  return format_point_coords(coords) + " @ w=" + weights.to_string() + " over " + coords.front().field().spec_string();
}

bool tuple_less(std::span<const Poly> a, std::span<const Poly> b) noexcept {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

std::vector<Poly> scale_by_unit(std::span<const Poly> coords, const WeightVector& w, Coeff lambda) {
  check_arity(coords.size(), w);
  if (coords.empty()) return {};
  const Field& F = coords.front().field();
  if (lambda == 0) throw DomainError("scaling by zero");
  const std::uint64_t order = F.q() - 1;
  std::vector<Poly> out;
  out.reserve(coords.size());
  for (std::size_t i = 0; i < coords.size(); ++i)
    out.push_back(coords[i].scaled(F.pow(lambda, static_cast<std::int64_t>(w[i] % order))));
  return out;
}

std::vector<std::vector<Poly>> orbit(std::span<const Poly> coords, const WeightVector& w) {
  check_arity(coords.size(), w);
  check_not_all_zero(coords);
  const Field& F = coords.front().field();
  std::vector<std::vector<Poly>> out;
  for (Coeff lambda = 1; lambda < F.q(); ++lambda) out.push_back(scale_by_unit(coords, w, lambda));
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return tuple_less(a, b); });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::size_t orbit_size(std::span<const Poly> coords, const WeightVector& w) { return orbit(coords, w).size(); }

bool unit_action_trivial(const Field& F, const WeightVector& w) {
  const std::uint64_t order = F.q() - 1;
  std::uint64_t g = order;
  for (auto wi : w.weights()) g = std::gcd(g, wi);
  return g == order;
}

std::vector<Poly> canonicalize(std::span<const Poly> coords, const WeightVector& w) {
  auto orb = orbit(coords, w);
  return std::move(orb.front());
}

bool content_free(std::span<const Poly> coords, const WeightVector& w) {
  check_arity(coords.size(), w);
  check_not_all_zero(coords);
  Poly g(coords.front().field());
  for (const auto& x : coords) g = gcd(g, x);
  if (g.degree() < 1) return true;
  for (const auto& pp : factor(g).factors) {
    bool all = true;
    for (std::size_t i = 0; i < coords.size() && all; ++i)
      if (!coords[i].is_zero() && valuation(coords[i], pp.prime) < static_cast<Valuation>(w[i])) all = false;
    if (all) return false;
  }
  return true;
}

namespace {

// Divides out every prime p with v_p(x_i) >= w_i for all i.
void strip_content(std::vector<Poly>& x, const WeightVector& w) {
  Poly g(x.front().field());
  for (const auto& xi : x) g = gcd(g, xi);
  if (g.degree() < 1) return;
  for (const auto& pp : factor(g).factors) {
    Valuation m = kInfiniteValuation;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (!x[i].is_zero()) m = std::min<Valuation>(m, valuation(x[i], pp.prime) / static_cast<Valuation>(w[i]));
    if (m <= 0) continue;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (!x[i].is_zero()) x[i] = x[i] / pp.prime.poly().pow(static_cast<std::uint64_t>(m) * w[i]);
  }
}

WppPoint finish(std::vector<Poly> x, const WeightVector& w) {
  strip_content(x, w);
  auto canon = canonicalize(x, w);
  const auto h = height_closed_form(canon, w);
  return WppPoint{w, std::move(canon), h};
}

}  // namespace

WppPoint normalize(std::span<const RationalFunction> coords, const WeightVector& w) {
  check_arity(coords.size(), w);
  check_not_all_zero(coords);
  const Field& F = coords.front().field();
  // k_p = max_i ceil(-v_p(x_i) / w_i) over primes of the denominators
  std::map<Prime, std::int64_t> k;
  for (const auto& x : coords) {
    if (x.is_zero() || x.den().is_constant()) continue;
    for (const auto& pp : factor(x.den()).factors) k.emplace(pp.prime, 0);
  }
  for (auto& [p, kp] : k)
    for (std::size_t i = 0; i < coords.size(); ++i)
      if (!coords[i].is_zero())
        kp = std::max(kp, ceil_div(-valuation(coords[i], Place(p)), static_cast<std::int64_t>(w[i])));
  Poly lambda = Poly::constant(F, F.one());
  for (const auto& [p, kp] : k) lambda *= p.poly().pow(static_cast<std::uint64_t>(kp));

  std::vector<Poly> x;
  x.reserve(coords.size());
  for (std::size_t i = 0; i < coords.size(); ++i) {
    const auto& c = coords[i];
    if (c.is_zero()) {
      x.emplace_back(F);
      continue;
    }
    Poly scaled = c.num() * lambda.pow(w[i]);
    auto [quot, rem] = divmod(scaled, c.den());
    if (!rem.is_zero()) throw Error("normalize: scaling failed to clear a denominator");
    x.push_back(std::move(quot));
  }
  return finish(std::move(x), w);
}

WppPoint normalize(std::span<const Poly> coords, const WeightVector& w) {
  check_arity(coords.size(), w);
  check_not_all_zero(coords);
  return finish(std::vector<Poly>(coords.begin(), coords.end()), w);
}

HeightBreakdown height_breakdown(std::span<const RationalFunction> coords, const WeightVector& w) {
  check_arity(coords.size(), w);
  check_not_all_zero(coords);
  std::vector<Place> places{Infinity{}};
  {
    std::vector<Prime> primes;
    for (const auto& x : coords) {
      if (x.is_zero()) continue;
      for (const Poly* f : {&x.num(), &x.den()})
        if (f->degree() >= 1)
          for (const auto& pp : factor(*f).factors) primes.push_back(pp.prime);
    }
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    for (auto& p : primes) places.emplace_back(std::move(p));
  }
  HeightBreakdown out;
  for (auto& v : places) {
    std::int64_t m = std::numeric_limits<std::int64_t>::max();
    for (std::size_t i = 0; i < coords.size(); ++i)
      if (!coords[i].is_zero())
        m = std::min(m, floor_div(valuation(coords[i], v), static_cast<std::int64_t>(w[i])));
    const std::int64_t c = place_degree(v) * m;
    out.unsigned_sum += c;
    out.terms.push_back(HeightTerm{std::move(v), c});
  }
  out.adopted = -out.unsigned_sum;
  return out;
}

std::int64_t height_via_places(std::span<const RationalFunction> coords, const WeightVector& w) {
  return height_breakdown(coords, w).adopted;
}

std::int64_t height_via_places(const WppPoint& x) {
  std::vector<RationalFunction> r(x.coords.begin(), x.coords.end());
  return height_via_places(r, x.weights);
}

std::int64_t height_closed_form(std::span<const Poly> coords, const WeightVector& w) {
  check_arity(coords.size(), w);
  check_not_all_zero(coords);
  std::int64_t h = 0;
  for (std::size_t i = 0; i < coords.size(); ++i)
    if (!coords[i].is_zero()) h = std::max(h, ceil_div(coords[i].degree(), static_cast<std::int64_t>(w[i])));
  return h;
}

double enumeration_work_log2(const Field& F, const WeightVector& w, std::int64_t b) {
  double total = 0;
  for (auto wi : w.weights()) total += (static_cast<double>(b) * static_cast<double>(wi) + 1.0);
  return total * std::log2(static_cast<double>(F.q()));
}

PointEnumerator::PointEnumerator(Field field, WeightVector w, std::int64_t b, EnumerationOptions options)
    : field_(std::move(field)), w_(std::move(w)), b_(b), options_(options) {
  if (b_ < 0) throw DomainError("height must be non-negative");
  if (options_.workers < 1) throw DomainError("worker count must be at least 1");
  if (options_.max_work_log2 > kHardWorkLog2)
    throw DomainError("work bound override exceeds the hard cap 2^36");
  const double work = enumeration_work_log2(field_, w_, b_);
  if (work > options_.max_work_log2) throw WorkBoundError(work, options_.max_work_log2);
  trivial_action_ = unit_action_trivial(field_, w_);
  const std::uint64_t outer = upow(field_.q(), static_cast<std::uint64_t>(b_) * w_[0] + 1);
  const std::uint64_t n = std::min<std::uint64_t>(outer, 256);
  for (std::uint64_t s = 0; s <= n; ++s) slice_starts_.push_back(outer / n * s + std::min(s, outer % n));
}

void PointEnumerator::run(const std::function<void(std::size_t, std::span<const Poly>)>& visit) const {
  const std::size_t n = slices();
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(options_.workers, n));
  if (workers <= 1) {
    for (std::size_t s = 0; s < n; ++s) run_slice(s, visit);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < workers; ++t)
    pool.emplace_back([&] {
      for (std::size_t s; (s = next.fetch_add(1)) < n;) {
        try {
          run_slice(s, visit);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          next = n;
        }
      }
    });
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

void PointEnumerator::run_slice(std::size_t slice,
                                const std::function<void(std::size_t, std::span<const Poly>)>& visit) const {
  const Field& F = field_;
  const std::uint64_t q = F.q();
  const std::size_t m = w_.size();

  std::vector<std::int64_t> max_deg(m), low_deg(m);
  std::vector<std::uint64_t> count(m), low_count(m);
  for (std::size_t i = 0; i < m; ++i) {
    max_deg[i] = b_ * static_cast<std::int64_t>(w_[i]);
    // a coordinate is "high" when deg x_i > (b-1) w_i, i.e. it forces height b
    low_deg[i] = (b_ - 1) * static_cast<std::int64_t>(w_[i]);
    count[i] = upow(q, static_cast<std::uint64_t>(max_deg[i]) + 1);
    low_count[i] = b_ == 0 ? 1 : upow(q, static_cast<std::uint64_t>(low_deg[i]) + 1);
  }
  auto is_high = [&](std::size_t i, const Poly& x) {
    return !x.is_zero() && static_cast<std::int64_t>(x.degree()) > low_deg[i];
  };

  // lambda^{w_i} for every unit lambda != 1
  std::vector<std::vector<Coeff>> unit_powers;
  if (!trivial_action_)
    for (Coeff lambda = 2; lambda < q; ++lambda) {
      std::vector<Coeff> pw(m);
      for (std::size_t i = 0; i < m; ++i) pw[i] = F.pow(lambda, static_cast<std::int64_t>(w_[i] % (q - 1)));
      unit_powers.push_back(std::move(pw));
    }

  std::vector<Poly> x;
  for (std::size_t i = 0; i < m; ++i) x.emplace_back(F);
  std::vector<Coeff> ga, gb, scratch;

  auto canonical = [&]() {
    for (const auto& pw : unit_powers) {
      // compare lambda * x against x coordinate by coordinate
      for (std::size_t i = 0; i < m; ++i) {
        const auto c = x[i].coeffs();
        int cmp = 0;
        for (std::size_t k = 0; k < c.size() && cmp == 0; ++k) {
          const Coeff s = F.mul(c[k], pw[i]);
          if (s != c[k]) cmp = s < c[k] ? -1 : 1;
        }
        if (cmp < 0) return false;
        if (cmp > 0) break;
      }
    }
    return true;
  };

  auto content_free_fast = [&]() {
    ga.clear();
    for (std::size_t i = 0; i < m; ++i) {
      if (x[i].is_zero()) continue;
      gb.assign(x[i].coeffs().begin(), x[i].coeffs().end());
      if (ga.empty()) {
        ga.swap(gb);
        if (ga.back() != F.one()) {
          const Coeff inv = F.inv(ga.back());
          for (auto& c : ga) c = F.mul(c, inv);
        }
      } else {
        detail::gcd_inplace(F, ga, gb);
      }
      if (ga.size() == 1) return true;
    }
    // only prime factors of the gcd can carry weighted content
    for (const auto& pp : factor(Poly(F, ga)).factors) {
      bool all = true;
      for (std::size_t i = 0; i < m && all; ++i) {
        if (x[i].is_zero()) continue;
        if (valuation(x[i], pp.prime) < static_cast<Valuation>(w_[i])) all = false;
      }
      if (all) return false;
    }
    return true;
  };

  // depth-first odometer over coordinates 1..m-1 for a fixed x_0
  std::function<void(std::size_t, bool)> descend = [&](std::size_t level, bool high) {
    auto& buf = x[level].raw();
    std::uint64_t start = 0;
    if (level == m - 1 && !high) start = low_count[level];
    if (start >= count[level]) return;
    x[level] = poly_at(F, start);
    for (std::uint64_t idx = start; idx < count[level]; ++idx) {
      if (idx != start) next_poly(q, buf);
      const bool h = high || is_high(level, x[level]);
      if (level + 1 < m) {
        descend(level + 1, h);
      } else if (h && canonical() && content_free_fast()) {
        visit(slice, std::span<const Poly>(x));
      }
    }
  };

  const std::uint64_t begin = slice_starts_[slice], end = slice_starts_[slice + 1];
  if (begin >= end) return;
  x[0] = poly_at(F, begin);
  for (std::uint64_t idx = begin; idx < end; ++idx) {
    if (idx != begin) next_poly(q, x[0].raw());
    descend(1, is_high(0, x[0]));
  }
}

std::vector<WppPoint> enumerate_points(const Field& F, const WeightVector& w, std::int64_t b,
                                       EnumerationOptions options) {
  PointEnumerator e(F, w, b, options);
  std::vector<std::vector<WppPoint>> per_slice(e.slices());
  e.run([&](std::size_t s, std::span<const Poly> coords) {
    per_slice[s].push_back(WppPoint{w, std::vector<Poly>(coords.begin(), coords.end()), b});
  });
  std::vector<WppPoint> out;
  for (auto& v : per_slice)
    for (auto& p : v) out.push_back(std::move(p));
  return out;
}

}  // namespace drinfeld
