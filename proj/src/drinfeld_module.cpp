#include "drinfeld/drinfeld_module.hpp"

#include <algorithm>
#include <charconv>

#include "poly_kernels.hpp"

namespace drinfeld {

std::string ReductionType::to_string() const {
  return is_unstable() ? "unstable" : "stable=" + std::to_string(s_);
}

void LocalCondition::check_rank(int r) const {
  if ((kind == Kind::StableRankEq || kind == Kind::StableRankGeq) && (s < 1 || s > r))
    throw DomainError("condition " + to_string() + " needs 1 <= s <= r = " + std::to_string(r));
}

bool LocalCondition::holds(ReductionType t, int r) const {
  check_rank(r);
  switch (kind) {
    case Kind::Good: return t.is_good(r);
    case Kind::Bad: return !t.is_good(r);
    case Kind::Stable: return t.is_stable();
    case Kind::Unstable: return t.is_unstable();
    case Kind::StableRankEq: return t.rank() == s;
    case Kind::StableRankGeq: return t.is_stable() && t.rank() >= s;
  }
  return false;
}

std::string LocalCondition::to_string() const {
  switch (kind) {
    case Kind::Good: return "good";
    case Kind::Bad: return "bad";
    case Kind::Stable: return "stable";
    case Kind::Unstable: return "unstable";
    case Kind::StableRankEq: return "stable=" + std::to_string(s);
    case Kind::StableRankGeq: return "stable>=" + std::to_string(s);
  }
  return {};
}

LocalCondition parse_condition(std::string_view text) {
  if (text == "good") return LocalCondition::good();
  if (text == "bad") return LocalCondition::bad();
  if (text == "stable") return LocalCondition::stable();
  if (text == "unstable") return LocalCondition::unstable();
  auto parse_s = [&](std::string_view digits) {
    int s = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), s);
    if (digits.empty() || ec != std::errc{} || ptr != digits.data() + digits.size() || s < 1)
      throw ParseError("bad condition '" + std::string(text) + "'");
    return s;
  };
  if (text.starts_with("stable>=")) return LocalCondition::stable_geq(parse_s(text.substr(8)));
  if (text.starts_with("stable=")) return LocalCondition::stable_eq(parse_s(text.substr(7)));
  throw ParseError("bad condition '" + std::string(text) + "'");
}

Rational kappa(const LocalCondition& c, const BigInt& Np, int r) {
  if (Np < 2) throw DomainError("prime norm must be at least 2");
  if (r < 1) throw DomainError("rank must be positive");
  c.check_rank(r);
  const BigInt Nr = ipow(Np, static_cast<std::uint64_t>(r));
  Rational out;
  switch (c.kind) {
    case LocalCondition::Kind::Good: out = Rational(Np - 1, Np); break;
    case LocalCondition::Kind::Bad: out = Rational(BigInt(1), Np); break;
    case LocalCondition::Kind::Stable: out = Rational(Nr - 1, Nr); break;
    case LocalCondition::Kind::Unstable: out = Rational(BigInt(1), Nr); break;
    case LocalCondition::Kind::StableRankEq:
      out = Rational(ipow(Np, static_cast<std::uint64_t>(c.s)) - ipow(Np, static_cast<std::uint64_t>(c.s - 1)), Nr);
      break;
    case LocalCondition::Kind::StableRankGeq:
      out = Rational(Nr - ipow(Np, static_cast<std::uint64_t>(c.s - 1)), Nr);
      break;
  }
  out.canonicalize();
  return out;
}

ReductionType classify(std::span<const Poly> g, const Prime& p) {
  const Field& F = p.poly().field();
  std::vector<Coeff> scratch;
  for (std::size_t i = g.size(); i-- > 0;)
    if (!detail::divides_raw(F, p.poly().coeffs(), g[i].coeffs(), scratch))
      return ReductionType::stable_rank(static_cast<int>(i) + 1);
  return ReductionType::unstable();
}

namespace {

void check_top(std::size_t r, bool top_zero) {
  if (r < 2) throw DomainError("rank must be at least 2");
  if (top_zero) throw DomainError("g_r = 0 is not a rank-r module");
}

}  // namespace

DrinfeldModule DrinfeldModule::from_coeffs(const Field& F, std::span<const RationalFunction> g) {
  check_top(g.size(), g.empty() || g.back().is_zero());
  return DrinfeldModule(normalize(g, WeightVector::drinfeld(F.q(), static_cast<int>(g.size()))));
}

DrinfeldModule DrinfeldModule::from_coeffs(const Field& F, std::span<const Poly> g) {
  std::vector<RationalFunction> r(g.begin(), g.end());
  return from_coeffs(F, r);
}

DrinfeldModule DrinfeldModule::from_point(WppPoint point) {
  check_top(point.coords.size(), point.coords.empty() || point.coords.back().is_zero());
  const auto& F = point.coords.front().field();
  if (point.weights != WeightVector::drinfeld(F.q(), static_cast<int>(point.coords.size())))
    throw DomainError("point does not carry Drinfeld weights");
  return DrinfeldModule(std::move(point));
}

std::string DrinfeldModule::to_string() const {
  std::string s = "phi_T = T";
  for (int i = 1; i <= rank(); ++i) {
    const auto& gi = g()[static_cast<std::size_t>(i - 1)];
    if (gi.is_zero()) continue;
    s += " + (" + gi.to_string() + ")*tau";
    if (i > 1) s += "^" + std::to_string(i);
  }
  return s + " over " + field().spec_string();
}

ReductionType reduction_type(const DrinfeldModule& phi, const Prime& p) { return classify(phi.g(), p); }

bool satisfies(std::span<const Poly> g, const Prime& p, const LocalCondition& c) {
  return c.holds(classify(g, p), static_cast<int>(g.size()));
}

bool satisfies(const DrinfeldModule& phi, const Prime& p, const LocalCondition& c) {
  return satisfies(phi.g(), p, c);
}

bool everywhere_stable_geq(std::span<const Poly> g, int s, std::span<const Prime> excluded) {
  const int r = static_cast<int>(g.size());
  if (s < 1 || s >= r) throw DomainError("everywhere condition needs 1 <= s < r");
  const Field& F = g.front().field();
  // only primes dividing every g_i, i >= s, can violate the condition
  std::vector<Coeff> a, b;
  for (int i = s; i <= r; ++i) {
    const auto c = g[static_cast<std::size_t>(i - 1)].coeffs();
    if (c.empty()) continue;
    if (a.empty()) {
      a.assign(c.begin(), c.end());
      continue;
    }
    b.assign(c.begin(), c.end());
    detail::gcd_inplace(F, a, b);
    if (a.size() == 1) return true;
  }
  if (a.size() <= 1) return true;
  const LocalCondition geq = LocalCondition::stable_geq(s);
  for (const auto& pp : factor(Poly(F, a)).factors) {
    if (std::find(excluded.begin(), excluded.end(), pp.prime) != excluded.end()) continue;
    if (!satisfies(g, pp.prime, geq)) return false;
  }
  return true;
}

bool everywhere_stable_geq(const DrinfeldModule& phi, int s) { return everywhere_stable_geq(phi.g(), s); }

std::vector<DrinfeldModule> enumerate_drinfeld(const Field& F, int r, std::int64_t b, EnumerationOptions options) {
  const auto w = WeightVector::drinfeld(F.q(), r);
  std::vector<DrinfeldModule> out;
  for (auto& p : enumerate_points(F, w, b, options))
    if (!p.coords.back().is_zero()) out.push_back(DrinfeldModule::from_point(std::move(p)));
  return out;
}

}  // namespace drinfeld
