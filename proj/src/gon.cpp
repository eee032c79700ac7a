#include "drinfeld/gon.hpp"

#include <algorithm>
#include <cmath>

namespace drinfeld {

namespace {

BigInt big(std::uint64_t v) { return BigInt(static_cast<unsigned long>(v)); }

}  // namespace

void BoxSpec::validate(const Field& F) const {
  if (n == 0) throw DomainError("box dimension must be positive");
  if (bounds.size() != n)
    throw DomainError("box has " + std::to_string(bounds.size()) + " bounds for dimension " + std::to_string(n));
  for (auto d : bounds)
    if (d < -1) throw DomainError("degree bounds must be >= -1");
  for (const auto& c : congruences) {
    if (c.coord >= n) throw DomainError("congruence on coordinate " + std::to_string(c.coord) + " out of range");
    if (!(c.modulus.field() == F) || !(c.residue.field() == F)) throw DomainError("congruence over a different field");
    if (c.modulus.degree() < 1) throw DomainError("congruence modulus must have positive degree");
    if (c.residue.degree() >= c.modulus.degree()) throw DomainError("residue must be reduced modulo the modulus");
  }
}

nlohmann::json BoxSpec::to_json() const {
  nlohmann::json cs = nlohmann::json::array();
  for (const auto& c : congruences)
    cs.push_back({{"coord", c.coord}, {"prime", c.modulus.to_string()}, {"residue", c.residue.to_string()}});
  return nlohmann::json{{"n", n}, {"bounds", bounds}, {"congruences", cs}};
}

BoxSpec BoxSpec::from_json(const Field& F, const nlohmann::json& j) {
  BoxSpec box;
  try {
    box.n = j.at("n").get<std::size_t>();
    box.bounds = j.at("bounds").get<std::vector<std::int64_t>>();
    if (j.contains("congruences"))
      for (const auto& c : j.at("congruences")) {
        Congruence k{c.at("coord").get<std::size_t>(), parse_poly(F, c.at("prime").get<std::string>()),
                     c.contains("residue") ? parse_poly(F, c.at("residue").get<std::string>()) : Poly(F)};
        box.congruences.push_back(std::move(k));
      }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed box JSON: ") + e.what());
  }
  box.validate(F);
  return box;
}

BoxSpec with_ideal(BoxSpec box, const Poly& a, const WeightVector& w, std::uint64_t k) {
  if (w.size() != box.n) throw DomainError("weights do not match the box dimension");
  if (a.degree() < 1) throw DomainError("ideal generator must have positive degree");
  for (std::size_t i = 0; i < box.n; ++i)
    box.congruences.push_back(Congruence{i, a.monic().pow(k * w[i]), Poly(a.field())});
  return box;
}

LatticeCount count_lattice_points(const Field& F, const BoxSpec& box, const std::vector<std::uint64_t>& w,
                                  std::uint64_t t_exp) {
  box.validate(F);
  if (w.size() != box.n) throw DomainError("weights do not match the box dimension");
  for (auto wi : w)
    if (wi < 1) throw DomainError("weights must be positive");
  const double lq = std::log2(static_cast<double>(F.q()));
  std::vector<std::int64_t> deg(box.n);
  double work = 0;
  for (std::size_t i = 0; i < box.n; ++i) {
    deg[i] = static_cast<std::int64_t>(t_exp * w[i]) + box.bounds[i];
    work += static_cast<double>(std::max<std::int64_t>(deg[i] + 1, 0)) * lq;
  }
  if (work > 30.0) throw WorkBoundError(work, 30.0);

  LatticeCount out;
  out.count = 1;
  std::vector<Poly> diff;
  for (std::size_t i = 0; i < box.n; ++i) {
    std::vector<const Congruence*> here;
    for (const auto& c : box.congruences)
      if (c.coord == i) here.push_back(&c);
    std::uint64_t hits = 0;
    for (const auto& x : enumerate_polys(F, static_cast<int>(deg[i]))) {
      bool ok = true;
      for (const auto* c : here)
        if (!((x - c->residue) % c->modulus).is_zero()) {
          ok = false;
          break;
        }
      if (ok) ++hits;
    }
    out.count *= big(hits);
  }

  const std::uint64_t q = F.q();
  std::int64_t exponent = static_cast<std::int64_t>(box.n);
  for (std::size_t i = 0; i < box.n; ++i) exponent += box.bounds[i] + static_cast<std::int64_t>(t_exp * w[i]);
  for (const auto& c : box.congruences) exponent -= c.modulus.degree();
  out.main_term = rpow(Rational(big(q)), exponent);
  return out;
}

BoxErrorScan box_error_scan(const Field& F, const BoxSpec& box, const std::vector<std::uint64_t>& w,
                            std::uint64_t t_min, std::uint64_t t_max) {
  BoxErrorScan scan;
  scan.constant = 0;
  if (w.empty()) throw DomainError("weights must be non-empty");
  std::uint64_t total = 0, wmin = w.front();
  for (auto wi : w) {
    total += wi;
    wmin = std::min(wmin, wi);
  }
  for (std::uint64_t t = t_min; t <= t_max && t_max != static_cast<std::uint64_t>(-1); ++t) {
    const auto c = count_lattice_points(F, box, w, t);
    BoxErrorRow row{t, c.count, c.main_term, c.error(), ipow(big(F.q()), t * (total - wmin))};
    const Rational rel = abs(row.error) / Rational(row.scale);
    if (rel > scan.constant) scan.constant = rel;
    scan.rows.push_back(std::move(row));
  }
  return scan;
}

BigInt fundamental_domain_count(const Field& F, const WeightVector& w, std::int64_t b) {
  if (b < 0) return 0;
  BoxSpec box{w.size(), std::vector<std::int64_t>(w.size(), 0), {}};
  const std::vector<std::uint64_t> wv(w.weights().begin(), w.weights().end());
  const BigInt upper = count_lattice_points(F, box, wv, static_cast<std::uint64_t>(b)).count;
  // the zero tuple, or everything of height < b
  const BigInt lower = b == 0 ? BigInt(1) : count_lattice_points(F, box, wv, static_cast<std::uint64_t>(b - 1)).count;
  return upper - lower;
}

FundamentalDomainCheck fundamental_domain_check(const Field& F, const WeightVector& w, std::int64_t b,
                                                EnumerationOptions options) {
  FundamentalDomainCheck out;
  out.b = b;
  out.domain_count = fundamental_domain_count(F, w, b);
  out.content_free_tuples = out.domain_count - big(F.q()) * fundamental_domain_count(F, w, b - 1);
  out.orbit_weighted_points = 0;
  const auto points = enumerate_points(F, w, b, options);
  out.points = points.size();
  for (const auto& p : points) out.orbit_weighted_points += big(orbit_size(p.coords, p.weights));
  return out;
}

}  // namespace drinfeld
