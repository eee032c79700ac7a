#include "drinfeld/polyfq.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>

#include "poly_kernels.hpp"

namespace drinfeld {

// --- Poly -------------------------------------------------------------------

Poly::Poly(Field field, std::vector<Coeff> coeffs) : field_(std::move(field)), c_(std::move(coeffs)) {
  for (Coeff c : c_)
    if (c >= field_.q()) throw DomainError("coefficient code " + std::to_string(c) + " outside " + field_.spec_string());
  trim();
}

Poly Poly::constant(Field field, Coeff c) { return Poly(std::move(field), std::vector<Coeff>{c}); }

Poly Poly::monomial(Field field, Coeff c, int k) {
  if (k < 0) throw DomainError("negative exponent in monomial");
  std::vector<Coeff> v(static_cast<std::size_t>(k) + 1, 0);
  v.back() = c;
  return Poly(std::move(field), std::move(v));
}

Poly Poly::t(Field field) {
  const Coeff one = field.one();
  return monomial(std::move(field), one, 1);
}

void Poly::trim() noexcept { detail::trim(c_); }

void Poly::check_field(const Poly& o) const {
  if (!(field_ == o.field_))
    throw DomainError("field mismatch: " + field_.spec_string() + " vs " + o.field_.spec_string());
}

Poly Poly::monic() const {
  if (c_.empty() || c_.back() == field_.one()) return *this;
  return scaled(field_.inv(c_.back()));
}

Poly Poly::scaled(Coeff c) const {
  Poly out(field_);
  if (c == 0) return out;
  out.c_.resize(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) out.c_[i] = field_.mul(c_[i], c);
  return out;
}

Poly Poly::pow(std::uint64_t k) const {
  Poly result = constant(field_, field_.one());
  Poly base = *this;
  while (k > 0) {
    if (k & 1) result *= base;
    k >>= 1;
    if (k) base *= base;
  }
  return result;
}

Coeff Poly::eval(Coeff x) const {
  Coeff acc = 0;
  for (std::size_t k = c_.size(); k-- > 0;) acc = field_.add(field_.mul(acc, x), c_[k]);
  return acc;
}

Poly& Poly::operator+=(const Poly& o) {
  check_field(o);
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = field_.add(c_[i], o.c_[i]);
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  check_field(o);
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = field_.sub(c_[i], o.c_[i]);
  trim();
  return *this;
}

Poly& Poly::operator*=(const Poly& o) {
  check_field(o);
  if (c_.empty() || o.c_.empty()) {
    c_.clear();
    return *this;
  }
  std::vector<Coeff> out(c_.size() + o.c_.size() - 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) out[i + j] = field_.add(out[i + j], field_.mul(c_[i], o.c_[j]));
  }
  c_ = std::move(out);
  trim();
  return *this;
}

Poly operator-(const Poly& a) {
  Poly out(a.field_);
  out.c_.resize(a.c_.size());
  for (std::size_t i = 0; i < a.c_.size(); ++i) out.c_[i] = a.field_.neg(a.c_[i]);
  return out;
}

std::strong_ordering operator<=>(const Poly& a, const Poly& b) noexcept {
  if (auto c = a.c_.size() <=> b.c_.size(); c != 0) return c;
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    if (auto c = a.c_[i] <=> b.c_[i]; c != 0) return c;
  return std::strong_ordering::equal;
}

std::string Poly::to_string() const { return format_poly(*this); }

DivMod divmod(const Poly& a, const Poly& b) {
  if (!(a.field() == b.field())) throw DomainError("field mismatch in division");
  if (b.is_zero()) throw DomainError("division by the zero polynomial");
  const Field& F = a.field();
  Poly rem = a;
  Poly quot(F);
  if (a.degree() >= b.degree()) {
    auto& r = rem.raw();
    std::vector<Coeff> qv(r.size() - b.coeffs().size() + 1, 0);
    const Coeff lead_inv = F.inv(b.leading());
    const std::size_t db = static_cast<std::size_t>(b.degree());
    for (std::size_t k = r.size(); k-- > db;) {
      const Coeff c = r[k];
      if (c == 0) continue;
      const Coeff factor = F.mul(c, lead_inv);
      qv[k - db] = factor;
      const Coeff neg = F.neg(factor);
      for (std::size_t i = 0; i <= db; ++i) r[k - db + i] = F.add(r[k - db + i], F.mul(neg, b.coeffs()[i]));
    }
    r.resize(db);
    detail::trim(r);
    quot = Poly(F, std::move(qv));
  }
  return {std::move(quot), std::move(rem)};
}

Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).quotient; }
Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).remainder; }

Poly gcd(const Poly& a, const Poly& b) {
  if (!(a.field() == b.field())) throw DomainError("field mismatch in gcd");
  Poly x = a, y = b;
  detail::gcd_inplace(a.field(), x.raw(), y.raw());
  return x;
}

bool divides(const Poly& d, const Poly& f) {
  if (d.is_zero()) return f.is_zero();
  return (f % d).is_zero();
}

namespace {

Poly powmod(Poly base, std::uint64_t k, const Poly& m) {
  Poly result = Poly::constant(m.field(), m.field().one()) % m;
  base = base % m;
  while (k > 0) {
    if (k & 1) result = (result * base) % m;
    k >>= 1;
    if (k) base = (base * base) % m;
  }
  return result;
}

}  // namespace

bool is_irreducible(const Poly& f) {
  if (f.degree() < 1) return false;
  const Poly g = f.monic();
  if (g.degree() == 1) return true;
  const Poly t = Poly::t(g.field());
  Poly h = t % g;
  for (int i = 1; 2 * i <= g.degree(); ++i) {
    h = powmod(h, g.field().q(), g);
    if (gcd(g, h - t).degree() > 0) return false;
  }
  return true;
}

// --- Prime, Place -----------------------------------------------------------

struct PrimeAccess {
  static Prime certified(Poly p) { return Prime(std::move(p), Prime::Certified{}); }
};

Prime::Prime(Poly poly) : poly_(std::move(poly)) {
  if (!poly_.is_monic()) throw DomainError("prime '" + poly_.to_string() + "' is not monic");
  if (!is_irreducible(poly_)) throw DomainError("'" + poly_.to_string() + "' is not irreducible over " + poly_.field().spec_string());
  norm_ = ipow(BigInt(static_cast<unsigned long>(poly_.field().q())), static_cast<std::uint64_t>(poly_.degree()));
}

Prime::Prime(Poly poly, Certified) : poly_(std::move(poly)) {
  norm_ = ipow(BigInt(static_cast<unsigned long>(poly_.field().q())), static_cast<std::uint64_t>(poly_.degree()));
}

int place_degree(const Place& v) noexcept {
  if (const auto* p = std::get_if<Prime>(&v)) return p->degree();
  return 1;
}

// --- enumeration ------------------------------------------------------------

namespace {

constexpr double kIrreducibleBoundLog2 = 26.0;

void check_enumeration_bound(const Field& F, double exponent, double bound) {
  const double log2_work = exponent * std::log2(static_cast<double>(F.q()));
  if (log2_work > bound + 1e-9) throw WorkBoundError(log2_work, bound);
}

}  // namespace

Poly poly_at(const Field& F, std::uint64_t index) {
  if (index == 0) return Poly(F);
  const std::uint64_t q = F.q();
  // degree d block starts at q^d and holds (q-1) q^d entries
  int d = 0;
  std::uint64_t start = 1;
  while (index >= start * q) {
    start *= q;
    ++d;
  }
  std::uint64_t local = index - start;
  std::vector<Coeff> c(static_cast<std::size_t>(d) + 1);
  c[static_cast<std::size_t>(d)] = static_cast<Coeff>(1 + local % (q - 1));
  local /= (q - 1);
  for (int k = d - 1; k >= 0; --k) {
    c[static_cast<std::size_t>(k)] = static_cast<Coeff>(local % q);
    local /= q;
  }
  return Poly(F, std::move(c));
}

std::vector<Poly> enumerate_polys(const Field& F, int d_max) {
  if (d_max < 0) return {Poly(F)};
  check_enumeration_bound(F, d_max + 1.0, 30.0);
  std::uint64_t total = 1;
  for (int i = 0; i <= d_max; ++i) total *= F.q();
  std::vector<Poly> out;
  out.reserve(total);
  for (std::uint64_t i = 0; i < total; ++i) out.push_back(poly_at(F, i));
  return out;
}

std::vector<Prime> enumerate_monic_irreducibles(const Field& F, int d) {
  if (d < 1) throw DomainError("irreducible degree must be positive");
  check_enumeration_bound(F, d, kIrreducibleBoundLog2);
  const std::uint64_t q = F.q();
  std::uint64_t count = 1;
  for (int i = 0; i < d; ++i) count *= q;
  std::vector<Prime> out;
  // monic degree-d polys in canonical order: c_0 most significant
  std::vector<Coeff> c(static_cast<std::size_t>(d) + 1, 0);
  c.back() = F.one();
  for (std::uint64_t i = 0; i < count; ++i) {
    std::uint64_t rest = i;
    for (int k = d - 1; k >= 0; --k) {
      c[static_cast<std::size_t>(k)] = static_cast<Coeff>(rest % q);
      rest /= q;
    }
    Poly f(F, c);
    if (is_irreducible(f)) out.push_back(PrimeAccess::certified(std::move(f)));
  }
  return out;
}

const std::vector<Prime>& monic_irreducibles(const Field& F, int d) {
  static std::mutex mu;
  static std::map<std::tuple<std::uint64_t, unsigned, int>, std::unique_ptr<const std::vector<Prime>>> cache;
  const auto key = std::tuple{F.p(), F.e(), d};
  std::lock_guard lock(mu);
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, std::make_unique<const std::vector<Prime>>(enumerate_monic_irreducibles(F, d))).first;
  return *it->second;
}

int mobius(std::uint64_t n) noexcept {
  if (n == 0) return 0;
  int result = 1;
  for (std::uint64_t f = 2; f * f <= n; ++f) {
    if (n % f == 0) {
      n /= f;
      if (n % f == 0) return 0;
      result = -result;
    }
  }
  if (n > 1) result = -result;
  return result;
}

BigInt count_irreducibles(std::uint64_t q, int d) {
  if (d < 1) throw DomainError("irreducible degree must be positive");
  BigInt sum = 0;
  const BigInt base(static_cast<unsigned long>(q));
  for (int e = 1; e <= d; ++e) {
    if (d % e != 0) continue;
    const int mu = mobius(static_cast<std::uint64_t>(e));
    if (mu == 0) continue;
    const BigInt term = ipow(base, static_cast<std::uint64_t>(d / e));
    if (mu > 0) sum += term;
    else sum -= term;
  }
  return sum / d;
}

BigInt count_irreducibles(const Field& F, int d) { return count_irreducibles(F.q(), d); }

// --- factorization, valuations ----------------------------------------------

Poly Factorization::expand(const Field& F) const {
  Poly out = Poly::constant(F, unit);
  for (const auto& f : factors) out *= f.prime.poly().pow(static_cast<std::uint64_t>(f.multiplicity));
  return out;
}

Factorization factor(const Poly& f) {
  if (f.is_zero()) throw DomainError("cannot factor the zero polynomial");
  const Field& F = f.field();
  Factorization out{f.leading(), {}};
  Poly g = f.monic();
  std::vector<Coeff> scratch;
  for (int d = 1; 2 * d <= g.degree(); ++d) {
    for (const Prime& p : monic_irreducibles(F, d)) {
      if (2 * d > g.degree()) break;
      int mult = 0;
      while (g.degree() >= d && detail::divides_raw(F, p.poly().coeffs(), g.coeffs(), scratch)) {
        g = g / p.poly();
        ++mult;
      }
      if (mult > 0) out.factors.push_back({p, mult});
    }
  }
  // no factor of degree <= deg(g)/2 remains
  if (g.degree() > 0) out.factors.push_back({PrimeAccess::certified(std::move(g)), 1});
  return out;
}

Valuation valuation(const Poly& f, const Prime& p) {
  if (f.is_zero()) return kInfiniteValuation;
  Valuation v = 0;
  Poly g = f;
  while (true) {
    auto [quot, rem] = divmod(g, p.poly());
    if (!rem.is_zero()) break;
    g = std::move(quot);
    ++v;
  }
  return v;
}

RationalFunction::RationalFunction(Poly num) : num_(num), den_(Poly::constant(num.field(), num.field().one())) {}

RationalFunction::RationalFunction(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw DomainError("rational function with zero denominator");
  if (num_.is_zero()) {
    den_ = Poly::constant(den_.field(), den_.field().one());
    return;
  }
  const Poly g = gcd(num_, den_);
  if (g.degree() > 0) {
    num_ = num_ / g;
    den_ = den_ / g;
  }
  const Coeff lead = den_.leading();
  if (lead != den_.field().one()) {
    const Coeff inv = den_.field().inv(lead);
    num_ = num_.scaled(inv);
    den_ = den_.scaled(inv);
  }
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
}
RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
  return {a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_};
}
RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  return {a.num_ * b.num_, a.den_ * b.den_};
}
RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
  if (b.is_zero()) throw DomainError("division by the zero rational function");
  return {a.num_ * b.den_, a.den_ * b.num_};
}

std::string RationalFunction::to_string() const {
  if (den_.is_one()) return format_poly(num_);
  return "(" + format_poly(num_) + ")/(" + format_poly(den_) + ")";
}

Valuation valuation(const RationalFunction& x, const Place& v) {
  if (x.is_zero()) return kInfiniteValuation;
  if (const auto* p = std::get_if<Prime>(&v)) return valuation(x.num(), *p) - valuation(x.den(), *p);
  return static_cast<Valuation>(x.den().degree()) - x.num().degree();
}

// --- text format ------------------------------------------------------------

std::string format_poly(const Poly& f) {
  if (f.is_zero()) return "0";
  const Field& F = f.field();
  std::string out;
  for (int k = f.degree(); k >= 0; --k) {
    const Coeff c = f[k];
    if (c == 0) continue;
    if (!out.empty()) out += '+';
    if (k == 0) {
      out += F.format(c);
      continue;
    }
    if (c != F.one()) out += F.format(c) + "*";
    out += "T";
    if (k > 1) out += "^" + std::to_string(k);
  }
  return out;
}

namespace {

std::string_view strip(std::string_view t) {
  while (!t.empty() && std::isspace(static_cast<unsigned char>(t.front()))) t.remove_prefix(1);
  while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.remove_suffix(1);
  return t;
}

}  // namespace

Poly parse_poly(const Field& F, std::string_view text) {
  std::string compact;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) compact += ch;
  if (compact.empty()) throw ParseError("empty polynomial");
  std::vector<Coeff> coeffs;
  std::string_view rest = compact;
  while (true) {
    const auto plus = rest.find('+');
    const std::string_view term = rest.substr(0, plus);
    if (term.empty()) throw ParseError("empty term in polynomial '" + std::string(text) + "'");
    Coeff c = F.one();
    int k = 0;
    const auto tpos = term.find('T');
    if (tpos == std::string_view::npos) {
      try {
        c = F.parse(term);
      } catch (const ParseError&) {
        throw ParseError("invalid polynomial term '" + std::string(term) + "'");
      }
    } else {
      std::string_view coef = term.substr(0, tpos);
      std::string_view power = term.substr(tpos + 1);
      if (!coef.empty()) {
        if (coef.back() != '*') throw ParseError("invalid polynomial term '" + std::string(term) + "'");
        coef.remove_suffix(1);
        try {
          c = F.parse(coef);
        } catch (const ParseError&) {
          throw ParseError("invalid coefficient '" + std::string(coef) + "' in term '" + std::string(term) + "'");
        }
      }
      k = 1;
      if (!power.empty()) {
        if (power.front() != '^') throw ParseError("invalid polynomial term '" + std::string(term) + "'");
        power.remove_prefix(1);
        auto [ptr, ec] = std::from_chars(power.data(), power.data() + power.size(), k);
        if (ec != std::errc{} || ptr != power.data() + power.size() || k < 0 || k > 1'000'000)
          throw ParseError("invalid exponent in term '" + std::string(term) + "'");
      }
    }
    if (coeffs.size() <= static_cast<std::size_t>(k)) coeffs.resize(static_cast<std::size_t>(k) + 1, 0);
    coeffs[static_cast<std::size_t>(k)] = F.add(coeffs[static_cast<std::size_t>(k)], c);
    if (plus == std::string_view::npos) break;
    rest.remove_prefix(plus + 1);
  }
  return Poly(F, std::move(coeffs));
}

Prime parse_prime(const Field& F, std::string_view text) {
  Poly f = parse_poly(F, strip(text));
  try {
    return Prime(std::move(f));
  } catch (const DomainError& e) {
    throw ParseError(std::string("invalid prime '") + std::string(strip(text)) + "': " + e.what());
  }
}

}  // namespace drinfeld
