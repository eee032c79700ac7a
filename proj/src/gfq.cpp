#include "drinfeld/gfq.hpp"

#include <algorithm>
#include <charconv>
#include <limits>

namespace drinfeld {

namespace {

using Digits = std::vector<std::uint32_t>;

// Dense polynomials over F_p used only while constructing an extension.
Digits mul_mod(const Digits& a, const Digits& b, const Digits& modulus, std::uint64_t p) {
  const std::size_t e = modulus.size() - 1;
  std::vector<std::uint64_t> prod(2 * e, 0);
  for (std::size_t i = 0; i < e; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < e; ++j) prod[i + j] = (prod[i + j] + std::uint64_t{a[i]} * b[j]) % p;
  }
  for (std::size_t k = 2 * e - 1; k >= e; --k) {
    const std::uint64_t c = prod[k];
    if (c == 0) continue;
    prod[k] = 0;
    // modulus is monic: T^e = -sum_{i<e} m_i T^i
    for (std::size_t i = 0; i < e; ++i)
      prod[k - e + i] = (prod[k - e + i] + (p - modulus[i]) % p * c) % p;
  }
  Digits out(e);
  for (std::size_t i = 0; i < e; ++i) out[i] = static_cast<std::uint32_t>(prod[i]);
  return out;
}

Digits pow_mod(Digits base, std::uint64_t k, const Digits& modulus, std::uint64_t p) {
  Digits result(modulus.size() - 1, 0);
  result[0] = 1;
  while (k > 0) {
    if (k & 1) result = mul_mod(result, base, modulus, p);
    base = mul_mod(base, base, modulus, p);
    k >>= 1;
  }
  return result;
}

// remainder of a monic-or-not `f` by monic `g` over F_p; both low degree first
bool divisible_by(Digits f, const Digits& g, std::uint64_t p) {
  const std::size_t dg = g.size() - 1;
  for (std::size_t k = f.size() - 1; k >= dg; --k) {
    const std::uint64_t c = f[k];
    if (c != 0) {
      for (std::size_t i = 0; i <= dg; ++i)
        f[k - dg + i] = static_cast<std::uint32_t>((f[k - dg + i] + (p - g[i]) % p * c) % p);
    }
    if (k == 0) break;
  }
  return std::all_of(f.begin(), f.begin() + static_cast<std::ptrdiff_t>(dg), [](auto c) { return c == 0; });
}

// Iterates the monic polynomials of degree d over F_p in canonical order:
// constant term most significant, leading coefficient fixed to 1.
template <class Visit>
bool for_each_monic(std::uint64_t p, std::size_t d, Visit&& visit) {
  Digits f(d + 1, 0);
  f[d] = 1;
  while (true) {
    if (visit(f)) return true;
    // increment the lower coefficients with c_{d-1} least significant
    std::size_t i = d;
    while (i > 0) {
      --i;
      if (++f[i] < p) break;
      f[i] = 0;
      if (i == 0) return false;
    }
    if (d == 0) return false;
  }
}

bool irreducible_over_prime_field(const Digits& f, std::uint64_t p) {
  const std::size_t d = f.size() - 1;
  for (std::size_t k = 1; 2 * k <= d; ++k) {
    bool found = for_each_monic(p, k, [&](const Digits& g) { return divisible_by(f, g, p); });
    if (found) return false;
  }
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t f = 2; f * f <= n; ++f) {
    if (n % f == 0) {
      out.push_back(f);
      while (n % f == 0) n /= f;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t f = 2; f * f <= n; ++f)
    if (n % f == 0) return false;
  return true;
}

namespace detail {

Coeff FieldData::add_slow(Coeff a, Coeff b) const noexcept {
  std::uint64_t out = 0;
  for (std::size_t i = 0; i < e; ++i) {
    const std::uint64_t pv = place_value[i];
    const std::uint64_t s = (a / pv % p + b / pv % p) % p;
    out += s * pv;
  }
  return static_cast<Coeff>(out);
}

Coeff FieldData::neg_slow(Coeff a) const noexcept {
  std::uint64_t out = 0;
  for (std::size_t i = 0; i < e; ++i) {
    const std::uint64_t pv = place_value[i];
    out += (p - a / pv % p) % p * pv;
  }
  return static_cast<Coeff>(out);
}

}  // namespace detail

Field Field::make(std::uint64_t p, unsigned e) {
  if (!is_prime(p)) throw DomainError("field characteristic " + std::to_string(p) + " is not prime");
  if (e == 0) throw DomainError("extension degree must be at least 1");
  std::uint64_t q = 1;
  for (unsigned i = 0; i < e; ++i) {
    if (q > kMaxFieldSize / p) throw DomainError("field size " + std::to_string(p) + "^" + std::to_string(e) + " exceeds 2^20");
    q *= p;
  }

  auto d = std::make_shared<detail::FieldData>();
  d->p = p;
  d->e = e;
  d->q = q;
  d->place_value.assign(e, 1);
  for (unsigned i = e - 1; i-- > 0;) d->place_value[i] = d->place_value[i + 1] * p;

  if (e > 1) {
    Digits modulus;
    bool found = for_each_monic(p, e, [&](const Digits& f) {
      if (irreducible_over_prime_field(f, p)) {
        modulus = f;
        return true;
      }
      return false;
    });
    if (!found) throw Error("internal error: no irreducible polynomial of degree " + std::to_string(e));
    d->modulus = modulus;

    auto to_code = [&](const Digits& v) {
      std::uint64_t c = 0;
      for (unsigned i = 0; i < e; ++i) c += v[i] * d->place_value[i];
      return static_cast<Coeff>(c);
    };
    auto to_digits = [&](std::uint64_t code) {
      Digits v(e);
      for (unsigned i = 0; i < e; ++i) v[i] = static_cast<std::uint32_t>(code / d->place_value[i] % p);
      return v;
    };

    const auto ell = prime_factors(q - 1);
    Digits one(e, 0);
    one[0] = 1;
    Digits generator;
    for (std::uint64_t code = 1; code < q; ++code) {
      Digits g = to_digits(code);
      bool primitive = std::none_of(ell.begin(), ell.end(),
                                    [&](std::uint64_t l) { return pow_mod(g, (q - 1) / l, modulus, p) == one; });
      if (primitive) {
        generator = g;
        break;
      }
    }
    d->exp.resize(q - 1);
    d->log.assign(q, 0);
    Digits cur = one;
    for (std::uint64_t k = 0; k + 1 < q; ++k) {
      const Coeff c = to_code(cur);
      d->exp[k] = c;
      d->log[c] = static_cast<std::uint32_t>(k);
      cur = mul_mod(cur, generator, modulus, p);
    }
    if (q <= 512) {
      d->add_table.resize(q * q);
      for (std::uint64_t a = 0; a < q; ++a)
        for (std::uint64_t b = 0; b < q; ++b)
          d->add_table[a * q + b] = d->add_slow(static_cast<Coeff>(a), static_cast<Coeff>(b));
    }
  }
  return Field(std::move(d));
}

Field Field::of_order(std::uint64_t q) {
  if (q < 2) throw DomainError("field order must be a prime power, got " + std::to_string(q));
  std::uint64_t p = 0;
  for (std::uint64_t f = 2; f * f <= q; ++f) {
    if (q % f == 0) {
      p = f;
      break;
    }
  }
  if (p == 0) p = q;
  unsigned e = 0;
  std::uint64_t rest = q;
  while (rest % p == 0) {
    rest /= p;
    ++e;
  }
  if (rest != 1) throw DomainError("field order must be a prime power, got " + std::to_string(q));
  return make(p, e);
}

Coeff Field::inv(Coeff a) const {
  if (a == 0) throw DomainError("inversion of zero in " + spec_string());
  const auto& d = *data_;
  if (d.e == 1) {
    // extended Euclid on (a, p)
    std::int64_t r0 = static_cast<std::int64_t>(d.p), r1 = a, s0 = 0, s1 = 1;
    while (r1 != 0) {
      const std::int64_t t = r0 / r1;
      std::tie(r0, r1) = std::pair{r1, r0 - t * r1};
      std::tie(s0, s1) = std::pair{s1, s0 - t * s1};
    }
    std::int64_t s = s0 % static_cast<std::int64_t>(d.p);
    if (s < 0) s += static_cast<std::int64_t>(d.p);
    return static_cast<Coeff>(s);
  }
  const std::uint64_t k = (d.q - 1 - d.log[a]) % (d.q - 1);
  return d.exp[k];
}

Coeff Field::pow(Coeff a, std::int64_t k) const {
  if (k < 0) {
    a = inv(a);
    k = -k;
  }
  if (a == 0) return k == 0 ? one() : 0;
  const auto order = static_cast<std::int64_t>(q() - 1);
  std::int64_t kk = k % order;
  Coeff result = one();
  Coeff base = a;
  while (kk > 0) {
    if (kk & 1) result = mul(result, base);
    base = mul(base, base);
    kk >>= 1;
  }
  return result;
}

std::vector<std::uint32_t> Field::digits(Coeff a) const {
  const auto& d = *data_;
  std::vector<std::uint32_t> out(d.e);
  for (unsigned i = 0; i < d.e; ++i) out[i] = static_cast<std::uint32_t>(a / d.place_value[i] % d.p);
  return out;
}

Coeff Field::from_digits(std::span<const std::uint32_t> digits) const {
  const auto& d = *data_;
  if (digits.size() != d.e) throw DomainError("expected " + std::to_string(d.e) + " coordinates for an element of " + spec_string());
  std::uint64_t code = 0;
  for (unsigned i = 0; i < d.e; ++i) {
    if (digits[i] >= d.p) throw DomainError("coordinate " + std::to_string(digits[i]) + " out of range [0, p)");
    code += digits[i] * d.place_value[i];
  }
  return static_cast<Coeff>(code);
}

std::vector<FqElem> Field::elements() const {
  std::vector<FqElem> out;
  out.reserve(q());
  for (std::uint64_t c = 0; c < q(); ++c) out.emplace_back(*this, static_cast<Coeff>(c));
  return out;
}

FqElem Field::elem(Coeff code) const { return FqElem(*this, code); }

std::string Field::spec_string() const { return "gf(" + std::to_string(q()) + ")"; }

std::string Field::format(Coeff a) const {
  if (e() == 1) return std::to_string(a);
  std::string s = "[";
  const auto ds = digits(a);
  for (std::size_t i = 0; i < ds.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(ds[i]);
  }
  return s + "]";
}

namespace {

std::uint64_t parse_uint(std::string_view t, std::string_view what) {
  while (!t.empty() && t.front() == ' ') t.remove_prefix(1);
  while (!t.empty() && t.back() == ' ') t.remove_suffix(1);
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc{} || ptr != t.data() + t.size() || t.empty())
    throw ParseError("invalid " + std::string(what) + " '" + std::string(t) + "'");
  return v;
}

}  // namespace

Coeff Field::parse(std::string_view text) const {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (!text.empty() && text.front() == '[') {
    if (text.back() != ']') throw ParseError("unterminated element '" + std::string(text) + "'");
    std::vector<std::uint32_t> ds;
    std::string_view body = text.substr(1, text.size() - 2);
    while (true) {
      const auto comma = body.find(',');
      const auto v = parse_uint(body.substr(0, comma), "element coordinate");
      if (v >= p()) throw ParseError("element coordinate '" + std::to_string(v) + "' not below p = " + std::to_string(p()));
      ds.push_back(static_cast<std::uint32_t>(v));
      if (comma == std::string_view::npos) break;
      body.remove_prefix(comma + 1);
    }
    if (ds.size() != e()) throw ParseError("element '" + std::string(text) + "' needs " + std::to_string(e()) + " coordinates");
    return from_digits(ds);
  }
  const auto v = parse_uint(text, "field element");
  if (v >= p()) throw ParseError("field element '" + std::string(text) + "' not below p = " + std::to_string(p()));
  // a bare integer names an element of the prime subfield
  return static_cast<Coeff>(v * data_->place_value[0]);
}

Field parse_field(std::string_view text) {
  std::string_view t = text;
  if (t.starts_with("gf(") || t.starts_with("GF(")) {
    if (!t.ends_with(")")) throw ParseError("invalid field spec '" + std::string(text) + "'");
    t = t.substr(3, t.size() - 4);
  }
  const auto q = parse_uint(t, "field spec");
  try {
    return Field::of_order(q);
  } catch (const DomainError& e) {
    throw ParseError("invalid field spec '" + std::string(text) + "': " + e.what());
  }
}

FqElem::FqElem(Field field, Coeff code) : field_(std::move(field)), code_(code) {
  if (code_ >= field_.q()) throw DomainError("element code " + std::to_string(code) + " outside " + field_.spec_string());
}

namespace {
void check_same(const FqElem& a, const FqElem& b) {
  if (!(a.field() == b.field()))
    throw DomainError("field mismatch: " + a.field().spec_string() + " vs " + b.field().spec_string());
}
}  // namespace

FqElem operator+(const FqElem& a, const FqElem& b) {
  check_same(a, b);
  return {a.field_, a.field_.add(a.code_, b.code_)};
}
FqElem operator-(const FqElem& a, const FqElem& b) {
  check_same(a, b);
  return {a.field_, a.field_.sub(a.code_, b.code_)};
}
FqElem operator*(const FqElem& a, const FqElem& b) {
  check_same(a, b);
  return {a.field_, a.field_.mul(a.code_, b.code_)};
}
FqElem operator/(const FqElem& a, const FqElem& b) {
  check_same(a, b);
  return {a.field_, a.field_.mul(a.code_, a.field_.inv(b.code_))};
}

}  // namespace drinfeld
