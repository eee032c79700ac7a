#include "drinfeld/rational.hpp"

#include "drinfeld/error.hpp"

namespace drinfeld {

BigInt ipow(const BigInt& base, std::uint64_t exponent) {
  BigInt out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
  return out;
}

Rational rpow(const Rational& base, std::int64_t exponent) {
  if (exponent < 0) {
    if (base == 0) throw DomainError("zero raised to a negative power");
    return rpow(Rational(base.get_den(), base.get_num()), -exponent);
  }
  const auto e = static_cast<std::uint64_t>(exponent);
  Rational out(ipow(base.get_num(), e), ipow(base.get_den(), e));
  out.canonicalize();
  return out;
}

std::string to_fraction_string(const Rational& r) {
  Rational c = r;
  c.canonicalize();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

Rational parse_fraction(std::string_view text) {
  std::string t(text);
  Rational r;
  if (t.empty() || r.set_str(t, 10) != 0) throw ParseError("invalid rational '" + t + "'");
  if (r.get_den() == 0) throw ParseError("zero denominator in '" + t + "'");
  r.canonicalize();
  return r;
}

std::string to_decimal(const Rational& r, unsigned digits) {
  const bool negative = r < 0;
  Rational a = negative ? Rational(-r) : r;
  const BigInt scale = ipow(BigInt(10), digits);
  // round(|r| * 10^digits)
  BigInt scaled_num = a.get_num() * scale * 2 + a.get_den();
  BigInt twice_den = a.get_den() * 2;
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), scaled_num.get_mpz_t(), twice_den.get_mpz_t());
  BigInt int_part, frac_part;
  mpz_fdiv_qr(int_part.get_mpz_t(), frac_part.get_mpz_t(), q.get_mpz_t(), scale.get_mpz_t());
  std::string out = (negative && q != 0 ? "-" : "") + int_part.get_str();
  if (digits > 0) {
    std::string f = frac_part.get_str();
    out += "." + std::string(digits - f.size(), '0') + f;
  }
  return out;
}

double to_double(const Rational& r) { return r.get_d(); }

std::string to_string(const BigInt& n) { return n.get_str(); }

}  // namespace drinfeld
