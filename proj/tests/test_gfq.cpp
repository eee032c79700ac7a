#include <set>

#include "doctest.h"
#include "drinfeld/gfq.hpp"

using namespace drinfeld;

TEST_CASE("prime fields") {
  auto F2 = Field::make(2);
  CHECK(F2.q() == 2);
  auto els = F2.elements();
  REQUIRE(els.size() == 2);
  CHECK(els[0].code() == 0);
  CHECK(els[1].code() == 1);

  auto F3 = Field::make(3);
  CHECK(F3.q() == 3);
  CHECK((F3.elem(2) + F3.elem(2)).code() == 1);
  CHECK(F3.elem(2).inv().code() == 2);

  auto F5 = Field::make(5);
  std::vector<Coeff> codes;
  for (auto& e : F5.elements()) codes.push_back(e.code());
  CHECK(codes == std::vector<Coeff>{0, 1, 2, 3, 4});
}

TEST_CASE("GF(8) modulus is one of the two irreducible cubics") {
  auto F8 = Field::make(2, 3);
  CHECK(F8.q() == 8);
  const std::vector<std::uint32_t> m(F8.modulus().begin(), F8.modulus().end());
  // exhaustive: the monic cubics over F_2 with no root are exactly the irreducible ones
  std::vector<std::vector<std::uint32_t>> irreducible;
  for (std::uint32_t c0 = 0; c0 < 2; ++c0)
    for (std::uint32_t c1 = 0; c1 < 2; ++c1)
      for (std::uint32_t c2 = 0; c2 < 2; ++c2) {
        bool root = false;
        for (std::uint32_t x = 0; x < 2; ++x) root |= ((c0 + c1 * x + c2 * x * x + x * x * x) % 2) == 0;
        if (!root) irreducible.push_back({c0, c1, c2, 1});
      }
  REQUIRE(irreducible.size() == 2);
  CHECK(std::find(irreducible.begin(), irreducible.end(), m) != irreducible.end());
  // first in canonical order (constant term most significant): T^3+T^2+1
  CHECK(m == std::vector<std::uint32_t>{1, 0, 1, 1});
}

TEST_CASE("GF(8) inverses") {
  auto F8 = Field::make(2, 3);
  for (auto& a : F8.elements()) {
    if (a.is_zero()) continue;
    CHECK((a * a.inv()).code() == F8.one());
  }
}

TEST_CASE("GF(9) has nine distinct elements") {
  auto F9 = Field::make(3, 2);
  std::set<Coeff> seen;
  for (auto& e : F9.elements()) seen.insert(e.code());
  CHECK(seen.size() == 9);
}

TEST_CASE("field axioms hold exhaustively for small fields") {
  for (auto [p, e] : {std::pair{2u, 1u}, {3, 1}, {5, 1}, {7, 1}, {2, 2}, {2, 3}, {3, 2}, {2, 4}, {5, 2}, {2, 5}, {3, 3}, {2, 6}}) {
    auto F = Field::make(p, e);
    CAPTURE(F.q());
    const auto q = static_cast<Coeff>(F.q());
    const Coeff one = F.one();
    bool ok = true;
    for (Coeff a = 0; a < q; ++a) {
      ok &= F.add(a, 0) == a && F.mul(a, one) == a && F.add(a, F.neg(a)) == 0;
      if (a != 0) ok &= F.pow(a, static_cast<std::int64_t>(q - 1)) == one && F.mul(a, F.inv(a)) == one;
      for (Coeff b = 0; b < q; ++b) {
        ok &= F.add(a, b) == F.add(b, a) && F.mul(a, b) == F.mul(b, a);
        ok &= F.sub(F.add(a, b), b) == a;
        for (Coeff c = 0; c < q; ++c) {
          ok &= F.add(F.add(a, b), c) == F.add(a, F.add(b, c));
          ok &= F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c));
          ok &= F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c));
        }
      }
    }
    CHECK(ok);
  }
}

TEST_CASE("extension elements add coordinatewise") {
  auto F9 = Field::make(3, 2);
  for (auto& a : F9.elements())
    for (auto& b : F9.elements()) {
      auto s = (a + b).coeffs();
      auto x = a.coeffs(), y = b.coeffs();
      CHECK(s == std::vector<std::uint32_t>{(x[0] + y[0]) % 3, (x[1] + y[1]) % 3});
    }
}

TEST_CASE("canonical order is lexicographic from the constant term") {
  auto F9 = Field::make(3, 2);
  auto els = F9.elements();
  for (std::size_t i = 1; i < els.size(); ++i) CHECK(els[i - 1].coeffs() < els[i].coeffs());
  CHECK(F9.format(F9.one()) == "[1,0]");
}

TEST_CASE("errors") {
  CHECK_THROWS_AS(Field::make(4), DomainError);
  CHECK_THROWS_AS(Field::make(2, 0), DomainError);
  CHECK_THROWS_AS(Field::make(2, 21), DomainError);
  CHECK_THROWS_AS(Field::make(1), DomainError);
  auto F3 = Field::make(3), F5 = Field::make(5);
  CHECK_THROWS_AS(F3.elem(1) + F5.elem(1), DomainError);
  CHECK_THROWS_AS(F3.elem(0).inv(), DomainError);
  CHECK_THROWS_AS(F3.elem(3), DomainError);
  CHECK_THROWS_AS(Field::of_order(12), DomainError);
}

TEST_CASE("text formats") {
  CHECK(parse_field("gf(8)").q() == 8);
  CHECK(parse_field("9").e() == 2);
  CHECK_THROWS_AS(parse_field("gf(6)"), ParseError);
  CHECK_THROWS_AS(parse_field("gf(x)"), ParseError);
  auto F = Field::make(2, 3);
  CHECK(F.spec_string() == "gf(8)");
  for (auto& a : F.elements()) CHECK(F.parse(F.format(a.code())) == a.code());
  CHECK(F.format(F.parse("[0,1,1]")) == "[0,1,1]");
  CHECK_THROWS_AS(F.parse("[0,2,1]"), ParseError);
  CHECK_THROWS_AS(F.parse("[0,1]"), ParseError);
  CHECK(Field::make(7).format(5) == "5");
}
