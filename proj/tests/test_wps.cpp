#include <set>

#include "doctest.h"
#include "drinfeld/wps.hpp"
#include "oracles.hpp"

using namespace drinfeld;

namespace {

Poly P(const Field& F, const char* s) { return parse_poly(F, s); }
RationalFunction R(const Field& F, const char* num, const char* den = "1") { return {P(F, num), P(F, den)}; }

// Points of P^1 of height b: coprime pairs with max degree b, scaled so the
// first nonzero coordinate is monic.
std::size_t p1_oracle(const Field& F, int b) {
  std::set<std::pair<Poly, Poly>> seen;
  const auto polys = oracle::all_polys(F, b);
  for (const auto& x : polys)
    for (const auto& y : polys) {
      if (x.is_zero() && y.is_zero()) continue;
      if (std::max(x.degree(), y.degree()) != b) continue;
      if (!gcd(x, y).is_one()) continue;
      const Coeff lead = x.is_zero() ? y.leading() : x.leading();
      const Coeff inv = F.inv(lead);
      seen.emplace(x.scaled(inv), y.scaled(inv));
    }
  return seen.size();
}

}  // namespace

TEST_CASE("weight vectors") {
  WeightVector w({1, 3});
  CHECK(w.size() == 2);
  CHECK(w.total() == 4);
  CHECK(w.min() == 1);
  CHECK(w.to_string() == "(1,3)");
  CHECK(WeightVector::drinfeld(2, 2) == w);
  CHECK(WeightVector::drinfeld(3, 3) == WeightVector({2, 8, 26}));
  CHECK_THROWS_AS(WeightVector({1}), DomainError);
  CHECK_THROWS_AS(WeightVector({1, 0}), DomainError);
}

TEST_CASE("normalize") {
  auto F2 = Field::make(2);
  const WeightVector w13({1, 3});
  std::vector<RationalFunction> a{R(F2, "1", "T"), R(F2, "1")};
  auto x = normalize(a, w13);
  CHECK(x.coords == std::vector<Poly>{P(F2, "1"), P(F2, "T^3")});
  CHECK(x.height == 1);
  CHECK(height_via_places(x) == 1);

  const WeightVector w11({1, 1});
  std::vector<RationalFunction> b{R(F2, "T"), R(F2, "T")};
  auto y = normalize(b, w11);
  CHECK(y.coords == std::vector<Poly>{P(F2, "1"), P(F2, "1")});
  CHECK(y.height == 0);

  auto F3 = Field::make(3);
  std::vector<RationalFunction> c{R(F3, "2"), R(F3, "2")};
  auto z = normalize(c, w13);
  // orbit of (2,2) under lambda -> (lambda, lambda^3) is {(1,1),(2,2)}
  CHECK(z.coords == std::vector<Poly>{P(F3, "1"), P(F3, "1")});

  std::vector<RationalFunction> d{R(F3, "T+1", "T^2"), R(F3, "1", "T+2")};
  auto u = normalize(d, w13);
  CHECK(content_free(u.coords, w13));
  CHECK(u.height == height_via_places(d, w13));

  std::vector<RationalFunction> zero{RationalFunction(F3), RationalFunction(F3)};
  CHECK_THROWS_AS(normalize(zero, w13), DomainError);
}

TEST_CASE("heights") {
  auto F2 = Field::make(2);
  const WeightVector w({1, 3});
  auto h = [&](const char* a, const char* b) {
    std::vector<RationalFunction> x{R(F2, a), R(F2, b)};
    return height_via_places(x, w);
  };
  CHECK(h("1", "1") == 0);
  CHECK(h("T", "1") == 1);
  CHECK(h("1", "T^4") == 2);
  auto hc = [&](const char* a, const char* b) {
    std::vector<Poly> x{P(F2, a), P(F2, b)};
    return height_closed_form(x, w);
  };
  CHECK(hc("T", "1") == 1);
  CHECK(hc("1", "T^3") == 1);
  CHECK(hc("0", "T^2") == 1);

  std::vector<RationalFunction> x{R(F2, "T"), R(F2, "1")};
  auto br = height_breakdown(x, w);
  CHECK(br.adopted == 1);
  CHECK(br.unsigned_sum == -1);
  CHECK(br.terms.size() == 2);  // infinity and (T)
}

TEST_CASE("canonicalize and the unit action") {
  auto F3 = Field::make(3);
  const WeightVector w28({2, 8});
  std::vector<Poly> a{P(F3, "2*T+1"), P(F3, "T")};
  CHECK(canonicalize(a, w28) == a);
  CHECK(orbit_size(a, w28) == 1);
  CHECK(unit_action_trivial(F3, w28));

  const WeightVector w11({1, 1});
  std::vector<Poly> b{P(F3, "T"), P(F3, "1")};
  auto orb = orbit(b, w11);
  REQUIRE(orb.size() == 2);
  CHECK(canonicalize(b, w11) == b);
  std::vector<Poly> b2{P(F3, "2*T"), P(F3, "2")};
  CHECK(canonicalize(b2, w11) == b);

  auto F2 = Field::make(2);
  std::vector<Poly> c{P(F2, "T"), P(F2, "1")};
  CHECK(orbit_size(c, w11) == 1);
  CHECK_THROWS_AS(canonicalize(std::vector<Poly>{Poly(F3), Poly(F3)}, w11), DomainError);

  // orbit size divides (q-1)/gcd(q-1, w)
  auto F5 = Field::make(5);
  const WeightVector w24({2, 4});
  std::vector<Poly> d{P(F5, "T"), P(F5, "1")};
  CHECK(orbit_size(d, w24) == 2);
  std::vector<Poly> e{Poly(F5), P(F5, "T")};
  CHECK(orbit_size(e, w24) == 1);
}

TEST_CASE("content_free") {
  auto F2 = Field::make(2);
  const WeightVector w({1, 3});
  CHECK(content_free(std::vector<Poly>{P(F2, "T"), P(F2, "T")}, w));
  CHECK_FALSE(content_free(std::vector<Poly>{P(F2, "T"), P(F2, "T^3")}, w));
  CHECK(content_free(std::vector<Poly>{P(F2, "1"), P(F2, "T^5+T")}, w));
  CHECK_FALSE(content_free(std::vector<Poly>{Poly(F2), P(F2, "T^4+T^3")}, w));
  CHECK(content_free(std::vector<Poly>{Poly(F2), P(F2, "T^2+T")}, w));
}

TEST_CASE("P^1 counts over F_2 and F_3") {
  auto F2 = Field::make(2);
  const WeightVector w({1, 1});
  const std::size_t expected[] = {3, 6, 24, 96};
  for (int b = 0; b <= 3; ++b) {
    CAPTURE(b);
    auto pts = enumerate_points(F2, w, b);
    CHECK(pts.size() == expected[b]);
    CHECK(pts.size() == p1_oracle(F2, b));
  }
  auto F3 = Field::make(3);
  for (int b = 0; b <= 2; ++b) CHECK(enumerate_points(F3, w, b).size() == p1_oracle(F3, b));
  auto pts0 = enumerate_points(F2, w, 0);
  CHECK(pts0[0].to_string() == "[0:1] @ w=(1,1) over gf(2)");
}

TEST_CASE("dual height formula and unit invariance on enumerated points") {
  struct Case {
    std::uint64_t q;
    std::vector<std::uint64_t> w;
    int b_max;
  };
  for (const auto& c : {Case{2, {1, 1}, 3}, Case{2, {1, 3}, 3}, Case{3, {2, 8}, 1}, Case{3, {1, 1}, 2},
                        Case{5, {1, 2}, 1}}) {
    auto F = Field::of_order(c.q);
    const WeightVector w(c.w);
    for (int b = 0; b <= c.b_max; ++b) {
      CAPTURE(c.q);
      CAPTURE(b);
      std::set<std::vector<Poly>> seen;
      for (const auto& x : enumerate_points(F, w, b)) {
        CHECK(x.height == b);
        CHECK(height_closed_form(x) == b);
        CHECK(height_via_places(x) == b);
        CHECK(content_free(x.coords, w));
        CHECK(canonicalize(x.coords, w) == x.coords);
        CHECK(seen.insert(x.coords).second);
        if (b == 0)
          for (const auto& xi : x.coords) CHECK(xi.is_constant());
        for (Coeff l = 1; l < c.q; ++l) {
          auto y = scale_by_unit(x.coords, w, l);
          std::vector<RationalFunction> yr(y.begin(), y.end());
          CHECK(height_via_places(yr, w) == b);
        }
      }
    }
  }
}

TEST_CASE("constant tuples are exactly the height-0 points") {
  auto F3 = Field::make(3);
  const WeightVector w({1, 2});
  std::set<std::vector<Poly>> consts;
  for (Coeff a = 0; a < 3; ++a)
    for (Coeff b = 0; b < 3; ++b) {
      if (a == 0 && b == 0) continue;
      consts.insert(canonicalize(std::vector<Poly>{Poly::constant(F3, a), Poly::constant(F3, b)}, w));
    }
  std::set<std::vector<Poly>> got;
  for (auto& x : enumerate_points(F3, w, 0)) got.insert(x.coords);
  CHECK(got == consts);
}

TEST_CASE("weighted dilation by T") {
  auto F2 = Field::make(2);
  const WeightVector w({1, 3});
  const Poly t = Poly::t(F2);
  for (int b = 0; b <= 2; ++b)
    for (const auto& x : enumerate_points(F2, w, b)) {
      std::vector<Poly> y;
      for (std::size_t i = 0; i < 2; ++i) y.push_back(x.coords[i] * t.pow(w[i]));
      // the raw tuple reads one higher, the projective point is unchanged
      CHECK(height_closed_form(y, w) == b + 1);
      std::vector<RationalFunction> yr(y.begin(), y.end());
      CHECK(height_via_places(yr, w) == b);
      CHECK(normalize(y, w) == x);
    }
}

TEST_CASE("enumeration is deterministic across worker counts") {
  auto F3 = Field::make(3);
  const WeightVector w({1, 1});
  auto a = enumerate_points(F3, w, 2, {1});
  auto b = enumerate_points(F3, w, 2, {3});
  auto c = enumerate_points(F3, w, 2, {8});
  CHECK(a == b);
  CHECK(a == c);
}

TEST_CASE("work bound") {
  auto F2 = Field::make(2);
  const WeightVector w({1, 1});
  CHECK_THROWS_AS(enumerate_points(F2, w, 20), WorkBoundError);
  try {
    enumerate_points(F2, w, 20);
  } catch (const WorkBoundError& e) {
    CHECK(std::string(e.what()).find("2^42") != std::string::npos);
  }
  CHECK_THROWS_AS(PointEnumerator(F2, w, 1, {1, 40.0}), DomainError);
  CHECK_THROWS_AS(PointEnumerator(F2, w, 1, {0, 34.0}), DomainError);
}
