#include <optional>
#include <random>

#include "demres/demailly.hpp"
#include "demres/laurent.hpp"
#include "doctest.h"

using namespace demres;

namespace {

RationalPoly mono(std::initializer_list<int> e, const Rational& c = 1) {
  return RationalPoly::monomial(Exponents(e), c);
}

RationalPoly one(std::size_t nvars) { return RationalPoly::constant(nvars, Rational(1)); }

Window box(std::initializer_list<Interval> b) { return Window(std::vector<Interval>(b)); }

// Coefficients of p that fall inside w.
std::map<Exponents, Rational> inside(const RationalPoly& p, const Window& w) {
  std::map<Exponents, Rational> out;
  for (const auto& [e, c] : p.terms()) {
    if (w.contains(e)) out.emplace(e, c);
  }
  return out;
}

RationalPoly random_poly(std::mt19937& rng, int max_terms) {
  std::uniform_int_distribution<int> exp(-2, 2), coeff(-3, 3), count(1, max_terms);
  RationalPoly p(2);
  while (p.is_zero()) {
    const int k = count(rng);
    for (int i = 0; i < k; ++i) {
      int c = 0;
      while (c == 0) c = coeff(rng);
      p.add_term(Exponents{exp(rng), exp(rng)}, Rational(c));
    }
  }
  return p;
}

}  // namespace

TEST_CASE("LaurentPoly arithmetic") {
  const auto p = one(2) + mono({1, 0});
  const auto q = one(2) - mono({1, 0});
  CHECK(p * q == one(2) - mono({2, 0}));
  CHECK((p - p).is_zero());
  CHECK(p.coeff(Exponents{1, 0}) == 1);
  CHECK(p.coeff(Exponents{5, 5}) == 0);
  CHECK(p.exponent_range(0) == std::pair{0, 1});
  CHECK_FALSE(RationalPoly(2).exponent_range(0).has_value());
  CHECK_THROWS_AS(p * one(3), Error);
}

TEST_CASE("substitute and lift") {
  // x -> t1/t2, y -> t1 + t2 in x^2 y
  const auto f = mono({2, 1});
  const std::vector<RationalPoly> images{mono({1, -1}), mono({1, 0}) + mono({0, 1})};
  CHECK(substitute(f, images, 2) == mono({3, -2}) + mono({2, -1}));
  // negative power of a monomial image
  CHECK(substitute(mono({-2, 0}), {mono({0, 1}, 3), one(2)}, 2) == mono({0, -2}, make_rational(1, 9)));
  CHECK_THROWS_AS(substitute(mono({-1, 0}), {mono({0, 1}) + one(2), one(2)}, 2), Error);
  CHECK(lift(mono({1, 0}, 4), Rational(1)) == mono({1, 0}, 4));
}

TEST_CASE("Window") {
  const auto w = box({{-1, 1}, {0, 2}});
  CHECK(w.cardinality() == 9);
  CHECK(w.contains(Exponents{1, 2}));
  CHECK_FALSE(w.contains(Exponents{2, 0}));
  CHECK(w.widened(1) == box({{-2, 2}, {-1, 3}}));
  CHECK(w.shifted(Exponents{1, -1}) == box({{0, 2}, {-1, 1}}));
  CHECK(w.widened(1).contains(w));
  CHECK_THROWS_AS(box({{1, 0}}), Error);
  int visited = 0;
  w.for_each([&](const Exponents&) { ++visited; });
  CHECK(visited == 9);
}

TEST_CASE("cauchy_mul of polynomials and series") {
  const auto a = one(1) + mono({1});
  const auto b = one(1) - mono({1});
  const auto prod = cauchy_mul(a, b, Window::cube(1, -2, 2));
  CHECK(prod.terms() == inside(one(1) - mono({2}), Window::cube(1, -2, 2)));

  const auto w = Window::cube(2, -2, 2);
  const auto p = mono({1, -1}, 3) + mono({-2, 2}) + one(2);
  CHECK(cauchy_mul(p, one(2), w).terms() == inside(p, w));

  // sum_k (t1/t2)^k times (1 - t1/t2) telescopes to 1
  const auto geo = expand_geometric({Exponents{0, 0}, 1}, mono({1, -1}, -1), box({{0, 6}, {-6, 0}}));
  for (int k = 0; k <= 6; ++k) CHECK(geo.coeff(Exponents{k, -k}) == 1);
  const auto tele = cauchy_mul(geo, one(2) - mono({1, -1}), box({{0, 5}, {-5, 0}}));
  CHECK(tele.terms() == std::map<Exponents, Rational>{{Exponents{0, 0}, Rational(1)}});
}

TEST_CASE("cauchy_mul refuses to guess outside its windows") {
  const auto geo = expand_geometric({Exponents{0}, 1}, mono({1}, -1), Window::cube(1, 0, 3));
  CHECK_NOTHROW(cauchy_mul(geo, one(1), Window::cube(1, 0, 3)));
  CHECK_THROWS_AS(cauchy_mul(geo, one(1), Window::cube(1, 0, 4)), TruncationError);
  CHECK_THROWS_WITH(cauchy_mul(geo, geo, Window::cube(1, 0, 5)),
                    doctest::Contains("truncation too narrow"));
  // 1/(1-t) * 1/(1-t) = sum (k+1) t^k on [0,3]
  const auto sq = cauchy_mul(geo, geo, Window::cube(1, 0, 3));
  for (int k = 0; k <= 3; ++k) CHECK(sq.coeff(Exponents{k}) == k + 1);
}

TEST_CASE("coeff") {
  CHECK(coeff(one(1) - mono({2}), Exponents{0}) == 1);
  const auto s = expand_rational({mono({0, 1}) - mono({1, 0}), mono({0, 1}) - mono({1, 0}, 2)},
                                 box({{0, 3}, {-3, 0}}));
  CHECK(coeff(s, Exponents{1, -1}) == 1);
  CHECK(coeff(s, Exponents{2, -2}) == 2);
  CHECK(coeff(s, Exponents{3, -2}) == 0);
  CHECK_THROWS_WITH_AS(coeff(s, Exponents{4, -4}), doctest::Contains("coefficient not determined"),
                       Error);
}

TEST_CASE("expand_geometric") {
  const auto inv = expand_geometric({Exponents{0}, 1}, mono({1}, -1), Window::cube(1, 0, 3));
  CHECK(inv.terms() == inside(one(1) + mono({1}) + mono({2}) + mono({3}), Window::cube(1, 0, 3)));

  const auto w = box({{0, 2}, {-3, -1}});
  const auto inv2 = expand_geometric({Exponents{0, 1}, 1}, mono({1, -1}, -2), w);
  CHECK(inv2.terms() == inside(mono({0, -1}) + mono({1, -2}, 2) + mono({2, -3}, 4), w));

  const auto unit = expand_geometric({Exponents{0, 0}, 1}, RationalPoly(2), Window::cube(2, -1, 1));
  CHECK(unit.terms() == inside(one(2), Window::cube(2, -1, 1)));

  // leading coefficient is inverted too
  const auto half = expand_geometric({Exponents{0}, 2}, RationalPoly(1), Window::cube(1, 0, 0));
  CHECK(half.coeff(Exponents{0}) == make_rational(1, 2));
}

TEST_CASE("expand_geometric rejects tails that are not small") {
  CHECK_THROWS_WITH_AS(expand_geometric({Exponents{0, 0}, 1}, one(2), Window::cube(2, 0, 1)),
                       doctest::Contains("not expandable at origin"), Error);
  CHECK_THROWS_WITH_AS(
      expand_geometric({Exponents{0, 0}, 1}, mono({-1, 5}), Window::cube(2, 0, 1)),
      doctest::Contains("not expandable at origin"), Error);
  // Leading monomial must be the lex-least one; t1 - t2 becomes -t2 (1 - t1/t2) automatically.
  const auto s = expand_rational({one(2), mono({1, 0}) - mono({0, 1})}, box({{0, 2}, {-3, -1}}));
  CHECK(s.coeff(Exponents{0, -1}) == -1);
  CHECK(s.coeff(Exponents{1, -2}) == -1);
}

TEST_CASE("expand_rational_product") {
  const RationalFunction phi{mono({0, 1}) - mono({1, 0}), mono({0, 1}) - mono({1, 0}, 2)};
  const RationalFunction inv{phi.denominator, phi.numerator};
  const auto w = box({{0, 3}, {-3, 0}});
  const auto s = expand_rational_product({phi}, w);
  CHECK(s.terms() == inside(one(2) + mono({1, -1}) + mono({2, -2}, 2) + mono({3, -3}, 4), w));

  CHECK(expand_rational_product({{one(2), one(2)}}, w).terms() == inside(one(2), w));
  CHECK(expand_rational_product({}, w).terms() == inside(one(2), w));
  for (const auto& window : {w, Window::cube(2, -4, 4), box({{2, 5}, {-5, -1}})}) {
    CHECK(expand_rational_product({phi, inv}, window).terms() == inside(one(2), window));
  }
}

TEST_CASE("property: field law Q * Q^-1 = 1 on windows") {
  std::mt19937 rng(42);
  int checked = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const auto n = random_poly(rng, 3);
    const auto d = random_poly(rng, 3);
    std::uniform_int_distribution<int> lo(-3, 0), len(0, 3);
    const int a = lo(rng), b = lo(rng);
    const Window w = box({{a, a + len(rng)}, {b, b + len(rng)}});
    const auto s = expand_rational_product({{n, d}, {d, n}}, w);
    CHECK(s.terms() == inside(one(2), w));
    ++checked;
  }
  CHECK(checked == 50);
}

TEST_CASE("property: Cauchy product is commutative and associative where windows suffice") {
  std::mt19937 rng(99);
  int associative_checked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<TruncatedSeries> s;
    for (int i = 0; i < 3; ++i) {
      s.push_back(expand_rational({random_poly(rng, 2), random_poly(rng, 3)}, Window::cube(2, -8, 8)));
    }
    const Window out = Window::cube(2, -1, 1);
    const Window mid = Window::cube(2, -4, 4);
    // A triple only counts when every product is certified on these windows.
    std::optional<TruncatedSeries> ab, ba, left, right;
    try {
      ab = cauchy_mul(s[0], s[1], out);
      ba = cauchy_mul(s[1], s[0], out);
      left = cauchy_mul(cauchy_mul(s[0], s[1], mid), s[2], out);
      right = cauchy_mul(s[0], cauchy_mul(s[1], s[2], mid), out);
    } catch (const TruncationError&) {
      continue;
    }
    CHECK(*ab == *ba);
    CHECK(*left == *right);
    ++associative_checked;
  }
  CHECK(associative_checked >= 10);
}

TEST_CASE("property: expand_geometric of 1/(1-X) matches sum X^k") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> exp(-3, 3), coeff(-4, 4);
  int done = 0;
  while (done < 20) {
    Exponents x{exp(rng), exp(rng)};
    if (!x.lex_positive()) continue;
    int c = 0;
    while (c == 0) c = coeff(rng);
    const Window w = Window::cube(2, -6, 6);
    const auto series = expand_geometric({Exponents{0, 0}, 1}, mono({x[0], x[1]}, -c), w);
    RationalPoly expected(2), power = one(2);
    for (int k = 0; k <= 12; ++k) {
      expected += power;
      power = power * mono({x[0], x[1]}, c);
    }
    CHECK(series.terms() == inside(expected, w));
    ++done;
  }
}

TEST_CASE("property: the residue factors expand to series without negative t1 powers") {
  for (int kappa = 2; kappa <= 3; ++kappa) {
    const auto cfg = TowerConfig::make(kappa, 2, 1);
    const auto s = expand_rational_product(residue_phi_rational(cfg), default_residue_window(cfg));
    CHECK_FALSE(s.is_zero());
    for (const auto& [e, c] : s.terms()) {
      CHECK(e[0] >= 0);
      CHECK(e.total() == 0);
    }
  }
}

TEST_CASE("support bounds") {
  const auto p = mono({1, -1}) + mono({-2, 3});
  const auto sb = SupportBound::of_terms(p.terms(), 2);
  CHECK(sb.admits(Exponents{1, -1}));
  CHECK(sb.admits(Exponents{0, 0}));  // inside box and degree range
  CHECK_FALSE(sb.admits(Exponents{2, 0}));
  const auto sum = minkowski_sum(sb, sb);
  CHECK(sum.admits(Exponents{-1, 2}));
  CHECK_FALSE(sum.admits(Exponents{3, 0}));
  CHECK(SupportBound::of_terms({}, 2).empty);
}
