#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "residue/residue.hpp"

using namespace csep;

namespace {

FieldPtr make_field(std::initializer_list<std::string> cs) {
  std::vector<Rat> v;
  for (const auto& s : cs) v.push_back(rat_from_string(s));
  return NumberField::create("t", PolyQ(std::move(v)));
}

NFElement el(const FieldPtr& K, std::initializer_list<std::string> cs) {
  std::vector<Rat> v;
  for (const auto& s : cs) v.push_back(rat_from_string(s));
  return NFElement(K, std::move(v));
}

std::vector<FFElem> all_elements(const ResidueMapPtr& m) {
  std::vector<FFElem> out;
  uint64_t p = m->p;
  int d = m->dim();
  std::vector<uint64_t> c(static_cast<size_t>(d), 0);
  while (true) {
    out.emplace_back(m, c);
    int i = 0;
    while (i < d && ++c[static_cast<size_t>(i)] == p) c[static_cast<size_t>(i++)] = 0;
    if (i == d) break;
  }
  return out;
}

}  // namespace

TEST_CASE("good prime stream anchors") {
  SUBCASE("Q(i) with i and 1/2 tracked starts at 3") {
    auto Qi = make_field({"1", "0", "1"});
    TrackedRing r{Qi, {NFElement::generator(Qi), el(Qi, {"1/2", "0"})}, {}};
    GoodPrimeStream s({r}, 100);
    CHECK(s.next() == 3);
    CHECK(s.next() == 5);
  }
  SUBCASE("Q with 1/6 tracked starts at 5") {
    auto Q = NumberField::rationals();
    TrackedRing r{Q, {NFElement::from_rational(Q, Rat(1) / 6)}, {}};
    GoodPrimeStream s({r}, 100);
    CHECK(s.next() == 5);
  }
  SUBCASE("Q(sqrt2) skips the discriminant prime") {
    auto Qs = make_field({"-2", "0", "1"});
    GoodPrimeStream s({TrackedRing{Qs, {}, {}}}, 100);
    CHECK(s.next() == 3);
  }
  SUBCASE("stream is increasing and rechecks cleanly") {
    auto Qi = make_field({"1", "0", "1"});
    TrackedRing r{Qi, {el(Qi, {"1/10", "0"})}, {NFElement::generator(Qi) + Rat(1)}};
    GoodPrimeStream s({r}, 60);
    uint64_t last = 0;
    while (auto p = s.next()) {
      CHECK(*p > last);
      CHECK(is_good_prime({r}, *p));
      last = *p;
    }
  }
}

TEST_CASE("residue_split anchors") {
  auto Qi = make_field({"1", "0", "1"});
  SUBCASE("5 splits in Q(i)") {
    auto maps = residue_split(Qi, 5);
    REQUIRE(maps.size() == 2);
    CHECK(maps[0]->factor == PolyFp(5, {2, 1}));
    CHECK(maps[1]->factor == PolyFp(5, {3, 1}));
    // Generator images are 3 and 2 under T+2 and T+3 respectively.
    CHECK(reduce(maps[0], NFElement::generator(Qi)) == FFElem::from_int(maps[0], 3));
    CHECK(reduce(maps[1], NFElement::generator(Qi)) == FFElem::from_int(maps[1], 2));
  }
  SUBCASE("3 is inert in Q(i)") {
    auto maps = residue_split(Qi, 3);
    REQUIRE(maps.size() == 1);
    CHECK(maps[0]->dim() == 2);
    CHECK(maps[0]->card() == 9);
  }
  SUBCASE("rationals give the one-map split") {
    auto maps = residue_split(NumberField::rationals(), 7);
    REQUIRE(maps.size() == 1);
    CHECK(maps[0]->dim() == 1);
  }
  SUBCASE("ramified prime rejected") {
    CHECK_THROWS_AS(residue_split(Qi, 2), Error);
  }
}

TEST_CASE("reduction anchors") {
  auto Qi = make_field({"1", "0", "1"});
  auto maps5 = residue_split(Qi, 5);
  // Under T |-> 2 (factor T+3), 1+i reduces to 3.
  CHECK(reduce(maps5[1], el(Qi, {"1", "1"})) == FFElem::from_int(maps5[1], 3));
  CHECK(reduce(maps5[0], NFElement::zero(Qi)).is_zero());
  auto maps3 = residue_split(Qi, 3);
  CHECK(reduce(maps3[0], el(Qi, {"1/2", "0"})) == FFElem::from_int(maps3[0], 2));
  CHECK_THROWS_AS(reduce(maps3[0], el(Qi, {"1/3", "0"})), Error);
}

TEST_CASE("reduce is a ring homomorphism") {
  std::mt19937 rng(9);
  std::uniform_int_distribution<int> d(-30, 30);
  for (const auto& K : {make_field({"1", "0", "1"}), make_field({"-2", "0", "0", "1"})}) {
    for (uint64_t p : {5, 7, 11}) {
      auto maps = residue_split(K, p);
      for (const auto& m : maps) {
        for (int it = 0; it < 200; ++it) {
          std::vector<Rat> xc, yc;
          for (int i = 0; i < K->degree(); ++i) {
            xc.push_back(Rat(d(rng)) / (1 + rng() % 4 % (p - 1)));
            yc.push_back(Rat(d(rng)));
          }
          NFElement x(K, xc), y(K, yc);
          if (!x.is_p_integral(p) || !y.is_p_integral(p)) continue;
          CHECK(reduce(m, x + y) == reduce(m, x) + reduce(m, y));
          CHECK(reduce(m, x * y) == reduce(m, x) * reduce(m, y));
        }
        CHECK(reduce(m, NFElement::one(K)) == FFElem::one(m));
      }
    }
  }
}

TEST_CASE("multiplicative order") {
  auto Q = NumberField::rationals();
  auto m7 = residue_split(Q, 7)[0];
  CHECK(mult_order(FFElem::from_int(m7, 2)) == 3);
  CHECK(mult_order(FFElem::one(m7)) == 1);
  auto Qi = make_field({"1", "0", "1"});
  auto m3 = residue_split(Qi, 3)[0];
  CHECK(mult_order(reduce(m3, NFElement::generator(Qi))) == 4);
  CHECK_THROWS_AS(mult_order(FFElem::zero(m7)), Error);
  // Order divides p^d - 1 and the power lands on 1, across a few fields.
  for (uint64_t p : {3, 5, 7}) {
    auto maps = residue_split(Qi, p);
    for (const auto& m : maps)
      for (const auto& x : all_elements(m)) {
        if (x.is_zero()) continue;
        Int o = mult_order(x);
        Int group = m->card() - 1;
        CHECK(mpz_divisible_p(group.get_mpz_t(), o.get_mpz_t()));
        CHECK(x.pow(o) == FFElem::one(m));
      }
  }
}

TEST_CASE("in_cyclic matches exhaustive enumeration") {
  auto Q = NumberField::rationals();
  auto m7 = residue_split(Q, 7)[0];
  CHECK(in_cyclic(FFElem::from_int(m7, 2), FFElem::from_int(m7, 3)));
  CHECK_FALSE(in_cyclic(FFElem::from_int(m7, 3), FFElem::from_int(m7, 2)));
  CHECK(in_cyclic(FFElem::one(m7), FFElem::from_int(m7, 5)));
  auto Qi = make_field({"1", "0", "1"});
  std::vector<ResidueMapPtr> maps;
  for (uint64_t p : {3, 5, 7, 11, 13, 17, 19, 23, 29, 31}) {
    for (const auto& m : residue_split(Qi, p))
      if (m->card() <= 1000) maps.push_back(m);
  }
  for (const auto& m : maps) {
    auto elems = all_elements(m);
    for (const auto& y : elems) {
      if (y.is_zero()) continue;
      std::set<std::vector<uint64_t>> powers;
      FFElem cur = FFElem::one(m);
      do {
        powers.insert(cur.coeffs());
        cur = cur * y;
      } while (!(cur == FFElem::one(m)));
      for (const auto& x : elems) {
        if (x.is_zero()) continue;
        CHECK(in_cyclic(x, y) == (powers.count(x.coeffs()) > 0));
      }
    }
  }
}

TEST_CASE("discrete log") {
  auto Q = NumberField::rationals();
  auto m7 = residue_split(Q, 7)[0];
  auto dl = discrete_log(FFElem::from_int(m7, 2), FFElem::from_int(m7, 3));
  REQUIRE(dl.has_value());
  CHECK(FFElem::from_int(m7, 3).pow(*dl) == FFElem::from_int(m7, 2));
  CHECK_FALSE(discrete_log(FFElem::from_int(m7, 3), FFElem::from_int(m7, 2)).has_value());
}

TEST_CASE("span membership") {
  SUBCASE("coordinates in F_9") {
    auto Qi = make_field({"1", "0", "1"});
    auto m3 = residue_split(Qi, 3)[0];
    auto i = NFElement::generator(Qi);
    auto x = i * Rat(2) + Rat(1);
    auto sol = span_member(x, {NFElement::one(Qi), i}, {m3});
    REQUIRE(sol.has_value());
    CHECK((*sol)[0] == 1);
    CHECK((*sol)[1] == 2);
    CHECK_FALSE(span_member(i, {NFElement::one(Qi)}, {m3}).has_value());
  }
  SUBCASE("joint system over both factors of T^3-2 at 5") {
    auto K = make_field({"-2", "0", "0", "1"});
    auto maps = residue_split(K, 5);
    REQUIRE(maps.size() == 2);
    auto beta = NFElement::generator(K);
    CHECK_FALSE(span_member(beta * beta, {NFElement::one(K), beta}, maps).has_value());
    // Exhaustive agreement over all coefficient pairs.
    bool any = false;
    for (uint64_t c0 = 0; c0 < 5 && !any; ++c0)
      for (uint64_t c1 = 0; c1 < 5 && !any; ++c1) {
        bool match = true;
        for (const auto& m : maps) {
          FFElem lhs = FFElem::from_int(m, c0) + FFElem::from_int(m, c1) * reduce(m, beta);
          if (!(lhs == reduce(m, beta * beta))) match = false;
        }
        any = match;
      }
    CHECK_FALSE(any);
  }
  SUBCASE("exhaustive agreement on random small instances") {
    std::mt19937 rng(31);
    auto K = make_field({"1", "0", "1"});
    for (uint64_t p : {3, 5, 7, 11, 13}) {
      auto maps = residue_split(K, p);
      for (int it = 0; it < 40; ++it) {
        NFElement x(K, {Rat(static_cast<int>(rng() % 19) - 9), Rat(static_cast<int>(rng() % 19) - 9)});
        NFElement b1(K, {Rat(static_cast<int>(rng() % 7) - 3), Rat(static_cast<int>(rng() % 7) - 3)});
        std::vector<NFElement> basis{NFElement::one(K), b1};
        auto got = span_member(x, basis, maps);
        bool expect = false;
        for (uint64_t c0 = 0; c0 < p && !expect; ++c0)
          for (uint64_t c1 = 0; c1 < p && !expect; ++c1) {
            bool match = true;
            for (const auto& m : maps) {
              FFElem lhs = FFElem::from_int(m, c0) * reduce(m, basis[0]) +
                           FFElem::from_int(m, c1) * reduce(m, basis[1]);
              if (!(lhs == reduce(m, x))) match = false;
            }
            expect = match;
          }
        CHECK(got.has_value() == expect);
      }
    }
  }
}

TEST_CASE("map restriction to a subfield") {
  // Q(sqrt2) inside the degree-4 field generated by i + sqrt2.
  auto Qs = make_field({"-2", "0", "1"});
  auto ext = make_field({"9", "0", "-2", "0", "1"});
  auto theta = NFElement::generator(ext);
  // theta^3 - 5 theta = -6 sqrt2 for theta = i + sqrt2.
  auto sqrt2 = theta * (NFElement::from_rational(ext, Rat(5)) - theta * theta) * (Rat(1) / 6);
  CHECK(sqrt2 * sqrt2 == NFElement::from_rational(ext, Rat(2)));
  FieldHom lift{Qs, ext, sqrt2};
  for (uint64_t p : {5, 7, 11, 13, 17}) {
    if (!is_unramified(ext, p) || !is_unramified(Qs, p)) continue;
    for (const auto& m_ext : residue_split(ext, p)) {
      auto m_base = restrict_map(m_ext, lift);
      CHECK(m_base->p == p);
      auto fp = poly_q_mod_p(Qs->min_poly(), p);
      REQUIRE(fp.has_value());
      CHECK(PolyFp::rem(*fp, m_base->factor).is_zero());
      // Reduction through the restriction agrees with reduction after lift
      // on rational test elements.
      auto x = NFElement::from_rational(Qs, Rat(17) / 3);
      if (!x.is_p_integral(p)) continue;
      CHECK(reduce(m_base, x).coeffs()[0] == reduce(m_ext, lift.apply(x)).coeffs()[0]);
    }
  }
}
