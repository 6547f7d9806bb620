#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "nf/embedding.hpp"
#include "nf/number_field.hpp"

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

NFElement rnd_element(const FieldPtr& K, std::mt19937& rng) {
  std::uniform_int_distribution<int> d(-9, 9);
  std::vector<Rat> v;
  for (int i = 0; i < K->degree(); ++i) v.push_back(Rat(d(rng)) / (1 + (rng() % 3)));
  return NFElement(K, std::move(v));
}

std::vector<FieldPtr> corpus_fields() {
  return {
      NumberField::rationals(),
      make_field({"1", "0", "1"}),        // Q(i)
      make_field({"-2", "0", "1"}),       // Q(sqrt2)
      make_field({"-2", "0", "0", "1"}),  // Q(cbrt2)
      make_field({"1", "0", "0", "0", "1"}),  // Q(zeta8)
  };
}

}  // namespace

TEST_CASE("basic arithmetic in Q(i) and Q(sqrt2)") {
  auto Qi = make_field({"1", "0", "1"});
  auto i = NFElement::generator(Qi);
  auto one = NFElement::one(Qi);
  CHECK((one + i) * (one - i) == NFElement::from_rational(Qi, Rat(2)));
  CHECK(one / i == -i);
  auto Qs = make_field({"-2", "0", "1"});
  auto r = NFElement::generator(Qs);
  CHECK(r * r == NFElement::from_rational(Qs, Rat(2)));
  CHECK_THROWS_AS(NFElement::zero(Qi).inverse(), Error);
  CHECK_THROWS_AS(i + NFElement::generator(Qs), Error);
}

TEST_CASE("field axioms on random samples") {
  std::mt19937 rng(5);
  for (const auto& K : corpus_fields()) {
    for (int it = 0; it < 100; ++it) {
      NFElement x = rnd_element(K, rng);
      NFElement y = rnd_element(K, rng);
      NFElement z = rnd_element(K, rng);
      CHECK((x + y) + z == x + (y + z));
      CHECK((x * y) * z == x * (y * z));
      CHECK(x * (y + z) == x * y + x * z);
      if (!x.is_zero()) CHECK(x * x.inverse() == NFElement::one(K));
    }
  }
}

TEST_CASE("minimal polynomials") {
  auto K3 = make_field({"-2", "0", "0", "1"});
  auto beta = NFElement::generator(K3);
  PolyQ m = min_poly_of(beta * beta);
  CHECK(m == PolyQ::from_strings({"-4", "0", "0", "1"}));
  CHECK(min_poly_of(NFElement::from_rational(K3, Rat(3))) == PolyQ::from_strings({"-3", "1"}));
  auto Qi = make_field({"1", "0", "1"});
  CHECK(min_poly_of(NFElement::generator(Qi)) == PolyQ::from_strings({"1", "0", "1"}));
  for (const auto& K : corpus_fields()) {
    std::mt19937 rng(17);
    for (int it = 0; it < 10; ++it) {
      NFElement x = rnd_element(K, rng);
      PolyQ mp = min_poly_of(x);
      CHECK(eval_poly(mp, x).is_zero());
      CHECK(K->degree() % mp.degree() == 0);
    }
  }
}

TEST_CASE("embedding boxes") {
  auto Qs = make_field({"-2", "0", "1"});
  ComplexBox b0 = complex_embedding({Qs, 0});
  CHECK(b0.re == doctest::Approx(-std::sqrt(2.0)));
  CHECK(std::abs(b0.im) < 1e-20);
  auto Qi = make_field({"1", "0", "1"});
  ComplexBox c0 = complex_embedding({Qi, 0});
  CHECK(c0.re == doctest::Approx(0.0));
  CHECK(c0.im == doctest::Approx(-1.0));
  auto lin = NumberField::create("t", PolyQ::from_strings({"-3", "1"}));
  ComplexBox d0 = complex_embedding({lin, 0});
  CHECK(d0.re == doctest::Approx(3.0));
  // Boxes of all roots are pairwise disjoint.
  for (const auto& K : corpus_fields()) {
    auto boxes = field_root_boxes(K);
    for (size_t i = 0; i < boxes.size(); ++i)
      for (size_t j = i + 1; j < boxes.size(); ++j) {
        double dist = std::hypot(boxes[i].re - boxes[j].re, boxes[i].im - boxes[j].im);
        CHECK(dist > boxes[i].radius + boxes[j].radius);
      }
  }
}

TEST_CASE("exponent recovery") {
  auto Q = NumberField::rationals();
  auto two = NFElement::from_rational(Q, Rat(2));
  auto eight = NFElement::from_rational(Q, Rat(8));
  EmbeddingHandle h{Q, 0};
  auto hit = recover_exponent(eight, two, h, false, 64);
  REQUIRE(hit.has_value());
  CHECK(hit->m == 3);
  auto one = recover_exponent(NFElement::one(Q), two, h, false, 64);
  REQUIRE(one.has_value());
  CHECK(one->m == 0);
  CHECK_FALSE(recover_exponent(two, NFElement::from_rational(Q, Rat(4)), h, false, 64).has_value());
  // Signed variant.
  auto neg = recover_exponent(NFElement::from_rational(Q, Rat(-8)), two, h, true, 64);
  REQUIRE(neg.has_value());
  CHECK(neg->m == 3);
  CHECK(neg->sign == -1);
  CHECK_THROWS_AS(recover_exponent(two, NFElement::one(Q), h, false, 64), Error);
}

TEST_CASE("exponent recovery across corpus fields") {
  struct Case {
    FieldPtr K;
    NFElement lam;
  };
  std::vector<Case> cases;
  auto Q = NumberField::rationals();
  cases.push_back({Q, NFElement::from_rational(Q, Rat(2))});
  cases.push_back({Q, NFElement::from_rational(Q, Rat(-3) / 2)});
  auto Qs = make_field({"-2", "0", "1"});
  cases.push_back({Qs, NFElement::generator(Qs) + Rat(1)});  // 1+sqrt2, unit modulus off
  for (const auto& c : cases) {
    EmbeddingHandle h{c.K, 0};
    for (long m = -20; m <= 20; ++m) {
      auto hit = recover_exponent(c.lam.pow(Int(m)), c.lam, h, false, 64);
      REQUIRE(hit.has_value());
      CHECK(hit->m == m);
    }
  }
}

TEST_CASE("square roots in fields") {
  auto Q = NumberField::rationals();
  auto sq = sqrt_in_field(NFElement::from_rational(Q, Rat(49) / 9));
  REQUIRE(sq.root.has_value());
  CHECK(sq.root->to_rational() == Rat(7) / 3);
  auto no = sqrt_in_field(NFElement::from_rational(Q, Rat(2)));
  CHECK_FALSE(no.root.has_value());
  CHECK(no.proven_none);
  auto Qs = make_field({"-2", "0", "1"});
  // 2 = (sqrt2)^2 inside Q(sqrt2).
  auto yes = sqrt_in_field(NFElement::from_rational(Qs, Rat(2)));
  REQUIRE(yes.root.has_value());
  CHECK(*yes.root * *yes.root == NFElement::from_rational(Qs, Rat(2)));
  // 3 + 2*sqrt2 = (1+sqrt2)^2.
  auto u = NFElement::generator(Qs) * Rat(2) + Rat(3);
  auto w = sqrt_in_field(u);
  REQUIRE(w.root.has_value());
  CHECK(*w.root * *w.root == u);
  auto none = sqrt_in_field(NFElement::from_rational(Qs, Rat(3)));
  CHECK_FALSE(none.root.has_value());
  CHECK(none.proven_none);
}

TEST_CASE("adjoining quadratic roots") {
  auto Q = NumberField::rationals();
  EmbeddingHandle h{Q, 0};
  SUBCASE("char poly of a trace-3 matrix extends Q") {
    auto a = NFElement::from_rational(Q, Rat(-3));
    auto b = NFElement::one(Q);
    auto res = adjoin_quadratic_root(Q, a, b, h);
    REQUIRE_FALSE(res.reducible);
    CHECK(res.ext->degree() == 2);
    auto lifted_a = res.lift.apply(a);
    auto lifted_b = res.lift.apply(b);
    CHECK((res.root * res.root + lifted_a * res.root + lifted_b).is_zero());
  }
  SUBCASE("perfect square quadratic stays in Q") {
    auto res = adjoin_quadratic_root(Q, NFElement::from_rational(Q, Rat(-4)),
                                     NFElement::from_rational(Q, Rat(4)), h);
    CHECK(res.reducible);
    CHECK(res.root_in_base.to_rational() == Rat(2));
  }
  SUBCASE("adjoining i to Q(sqrt2) gives the degree-4 field") {
    auto Qs = make_field({"-2", "0", "1"});
    EmbeddingHandle hs{Qs, 0};
    auto res = adjoin_quadratic_root(Qs, NFElement::zero(Qs), NFElement::one(Qs), hs);
    REQUIRE_FALSE(res.reducible);
    CHECK(res.ext->degree() == 4);
    CHECK(res.ext->min_poly() == PolyQ::from_strings({"9", "0", "-2", "0", "1"}));
    // The lift is a homomorphism fixing the base relations.
    auto t_img = res.lift.apply(NFElement::generator(Qs));
    CHECK(eval_poly(Qs->min_poly(), t_img).is_zero());
    CHECK((res.root * res.root + NFElement::one(res.ext)).is_zero());
    std::mt19937 rng(3);
    for (int it = 0; it < 20; ++it) {
      NFElement x = rnd_element(Qs, rng);
      NFElement y = rnd_element(Qs, rng);
      CHECK(res.lift.apply(x * y) == res.lift.apply(x) * res.lift.apply(y));
      CHECK(res.lift.apply(x + y) == res.lift.apply(x) + res.lift.apply(y));
    }
  }
}

TEST_CASE("abs_greater_one") {
  auto Q = NumberField::rationals();
  EmbeddingHandle h{Q, 0};
  auto a = abs_greater_one(NFElement::from_rational(Q, Rat(3) / 2), h);
  REQUIRE(a.has_value());
  CHECK(*a);
  auto b = abs_greater_one(NFElement::from_rational(Q, Rat(1) / 2), h);
  REQUIRE(b.has_value());
  CHECK_FALSE(*b);
  auto c = abs_greater_one(NFElement::one(Q), h);
  CHECK_FALSE(c.has_value());
}

TEST_CASE("irreducibility spot check") {
  CHECK(make_field({"1", "0", "1"})->spot_check_irreducible());
  CHECK(make_field({"-2", "0", "0", "1"})->spot_check_irreducible());
  // X^4 - 2X^2 + 9 has Klein four Galois group: never irreducible mod p, so
  // the spot check stays inconclusive.
  CHECK_FALSE(make_field({"9", "0", "-2", "0", "1"})->spot_check_irreducible());
}
