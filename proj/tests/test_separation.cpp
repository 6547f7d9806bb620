#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "sep/separation.hpp"

using namespace csep;

namespace {

FieldPtr make_field(std::initializer_list<std::string> cs) {
  std::vector<Rat> v;
  for (const auto& s : cs) v.push_back(rat_from_string(s));
  return NumberField::create("t", PolyQ(std::move(v)));
}

NFElement qel(long n) { return NFElement::from_rational(NumberField::rationals(), Rat(n)); }

TrackedRing qring() { return TrackedRing{NumberField::rationals(), {}, {}}; }

// Exhaustive power-set check that x lies outside <y> under every map jointly.
bool outside_cyclic_joint(const NFElement& lam, const NFElement& omega,
                          const std::vector<ResidueMapPtr>& maps) {
  std::vector<FFElem> lam_i, om_i;
  for (const auto& m : maps) {
    lam_i.push_back(reduce(m, lam));
    om_i.push_back(reduce(m, omega));
  }
  Int joint_order(1);
  for (size_t i = 0; i < maps.size(); ++i) {
    Int o = mult_order(om_i[i]);
    Int g;
    mpz_gcd(g.get_mpz_t(), joint_order.get_mpz_t(), o.get_mpz_t());
    joint_order = joint_order / g * o;
  }
  REQUIRE(joint_order < 100000);
  std::vector<FFElem> cur;
  for (size_t i = 0; i < maps.size(); ++i) cur.push_back(FFElem::one(maps[i]));
  for (Int j(0); j < joint_order; j += 1) {
    bool all = true;
    for (size_t i = 0; i < maps.size(); ++i)
      if (!(cur[i] == lam_i[i])) all = false;
    if (all) return false;
    for (size_t i = 0; i < maps.size(); ++i) cur[i] = cur[i] * om_i[i];
  }
  return true;
}

}  // namespace

TEST_CASE("find_order_prime anchors") {
  SearchBudget budget;
  SUBCASE("delta=2 m=3 exact gives p=7") {
    auto out = find_order_prime(qel(2), Int(3), qring(), OrderMode::exact, budget);
    auto* hit = std::get_if<OrderPrimeResult>(&out);
    REQUIRE(hit);
    CHECK(hit->map->p == 7);
    CHECK(hit->achieved_order == 3);
  }
  SUBCASE("delta=2 m=4 exact gives p=5") {
    auto out = find_order_prime(qel(2), Int(4), qring(), OrderMode::exact, budget);
    auto* hit = std::get_if<OrderPrimeResult>(&out);
    REQUIRE(hit);
    CHECK(hit->map->p == 5);
  }
  SUBCASE("delta=2 m=1 exhausts") {
    SearchBudget small = budget;
    small.max_prime = 2000;
    auto out = find_order_prime(qel(2), Int(1), qring(), OrderMode::exact, small);
    CHECK(std::holds_alternative<BudgetExhausted>(out));
  }
  SUBCASE("divisible_by mode") {
    auto out = find_order_prime(qel(2), Int(2), qring(), OrderMode::divisible_by, budget);
    auto* hit = std::get_if<OrderPrimeResult>(&out);
    REQUIRE(hit);
    CHECK(hit->map->p == 3);
    CHECK(hit->achieved_order == 2);
  }
  SUBCASE("root of unity rejected") {
    auto out = find_order_prime(qel(-1), Int(3), qring(), OrderMode::exact, budget);
    auto* r = std::get_if<RootOfUnity>(&out);
    REQUIRE(r);
    CHECK(r->order == 2);
  }
  SUBCASE("unit constraints respected") {
    TrackedRing r = qring();
    r.add_unit(qel(3));
    auto out = find_order_prime(qel(2), Int(2), r, OrderMode::divisible_by, budget);
    auto* hit = std::get_if<OrderPrimeResult>(&out);
    REQUIRE(hit);
    CHECK(hit->map->p == 5);
  }
  SUBCASE("order verified by independent recomputation") {
    for (long m = 2; m <= 5; ++m) {
      auto out = find_order_prime(qel(2), Int(m), qring(), OrderMode::exact, SearchBudget{});
      auto* hit = std::get_if<OrderPrimeResult>(&out);
      REQUIRE(hit);
      FFElem im = reduce(hit->map, qel(2));
      FFElem cur = im;
      long steps = 1;
      while (!(cur == FFElem::one(hit->map))) {
        cur = cur * im;
        ++steps;
      }
      CHECK(steps == m);
    }
  }
}

TEST_CASE("separate_power anchors") {
  SearchBudget budget;
  SUBCASE("(2,4) single prime 3") {
    auto out = separate_power(qel(2), qel(4), qring(), budget);
    auto* sep = std::get_if<PowerSeparation>(&out);
    REQUIRE(sep);
    REQUIRE(sep->maps.size() == 1);
    CHECK(sep->maps[0]->p == 3);
    CHECK(outside_cyclic_joint(qel(2), qel(4), sep->maps));
  }
  SUBCASE("(3,2) prime 7") {
    auto out = separate_power(qel(3), qel(2), qring(), budget);
    auto* sep = std::get_if<PowerSeparation>(&out);
    REQUIRE(sep);
    REQUIRE(sep->maps.size() == 1);
    CHECK(sep->maps[0]->p == 7);
    CHECK(outside_cyclic_joint(qel(3), qel(2), sep->maps));
  }
  SUBCASE("(8,2) not separable with witness 3") {
    auto out = separate_power(qel(8), qel(2), qring(), budget);
    auto* ns = std::get_if<NotSeparable>(&out);
    REQUIRE(ns);
    CHECK(ns->exponent == 3);
  }
  SUBCASE("never separates an exact power") {
    std::mt19937 rng(41);
    for (int it = 0; it < 20; ++it) {
      long m = static_cast<long>(rng() % 21) - 10;
      NFElement omega = qel(2 + static_cast<long>(rng() % 3));
      NFElement lam = omega.pow(Int(m));
      auto out = separate_power(lam, omega, qring(), budget);
      auto* ns = std::get_if<NotSeparable>(&out);
      REQUIRE(ns);
      CHECK(ns->exponent == m);
    }
  }
  SUBCASE("root of unity base with member and non-member") {
    auto out = separate_power(qel(-1), qel(-1), qring(), budget);
    CHECK(std::holds_alternative<NotSeparable>(out));
    auto out2 = separate_power(qel(2), qel(-1), qring(), budget);
    auto* sep = std::get_if<PowerSeparation>(&out2);
    REQUIRE(sep);
    CHECK(outside_cyclic_joint(qel(2), qel(-1), sep->maps));
  }
}

TEST_CASE("separate_additive anchors") {
  SearchBudget budget;
  SUBCASE("cube root instance: joint factors at 5") {
    auto K = make_field({"-2", "0", "0", "1"});
    auto beta = NFElement::generator(K);
    TrackedRing ring{K, {}, {}};
    auto out = separate_additive(beta * beta, beta, ring, budget);
    auto* sep = std::get_if<AdditiveSeparation>(&out);
    REQUIRE(sep);
    CHECK(sep->p == 5);
    CHECK(sep->maps.size() == 2);
    // Exhaustive span scan agrees.
    bool any = false;
    for (uint64_t c0 = 0; c0 < 5 && !any; ++c0)
      for (uint64_t c1 = 0; c1 < 5 && !any; ++c1) {
        bool all = true;
        for (const auto& m : sep->maps) {
          FFElem lhs = FFElem::from_int(m, c0) + FFElem::from_int(m, c1) * reduce(m, beta);
          if (!(lhs == reduce(m, beta * beta))) all = false;
        }
        any = all;
      }
    CHECK_FALSE(any);
  }
  SUBCASE("eighth root of unity instance: single factor at 5") {
    auto K = make_field({"1", "0", "0", "0", "1"});
    auto t = NFElement::generator(K);
    auto beta = t * t;
    TrackedRing ring{K, {}, {}};
    auto out = separate_additive(t, beta, ring, budget);
    auto* sep = std::get_if<AdditiveSeparation>(&out);
    REQUIRE(sep);
    CHECK(sep->p == 5);
    REQUIRE(sep->maps.size() == 1);
    CHECK(sep->maps[0]->factor == PolyFp(5, {2, 0, 1}));
    CHECK_FALSE(span_member(t, {NFElement::one(K), beta}, sep->maps).has_value());
  }
  SUBCASE("membership") {
    auto K = make_field({"1", "0", "1"});
    auto i = NFElement::generator(K);
    TrackedRing ring{K, {}, {}};
    auto out = separate_additive(i + Rat(1), i, ring, budget);
    auto* mem = std::get_if<AdditiveMembership>(&out);
    REQUIRE(mem);
    CHECK(mem->m == 1);
    CHECK(mem->n == 1);
  }
  SUBCASE("rational span is out of scope") {
    auto K = make_field({"1", "0", "1"});
    auto i = NFElement::generator(K);
    TrackedRing ring{K, {}, {}};
    auto out = separate_additive(i * (Rat(1) / 2), i, ring, budget);
    CHECK(std::holds_alternative<AdditiveNotApplicable>(out));
  }
}

TEST_CASE("corpus searches complete within the default budget") {
  SearchBudget budget;
  budget.max_prime = 10000;
  for (long m = 2; m <= 5; ++m) {
    auto out = find_order_prime(qel(2), Int(m), qring(), OrderMode::exact, budget);
    CHECK(std::holds_alternative<OrderPrimeResult>(out));
  }
  auto K = make_field({"1", "0", "1"});
  auto i = NFElement::generator(K);
  TrackedRing ring{K, {}, {}};
  auto out = separate_additive(i + Rat(1) / 3, i, ring, budget);
  // 1/3 + i is not in Q + Q*i? It is: coordinates (1/3, 1).  NotApplicable.
  CHECK(std::holds_alternative<AdditiveNotApplicable>(out));
}
