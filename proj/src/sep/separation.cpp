#include "sep/separation.hpp"

namespace csep {

std::optional<Int> root_of_unity_order(const NFElement& x) {
  if (x.is_zero()) return std::nullopt;
  long n = x.field()->degree();
  long bound = 2 * n * n + 2;
  NFElement cur = x;
  for (long j = 1; j <= bound; ++j) {
    if (cur == NFElement::one(x.field())) return Int(j);
    cur = cur * x;
  }
  return std::nullopt;
}

std::optional<EmbeddingHandle> embedding_with_nonunit_modulus(const NFElement& x,
                                                              const SearchBudget& budget) {
  for (int idx = 0; idx < x.field()->degree(); ++idx) {
    EmbeddingHandle h{x.field(), idx};
    auto decided = abs_greater_one(x, h, budget.precision_bits);
    if (decided.has_value()) return h;
  }
  return std::nullopt;
}

std::optional<OrderPrimeResult> order_prime_at(const NFElement& delta, const Int& m, uint64_t p,
                                               OrderMode mode) {
  for (const auto& map : residue_split(delta.field(), p)) {
    FFElem image = reduce(map, delta);
    if (image.is_zero()) continue;
    Int order = mult_order(image);
    bool hit = mode == OrderMode::exact ? order == m
                                        : mpz_divisible_p(order.get_mpz_t(), m.get_mpz_t());
    if (hit) return OrderPrimeResult{map, order, mode};
  }
  return std::nullopt;
}

OrderPrimeOutcome find_order_prime(const NFElement& delta, const Int& m, const TrackedRing& ring,
                                   OrderMode mode, const SearchBudget& budget, TraceFn trace) {
  if (delta.is_zero()) throw Error(Errc::invalid_input, "order search needs a nonzero element");
  if (m < 1) throw Error(Errc::invalid_input, "order target must be positive");
  if (auto ord = root_of_unity_order(delta)) return RootOfUnity{*ord};
  TrackedRing r = ring;
  r.add_unit(delta);
  GoodPrimeStream stream({r}, budget.max_prime, trace);
  while (auto p = stream.next()) {
    if (auto hit = order_prime_at(delta, m, *p, mode)) {
      if (trace) trace("order hit at p=" + std::to_string(*p));
      return *hit;
    }
    if (trace) trace("no factor with the required order at p=" + std::to_string(*p));
  }
  return BudgetExhausted{"no prime below " + std::to_string(budget.max_prime) +
                         " gives order " + m.get_str() +
                         (mode == OrderMode::exact ? "" : " (divisibility)")};
}

PowerOutcome separate_power(const NFElement& lam, const NFElement& omega, const TrackedRing& ring,
                            const SearchBudget& budget, TraceFn trace) {
  if (lam.is_zero() || omega.is_zero())
    throw Error(Errc::invalid_input, "power separation needs nonzero elements");
  // Exact power pre-check.
  if (auto unit_order = root_of_unity_order(omega)) {
    NFElement cur = NFElement::one(omega.field());
    for (Int j(0); j < *unit_order; ++j) {
      if (lam == cur) return NotSeparable{j};
      cur = cur * omega;
    }
  } else if (auto h = embedding_with_nonunit_modulus(omega, budget)) {
    if (auto hit = recover_exponent(lam, omega, *h, false, budget.max_exponent,
                                    budget.precision_bits))
      return NotSeparable{hit->m};
  }
  TrackedRing r = ring;
  r.add_unit(lam);
  r.add_unit(omega);
  GoodPrimeStream stream({r}, budget.max_prime, trace);
  std::vector<ResidueMapPtr> seen;
  int pairs_tried = 0;
  auto try_pairs_with_last = [&](size_t last) -> std::optional<PowerSeparation> {
    const auto& mk = seen[last];
    FFElem lam_k = reduce(mk, lam), om_k = reduce(mk, omega);
    if (mult_order(om_k) > Int(static_cast<unsigned long>(budget.enum_cap))) return std::nullopt;
    auto dk = discrete_log(lam_k, om_k);
    if (!dk) return std::nullopt;  // the single-map test would have caught it
    Int ok = mult_order(om_k);
    for (size_t i = 0; i < last; ++i) {
      if (pairs_tried >= budget.max_prime_pairs) return std::nullopt;
      const auto& mi = seen[i];
      FFElem lam_i = reduce(mi, lam), om_i = reduce(mi, omega);
      if (mult_order(om_i) > Int(static_cast<unsigned long>(budget.enum_cap))) continue;
      auto di = discrete_log(lam_i, om_i);
      if (!di) continue;
      ++pairs_tried;
      Int oi = mult_order(om_i);
      Int g;
      mpz_gcd(g.get_mpz_t(), oi.get_mpz_t(), ok.get_mpz_t());
      if ((*di - *dk) % g != 0) {
        if (trace)
          trace("pair separation at p=" + std::to_string(mi->p) + "," + std::to_string(mk->p));
        return PowerSeparation{{mi, mk}};
      }
    }
    return std::nullopt;
  };
  while (auto p = stream.next()) {
    for (const auto& map : residue_split(ring.K, *p)) {
      FFElem li = reduce(map, lam), oi = reduce(map, omega);
      if (li.is_zero() || oi.is_zero()) continue;
      if (!in_cyclic(li, oi)) {
        if (trace) trace("single-prime separation at p=" + std::to_string(*p));
        return PowerSeparation{{map}};
      }
      seen.push_back(map);
      if (auto pair = try_pairs_with_last(seen.size() - 1)) return *pair;
    }
    if (pairs_tried >= budget.max_prime_pairs) break;
  }
  return BudgetExhausted{"power separation exhausted (max_prime=" +
                         std::to_string(budget.max_prime) +
                         ", pairs=" + std::to_string(pairs_tried) + ")"};
}

AdditiveOutcome separate_additive(const NFElement& b, const NFElement& beta,
                                  const TrackedRing& ring, const SearchBudget& budget,
                                  TraceFn trace) {
  const FieldPtr& K = b.field();
  if (beta.is_rational())
    throw Error(Errc::invalid_input, "lattice basis element must be irrational");
  // b in Q + Q*beta is outside this operation's scope; integer coordinates
  // are plain membership.
  if (auto coords = solve_q_linear({NFElement::one(K), beta}, b)) {
    if (is_integer((*coords)[0]) && is_integer((*coords)[1]))
      return AdditiveMembership{rat_num((*coords)[0]), rat_num((*coords)[1])};
    return AdditiveNotApplicable{};
  }
  // Branch on b in Q(beta): inside, the all-factor product system carries the
  // separation; outside, a single factor does.
  PolyQ beta_min = min_poly_of(beta);
  std::vector<NFElement> beta_powers;
  NFElement cur = NFElement::one(K);
  for (int i = 0; i < beta_min.degree(); ++i) {
    beta_powers.push_back(cur);
    cur = cur * beta;
  }
  bool b_in_q_beta = solve_q_linear(beta_powers, b).has_value();
  TrackedRing r = ring;
  r.add_generator(b);
  r.add_generator(beta);
  GoodPrimeStream stream({r}, budget.max_prime, trace);
  std::vector<NFElement> basis{NFElement::one(K), beta};
  while (auto p = stream.next()) {
    auto maps = residue_split(K, *p);
    if (!b_in_q_beta) {
      for (const auto& m : maps) {
        if (!span_member(b, basis, {m})) {
          if (trace) trace("single-factor additive separation at p=" + std::to_string(*p));
          return AdditiveSeparation{*p, {m}};
        }
      }
    } else {
      if (!span_member(b, basis, maps)) {
        if (trace) trace("joint additive separation at p=" + std::to_string(*p));
        return AdditiveSeparation{*p, maps};
      }
    }
  }
  return BudgetExhausted{"additive separation exhausted (max_prime=" +
                         std::to_string(budget.max_prime) + ")"};
}

}  // namespace csep
