#include "residue/residue.hpp"

#include <algorithm>
#include <map>

#include "algebra/primes.hpp"

namespace csep {

Int ResidueMap::card() const {
  return pow_int(Int(static_cast<unsigned long>(p)), static_cast<unsigned long>(dim()));
}

FFElem::FFElem(std::shared_ptr<const ResidueMap> map, std::vector<uint64_t> coeffs)
    : map_(std::move(map)), c_(std::move(coeffs)) {
  if (!map_) throw Error(Errc::invalid_input, "residue element without a map");
  uint64_t p = map_->p;
  c_.resize(static_cast<size_t>(map_->dim()), 0);
  for (auto& x : c_) x %= p;
}

FFElem FFElem::zero(const ResidueMapPtr& m) { return FFElem(m, {}); }

FFElem FFElem::one(const ResidueMapPtr& m) { return from_int(m, 1); }

FFElem FFElem::from_int(const ResidueMapPtr& m, uint64_t v) {
  std::vector<uint64_t> c(static_cast<size_t>(m->dim()), 0);
  c[0] = v % m->p;
  return FFElem(m, std::move(c));
}

bool FFElem::is_zero() const {
  for (auto x : c_)
    if (x) return false;
  return true;
}

bool FFElem::in_prime_field() const {
  for (size_t i = 1; i < c_.size(); ++i)
    if (c_[i]) return false;
  return true;
}

PolyFp FFElem::as_poly() const { return PolyFp(map_->p, c_); }

FFElem FFElem::operator+(const FFElem& o) const {
  if (!map_->same_target(*o.map_)) throw Error(Errc::field_mismatch, "mixed residue fields");
  std::vector<uint64_t> c(c_.size());
  for (size_t i = 0; i < c.size(); ++i) c[i] = add_mod(c_[i], o.c_[i], map_->p);
  return FFElem(map_, std::move(c));
}

FFElem FFElem::operator-(const FFElem& o) const {
  if (!map_->same_target(*o.map_)) throw Error(Errc::field_mismatch, "mixed residue fields");
  std::vector<uint64_t> c(c_.size());
  for (size_t i = 0; i < c.size(); ++i) c[i] = sub_mod(c_[i], o.c_[i], map_->p);
  return FFElem(map_, std::move(c));
}

FFElem FFElem::operator*(const FFElem& o) const {
  if (!map_->same_target(*o.map_)) throw Error(Errc::field_mismatch, "mixed residue fields");
  PolyFp prod = PolyFp::rem(as_poly() * o.as_poly(), map_->factor);
  std::vector<uint64_t> c = prod.coeffs();
  return FFElem(map_, std::move(c));
}

FFElem FFElem::inverse() const {
  if (is_zero()) throw Error(Errc::division_by_zero, "inverse of zero residue");
  // Extended Euclid against the defining factor.
  PolyFp r0 = map_->factor, r1 = as_poly();
  uint64_t p = map_->p;
  PolyFp t0 = PolyFp::zero(p), t1 = PolyFp::one(p);
  while (!r1.is_zero()) {
    PolyFp q, r;
    PolyFp::divrem(r0, r1, q, r);
    PolyFp t = t0 - q * t1;
    r0 = r1;
    r1 = r;
    t0 = t1;
    t1 = t;
  }
  if (r0.degree() != 0) throw Error(Errc::internal, "reducible residue modulus");
  uint64_t inv = inv_mod(r0.coeff(0), p);
  PolyFp res = t0 * PolyFp::constant(p, inv);
  return FFElem(map_, PolyFp::rem(res, map_->factor).coeffs());
}

FFElem FFElem::pow(const Int& e) const {
  if (e < 0) return inverse().pow(-e);
  FFElem acc = one(map_), base = *this;
  Int n = e;
  while (n > 0) {
    if (mpz_odd_p(n.get_mpz_t())) acc = acc * base;
    base = base * base;
    n >>= 1;
  }
  return acc;
}

bool FFElem::operator==(const FFElem& o) const {
  return map_->same_target(*o.map_) && c_ == o.c_;
}

bool is_unramified(const FieldPtr& K, uint64_t p) {
  Int dn = rat_num(K->disc());
  Int dd = rat_den(K->disc());
  if (mpz_divisible_ui_p(dn.get_mpz_t(), p) || mpz_divisible_ui_p(dd.get_mpz_t(), p)) return false;
  return poly_q_mod_p(K->min_poly(), p).has_value();
}

std::vector<ResidueMapPtr> residue_split(const FieldPtr& K, uint64_t p) {
  if (!is_unramified(K, p))
    throw Error(Errc::ramified_prime, "prime divides the discriminant or a denominator");
  auto fp = poly_q_mod_p(K->min_poly(), p);
  std::vector<ResidueMapPtr> out;
  for (const auto& [g, e] : factor_mod_p(*fp)) {
    if (e != 1) throw Error(Errc::ramified_prime, "repeated factor at an unramified prime");
    out.push_back(std::make_shared<ResidueMap>(ResidueMap{K, p, g}));
  }
  return out;
}

FFElem reduce(const ResidueMapPtr& m, const NFElement& x) {
  if (!x.field()->same_presentation(*m->K))
    throw Error(Errc::field_mismatch, "element of a different field");
  auto rep = poly_q_mod_p(x.rep(), m->p);
  if (!rep) throw Error(Errc::not_p_integral, "p divides a coefficient denominator");
  return FFElem(m, PolyFp::rem(*rep, m->factor).coeffs());
}

Int mult_order(const FFElem& x) {
  if (x.is_zero()) throw Error(Errc::invalid_input, "multiplicative order of zero");
  Int group = x.map()->card() - 1;
  Int order = group;
  for (const auto& [q, e] : factorize(group)) {
    (void)e;
    while (mpz_divisible_p(order.get_mpz_t(), q.get_mpz_t())) {
      Int trial = order / q;
      if (x.pow(trial) == FFElem::one(x.map()))
        order = trial;
      else
        break;
    }
  }
  return order;
}

bool in_cyclic(const FFElem& x, const FFElem& y) {
  if (x.is_zero() || y.is_zero()) throw Error(Errc::invalid_input, "cyclic test needs units");
  // F* is cyclic: a unique subgroup per divisor, so containment is order
  // divisibility.
  Int ox = mult_order(x);
  Int oy = mult_order(y);
  return mpz_divisible_p(oy.get_mpz_t(), ox.get_mpz_t());
}

std::optional<Int> discrete_log(const FFElem& x, const FFElem& base) {
  Int order = mult_order(base);
  if (!in_cyclic(x, base)) return std::nullopt;
  Int m;
  mpz_sqrt(m.get_mpz_t(), order.get_mpz_t());
  m += 1;
  uint64_t steps = to_u64(m);
  std::map<std::vector<uint64_t>, uint64_t> table;
  FFElem cur = FFElem::one(x.map());
  for (uint64_t j = 0; j < steps; ++j) {
    table.emplace(cur.coeffs(), j);
    cur = cur * base;
  }
  FFElem giant = base.pow(Int(static_cast<unsigned long>(steps))).inverse();
  FFElem probe = x;
  for (uint64_t i = 0; i < steps + 1; ++i) {
    auto it = table.find(probe.coeffs());
    if (it != table.end()) {
      Int res = Int(static_cast<unsigned long>(i)) * static_cast<unsigned long>(steps) +
                static_cast<unsigned long>(it->second);
      return res % order;
    }
    probe = probe * giant;
  }
  return std::nullopt;
}

std::optional<std::vector<uint64_t>> span_member(const NFElement& x,
                                                 const std::vector<NFElement>& basis,
                                                 const std::vector<ResidueMapPtr>& maps) {
  if (maps.empty()) throw Error(Errc::invalid_input, "span test needs at least one map");
  uint64_t p = maps[0]->p;
  for (const auto& m : maps)
    if (m->p != p) throw Error(Errc::invalid_input, "span maps must share the prime");
  const size_t k = basis.size();
  // Rows: one F_p equation per coordinate of each residue field.
  std::vector<std::vector<uint64_t>> rows;
  for (const auto& m : maps) {
    std::vector<FFElem> cols;
    cols.reserve(k);
    for (const auto& b : basis) cols.push_back(reduce(m, b));
    FFElem rhs = reduce(m, x);
    for (int coord = 0; coord < m->dim(); ++coord) {
      std::vector<uint64_t> row(k + 1, 0);
      for (size_t j = 0; j < k; ++j) row[j] = cols[j].coeffs()[static_cast<size_t>(coord)];
      row[k] = rhs.coeffs()[static_cast<size_t>(coord)];
      rows.push_back(std::move(row));
    }
  }
  const size_t nrows = rows.size();
  size_t rank = 0;
  std::vector<size_t> pivot_col;
  for (size_t col = 0; col < k && rank < nrows; ++col) {
    size_t piv = nrows;
    for (size_t r = rank; r < nrows; ++r)
      if (rows[r][col]) {
        piv = r;
        break;
      }
    if (piv == nrows) continue;
    std::swap(rows[piv], rows[rank]);
    uint64_t inv = inv_mod(rows[rank][col], p);
    for (size_t c2 = col; c2 <= k; ++c2) rows[rank][c2] = mul_mod(rows[rank][c2], inv, p);
    for (size_t r = 0; r < nrows; ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      uint64_t f = rows[r][col];
      for (size_t c2 = col; c2 <= k; ++c2)
        rows[r][c2] = sub_mod(rows[r][c2], mul_mod(f, rows[rank][c2], p), p);
    }
    pivot_col.push_back(col);
    ++rank;
  }
  for (size_t r = rank; r < nrows; ++r)
    if (rows[r][k]) return std::nullopt;
  std::vector<uint64_t> sol(k, 0);
  for (size_t i = 0; i < rank; ++i) sol[pivot_col[i]] = rows[i][k];
  return sol;
}

GoodPrimeStream::GoodPrimeStream(std::vector<TrackedRing> rings, uint64_t max_prime, TraceFn trace)
    : rings_(std::move(rings)), max_prime_(max_prime), trace_(std::move(trace)) {}

bool GoodPrimeStream::good(uint64_t p) const { return is_good_prime(rings_, p); }

std::optional<uint64_t> GoodPrimeStream::next() {
  uint64_t p = current_;
  while (true) {
    p = next_prime_u64(p);
    if (p > max_prime_) return std::nullopt;
    if (good(p)) {
      current_ = p;
      return p;
    }
    if (trace_) trace_("skip p=" + std::to_string(p));
  }
}

bool is_good_prime(const std::vector<TrackedRing>& rings, uint64_t p) {
  for (const auto& ring : rings) {
    if (!is_unramified(ring.K, p)) return false;
    for (const auto& g : ring.generators)
      if (!g.is_p_integral(p)) return false;
    if (!ring.must_be_unit.empty()) {
      auto maps = residue_split(ring.K, p);
      for (const auto& u : ring.must_be_unit) {
        if (!u.is_p_integral(p)) return false;
        for (const auto& m : maps)
          if (reduce(m, u).is_zero()) return false;
      }
    }
  }
  return true;
}

ResidueMapPtr restrict_map(const ResidueMapPtr& m_ext, const FieldHom& lift) {
  if (lift.is_identity()) return m_ext;
  const FieldPtr& K = lift.from;
  if (!lift.to->same_presentation(*m_ext->K))
    throw Error(Errc::field_mismatch, "map does not belong to the extension");
  // Image of K's generator, then its minimal polynomial over F_p: the factor
  // of K's defining polynomial below the extension map.
  FFElem t_img = reduce(m_ext, lift.gen_image);
  uint64_t p = m_ext->p;
  int d_ext = m_ext->dim();
  // First linear dependence among powers of t_img over F_p.
  std::vector<std::vector<uint64_t>> pows;
  FFElem cur = FFElem::one(m_ext);
  for (int j = 0; j <= d_ext; ++j) {
    pows.push_back(cur.coeffs());
    if (j >= 1) {
      // Solve sum a_i t^i = t^j.
      std::vector<std::vector<uint64_t>> m(static_cast<size_t>(d_ext),
                                           std::vector<uint64_t>(static_cast<size_t>(j) + 1, 0));
      for (int col = 0; col < j; ++col)
        for (int row = 0; row < d_ext; ++row)
          m[static_cast<size_t>(row)][static_cast<size_t>(col)] =
              pows[static_cast<size_t>(col)][static_cast<size_t>(row)];
      for (int row = 0; row < d_ext; ++row)
        m[static_cast<size_t>(row)][static_cast<size_t>(j)] =
            pows[static_cast<size_t>(j)][static_cast<size_t>(row)];
      size_t rank = 0;
      std::vector<int> pivot_col;
      size_t nrows = static_cast<size_t>(d_ext);
      for (int col = 0; col < j && rank < nrows; ++col) {
        size_t piv = nrows;
        for (size_t r = rank; r < nrows; ++r)
          if (m[r][static_cast<size_t>(col)]) {
            piv = r;
            break;
          }
        if (piv == nrows) continue;
        std::swap(m[piv], m[rank]);
        uint64_t inv = inv_mod(m[rank][static_cast<size_t>(col)], p);
        for (int c2 = col; c2 <= j; ++c2)
          m[rank][static_cast<size_t>(c2)] = mul_mod(m[rank][static_cast<size_t>(c2)], inv, p);
        for (size_t r = 0; r < nrows; ++r) {
          if (r == rank || m[r][static_cast<size_t>(col)] == 0) continue;
          uint64_t f = m[r][static_cast<size_t>(col)];
          for (int c2 = col; c2 <= j; ++c2)
            m[r][static_cast<size_t>(c2)] =
                sub_mod(m[r][static_cast<size_t>(c2)], mul_mod(f, m[rank][static_cast<size_t>(c2)], p), p);
        }
        pivot_col.push_back(col);
        ++rank;
      }
      bool consistent = true;
      for (size_t r = rank; r < nrows; ++r)
        if (m[r][static_cast<size_t>(j)]) consistent = false;
      if (consistent) {
        std::vector<uint64_t> coeffs(static_cast<size_t>(j) + 1, 0);
        coeffs[static_cast<size_t>(j)] = 1;
        for (size_t i = 0; i < rank; ++i)
          coeffs[static_cast<size_t>(pivot_col[i])] =
              sub_mod(0, m[i][static_cast<size_t>(j)], p);
        PolyFp below(p, std::move(coeffs));
        auto fk = poly_q_mod_p(K->min_poly(), p);
        if (!fk || !PolyFp::rem(*fk, below).is_zero())
          throw Error(Errc::internal, "restricted factor does not divide the base polynomial");
        return std::make_shared<ResidueMap>(ResidueMap{K, p, below});
      }
    }
    cur = cur * t_img;
  }
  throw Error(Errc::internal, "no minimal polynomial for the restricted generator");
}

}  // namespace csep
