#include "rum/mobius.hpp"

namespace rum {

LatticeFunction::LatticeFunction(int n) : n_(n) {
  if (n < 1 || n > kMaxAlternatives) {
    throw Error(Errc::TooLarge, "lattice functions need 1 <= n <= 20, got " + std::to_string(n));
  }
  values_.resize((static_cast<std::size_t>(1) << n) * n);
}

Rational LatticeFunction::set_total(Mask set) const {
  Rational total = 0;
  for (Mask m = set; m != 0; m &= m - 1) total += at(std::countr_zero(m), set);
  return total;
}

LatticeFunction to_lattice(const RandomChoiceRule& full) {
  if (!full.is_full_domain()) {
    throw Error(Errc::IncompleteDomain, "rule is not observed on every nonempty menu");
  }
  const int n = full.universe();
  LatticeFunction f(n);
  const auto& domain = full.domain();
  for (int i = 0; i < domain.size(); ++i) {
    Mask set = domain[i].mask();
    for (Mask m = set; m != 0; m &= m - 1) {
      int x = std::countr_zero(m);
      f.at(x, set) = full.prob_at(i, x);
    }
  }
  return f;
}

RandomChoiceRule to_full_rule(const LatticeFunction& f, const AlternativeSet& alts) {
  const int n = f.universe();
  if (alts.size() != n) throw Error(Errc::DimensionMismatch, "alternative count differs from lattice size");
  std::vector<RawObservation> raw;
  raw.reserve(full_mask(n));
  for (Mask set = 1; set <= full_mask(n); ++set) {
    RawObservation obs{Menu(set), {}};
    for (Mask m = set; m != 0; m &= m - 1) {
      int x = std::countr_zero(m);
      obs.probs.emplace_back(x, f.at(x, set));
    }
    raw.push_back(std::move(obs));
  }
  return validate_rcr(alts, raw);
}

namespace {

// Superset sum over one bit at a time. With `sign` = -1 this is the Möbius
// (alternating) transform, with +1 the zeta transform; only entries with
// x ∈ A are touched, and every superset of such an A also contains x.
LatticeFunction superset_transform(const LatticeFunction& in, int sign) {
  LatticeFunction out = in;
  const int n = in.universe();
  const Mask all = full_mask(n);
  for (int b = 0; b < n; ++b) {
    for (Mask set = 1; set <= all; ++set) {
      if (set & bit(b)) continue;
      const Mask parent = set | bit(b);
      for (Mask m = set; m != 0; m &= m - 1) {
        int x = std::countr_zero(m);
        if (sign < 0) {
          out.at(x, set) -= out.at(x, parent);
        } else {
          out.at(x, set) += out.at(x, parent);
        }
      }
    }
  }
  return out;
}

}  // namespace

LatticeFunction mobius_inverse(const LatticeFunction& f) { return superset_transform(f, -1); }

LatticeFunction mobius_inverse(const RandomChoiceRule& full) { return mobius_inverse(to_lattice(full)); }

LatticeFunction accumulate(const LatticeFunction& q) { return superset_transform(q, +1); }

bool is_set_constant(const LatticeFunction& f) {
  const int n = f.universe();
  const Rational reference = f.set_total(full_mask(n));
  for (Mask set = 1; set < full_mask(n); ++set) {
    if (f.set_total(set) != reference) return false;
  }
  return true;
}

namespace {

Rational outflow(const LatticeFunction& q, Mask set) {
  const int n = q.universe();
  Rational total = 0;
  for (int y = 0; y < n; ++y) {
    if (!(set & bit(y))) total += q.at(y, set | bit(y));
  }
  return total;
}

}  // namespace

bool inflow_equals_outflow(const LatticeFunction& q) {
  const Mask all = full_mask(q.universe());
  for (Mask set = 1; set < all; ++set) {
    if (q.set_total(set) != outflow(q, set)) return false;
  }
  return true;
}

QtopVerdict satisfies_qtop(const LatticeFunction& q) {
  const int n = q.universe();
  const Mask all = full_mask(n);

  if (q.set_total(all) != 1) return {false, 2, all, -1};

  for (Mask set = 1; set < all; ++set) {
    if (q.set_total(set) != outflow(q, set)) return {false, 1, set, -1};
  }

  const LatticeFunction p = accumulate(q);
  for (Mask set = 1; set <= all; ++set) {
    for (Mask m = set; m != 0; m &= m - 1) {
      int x = std::countr_zero(m);
      if (p.at(x, set) < 0) return {false, 3, set, x};
    }
  }
  return {};
}

}  // namespace rum
