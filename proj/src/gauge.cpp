#include "branegauge/gauge.hpp"

#include <algorithm>
#include <utility>

#include "branegauge/linalg.hpp"

namespace branegauge {

bool EulerForm::is_zero() const {
  for (const LaurentPoly& c : comps)
    if (!c.is_zero()) return false;
  return true;
}

EulerForm EulerForm::operator+(const EulerForm& other) const {
  EulerForm out(static_cast<int>(comps.size()) - 1);
  for (std::size_t m = 0; m < comps.size(); ++m)
    out.comps[m] = comps[m] + other.comps[m];
  return out;
}

EulerForm EulerForm::operator-(const EulerForm& other) const {
  EulerForm out(static_cast<int>(comps.size()) - 1);
  for (std::size_t m = 0; m < comps.size(); ++m)
    out.comps[m] = comps[m] - other.comps[m];
  return out;
}

namespace {

MultiIndex unit_drop(int n, int l) {
  MultiIndex e(static_cast<std::size_t>(n) + 1, 0);
  e[static_cast<std::size_t>(l)] = -1;
  return e;
}

// k * (x_{l'}^{-1} e_{l'} - x_l^{-1} e_l)
EulerForm pair_form(int n, int l, int lp, const Rational& k) {
  EulerForm f(n);
  if (k != 0) {
    f.comps[static_cast<std::size_t>(lp)] =
        LaurentPoly::monomial(unit_drop(n, lp), k);
    f.comps[static_cast<std::size_t>(l)] =
        LaurentPoly::monomial(unit_drop(n, l), -k);
  }
  return f;
}

LaurentPoly euler_contract(const EulerForm& f) {
  int n = static_cast<int>(f.comps.size()) - 1;
  LaurentPoly total;
  for (int m = 0; m <= n; ++m) {
    MultiIndex up(static_cast<std::size_t>(n) + 1, 0);
    up[static_cast<std::size_t>(m)] = 1;
    total = total + f.comps[static_cast<std::size_t>(m)].shifted(
                        up, make_rational(1, 1));
  }
  return total;
}

EulerForm lookup_alpha(const AtiyahCocycle& ac, int l, int lp, int p, int i) {
  auto it = ac.alpha.find({l, lp});
  if (it != ac.alpha.end()) {
    auto pit = it->second.find(p);
    if (pit != it->second.end()) {
      auto sit = pit->second.find(i);
      if (sit != pit->second.end()) return sit->second;
    }
  }
  return EulerForm(ac.n);
}

EulerForm lookup_beta(const AtiyahCocycle& ac, int l, int p, int j, int i) {
  auto it = ac.beta.find(l);
  if (it != ac.beta.end()) {
    auto pit = it->second.find(p);
    if (pit != it->second.end()) {
      auto eit = pit->second.find({j, i});
      if (eit != pit->second.end()) return eit->second;
    }
  }
  return EulerForm(ac.n);
}

EulerForm poly_times(const HomogeneousPoly& h, const EulerForm& f) {
  EulerForm out(static_cast<int>(f.comps.size()) - 1);
  LaurentPoly hl = LaurentPoly::from(h);
  for (std::size_t m = 0; m < f.comps.size(); ++m)
    out.comps[m] = hl.times(f.comps[m]);
  return out;
}

[[noreturn]] void closure_failure(const std::string& what) {
  throw Error(Error::Kind::Internal,
              "obstruction cochain fails its closure relation: " + what);
}

}  // namespace

AtiyahCocycle atiyah_cocycle(const BraneComplex& g) {
  require_valid(g, "atiyah_cocycle");
  const int n = g.n;
  AtiyahCocycle ac;
  ac.n = n;

  for (int p = g.lo; p <= g.hi(); ++p) {
    const Term& t = g.term(p);
    for (int i = 0; i < t.size(); ++i) {
      int k = t.twists[static_cast<std::size_t>(i)];
      if (k == 0) continue;
      for (int l = 0; l <= n; ++l)
        for (int lp = l + 1; lp <= n; ++lp)
          ac.alpha[{l, lp}][p].emplace(i, pair_form(n, l, lp,
                                                    make_rational(k, 1)));
    }
  }

  for (int p = g.lo; p < g.hi(); ++p) {
    const PolyMatrix* d = g.diff(p);
    if (!d) continue;
    const Term& src = g.term(p);
    const Term& tgt = g.term(p + 1);
    for (const auto& [rc, h] : d->entries) {
      if (h.terms.empty()) continue;
      int j = rc.first, i = rc.second;
      long long a = src.twists[static_cast<std::size_t>(i)] -
                    tgt.twists[static_cast<std::size_t>(j)];
      EulerForm base(n);
      for (int m = 0; m <= n; ++m)
        base.comps[static_cast<std::size_t>(m)] =
            LaurentPoly::from(partial_derivative(h, m));
      for (int l = 0; l <= n; ++l) {
        EulerForm b = base;
        if (a != 0)
          b.comps[static_cast<std::size_t>(l)] =
              b.comps[static_cast<std::size_t>(l)] +
              LaurentPoly::from(h).shifted(unit_drop(n, l),
                                           make_rational(a, 1));
        if (!b.is_zero()) ac.beta[l][p].emplace(std::make_pair(j, i), b);
      }
    }
  }

  // Every stored tuple satisfies the coordinate contraction relation.
  for (const auto& [pair, per_pos] : ac.alpha)
    for (const auto& [p, forms] : per_pos)
      for (const auto& [i, f] : forms)
        if (!euler_contract(f).is_zero()) closure_failure("alpha contraction");
  for (const auto& [l, per_pos] : ac.beta)
    for (const auto& [p, forms] : per_pos)
      for (const auto& [ji, f] : forms)
        if (!euler_contract(f).is_zero()) closure_failure("beta contraction");

  // Chart-triple additivity of alpha.
  for (int p = g.lo; p <= g.hi(); ++p) {
    const Term& t = g.term(p);
    for (int i = 0; i < t.size(); ++i) {
      if (t.twists[static_cast<std::size_t>(i)] == 0) continue;
      for (int l = 0; l <= n; ++l)
        for (int lp = l + 1; lp <= n; ++lp)
          for (int lq = lp + 1; lq <= n; ++lq) {
            EulerForm lhs = lookup_alpha(ac, l, lq, p, i);
            EulerForm rhs = lookup_alpha(ac, l, lp, p, i) +
                            lookup_alpha(ac, lp, lq, p, i);
            if (!(lhs == rhs)) closure_failure("alpha chart additivity");
          }
    }
  }

  // Chart difference of beta reproduces the twist-weighted alpha action on
  // each differential entry.
  for (int p = g.lo; p < g.hi(); ++p) {
    const PolyMatrix* d = g.diff(p);
    if (!d) continue;
    const Term& src = g.term(p);
    const Term& tgt = g.term(p + 1);
    for (const auto& [rc, h] : d->entries) {
      if (h.terms.empty()) continue;
      int j = rc.first, i = rc.second;
      long long a = src.twists[static_cast<std::size_t>(i)] -
                    tgt.twists[static_cast<std::size_t>(j)];
      for (int l = 0; l <= n; ++l)
        for (int lp = l + 1; lp <= n; ++lp) {
          EulerForm lhs =
              lookup_beta(ac, lp, p, j, i) - lookup_beta(ac, l, p, j, i);
          EulerForm rhs = poly_times(h, pair_form(n, l, lp,
                                                  make_rational(a, 1)));
          if (!(lhs == rhs)) closure_failure("beta chart difference");
        }
    }
  }

  // Composing beta with the differential on either side cancels.
  for (int p = g.lo; p <= g.hi() - 2; ++p) {
    const PolyMatrix* d1 = g.diff(p);
    const PolyMatrix* d2 = g.diff(p + 1);
    if (!d1 || !d2) continue;
    const Term& t0 = g.term(p);
    const Term& t2 = g.term(p + 2);
    for (int l = 0; l <= n; ++l) {
      for (int jq = 0; jq < t2.size(); ++jq) {
        for (int i = 0; i < t0.size(); ++i) {
          EulerForm total(n);
          for (int jm = 0; jm < g.term(p + 1).size(); ++jm) {
            if (const HomogeneousPoly* h2 = d2->find(jq, jm))
              total = total + poly_times(*h2, lookup_beta(ac, l, p, jm, i));
            if (const HomogeneousPoly* h1 = d1->find(jm, i))
              total = total + poly_times(*h1, lookup_beta(ac, l, p + 1, jq, jm));
          }
          if (!total.is_zero()) closure_failure("beta differential square");
        }
      }
    }
  }

  return ac;
}

std::vector<Rational> embed_atiyah(const AtiyahCocycle& ac,
                                   const HomComplexData& hom,
                                   const OmegaReplacementData& omega,
                                   const TotalModel& model) {
  const int n = ac.n;
  std::vector<Rational> v(model.basis(1).size(), make_rational(0, 1));
  auto deposit = [&](const CechElement& e, const Rational& coef) {
    auto idx = model.index_of(1, e);
    if (!idx)
      throw Error(Error::Kind::Internal,
                  "obstruction coordinate missing from the covering model: " +
                      to_string(e));
    v[static_cast<std::size_t>(*idx)] += coef;
  };
  for (const auto& [pair, per_pos] : ac.alpha) {
    std::uint32_t chart = (1u << pair.first) | (1u << pair.second);
    for (const auto& [p, forms] : per_pos) {
      for (const auto& [i, f] : forms) {
        for (int m = 0; m <= n; ++m) {
          const LaurentPoly& comp = f.comps[static_cast<std::size_t>(m)];
          if (comp.is_zero()) continue;
          int slot = omega.index_of(p, p, i, 0, {m});
          int summand = hom.index_of(0, p, i, slot);
          for (const auto& [expo, coef] : comp.terms)
            deposit(CechElement{0, summand, chart, expo}, coef);
        }
      }
    }
  }
  for (const auto& [l, per_pos] : ac.beta) {
    std::uint32_t chart = 1u << l;
    for (const auto& [p, forms] : per_pos) {
      for (const auto& [ji, f] : forms) {
        for (int m = 0; m <= n; ++m) {
          const LaurentPoly& comp = f.comps[static_cast<std::size_t>(m)];
          if (comp.is_zero()) continue;
          int slot = omega.index_of(p + 1, p + 1, ji.first, 0, {m});
          int summand = hom.index_of(1, p, ji.second, slot);
          for (const auto& [expo, coef] : comp.terms)
            deposit(CechElement{1, summand, chart, expo}, coef);
        }
      }
    }
  }
  return v;
}

GaugeDecision gauge_exists(const BraneComplex& g, const GaugeOptions& opts) {
  require_valid(g, "gauge_exists");
  BraneComplex gt = g;
  gt.trim();
  GaugeDecision out;

  if (gt.terms.empty()) {
    BraneComplex none;
    none.n = gt.n;
    out.exists = true;
    out.space_dim = 0;
    out.truncation = truncation_bound(gt);
    if (opts.want_witness) out.witness = GaugeWitness{};
    out.audit = assemble_gauge_audit(gt, none, 0, 0);
    return out;
  }

  AtiyahCocycle ac = atiyah_cocycle(gt);
  OmegaReplacementData omega = omega_replacement(gt, 1);
  HomComplexData hom = hom_complex(gt, omega.cx);
  int bound = truncation_bound(hom.cx);
  int truncation = opts.truncation.value_or(bound);
  if (truncation < bound)
    throw Error(Error::Kind::InvalidInput,
                "truncation " + std::to_string(truncation) +
                    " is below the required bound " + std::to_string(bound));
  out.truncation = truncation;

  long long ext0 = 0, ext1 = 0;
  if (ac.is_zero()) {
    TotalOptions topts;
    topts.truncation = truncation;
    topts.degrees = std::make_pair(0, 1);
    auto res = hypercohomology(hom.cx, topts);
    auto dim_at = [&](int k) {
      auto it = res.dims.find(k);
      return it == res.dims.end() ? 0LL : it->second;
    };
    ext0 = dim_at(0);
    ext1 = dim_at(1);
    out.exists = true;
    if (opts.want_witness) out.witness = GaugeWitness{};
  } else {
    TotalModel model(hom.cx, truncation, -1, 2);
    std::vector<Rational> v = embed_atiyah(ac, hom, omega, model);
    if (!model.is_cocycle(1, v))
      throw Error(Error::Kind::Internal,
                  "obstruction cochain is not closed in the covering model");
    auto x = model.solve(0, v, opts.pivot);
    out.exists = x.has_value();
    if (out.exists && opts.want_witness) {
      std::vector<Rational> check = model.matrix(0).apply(*x);
      if (check != v)
        throw Error(Error::Kind::Internal,
                    "witness verification failed after solve");
      GaugeWitness w;
      const auto& basis0 = model.basis(0);
      for (std::size_t c = 0; c < x->size(); ++c)
        if ((*x)[c] != 0) w.correction.emplace_back(basis0[c], (*x)[c]);
      out.witness = std::move(w);
    }
    ext0 = model.dim(0);
    ext1 = model.dim(1);
  }
  out.space_dim = ext0;
  out.audit = assemble_gauge_audit(gt, omega.cx, ext0, ext1);
  out.audit.truncation = out.truncation;
  return out;
}

GaugeWitness canonical_gauge_field(const BraneComplex& g) {
  require_valid(g, "canonical_gauge_field");
  for (int p = g.lo; p <= g.hi(); ++p)
    for (int k : g.term(p).twists)
      if (k != 0)
        throw Error(Error::Kind::InvalidInput,
                    "canonical gauge field needs every summand twist zero");
  for (int p = g.lo; p < g.hi(); ++p) {
    const PolyMatrix* d = g.diff(p);
    if (!d) continue;
    for (const auto& [rc, h] : d->entries)
      for (const auto& [mono, coef] : h.terms)
        for (int e : mono)
          if (e != 0)
            throw Error(Error::Kind::InvalidInput,
                        "canonical gauge field needs constant differentials");
  }
  AtiyahCocycle ac = atiyah_cocycle(g);
  if (!ac.is_zero())
    throw Error(Error::Kind::Internal,
                "obstruction did not vanish on a constant zero-twist complex");
  return GaugeWitness{};
}

std::string to_string(PredictedGauge p) {
  switch (p) {
    case PredictedGauge::Exists: return "exists";
    case PredictedGauge::NotExists: return "not-exists";
    default: return "not-covered";
  }
}

Classification classify_brane(const BraneComplex& g,
                              std::optional<int> truncation) {
  require_valid(g, "classify_brane");
  bool all_zero = true;
  bool in_range = true;
  for (int p = g.lo; p <= g.hi(); ++p) {
    for (int k : g.term(p).twists) {
      if (k != 0) all_zero = false;
      if (k < -g.n || k > 0) in_range = false;
    }
  }
  Classification out;
  out.predicted = all_zero   ? PredictedGauge::Exists
                  : in_range ? PredictedGauge::NotExists
                             : PredictedGauge::NotCovered;
  GaugeOptions gopts;
  gopts.want_witness = false;
  gopts.truncation = truncation;
  GaugeDecision d = gauge_exists(g, gopts);
  out.engine_exists = d.exists;
  out.space_dim = d.space_dim;
  out.truncation = d.truncation;
  if (out.predicted != PredictedGauge::NotCovered)
    out.agree = (out.predicted == PredictedGauge::Exists) == d.exists;
  out.chern = first_chern_by_position(g);
  return out;
}

}  // namespace branegauge
