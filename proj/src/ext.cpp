#include "branegauge/ext.hpp"

#include <algorithm>
#include <map>
#include <tuple>
#include <utility>

#include "branegauge/linalg.hpp"
#include "branegauge/poly.hpp"

namespace branegauge {

long long ext_dim(const BraneComplex& a, const BraneComplex& b, int i) {
  HomComplexData hom = hom_complex(a, b);
  TotalOptions opts;
  opts.degrees = std::make_pair(i, i);
  auto res = hypercohomology(hom.cx, opts);
  auto it = res.dims.find(i);
  return it == res.dims.end() ? 0 : it->second;
}

std::map<int, long long> ext_dims(const BraneComplex& a, const BraneComplex& b) {
  HomComplexData hom = hom_complex(a, b);
  auto res = hypercohomology(hom.cx, {});
  return res.dims;
}

DerivedHomResult hom_derived(const BraneComplex& a, const BraneComplex& b) {
  HomComplexData hom = hom_complex(a, b);
  TotalOptions opts;
  opts.degrees = std::make_pair(0, 0);
  opts.representatives = true;
  auto res = hypercohomology(hom.cx, opts);
  DerivedHomResult out;
  auto it = res.dims.find(0);
  out.dim = it == res.dims.end() ? 0 : it->second;
  auto rit = res.representatives.find(0);
  if (rit != res.representatives.end()) out.representatives = rit->second;
  return out;
}

namespace {

// Basis element of the global-sections morphism space at one level: a
// monomial block from summand `src` of a at position p to summand `tgt` of b
// at position p + level.
struct SectionElem {
  int p = 0;
  int src = 0;
  int tgt = 0;
  MultiIndex mono;
};

using SectionKey = std::tuple<int, int, int, MultiIndex>;

struct SectionLevel {
  std::vector<SectionElem> elems;
  std::map<SectionKey, int> index;
};

SectionLevel section_basis(const BraneComplex& a, const BraneComplex& b,
                           int level) {
  SectionLevel out;
  for (int p = a.lo; p <= a.hi(); ++p) {
    const Term& ta = a.term(p);
    const Term& tb = b.term(p + level);
    if (ta.empty() || tb.empty()) continue;
    for (int src = 0; src < ta.size(); ++src) {
      for (int tgt = 0; tgt < tb.size(); ++tgt) {
        int d = tb.twists[tgt] - ta.twists[src];
        if (d < 0) continue;
        for (const MultiIndex& mono : monomial_basis(a.n, d)) {
          out.index.emplace(SectionKey{p, src, tgt, mono},
                            static_cast<int>(out.elems.size()));
          out.elems.push_back(SectionElem{p, src, tgt, mono});
        }
      }
    }
  }
  return out;
}

MultiIndex add_expo(const MultiIndex& x, const MultiIndex& y) {
  MultiIndex out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] + y[i];
  return out;
}

QMatrix section_matrix(const BraneComplex& a, const BraneComplex& b, int level,
                       const SectionLevel& src_basis,
                       const SectionLevel& dst_basis) {
  QMatrix m(static_cast<long long>(dst_basis.elems.size()),
            static_cast<long long>(src_basis.elems.size()));
  Rational pre_sign = make_rational((level + 1) % 2 == 0 ? 1 : -1, 1);
  for (std::size_t col = 0; col < src_basis.elems.size(); ++col) {
    const SectionElem& e = src_basis.elems[col];
    if (const PolyMatrix* db = b.diff(e.p + level)) {
      for (const auto& [rc, poly] : db->entries) {
        if (rc.second != e.tgt) continue;
        for (const auto& [mono, coef] : poly.terms) {
          auto it = dst_basis.index.find(
              SectionKey{e.p, e.src, rc.first, add_expo(e.mono, mono)});
          if (it == dst_basis.index.end()) throw Error(Error::Kind::Internal,
              "global-sections target element missing (compose with target differential)");
          m.add(it->second, static_cast<long long>(col), coef);
        }
      }
    }
    if (e.p - 1 >= a.lo) {
      if (const PolyMatrix* da = a.diff(e.p - 1)) {
        for (const auto& [rc, poly] : da->entries) {
          if (rc.first != e.src) continue;
          for (const auto& [mono, coef] : poly.terms) {
            auto it = dst_basis.index.find(
                SectionKey{e.p - 1, rc.second, e.tgt, add_expo(e.mono, mono)});
            if (it == dst_basis.index.end()) throw Error(Error::Kind::Internal,
                "global-sections target element missing (compose with source differential)");
            m.add(it->second, static_cast<long long>(col), coef * pre_sign);
          }
        }
      }
    }
  }
  return m;
}

}  // namespace

long long naive_hom(const BraneComplex& a, const BraneComplex& b, int i) {
  require_valid(a, "naive_hom source");
  require_valid(b, "naive_hom target");
  if (a.n != b.n)
    throw Error(Error::Kind::InvalidInput,
                "naive_hom: complexes live over different projective spaces");
  SectionLevel below = section_basis(a, b, i - 1);
  SectionLevel mid = section_basis(a, b, i);
  SectionLevel above = section_basis(a, b, i + 1);
  QMatrix d_in = section_matrix(a, b, i - 1, below, mid);
  QMatrix d_out = section_matrix(a, b, i, mid, above);
  return cohomology_dim(d_out, d_in);
}

ExtAuditReport assemble_gauge_audit(const BraneComplex& g,
                                    const BraneComplex& omega_g, long long ext0,
                                    long long ext1) {
  ExtAuditReport out;
  out.source = describe(g);
  out.target = "one-forms (x) [" + out.source + "]";
  out.ext[0] = ext0;
  out.ext[1] = ext1;
  out.naive_hom0 = naive_hom(g, omega_g, 0);
  out.discrepancy = out.naive_hom0 != ext0;
  std::map<int, long long> pair_count;
  for (int p = g.lo; p <= g.hi(); ++p) {
    const Term& t = g.term(p);
    for (int src = 0; src < t.size(); ++src)
      for (int tgt = 0; tgt < t.size(); ++tgt)
        pair_count[t.twists[tgt] - t.twists[src]] += 1;
  }
  for (const auto& [d, count] : pair_count) {
    TwistLine line;
    line.difference = d;
    line.pairs = count;
    line.sections = bott_dim(g.n, 1, d, 0);
    out.twist_lines.push_back(line);
  }
  return out;
}

ExtAuditReport gauge_hom_audit(const BraneComplex& g,
                               std::optional<int> truncation) {
  require_valid(g, "gauge_hom_audit");
  OmegaReplacementData omega = omega_replacement(g, 1);
  HomComplexData hom = hom_complex(g, omega.cx);
  TotalOptions opts;
  opts.truncation = truncation;
  opts.degrees = std::make_pair(0, 1);
  auto res = hypercohomology(hom.cx, opts);
  auto dim_at = [&](int k) {
    auto it = res.dims.find(k);
    return it == res.dims.end() ? 0LL : it->second;
  };
  ExtAuditReport out = assemble_gauge_audit(g, omega.cx, dim_at(0), dim_at(1));
  out.truncation = res.truncation;
  return out;
}

}  // namespace branegauge
