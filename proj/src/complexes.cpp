#include "branegauge/complexes.hpp"

#include <algorithm>
#include <sstream>

namespace branegauge {

namespace {

const Term kEmptyTerm{};

std::string degree_name(const HomogeneousPoly& p) {
  return p.degree ? std::to_string(*p.degree) : "any";
}

}  // namespace

void PolyMatrix::set(int r, int c, const HomogeneousPoly& p) {
  if (p.is_zero())
    entries.erase({r, c});
  else
    entries[{r, c}] = p;
}

void PolyMatrix::add(int r, int c, const HomogeneousPoly& p) {
  if (p.is_zero()) return;
  auto it = entries.find({r, c});
  if (it == entries.end()) {
    entries.emplace(std::make_pair(r, c), p);
  } else {
    HomogeneousPoly s = it->second + p;
    if (s.is_zero())
      entries.erase(it);
    else
      it->second = std::move(s);
  }
}

const HomogeneousPoly* PolyMatrix::find(int r, int c) const {
  auto it = entries.find({r, c});
  return it == entries.end() ? nullptr : &it->second;
}

PolyMatrix PolyMatrix::times(const PolyMatrix& other) const {
  if (cols != other.rows)
    throw Error(Error::Kind::InvalidInput, "polynomial matrix shape mismatch");
  PolyMatrix out = zero(rows, other.cols);
  for (const auto& [rc, p] : entries)
    for (const auto& [rc2, q] : other.entries) {
      if (rc.second != rc2.first) continue;
      out.add(rc.first, rc2.second, p * q);
    }
  return out;
}

PolyMatrix PolyMatrix::scaled(const Rational& c) const {
  PolyMatrix out = zero(rows, cols);
  if (c == 0) return out;
  for (const auto& [rc, p] : entries) out.entries[rc] = p.scaled(c);
  return out;
}

const Term& BraneComplex::term(int p) const {
  int i = p - lo;
  if (i < 0 || i >= static_cast<int>(terms.size())) return kEmptyTerm;
  return terms[i];
}

const PolyMatrix* BraneComplex::diff(int p) const {
  int i = p - lo;
  if (i < 0 || i >= static_cast<int>(diffs.size())) return nullptr;
  return &diffs[i];
}

void BraneComplex::trim() {
  while (!terms.empty() && terms.back().empty()) {
    terms.pop_back();
    if (!diffs.empty()) diffs.pop_back();
  }
  while (!terms.empty() && terms.front().empty()) {
    terms.erase(terms.begin());
    if (!diffs.empty()) diffs.erase(diffs.begin());
    ++lo;
  }
  if (terms.empty()) {
    lo = 0;
    diffs.clear();
  }
}

bool BraneComplex::operator==(const BraneComplex& other) const {
  BraneComplex a = *this;
  BraneComplex b = other;
  a.trim();
  b.trim();
  return a.n == b.n && a.lo == b.lo && a.terms == b.terms && a.diffs == b.diffs;
}

BraneComplex line_bundle(int n, int k, int position) {
  BraneComplex c;
  c.n = n;
  c.lo = position;
  c.terms.push_back(Term{{k}});
  std::ostringstream os;
  os << "O(" << k << ")";
  if (position != 0) os << "[" << -position << "]";
  c.label = os.str();
  return c;
}

ValidationReport validate(const BraneComplex& c) {
  ValidationReport report;
  if (c.n < 1) report.shape.push_back("projective dimension n must be >= 1");
  int expected_diffs =
      c.terms.empty() ? 0 : static_cast<int>(c.terms.size()) - 1;
  if (static_cast<int>(c.diffs.size()) != expected_diffs)
    report.shape.push_back("expected " + std::to_string(expected_diffs) +
                           " differentials, found " +
                           std::to_string(c.diffs.size()));
  for (int i = 0; i < static_cast<int>(c.diffs.size()) &&
                  i + 1 < static_cast<int>(c.terms.size());
       ++i) {
    const PolyMatrix& d = c.diffs[i];
    if (d.rows != c.terms[i + 1].size() || d.cols != c.terms[i].size())
      report.shape.push_back("differential at position " +
                             std::to_string(c.lo + i) + " has shape " +
                             std::to_string(d.rows) + "x" +
                             std::to_string(d.cols) + ", expected " +
                             std::to_string(c.terms[i + 1].size()) + "x" +
                             std::to_string(c.terms[i].size()));
  }
  if (!report.shape.empty()) return report;

  for (int i = 0; i + 1 < static_cast<int>(c.terms.size()); ++i) {
    for (const auto& [rc, p] : c.diffs[i].entries) {
      auto [r, col] = rc;
      int want = c.terms[i + 1].twists[r] - c.terms[i].twists[col];
      if (p.is_zero()) continue;
      bool bad_degree = *p.degree != want;
      bool bad_vars = p.vars() != c.n + 1;
      if (bad_degree || bad_vars) {
        report.homogeneity.push_back(
            {c.lo + i, r, col,
             bad_vars ? "entry uses a different variable count"
                      : "entry degree " + degree_name(p) + ", expected " +
                            std::to_string(want)});
      }
    }
  }
  if (!report.homogeneity.empty()) return report;

  for (int i = 0; i + 2 < static_cast<int>(c.terms.size()); ++i) {
    PolyMatrix sq = c.diffs[i + 1].times(c.diffs[i]);
    for (const auto& [rc, p] : sq.entries)
      report.square.push_back({c.lo + i, rc.first, rc.second,
                               "composite entry " + to_string(p)});
  }

  for (const Term& t : c.terms)
    for (int k : t.twists)
      if (k < -c.n || k > 0) report.twists_in_range = false;
  return report;
}

void require_valid(const BraneComplex& c, const std::string& who) {
  ValidationReport r = validate(c);
  if (r.valid()) return;
  std::string msg = who + ": invalid complex";
  if (!r.shape.empty()) msg += " (" + r.shape.front() + ")";
  else if (!r.homogeneity.empty())
    msg += " (" + r.homogeneity.front().message + ")";
  else if (!r.square.empty())
    msg += " (d.d nonzero: " + r.square.front().message + ")";
  throw Error(Error::Kind::InvalidInput, msg);
}

BraneComplex shift(const BraneComplex& c, int l) {
  BraneComplex out = c;
  out.lo = c.lo - l;
  if (l % 2 != 0)
    for (PolyMatrix& d : out.diffs) d = d.scaled(-1);
  return out;
}

BraneComplex twist_complex(const BraneComplex& c, int k) {
  BraneComplex out = c;
  for (Term& t : out.terms)
    for (int& w : t.twists) w += k;
  return out;
}

BraneComplex direct_sum(const BraneComplex& a, const BraneComplex& b) {
  if (a.n != b.n)
    throw Error(Error::Kind::InvalidInput,
                "direct sum of complexes over different P^n");
  if (a.empty_complex()) return b;
  if (b.empty_complex()) return a;
  BraneComplex out;
  out.n = a.n;
  out.lo = std::min(a.lo, b.lo);
  int hi = std::max(a.hi(), b.hi());
  for (int p = out.lo; p <= hi; ++p) {
    Term t = a.term(p);
    const Term& tb = b.term(p);
    t.twists.insert(t.twists.end(), tb.twists.begin(), tb.twists.end());
    out.terms.push_back(std::move(t));
  }
  for (int p = out.lo; p < hi; ++p) {
    PolyMatrix d = PolyMatrix::zero(out.term(p + 1).size(), out.term(p).size());
    int row_off = a.term(p + 1).size();
    int col_off = a.term(p).size();
    if (const PolyMatrix* da = a.diff(p))
      for (const auto& [rc, q] : da->entries) d.set(rc.first, rc.second, q);
    if (const PolyMatrix* db = b.diff(p))
      for (const auto& [rc, q] : db->entries)
        d.set(rc.first + row_off, rc.second + col_off, q);
    out.diffs.push_back(std::move(d));
  }
  out.trim();
  return out;
}

const PolyMatrix* ChainMap::block(int p) const {
  auto it = blocks.find(p);
  return it == blocks.end() ? nullptr : &it->second;
}

bool chain_map_commutes(const ChainMap& h, std::string* why) {
  auto explain = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (h.source.n != h.target.n) return explain("variable count mismatch");
  for (const auto& [p, blk] : h.blocks) {
    if (blk.rows != h.target.term(p).size() ||
        blk.cols != h.source.term(p).size())
      return explain("block shape mismatch at position " + std::to_string(p));
    for (const auto& [rc, q] : blk.entries) {
      int want = h.target.term(p).twists[rc.first] -
                 h.source.term(p).twists[rc.second];
      if (!q.is_zero() && *q.degree != want)
        return explain("block entry degree mismatch at position " +
                       std::to_string(p));
    }
  }
  int lo = std::min(h.source.lo, h.target.lo);
  int hi = std::max(h.source.hi(), h.target.hi());
  for (int p = lo; p < hi; ++p) {
    PolyMatrix left = PolyMatrix::zero(h.target.term(p + 1).size(),
                                       h.source.term(p).size());
    if (const PolyMatrix* dt = h.target.diff(p))
      if (const PolyMatrix* hp = h.block(p)) left = dt->times(*hp);
    PolyMatrix right = left;
    right.entries.clear();
    if (const PolyMatrix* hp1 = h.block(p + 1))
      if (const PolyMatrix* ds = h.source.diff(p)) right = hp1->times(*ds);
    if (!(left == right))
      return explain("chain condition fails at position " + std::to_string(p));
  }
  return true;
}

BraneComplex cone(const ChainMap& h) {
  std::string why;
  if (!chain_map_commutes(h, &why))
    throw Error(Error::Kind::InvalidInput, "cone of a non-chain map: " + why);
  const BraneComplex& a = h.source;
  const BraneComplex& b = h.target;
  BraneComplex out;
  out.n = a.n;
  out.lo = std::min(a.lo - 1, b.lo);
  int hi = std::max(a.hi() - 1, b.hi());
  for (int p = out.lo; p <= hi; ++p) {
    Term t;
    const Term& ta = a.term(p + 1);
    const Term& tb = b.term(p);
    t.twists = ta.twists;
    t.twists.insert(t.twists.end(), tb.twists.begin(), tb.twists.end());
    out.terms.push_back(std::move(t));
  }
  for (int p = out.lo; p < hi; ++p) {
    int rows = out.term(p + 1).size();
    int cols = out.term(p).size();
    PolyMatrix d = PolyMatrix::zero(rows, cols);
    int row_off = a.term(p + 2).size();
    int col_off = a.term(p + 1).size();
    if (const PolyMatrix* da = a.diff(p + 1))
      for (const auto& [rc, q] : da->entries)
        d.set(rc.first, rc.second, q.negated());
    if (const PolyMatrix* hp = h.block(p + 1))
      for (const auto& [rc, q] : hp->entries)
        d.set(rc.first + row_off, rc.second, q);
    if (const PolyMatrix* db = b.diff(p))
      for (const auto& [rc, q] : db->entries)
        d.set(rc.first + row_off, rc.second + col_off, q);
    out.diffs.push_back(std::move(d));
  }
  out.trim();
  return out;
}

int HomComplexData::index_of(int m, int p, int src, int tgt) const {
  auto it = summands.find(m);
  if (it == summands.end())
    throw Error(Error::Kind::Internal, "hom summand lookup: empty position");
  const std::vector<HomSummand>& v = it->second;
  auto pos = std::lower_bound(
      v.begin(), v.end(), std::tuple(p, src, tgt),
      [](const HomSummand& s, const std::tuple<int, int, int>& key) {
        return std::tuple(s.p, s.src, s.tgt) < key;
      });
  if (pos == v.end() || pos->p != p || pos->src != src || pos->tgt != tgt)
    throw Error(Error::Kind::Internal, "hom summand lookup failed");
  return static_cast<int>(pos - v.begin());
}

HomComplexData hom_complex(const BraneComplex& a, const BraneComplex& b) {
  if (a.n != b.n)
    throw Error(Error::Kind::InvalidInput,
                "hom complex of complexes over different P^n");
  HomComplexData out;
  out.cx.n = a.n;
  if (a.empty_complex() || b.empty_complex()) return out;

  int m_lo = b.lo - a.hi();
  int m_hi = b.hi() - a.lo;
  out.cx.lo = m_lo;
  for (int m = m_lo; m <= m_hi; ++m) {
    Term t;
    std::vector<HomSummand> sums;
    for (int p = a.lo; p <= a.hi(); ++p) {
      const Term& ap = a.term(p);
      const Term& bq = b.term(p + m);
      for (int i = 0; i < ap.size(); ++i)
        for (int j = 0; j < bq.size(); ++j) {
          t.twists.push_back(bq.twists[j] - ap.twists[i]);
          sums.push_back({p, i, j});
        }
    }
    out.cx.terms.push_back(std::move(t));
    out.summands[m] = std::move(sums);
  }

  for (int m = m_lo; m < m_hi; ++m) {
    const std::vector<HomSummand>& src = out.summands[m];
    const std::vector<HomSummand>& dst = out.summands[m + 1];
    PolyMatrix d = PolyMatrix::zero(static_cast<int>(dst.size()),
                                    static_cast<int>(src.size()));
    Rational pre_sign = (m + 1) % 2 == 0 ? 1 : -1;
    for (int col = 0; col < static_cast<int>(src.size()); ++col) {
      const HomSummand& s = src[col];
      // Post-composition with the target differential at b-position p + m.
      if (const PolyMatrix* db = b.diff(s.p + m)) {
        for (const auto& [rc, q] : db->entries) {
          if (rc.second != s.tgt) continue;
          int row = out.index_of(m + 1, s.p, s.src, rc.first);
          d.add(row, col, q);
        }
      }
      // Pre-composition with the source differential into position p - 1.
      if (const PolyMatrix* da = a.diff(s.p - 1)) {
        for (const auto& [rc, q] : da->entries) {
          if (rc.first != s.src) continue;
          int row = out.index_of(m + 1, s.p - 1, rc.second, s.tgt);
          d.add(row, col, q.scaled(pre_sign));
        }
      }
    }
    out.cx.diffs.push_back(std::move(d));
  }
  // Positions at the ends can be empty (no overlapping terms); trim keeps the
  // summand map keys aligned because lookups go through it->first.
  out.cx.trim();
  return out;
}

int OmegaReplacementData::index_of(int m, int t, int src, int level,
                                   const std::vector<int>& subset) const {
  auto it = summands.find(m);
  if (it == summands.end())
    throw Error(Error::Kind::Internal, "omega summand lookup: empty position");
  const std::vector<OmegaSummand>& v = it->second;
  for (int i = 0; i < static_cast<int>(v.size()); ++i)
    if (v[i].t == t && v[i].src == src && v[i].level == level &&
        v[i].subset == subset)
      return i;
  throw Error(Error::Kind::Internal, "omega summand lookup failed");
}

OmegaReplacementData omega_replacement(const BraneComplex& c, int p) {
  if (p < 0 || p > c.n)
    throw Error(Error::Kind::InvalidInput,
                "form degree must lie in [0, n]");
  OmegaReplacementData out;
  out.form_degree = p;
  out.cx.n = c.n;
  if (c.empty_complex()) return out;

  int lo = c.lo;
  int hi = c.hi() + p;
  out.cx.lo = lo;
  for (int m = lo; m <= hi; ++m) {
    Term term;
    std::vector<OmegaSummand> sums;
    for (int t = c.lo; t <= c.hi(); ++t) {
      int j = m - t;
      if (j < 0 || j > p) continue;
      const Term& ct = c.term(t);
      std::vector<std::vector<int>> subs = subsets_of_size(c.n, p - j);
      for (int i = 0; i < ct.size(); ++i)
        for (const std::vector<int>& S : subs) {
          term.twists.push_back(ct.twists[i] - (p - j));
          sums.push_back({t, i, j, S});
        }
    }
    out.cx.terms.push_back(std::move(term));
    out.summands[m] = std::move(sums);
  }

  for (int m = lo; m < hi; ++m) {
    const std::vector<OmegaSummand>& src = out.summands[m];
    const std::vector<OmegaSummand>& dst = out.summands[m + 1];
    PolyMatrix d = PolyMatrix::zero(static_cast<int>(dst.size()),
                                    static_cast<int>(src.size()));
    for (int col = 0; col < static_cast<int>(src.size()); ++col) {
      const OmegaSummand& s = src[col];
      // Contraction against the coordinates: level j -> j + 1, slot S drops
      // one element with the alternating sign of its place in S.
      if (s.level < p) {
        for (int r = 0; r < static_cast<int>(s.subset.size()); ++r) {
          std::vector<int> smaller = s.subset;
          int var = smaller[r];
          smaller.erase(smaller.begin() + r);
          int row = out.index_of(m + 1, s.t, s.src, s.level + 1, smaller);
          MultiIndex mono(c.n + 1, 0);
          mono[var] = 1;
          Rational sign = r % 2 == 0 ? 1 : -1;
          d.add(row, col, HomogeneousPoly::monomial(mono, sign));
        }
      }
      // Original differential at fixed level, with sign (-1)^level.
      if (const PolyMatrix* dc = c.diff(s.t)) {
        Rational sign = s.level % 2 == 0 ? 1 : -1;
        for (const auto& [rc, q] : dc->entries) {
          if (rc.second != s.src) continue;
          int row = out.index_of(m + 1, s.t + 1, rc.first, s.level, s.subset);
          d.add(row, col, q.scaled(sign));
        }
      }
    }
    out.cx.diffs.push_back(std::move(d));
  }
  return out;
}

std::vector<BraneComplex> exceptional_generators(int n) {
  std::vector<BraneComplex> out;
  for (int k = -n; k <= 0; ++k) out.push_back(line_bundle(n, k));
  return out;
}

std::string describe(const BraneComplex& c) {
  if (!c.label.empty()) return c.label;
  std::string out = "P" + std::to_string(c.n) + " @" + std::to_string(c.lo) + ": ";
  if (c.terms.empty()) return out + "0";
  for (std::size_t t = 0; t < c.terms.size(); ++t) {
    if (t) out += " -> ";
    const Term& term = c.terms[t];
    if (term.empty()) {
      out += "0";
      continue;
    }
    for (std::size_t s = 0; s < term.twists.size(); ++s) {
      if (s) out += "+";
      out += "O(" + std::to_string(term.twists[s]) + ")";
    }
  }
  return out;
}

long long first_chern(const Term& t) {
  long long sum = 0;
  for (int k : t.twists) sum += k;
  return sum;
}

std::map<int, long long> first_chern_by_position(const BraneComplex& c) {
  std::map<int, long long> out;
  for (int p = c.lo; p <= c.hi(); ++p) {
    const Term& t = c.term(p);
    if (t.empty()) continue;
    out[p] = first_chern(t);
  }
  return out;
}

namespace {

HomogeneousPoly random_entry(int n, int degree, SeededRng& rng) {
  std::vector<MultiIndex> basis = monomial_basis(n, degree);
  if (basis.empty()) return HomogeneousPoly::zero();
  static const int kCoefs[] = {-2, -1, 1, 2};
  int count = rng.uniform(1, 2);
  HomogeneousPoly out;
  for (int i = 0; i < count; ++i) {
    const MultiIndex& mi = basis[rng.uniform(0, static_cast<int>(basis.size()) - 1)];
    Rational coef = kCoefs[rng.uniform(0, 3)];
    out = out + HomogeneousPoly::monomial(mi, coef);
  }
  return out;
}

}  // namespace

ChainMap random_chain_map(const BraneComplex& a, const BraneComplex& b,
                          SeededRng& rng) {
  for (int attempt = 0; attempt < 8; ++attempt) {
    ChainMap h{a, b, {}};
    int lo = std::max(a.lo, b.lo);
    int hi = std::min(a.hi(), b.hi());
    for (int p = lo; p <= hi; ++p) {
      const Term& sp = a.term(p);
      const Term& tp = b.term(p);
      if (sp.empty() || tp.empty()) continue;
      PolyMatrix blk = PolyMatrix::zero(tp.size(), sp.size());
      for (int r = 0; r < tp.size(); ++r)
        for (int col = 0; col < sp.size(); ++col) {
          int deg = tp.twists[r] - sp.twists[col];
          if (deg < 0) continue;
          if (rng.uniform(0, 99) < 55)
            blk.set(r, col, random_entry(a.n, deg, rng));
        }
      if (!blk.is_zero()) h.blocks[p] = std::move(blk);
    }
    if (chain_map_commutes(h)) return h;
  }
  return ChainMap{a, b, {}};
}

BraneComplex random_brane(int n, int depth, std::uint64_t seed) {
  if (n < 1) throw Error(Error::Kind::InvalidInput, "need n >= 1");
  if (depth < 0) throw Error(Error::Kind::InvalidInput, "depth must be >= 0");
  SeededRng rng(seed);
  std::vector<BraneComplex> pool = exceptional_generators(n);
  if (depth == 0) {
    BraneComplex g = pool[rng.uniform(0, n)];
    return shift(g, rng.uniform(-1, 1));
  }
  for (int stage = 0; stage < depth; ++stage) {
    BraneComplex a0 = pool[rng.uniform(0, static_cast<int>(pool.size()) - 1)];
    BraneComplex b0 = pool[rng.uniform(0, static_cast<int>(pool.size()) - 1)];
    BraneComplex a = shift(a0, rng.uniform(-1, 1));
    BraneComplex b = shift(b0, rng.uniform(-1, 1));
    ChainMap h = random_chain_map(a, b, rng);
    pool.push_back(cone(h));
  }
  BraneComplex out = pool.back();
  std::ostringstream os;
  os << "random(n=" << n << ",depth=" << depth << ",seed=" << seed << ")";
  out.label = os.str();
  return out;
}

}  // namespace branegauge
