#include "branegauge/cech.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <unordered_set>

namespace branegauge {

namespace {

int popcount(std::uint32_t m) { return std::popcount(m); }

// FNV-1a over the fields of a basis element.
struct ElemHash {
  size_t operator()(const CechElement& e) const {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](std::uint64_t v) {
      h ^= v;
      h *= 1099511628211ull;
    };
    mix(static_cast<std::uint64_t>(e.pos) + 0x9e3779b9u);
    mix(static_cast<std::uint64_t>(e.summand));
    mix(e.chart);
    for (int x : e.expo) mix(static_cast<std::uint64_t>(x) + 0x12345u);
    return static_cast<size_t>(h);
  }
};

// Laurent exponents for one summand on one chart set: a_i >= -M on chart
// coordinates, a_i >= 0 elsewhere, sum = twist. Descending lexicographic.
std::vector<MultiIndex> laurent_exponents(int n, int twist,
                                          std::uint32_t chart, int M) {
  std::vector<MultiIndex> out;
  int D = twist + M * popcount(chart);
  if (D < 0) return out;
  out = monomial_basis(n, D);
  for (MultiIndex& b : out)
    for (int i = 0; i <= n; ++i)
      if (chart & (1u << i)) b[i] -= M;
  return out;
}

std::uint32_t neg_mask(const MultiIndex& a) {
  std::uint32_t m = 0;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] < 0) m |= 1u << i;
  return m;
}

// Sign of adjoining chart l to the set encoded by mask: (-1)^(number of
// chart indices below l already present).
int insertion_sign(std::uint32_t mask, int l) {
  return popcount(mask & ((1u << l) - 1)) % 2 == 0 ? 1 : -1;
}

struct MonomialEntry {
  int row;
  int col;
  MultiIndex expo;
  long long coef;
};

// A complex qualifies for the multidegree-blocked route when every
// differential entry is a single monomial with a small integer coefficient.
std::optional<std::vector<std::vector<MonomialEntry>>> monomial_shape(
    const BraneComplex& c) {
  std::vector<std::vector<MonomialEntry>> out(c.diffs.size());
  for (size_t i = 0; i < c.diffs.size(); ++i) {
    for (const auto& [rc, p] : c.diffs[i].entries) {
      if (p.terms.size() != 1) return std::nullopt;
      const auto& [mi, coef] = *p.terms.begin();
      if (coef.get_den() != 1) return std::nullopt;
      mpz_class num = coef.get_num();
      if (!num.fits_slong_p()) return std::nullopt;
      long long v = num.get_si();
      if (v > (1ll << 30) || v < -(1ll << 30)) return std::nullopt;
      out[i].push_back({rc.first, rc.second, mi, v});
    }
  }
  return out;
}

// Fraction-free elimination rank of a small dense integer matrix; nullopt
// when an intermediate would overflow 64-bit storage.
std::optional<int> bareiss_rank(std::vector<std::vector<long long>> a) {
  const long long kLimit = (1ll << 62);
  int rows = static_cast<int>(a.size());
  int cols = rows == 0 ? 0 : static_cast<int>(a[0].size());
  long long prev = 1;
  int r = 0;
  for (; r < std::min(rows, cols); ++r) {
    int pi = -1, pj = -1;
    for (int j = r; j < cols && pi < 0; ++j)
      for (int i = r; i < rows; ++i)
        if (a[i][j] != 0) {
          pi = i;
          pj = j;
          break;
        }
    if (pi < 0) break;
    std::swap(a[pi], a[r]);
    if (pj != r)
      for (int i = 0; i < rows; ++i) std::swap(a[i][pj], a[i][r]);
    for (int i = r + 1; i < rows; ++i) {
      for (int j = r + 1; j < cols; ++j) {
        __int128 v = static_cast<__int128>(a[i][j]) * a[r][r] -
                     static_cast<__int128>(a[i][r]) * a[r][j];
        v /= prev;  // exact by the fraction-free identity
        if (v > kLimit || v < -kLimit) return std::nullopt;
        a[i][j] = static_cast<long long>(v);
      }
      a[i][r] = 0;
    }
    prev = a[r][r];
  }
  // Count remaining nonzero rows beyond r? Elimination above already drove
  // them to zero in the first r columns; any leftover nonzero row would have
  // offered a pivot, so r is the rank.
  return r;
}

struct Triplet {
  int row;
  int col;
  long long val;
};

int triplet_rank(const std::vector<Triplet>& ts, int rows, int cols) {
  if (rows == 0 || cols == 0) return 0;
  std::vector<std::vector<long long>> dense(
      rows, std::vector<long long>(cols, 0));
  for (const Triplet& t : ts) dense[t.row][t.col] += t.val;
  if (auto r = bareiss_rank(dense)) return *r;
  QMatrix m(rows, cols);
  for (const Triplet& t : ts) m.add(t.row, t.col, make_rational(t.val));
  return rank(m);
}

struct VecHash {
  size_t operator()(const MultiIndex& v) const {
    std::uint64_t h = 1469598103934665603ull;
    for (int x : v) {
      h ^= static_cast<std::uint64_t>(x) + 0x9e3779b97f4a7c15ull;
      h *= 1099511628211ull;
    }
    return static_cast<size_t>(h);
  }
};

}  // namespace

std::string to_string(const CechElement& e) {
  std::ostringstream os;
  os << "(pos " << e.pos << ", summand " << e.summand << ", charts {";
  bool first = true;
  for (int i = 0; i < 32; ++i)
    if (e.chart & (1u << i)) {
      if (!first) os << ",";
      os << i;
      first = false;
    }
  os << "}, x^(";
  for (size_t i = 0; i < e.expo.size(); ++i) {
    if (i) os << ",";
    os << e.expo[i];
  }
  os << "))";
  return os.str();
}

QMatrix multiply_matrix(const HomogeneousPoly& p,
                        const std::vector<LaurentTerm>& src,
                        const std::vector<LaurentTerm>& tgt, int truncation) {
  QMatrix m(static_cast<long long>(tgt.size()),
            static_cast<long long>(src.size()));
  for (std::size_t col = 0; col < src.size(); ++col) {
    const LaurentTerm& e = src[col];
    for (const auto& [mono, coef] : p.terms) {
      if (mono.size() != e.expo.size())
        throw Error(Error::Kind::InvalidInput,
                    "multiply_matrix: variable count mismatch");
      LaurentTerm prod{e.chart, e.expo};
      for (std::size_t i = 0; i < mono.size(); ++i) prod.expo[i] += mono[i];
      bool below_cutoff = false;
      for (std::size_t i = 0; i < prod.expo.size(); ++i)
        if ((e.chart & (1u << i)) && prod.expo[i] < -truncation) {
          below_cutoff = true;
          break;
        }
      if (below_cutoff) continue;
      auto it = std::find(tgt.begin(), tgt.end(), prod);
      if (it == tgt.end())
        throw Error(Error::Kind::InvalidInput,
                    "multiply_matrix: product escapes the target span "
                    "(truncation closure violated)");
      m.add(static_cast<long long>(it - tgt.begin()),
            static_cast<long long>(col), coef);
    }
  }
  return m;
}

int truncation_bound(const BraneComplex& c) {
  int max_abs = 0;
  for (const Term& t : c.terms)
    for (int k : t.twists) max_abs = std::max(max_abs, std::abs(k));
  return c.n + 2 + max_abs;
}

long long line_bundle_cohomology(int n, int m, int q) {
  if (n < 1 || q < 0)
    throw Error(Error::Kind::InvalidInput, "need n >= 1 and q >= 0");
  if (q == 0) return m >= 0 ? binomial(m + n, n) : 0;
  if (q == n) return m <= -n - 1 ? binomial(-m - 1, n) : 0;
  return 0;
}

long long bott_dim(int n, int p, int k, int q) {
  if (n < 1 || p < 0 || p > n || q < 0 || q > n)
    throw Error(Error::Kind::InvalidInput,
                "bott_dim needs n >= 1 and 0 <= p, q <= n");
  if (q == 0 && k > p) return binomial(k + n - p, k) * binomial(k - 1, p);
  if (q == p && k == 0) return 1;
  if (q == n && k < p - n)
    return binomial(-k + p, -k) * binomial(-k - 1, n - p);
  return 0;
}

// ---------------------------------------------------------------------------
// TotalModel
// ---------------------------------------------------------------------------

struct TotalModel::ComponentData {
  int n_comps = 0;
  // Per window degree: component id and intra-component index per node.
  std::vector<std::vector<int>> comp_of;
  std::vector<std::vector<int>> local_of;
  // Per component, per window degree: node count.
  std::vector<std::vector<int>> comp_sizes;
  // Cached rank of D_k per window degree (summed over components).
  std::vector<std::optional<long long>> rank_cache;
  // Cached per-component rank tables used by solve/representatives.
  std::vector<std::vector<int>> comp_rank;  // [k][comp], -1 = not computed
};

TotalModel::TotalModel(const BraneComplex& c, int truncation, int k_lo,
                       int k_hi)
    : n_(c.n), truncation_(truncation) {
  if (!c.empty_complex()) {
    support_lo_ = c.lo;
    support_hi_ = c.hi() + c.n;
  } else {
    support_lo_ = 0;
    support_hi_ = -1;
  }
  k_lo_ = std::max(k_lo, support_lo_);
  k_hi_ = std::min(k_hi, support_hi_);
  if (k_hi_ < k_lo_) {
    k_lo_ = 0;
    k_hi_ = -1;
    return;
  }
  if (truncation_ < truncation_bound(c))
    throw Error(Error::Kind::InvalidInput,
                "truncation below the stable bound " +
                    std::to_string(truncation_bound(c)));

  int width = k_hi_ - k_lo_ + 1;
  bases_.resize(width);
  std::vector<std::unordered_map<CechElement, int, ElemHash>> index(width);

  std::vector<std::vector<std::vector<int>>> charts_by_size(c.n + 2);
  for (int s = 1; s <= c.n + 1; ++s)
    charts_by_size[s] = subsets_of_size(c.n, s);

  for (int k = k_lo_; k <= k_hi_; ++k) {
    std::vector<CechElement>& basis = bases_[k - k_lo_];
    for (int t = c.lo; t <= c.hi(); ++t) {
      int q = k - t;
      if (q < 0 || q > c.n) continue;
      const Term& term = c.term(t);
      for (int s = 0; s < term.size(); ++s) {
        for (const std::vector<int>& chart : charts_by_size[q + 1]) {
          std::uint32_t mask = 0;
          for (int i : chart) mask |= 1u << i;
          for (MultiIndex& a :
               laurent_exponents(c.n, term.twists[s], mask, truncation_)) {
            basis.push_back({t, s, mask, std::move(a)});
          }
        }
      }
    }
    auto& idx = index[k - k_lo_];
    idx.reserve(basis.size() * 2);
    for (int i = 0; i < static_cast<int>(basis.size()); ++i)
      idx.emplace(basis[i], i);
  }

  mats_.resize(std::max(0, width - 1));
  for (int k = k_lo_; k < k_hi_; ++k) {
    const std::vector<CechElement>& src = bases_[k - k_lo_];
    const auto& dst_index = index[k + 1 - k_lo_];
    QMatrix d(static_cast<int>(bases_[k + 1 - k_lo_].size()),
              static_cast<int>(src.size()));
    for (int ci = 0; ci < static_cast<int>(src.size()); ++ci) {
      const CechElement& e = src[ci];
      int q = popcount(e.chart) - 1;
      // Chart-inclusion part.
      if (q + 1 <= c.n) {
        for (int l = 0; l <= c.n; ++l) {
          if (e.chart & (1u << l)) continue;
          CechElement tgt{e.pos, e.summand, e.chart | (1u << l), e.expo};
          auto it = dst_index.find(tgt);
          if (it == dst_index.end())
            throw Error(Error::Kind::Internal,
                        "missing chart-inclusion target " + to_string(tgt));
          d.add(it->second, ci, make_rational(insertion_sign(e.chart, l)));
        }
      }
      // Internal differential, with the sign (-1)^q of the chart degree.
      if (const PolyMatrix* dc = c.diff(e.pos)) {
        Rational sign = q % 2 == 0 ? 1 : -1;
        for (const auto& [rc, poly] : dc->entries) {
          if (rc.second != e.summand) continue;
          for (const auto& [mono, coef] : poly.terms) {
            CechElement tgt{e.pos + 1, rc.first, e.chart,
                            add_index(e.expo, mono)};
            auto it = dst_index.find(tgt);
            if (it == dst_index.end())
              throw Error(Error::Kind::Internal,
                          "missing internal target " + to_string(tgt));
            d.add(it->second, ci, coef * sign);
          }
        }
      }
    }
    mats_[k - k_lo_] = std::move(d);
  }
}

const std::vector<CechElement>& TotalModel::basis(int k) const {
  static const std::vector<CechElement> kEmpty;
  if (k < k_lo_ || k > k_hi_) return kEmpty;
  return bases_[k - k_lo_];
}

std::optional<int> TotalModel::index_of(int k, const CechElement& e) const {
  const std::vector<CechElement>& b = basis(k);
  for (int i = 0; i < static_cast<int>(b.size()); ++i)
    if (b[i] == e) return i;
  return std::nullopt;
}

const QMatrix& TotalModel::matrix(int k) const {
  if (k < k_lo_ || k >= k_hi_) return empty_matrix_;
  return mats_[k - k_lo_];
}

bool TotalModel::is_cocycle(int k, const std::vector<Rational>& v) const {
  if (k >= k_hi_) {
    // No outgoing differential inside the window; cocycle iff sizes match.
    return static_cast<int>(v.size()) == static_cast<int>(basis(k).size());
  }
  const QMatrix& d = matrix(k);
  std::vector<Rational> y = d.apply(v);
  return std::all_of(y.begin(), y.end(),
                     [](const Rational& r) { return r == 0; });
}

void TotalModel::ensure_components() const {
  if (comps_) return;
  auto data = std::make_shared<ComponentData>();
  int width = k_hi_ - k_lo_ + 1;
  if (width <= 0) {
    comps_ = std::move(data);
    return;
  }
  std::vector<long long> offset(width + 1, 0);
  for (int i = 0; i < width; ++i)
    offset[i + 1] = offset[i] + static_cast<long long>(bases_[i].size());
  long long total = offset[width];
  std::vector<int> parent(total);
  for (long long i = 0; i < total; ++i) parent[i] = static_cast<int>(i);
  auto find = [&parent](int v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  };
  auto unite = [&](long long a, long long b) {
    int ra = find(static_cast<int>(a));
    int rb = find(static_cast<int>(b));
    if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
  };
  for (int i = 0; i + 1 < width; ++i) {
    const QMatrix& d = mats_[i];
    for (int r = 0; r < d.rows(); ++r)
      for (const auto& [ccol, v] : d.row(r))
        unite(offset[i] + ccol, offset[i + 1] + r);
  }
  // Component ids in order of first appearance, scanning degrees ascending.
  std::vector<int> id_of_root(total, -1);
  data->comp_of.resize(width);
  data->local_of.resize(width);
  for (int i = 0; i < width; ++i) {
    int sz = static_cast<int>(bases_[i].size());
    data->comp_of[i].resize(sz);
    data->local_of[i].resize(sz);
    for (int j = 0; j < sz; ++j) {
      int root = find(static_cast<int>(offset[i] + j));
      if (id_of_root[root] < 0) {
        id_of_root[root] = data->n_comps++;
        data->comp_sizes.emplace_back(width, 0);
      }
      int comp = id_of_root[root];
      data->comp_of[i][j] = comp;
      data->local_of[i][j] = data->comp_sizes[comp][i]++;
    }
  }
  data->rank_cache.assign(std::max(0, width - 1), std::nullopt);
  data->comp_rank.assign(std::max(0, width - 1), {});
  comps_ = std::move(data);
}

long long TotalModel::rank_of(int k) const {
  if (k < k_lo_ || k >= k_hi_) return 0;
  ensure_components();
  ComponentData& cd = *comps_;
  int ki = k - k_lo_;
  if (cd.rank_cache[ki]) return *cd.rank_cache[ki];

  const QMatrix& d = mats_[ki];
  // Split entries into per-component triplet lists in one pass.
  std::vector<std::vector<Triplet>> tris(cd.n_comps);
  std::vector<std::vector<std::pair<int, Rational>>> qtris(cd.n_comps);
  std::vector<bool> exact(cd.n_comps, true);
  std::vector<std::vector<std::tuple<int, int, Rational>>> raw(cd.n_comps);
  for (int r = 0; r < d.rows(); ++r) {
    for (const auto& [c, v] : d.row(r)) {
      int comp = cd.comp_of[ki][c];
      raw[comp].emplace_back(cd.local_of[ki + 1][r], cd.local_of[ki][c], v);
    }
  }
  long long total_rank = 0;
  cd.comp_rank[ki].assign(cd.n_comps, 0);
  for (int comp = 0; comp < cd.n_comps; ++comp) {
    if (raw[comp].empty()) continue;
    QMatrix sub(cd.comp_sizes[comp][ki + 1], cd.comp_sizes[comp][ki]);
    for (const auto& [rr, cc, v] : raw[comp]) sub.add(rr, cc, v);
    int rk = rank(sub);
    cd.comp_rank[ki][comp] = rk;
    total_rank += rk;
  }
  cd.rank_cache[ki] = total_rank;
  return total_rank;
}

long long TotalModel::dim(int k) const {
  if (k < support_lo_ || k > support_hi_) return 0;
  if (k < k_lo_ || k > k_hi_)
    throw Error(Error::Kind::Internal, "dim outside the built window");
  if ((k > support_lo_ && k - 1 < k_lo_) || (k < support_hi_ && k == k_hi_))
    throw Error(Error::Kind::Internal,
                "window too narrow for dim at degree " + std::to_string(k));
  long long n_k = static_cast<long long>(basis(k).size());
  return n_k - rank_of(k) - rank_of(k - 1);
}

std::optional<std::vector<Rational>> TotalModel::solve(
    int k, const std::vector<Rational>& rhs, PivotOrder order) const {
  const std::vector<CechElement>& src = basis(k);
  const std::vector<CechElement>& dst = basis(k + 1);
  if (static_cast<int>(rhs.size()) != static_cast<int>(dst.size()))
    throw Error(Error::Kind::InvalidInput, "solve rhs has wrong length");
  std::vector<Rational> x(src.size(), Rational(0));
  if (dst.empty()) return x;
  if (k < k_lo_ || k >= k_hi_) {
    // No differential available: solvable only when rhs vanishes.
    for (const Rational& v : rhs)
      if (v != 0) return std::nullopt;
    return x;
  }
  ensure_components();
  ComponentData& cd = *comps_;
  int ki = k - k_lo_;

  std::vector<bool> comp_needed(cd.n_comps, false);
  for (int r = 0; r < static_cast<int>(rhs.size()); ++r)
    if (rhs[r] != 0) comp_needed[cd.comp_of[ki + 1][r]] = true;

  const QMatrix& d = mats_[ki];
  std::vector<std::vector<std::tuple<int, int, Rational>>> raw(cd.n_comps);
  for (int r = 0; r < d.rows(); ++r)
    for (const auto& [c, v] : d.row(r)) {
      int comp = cd.comp_of[ki][c];
      if (comp_needed[comp])
        raw[comp].emplace_back(cd.local_of[ki + 1][r], cd.local_of[ki][c], v);
    }

  for (int comp = 0; comp < cd.n_comps; ++comp) {
    if (!comp_needed[comp]) continue;
    int loc_rows = cd.comp_sizes[comp][ki + 1];
    int loc_cols = cd.comp_sizes[comp][ki];
    QMatrix sub(loc_rows, loc_cols);
    for (const auto& [rr, cc, v] : raw[comp]) sub.add(rr, cc, v);
    std::vector<Rational> local_rhs(loc_rows, Rational(0));
    for (int r = 0; r < static_cast<int>(rhs.size()); ++r)
      if (cd.comp_of[ki + 1][r] == comp) local_rhs[cd.local_of[ki + 1][r]] = rhs[r];
    std::optional<std::vector<int>> col_order;
    if (order == PivotOrder::RightToLeft) {
      col_order.emplace(loc_cols);
      for (int c = 0; c < loc_cols; ++c) (*col_order)[c] = loc_cols - 1 - c;
    }
    auto local = solve_affine(sub, local_rhs,
                              col_order ? &*col_order : nullptr);
    if (!local) return std::nullopt;
    for (int c = 0; c < static_cast<int>(src.size()); ++c)
      if (cd.comp_of[ki][c] == comp) x[c] = (*local)[cd.local_of[ki][c]];
  }
  return x;
}

std::vector<std::vector<std::pair<int, Rational>>> TotalModel::representatives(
    int k) const {
  std::vector<std::vector<std::pair<int, Rational>>> out;
  const std::vector<CechElement>& src = basis(k);
  if (src.empty()) return out;
  ensure_components();
  ComponentData& cd = *comps_;
  int ki = k - k_lo_;

  // Incremental dense echelon used to quotient kernel vectors by the image.
  struct MiniEchelon {
    std::map<int, std::vector<Rational>> pivots;  // leading col -> row
    void reduce(std::vector<Rational>& v) const {
      for (const auto& [pc, row] : pivots) {
        if (v[pc] == 0) continue;
        Rational f = v[pc];
        for (size_t i = 0; i < v.size(); ++i) v[i] -= f * row[i];
      }
    }
    bool insert(std::vector<Rational> v) {
      reduce(v);
      int lead = -1;
      for (size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0) {
          lead = static_cast<int>(i);
          break;
        }
      if (lead < 0) return false;
      Rational f = v[lead];
      for (Rational& x : v) x /= f;
      pivots[lead] = std::move(v);
      return true;
    }
  };

  // Per-component kernel and image matrices, assembled in one sweep each.
  std::vector<std::vector<std::tuple<int, int, Rational>>> raw_out(cd.n_comps);
  if (ki < static_cast<int>(mats_.size())) {
    const QMatrix& d = mats_[ki];
    for (int r = 0; r < d.rows(); ++r)
      for (const auto& [c, v] : d.row(r))
        raw_out[cd.comp_of[ki][c]].emplace_back(cd.local_of[ki + 1][r],
                                                cd.local_of[ki][c], v);
  }
  std::vector<std::vector<std::tuple<int, int, Rational>>> raw_in(cd.n_comps);
  if (ki - 1 >= 0) {
    const QMatrix& d = mats_[ki - 1];
    for (int r = 0; r < d.rows(); ++r)
      for (const auto& [c, v] : d.row(r))
        raw_in[cd.comp_of[ki][r]].emplace_back(cd.local_of[ki][r],
                                               cd.local_of[ki - 1][c], v);
  }

  // Global column index of each component-local node at degree k.
  std::vector<std::vector<int>> global_of(cd.n_comps);
  for (int c = 0; c < static_cast<int>(src.size()); ++c) {
    int comp = cd.comp_of[ki][c];
    if (static_cast<int>(global_of[comp].size()) <= cd.local_of[ki][c])
      global_of[comp].resize(cd.local_of[ki][c] + 1, -1);
    global_of[comp][cd.local_of[ki][c]] = c;
  }

  // Component ids already run in order of first appearance at the lowest
  // degree, which keeps the representative list deterministic.
  for (int comp = 0; comp < cd.n_comps; ++comp) {
    int loc_cols = cd.comp_sizes[comp][ki];
    if (loc_cols == 0) continue;
    int loc_rows =
        ki < static_cast<int>(mats_.size()) ? cd.comp_sizes[comp][ki + 1] : 0;
    QMatrix d_out(loc_rows, loc_cols);
    for (const auto& [rr, cc, v] : raw_out[comp]) d_out.add(rr, cc, v);
    std::vector<std::vector<Rational>> kernel = kernel_basis(d_out);
    if (kernel.empty()) continue;

    MiniEchelon ech;
    if (ki - 1 >= 0 && cd.comp_sizes[comp][ki - 1] > 0) {
      int in_cols = cd.comp_sizes[comp][ki - 1];
      std::vector<std::vector<Rational>> image(
          in_cols, std::vector<Rational>(loc_cols, Rational(0)));
      for (const auto& [rr, cc, v] : raw_in[comp]) image[cc][rr] = v;
      for (std::vector<Rational>& col : image) ech.insert(std::move(col));
    }
    for (const std::vector<Rational>& v : kernel) {
      std::vector<Rational> w = v;
      ech.reduce(w);
      int lead = -1;
      for (size_t i = 0; i < w.size(); ++i)
        if (w[i] != 0) {
          lead = static_cast<int>(i);
          break;
        }
      if (lead < 0) continue;  // a coboundary
      Rational f = w[lead];
      for (Rational& x : w) x /= f;
      std::vector<std::pair<int, Rational>> rep;
      for (int i = 0; i < loc_cols; ++i)
        if (w[i] != 0) rep.emplace_back(global_of[comp][i], w[i]);
      out.push_back(std::move(rep));
      ech.pivots[lead] = std::move(w);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Multidegree-blocked route for purely monomial complexes
// ---------------------------------------------------------------------------

namespace {

// A monomial differential moves each Laurent monomial by a fixed exponent
// shift, so the total complex splits into finite blocks indexed by a
// "balanced" multidegree: beta = exponents + per-summand offset. Blocks are
// processed independently; ranks add up because the differential is block
// diagonal with respect to this grading.
struct SummandGraph {
  struct Edge {
    int dst;
    MultiIndex expo;
    long long coef;
  };
  std::vector<int> t_of;      // position per summand id
  std::vector<int> twist_of;  // twist per summand id
  std::vector<std::vector<Edge>> out_edges;  // internal differential
  std::vector<int> comp_of;
  std::vector<std::vector<int>> comp_summands;
  std::vector<MultiIndex> offset_of;
};

std::optional<SummandGraph> build_summand_graph(
    const BraneComplex& c, const std::vector<std::vector<MonomialEntry>>& sh) {
  SummandGraph g;
  std::vector<int> base(c.terms.size() + 1, 0);
  for (size_t i = 0; i < c.terms.size(); ++i)
    base[i + 1] = base[i] + c.terms[i].size();
  int total = base[c.terms.size()];
  g.t_of.resize(total);
  g.twist_of.resize(total);
  g.out_edges.resize(total);
  for (size_t i = 0; i < c.terms.size(); ++i)
    for (int s = 0; s < c.terms[i].size(); ++s) {
      g.t_of[base[i] + s] = c.lo + static_cast<int>(i);
      g.twist_of[base[i] + s] = c.terms[i].twists[s];
    }
  std::vector<std::vector<std::pair<int, MultiIndex>>> undirected(total);
  for (size_t i = 0; i < sh.size(); ++i)
    for (const MonomialEntry& e : sh[i]) {
      int src = base[i] + e.col;
      int dst = base[i + 1] + e.row;
      g.out_edges[src].push_back({dst, e.expo, e.coef});
      // o_dst = o_src - expo
      MultiIndex neg = e.expo;
      for (int& x : neg) x = -x;
      undirected[src].emplace_back(dst, neg);
      undirected[dst].emplace_back(src, e.expo);
    }

  g.comp_of.assign(total, -1);
  g.offset_of.assign(total, MultiIndex());
  int n_comps = 0;
  for (int s0 = 0; s0 < total; ++s0) {
    if (g.comp_of[s0] >= 0) continue;
    int comp = n_comps++;
    g.comp_summands.emplace_back();
    std::vector<int> stack{s0};
    g.comp_of[s0] = comp;
    g.offset_of[s0] = MultiIndex(c.n + 1, 0);
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      g.comp_summands[comp].push_back(v);
      for (const auto& [w, delta] : undirected[v]) {
        MultiIndex want = add_index(g.offset_of[v], delta);
        if (g.comp_of[w] < 0) {
          g.comp_of[w] = comp;
          g.offset_of[w] = std::move(want);
          stack.push_back(w);
        } else if (g.offset_of[w] != want) {
          // Incompatible multidegree offsets: fall back to the generic route.
          return std::nullopt;
        }
      }
    }
    std::sort(g.comp_summands[comp].begin(), g.comp_summands[comp].end());
  }
  return g;
}

std::optional<std::map<int, long long>> stream_dims(const BraneComplex& c,
                                                    int M) {
  auto shape = monomial_shape(c);
  if (!shape) return std::nullopt;
  auto graph_opt = build_summand_graph(c, *shape);
  if (!graph_opt) return std::nullopt;
  const SummandGraph& g = *graph_opt;
  const int n = c.n;
  const int n_masks = 1 << (n + 1);
  if (n > 20) return std::nullopt;

  std::map<int, long long> dims;
  for (int k = c.lo; k <= c.hi() + n; ++k) dims[k] = 0;

  // Distinct balanced multidegrees, keyed as [component, beta...].
  std::unordered_set<MultiIndex, VecHash> keys;
  std::map<int, std::vector<MultiIndex>> basis_cache;
  for (int sigma = 0; sigma < static_cast<int>(g.t_of.size()); ++sigma) {
    int D = g.twist_of[sigma] + (n + 1) * M;
    if (D < 0) continue;
    auto it = basis_cache.find(D);
    if (it == basis_cache.end())
      it = basis_cache.emplace(D, monomial_basis(n, D)).first;
    MultiIndex key(n + 2, 0);
    key[0] = g.comp_of[sigma];
    for (const MultiIndex& b : it->second) {
      for (int i = 0; i <= n; ++i)
        key[i + 1] = b[i] - M + g.offset_of[sigma][i];
      keys.insert(key);
    }
  }

  // Per-block scratch, reused across blocks.
  std::vector<int> active;            // summand ids
  std::vector<MultiIndex> a_of;       // exponents per active summand
  std::vector<std::uint32_t> neg_of;  // negative-coordinate masks
  std::vector<std::vector<int>> lut;  // [active idx][mask] -> flat node id
  std::vector<int> node_k, node_local;
  std::vector<int> count_by_k;
  std::vector<std::vector<Triplet>> tris;

  for (const MultiIndex& key : keys) {
    int comp = key[0];
    active.clear();
    a_of.clear();
    neg_of.clear();
    for (size_t si = 0; si < g.comp_summands[comp].size(); ++si) {
      int sigma = g.comp_summands[comp][si];
      MultiIndex a(n + 1);
      bool ok = true;
      for (int i = 0; i <= n; ++i) {
        a[i] = key[i + 1] - g.offset_of[sigma][i];
        if (a[i] < -M) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      active.push_back(sigma);
      neg_of.push_back(neg_mask(a));
      a_of.push_back(std::move(a));
    }
    if (active.empty()) continue;

    // Enumerate block nodes: (active summand, chart mask containing all
    // negative coordinates). Node degrees span [k_min, k_max].
    int k_min = 1 << 30, k_max = -(1 << 30);
    lut.assign(active.size(), std::vector<int>(n_masks, -1));
    node_k.clear();
    node_local.clear();
    for (size_t ai = 0; ai < active.size(); ++ai) {
      int t = g.t_of[active[ai]];
      for (int mask = 1; mask < n_masks; ++mask) {
        if ((static_cast<std::uint32_t>(mask) & neg_of[ai]) != neg_of[ai])
          continue;
        int k = t + popcount(static_cast<std::uint32_t>(mask)) - 1;
        lut[ai][mask] = static_cast<int>(node_k.size());
        node_k.push_back(k);
        node_local.push_back(0);  // assigned below
        k_min = std::min(k_min, k);
        k_max = std::max(k_max, k);
      }
    }
    int spread = k_max - k_min + 1;
    count_by_k.assign(spread, 0);
    for (size_t v = 0; v < node_k.size(); ++v)
      node_local[v] = count_by_k[node_k[v] - k_min]++;

    // Map global summand id -> active index for internal-edge targets.
    std::map<int, int> active_index;
    for (size_t ai = 0; ai < active.size(); ++ai) active_index[active[ai]] = static_cast<int>(ai);

    tris.assign(std::max(0, spread - 1), {});
    for (size_t ai = 0; ai < active.size(); ++ai) {
      for (int mask = 1; mask < n_masks; ++mask) {
        int v = lut[ai][mask];
        if (v < 0) continue;
        int k = node_k[v];
        int pc = popcount(static_cast<std::uint32_t>(mask));
        if (k < k_max && pc <= n) {
          for (int l = 0; l <= n; ++l) {
            if (mask & (1 << l)) continue;
            int w = lut[ai][mask | (1 << l)];
            tris[k - k_min].push_back(
                {node_local[w], node_local[v],
                 insertion_sign(static_cast<std::uint32_t>(mask), l)});
          }
        }
        long long sign = pc % 2 == 1 ? 1 : -1;  // (-1)^(pc-1)
        for (const SummandGraph::Edge& e : g.out_edges[active[ai]]) {
          auto it = active_index.find(e.dst);
          if (it == active_index.end())
            throw Error(Error::Kind::Internal,
                        "blocked route lost an internal target");
          int w = lut[it->second][mask];
          if (w < 0)
            throw Error(Error::Kind::Internal,
                        "blocked route target chart missing");
          tris[k - k_min].push_back(
              {node_local[w], node_local[v], sign * e.coef});
        }
      }
    }

    for (int k = k_min; k <= k_max; ++k)
      dims[k] += count_by_k[k - k_min];
    for (int k = k_min; k < k_max; ++k) {
      int r = triplet_rank(tris[k - k_min], count_by_k[k + 1 - k_min],
                           count_by_k[k - k_min]);
      dims[k] -= r;
      dims[k + 1] -= r;
    }
  }
  return dims;
}

}  // namespace

CohomologyResult hypercohomology(const BraneComplex& c,
                                 const TotalOptions& opts) {
  require_valid(c, "hypercohomology");
  int bound = truncation_bound(c);
  int M = opts.truncation.value_or(bound);
  if (M < bound)
    throw Error(Error::Kind::InvalidInput,
                "truncation " + std::to_string(M) +
                    " is below the stable bound " + std::to_string(bound));
  CohomologyResult res;
  res.truncation = M;
  if (c.empty_complex()) return res;

  int s_lo = c.lo;
  int s_hi = c.hi() + c.n;
  int want_lo = opts.degrees ? std::max(opts.degrees->first, s_lo) : s_lo;
  int want_hi = opts.degrees ? std::min(opts.degrees->second, s_hi) : s_hi;
  if (want_lo > want_hi) return res;

  if (!opts.representatives) {
    if (auto dims = stream_dims(c, M)) {
      for (int k = want_lo; k <= want_hi; ++k) {
        auto it = dims->find(k);
        res.dims[k] = it == dims->end() ? 0 : it->second;
      }
      return res;
    }
  }

  TotalModel model(c, M, want_lo - 1, want_hi + 1);
  for (int k = want_lo; k <= want_hi; ++k) res.dims[k] = model.dim(k);
  if (opts.representatives) {
    for (int k = want_lo; k <= want_hi; ++k) {
      auto raw = model.representatives(k);
      std::vector<std::vector<std::pair<CechElement, Rational>>> conv;
      conv.reserve(raw.size());
      for (const auto& rep : raw) {
        std::vector<std::pair<CechElement, Rational>> one;
        one.reserve(rep.size());
        for (const auto& [idx, val] : rep)
          one.emplace_back(model.basis(k)[idx], val);
        conv.push_back(std::move(one));
      }
      res.representatives[k] = std::move(conv);
    }
  }
  return res;
}

}  // namespace branegauge
