#include "branegauge/linalg.hpp"

#include <algorithm>
#include <set>

namespace branegauge {

namespace {

using Row = std::vector<std::pair<int, Rational>>;

Row::const_iterator find_col(const Row& row, int c) {
  auto it = std::lower_bound(
      row.begin(), row.end(), c,
      [](const std::pair<int, Rational>& e, int col) { return e.first < col; });
  if (it != row.end() && it->first == c) return it;
  return row.end();
}

// dst -= f * src, merging the sorted entry lists. Returns the columns that
// became nonzero in dst.
std::vector<int> axpy_row(Row& dst, const Rational& f, const Row& src) {
  Row out;
  out.reserve(dst.size() + src.size());
  std::vector<int> gained;
  auto a = dst.begin();
  auto b = src.begin();
  while (a != dst.end() || b != src.end()) {
    if (b == src.end() || (a != dst.end() && a->first < b->first)) {
      out.push_back(std::move(*a));
      ++a;
    } else if (a == dst.end() || b->first < a->first) {
      Rational v = -f * b->second;
      if (v != 0) {
        gained.push_back(b->first);
        out.emplace_back(b->first, std::move(v));
      }
      ++b;
    } else {
      Rational v = a->second - f * b->second;
      if (v != 0) out.emplace_back(a->first, std::move(v));
      ++a;
      ++b;
    }
  }
  dst = std::move(out);
  return gained;
}

}  // namespace

QMatrix QMatrix::identity(int n) {
  QMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

void QMatrix::add(int r, int c, const Rational& v) {
  if (v == 0) return;
  Row& row = row_data_[r];
  auto it = std::lower_bound(
      row.begin(), row.end(), c,
      [](const std::pair<int, Rational>& e, int col) { return e.first < col; });
  if (it != row.end() && it->first == c) {
    it->second += v;
    if (it->second == 0) row.erase(it);
  } else {
    row.insert(it, {c, v});
  }
}

void QMatrix::set(int r, int c, const Rational& v) {
  Row& row = row_data_[r];
  auto it = std::lower_bound(
      row.begin(), row.end(), c,
      [](const std::pair<int, Rational>& e, int col) { return e.first < col; });
  if (it != row.end() && it->first == c) {
    if (v == 0)
      row.erase(it);
    else
      it->second = v;
  } else if (v != 0) {
    row.insert(it, {c, v});
  }
}

Rational QMatrix::at(int r, int c) const {
  auto it = find_col(row_data_[r], c);
  return it == row_data_[r].end() ? Rational(0) : it->second;
}

bool QMatrix::is_zero() const {
  for (const Row& row : row_data_)
    if (!row.empty()) return false;
  return true;
}

long long QMatrix::entry_count() const {
  long long n = 0;
  for (const Row& row : row_data_) n += static_cast<long long>(row.size());
  return n;
}

QMatrix QMatrix::times(const QMatrix& other) const {
  if (cols_ != other.rows_)
    throw Error(Error::Kind::InvalidInput, "matrix product shape mismatch");
  QMatrix out(rows_, other.cols_);
  for (int r = 0; r < rows_; ++r) {
    for (const auto& [k, v] : row_data_[r])
      for (const auto& [c, w] : other.row_data_[k]) out.add(r, c, v * w);
  }
  return out;
}

QMatrix QMatrix::transpose() const {
  QMatrix out(cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (const auto& [c, v] : row_data_[r]) out.set(c, r, v);
  return out;
}

std::vector<Rational> QMatrix::apply(const std::vector<Rational>& x) const {
  if (static_cast<int>(x.size()) != cols_)
    throw Error(Error::Kind::InvalidInput, "matrix-vector shape mismatch");
  std::vector<Rational> y(rows_, Rational(0));
  for (int r = 0; r < rows_; ++r)
    for (const auto& [c, v] : row_data_[r]) y[r] += v * x[c];
  return y;
}

Echelon reduced_echelon(const QMatrix& m, int primary_cols,
                        const std::vector<int>* column_order) {
  const int R = m.rows();
  const int C = m.cols();
  if (primary_cols < 0) primary_cols = C;

  std::vector<Row> rows(R);
  for (int r = 0; r < R; ++r) rows[r] = m.row(r);

  // col_rows holds candidate row ids per column; entries can go stale when a
  // row's coefficient cancels, so candidates are re-checked before use.
  std::vector<std::vector<int>> col_rows(C);
  for (int r = 0; r < R; ++r)
    for (const auto& [c, v] : rows[r]) col_rows[c].push_back(r);

  std::vector<bool> is_pivot_row(R, false);
  std::vector<int> pivot_row_of_col(C, -1);

  std::vector<int> order;
  if (column_order) {
    order = *column_order;
  } else {
    order.resize(primary_cols);
    for (int c = 0; c < primary_cols; ++c) order[c] = c;
  }

  std::vector<std::pair<int, int>> pivots;  // (pivot col, row id)
  for (int c : order) {
    if (c < 0 || c >= primary_cols)
      throw Error(Error::Kind::Internal, "pivot order out of range");
    // Live candidates, smallest row index first.
    std::vector<int>& cand = col_rows[c];
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    int pivot = -1;
    std::vector<int> live;
    for (int r : cand) {
      if (find_col(rows[r], c) == rows[r].end()) continue;
      live.push_back(r);
      if (pivot < 0 && !is_pivot_row[r]) pivot = r;
    }
    cand = live;
    if (pivot < 0) continue;

    Rational lead = find_col(rows[pivot], c)->second;
    if (lead != 1) {
      for (auto& e : rows[pivot]) e.second /= lead;
    }
    for (int r : live) {
      if (r == pivot) continue;
      Rational f = find_col(rows[r], c)->second;
      std::vector<int> gained = axpy_row(rows[r], f, rows[pivot]);
      for (int g : gained) col_rows[g].push_back(r);
    }
    is_pivot_row[pivot] = true;
    pivot_row_of_col[c] = pivot;
    pivots.emplace_back(c, pivot);
  }

  std::sort(pivots.begin(), pivots.end());
  Echelon e;
  e.cols = C;
  e.primary_cols = primary_cols;
  e.pivot_row_of_col = std::move(pivot_row_of_col);
  e.rows.reserve(pivots.size());
  e.pivot_col.reserve(pivots.size());
  for (int i = 0; i < static_cast<int>(pivots.size()); ++i) {
    e.pivot_col.push_back(pivots[i].first);
    e.rows.push_back(std::move(rows[pivots[i].second]));
    e.pivot_row_of_col[pivots[i].first] = i;
  }
  return e;
}

int rank(const QMatrix& m) { return reduced_echelon(m).rank(); }

std::vector<std::vector<Rational>> kernel_basis(const QMatrix& m) {
  Echelon e = reduced_echelon(m);
  std::vector<std::vector<Rational>> basis;
  for (int f = 0; f < e.cols; ++f) {
    if (e.pivot_row_of_col[f] >= 0) continue;
    std::vector<Rational> v(e.cols, Rational(0));
    v[f] = 1;
    for (int i = 0; i < e.rank(); ++i) {
      auto it = find_col(e.rows[i], f);
      if (it != e.rows[i].end()) v[e.pivot_col[i]] = -it->second;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<std::vector<Rational>> solve_affine(
    const QMatrix& m, const std::vector<Rational>& b,
    const std::vector<int>* column_order) {
  if (static_cast<int>(b.size()) != m.rows())
    throw Error(Error::Kind::InvalidInput, "solve shape mismatch");
  QMatrix aug(m.rows(), m.cols() + 1);
  for (int r = 0; r < m.rows(); ++r) {
    for (const auto& [c, v] : m.row(r)) aug.set(r, c, v);
    aug.set(r, m.cols(), b[r]);
  }
  Echelon e = reduced_echelon(aug, m.cols(), column_order);

  // A reduced row whose only entry sits in the augmented column signals an
  // inconsistent system; such a row never holds a pivot, so scan leftovers.
  // With full reduction, non-pivot rows were eliminated in place: rebuild the
  // residual of b against the pivot rows instead of inspecting them.
  std::vector<Rational> x(m.cols(), Rational(0));
  for (int i = 0; i < e.rank(); ++i) {
    auto it = find_col(e.rows[i], m.cols());
    x[e.pivot_col[i]] = it == e.rows[i].end() ? Rational(0) : it->second;
  }
  std::vector<Rational> residual = m.apply(x);
  for (int r = 0; r < m.rows(); ++r)
    if (residual[r] != b[r]) return std::nullopt;
  return x;
}

int cohomology_dim(const QMatrix& d_out, const QMatrix& d_in) {
  if (d_out.cols() != d_in.rows())
    throw Error(Error::Kind::InvalidInput,
                "cohomology_dim: differentials are not composable");
  if (!d_out.times(d_in).is_zero())
    throw Error(Error::Kind::InvalidInput,
                "cohomology_dim: d_out * d_in is nonzero");
  return (d_out.cols() - rank(d_out)) - rank(d_in);
}

}  // namespace branegauge
