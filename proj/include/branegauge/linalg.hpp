#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "branegauge/rational.hpp"

namespace branegauge {

// Sparse matrix over the rationals. Rows are kept as column-sorted vectors of
// nonzero entries; the representation is independent of insertion order so
// that every downstream computation is deterministic.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(int rows, int cols) : rows_(rows), cols_(cols), row_data_(rows) {}

  static QMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  // Adds v to entry (r, c); drops the entry if the sum vanishes.
  void add(int r, int c, const Rational& v);
  void set(int r, int c, const Rational& v);
  Rational at(int r, int c) const;

  const std::vector<std::pair<int, Rational>>& row(int r) const {
    return row_data_[r];
  }

  bool is_zero() const;
  long long entry_count() const;

  QMatrix times(const QMatrix& other) const;
  QMatrix transpose() const;
  std::vector<Rational> apply(const std::vector<Rational>& x) const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<std::vector<std::pair<int, Rational>>> row_data_;
};

// Result of Gauss-Jordan elimination. Pivots are chosen by a fixed rule --
// leftmost eligible column first, then the smallest row index among rows with
// a nonzero entry in that column -- so ranks, kernels and solutions never
// depend on traversal order.
struct Echelon {
  int cols = 0;
  int primary_cols = 0;  // columns beyond this bound are never pivots
  std::vector<std::vector<std::pair<int, Rational>>> rows;  // reduced, nonzero
  std::vector<int> pivot_col;         // pivot column per stored row, ascending
  std::vector<int> pivot_row_of_col;  // -1 where the column is free

  int rank() const { return static_cast<int>(pivot_col.size()); }
};

// column_order, when given, is the order in which columns are offered as
// pivot candidates (a permutation of the primary columns). The default is
// left to right.
Echelon reduced_echelon(const QMatrix& m, int primary_cols = -1,
                        const std::vector<int>* column_order = nullptr);

int rank(const QMatrix& m);

// Basis of the right kernel. One vector per free column, in increasing
// column order; the free coordinate itself is set to 1.
std::vector<std::vector<Rational>> kernel_basis(const QMatrix& m);

// Solves m x = b, fixing every free variable to zero. Returns nullopt when
// the system is inconsistent.
std::optional<std::vector<Rational>> solve_affine(
    const QMatrix& m, const std::vector<Rational>& b,
    const std::vector<int>* column_order = nullptr);

// dim ker(d_out) - rank(d_in) for a composable pair with d_out * d_in = 0;
// throws InvalidInput when shapes disagree or the composite is nonzero.
int cohomology_dim(const QMatrix& d_out, const QMatrix& d_in);

}  // namespace branegauge
