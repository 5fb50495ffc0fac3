#pragma once
// Sparse exact linear algebra over Q: reduced row echelon form, nullspaces
// and a span solver whose right-hand sides may carry any coefficient type.

#include <algorithm>
#include <map>
#include <vector>

#include "supertransform/scalars.hpp"

namespace supertransform {

using SparseVector = std::map<int, Rational>;

namespace detail {

inline void axpy(SparseVector& target, const Rational& factor, const SparseVector& source) {
  for (const auto& [col, v] : source) {
    auto [it, inserted] = target.try_emplace(col, factor * v);
    if (!inserted) {
      it->second += factor * v;
      if (it->second == 0) target.erase(it);
    }
  }
}

inline void scale(SparseVector& v, const Rational& s) {
  for (auto& [col, x] : v) x *= s;
}

}  // namespace detail

/// Row echelon reduction of a sparse matrix, optionally tracking the row
/// operations applied (transform * original = reduced).
class RowReduction {
 public:
  RowReduction(std::vector<SparseVector> rows, int columns, bool track)
      : rows_(std::move(rows)), columns_(columns) {
    if (track) {
      transform_.resize(rows_.size());
      for (std::size_t r = 0; r < rows_.size(); ++r) transform_[r][static_cast<int>(r)] = 1;
    }
    reduce();
  }

  const std::vector<SparseVector>& rows() const { return rows_; }
  const std::vector<SparseVector>& transform() const { return transform_; }
  /// Pivot column of reduced row r (rows beyond rank() are zero).
  const std::vector<int>& pivots() const { return pivots_; }
  int rank() const { return static_cast<int>(pivots_.size()); }
  int columns() const { return columns_; }

  /// Basis of {v : A v = 0}, one vector per free column, free entry 1.
  std::vector<SparseVector> nullspace() const {
    std::vector<bool> is_pivot(static_cast<std::size_t>(columns_), false);
    for (int c : pivots_) is_pivot[static_cast<std::size_t>(c)] = true;
    std::vector<SparseVector> basis;
    for (int f = 0; f < columns_; ++f) {
      if (is_pivot[static_cast<std::size_t>(f)]) continue;
      SparseVector v;
      v[f] = 1;
      for (std::size_t r = 0; r < pivots_.size(); ++r) {
        auto it = rows_[r].find(f);
        if (it != rows_[r].end()) v[pivots_[r]] = -it->second;
      }
      basis.push_back(std::move(v));
    }
    return basis;
  }

 private:
  void reduce() {
    const std::size_t nrows = rows_.size();
    std::size_t next = 0;
    for (int col = 0; col < columns_ && next < nrows; ++col) {
      // sparsest row with an entry in this column
      std::size_t best = nrows;
      for (std::size_t r = next; r < nrows; ++r) {
        if (rows_[r].count(col) && (best == nrows || rows_[r].size() < rows_[best].size())) best = r;
      }
      if (best == nrows) continue;
      std::swap(rows_[next], rows_[best]);
      if (!transform_.empty()) std::swap(transform_[next], transform_[best]);
      Rational inv = 1 / rows_[next].at(col);
      detail::scale(rows_[next], inv);
      if (!transform_.empty()) detail::scale(transform_[next], inv);
      for (std::size_t r = 0; r < nrows; ++r) {
        if (r == next) continue;
        auto it = rows_[r].find(col);
        if (it == rows_[r].end()) continue;
        Rational factor = -it->second;
        detail::axpy(rows_[r], factor, rows_[next]);
        if (!transform_.empty()) detail::axpy(transform_[r], factor, transform_[next]);
      }
      pivots_.push_back(col);
      ++next;
    }
  }

  std::vector<SparseVector> rows_;
  std::vector<SparseVector> transform_;
  std::vector<int> pivots_;
  int columns_;
};

/// Solves sum_i c_i b_i = t for fixed rational vectors b_i (given as
/// columns over `dimension` coordinates) and arbitrary right-hand sides.
class SpanSolver {
 public:
  SpanSolver(const std::vector<SparseVector>& columns, int dimension)
      : count_(static_cast<int>(columns.size())),
        reduction_(transpose(columns, dimension), count_, true) {}

  int rank() const { return reduction_.rank(); }
  int size() const { return count_; }

  /// Coefficients (free ones set to zero); throws when t is outside the span.
  template <class C>
  std::vector<C> solve(const std::map<int, C>& target) const {
    const auto& rows = reduction_.rows();
    const auto& transform = reduction_.transform();
    std::vector<C> applied(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
      C acc{};
      for (const auto& [coord, v] : transform[r]) {
        auto it = target.find(coord);
        if (it != target.end()) acc += CoeffOps<C>::from_rational(v) * it->second;
      }
      applied[r] = acc;
    }
    for (auto [coord, value] : target) {
      (void)value;
      if (coord < 0 || coord >= static_cast<int>(rows.size()))
        throw DomainError("degree cap exceeded");
    }
    for (std::size_t r = static_cast<std::size_t>(reduction_.rank()); r < rows.size(); ++r) {
      if (!is_negligible(applied[r])) throw DomainError("degree cap exceeded");
    }
    std::vector<C> x(static_cast<std::size_t>(count_));
    for (std::size_t r = 0; r < reduction_.pivots().size(); ++r)
      x[static_cast<std::size_t>(reduction_.pivots()[r])] = applied[r];
    return x;
  }

 private:
  static std::vector<SparseVector> transpose(const std::vector<SparseVector>& columns,
                                             int dimension) {
    std::vector<SparseVector> rows(static_cast<std::size_t>(dimension));
    for (std::size_t c = 0; c < columns.size(); ++c) {
      for (const auto& [r, v] : columns[c]) {
        if (r < 0 || r >= dimension) throw DomainError("coordinate out of range");
        rows[static_cast<std::size_t>(r)][static_cast<int>(c)] = v;
      }
    }
    return rows;
  }

  template <class C>
  static bool is_negligible(const C& c) {
    if constexpr (std::is_same_v<C, FloatScalar>) {
      return std::abs(c) < 1e-9;
    } else {
      return CoeffOps<C>::is_zero(c);
    }
  }

  int count_;
  RowReduction reduction_;
};

}  // namespace supertransform
