#pragma once

#include "eqhom/matrix.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace eqhom {

/**
 * Result of a Smith normal form computation: U * M * V = D.
 *
 * U and V are unimodular; their inverses are tracked alongside so that
 * callers can move between the original and the diagonal bases without a
 * second elimination. Transforms that were not requested are left empty.
 */
template <class R>
struct SmithDecomposition {
  Matrix<R> D;
  Matrix<R> U, U_inverse;
  Matrix<R> V, V_inverse;
  std::size_t rank = 0;

  /// Nonzero diagonal entries d_1 | d_2 | ... (length == rank).
  Vector<R> divisors() const {
    Vector<R> d(rank);
    for (std::size_t i = 0; i < rank; ++i) d[i] = D(i, i);
    return d;
  }
};

struct SmithOptions {
  bool left = true;   ///< compute U and U^{-1}
  bool right = true;  ///< compute V and V^{-1}
};

namespace detail {

template <class R>
class SmithReducer {
 public:
  SmithReducer(Matrix<R> m, SmithOptions opts) : opts_(opts) {
    out_.D = std::move(m);
    if (opts_.left) {
      out_.U = Matrix<R>::identity(out_.D.rows());
      out_.U_inverse = out_.U;
    }
    if (opts_.right) {
      out_.V = Matrix<R>::identity(out_.D.cols());
      out_.V_inverse = out_.V;
    }
  }

  SmithDecomposition<R> run() {
    Matrix<R>& D = out_.D;
    const std::size_t m = D.rows(), n = D.cols();
    std::size_t t = 0;
    for (; t < std::min(m, n); ++t) {
      auto pivot = find_pivot(t);
      if (!pivot) break;
      swap_rows(t, pivot->first);
      swap_columns(t, pivot->second);
      reduce_at(t);
      if (RingTraits<R>::is_negative(D(t, t))) negate_row(t);
    }
    out_.rank = t;
    return std::move(out_);
  }

 private:
  using T = RingTraits<R>;

  // Smallest nonzero magnitude in the trailing block, ties broken by lowest
  // (row, column) in row-major order.
  std::optional<std::pair<std::size_t, std::size_t>> find_pivot(std::size_t t) const {
    const Matrix<R>& D = out_.D;
    std::optional<std::pair<std::size_t, std::size_t>> best;
    for (std::size_t i = t; i < D.rows(); ++i)
      for (std::size_t j = t; j < D.cols(); ++j) {
        const R& x = D(i, j);
        if (T::is_zero(x)) continue;
        if (!best || T::smaller_magnitude(x, D(best->first, best->second))) {
          best = {i, j};
          if (T::is_unit(x)) return best;
        }
      }
    return best;
  }

  void reduce_at(std::size_t t) {
    Matrix<R>& D = out_.D;
    const std::size_t m = D.rows(), n = D.cols();
    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (T::is_zero(D(i, t))) continue;
        R q = T::quotient(D(i, t), D(t, t));
        add_row_multiple(i, t, -q);
        if (!T::is_zero(D(i, t))) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (T::is_zero(D(t, j))) continue;
        R q = T::quotient(D(t, j), D(t, t));
        add_column_multiple(j, t, -q);
        if (!T::is_zero(D(t, j))) clean = false;
      }
      if (!clean) {
        // A remainder survived: bring the smallest one into the pivot slot.
        std::size_t bi = t, bj = t;
        for (std::size_t i = t + 1; i < m; ++i)
          if (!T::is_zero(D(i, t)) && T::smaller_magnitude(D(i, t), D(bi, bj))) bi = i, bj = t;
        for (std::size_t j = t + 1; j < n; ++j)
          if (!T::is_zero(D(t, j)) && T::smaller_magnitude(D(t, j), D(bi, bj))) bi = t, bj = j;
        swap_rows(t, bi);
        swap_columns(t, bj);
        continue;
      }
      if (T::is_unit(D(t, t))) return;
      // Enforce d_t | every entry of the trailing block.
      std::optional<std::size_t> offender;
      for (std::size_t i = t + 1; i < m && !offender; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (!T::is_zero(D(i, j)) && !T::divides(D(t, t), D(i, j))) {
            offender = i;
            break;
          }
      if (!offender) return;
      add_row_multiple(t, *offender, R(1));
    }
  }

  void add_row_multiple(std::size_t i, std::size_t j, const R& c) {
    out_.D.add_row_multiple(i, j, c);
    if (opts_.left) {
      out_.U.add_row_multiple(i, j, c);
      out_.U_inverse.add_column_multiple(j, i, -c);
    }
  }
  void add_column_multiple(std::size_t j, std::size_t i, const R& c) {
    out_.D.add_column_multiple(j, i, c);
    if (opts_.right) {
      out_.V.add_column_multiple(j, i, c);
      out_.V_inverse.add_row_multiple(i, j, -c);
    }
  }
  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    out_.D.swap_rows(i, j);
    if (opts_.left) {
      out_.U.swap_rows(i, j);
      out_.U_inverse.swap_columns(i, j);
    }
  }
  void swap_columns(std::size_t i, std::size_t j) {
    if (i == j) return;
    out_.D.swap_columns(i, j);
    if (opts_.right) {
      out_.V.swap_columns(i, j);
      out_.V_inverse.swap_rows(i, j);
    }
  }
  void negate_row(std::size_t i) {
    out_.D.negate_row(i);
    if (opts_.left) {
      out_.U.negate_row(i);
      out_.U_inverse.negate_column(i);
    }
  }

  SmithOptions opts_;
  SmithDecomposition<R> out_;
};

}  // namespace detail

/**
 * Smith normal form by elementary row and column operations.
 *
 * Pivoting picks the nonzero entry of smallest magnitude in the trailing
 * block (lowest row-major index on ties), so the transforms, and therefore
 * every generator derived from them, are reproducible for a fixed input.
 */
template <class R>
SmithDecomposition<R> smith_normal_form(Matrix<R> m, SmithOptions opts = {}) {
  return detail::SmithReducer<R>(std::move(m), opts).run();
}

/**
 * Solves A x = b for many right-hand sides with one Smith decomposition.
 */
template <class R>
class LinearSolver {
 public:
  explicit LinearSolver(const Matrix<R>& a) : rows_(a.rows()), snf_(smith_normal_form(a)) {}

  /// Some x with A x = b, or nullopt when the system has no solution over R.
  std::optional<Vector<R>> solve(const Vector<R>& b) const {
    if (b.size() != rows_) throw std::invalid_argument("LinearSolver::solve: right-hand side has the wrong length");
    Vector<R> y = snf_.U.apply(b);
    Vector<R> x(snf_.V.rows());
    for (std::size_t i = 0; i < y.size(); ++i) {
      if (i < snf_.rank) {
        if (!RingTraits<R>::divides(snf_.D(i, i), y[i])) return std::nullopt;
        x[i] = RingTraits<R>::quotient(y[i], snf_.D(i, i));
      } else if (!RingTraits<R>::is_zero(y[i])) {
        return std::nullopt;
      }
    }
    return snf_.V.apply(x);
  }

 private:
  std::size_t rows_;
  SmithDecomposition<R> snf_;
};

template <class R>
std::optional<Vector<R>> solve_linear(const Matrix<R>& a, const Vector<R>& b) {
  return LinearSolver<R>(a).solve(b);
}

}  // namespace eqhom
