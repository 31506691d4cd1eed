#pragma once

#include "eqhom/gcomplex.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

namespace eqhom {

enum class Variance { homology, cohomology };

/// One summand of a total degree: chain degree q placed in column j, starting at `offset`.
struct TotalBlock {
  int column = 0;
  int chain_degree = 0;
  std::size_t offset = 0;
  std::size_t size = 0;
};

/**
 * Total complex of the double complex with rows (C_q(A(k)), ∂) and horizontal
 * maps 1 - σ, 1 + σ, 1 - σ, ... between columns 0, 1, 2, ...
 *
 * Homology side: total degree p collects C_{p+j} from every column j >= 0, so
 * p ranges over (-inf, dim X]; D_p : T_p -> T_{p-1} is (-1)^j ∂ on the
 * vertical and h_j = 1 - (-1)^j σ on the horizontal. Cohomology side: total
 * degree n collects C^{n-j} for 0 <= j <= n and D^n : T^n -> T^{n+1} uses
 * the transposed matrices. Over Z/2 all matrices are reduced mod 2. Any
 * degree can be requested; only the finitely many contributing columns are
 * assembled.
 */
class TotalComplex {
 public:
  TotalComplex() = default;
  TotalComplex(const GComplex& x, CoeffSystem a, Variance v = Variance::homology)
      : chains_(chain_complex(x, a)), variance_(v) {}
  TotalComplex(GChainComplex chains, Variance v) : chains_(std::move(chains)), variance_(v) {}

  const GChainComplex& chains() const { return chains_; }
  const CoeffSystem& coeff() const { return chains_.coeff; }
  Variance variance() const { return variance_; }
  int space_dimension() const { return chains_.dimension(); }

  std::vector<TotalBlock> blocks(int p) const {
    std::vector<TotalBlock> out;
    const int dim = space_dimension();
    std::size_t offset = 0;
    if (variance_ == Variance::homology) {
      for (int j = std::max(0, -p); p + j <= dim; ++j) {
        std::size_t n = chains_.rank(p + j);
        out.push_back({j, p + j, offset, n});
        offset += n;
      }
    } else {
      for (int j = 0; j <= p; ++j) {
        int q = p - j;
        if (q > dim) continue;
        std::size_t n = chains_.rank(q);
        out.push_back({j, q, offset, n});
        offset += n;
      }
    }
    return out;
  }

  std::size_t rank(int p) const {
    std::size_t n = 0;
    for (const auto& b : blocks(p)) n += b.size;
    return n;
  }

  /// Degree that the differential leaves from p.
  int next(int p) const { return variance_ == Variance::homology ? p - 1 : p + 1; }
  int previous(int p) const { return variance_ == Variance::homology ? p + 1 : p - 1; }

  std::optional<TotalBlock> block(int p, int column) const {
    for (const auto& b : blocks(p))
      if (b.column == column) return b;
    return std::nullopt;
  }

  /// D leaving degree p (to p - 1 for homology, p + 1 for cohomology).
  IntMatrix differential(int p) const {
    const int t = next(p);
    auto src = blocks(p);
    IntMatrix m(rank(t), rank(p));
    for (const auto& b : src) {
      const int sign = b.column % 2 == 0 ? 1 : -1;
      if (variance_ == Variance::homology) {
        if (auto v = block(t, b.column); v && b.chain_degree >= 1)
          m.set_block(v->offset, b.offset, chains_.d(b.chain_degree).scaled(sign));
        if (auto h = block(t, b.column + 1)) m.set_block(h->offset, b.offset, horizontal(b.column, b.chain_degree));
      } else {
        if (auto v = block(t, b.column); v && b.chain_degree + 1 <= space_dimension())
          m.set_block(v->offset, b.offset, chains_.d(b.chain_degree + 1).transpose().scaled(sign));
        if (auto h = block(t, b.column + 1))
          m.set_block(h->offset, b.offset, horizontal(b.column, b.chain_degree).transpose());
      }
    }
    return coeff().is_z2() ? reduce_mod2(std::move(m)) : m;
  }

  /// D arriving at degree p.
  IntMatrix incoming(int p) const { return differential(previous(p)); }

  /// H at total degree p; homology side: H_p(X; G, A(k)), cohomology side: H^p(X; G, A(k)).
  HomologyGroup homology(int p) const { return homology_at(incoming(p), differential(p), coeff().ring()); }

  /// Component of a total chain in a given column (empty if the column does not contribute).
  ChainVector column_part(const ChainVector& x, int p, int column) const {
    auto b = block(p, column);
    if (!b) return {};
    return ChainVector(x.begin() + static_cast<std::ptrdiff_t>(b->offset),
                       x.begin() + static_cast<std::ptrdiff_t>(b->offset + b->size));
  }

  /// Total chain with a single nonzero column.
  ChainVector embed_column(const ChainVector& part, int p, int column) const {
    ChainVector x(rank(p));
    auto b = block(p, column);
    if (!b || b->size != part.size()) throw std::logic_error("TotalComplex::embed_column: no such column");
    std::copy(part.begin(), part.end(), x.begin() + static_cast<std::ptrdiff_t>(b->offset));
    return x;
  }

 private:
  IntMatrix horizontal(int column, int q) const {
    IntMatrix s = chains_.s(q);
    IntMatrix h = IntMatrix::identity(s.rows());
    return column % 2 == 0 ? h - s : h + s;
  }

  GChainComplex chains_;
  Variance variance_ = Variance::homology;
};

/**
 * Maps a total chain of degree p through per-chain-degree matrices (a chain
 * map applied column by column). `src` and `tgt` must share variance.
 */
template <class F>
ChainVector map_columnwise(const TotalComplex& src, const TotalComplex& tgt, int p, const ChainVector& x, F&& per_degree) {
  ChainVector y(tgt.rank(p));
  for (const auto& b : src.blocks(p)) {
    auto t = tgt.block(p, b.column);
    if (!t) continue;
    IntMatrix m = per_degree(b.chain_degree);
    auto part = m.apply(src.column_part(x, p, b.column));
    std::copy(part.begin(), part.end(), y.begin() + static_cast<std::ptrdiff_t>(t->offset));
  }
  return tgt.coeff().is_z2() ? reduce_mod2(std::move(y)) : y;
}

/**
 * Column shift by `by` steps: homological total degree p to p - by, twist
 * k to k + by. Each single step multiplies column j by (-1)^j so that the
 * result is a cycle again. Over Z/2 the signs disappear.
 */
inline ChainVector shift_columns(const TotalComplex& src, const TotalComplex& tgt, int p, const ChainVector& x, int by) {
  ChainVector y(tgt.rank(p - by));
  for (const auto& b : src.blocks(p)) {
    auto t = tgt.block(p - by, b.column + by);
    if (!t) continue;
    int sign = 1;
    for (int step = 0; step < by; ++step)
      if ((b.column + step) % 2 != 0) sign = -sign;
    for (std::size_t i = 0; i < b.size; ++i) y[t->offset + i] = sign * x[b.offset + i];
  }
  return tgt.coeff().is_z2() ? reduce_mod2(std::move(y)) : y;
}

}  // namespace eqhom
