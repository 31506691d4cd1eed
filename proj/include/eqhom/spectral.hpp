#pragma once

#include "eqhom/equivariant.hpp"

#include <string>
#include <vector>

namespace eqhom {

/**
 * E^2_{p,q} = H^{-p}(G, H_q(X, A(k))) for -depth <= p <= 0 and
 * 0 <= q <= dim X.
 */
class E2Page {
 public:
  E2Page() = default;
  E2Page(CoeffSystem coeff, int depth, int dimension) : coeff_(coeff), depth_(depth), dimension_(dimension) {
    table_.assign(static_cast<std::size_t>(depth + 1),
                  std::vector<FGAbelianGroup>(static_cast<std::size_t>(std::max(dimension + 1, 0))));
  }

  const CoeffSystem& coeff() const { return coeff_; }
  int depth() const { return depth_; }
  int dimension() const { return dimension_; }

  const FGAbelianGroup& at(int p, int q) const { return table_.at(static_cast<std::size_t>(-p)).at(static_cast<std::size_t>(q)); }
  void set(int p, int q, FGAbelianGroup g) { table_.at(static_cast<std::size_t>(-p)).at(static_cast<std::size_t>(q)) = std::move(g); }

  /// Columns p <= -1 repeat with period 2 over Z and period 1 over Z/2.
  bool periodic() const {
    const int period = coeff_.is_z2() ? 1 : 2;
    for (int p = -1; p - period >= -depth_; --p)
      for (int q = 0; q <= dimension_; ++q)
        if (!(at(p, q) == at(p - period, q))) return false;
    return true;
  }

  /// Rows q whose entries are not all zero.
  std::vector<int> nonzero_rows() const {
    std::vector<int> rows;
    for (int q = 0; q <= dimension_; ++q)
      for (int p = 0; p >= -depth_; --p)
        if (!at(p, q).is_trivial()) {
          rows.push_back(q);
          break;
        }
    return rows;
  }

 private:
  CoeffSystem coeff_;
  int depth_ = 0;
  int dimension_ = -1;
  std::vector<std::vector<FGAbelianGroup>> table_;
};

/// Default depth: dim X + 2.
inline E2Page e2_page(const EqSpace& x, const CoeffSystem& a, int depth = -1) {
  if (depth < 0) depth = std::max(x.dimension(), 0) + 2;
  E2Page page(a, depth, x.dimension());
  for (int q = 0; q <= x.dimension(); ++q) {
    GModule m = homology_module(x, a, q);
    for (int p = 0; p >= -depth; --p) page.set(p, q, group_cohomology(m, -p));
  }
  return page;
}

}  // namespace eqhom
