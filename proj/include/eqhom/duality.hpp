#pragma once

#include "eqhom/equivariant.hpp"

#include <vector>

namespace eqhom {

/// One comparison H^i(X; G, A(l)) vs H_{d-i}(X; G, A(k-l)).
struct PoincareEntry {
  int i = 0;
  int l = 0;
  FGAbelianGroup cohomology;
  FGAbelianGroup homology;

  bool match() const { return cohomology == homology; }
};

struct PoincareReport {
  Ring ring = Ring::Z;
  int dimension = 0;
  int twist = 0;  ///< parity k of the fundamental class
  std::vector<PoincareEntry> entries;

  bool ok() const {
    for (const auto& e : entries)
      if (!e.match()) return false;
    return true;
  }
};

/**
 * Compares isomorphism types for 0 <= i <= d + extra and l in {0, 1}.
 * Throws std::domain_error (from fundamental_class) when X carries no
 * fundamental class over the ring.
 */
inline PoincareReport poincare_check(const EqSpacePtr& x, Ring ring, int d, int extra = 4) {
  FundamentalClass fc = fundamental_class(x, ring, d);
  PoincareReport r;
  r.ring = ring;
  r.dimension = d;
  r.twist = fc.coeff.twist();
  for (int i = 0; i <= d + extra; ++i)
    for (int l : {0, 1}) {
      const CoeffSystem co = ring == Ring::Z2 ? CoeffSystem::z2() : CoeffSystem::integral(l);
      const CoeffSystem ho = ring == Ring::Z2 ? CoeffSystem::z2() : CoeffSystem::integral(r.twist - l);
      r.entries.push_back({i, l, eq_cohomology(*x, co, i), eq_homology(*x, ho, d - i)});
    }
  return r;
}

}  // namespace eqhom
