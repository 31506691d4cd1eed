#pragma once

#include "eqhom/smith.hpp"

#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace eqhom {

/**
 * Finitely generated abelian group Z^free_rank + Z/d_1 + ... + Z/d_t with
 * 2 <= d_1 | d_2 | ... | d_t.
 *
 * Coordinates of an element are ordered torsion first (in the order of the
 * invariant factors), then the free part. Two groups compare equal iff their
 * isomorphism types agree; the optional ambient generator lifts are carried
 * for reporting and never take part in comparisons.
 */
class FGAbelianGroup {
 public:
  FGAbelianGroup() = default;

  FGAbelianGroup(std::size_t free_rank, std::vector<Integer> torsion)
      : free_rank_(free_rank), torsion_(std::move(torsion)) {
    for (std::size_t i = 0; i < torsion_.size(); ++i) {
      if (torsion_[i] < 2) throw std::invalid_argument("FGAbelianGroup: invariant factor below 2");
      if (i > 0 && !(torsion_[i] % torsion_[i - 1]).is_zero())
        throw std::invalid_argument("FGAbelianGroup: invariant factors must form a divisibility chain");
    }
  }

  /// Normalizes an arbitrary list of cyclic orders (0 = infinite cyclic, 1 = trivial).
  static FGAbelianGroup from_cyclic_orders(const std::vector<Integer>& orders) {
    IntMatrix diag(orders.size(), orders.size());
    for (std::size_t i = 0; i < orders.size(); ++i) diag(i, i) = orders[i];
    auto snf = smith_normal_form(std::move(diag), {false, false});
    std::vector<Integer> torsion;
    for (std::size_t i = 0; i < snf.rank; ++i)
      if (snf.D(i, i) > 1) torsion.push_back(snf.D(i, i));
    return FGAbelianGroup(orders.size() - snf.rank, std::move(torsion));
  }

  static FGAbelianGroup free_abelian(std::size_t rank) { return FGAbelianGroup(rank, {}); }
  static FGAbelianGroup elementary(std::size_t rank, const Integer& p = 2) {
    return FGAbelianGroup(0, std::vector<Integer>(rank, p));
  }

  std::size_t free_rank() const { return free_rank_; }
  const std::vector<Integer>& torsion() const { return torsion_; }
  std::size_t generator_count() const { return torsion_.size() + free_rank_; }

  /// Order of the i-th coordinate generator; 0 for a free generator.
  Integer coordinate_order(std::size_t i) const { return i < torsion_.size() ? torsion_[i] : Integer(0); }

  bool is_trivial() const { return generator_count() == 0; }
  bool is_finite() const { return free_rank_ == 0; }

  Integer order() const {
    if (!is_finite()) throw std::domain_error("FGAbelianGroup::order: infinite group");
    Integer o = 1;
    for (const auto& d : torsion_) o *= d;
    return o;
  }

  /// Number of cyclic factors when the group is an F_2-vector space.
  std::size_t f2_dimension() const {
    if (!is_elementary_2group()) throw std::domain_error("FGAbelianGroup::f2_dimension: not an elementary 2-group");
    return torsion_.size();
  }
  bool is_elementary_2group() const {
    if (free_rank_ != 0) return false;
    for (const auto& d : torsion_)
      if (d != 2) return false;
    return true;
  }

  /// Normalized coordinate vector: torsion entries reduced into [0, d).
  std::vector<Integer> normalize(std::vector<Integer> coords) const {
    if (coords.size() != generator_count()) throw std::invalid_argument("FGAbelianGroup::normalize: wrong length");
    for (std::size_t i = 0; i < torsion_.size(); ++i) coords[i] = mod_floor(coords[i], torsion_[i]);
    return coords;
  }

  /// Relation lattice generators: d_i * e_i for each torsion coordinate.
  IntMatrix relations() const {
    IntMatrix r(generator_count(), torsion_.size());
    for (std::size_t i = 0; i < torsion_.size(); ++i) r(i, i) = torsion_[i];
    return r;
  }

  const std::vector<ChainVector>& generator_lifts() const { return lifts_; }
  void set_generator_lifts(std::vector<ChainVector> lifts) { lifts_ = std::move(lifts); }

  /// "0", "Z", "Z^2 + Z/2 + Z/4", ...
  std::string to_string() const {
    if (is_trivial()) return "0";
    std::ostringstream os;
    bool first = true;
    auto sep = [&] {
      if (!first) os << " + ";
      first = false;
    };
    if (free_rank_ > 0) {
      sep();
      os << "Z";
      if (free_rank_ > 1) os << '^' << free_rank_;
    }
    for (std::size_t i = 0; i < torsion_.size();) {
      std::size_t j = i;
      while (j < torsion_.size() && torsion_[j] == torsion_[i]) ++j;
      sep();
      os << "Z/" << torsion_[i];
      if (j - i > 1) os << '^' << (j - i);
      i = j;
    }
    return os.str();
  }

  friend bool operator==(const FGAbelianGroup& a, const FGAbelianGroup& b) {
    return a.free_rank_ == b.free_rank_ && a.torsion_ == b.torsion_;
  }

 private:
  std::size_t free_rank_ = 0;
  std::vector<Integer> torsion_;
  std::vector<ChainVector> lifts_;
};

inline std::ostream& operator<<(std::ostream& os, const FGAbelianGroup& g) { return os << g.to_string(); }

/// Isomorphism type of a direct sum.
inline FGAbelianGroup direct_sum_isomorphism_type(const std::vector<FGAbelianGroup>& parts) {
  std::vector<Integer> orders;
  for (const auto& g : parts)
    for (std::size_t i = 0; i < g.generator_count(); ++i) orders.push_back(g.coordinate_order(i));
  return FGAbelianGroup::from_cyclic_orders(orders);
}

}  // namespace eqhom
