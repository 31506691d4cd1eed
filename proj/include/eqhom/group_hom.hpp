#pragma once

#include "eqhom/lattice.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace eqhom {

/**
 * Homomorphism between finitely generated abelian groups, written as an
 * integer matrix on the coordinate generators (column j = image of the j-th
 * source generator). Entries are kept normalized modulo the target torsion.
 */
class GroupHom {
 public:
  GroupHom() = default;

  GroupHom(FGAbelianGroup source, FGAbelianGroup target, IntMatrix matrix)
      : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
    if (matrix_.rows() != target_.generator_count() || matrix_.cols() != source_.generator_count())
      throw std::invalid_argument("GroupHom: matrix shape does not match the groups");
    for (std::size_t j = 0; j < matrix_.cols(); ++j) {
      auto col = target_.normalize(matrix_.column(j));
      for (std::size_t i = 0; i < col.size(); ++i) matrix_(i, j) = col[i];
    }
    check_torsion();
  }

  static GroupHom identity(const FGAbelianGroup& g) {
    return GroupHom(g, g, IntMatrix::identity(g.generator_count()));
  }
  static GroupHom zero(const FGAbelianGroup& source, const FGAbelianGroup& target) {
    return GroupHom(source, target, IntMatrix(target.generator_count(), source.generator_count()));
  }

  const FGAbelianGroup& source() const { return source_; }
  const FGAbelianGroup& target() const { return target_; }
  const IntMatrix& matrix() const { return matrix_; }

  std::vector<Integer> apply(const std::vector<Integer>& coords) const {
    return target_.normalize(matrix_.apply(coords));
  }

  bool is_zero() const { return matrix_.is_zero(); }

  /// Source coordinates of some x with f(x) = y, or nullopt when y is not in the image.
  std::optional<std::vector<Integer>> preimage(const std::vector<Integer>& y) const {
    auto u = solve_linear(hstack(matrix_, target_.relations()), y);
    if (!u) return std::nullopt;
    u->resize(source_.generator_count());
    return source_.normalize(std::move(*u));
  }

  /// {x in Z^src : F x in relations(target)}; contains relations(source).
  Lattice<Integer> kernel_lattice() const {
    const std::size_t n = source_.generator_count();
    IntMatrix rel = target_.relations();
    auto k = Lattice<Integer>::kernel_of(hstack(matrix_, rel));
    IntMatrix gens = k.basis().block(0, 0, n, k.rank());
    return Lattice<Integer>::span_of(hstack(gens, source_.relations()));
  }

  /// F Z^src + relations(target).
  Lattice<Integer> image_lattice() const { return lattice_sum(matrix_, target_.relations()); }

  FGAbelianGroup kernel() const { return Subquotient<Integer>(kernel_lattice(), source_.relations()).group(); }
  FGAbelianGroup image() const { return Subquotient<Integer>(image_lattice(), target_.relations()).group(); }
  FGAbelianGroup cokernel() const {
    IntMatrix im = hstack(matrix_, target_.relations());
    return Subquotient<Integer>(Lattice<Integer>::whole(target_.generator_count()), im).group();
  }

  bool is_injective() const { return Lattice<Integer>::span_of(source_.relations()).contains(kernel_lattice()); }
  bool is_surjective() const { return image_lattice().contains(Lattice<Integer>::whole(target_.generator_count())); }
  bool is_isomorphism() const { return is_injective() && is_surjective(); }

  /// this ∘ inner
  GroupHom after(const GroupHom& inner) const {
    if (!(inner.target_ == source_)) throw std::invalid_argument("GroupHom::after: groups do not compose");
    return GroupHom(inner.source_, target_, matrix_ * inner.matrix_);
  }

  friend bool operator==(const GroupHom& a, const GroupHom& b) {
    return a.source_ == b.source_ && a.target_ == b.target_ && a.matrix_ == b.matrix_;
  }

 private:
  void check_torsion() const {
    for (std::size_t j = 0; j < source_.torsion().size(); ++j) {
      const Integer& d = source_.torsion()[j];
      for (std::size_t i = 0; i < matrix_.rows(); ++i) {
        Integer v = d * matrix_(i, j);
        Integer e = target_.coordinate_order(i);
        bool ok = e.is_zero() ? v.is_zero() : (v % e).is_zero();
        if (!ok) throw std::invalid_argument("GroupHom: image of a torsion generator has the wrong order");
      }
    }
  }

  FGAbelianGroup source_, target_;
  IntMatrix matrix_;
};

/// Sublattice of Z^n (coordinates of g) representing the subgroup H ⊆ g:
/// generators of H plus the relations of g.
inline Lattice<Integer> subgroup_lattice(const FGAbelianGroup& g, const IntMatrix& generators) {
  return lattice_sum(generators, g.relations());
}

/// im(in) == ker(out) at the middle group. Throws if the maps do not compose.
inline bool is_exact_at(const GroupHom& in, const GroupHom& out) {
  if (!(in.target() == out.source())) throw std::invalid_argument("is_exact_at: maps do not compose");
  return in.image_lattice() == out.kernel_lattice();
}

}  // namespace eqhom
