#pragma once

#include "eqhom/group_hom.hpp"

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace eqhom {

enum class Ring { Z, Z2 };

/**
 * Homology of a chain complex at one spot, ker(d_out) / im(d_in), over Z or
 * over Z/2. Chains cross this interface as integer vectors; with Z/2
 * coefficients they are reduced mod 2 on the way in.
 */
class HomologyGroup {
 public:
  HomologyGroup() = default;
  explicit HomologyGroup(Subquotient<Integer> q) : impl_(std::move(q)) {}
  explicit HomologyGroup(Subquotient<Mod2> q) : impl_(std::move(q)) {}

  Ring ring() const { return impl_.index() == 0 ? Ring::Z : Ring::Z2; }

  const FGAbelianGroup& group() const {
    return std::visit([](const auto& q) -> const FGAbelianGroup& { return q.group(); }, impl_);
  }
  std::size_t ambient_dim() const {
    return std::visit([](const auto& q) { return q.ambient_dim(); }, impl_);
  }
  const ChainVector& generator(std::size_t i) const {
    return std::visit([i](const auto& q) -> const ChainVector& { return q.generator(i); }, impl_);
  }
  const std::vector<ChainVector>& generators() const {
    return std::visit([](const auto& q) -> const std::vector<ChainVector>& { return q.generators(); }, impl_);
  }

  /// Normalized class coordinates; nullopt if `chain` is not a cycle.
  std::optional<std::vector<Integer>> coordinates(const ChainVector& chain) const {
    if (const auto* z = std::get_if<Subquotient<Integer>>(&impl_)) return z->coordinates(chain);
    return std::get<Subquotient<Mod2>>(impl_).coordinates(convert<Mod2>(chain));
  }

  std::vector<Integer> coordinates_or_throw(const ChainVector& chain, const char* what) const {
    auto c = coordinates(chain);
    if (!c) throw std::logic_error(std::string(what) + ": chain is not a cycle");
    return *c;
  }

  bool is_cycle(const ChainVector& chain) const { return coordinates(chain).has_value(); }
  bool is_boundary(const ChainVector& chain) const {
    auto c = coordinates(chain);
    return c && is_zero_vector(*c);
  }

  /// Generators of the boundary subgroup, as integer chains.
  std::vector<ChainVector> boundary_generators() const {
    return std::visit(
        [](const auto& q) {
          std::vector<ChainVector> out;
          const auto& b = q.boundary_generators();
          for (std::size_t j = 0; j < b.cols(); ++j) out.push_back(convert<Integer>(b.column(j)));
          return out;
        },
        impl_);
  }

  /// The class of sum_i coords[i] * generator(i), as a chain.
  ChainVector chain_from_coordinates(const std::vector<Integer>& coords) const {
    ChainVector out(ambient_dim());
    for (std::size_t i = 0; i < coords.size(); ++i) {
      if (coords[i].is_zero()) continue;
      const auto& g = generator(i);
      for (std::size_t k = 0; k < out.size(); ++k) out[k] += coords[i] * g[k];
    }
    return ring() == Ring::Z2 ? reduce_mod2(std::move(out)) : out;
  }

 private:
  std::variant<Subquotient<Integer>, Subquotient<Mod2>> impl_;
};

template <class R>
Subquotient<R> homology_at(const Matrix<R>& d_in, const Matrix<R>& d_out) {
  if (d_in.rows() != d_out.cols())
    throw std::invalid_argument("homology_at: d_in and d_out do not meet in the same chain group");
  if (d_in.cols() > 0 && d_out.rows() > 0 && !(d_out * d_in).is_zero())
    throw std::invalid_argument("homology_at: d_out * d_in != 0");
  return Subquotient<R>(Lattice<R>::kernel_of(d_out), d_in);
}

/**
 * ker(d_out) / im(d_in) for integer differentials, computed over `ring`.
 * With Ring::Z2 the matrices are reduced mod 2 first.
 */
inline HomologyGroup homology_at(const IntMatrix& d_in, const IntMatrix& d_out, Ring ring) {
  if (ring == Ring::Z) return HomologyGroup(homology_at<Integer>(d_in, d_out));
  return HomologyGroup(homology_at<Mod2>(convert<Mod2>(d_in), convert<Mod2>(d_out)));
}

/**
 * Homomorphism on homology defined by a rule on cycles.
 *
 * `image_of` receives a generator lift of `src` and must return a cycle of
 * `tgt`. Well-definedness is checked: boundaries of `src` must land in
 * boundaries of `tgt`.
 */
inline GroupHom hom_from_cycle_map(const HomologyGroup& src, const HomologyGroup& tgt,
                                   const std::function<ChainVector(const ChainVector&)>& image_of,
                                   const char* what = "hom_from_cycle_map") {
  const auto& s = src.group();
  const auto& t = tgt.group();
  IntMatrix m(t.generator_count(), s.generator_count());
  for (std::size_t j = 0; j < s.generator_count(); ++j) {
    auto c = tgt.coordinates(image_of(src.generator(j)));
    if (!c) throw std::logic_error(std::string(what) + ": image of a generator is not a cycle in the target");
    for (std::size_t i = 0; i < c->size(); ++i) m(i, j) = (*c)[i];
  }
  for (const auto& b : src.boundary_generators())
    if (!tgt.is_boundary(image_of(b)))
      throw std::logic_error(std::string(what) + ": a boundary is not mapped to a boundary");
  return GroupHom(s, t, std::move(m));
}

/**
 * Map on homology induced by a chain map (rows: target chains, columns:
 * source chains). Rejects maps that send a cycle outside the target cycles or
 * a boundary outside the target boundaries.
 */
inline GroupHom induced_hom(const IntMatrix& chain_map, const HomologyGroup& src, const HomologyGroup& tgt) {
  if (chain_map.cols() != src.ambient_dim() || chain_map.rows() != tgt.ambient_dim())
    throw std::invalid_argument("induced_hom: chain map shape does not match the complexes");
  return hom_from_cycle_map(
      src, tgt, [&](const ChainVector& x) { return chain_map.apply(x); }, "induced_hom");
}

}  // namespace eqhom
