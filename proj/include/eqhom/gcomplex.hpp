#pragma once

#include "eqhom/homology.hpp"

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace eqhom {

/// Sorted list of distinct vertex ids.
using Simplex = std::vector<int>;

inline std::string simplex_to_string(const Simplex& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(s[i]);
  }
  return out + "}";
}

/// Sign of the permutation that sorts `v` (distinct entries).
inline int sorting_sign(std::vector<int> v) {
  int sign = 1;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j)
      if (v[j] < v[i]) sign = -sign;
  return sign;
}

/**
 * Coefficient system A(k): Z/2, Z with trivial action, or Z with the sign
 * action. The twist parity is forced to 0 for Z/2, so exactly three values
 * exist.
 */
class CoeffSystem {
 public:
  CoeffSystem() = default;

  static CoeffSystem z2() { return CoeffSystem(Ring::Z2, 0); }
  static CoeffSystem integral(int twist) { return CoeffSystem(Ring::Z, twist); }

  /// "Z2", "Z", "Z1"
  static CoeffSystem parse(const std::string& name) {
    if (name == "Z2") return z2();
    if (name == "Z") return integral(0);
    if (name == "Z1") return integral(1);
    throw std::invalid_argument("unknown coefficient system '" + name + "' (expected Z2, Z or Z1)");
  }

  Ring ring() const { return ring_; }
  int twist() const { return twist_; }
  bool is_z2() const { return ring_ == Ring::Z2; }

  /// (-1)^k, always 1 over Z/2.
  int sign() const { return twist_ == 0 ? 1 : -1; }

  /// A(k + by)
  CoeffSystem shifted(int by) const { return is_z2() ? *this : integral(twist_ + by); }

  std::string name() const {
    if (is_z2()) return "Z2";
    return twist_ == 0 ? "Z" : "Z1";
  }

  friend bool operator==(const CoeffSystem& a, const CoeffSystem& b) {
    return a.ring_ == b.ring_ && a.twist_ == b.twist_;
  }

 private:
  CoeffSystem(Ring ring, int twist) : ring_(ring), twist_(ring == Ring::Z2 ? 0 : ((twist % 2) + 2) % 2) {}

  Ring ring_ = Ring::Z;
  int twist_ = 0;
};

/**
 * Finite simplicial complex with a simplicial vertex involution.
 *
 * The face closure of the given maximal simplices is computed once; every
 * vertex 0..n-1 is a 0-simplex even if no listed simplex mentions it.
 * Simplices of each dimension are kept in lexicographic order, which fixes
 * the chain bases used everywhere else. The constructor only rejects input it
 * cannot even store; the remaining invariants are checked by validate().
 */
class GComplex {
 public:
  GComplex() = default;

  GComplex(std::size_t vertex_count, std::vector<std::vector<int>> maximal_simplices, std::vector<int> involution)
      : vertex_count_(vertex_count), maximal_(std::move(maximal_simplices)), involution_(std::move(involution)) {
    std::set<Simplex> all;
    for (std::size_t v = 0; v < vertex_count_; ++v) all.insert(Simplex{static_cast<int>(v)});
    for (const auto& raw : maximal_) {
      Simplex s = raw;
      std::sort(s.begin(), s.end());
      s.erase(std::unique(s.begin(), s.end()), s.end());
      if (s.empty()) continue;
      const std::size_t k = s.size();
      for (std::size_t mask = 1; mask < (std::size_t{1} << k); ++mask) {
        Simplex face;
        for (std::size_t i = 0; i < k; ++i)
          if (mask & (std::size_t{1} << i)) face.push_back(s[i]);
        all.insert(std::move(face));
      }
    }
    for (auto& s : all) {
      std::size_t q = s.size() - 1;
      if (simplices_.size() <= q) simplices_.resize(q + 1);
      simplices_[q].push_back(s);
    }
    index_.resize(simplices_.size());
    for (std::size_t q = 0; q < simplices_.size(); ++q)
      for (std::size_t i = 0; i < simplices_[q].size(); ++i) index_[q].emplace(simplices_[q][i], i);
  }

  /// Same vertex set and simplices, identity involution.
  static GComplex with_trivial_action(std::size_t vertex_count, std::vector<std::vector<int>> maximal) {
    std::vector<int> id(vertex_count);
    for (std::size_t v = 0; v < vertex_count; ++v) id[v] = static_cast<int>(v);
    return GComplex(vertex_count, std::move(maximal), std::move(id));
  }

  std::size_t vertex_count() const { return vertex_count_; }
  const std::vector<std::vector<int>>& maximal_simplices() const { return maximal_; }
  const std::vector<int>& involution() const { return involution_; }

  bool is_empty() const { return vertex_count_ == 0; }
  /// -1 for the empty complex.
  int dimension() const { return static_cast<int>(simplices_.size()) - 1; }

  std::size_t count(int q) const {
    return (q < 0 || q > dimension()) ? 0 : simplices_[static_cast<std::size_t>(q)].size();
  }
  const std::vector<Simplex>& simplices(int q) const {
    static const std::vector<Simplex> none;
    return (q < 0 || q > dimension()) ? none : simplices_[static_cast<std::size_t>(q)];
  }
  std::size_t simplex_count() const {
    std::size_t n = 0;
    for (const auto& layer : simplices_) n += layer.size();
    return n;
  }

  std::optional<std::size_t> index_of(const Simplex& s) const {
    if (s.empty() || s.size() > simplices_.size()) return std::nullopt;
    const auto& idx = index_[s.size() - 1];
    auto it = idx.find(s);
    if (it == idx.end()) return std::nullopt;
    return it->second;
  }

  bool contains(const Simplex& s) const { return index_of(s).has_value(); }

  /// Vertex images of s under the involution, in the order of s.
  std::vector<int> image_vertices(const Simplex& s) const {
    std::vector<int> out;
    out.reserve(s.size());
    for (int v : s) out.push_back(involution_[static_cast<std::size_t>(v)]);
    return out;
  }
  Simplex image(const Simplex& s) const {
    auto out = image_vertices(s);
    std::sort(out.begin(), out.end());
    return out;
  }

  long euler_characteristic() const {
    long chi = 0;
    for (std::size_t q = 0; q < simplices_.size(); ++q)
      chi += (q % 2 == 0 ? 1 : -1) * static_cast<long>(simplices_[q].size());
    return chi;
  }

  bool has_trivial_action() const {
    for (std::size_t v = 0; v < involution_.size(); ++v)
      if (involution_[v] != static_cast<int>(v)) return false;
    return true;
  }

 private:
  std::size_t vertex_count_ = 0;
  std::vector<std::vector<int>> maximal_;
  std::vector<int> involution_;
  std::vector<std::vector<Simplex>> simplices_;
  std::vector<std::map<Simplex, std::size_t>> index_;
};

struct ValidationReport {
  bool ok = true;
  bool regularity_only = false;  ///< every other invariant holds; barycentric subdivision repairs it
  std::string message;
  std::optional<Simplex> simplex;
};

/**
 * Checks the involution (length, range, order two), vertex ids of the
 * maximal simplices, that simplices go to simplices, and regularity
 * (a setwise-fixed simplex is fixed vertexwise). The first failure wins;
 * simplices are scanned by dimension, then lexicographically.
 */
inline ValidationReport validate(const GComplex& x) {
  auto fail = [](std::string msg, std::optional<Simplex> s = std::nullopt) {
    ValidationReport r;
    r.ok = false;
    r.message = std::move(msg);
    r.simplex = std::move(s);
    return r;
  };
  const std::size_t n = x.vertex_count();
  const auto& inv = x.involution();
  if (inv.size() != n)
    return fail("involution lists " + std::to_string(inv.size()) + " images for " + std::to_string(n) + " vertices");
  for (std::size_t v = 0; v < n; ++v)
    if (inv[v] < 0 || static_cast<std::size_t>(inv[v]) >= n)
      return fail("involution sends vertex " + std::to_string(v) + " outside the vertex range", Simplex{static_cast<int>(v)});
  for (std::size_t v = 0; v < n; ++v)
    if (inv[static_cast<std::size_t>(inv[v])] != static_cast<int>(v))
      return fail("involution does not square to the identity at vertex " + std::to_string(v), Simplex{static_cast<int>(v)});
  for (std::size_t i = 0; i < x.maximal_simplices().size(); ++i) {
    const auto& s = x.maximal_simplices()[i];
    if (s.empty()) return fail("simplex " + std::to_string(i) + " is empty");
    for (int v : s)
      if (v < 0 || static_cast<std::size_t>(v) >= n)
        return fail("simplex " + std::to_string(i) + " uses vertex " + std::to_string(v) + " outside the vertex range");
    Simplex sorted = s;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      return fail("simplex " + std::to_string(i) + " repeats a vertex", sorted);
  }
  for (int q = 0; q <= x.dimension(); ++q)
    for (const auto& s : x.simplices(q))
      if (!x.contains(x.image(s))) return fail("image of simplex " + simplex_to_string(s) + " is not a simplex", s);
  for (int q = 0; q <= x.dimension(); ++q)
    for (const auto& s : x.simplices(q)) {
      if (x.image(s) != s) continue;
      if (x.image_vertices(s) != s) {
        auto r = fail("simplex " + simplex_to_string(s) + " is fixed setwise but not vertexwise", s);
        r.regularity_only = true;
        return r;
      }
    }
  return {};
}

/**
 * Barycentric subdivision. New vertex i is the barycenter of the i-th simplex
 * of the input in (dimension, lexicographic) order; new simplices are the
 * maximal flags. The involution acts on barycenters.
 */
inline GComplex barycentric_subdivide(const GComplex& x) {
  std::vector<std::size_t> offset(static_cast<std::size_t>(x.dimension() + 2), 0);
  for (int q = 0; q <= x.dimension(); ++q) offset[q + 1] = offset[q] + x.count(q);
  auto id = [&](const Simplex& s) { return static_cast<int>(offset[s.size() - 1] + *x.index_of(s)); };

  const std::size_t n = offset.back();
  std::vector<int> involution(n);
  for (int q = 0; q <= x.dimension(); ++q)
    for (const auto& s : x.simplices(q)) involution[static_cast<std::size_t>(id(s))] = id(x.image(s));

  // Maximal flags: start at each simplex without a proper coface, strip one vertex at a time.
  std::set<Simplex> has_coface;
  for (int q = 1; q <= x.dimension(); ++q)
    for (const auto& s : x.simplices(q))
      for (std::size_t i = 0; i < s.size(); ++i) {
        Simplex f = s;
        f.erase(f.begin() + static_cast<std::ptrdiff_t>(i));
        has_coface.insert(f);
      }
  std::vector<std::vector<int>> flags;
  std::vector<int> chain;
  std::function<void(const Simplex&)> descend = [&](const Simplex& s) {
    chain.push_back(id(s));
    if (s.size() == 1) {
      flags.push_back(chain);
    } else {
      for (std::size_t i = 0; i < s.size(); ++i) {
        Simplex f = s;
        f.erase(f.begin() + static_cast<std::ptrdiff_t>(i));
        descend(f);
      }
    }
    chain.pop_back();
  };
  for (int q = 0; q <= x.dimension(); ++q)
    for (const auto& s : x.simplices(q))
      if (!has_coface.count(s)) descend(s);
  return GComplex(n, std::move(flags), std::move(involution));
}

/**
 * Equivariant simplicial map, given on vertices. Simplices may collapse;
 * collapsed simplices contribute zero to the chain map.
 */
class GMap {
 public:
  GMap() = default;
  GMap(GComplex source, GComplex target, std::vector<int> vertex_map, std::string name = "")
      : source_(std::move(source)), target_(std::move(target)), map_(std::move(vertex_map)), name_(std::move(name)) {
    check();
  }

  const GComplex& source() const { return source_; }
  const GComplex& target() const { return target_; }
  const std::vector<int>& vertex_map() const { return map_; }
  const std::string& name() const { return name_; }

  /// Chain map C_q(source) -> C_q(target), ascending orientations on both sides.
  IntMatrix chain_map(int q) const {
    IntMatrix m(target_.count(q), source_.count(q));
    const auto& src = source_.simplices(q);
    for (std::size_t j = 0; j < src.size(); ++j) {
      std::vector<int> img;
      for (int v : src[j]) img.push_back(map_[static_cast<std::size_t>(v)]);
      Simplex sorted = img;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) continue;
      m(*target_.index_of(sorted), j) = sorting_sign(img);
    }
    return m;
  }

 private:
  void check() const {
    if (map_.size() != source_.vertex_count()) throw std::invalid_argument("GMap: vertex map has the wrong length");
    for (std::size_t v = 0; v < map_.size(); ++v) {
      if (map_[v] < 0 || static_cast<std::size_t>(map_[v]) >= target_.vertex_count())
        throw std::invalid_argument("GMap: vertex image out of range");
      int lhs = map_[static_cast<std::size_t>(source_.involution()[v])];
      int rhs = target_.involution()[static_cast<std::size_t>(map_[v])];
      if (lhs != rhs) throw std::invalid_argument("GMap: map does not commute with the involutions at vertex " + std::to_string(v));
    }
    for (int q = 0; q <= source_.dimension(); ++q)
      for (const auto& s : source_.simplices(q)) {
        Simplex img;
        for (int v : s) img.push_back(map_[static_cast<std::size_t>(v)]);
        std::sort(img.begin(), img.end());
        img.erase(std::unique(img.begin(), img.end()), img.end());
        if (!target_.contains(img))
          throw std::invalid_argument("GMap: image of " + simplex_to_string(s) + " is not a simplex");
      }
  }

  GComplex source_, target_;
  std::vector<int> map_;
  std::string name_;
};

/// Fixed points X^G as a complex with trivial involution; vertex i of the result is the i-th fixed vertex.
inline GComplex fixed_subcomplex(const GComplex& x) {
  std::vector<int> new_id(x.vertex_count(), -1);
  std::size_t m = 0;
  for (std::size_t v = 0; v < x.vertex_count(); ++v)
    if (x.involution()[v] == static_cast<int>(v)) new_id[v] = static_cast<int>(m++);
  std::vector<std::vector<int>> simplices;
  for (int q = 1; q <= x.dimension(); ++q)
    for (const auto& s : x.simplices(q)) {
      if (x.image_vertices(s) != s) continue;
      std::vector<int> t;
      for (int v : s) t.push_back(new_id[static_cast<std::size_t>(v)]);
      simplices.push_back(std::move(t));
    }
  return GComplex::with_trivial_action(m, std::move(simplices));
}

/// The inclusion X^G -> X.
inline GMap fixed_inclusion(const GComplex& x) {
  std::vector<int> map;
  for (std::size_t v = 0; v < x.vertex_count(); ++v)
    if (x.involution()[v] == static_cast<int>(v)) map.push_back(static_cast<int>(v));
  return GMap(fixed_subcomplex(x), x, std::move(map), "fixed-inclusion");
}

inline GComplex point_complex() { return GComplex::with_trivial_action(1, {}); }

/// The constant map X -> pt.
inline GMap constant_map(const GComplex& x) {
  return GMap(x, point_complex(), std::vector<int>(x.vertex_count(), 0), "constant");
}

inline GMap identity_map(const GComplex& x) {
  std::vector<int> id(x.vertex_count());
  for (std::size_t v = 0; v < id.size(); ++v) id[v] = static_cast<int>(v);
  return GMap(x, x, std::move(id), "identity");
}

/// Disjoint union; vertices of b are shifted past those of a.
inline GComplex disjoint_union(const GComplex& a, const GComplex& b) {
  const int shift = static_cast<int>(a.vertex_count());
  auto simplices = a.maximal_simplices();
  for (auto s : b.maximal_simplices()) {
    for (int& v : s) v += shift;
    simplices.push_back(std::move(s));
  }
  auto inv = a.involution();
  for (int v : b.involution()) inv.push_back(v + shift);
  return GComplex(a.vertex_count() + b.vertex_count(), std::move(simplices), std::move(inv));
}

/**
 * Simplicial chain complex of X with coefficients A(k) and the diagonal
 * involution. boundary[q] : C_q -> C_{q-1}; sigma[q] : C_q -> C_q carries the
 * orientation sign of the vertex permutation times (-1)^k. Over Z/2 the
 * entries are reduced mod 2.
 */
struct GChainComplex {
  CoeffSystem coeff;
  std::vector<IntMatrix> boundary;
  std::vector<IntMatrix> sigma;

  int dimension() const { return static_cast<int>(boundary.size()) - 1; }
  std::size_t rank(int q) const { return (q < 0 || q > dimension()) ? 0 : sigma[static_cast<std::size_t>(q)].rows(); }

  /// ∂_q with the conventions C_{-1} = 0 and C_q = 0 beyond the dimension.
  IntMatrix d(int q) const {
    if (q < 0 || q > dimension()) return IntMatrix(rank(q - 1), rank(q));
    return boundary[static_cast<std::size_t>(q)];
  }
  IntMatrix s(int q) const {
    if (q < 0 || q > dimension()) return IntMatrix(0, 0);
    return sigma[static_cast<std::size_t>(q)];
  }
};

inline IntMatrix boundary_matrix(const GComplex& x, int q) {
  IntMatrix m(x.count(q - 1), x.count(q));
  if (q <= 0) return m;
  const auto& cells = x.simplices(q);
  for (std::size_t j = 0; j < cells.size(); ++j)
    for (std::size_t i = 0; i < cells[j].size(); ++i) {
      Simplex f = cells[j];
      f.erase(f.begin() + static_cast<std::ptrdiff_t>(i));
      m(*x.index_of(f), j) = (i % 2 == 0) ? 1 : -1;
    }
  return m;
}

inline IntMatrix involution_matrix(const GComplex& x, int q, int twist_sign = 1) {
  IntMatrix m(x.count(q), x.count(q));
  const auto& cells = x.simplices(q);
  for (std::size_t j = 0; j < cells.size(); ++j) {
    auto img = x.image_vertices(cells[j]);
    int sign = sorting_sign(img) * twist_sign;
    std::sort(img.begin(), img.end());
    m(*x.index_of(img), j) = sign;
  }
  return m;
}

inline GChainComplex chain_complex(const GComplex& x, const CoeffSystem& a) {
  GChainComplex c;
  c.coeff = a;
  for (int q = 0; q <= x.dimension(); ++q) {
    IntMatrix d = boundary_matrix(x, q), s = involution_matrix(x, q, a.sign());
    if (a.is_z2()) {
      d = reduce_mod2(std::move(d));
      s = reduce_mod2(std::move(s));
    }
    c.boundary.push_back(std::move(d));
    c.sigma.push_back(std::move(s));
  }
  return c;
}

/// Ordinary homology H_q(X, A).
inline HomologyGroup ordinary_homology(const GChainComplex& c, int q) {
  return homology_at(c.d(q + 1), c.d(q), c.coeff.ring());
}

/// Action of the involution on H_q(X, A(k)).
inline GroupHom involution_on_homology(const GChainComplex& c, const HomologyGroup& h, int q) {
  return induced_hom(c.s(q), h, h);
}

}  // namespace eqhom
