#pragma once

#include "eqhom/gcomplex.hpp"

#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace eqhom {

/**
 * A catalogued G-complex together with what is known about it by
 * construction: the underlying space, its Euler characteristic and the mod 2
 * Betti numbers of the fixed set (empty list = no fixed points).
 */
struct BuiltinComplex {
  std::string name;
  std::string description;
  GComplex complex;
  long euler_characteristic = 0;
  std::vector<std::size_t> fixed_betti_z2;
  int manifold_dimension = -1;  ///< closed connected manifold of this dimension, or -1
};

namespace detail {

inline std::vector<int> identity_involution(std::size_t n) {
  std::vector<int> id(n);
  for (std::size_t v = 0; v < n; ++v) id[v] = static_cast<int>(v);
  return id;
}

// Torus from an m x n grid, each square cut along the diagonal (i,j)-(i+1,j+1).
inline std::vector<std::vector<int>> diagonal_grid_torus(int m, int n) {
  auto v = [&](int i, int j) { return ((i % m + m) % m) * n + ((j % n + n) % n); };
  std::vector<std::vector<int>> t;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) {
      t.push_back({v(i, j), v(i + 1, j), v(i + 1, j + 1)});
      t.push_back({v(i, j), v(i, j + 1), v(i + 1, j + 1)});
    }
  return t;
}

// Surface from an m x n grid of squares, each coned off at a center vertex.
// `corner` maps grid points (i in 0..m, j in 0..n) to vertex ids < m*n; centers are m*n + i*n + j.
inline std::vector<std::vector<int>> coned_grid(int m, int n, const std::function<int(int, int)>& corner) {
  std::vector<std::vector<int>> t;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) {
      int c = m * n + i * n + j;
      int a = corner(i, j), b = corner(i + 1, j), d = corner(i + 1, j + 1), e = corner(i, j + 1);
      t.push_back({c, a, b});
      t.push_back({c, b, d});
      t.push_back({c, d, e});
      t.push_back({c, e, a});
    }
  return t;
}

inline BuiltinComplex make_point() {
  return {"point", "a single point, trivial action", point_complex(), 1, {1}, 0};
}

inline BuiltinComplex make_free_pair() {
  return {"free-pair", "two points exchanged by the involution", GComplex(2, {}, {1, 0}), 2, {}, -1};
}

inline BuiltinComplex make_circle_antipodal() {
  // 4-gon 0-1-2-3, half-turn i -> i+2.
  return {"circle-antipodal", "4-gon circle with the half-turn rotation (free)",
          GComplex(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}, {2, 3, 0, 1}), 0, {}, 1};
}

inline BuiltinComplex make_circle_reflection() {
  // Reflection through the axis 0-2.
  return {"circle-reflection", "4-gon circle with the reflection fixing vertices 0 and 2",
          GComplex(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}, {0, 3, 2, 1}), 0, {2}, 1};
}

// Octahedron: 0 = +x, 1 = -x, 2 = +y, 3 = -y, 4 = +z, 5 = -z.
inline std::vector<std::vector<int>> octahedron_faces() {
  std::vector<std::vector<int>> t;
  for (int x : {0, 1})
    for (int y : {2, 3})
      for (int z : {4, 5}) t.push_back({x, y, z});
  return t;
}

inline BuiltinComplex make_sphere_antipodal() {
  return {"sphere-octahedron-antipodal", "octahedral 2-sphere with the antipodal map (free)",
          GComplex(6, octahedron_faces(), {1, 0, 3, 2, 5, 4}), 2, {}, 2};
}

inline BuiltinComplex make_sphere_reflection() {
  return {"sphere-octahedron-reflection", "octahedral 2-sphere with the reflection z -> -z; fixed set is the equator",
          GComplex(6, octahedron_faces(), {0, 1, 2, 3, 5, 4}), 2, {1, 1}, 2};
}

inline BuiltinComplex make_sphere_antipodal_arcs() {
  auto t = octahedron_faces();
  for (std::vector<int> e : {std::vector<int>{6, 7}, {7, 0}, {6, 8}, {8, 1}}) t.push_back(e);
  return {"sphere-antipodal-arcs",
          "antipodal octahedral sphere joined to a fixed point by two exchanged arcs; connected, e^2 not surjective",
          GComplex(9, std::move(t), {1, 0, 3, 2, 5, 4, 6, 8, 7}), 1, {1}, -1};
}

inline BuiltinComplex make_torus_reflection() {
  // 4 x 3 coned grid; (x, y) -> (-x, y) fixes the circles x = 0 and x = 1/2.
  const int m = 4, n = 3;
  auto corner = [&](int i, int j) { return ((i % m + m) % m) * n + ((j % n + n) % n); };
  std::vector<int> inv(2 * m * n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) {
      inv[static_cast<std::size_t>(corner(i, j))] = corner(-i, j);
      inv[static_cast<std::size_t>(m * n + i * n + j)] = m * n + ((-i - 1) % m + m) % m * n + j;
    }
  return {"torus-reflection", "torus with the reflection (x, y) -> (-x, y); fixed set is two circles",
          GComplex(2 * m * n, coned_grid(m, n, corner), std::move(inv)), 0, {2, 2}, 2};
}

inline BuiltinComplex make_torus_free() {
  // 4 x 3 diagonal grid; translation by half a turn in x.
  const int m = 4, n = 3;
  std::vector<int> inv(m * n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) inv[static_cast<std::size_t>(i * n + j)] = ((i + 2) % m) * n + j;
  return {"torus-free", "torus with the free orientation-preserving translation (x, y) -> (x + 1/2, y)",
          GComplex(m * n, diagonal_grid_torus(m, n), std::move(inv)), 0, {}, 2};
}

inline BuiltinComplex make_klein_bottle_trivial() {
  // 4 x 3 coned grid with (x, 1) glued to (-x, 0).
  const int m = 4, n = 3;
  auto corner = [&](int i, int j) {
    if (j == n) i = -i, j = 0;
    return ((i % m + m) % m) * n + j;
  };
  return {"klein-bottle-trivial", "Klein bottle with the identity involution",
          GComplex::with_trivial_action(2 * m * n, coned_grid(m, n, corner)), 0, {1, 2, 1}, 2};
}

inline BuiltinComplex make_rp2_trivial() {
  // Six-vertex real projective plane.
  std::vector<std::vector<int>> t = {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 1, 5},
                                     {1, 2, 4}, {2, 3, 5}, {1, 3, 4}, {2, 4, 5}, {1, 3, 5}};
  return {"rp2-trivial", "real projective plane (6 vertices) with the identity involution",
          GComplex::with_trivial_action(6, std::move(t)), 1, {1, 1, 1}, 2};
}

inline const std::vector<BuiltinComplex>& catalog() {
  static const std::vector<BuiltinComplex> all = {
      make_point(),           make_free_pair(),         make_circle_antipodal(),
      make_circle_reflection(), make_sphere_antipodal(), make_sphere_reflection(),
      make_sphere_antipodal_arcs(), make_torus_reflection(), make_torus_free(),        make_klein_bottle_trivial(),
      make_rp2_trivial()};
  return all;
}

inline BuiltinComplex union_of(const BuiltinComplex& a, const BuiltinComplex& b) {
  BuiltinComplex u;
  u.name = a.name + "+" + b.name;
  u.description = "disjoint union of " + a.name + " and " + b.name;
  u.complex = disjoint_union(a.complex, b.complex);
  u.euler_characteristic = a.euler_characteristic + b.euler_characteristic;
  u.fixed_betti_z2 = a.fixed_betti_z2;
  if (u.fixed_betti_z2.size() < b.fixed_betti_z2.size()) u.fixed_betti_z2.resize(b.fixed_betti_z2.size(), 0);
  for (std::size_t i = 0; i < b.fixed_betti_z2.size(); ++i) u.fixed_betti_z2[i] += b.fixed_betti_z2[i];
  u.manifold_dimension = -1;
  return u;
}

}  // namespace detail

/// Names of the catalogued complexes, in catalog order.
inline std::vector<std::string> builtin_names() {
  std::vector<std::string> names;
  for (const auto& b : detail::catalog()) names.push_back(b.name);
  return names;
}

/**
 * Looks up a catalogued complex. "a+b+..." builds the disjoint union of the
 * named parts. Throws std::invalid_argument for an unknown name.
 */
inline BuiltinComplex builtin_info(const std::string& name) {
  auto plus = name.find('+');
  if (plus != std::string::npos)
    return detail::union_of(builtin_info(name.substr(0, plus)), builtin_info(name.substr(plus + 1)));
  std::string key = name == "klein-bottle-trivial-candidates" ? "klein-bottle-trivial" : name;
  for (const auto& b : detail::catalog())
    if (b.name == key) return b;
  std::string known;
  for (const auto& n : builtin_names()) known += (known.empty() ? "" : ", ") + n;
  throw std::invalid_argument("unknown builtin '" + name + "' (known: " + known + ")");
}

inline GComplex builtin(const std::string& name) { return builtin_info(name).complex; }

}  // namespace eqhom
