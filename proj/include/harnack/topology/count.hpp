#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "harnack/ensemble/monomial_basis.hpp"
#include "harnack/ensemble/orthonormal_basis.hpp"
#include "harnack/ensemble/section.hpp"
#include "harnack/error.hpp"
#include "harnack/topology/bernstein.hpp"
#include "harnack/topology/cube_sphere.hpp"

namespace harnack {

enum class CellSign { all_positive, all_negative, unknown };

inline std::string_view to_string(CellSign s) {
  switch (s) {
    case CellSign::all_positive: return "all-positive";
    case CellSign::all_negative: return "all-negative";
    case CellSign::unknown: return "unknown";
  }
  return "?";
}

namespace detail {

inline BernsteinNet cell_net(const MonomialBasis& basis, std::span<const double> mono, const SphereCell& cell) {
  return BernsteinNet::from_power(basis.degree(), face_polynomial(basis, mono, cell.face), cell.u_lo(),
                                  cell.u_hi(), cell.v_lo(), cell.v_hi());
}

// Bernstein sign test, refined up to `levels` extra subdivisions; certifies
// only when every sub-box has the same strict sign.
inline int certify_sign(const BernsteinNet& net, int levels) {
  int s = net.sign();
  if (s != 0 || levels == 0) return s;
  int agreed = 0;
  for (const auto& child : net.quarter()) {
    int cs = certify_sign(child, levels - 1);
    if (cs == 0 || (agreed != 0 && cs != agreed)) return 0;
    agreed = cs;
  }
  return agreed;
}

}  // namespace detail

/// Rigorous sign of the monomial-coefficient polynomial over the sphere cell.
/// Up to `levels` internal bisections are tried before giving up.
inline CellSign sign_certify(const MonomialBasis& basis, std::span<const double> mono, const SphereCell& cell,
                             int levels = 6) {
  if (static_cast<int>(mono.size()) != basis.size()) throw config_error("coefficient vector has wrong length");
  int s = detail::certify_sign(detail::cell_net(basis, mono, cell), levels);
  return s > 0 ? CellSign::all_positive : (s < 0 ? CellSign::all_negative : CellSign::unknown);
}

inline CellSign sign_certify(const SectionSample& s, const OrthonormalBasis& onb, const SphereCell& cell,
                             int levels = 6) {
  auto mono = monomial_coefficients(s, onb);
  return sign_certify(onb.basis, mono, cell, levels);
}

struct TopologyReport {
  int degree = 0;
  int b0 = 0;                  // components in RP^2 (best effort when uncertified)
  bool certified = false;
  int max_depth = 0;           // deepest leaf reached
  int depth_limit = 0;         // requested max-depth
  int unresolved_cells = 0;
  double min_gradient = std::numeric_limits<double>::infinity();  // certified |dq/du| or |dq/dv| lower bound, min over arc cells
  int sphere_components = 0;   // components on S^2
  int pseudolines = 0;         // components equal to their own antipode
  std::size_t leaves = 0;
  std::string diagnostic;
};

namespace detail {

enum class LeafKind : std::uint8_t { positive, negative, empty, arc, unresolved };

struct Leaf {
  SphereCell cell;
  LeafKind kind;
  std::array<std::int8_t, 4> crossings;  // per edge, -1 unknown
};

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), std::size_t{0}); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

// Classification of one box.  An arc cell holds exactly one arc of the curve
// meeting its boundary transversally in two points: one partial derivative
// has a certified sign (so every zero component in the box is a graph over
// the other coordinate and ends on the boundary), and each edge is certified
// to carry zero or one crossing, two in total.
inline Leaf classify(const SphereCell& cell, const BernsteinNet& net, double* grad) {
  Leaf leaf{cell, LeafKind::unresolved, {-1, -1, -1, -1}};
  int s = net.sign();
  if (s != 0) {
    leaf.kind = s > 0 ? LeafKind::positive : LeafKind::negative;
    leaf.crossings = {0, 0, 0, 0};
    return leaf;
  }
  double mag_s = 0.0, mag_t = 0.0;
  int ds = net.derivative_sign(0, &mag_s);
  int dt = net.derivative_sign(1, &mag_t);
  if (ds == 0 && dt == 0) return leaf;
  int total = 0;
  for (int e = 0; e < 4; ++e) {
    int c = edge_crossings(net.edge(e));
    if (c < 0) return leaf;
    leaf.crossings[e] = static_cast<std::int8_t>(c);
    total += c;
  }
  if (total == 0) {
    leaf.kind = LeafKind::empty;
  } else if (total == 2) {
    leaf.kind = LeafKind::arc;
    double mag = std::max(ds != 0 ? mag_s : 0.0, dt != 0 ? mag_t : 0.0);
    *grad = net.degree() * mag / cell.width();
  } else {
    leaf.crossings = {-1, -1, -1, -1};
  }
  return leaf;
}

// Leaf of the quadtree that contains the same-depth cell (face, d, i, j),
// found by ascending; -1 when that cell is subdivided further.
inline long find_covering(const std::unordered_map<std::uint64_t, std::uint32_t>& index, int face, int d,
                          std::uint32_t i, std::uint32_t j) {
  for (int k = d; k >= 0; --k) {
    SphereCell c{face, k, i >> (d - k), j >> (d - k)};
    auto it = index.find(c.key());
    if (it != index.end()) return it->second;
  }
  return -1;
}

// The same-depth cell across edge e, possibly on another face.
inline SphereCell across(const SphereCell& c, int e) {
  const std::uint32_t last = (1u << c.depth) - 1;
  SphereCell n = c;
  if (e == 0 && c.i > 0) return n.i--, n;
  if (e == 1 && c.i < last) return n.i++, n;
  if (e == 2 && c.j > 0) return n.j--, n;
  if (e == 3 && c.j < last) return n.j++, n;
  double um = 0.5 * (c.u_lo() + c.u_hi()), vm = 0.5 * (c.v_lo() + c.v_hi());
  double u = e == 0 ? -1.0 : (e == 1 ? 1.0 : um);
  double v = e == 2 ? -1.0 : (e == 3 ? 1.0 : vm);
  auto p = cube_point(c.face, u, v);
  int axis = c.face % 3;
  int other = -1;
  for (int k = 0; k < 3; ++k)
    if (k != axis && std::abs(p[k]) == 1.0) other = k;
  int face = other + (p[other] < 0.0 ? 3 : 0);
  auto uv = face_coords(face, p);
  auto idx = [&](double x) {
    double t = std::floor((x + 1.0) * 0.5 * std::ldexp(1.0, c.depth));
    return static_cast<std::uint32_t>(std::clamp(t, 0.0, static_cast<double>(last)));
  };
  return {face, c.depth, idx(uv[0]), idx(uv[1])};
}

}  // namespace detail

/// Counts the connected components of the real zero curve of the polynomial
/// with the given monomial coefficients, on RP^2.
///
/// The three faces X_f = +1 of the cube-sphere are subdivided adaptively
/// until every box is sign-certified or certified to hold a single arc
/// (see detail::classify); boxes still undecided at max_depth are unresolved.
/// Faces -X_f carry the same boxes with sign (-1)^n.  Arc boxes are joined
/// across shared edges where the curve crosses, giving the components on S^2;
/// RP^2 components are the orbits of the antipodal map.  The report is
/// certified when no box is unresolved and exactly n mod 2 components are
/// their own antipode (the one pseudoline of an odd-degree curve).
inline TopologyReport count_components(const MonomialBasis& basis, std::span<const double> mono, int max_depth) {
  if (max_depth < 4 || max_depth > SphereCell::kMaxDepth)
    throw config_error("max-depth must lie in 4.." + std::to_string(SphereCell::kMaxDepth));
  if (static_cast<int>(mono.size()) != basis.size()) throw config_error("coefficient vector has wrong length");
  for (double c : mono)
    if (!std::isfinite(c)) throw config_error("coefficients must be finite");
  const int n = basis.degree();
  TopologyReport rep;
  rep.degree = n;
  rep.depth_limit = max_depth;

  std::vector<detail::Leaf> leaves;
  struct Work {
    SphereCell cell;
    BernsteinNet net;
  };
  std::vector<Work> stack;
  for (int f = 2; f >= 0; --f) {
    SphereCell root{f, 0, 0, 0};
    stack.push_back({root, detail::cell_net(basis, mono, root)});
  }
  while (!stack.empty()) {
    Work w = std::move(stack.back());
    stack.pop_back();
    double grad = std::numeric_limits<double>::infinity();
    detail::Leaf leaf = detail::classify(w.cell, w.net, &grad);
    if (leaf.kind == detail::LeafKind::unresolved && w.cell.depth < max_depth) {
      auto kids = w.net.quarter();
      auto cells = w.cell.children();
      for (int k = 3; k >= 0; --k) stack.push_back({cells[k], std::move(kids[k])});
      continue;
    }
    if (leaf.kind == detail::LeafKind::arc) rep.min_gradient = std::min(rep.min_gradient, grad);
    rep.max_depth = std::max(rep.max_depth, w.cell.depth);
    leaves.push_back(leaf);
  }
  // antipodal copies: q on face f+3 is (-1)^n q on face f
  const std::size_t half_count = leaves.size();
  for (std::size_t k = 0; k < half_count; ++k) {
    detail::Leaf a = leaves[k];
    a.cell = a.cell.antipode();
    if (n % 2 == 1) {
      if (a.kind == detail::LeafKind::positive)
        a.kind = detail::LeafKind::negative;
      else if (a.kind == detail::LeafKind::negative)
        a.kind = detail::LeafKind::positive;
    }
    leaves.push_back(a);
  }
  rep.leaves = leaves.size();

  std::unordered_map<std::uint64_t, std::uint32_t> index;
  index.reserve(leaves.size() * 2);
  for (std::uint32_t k = 0; k < leaves.size(); ++k) index.emplace(leaves[k].cell.key(), k);

  auto on_curve = [](detail::LeafKind k) { return k == detail::LeafKind::arc || k == detail::LeafKind::unresolved; };
  detail::UnionFind uf(leaves.size());
  bool consistent = true;
  for (std::uint32_t k = 0; k < leaves.size(); ++k) {
    const auto& L = leaves[k];
    if (!on_curve(L.kind)) continue;
    if (L.kind == detail::LeafKind::unresolved) ++rep.unresolved_cells;
    for (int e = 0; e < 4; ++e) {
      if (L.kind == detail::LeafKind::arc && L.crossings[e] == 0) continue;
      SphereCell nb = detail::across(L.cell, e);
      long m = detail::find_covering(index, nb.face, nb.depth, nb.i, nb.j);
      if (m < 0) continue;  // finer boxes on the other side join from there
      if (on_curve(leaves[m].kind))
        uf.unite(k, static_cast<std::size_t>(m));
      else if (L.kind == detail::LeafKind::arc)
        consistent = false;
    }
  }

  // components on S^2 and their antipodal orbits
  std::vector<std::size_t> roots;
  for (std::size_t k = 0; k < leaves.size(); ++k)
    if (on_curve(leaves[k].kind) && uf.find(k) == k) roots.push_back(k);
  rep.sphere_components = static_cast<int>(roots.size());
  std::unordered_map<std::size_t, std::size_t> root_slot;
  for (std::size_t r = 0; r < roots.size(); ++r) root_slot[roots[r]] = r;
  detail::UnionFind orbit(roots.size());
  std::vector<char> self(roots.size(), 0);
  for (std::size_t k = 0; k < leaves.size(); ++k) {
    if (!on_curve(leaves[k].kind)) continue;
    std::size_t pk = index.at(leaves[k].cell.antipode().key());
    std::size_t a = root_slot.at(uf.find(k)), b = root_slot.at(uf.find(pk));
    if (a == b) self[a] = 1;
    orbit.unite(a, b);
  }
  std::vector<int> orbit_size(roots.size(), 0);
  for (std::size_t r = 0; r < roots.size(); ++r) ++orbit_size[orbit.find(r)];
  bool orbits_ok = true;
  for (std::size_t r = 0; r < roots.size(); ++r) {
    if (orbit.find(r) != r) continue;
    ++rep.b0;
    if (orbit_size[r] == 1) {
      ++rep.pseudolines;
      if (!self[r]) orbits_ok = false;
    } else if (orbit_size[r] != 2) {
      orbits_ok = false;
    }
  }

  rep.certified = rep.unresolved_cells == 0 && consistent && orbits_ok && rep.pseudolines == n % 2;
  if (rep.unresolved_cells > 0)
    rep.diagnostic = std::to_string(rep.unresolved_cells) + " cells unresolved at depth " + std::to_string(max_depth) +
                     " (curve near-singular or tangent to the grid)";
  else if (!consistent)
    rep.diagnostic = "inconsistent crossing data across a cell edge";
  else if (!orbits_ok || rep.pseudolines != n % 2)
    rep.diagnostic = "antipodal pairing violates the degree parity";
  return rep;
}

inline TopologyReport count_components(const SectionSample& s, const OrthonormalBasis& onb, int max_depth) {
  auto mono = monomial_coefficients(s, onb);
  return count_components(onb.basis, mono, max_depth);
}

}  // namespace harnack
