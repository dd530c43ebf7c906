// Polygonal meshes of the unit square: the three structured grid families
// (triangles, non-convex pentagons, interlocking non-convex 9-gons), their
// uniform refinements, element/edge geometry, and ear-clipping triangulation
// of (possibly non-convex) element loops.

#ifndef WG_MESH_HPP
#define WG_MESH_HPP

#include "wg/geometry.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace wg
{

enum class GridFamily { Triangle, Pentagon, SGrid };

inline std::string to_string(GridFamily f)
{
  switch (f) {
  case GridFamily::Triangle: return "triangle";
  case GridFamily::Pentagon: return "pentagon";
  case GridFamily::SGrid: return "sgrid";
  }
  return "?";
}

struct MeshError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Mesh edge with global orientation from lower to higher vertex index.
struct Edge {
  int v0;              ///< lower vertex index
  int v1;              ///< higher vertex index
  int left = -1;       ///< element traversing v0->v1 in its CCW loop
  int right = -1;      ///< element traversing v1->v0, or -1 on the boundary
  bool boundary = false;
};

/// Reference to an edge from inside an element loop.
struct ElementEdge {
  int edge;     ///< global edge index
  double sign;  ///< +1 if the CCW traversal matches the global edge direction
};

struct PolyMesh {
  std::vector<Vec2> vertices;
  std::vector<std::vector<int>> elements;           ///< CCW vertex-index loops
  std::vector<Edge> edges;
  std::vector<std::vector<ElementEdge>> element_edges;
  GridFamily family = GridFamily::Triangle;
  int level = 1;

  int n_vertices() const { return static_cast<int>(vertices.size()); }
  int n_edges() const { return static_cast<int>(edges.size()); }
  int n_elements() const { return static_cast<int>(elements.size()); }

  std::vector<Vec2> element_loop(int e) const
  {
    std::vector<Vec2> loop;
    loop.reserve(elements[e].size());
    for (int v : elements[e]) loop.push_back(vertices[v]);
    return loop;
  }
};

/// Per-element geometric data used by quadrature and local operators.
struct ElementGeometry {
  double h_T = 0.0;
  double area = 0.0;
  Vec2 centroid = Vec2::Zero();
  std::vector<Vec2> loop;            ///< CCW vertex positions
  std::vector<double> edge_length;
  std::vector<Vec2> edge_normal;     ///< outward unit normals
  std::vector<Vec2> edge_tangent;    ///< t = (-n_y, n_x), CCW convention
};

inline ElementGeometry element_geometry_of_loop(const std::vector<Vec2> &loop)
{
  ElementGeometry g;
  g.loop = loop;
  g.area = signed_area(loop);
  if (g.area <= 0.0) throw MeshError("degenerate element: non-positive area");
  g.h_T = diameter(loop);
  g.centroid = polygon_centroid(loop);
  const std::size_t n = loop.size();
  g.edge_length.resize(n);
  g.edge_normal.resize(n);
  g.edge_tangent.resize(n);
  for (std::size_t i = 0; i < n; i++) {
    const Vec2 d = loop[(i + 1) % n] - loop[i];
    const double len = d.norm();
    if (len <= 0.0) throw MeshError("degenerate element: zero-length edge");
    g.edge_length[i] = len;
    const Vec2 t = d / len;
    g.edge_tangent[i] = t;
    g.edge_normal[i] = Vec2(t.y(), -t.x()); // outward for a CCW loop
  }
  return g;
}

inline ElementGeometry element_geometry(const PolyMesh &mesh, int e)
{
  if (e < 0 || e >= mesh.n_elements()) throw MeshError("element index out of range");
  return element_geometry_of_loop(mesh.element_loop(e));
}

//------------------------------------------------------------------------------
// Ear-clipping triangulation
//------------------------------------------------------------------------------

/// Triangulate a simple CCW polygon by ear clipping. Returns index triples
/// into the input loop; triangle vertices are a subset of polygon vertices.
inline std::vector<std::array<int, 3>> triangulate_polygon(const std::vector<Vec2> &loop)
{
  const int n = static_cast<int>(loop.size());
  if (n < 3) throw MeshError("polygon with fewer than 3 vertices");
  if (signed_area(loop) <= 0.0) throw MeshError("polygon loop must be CCW with positive area");

  std::vector<int> idx(n);
  for (int i = 0; i < n; i++) idx[i] = i;

  std::vector<std::array<int, 3>> tris;
  tris.reserve(n - 2);

  int guard = 0;
  while (idx.size() > 3) {
    const int m = static_cast<int>(idx.size());
    bool clipped = false;
    for (int i = 0; i < m; i++) {
      const int ia = idx[(i + m - 1) % m];
      const int ib = idx[i];
      const int ic = idx[(i + 1) % m];
      const Vec2 &a = loop[ia];
      const Vec2 &b = loop[ib];
      const Vec2 &c = loop[ic];
      const double conv = cross2(b - a, c - b);
      if (conv <= 1e-14 * (b - a).norm() * (c - b).norm()) continue; // reflex or collinear
      // no remaining vertex may lie inside the candidate ear
      bool blocked = false;
      for (int j : idx) {
        if (j == ia || j == ib || j == ic) continue;
        if (point_in_triangle(loop[j], a, b, c)) {
          blocked = true;
          break;
        }
      }
      if (blocked) continue;
      tris.push_back({ia, ib, ic});
      idx.erase(idx.begin() + i);
      clipped = true;
      break;
    }
    if (!clipped || ++guard > 4 * n) {
      throw MeshError("ear clipping failed: polygon is not simple");
    }
  }
  tris.push_back({idx[0], idx[1], idx[2]});
  return tris;
}

//------------------------------------------------------------------------------
// Grid families
//------------------------------------------------------------------------------

namespace detail
{

// Cell-local vertex patterns in units of 1/12 of the cell, so every family's
// interior points ((5/6,1/3), (1/6,2/3), quarter points) are exact integers.
inline std::vector<std::vector<std::pair<int, int>>> cell_pattern(GridFamily family)
{
  switch (family) {
  case GridFamily::Triangle:
    return {{{0, 0}, {12, 0}, {12, 12}},
            {{0, 0}, {12, 12}, {0, 12}}};
  case GridFamily::Pentagon:
    return {{{0, 0}, {12, 0}, {12, 12}, {2, 8}, {10, 4}},
            {{0, 0}, {10, 4}, {2, 8}, {12, 12}, {0, 12}}};
  case GridFamily::SGrid:
    return {{{0, 0}, {12, 0}, {12, 12}, {9, 9}, {3, 9}, {3, 6}, {9, 6}, {9, 3}, {3, 3}},
            {{0, 0}, {3, 3}, {9, 3}, {9, 6}, {3, 6}, {3, 9}, {9, 9}, {12, 12}, {0, 12}}};
  }
  throw std::invalid_argument("unknown grid family");
}

} // namespace detail

/// Build grid `level` of a family: 2^(level-1) x 2^(level-1) unit cells, each
/// subdivided into the family's two-element pattern.
inline PolyMesh build_grid(GridFamily family, int level)
{
  if (level < 1) throw std::invalid_argument("grid level must be >= 1");
  if (level > 14) throw MeshError("grid level too large: vertex index would overflow");
  const std::int64_t n = std::int64_t(1) << (level - 1);

  const auto pattern = detail::cell_pattern(family);

  PolyMesh mesh;
  mesh.family = family;
  mesh.level = level;

  // Dedup vertices by exact integer lattice coordinates (units of 1/(12 n)).
  std::map<std::pair<std::int64_t, std::int64_t>, int> vmap;
  const double scale = 1.0 / (12.0 * static_cast<double>(n));
  auto vertex_id = [&](std::int64_t gx, std::int64_t gy) {
    auto [it, inserted] = vmap.try_emplace({gx, gy}, mesh.n_vertices());
    if (inserted) mesh.vertices.emplace_back(gx * scale, gy * scale);
    return it->second;
  };

  for (std::int64_t j = 0; j < n; j++) {
    for (std::int64_t i = 0; i < n; i++) {
      for (const auto &elem : pattern) {
        std::vector<int> loop;
        loop.reserve(elem.size());
        for (auto [px, py] : elem) loop.push_back(vertex_id(12 * i + px, 12 * j + py));
        mesh.elements.push_back(std::move(loop));
      }
    }
  }

  // Edges with global lower->higher vertex-index orientation.
  std::map<std::pair<int, int>, int> emap;
  mesh.element_edges.resize(mesh.elements.size());
  for (int e = 0; e < mesh.n_elements(); e++) {
    const auto &loop = mesh.elements[e];
    const int m = static_cast<int>(loop.size());
    for (int i = 0; i < m; i++) {
      const int a = loop[i];
      const int b = loop[(i + 1) % m];
      const auto key = std::minmax(a, b);
      auto [it, inserted] = emap.try_emplace(key, mesh.n_edges());
      if (inserted) mesh.edges.push_back(Edge{key.first, key.second});
      Edge &edge = mesh.edges[it->second];
      const double sign = (a == edge.v0) ? +1.0 : -1.0;
      if (sign > 0) {
        if (edge.left != -1) throw MeshError("non-manifold edge");
        edge.left = e;
      } else {
        if (edge.right != -1) throw MeshError("non-manifold edge");
        edge.right = e;
      }
      mesh.element_edges[e].push_back(ElementEdge{it->second, sign});
    }
  }
  for (Edge &edge : mesh.edges) {
    if (edge.left == -1 && edge.right == -1) throw MeshError("orphan edge");
    edge.boundary = (edge.left == -1) || (edge.right == -1);
  }
  return mesh;
}

/// Plain-text mesh dump (debugging and golden-file tests).
inline void dump_mesh(const PolyMesh &mesh, std::ostream &os)
{
  os << mesh.n_vertices() << ' ' << mesh.n_edges() << ' ' << mesh.n_elements() << '\n';
  os.precision(17);
  for (const Vec2 &v : mesh.vertices) os << v.x() << ' ' << v.y() << '\n';
  for (const auto &loop : mesh.elements) {
    os << loop.size();
    for (int v : loop) os << ' ' << v;
    os << '\n';
  }
  for (const Edge &e : mesh.edges) {
    os << e.v0 << ' ' << e.v1 << ' ' << e.left << ' ' << e.right << ' ' << (e.boundary ? 1 : 0)
       << '\n';
  }
}

} // namespace wg

#endif
