#pragma once

#include <cstddef>
#include <optional>
#include <unordered_map>
#include <vector>

namespace ihom {

// A simplex is a strictly increasing list of vertex indices.
using Simplex = std::vector<int>;

struct SimplexHash {
  std::size_t operator()(const Simplex& s) const noexcept;
};

// Finite abstract simplicial complex on vertices 0..vertex_count-1.
//
// Simplices are stored in lexicographic order of their vertex lists; a
// simplex id is its position in that order, and every matrix built on top of
// a complex uses this order as its basis order.
class SimplicialComplex {
public:
  SimplicialComplex() = default;

  // Downward closure of the given simplices. Vertices must lie in
  // [0, vertex_count) and every vertex index must be used.
  static SimplicialComplex from_facets(int vertex_count, std::vector<Simplex> facets);

  // Same as from_facets but rejects input that is not already closed.
  static SimplicialComplex from_simplices(int vertex_count, std::vector<Simplex> simplices);

  int vertex_count() const { return vertex_count_; }
  int dim() const { return dim_; }
  std::size_t size() const { return simplices_.size(); }
  bool empty() const { return simplices_.empty(); }

  const Simplex& simplex(int id) const { return simplices_[static_cast<std::size_t>(id)]; }
  const std::vector<Simplex>& simplices() const { return simplices_; }
  int simplex_dim(int id) const { return static_cast<int>(simplex(id).size()) - 1; }

  std::optional<int> find(const Simplex& s) const;
  int id_of(const Simplex& s) const;  // throws std::out_of_range
  int vertex_id(int v) const { return vertex_ids_[static_cast<std::size_t>(v)]; }

  // Codimension-one faces; entry j is the face omitting the j-th vertex.
  const std::vector<int>& faces(int id) const { return faces_[static_cast<std::size_t>(id)]; }
  // Codimension-one cofaces in increasing id order.
  const std::vector<int>& cofaces(int id) const { return cofaces_[static_cast<std::size_t>(id)]; }
  // Ids of all k-simplices in canonical order.
  const std::vector<int>& of_dim(int k) const;

  std::vector<int> f_vector() const;
  long long euler_characteristic() const;
  std::vector<int> maximal_simplices() const;

  friend bool operator==(const SimplicialComplex& a, const SimplicialComplex& b) {
    return a.vertex_count_ == b.vertex_count_ && a.simplices_ == b.simplices_;
  }

private:
  void index();

  int vertex_count_ = 0;
  int dim_ = -1;
  std::vector<Simplex> simplices_;
  std::unordered_map<Simplex, int, SimplexHash> ids_;
  std::vector<int> vertex_ids_;
  std::vector<std::vector<int>> faces_;
  std::vector<std::vector<int>> cofaces_;
  std::vector<std::vector<int>> by_dim_;
};

// Filtration by vertex levels: X_i is the full subcomplex on the vertices of
// level <= i. n is the formal dimension.
struct VertexLevelMap {
  int n = -1;
  std::vector<int> level;

  // All vertices at level dim K.
  static VertexLevelMap trivial(const SimplicialComplex& k);
  // Throws std::invalid_argument when the map is malformed for k.
  void validate(const SimplicialComplex& k) const;
  int simplex_level(const Simplex& s) const;

  friend bool operator==(const VertexLevelMap&, const VertexLevelMap&) = default;
};

struct FilteredComplex {
  SimplicialComplex complex;
  VertexLevelMap levels;
};

// Cone with a new apex (the last vertex). Old levels shift up by one.
// cone of the empty complex is the single apex at level 0.
FilteredComplex cone(const FilteredComplex& k, int apex_level = 0);
FilteredComplex cone(const SimplicialComplex& k, int apex_level = 0);

// Join with the boundary of the standard (m+1)-simplex. Sphere vertices come
// first (indices 0..m+1) at level m; a vertex of K at level i moves to
// index + m + 2 and level i + m + 1.
FilteredComplex join_sphere(int m, const FilteredComplex& k);
FilteredComplex join_sphere(int m, const SimplicialComplex& k);

// join_sphere(0, k). Vertex 0 is the south pole, vertex 1 the north pole.
FilteredComplex suspension(const FilteredComplex& k);
FilteredComplex suspension(const SimplicialComplex& k);

// Standard small complexes.
SimplicialComplex full_simplex(int d);
SimplicialComplex simplex_boundary(int d);
SimplicialComplex discrete_points(int count);
SimplicialComplex minimal_torus();  // 7 vertices, 14 triangles
SimplicialComplex minimal_rp2();    // 6 vertices, 10 triangles

}  // namespace ihom
