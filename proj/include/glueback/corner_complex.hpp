#pragma once

// Triangulated manifolds with corners: a pure simplicial complex whose
// boundary is tessellated by named facets.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "glueback/cell_complex.hpp"

namespace glueback {

/// Strictly increasing vertex ids.
using Simplex = std::vector<int>;

struct FacetSpec {
  std::string name;
  /// (n-1)-simplices making up the facet.
  std::vector<Simplex> simplices;
};

class StratifiedComplex {
public:
  StratifiedComplex() = default;
  /// Closes the top simplices under faces. Throws std::invalid_argument on
  /// malformed input: wrong arity, repeated vertices, duplicate top
  /// simplices, duplicate facet names, or facet tuples that are not
  /// (n-1)-simplices of the complex.
  StratifiedComplex(int dim, std::vector<Simplex> top, std::vector<FacetSpec> facets,
                    std::vector<int> extra_vertices = {});

  int dim() const { return dim_; }
  const std::vector<int>& vertices() const { return vertices_; }
  /// Simplices of dimension d in lexicographic order.
  const std::vector<Simplex>& simplices(int d) const { return simplices_[static_cast<std::size_t>(d)]; }
  std::size_t count(int d) const { return simplices_[static_cast<std::size_t>(d)].size(); }
  std::optional<int> index_of(const Simplex& s) const;

  std::size_t facet_count() const { return facets_.size(); }
  const FacetSpec& facet(std::size_t i) const { return facets_[i]; }
  const std::vector<FacetSpec>& facets() const { return facets_; }
  std::optional<int> facet_index(const std::string& name) const;

  /// Sorted indices of the facets whose subcomplex contains the simplex.
  const std::vector<int>& facet_set(int d, std::size_t j) const { return facet_sets_[static_cast<std::size_t>(d)][j]; }
  /// Faces of (n-1)-simplices lying in exactly one n-simplex.
  bool on_boundary(int d, std::size_t j) const { return boundary_[static_cast<std::size_t>(d)][j]; }
  bool vertex_on_boundary(int v) const;

  /// Number of top simplices containing each (n-1)-simplex.
  const std::vector<int>& codim1_degree() const { return codim1_degree_; }

  /// The underlying complex with faces listed by omitted vertex.
  DeltaComplex delta() const;

private:
  int dim_ = 0;
  std::vector<int> vertices_;
  std::vector<std::vector<Simplex>> simplices_;
  std::vector<std::map<Simplex, int>> index_;
  std::vector<FacetSpec> facets_;
  std::vector<std::vector<std::vector<int>>> facet_sets_;
  std::vector<std::vector<bool>> boundary_;
  std::vector<int> codim1_degree_;
};

enum class ViolationKind {
  not_pure,
  not_pseudomanifold,
  boundary_not_covered,
  facet_not_on_boundary,
  facet_overlap,
  facet_not_pure,
  facet_disconnected,
  niceness,        // more than two facets at a codimension-2 boundary simplex
  niceness_depth,  // more than n facets at some simplex
  link_condition,
  coloring_missing,
  coloring_zero,
  coloring_dependent,
  cocycle_condition,
};

const char* to_string(ViolationKind k);

struct Violation {
  ViolationKind kind;
  Simplex where;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  std::vector<std::string> warnings;

  bool ok() const { return violations.empty(); }
  bool has(ViolationKind k) const;
  std::string to_string() const;
};

ValidationReport validate(const StratifiedComplex& q);

struct PreFace {
  std::vector<int> facet_ids;
  /// The closed pre-face: every simplex of the component, by dimension.
  std::vector<Simplex> simplices;
  /// Simplices whose relative interiors make up the open pre-face.
  std::vector<Simplex> open_simplices;
  int codim = 0;
};

/// Throws std::invalid_argument if q does not validate.
std::vector<PreFace> pre_faces(const StratifiedComplex& q);

long euler_characteristic(const StratifiedComplex& q);

struct BoundaryComponent {
  /// (n-1)-simplices of the component.
  std::vector<Simplex> simplices;
  std::vector<int> vertices;
  std::vector<int> facets;
  /// For each facet above, the number of codimension-2 pre-faces on its
  /// boundary (polygon sides when n = 3).
  std::vector<int> face_sizes;
  long euler = 0;
  bool closed = true;
};

std::vector<BoundaryComponent> boundary_components(const StratifiedComplex& q);

/// Full subcomplex spanned by a vertex set, keeping facet simplices that
/// survive and dropping facets that vanish.
StratifiedComplex induced_subcomplex(const StratifiedComplex& q, const std::vector<int>& keep);

struct FacialIsomorphism {
  std::map<int, int> vertex_map;
  /// facet_map[i] = index in the target of the image of facet i.
  std::vector<int> facet_map;
};

/// Calls visit on each simplicial isomorphism a -> b that carries facets
/// onto facets, until visit returns true. Returns whether it did.
bool for_each_facial_isomorphism(const StratifiedComplex& a, const StratifiedComplex& b,
                                 const std::function<bool(const FacialIsomorphism&)>& visit);

std::optional<FacialIsomorphism> find_facial_isomorphism(
    const StratifiedComplex& a, const StratifiedComplex& b,
    const std::function<bool(const FacialIsomorphism&)>& accept = {});

/// The same complex with vertices renamed through the map.
StratifiedComplex relabel(const StratifiedComplex& q, const std::map<int, int>& vertex_map);

}  // namespace glueback
