#pragma once

// Canonical triangulated orbit spaces with default colorings.
//
// Names accepted by make():
//   interval, circle(k), polygon(k), simplex(n), cube, prism(k), football,
//   klein-square, torus, product(a,b)
//
// Football: outer boundary vertices N=0, S=1, a=2, b=3, c=4 with the three
// 2-gons N-a-S-b, N-b-S-c, N-a-S-c; an inner copy v+5 of every outer
// vertex; center 10. Each outer triangle u<v<w spans a collar prism cut as
// [u v w w'] [u v v' w'] [u u' v' w'], and the center cones off the inner
// sphere. simplex(3) is the same collared shape over a tetrahedron
// (outer 0..3, inner 4..7, center 8).

#include <string>
#include <string_view>
#include <vector>

#include "glueback/characteristic_data.hpp"
#include "glueback/corner_complex.hpp"

namespace glueback {

struct CatalogModel {
  std::string name;
  StratifiedComplex q;
  Coloring lambda;
};

/// Throws std::invalid_argument on unknown names or out-of-range parameters
/// (k <= 12, n <= 3).
CatalogModel make(std::string_view name);

/// Product with the staircase triangulation and coloring (lambda_a, 0),
/// (0, lambda_b). Facets are named "<facet>x" for a and "x<facet>" for b.
CatalogModel product(const CatalogModel& a, const CatalogModel& b);

/// Names listed by `catalog list`.
std::vector<std::string> catalog_names();

/// Vertex at the center of a collared model, or -1.
int model_center(std::string_view name);

struct ExpectedProfile {
  std::string name;
  std::vector<std::size_t> gf2_betti;
  std::vector<std::size_t> rational_betti;
  /// Invariant factors above one, per degree.
  std::vector<std::vector<int>> torsion;
  bool orientable = true;
  std::string provenance;
};

/// Golden homology of the manifold built over each entry with the default
/// coloring and trivial bundle.
std::vector<ExpectedProfile> expected_profiles();

}  // namespace glueback
