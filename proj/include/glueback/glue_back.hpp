#pragma once

// The glue-back construction: from an orbit space, a coloring and a bundle
// cocycle, build the acted-on manifold as a Delta-complex with its
// (Z2)^n-action and orbit map.

#include <string>
#include <vector>

#include "glueback/cell_complex.hpp"
#include "glueback/characteristic_data.hpp"
#include "glueback/corner_complex.hpp"

namespace glueback {

struct Cell {
  int simplex = 0;       // index into the base simplices of the same dimension
  GroupElement coset;    // canonical representative modulo the isotropy
};

class BuiltManifold {
public:
  int rank() const { return rank_; }
  const StratifiedComplex& base() const { return base_; }
  const DeltaComplex& complex() const { return complex_; }
  int dim() const { return base_.dim(); }

  const std::vector<Cell>& cells(int d) const { return cells_[static_cast<std::size_t>(d)]; }
  /// G(sigma): span of the colors of the facets containing the simplex.
  const Subgroup& isotropy(int d, int simplex) const {
    return isotropy_[static_cast<std::size_t>(d)][static_cast<std::size_t>(simplex)];
  }
  /// Index of the cell (simplex, coset of g).
  int cell_index(int d, int simplex, const GroupElement& g) const;
  /// Cells over one base simplex.
  std::pair<int, int> fiber_range(int d, int simplex) const;

  CellMap action(const GroupElement& g) const;

private:
  friend BuiltManifold build(const StratifiedComplex&, const Coloring&, const Cocycle&);

  int rank_ = 0;
  StratifiedComplex base_;
  std::vector<std::vector<Cell>> cells_;
  std::vector<std::vector<Subgroup>> isotropy_;
  std::vector<std::vector<int>> first_cell_;
  DeltaComplex complex_;
};

/// Throws std::invalid_argument naming the first failed validation.
BuiltManifold build(const StratifiedComplex& q, const Coloring& lambda, const Cocycle& xi);
BuiltManifold build(const StratifiedComplex& q, const Coloring& lambda);

/// Sum over simplices of (-1)^dim 2^(n - rank G(sigma)).
long euler_characteristic_predicted(const StratifiedComplex& q, const Coloring& lambda);

/// Cells whose base isotropy contains h.
Subcomplex fixed_subcomplex(const BuiltManifold& m, const Subgroup& h);

/// Cells lying over the simplices of a facet.
Subcomplex facet_preimage(const BuiltManifold& m, int facet);

/// Whether each (n-1)-cell over the facet bounds exactly two top cells and
/// the facet's color exchanges them, so the preimage is two-sided with the
/// reflection swapping the sides.
bool facet_swaps_sides(const BuiltManifold& m, int facet);

struct OrbitQuotient {
  StratifiedComplex q;
  Coloring lambda;
};

/// Quotient of the cell complex by the action, with facets recovered from
/// codimension-1 orbits that have nontrivial stabilizers. Uses only the
/// Delta-complex and the action, never the stored base map.
OrbitQuotient orbit_quotient(const BuiltManifold& m);

int components(const BuiltManifold& m);

/// Cell dump: "cell <dim> (<base vertices>) <coset>" lines followed by
/// "face <cell-id> <i> <cell-id>" lines; cell ids are global in dimension
/// order.
std::string emit_cells(const BuiltManifold& m);

}  // namespace glueback
