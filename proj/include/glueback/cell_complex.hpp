#pragma once

// Finite Delta-complexes: cells graded by dimension, each d-cell carrying
// its d+1 ordered faces. Repeated faces are allowed.

#include <cstddef>
#include <vector>

namespace glueback {

struct DeltaComplex {
  /// faces[d][j][i] is the i-th face of the j-th d-cell; faces[0] holds
  /// one empty list per vertex.
  std::vector<std::vector<std::vector<int>>> faces;

  int dim() const { return static_cast<int>(faces.size()) - 1; }
  std::size_t count(int d) const {
    return d >= 0 && d < static_cast<int>(faces.size()) ? faces[static_cast<std::size_t>(d)].size() : 0;
  }
  std::size_t total_cells() const;
};

/// Marks a set of cells per dimension.
struct Subcomplex {
  std::vector<std::vector<bool>> member;

  static Subcomplex empty(const DeltaComplex& k);
  static Subcomplex all(const DeltaComplex& k);
  bool contains(int d, std::size_t j) const { return member[static_cast<std::size_t>(d)][j]; }
  std::size_t count(int d) const;
};

/// A dimension-preserving cellular self-map that sends cells to cells
/// with the same face ordering (so no signs are needed).
struct CellMap {
  std::vector<std::vector<int>> target;

  static CellMap identity(const DeltaComplex& k);
};

/// Throws std::logic_error unless every face index is in range and the
/// simplicial identities d_i d_j = d_{j-1} d_i (i < j) hold.
void check_simplicial_identities(const DeltaComplex& k);

/// Throws std::invalid_argument unless f commutes with all face maps.
void check_chain_map(const DeltaComplex& k, const CellMap& f);

/// True when every face of every member is a member.
bool is_closed(const DeltaComplex& k, const Subcomplex& s);

/// The members of s as a complex of their own, renumbered in order.
DeltaComplex restrict(const DeltaComplex& k, const Subcomplex& s);

long euler_characteristic(const DeltaComplex& k);

/// Component label for every vertex (labels are 0..count-1 in order of
/// first appearance).
std::vector<int> vertex_components(const DeltaComplex& k);
int component_count(const DeltaComplex& k);

/// Components of the cells outside s, two cells being adjacent when one
/// is a face of the other.
int complement_components(const DeltaComplex& k, const Subcomplex& s);

/// Number of cells fixed by f, with alternating signs.
long fixed_cell_euler(const DeltaComplex& k, const CellMap& f);

}  // namespace glueback
