#pragma once

// Exact homology of Delta-complexes over GF(2), Q and Z, plus induced maps
// of cell permutations on rational homology.

#include <cstddef>
#include <optional>
#include <vector>

#include "glueback/cell_complex.hpp"
#include "glueback/exact_linear.hpp"

namespace glueback {

enum class Coefficients { gf2, rational, integral };

/// Boundary operator C_d -> C_{d-1} with alternating signs.
SparseIntMatrix boundary_matrix(const DeltaComplex& k, int d);
Gf2Matrix boundary_matrix_gf2(const DeltaComplex& k, int d);

/// Throws std::logic_error if some composite boundary is nonzero.
void check_boundary_squared(const DeltaComplex& k);

std::vector<std::size_t> gf2_betti(const DeltaComplex& k);
std::vector<std::size_t> rational_betti(const DeltaComplex& k);

struct IntegralHomology {
  std::vector<std::size_t> free_rank;
  /// Invariant factors greater than one, per degree.
  std::vector<std::vector<BigInt>> torsion;
};

IntegralHomology integral_homology(const DeltaComplex& k);

/// GF(2) Betti numbers read off integral homology by universal coefficients.
std::vector<std::size_t> gf2_betti_from_integral(const IntegralHomology& h);

struct HomologyProfile {
  std::vector<std::size_t> gf2_betti;
  std::vector<std::size_t> rational_betti;
  std::vector<std::vector<BigInt>> torsion;
  long euler = 0;
  /// Top rational Betti number equals the number of components; meaningful
  /// for closed pseudo-manifolds.
  bool orientable = false;
};

HomologyProfile homology_profile(const DeltaComplex& k);

/// Rational homology with explicit cycle representatives, so that cellular
/// maps can be pushed through.
class RationalHomology {
public:
  explicit RationalHomology(const DeltaComplex& k);

  std::size_t betti(int d) const { return basis_[static_cast<std::size_t>(d)].size(); }
  /// Cycle representatives of a basis in degree d as sparse chains.
  const std::vector<std::vector<std::pair<int, Rational>>>& basis(int d) const {
    return basis_[static_cast<std::size_t>(d)];
  }
  /// Coordinates of the class of a d-cycle; throws if the chain is not a cycle.
  std::vector<Rational> coordinates(int d, std::vector<std::pair<int, Rational>> chain) const;

private:
  using Column = std::vector<std::pair<int, Rational>>;
  std::vector<std::vector<Column>> basis_;
  // per degree: reduced boundary columns of the next degree, keyed by low
  std::vector<std::vector<int>> low_owner_;
  std::vector<std::vector<Column>> reduced_next_;
  // per degree: essential index -> basis position
  std::vector<std::vector<int>> essential_pos_;
};

/// Matrix of f_* on H_d(k; Q) in the basis of RationalHomology.
RatMatrix induced_map(const RationalHomology& h, const DeltaComplex& k, const CellMap& f, int d);
RatMatrix induced_map(const DeltaComplex& k, const CellMap& f, int d);

/// Alternating sum of traces of f_* on rational homology.
BigInt lefschetz_number(const DeltaComplex& k, const CellMap& f);
BigInt lefschetz_number(const RationalHomology& h, const DeltaComplex& k, const CellMap& f);

enum class OrientationAction { preserving, reversing, not_orientable, moves_component };

/// Effect of f on the top rational class of each connected component.
std::vector<OrientationAction> orientation_action(const DeltaComplex& k, const CellMap& f);

/// Number of components of k with the cells of s removed.
int separation_check(const DeltaComplex& k, const Subcomplex& s);

const char* to_string(OrientationAction a);

}  // namespace glueback
