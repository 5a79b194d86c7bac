#pragma once

// Instance checks of the fixed-point and Euler identities on built models,
// and classification of boundary spheres of 3-dimensional orbit spaces.

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "glueback/characteristic_data.hpp"
#include "glueback/corner_complex.hpp"
#include "glueback/glue_back.hpp"

namespace glueback {

enum class Outcome { pass, fail, not_applicable, hypothesis_failed };

const char* to_string(Outcome o);

struct TheoremReport {
  std::string theorem;
  std::string inputs;
  std::string left;
  std::string relation;
  std::string right;
  Outcome outcome = Outcome::not_applicable;
  /// Counterexample or note.
  std::string detail;

  bool failed() const { return outcome == Outcome::fail || outcome == Outcome::hypothesis_failed; }
};

/// chi(Sigma) = 4 chi(F) - m over a 2-dimensional orbit space of rank 2,
/// m the number of corner pre-faces.
TheoremReport check_surface_euler(const StratifiedComplex& q, const Coloring& lambda);

/// Dimension of a GF(2)-homology sphere: -1 when empty, nullopt when the
/// complex is not a homology sphere.
std::optional<int> homology_sphere_dimension(const DeltaComplex& k);

/// n - n(G) = sum over corank-1 H of (n(H) - n(G)).
TheoremReport check_borel(const BuiltManifold& m);

/// dim H1(Fix tau; GF2) <= dim H1(M; GF2) + b1(M) for an
/// orientation-reversing tau on a connected closed orientable M.
TheoremReport check_kobayashi(const BuiltManifold& m, const GroupElement& tau);

/// L(g) against chi(Fix g) for the identity and every nonzero g.
std::vector<TheoremReport> check_lefschetz_all(const BuiltManifold& m);

enum class BoundaryPattern { football, tetrahedron, other };

const char* to_string(BoundaryPattern p);

struct BoundaryVerdict {
  std::size_t component = 0;
  BoundaryPattern pattern = BoundaryPattern::other;
  std::string detail;
};

std::vector<BoundaryVerdict> classify_boundary(const StratifiedComplex& q);

/// Face counts (one entry per allowed size, ascending sizes) of every
/// solution of sum (6 - k) f_k = 12 for a trivalent tessellation of the
/// 2-sphere. Sizes must lie in 2..5.
std::vector<std::vector<int>> enumerate_sphere_patterns(const std::set<int>& allowed_face_sizes);

/// The number of components must be a power of two dividing 2^rank.
TheoremReport check_component_counts(const BuiltManifold& m);

struct SuiteSelection {
  bool euler = true;
  bool borel = true;
  bool lefschetz = true;
  bool kobayashi = true;
  bool boundary = true;
  bool components = true;
};

std::vector<TheoremReport> run_suite(const StratifiedComplex& q, const Coloring& lambda, const Cocycle& xi,
                                     const SuiteSelection& which = {});

}  // namespace glueback
