#pragma once

// Colorings of facets by elements of (Z2)^n and edge cocycles describing
// principal (Z2)^n-bundles over the orbit space.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "glueback/corner_complex.hpp"
#include "glueback/exact_linear.hpp"

namespace glueback {

struct Coloring {
  int rank = 0;
  std::map<std::string, GroupElement> colors;

  /// Colors in facet order of q; throws if a facet is uncolored.
  std::vector<GroupElement> by_facet(const StratifiedComplex& q) const;
};

struct Cocycle {
  int rank = 0;
  /// Keys are (min, max) vertex pairs; absent edges carry zero.
  std::map<std::pair<int, int>, GroupElement> values;

  GroupElement value(int u, int v) const;
  void set(int u, int v, const GroupElement& g);
  bool is_zero() const;
};

Cocycle zero_cocycle(int rank);

/// Throws std::invalid_argument if the coloring names a facet q lacks or
/// has elements of the wrong rank.
ValidationReport validate_coloring(const StratifiedComplex& q, const Coloring& lambda);

/// Throws std::invalid_argument if some edge is not in the 1-skeleton.
ValidationReport validate_cocycle(const StratifiedComplex& q, const Cocycle& xi);

/// Cohomologous cocycle vanishing on the breadth-first spanning forest
/// rooted at the least vertex of each component.
Cocycle normalize_cocycle(const StratifiedComplex& q, const Cocycle& xi);

/// Span of the values of xi on the edges of the component containing
/// vertex v (taken after normalization).
Subgroup monodromy_subgroup(const StratifiedComplex& q, const Cocycle& xi, int v);

/// Connected components of the bundle's total space, summed over the
/// components of q.
int covering_components(const StratifiedComplex& q, const Cocycle& xi);

struct BundleClasses {
  std::size_t h1_dimension = 0;
  std::vector<Cocycle> representatives;
};

/// One normalized representative per class in H^1(q; (Z2)^n). Throws if
/// there would be more than max_classes of them.
BundleClasses enumerate_bundle_classes(const StratifiedComplex& q, int rank, std::size_t max_classes = 4096);

struct WeakEquivalence {
  Gf2Matrix sigma;
  FacialIsomorphism iso;
};

/// Searches for a facial isomorphism f: q1 -> q2 and sigma in GL(n,2) with
/// sigma(lambda2(f(F))) = lambda1(F) for every facet F of q1.
std::optional<WeakEquivalence> weakly_equivalent(const StratifiedComplex& q1, const Coloring& l1,
                                                 const StratifiedComplex& q2, const Coloring& l2);

/// The automorphism sigma with sigma(from[i]) = to[i], if one exists.
std::optional<Gf2Matrix> linear_extension(const std::vector<GroupElement>& from,
                                          const std::vector<GroupElement>& to, int rank);

enum class ColoringQuotient { none, weak };

struct ColoringCensus {
  std::size_t total = 0;
  /// All valid colorings, or one per GL(n,2)-orbit.
  std::vector<Coloring> representatives;
  std::vector<std::size_t> orbit_sizes;
};

ColoringCensus enumerate_colorings(const StratifiedComplex& q, int rank, ColoringQuotient up_to,
                                   std::size_t max_facets = 12);

/// Lexicographically first valid coloring in facet order, elements
/// compared as integers.
std::optional<Coloring> first_valid_coloring(const StratifiedComplex& q, int rank);

/// Subgroup spanned by the colors of the facets in facet_ids.
Subgroup facet_span(const std::vector<GroupElement>& colors, const std::vector<int>& facet_ids, int rank);

}  // namespace glueback
