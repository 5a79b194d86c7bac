#pragma once

// Equivariant cut-and-paste on orbit spaces: excise a neighborhood, glue
// two remainders along isomorphic sections, and carry the colorings over.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "glueback/characteristic_data.hpp"
#include "glueback/corner_complex.hpp"

namespace glueback {

enum class ExcisionKind { interior_ball, boundary_collar, general };

const char* to_string(ExcisionKind k);

/// The open neighborhood to remove is the open star of `removed`.
struct Excision {
  ExcisionKind kind = ExcisionKind::general;
  std::vector<int> removed;
};

Excision interior_ball(const StratifiedComplex& q, int vertex);
Excision boundary_collar(const StratifiedComplex& q, std::size_t component);

struct ExcisionResult {
  /// Full subcomplex on the vertices that survive, facets restricted.
  StratifiedComplex remainder;
  /// The frontier, with facets induced from the facets of q that meet it.
  StratifiedComplex section;
  /// section facet index -> facet index in q
  std::vector<int> section_facet_origin;
  /// Whether the section has boundary (it then meets the boundary of q).
  bool section_has_boundary = false;
};

/// Throws SurgeryError if the remainder or section is not a valid complex.
ExcisionResult excise(const StratifiedComplex& q, const Excision& k);

struct Matching {
  /// Section vertex of the first input -> section vertex of the second.
  std::map<int, int> vertex_map;
  /// Applied to the second coloring; identity when absent.
  std::optional<Gf2Matrix> sigma;
};

class SurgeryError : public std::runtime_error {
public:
  enum class Kind { invalid_excision, no_matching, color_mismatch, not_simplicial, unsupported };
  SurgeryError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

private:
  Kind kind_;
};

struct SurgeryResult {
  StratifiedComplex q;
  Coloring lambda;
  /// Vertex of the second input -> vertex of the result.
  std::map<int, int> second_vertices;
  Matching match;
  /// Euler characteristics of the two remainders and the section.
  long chi_remainder1 = 0, chi_remainder2 = 0, chi_section = 0;
  bool merged_facets = false;
};

/// Glues (q1 - k1) and (q2 - k2) along their sections. Without an explicit
/// match, searches for a color-matching isomorphism of the sections, first
/// with sigma = identity and then over GL(n,2). Nontrivial bundles are
/// rejected.
SurgeryResult cut_and_paste(const StratifiedComplex& q1, const Coloring& l1, const Excision& k1,
                            const StratifiedComplex& q2, const Coloring& l2, const Excision& k2,
                            const std::optional<Matching>& match = std::nullopt,
                            const std::optional<Cocycle>& xi1 = std::nullopt,
                            const std::optional<Cocycle>& xi2 = std::nullopt);

/// Replaces a top simplex by the cone from a new vertex over its boundary.
StratifiedComplex stellar_subdivide(const StratifiedComplex& q, const Simplex& top, int new_vertex);

/// Surrounds an interior vertex by a smaller ball: every edge out of it
/// gets a new vertex and each prism between the two links is cut by the
/// staircase rule.
StratifiedComplex shrink_star(const StratifiedComplex& q, int vertex, int first_new_vertex);

/// Subdivides until some top simplex has only interior vertices and cones
/// it off; returns the refined complex and the cone vertex.
std::pair<StratifiedComplex, int> prepare_interior_ball(const StratifiedComplex& q);

SurgeryResult equivariant_connected_sum(const StratifiedComplex& q1, const Coloring& l1,
                                        const StratifiedComplex& q2, const Coloring& l2);

struct FillResult {
  StratifiedComplex q;
  Coloring lambda;
  std::string pattern;  // "football" or "simplex(3)"
  /// The standard model glued in, with its coloring transported by the match.
  StratifiedComplex model;
  Coloring model_coloring;
  /// sigma with sigma(model color) = color of the matched boundary facet.
  Gf2Matrix sigma;
  /// Cone vertex of the model, as a vertex of q.
  int center = -1;
  /// Cone vertex inside model.
  int model_center = -1;
  /// Vertex of the glued section in q -> vertex of the model.
  std::map<int, int> section_to_model;
};

/// Caps off a football- or tetrahedron-patterned boundary sphere.
FillResult fill_hole(const StratifiedComplex& q, const Coloring& lambda, std::size_t component);

/// Cuts the cap back out and re-glues the collared model.
std::pair<StratifiedComplex, Coloring> undo_fill(const FillResult& f);

}  // namespace glueback
