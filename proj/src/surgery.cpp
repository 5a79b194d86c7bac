#include "glueback/surgery.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "glueback/catalog.hpp"
#include "glueback/verify.hpp"

namespace glueback {

namespace {

std::size_t sz(int d) { return static_cast<std::size_t>(d); }

Simplex without(const Simplex& s, std::size_t i) {
  Simplex out;
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (k != i) out.push_back(s[k]);
  }
  return out;
}

int max_vertex(const StratifiedComplex& q) { return q.vertices().empty() ? -1 : q.vertices().back(); }

template <typename F>
void for_each_face(const Simplex& s, F&& f) {
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << s.size()); ++mask) {
    Simplex face;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if ((mask >> i) & 1u) face.push_back(s[i]);
    }
    f(face);
  }
}

std::set<Simplex> closure(const std::vector<Simplex>& tops) {
  std::set<Simplex> out;
  for (const auto& t : tops) for_each_face(t, [&](const Simplex& f) { out.insert(f); });
  return out;
}

Simplex mapped(const Simplex& s, const std::map<int, int>& m) {
  Simplex t;
  for (int v : s) t.push_back(m.at(v));
  std::sort(t.begin(), t.end());
  return t;
}

[[noreturn]] void fail(SurgeryError::Kind kind, const std::string& msg) { throw SurgeryError(kind, msg); }

std::vector<GroupElement> section_colors(const ExcisionResult& e, const StratifiedComplex& q, const Coloring& l) {
  std::vector<GroupElement> out;
  for (int origin : e.section_facet_origin) out.push_back(l.colors.at(q.facet(sz(origin)).name));
  return out;
}

bool is_trivial_bundle(const StratifiedComplex& q, const std::optional<Cocycle>& xi) {
  return !xi || normalize_cocycle(q, *xi).is_zero();
}

}  // namespace

const char* to_string(ExcisionKind k) {
  switch (k) {
    case ExcisionKind::interior_ball: return "interior-ball";
    case ExcisionKind::boundary_collar: return "boundary-collar";
    case ExcisionKind::general: return "general";
  }
  return "?";
}

Excision interior_ball(const StratifiedComplex& q, int vertex) {
  if (!q.index_of(Simplex{vertex})) fail(SurgeryError::Kind::invalid_excision, "no vertex " + std::to_string(vertex));
  if (q.vertex_on_boundary(vertex)) {
    fail(SurgeryError::Kind::invalid_excision, "vertex " + std::to_string(vertex) + " lies on the boundary");
  }
  return Excision{ExcisionKind::interior_ball, {vertex}};
}

Excision boundary_collar(const StratifiedComplex& q, std::size_t component) {
  const auto comps = boundary_components(q);
  if (component >= comps.size()) {
    fail(SurgeryError::Kind::invalid_excision, "no boundary component " + std::to_string(component));
  }
  return Excision{ExcisionKind::boundary_collar, comps[component].vertices};
}

ExcisionResult excise(const StratifiedComplex& q, const Excision& k) {
  const int n = q.dim();
  if (n < 2) fail(SurgeryError::Kind::unsupported, "surgery needs dimension at least 2");
  const std::set<int> removed(k.removed.begin(), k.removed.end());
  if (removed.empty()) fail(SurgeryError::Kind::invalid_excision, "nothing to remove");
  std::vector<int> keep;
  for (int v : q.vertices()) {
    if (!removed.count(v)) keep.push_back(v);
  }

  std::set<Simplex> frontier;
  for (const auto& t : q.simplices(n)) {
    Simplex rest;
    for (int v : t) {
      if (!removed.count(v)) rest.push_back(v);
    }
    if (rest.size() < t.size() && !rest.empty()) frontier.insert(rest);
  }
  std::vector<Simplex> section_tops;
  for (const auto& s : frontier) {
    if (s.size() == sz(n)) section_tops.push_back(s);
  }
  const auto section_faces = closure(section_tops);
  for (const auto& s : frontier) {
    if (!section_faces.count(s)) {
      fail(SurgeryError::Kind::invalid_excision, "the frontier of the excision is not pure");
    }
  }

  ExcisionResult out;
  try {
    out.remainder = induced_subcomplex(q, keep);
  } catch (const std::invalid_argument& e) {
    fail(SurgeryError::Kind::invalid_excision, std::string("remainder: ") + e.what());
  }
  {
    // the remainder must be a valid complex once the section is a facet
    std::vector<FacetSpec> facets = out.remainder.facets();
    facets.push_back({"section", section_tops});
    try {
      const StratifiedComplex check(n, out.remainder.simplices(n), facets);
      const auto report = validate(check);
      if (!report.ok()) fail(SurgeryError::Kind::invalid_excision, "remainder is not valid:\n" + report.to_string());
    } catch (const std::invalid_argument& e) {
      fail(SurgeryError::Kind::invalid_excision, std::string("remainder: ") + e.what());
    }
  }

  std::vector<FacetSpec> sfacets;
  for (std::size_t f = 0; f < q.facet_count(); ++f) {
    FacetSpec g{q.facet(f).name, {}};
    for (const auto& s : section_faces) {
      if (s.size() != sz(n - 1)) continue;
      const auto j = q.index_of(s);
      const auto& fs = q.facet_set(n - 2, sz(*j));
      if (std::binary_search(fs.begin(), fs.end(), static_cast<int>(f))) g.simplices.push_back(s);
    }
    if (!g.simplices.empty()) {
      sfacets.push_back(std::move(g));
      out.section_facet_origin.push_back(static_cast<int>(f));
    }
  }
  try {
    out.section = StratifiedComplex(n - 1, section_tops, sfacets);
  } catch (const std::invalid_argument& e) {
    fail(SurgeryError::Kind::invalid_excision, std::string("section: ") + e.what());
  }
  const auto report = validate(out.section);
  if (!report.ok()) fail(SurgeryError::Kind::invalid_excision, "section is not valid:\n" + report.to_string());
  for (std::size_t j = 0; j < out.section.count(n - 2); ++j) {
    if (out.section.codim1_degree()[j] == 1) out.section_has_boundary = true;
  }
  return out;
}

SurgeryResult cut_and_paste(const StratifiedComplex& q1, const Coloring& l1, const Excision& k1,
                            const StratifiedComplex& q2, const Coloring& l2, const Excision& k2,
                            const std::optional<Matching>& match, const std::optional<Cocycle>& xi1,
                            const std::optional<Cocycle>& xi2) {
  if (!is_trivial_bundle(q1, xi1) || !is_trivial_bundle(q2, xi2)) {
    fail(SurgeryError::Kind::unsupported, "surgery supports only trivial bundle data");
  }
  if (l1.rank != l2.rank) fail(SurgeryError::Kind::color_mismatch, "colorings have different ranks");
  if (q1.dim() != q2.dim()) fail(SurgeryError::Kind::invalid_excision, "inputs have different dimensions");
  if (!validate_coloring(q1, l1).ok()) throw std::invalid_argument("first coloring is not valid");
  if (!validate_coloring(q2, l2).ok()) throw std::invalid_argument("second coloring is not valid");
  const int n = q1.dim();
  const int rank = l1.rank;
  const ExcisionResult e1 = excise(q1, k1);
  const ExcisionResult e2 = excise(q2, k2);
  const auto c1 = section_colors(e1, q1, l1);
  const auto c2 = section_colors(e2, q2, l2);

  SurgeryResult res;
  std::vector<int> section_facet_map;  // section-1 facet -> section-2 facet
  auto colors_match = [&](const std::vector<int>& fmap, const Gf2Matrix* sigma, std::string* why) {
    for (std::size_t i = 0; i < fmap.size(); ++i) {
      const GroupElement other = sigma ? apply(*sigma, c2[sz(fmap[i])]) : c2[sz(fmap[i])];
      if (other != c1[i]) {
        if (why) {
          *why = "facet " + e1.section.facet(i).name + " colored " + c1[i].to_string() + " meets facet " +
                 e2.section.facet(sz(fmap[i])).name + " colored " + other.to_string();
        }
        return false;
      }
    }
    return true;
  };

  if (match) {
    res.match = *match;
    // the given map must be an isomorphism of the sections
    std::map<int, int> vm;
    for (int v : e1.section.vertices()) {
      auto it = match->vertex_map.find(v);
      if (it == match->vertex_map.end()) {
        fail(SurgeryError::Kind::no_matching, "match omits section vertex " + std::to_string(v));
      }
      vm[v] = it->second;
    }
    std::optional<FacialIsomorphism> iso;
    try {
      iso = find_facial_isomorphism(relabel(e1.section, vm), e2.section);
    } catch (const std::exception&) {
      iso.reset();
    }
    std::set<Simplex> image, target(e2.section.simplices(n - 1).begin(), e2.section.simplices(n - 1).end());
    for (const auto& s : e1.section.simplices(n - 1)) image.insert(mapped(s, vm));
    if (image != target || !iso) fail(SurgeryError::Kind::no_matching, "match is not a facial isomorphism of the sections");
    // recompute the facet correspondence directly from the given vertex map
    section_facet_map.assign(e1.section.facet_count(), -1);
    for (std::size_t i = 0; i < e1.section.facet_count(); ++i) {
      const Simplex img = mapped(e1.section.facet(i).simplices.front(), vm);
      for (std::size_t j = 0; j < e2.section.facet_count(); ++j) {
        const auto& sims = e2.section.facet(j).simplices;
        if (std::binary_search(sims.begin(), sims.end(), img)) section_facet_map[i] = static_cast<int>(j);
      }
      if (section_facet_map[i] < 0) fail(SurgeryError::Kind::no_matching, "match does not carry facets to facets");
    }
    std::string why;
    if (!colors_match(section_facet_map, match->sigma ? &*match->sigma : nullptr, &why)) {
      fail(SurgeryError::Kind::color_mismatch, "colors do not match: " + why);
    }
  } else {
    bool any_iso = false;
    std::string first_mismatch;
    std::optional<FacialIsomorphism> found = find_facial_isomorphism(e1.section, e2.section, [&](const FacialIsomorphism& iso) {
      any_iso = true;
      std::string why;
      if (colors_match(iso.facet_map, nullptr, &why)) return true;
      if (first_mismatch.empty()) first_mismatch = why;
      return false;
    });
    std::optional<Gf2Matrix> sigma;
    if (!found && any_iso && rank <= 4) {
      for (const auto& s : enumerate_glnq2(rank)) {
        found = find_facial_isomorphism(e1.section, e2.section,
                                        [&](const FacialIsomorphism& iso) { return colors_match(iso.facet_map, &s, nullptr); });
        if (found) {
          sigma = s;
          break;
        }
      }
    }
    if (!any_iso) fail(SurgeryError::Kind::no_matching, "sections are not isomorphic");
    if (!found) fail(SurgeryError::Kind::color_mismatch, "no color-matching isomorphism; first mismatch: " + first_mismatch);
    res.match.vertex_map = found->vertex_map;
    res.match.sigma = sigma;
    section_facet_map = found->facet_map;
  }
  const std::map<int, int>& phi = res.match.vertex_map;

  // vertices of the second side in the result
  std::map<int, int> inverse;
  for (const auto& [a, b] : phi) inverse[b] = a;
  const int offset = max_vertex(q1) + 1;
  for (int v : e2.remainder.vertices()) {
    auto it = inverse.find(v);
    res.second_vertices[v] = it != inverse.end() ? it->second : offset + v;
  }

  std::vector<Simplex> tops = e1.remainder.simplices(n);
  std::vector<Simplex> tops2;
  for (const auto& t : e2.remainder.simplices(n)) tops2.push_back(mapped(t, res.second_vertices));
  {
    const auto a = closure(tops), b = closure(tops2);
    const auto s = closure(e1.section.simplices(n - 1));
    for (const auto& x : b) {
      if (a.count(x) && !s.count(x)) {
        std::string where;
        for (int v : x) where += (where.empty() ? "" : " ") + std::to_string(v);
        fail(SurgeryError::Kind::not_simplicial, "gluing identifies simplex (" + where + ") outside the section");
      }
    }
  }
  tops.insert(tops.end(), tops2.begin(), tops2.end());

  // facets: side one keeps its names, side two is primed; case (a) merges
  std::set<std::string> names;
  for (const auto& f : e1.remainder.facets()) names.insert(f.name);
  std::map<std::string, std::string> name2;
  for (const auto& f : e2.remainder.facets()) {
    std::string nm = f.name + "'";
    while (names.count(nm)) nm += "'";
    names.insert(nm);
    name2[f.name] = nm;
  }
  std::map<std::string, FacetSpec> facets;
  std::map<std::string, GroupElement> colors;
  std::vector<std::string> order;
  for (const auto& f : e1.remainder.facets()) {
    facets[f.name] = f;
    colors.emplace(f.name, l1.colors.at(f.name));
    order.push_back(f.name);
  }
  for (const auto& f : e2.remainder.facets()) {
    FacetSpec g{name2.at(f.name), {}};
    for (const auto& s : f.simplices) g.simplices.push_back(mapped(s, res.second_vertices));
    const GroupElement c = res.match.sigma ? apply(*res.match.sigma, l2.colors.at(f.name)) : l2.colors.at(f.name);
    facets[g.name] = g;
    colors.emplace(g.name, c);
    order.push_back(g.name);
  }
  std::map<std::string, std::string> parent;
  for (const auto& nm : order) parent[nm] = nm;
  auto find = [&](std::string x) {
    while (parent[x] != x) x = parent[x];
    return x;
  };
  for (std::size_t i = 0; i < section_facet_map.size(); ++i) {
    const std::string a = q1.facet(sz(e1.section_facet_origin[i])).name;
    const std::string b = name2.count(q2.facet(sz(e2.section_facet_origin[sz(section_facet_map[i])])).name)
                              ? name2.at(q2.facet(sz(e2.section_facet_origin[sz(section_facet_map[i])])).name)
                              : std::string();
    if (!facets.count(a) || b.empty()) continue;
    if (colors.at(a) != colors.at(b)) {
      fail(SurgeryError::Kind::color_mismatch, "facets " + a + " and " + b + " would merge with different colors");
    }
    const std::string ra = find(a), rb = find(b);
    if (ra != rb) {
      // keep the name that came first
      const auto pa = std::find(order.begin(), order.end(), ra), pb = std::find(order.begin(), order.end(), rb);
      if (pa < pb) {
        parent[rb] = ra;
      } else {
        parent[ra] = rb;
      }
      res.merged_facets = true;
    }
  }
  std::vector<FacetSpec> out_facets;
  std::map<std::string, std::size_t> slot;
  Coloring lambda{rank, {}};
  for (const auto& nm : order) {
    const std::string root = find(nm);
    auto [it, fresh] = slot.try_emplace(root, out_facets.size());
    if (fresh) {
      out_facets.push_back({root, {}});
      lambda.colors.emplace(root, colors.at(root));
    }
    auto& dst = out_facets[it->second].simplices;
    dst.insert(dst.end(), facets.at(nm).simplices.begin(), facets.at(nm).simplices.end());
  }
  try {
    res.q = StratifiedComplex(n, tops, out_facets);
  } catch (const std::invalid_argument& e) {
    fail(SurgeryError::Kind::not_simplicial, std::string("glued complex: ") + e.what());
  }
  const auto report = validate(res.q);
  if (!report.ok()) fail(SurgeryError::Kind::invalid_excision, "glued complex is not valid:\n" + report.to_string());
  const auto creport = validate_coloring(res.q, lambda);
  if (!creport.ok()) fail(SurgeryError::Kind::color_mismatch, "glued coloring is not valid:\n" + creport.to_string());
  res.lambda = std::move(lambda);
  res.chi_remainder1 = euler_characteristic(e1.remainder);
  res.chi_remainder2 = euler_characteristic(e2.remainder);
  res.chi_section = euler_characteristic(e1.section);
  return res;
}

StratifiedComplex stellar_subdivide(const StratifiedComplex& q, const Simplex& top, int new_vertex) {
  const int n = q.dim();
  std::vector<Simplex> tops;
  bool found = false;
  for (const auto& t : q.simplices(n)) {
    if (t == top) {
      found = true;
      continue;
    }
    tops.push_back(t);
  }
  if (!found) throw std::invalid_argument("stellar_subdivide: not a top simplex");
  if (q.index_of(Simplex{new_vertex})) throw std::invalid_argument("stellar_subdivide: vertex already present");
  for (std::size_t i = 0; i < top.size(); ++i) {
    Simplex s = without(top, i);
    s.push_back(new_vertex);
    std::sort(s.begin(), s.end());
    tops.push_back(std::move(s));
  }
  return StratifiedComplex(n, std::move(tops), q.facets());
}

StratifiedComplex shrink_star(const StratifiedComplex& q, int vertex, int first_new_vertex) {
  if (q.vertex_on_boundary(vertex)) throw std::invalid_argument("shrink_star: vertex lies on the boundary");
  const int n = q.dim();
  std::set<int> nbrs;
  for (const auto& e : q.simplices(1)) {
    if (e[0] == vertex) nbrs.insert(e[1]);
    if (e[1] == vertex) nbrs.insert(e[0]);
  }
  std::map<int, int> mid;
  int next = first_new_vertex;
  for (int w : nbrs) {
    if (q.index_of(Simplex{next})) throw std::invalid_argument("shrink_star: vertex id in use");
    mid[w] = next++;
  }
  std::vector<Simplex> tops;
  for (const auto& t : q.simplices(n)) {
    if (!std::binary_search(t.begin(), t.end(), vertex)) {
      tops.push_back(t);
      continue;
    }
    Simplex tau;
    for (int w : t) {
      if (w != vertex) tau.push_back(w);
    }
    Simplex inner{vertex};
    for (int w : tau) inner.push_back(mid.at(w));
    std::sort(inner.begin(), inner.end());
    tops.push_back(inner);
    for (std::size_t i = 0; i < tau.size(); ++i) {
      Simplex s;
      for (std::size_t j = 0; j <= i; ++j) s.push_back(mid.at(tau[j]));
      for (std::size_t j = i; j < tau.size(); ++j) s.push_back(tau[j]);
      std::sort(s.begin(), s.end());
      tops.push_back(std::move(s));
    }
  }
  return StratifiedComplex(n, std::move(tops), q.facets());
}

std::pair<StratifiedComplex, int> prepare_interior_ball(const StratifiedComplex& q) {
  const int n = q.dim();
  auto interior_top = [](const StratifiedComplex& c) -> std::optional<Simplex> {
    for (const auto& t : c.simplices(c.dim())) {
      if (std::none_of(t.begin(), t.end(), [&](int v) { return c.vertex_on_boundary(v); })) return t;
    }
    return std::nullopt;
  };
  if (auto t = interior_top(q)) {
    const int c = max_vertex(q) + 1;
    return {stellar_subdivide(q, *t, c), c};
  }
  StratifiedComplex work = q;
  int v = -1;
  for (int w : q.vertices()) {
    if (!q.vertex_on_boundary(w)) {
      v = w;
      break;
    }
  }
  if (v < 0) {
    v = max_vertex(q) + 1;
    work = stellar_subdivide(q, q.simplices(n).front(), v);
  }
  work = shrink_star(work, v, max_vertex(work) + 1);
  const auto t = interior_top(work);
  if (!t) throw std::logic_error("no interior simplex after shrinking a star");
  const int c = max_vertex(work) + 1;
  return {stellar_subdivide(work, *t, c), c};
}

SurgeryResult equivariant_connected_sum(const StratifiedComplex& q1, const Coloring& l1, const StratifiedComplex& q2,
                                        const Coloring& l2) {
  const auto [p1, c1] = prepare_interior_ball(q1);
  const auto [p2, c2] = prepare_interior_ball(q2);
  const ExcisionResult e1 = excise(p1, interior_ball(p1, c1));
  const ExcisionResult e2 = excise(p2, interior_ball(p2, c2));
  // both sections are the boundary of a simplex: match in vertex order
  Matching m;
  const auto& v1 = e1.section.vertices();
  const auto& v2 = e2.section.vertices();
  if (v1.size() != v2.size()) throw std::logic_error("sections of different size");
  for (std::size_t i = 0; i < v1.size(); ++i) m.vertex_map[v1[i]] = v2[i];
  return cut_and_paste(p1, l1, interior_ball(p1, c1), p2, l2, interior_ball(p2, c2), m);
}

namespace {

// Largest vertex of `outer` adjacent to v.
int collar_foot(const StratifiedComplex& q, int v, const std::set<int>& outer) {
  int best = -1;
  for (const auto& e : q.simplices(1)) {
    int other = e[0] == v ? e[1] : (e[1] == v ? e[0] : -1);
    if (other >= 0 && outer.count(other)) best = std::max(best, other);
  }
  return best;
}

}  // namespace

FillResult fill_hole(const StratifiedComplex& q, const Coloring& lambda, std::size_t component) {
  if (q.dim() != 3) fail(SurgeryError::Kind::unsupported, "fill_hole needs a 3-dimensional orbit space");
  const auto comps = boundary_components(q);
  if (component >= comps.size()) fail(SurgeryError::Kind::invalid_excision, "no boundary component " + std::to_string(component));
  const BoundaryComponent& comp = comps[component];
  const BoundaryPattern kind = classify_boundary(q)[component].pattern;
  const std::string pattern = kind == BoundaryPattern::football ? "football" : kind == BoundaryPattern::tetrahedron ? "simplex(3)" : "";
  if (pattern.empty()) fail(SurgeryError::Kind::no_matching, "boundary component is neither football- nor tetrahedron-patterned");

  FillResult out;
  out.pattern = pattern;
  const CatalogModel model = make(pattern);
  out.model = model.q;
  out.model_center = model_center(pattern);
  // every facet bijection of these two patterns is realized by a symmetry
  // of the tessellation, so matching in facet order suffices
  std::vector<GroupElement> from, to;
  std::map<int, int> facet_to_model;
  for (std::size_t i = 0; i < comp.facets.size(); ++i) {
    from.push_back(model.lambda.colors.at(model.q.facet(i).name));
    to.push_back(lambda.colors.at(q.facet(sz(comp.facets[i])).name));
    facet_to_model[comp.facets[i]] = static_cast<int>(i);
  }
  const auto sigma = linear_extension(from, to, lambda.rank);
  if (!sigma) fail(SurgeryError::Kind::color_mismatch, "boundary colors admit no weak match with the model");
  out.sigma = *sigma;
  out.model_coloring.rank = lambda.rank;
  for (std::size_t i = 0; i < comp.facets.size(); ++i) out.model_coloring.colors.emplace(model.q.facet(i).name, to[i]);

  const Excision k1 = boundary_collar(q, component);
  const Excision k2 = boundary_collar(model.q, 0);
  const ExcisionResult e1 = excise(q, k1);
  const ExcisionResult e2 = excise(model.q, k2);
  const std::set<int> outer1(comp.vertices.begin(), comp.vertices.end());
  const auto model_comps = boundary_components(model.q);
  const std::set<int> outer2(model_comps[0].vertices.begin(), model_comps[0].vertices.end());
  // prefer an isomorphism that lines the collars up facet by facet
  auto lined_up = [&](const FacialIsomorphism& iso) {
    for (const auto& [s, t] : iso.vertex_map) {
      const int x = collar_foot(q, s, outer1), y = collar_foot(model.q, t, outer2);
      if (x < 0 || y < 0) return false;
      std::vector<int> fx;
      for (int f : q.facet_set(0, sz(*q.index_of(Simplex{x})))) fx.push_back(facet_to_model.at(f));
      std::sort(fx.begin(), fx.end());
      if (fx != model.q.facet_set(0, sz(*model.q.index_of(Simplex{y})))) return false;
    }
    return true;
  };
  auto iso = find_facial_isomorphism(e1.section, e2.section, lined_up);
  if (!iso) iso = find_facial_isomorphism(e1.section, e2.section);
  if (!iso) fail(SurgeryError::Kind::no_matching, "collar section is not isomorphic to the model's");
  const SurgeryResult r = cut_and_paste(q, lambda, k1, model.q, out.model_coloring, k2, Matching{iso->vertex_map, std::nullopt});
  out.q = r.q;
  out.lambda = r.lambda;
  out.center = r.second_vertices.at(out.model_center);
  out.section_to_model = iso->vertex_map;
  return out;
}

std::pair<StratifiedComplex, Coloring> undo_fill(const FillResult& f) {
  const SurgeryResult r = cut_and_paste(f.q, f.lambda, interior_ball(f.q, f.center), f.model, f.model_coloring,
                                        interior_ball(f.model, f.model_center), Matching{f.section_to_model, std::nullopt});
  return {r.q, r.lambda};
}

}  // namespace glueback
