#include "glueback/characteristic_data.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

#include "glueback/homology.hpp"

namespace glueback {

namespace {

std::size_t sz(int d) { return static_cast<std::size_t>(d); }

std::pair<int, int> edge_key(int u, int v) { return {std::min(u, v), std::max(u, v)}; }

struct Forest {
  std::set<std::pair<int, int>> tree_edges;
  /// vertex -> (parent, component root); roots are their own parent
  std::map<int, int> parent;
  std::map<int, int> root;
  std::vector<int> order;  // breadth-first order
};

Forest spanning_forest(const StratifiedComplex& q) {
  std::map<int, std::vector<int>> adj;
  for (int v : q.vertices()) adj[v];
  for (const auto& e : q.simplices(1)) {
    adj[e[0]].push_back(e[1]);
    adj[e[1]].push_back(e[0]);
  }
  for (auto& [v, nb] : adj) std::sort(nb.begin(), nb.end());
  Forest f;
  for (int r : q.vertices()) {
    if (f.parent.count(r)) continue;
    f.parent[r] = r;
    f.root[r] = r;
    std::deque<int> queue{r};
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      f.order.push_back(u);
      for (int w : adj[u]) {
        if (f.parent.count(w)) continue;
        f.parent[w] = u;
        f.root[w] = r;
        f.tree_edges.insert(edge_key(u, w));
        queue.push_back(w);
      }
    }
  }
  return f;
}

bool independent(const std::vector<GroupElement>& gens, int rank) {
  return Subgroup::span(gens, rank).rank() == static_cast<int>(gens.size());
}

void check_rank(const GroupElement& g, int rank, const std::string& where) {
  if (g.rank() != rank) {
    throw std::invalid_argument(where + ": element " + g.to_string() + " has width " + std::to_string(g.rank()) +
                                ", expected width " + std::to_string(rank));
  }
}

// Express x over the columns of basis; returns false if x is outside the span.
bool express(const std::vector<GroupElement>& basis, const GroupElement& x, int rank, std::vector<bool>& coeffs) {
  Gf2Matrix m(sz(rank), basis.size());
  for (std::size_t c = 0; c < basis.size(); ++c) {
    for (int i = 0; i < rank; ++i) m.set(sz(i), c, basis[c].test(i));
  }
  std::vector<bool> b(sz(rank));
  for (int i = 0; i < rank; ++i) b[sz(i)] = x.test(i);
  return gf2_solve(m, b, coeffs);
}

GroupElement combine(const std::vector<GroupElement>& basis, const std::vector<bool>& coeffs, int rank) {
  GroupElement g = GroupElement::zero(rank);
  for (std::size_t c = 0; c < basis.size(); ++c) {
    if (coeffs[c]) g += basis[c];
  }
  return g;
}

}  // namespace

std::vector<GroupElement> Coloring::by_facet(const StratifiedComplex& q) const {
  std::vector<GroupElement> out;
  for (const auto& f : q.facets()) {
    auto it = colors.find(f.name);
    if (it == colors.end()) throw std::invalid_argument("facet " + f.name + " has no color");
    out.push_back(it->second);
  }
  return out;
}

GroupElement Cocycle::value(int u, int v) const {
  auto it = values.find(edge_key(u, v));
  return it == values.end() ? GroupElement::zero(rank) : it->second;
}

void Cocycle::set(int u, int v, const GroupElement& g) {
  if (u == v) throw std::invalid_argument("cocycle on a degenerate edge");
  check_rank(g, rank, "cocycle");
  if (g.is_zero()) {
    values.erase(edge_key(u, v));
  } else {
    values[edge_key(u, v)] = g;
  }
}

bool Cocycle::is_zero() const {
  return std::all_of(values.begin(), values.end(), [](const auto& e) { return e.second.is_zero(); });
}

Cocycle zero_cocycle(int rank) {
  Cocycle c;
  c.rank = rank;
  return c;
}

Subgroup facet_span(const std::vector<GroupElement>& colors, const std::vector<int>& facet_ids, int rank) {
  std::vector<GroupElement> gens;
  for (int f : facet_ids) gens.push_back(colors[sz(f)]);
  return Subgroup::span(gens, rank);
}

ValidationReport validate_coloring(const StratifiedComplex& q, const Coloring& lambda) {
  ValidationReport report;
  for (const auto& [name, g] : lambda.colors) {
    if (!q.facet_index(name)) throw std::invalid_argument("coloring names unknown facet " + name);
    check_rank(g, lambda.rank, "color of facet " + name);
  }
  std::vector<std::optional<GroupElement>> colors;
  for (const auto& f : q.facets()) {
    auto it = lambda.colors.find(f.name);
    if (it == lambda.colors.end()) {
      report.violations.push_back({ViolationKind::coloring_missing, f.simplices.empty() ? Simplex{} : f.simplices.front(),
                                   "facet " + f.name + " has no color"});
      colors.emplace_back();
      continue;
    }
    if (it->second.is_zero()) {
      report.violations.push_back({ViolationKind::coloring_zero, f.simplices.empty() ? Simplex{} : f.simplices.front(),
                                   "facet " + f.name + " colored zero"});
    }
    colors.push_back(it->second);
  }
  auto ok_at = [&](const std::vector<int>& fs) {
    std::vector<GroupElement> gens;
    for (int f : fs) {
      if (colors[sz(f)]) gens.push_back(*colors[sz(f)]);
    }
    return independent(gens, lambda.rank);
  };
  auto names_of = [&](const std::vector<int>& fs) {
    std::string s;
    for (int f : fs) {
      if (!s.empty()) s += ", ";
      s += q.facet(sz(f)).name + "=" + (colors[sz(f)] ? colors[sz(f)]->to_string() : "?");
    }
    return s;
  };
  // Each simplex's facet set is contained in that of each of its vertices,
  // so vertices carry the whole condition.
  std::vector<bool> vertex_ok(q.count(0), true);
  for (std::size_t v = 0; v < q.count(0); ++v) {
    if (!ok_at(q.facet_set(0, v))) {
      vertex_ok[v] = false;
      report.violations.push_back({ViolationKind::coloring_dependent, q.simplices(0)[v],
                                   "dependent colors " + names_of(q.facet_set(0, v))});
    }
  }
  for (int d = 1; d <= q.dim(); ++d) {
    for (std::size_t j = 0; j < q.count(d); ++j) {
      if (ok_at(q.facet_set(d, j))) continue;
      const auto& s = q.simplices(d)[j];
      const bool vertices_ok = std::all_of(s.begin(), s.end(), [&](int v) {
        return vertex_ok[sz(*q.index_of(Simplex{v}))];
      });
      if (vertices_ok) throw std::logic_error("coloring dependent at a simplex whose vertices pass");
    }
  }
  return report;
}

ValidationReport validate_cocycle(const StratifiedComplex& q, const Cocycle& xi) {
  ValidationReport report;
  for (const auto& [e, g] : xi.values) {
    if (!q.index_of(Simplex{e.first, e.second})) {
      throw std::invalid_argument("cocycle edge (" + std::to_string(e.first) + " " + std::to_string(e.second) +
                                  ") is not in the 1-skeleton");
    }
    check_rank(g, xi.rank, "cocycle");
  }
  if (q.dim() < 2) return report;
  for (const auto& t : q.simplices(2)) {
    const GroupElement sum = xi.value(t[0], t[1]) + xi.value(t[1], t[2]) + xi.value(t[0], t[2]);
    if (!sum.is_zero()) {
      report.violations.push_back({ViolationKind::cocycle_condition, t, "edge values sum to " + sum.to_string()});
    }
  }
  return report;
}

Cocycle normalize_cocycle(const StratifiedComplex& q, const Cocycle& xi) {
  const Forest f = spanning_forest(q);
  std::map<int, GroupElement> phi;
  for (int v : f.order) {
    const int p = f.parent.at(v);
    phi[v] = p == v ? GroupElement::zero(xi.rank) : phi.at(p) + xi.value(p, v);
  }
  Cocycle out = zero_cocycle(xi.rank);
  for (const auto& e : q.simplices(1)) {
    out.set(e[0], e[1], xi.value(e[0], e[1]) + phi.at(e[0]) + phi.at(e[1]));
  }
  return out;
}

Subgroup monodromy_subgroup(const StratifiedComplex& q, const Cocycle& xi, int v) {
  const Forest f = spanning_forest(q);
  const Cocycle norm = normalize_cocycle(q, xi);
  const int r = f.root.at(v);
  std::vector<GroupElement> gens;
  for (const auto& [e, g] : norm.values) {
    if (f.root.at(e.first) == r) gens.push_back(g);
  }
  return Subgroup::span(gens, xi.rank);
}

int covering_components(const StratifiedComplex& q, const Cocycle& xi) {
  const Forest f = spanning_forest(q);
  int total = 0;
  for (const auto& [v, p] : f.parent) {
    if (v != p) continue;
    total += 1 << (xi.rank - monodromy_subgroup(q, xi, v).rank());
  }
  return total;
}

BundleClasses enumerate_bundle_classes(const StratifiedComplex& q, int rank, std::size_t max_classes) {
  const Forest f = spanning_forest(q);
  std::vector<std::pair<int, int>> free_edges;
  std::map<std::pair<int, int>, std::size_t> column;
  for (const auto& e : q.simplices(1)) {
    const auto key = edge_key(e[0], e[1]);
    if (f.tree_edges.count(key)) continue;
    column[key] = free_edges.size();
    free_edges.push_back(key);
  }
  const std::size_t ntri = q.dim() >= 2 ? q.count(2) : 0;
  Gf2Matrix m(ntri, free_edges.size());
  for (std::size_t t = 0; t < ntri; ++t) {
    const auto& tri = q.simplices(2)[t];
    for (auto key : {edge_key(tri[0], tri[1]), edge_key(tri[1], tri[2]), edge_key(tri[0], tri[2])}) {
      auto it = column.find(key);
      if (it != column.end()) m.flip(t, it->second);
    }
  }
  const Gf2Matrix basis = gf2_nullspace(m);
  BundleClasses out;
  out.h1_dimension = basis.rows();
  // cohomology and homology of a finite complex agree in rank over a field
  const auto betti = gf2_betti(q.delta());
  if (betti.size() > 1 && betti[1] != out.h1_dimension) {
    throw std::logic_error("cocycle count disagrees with the first Betti number");
  }
  const std::size_t bits = out.h1_dimension * sz(rank);
  if (bits >= 63 || (std::size_t{1} << bits) > max_classes) {
    throw std::invalid_argument("bundle enumeration would produce 2^" + std::to_string(bits) + " classes");
  }
  for (std::size_t code = 0; code < (std::size_t{1} << bits); ++code) {
    Cocycle xi = zero_cocycle(rank);
    std::map<std::pair<int, int>, GroupElement> acc;
    for (std::size_t b = 0; b < basis.rows(); ++b) {
      const auto g = GroupElement(rank, static_cast<std::uint32_t>((code >> (b * sz(rank))) & ((1u << rank) - 1)));
      if (g.is_zero()) continue;
      for (std::size_t c = 0; c < free_edges.size(); ++c) {
        if (!basis.get(b, c)) continue;
        auto [it, fresh] = acc.try_emplace(free_edges[c], GroupElement::zero(rank));
        it->second += g;
      }
    }
    for (const auto& [e, g] : acc) xi.set(e.first, e.second, g);
    out.representatives.push_back(std::move(xi));
  }
  return out;
}

std::optional<Gf2Matrix> linear_extension(const std::vector<GroupElement>& from, const std::vector<GroupElement>& to,
                                          int rank) {
  if (from.size() != to.size()) throw std::invalid_argument("linear_extension: length mismatch");
  std::vector<GroupElement> fb, tb;
  for (std::size_t i = 0; i < from.size(); ++i) {
    std::vector<bool> coeffs;
    if (express(fb, from[i], rank, coeffs)) {
      if (combine(tb, coeffs, rank) != to[i]) return std::nullopt;
      continue;
    }
    fb.push_back(from[i]);
    tb.push_back(to[i]);
  }
  if (!independent(tb, rank)) return std::nullopt;
  // complete both bases with standard vectors
  for (int j = 0; j < rank && static_cast<int>(fb.size()) < rank; ++j) {
    const auto e = GroupElement::generator(rank, j);
    std::vector<bool> coeffs;
    if (!express(fb, e, rank, coeffs)) fb.push_back(e);
  }
  for (int j = 0; j < rank && static_cast<int>(tb.size()) < rank; ++j) {
    const auto e = GroupElement::generator(rank, j);
    std::vector<bool> coeffs;
    if (!express(tb, e, rank, coeffs)) tb.push_back(e);
  }
  Gf2Matrix sigma(sz(rank), sz(rank));
  for (int j = 0; j < rank; ++j) {
    std::vector<bool> coeffs;
    express(fb, GroupElement::generator(rank, j), rank, coeffs);
    const GroupElement col = combine(tb, coeffs, rank);
    for (int i = 0; i < rank; ++i) sigma.set(sz(i), sz(j), col.test(i));
  }
  return sigma;
}

std::optional<WeakEquivalence> weakly_equivalent(const StratifiedComplex& q1, const Coloring& l1,
                                                 const StratifiedComplex& q2, const Coloring& l2) {
  if (!validate_coloring(q1, l1).ok()) throw std::invalid_argument("first coloring is not valid");
  if (!validate_coloring(q2, l2).ok()) throw std::invalid_argument("second coloring is not valid");
  if (l1.rank != l2.rank) return std::nullopt;
  const auto c1 = l1.by_facet(q1);
  const auto c2 = l2.by_facet(q2);
  std::optional<WeakEquivalence> found;
  for_each_facial_isomorphism(q1, q2, [&](const FacialIsomorphism& iso) {
    std::vector<GroupElement> from, to;
    for (std::size_t i = 0; i < c1.size(); ++i) {
      from.push_back(c2[sz(iso.facet_map[i])]);
      to.push_back(c1[i]);
    }
    auto sigma = linear_extension(from, to, l1.rank);
    if (!sigma) return false;
    found = WeakEquivalence{*sigma, iso};
    return true;
  });
  return found;
}

namespace {

// Backtracking over facet colors with vertex independence pruning.
class ColoringSearch {
public:
  ColoringSearch(const StratifiedComplex& q, int rank) : q_(q), rank_(rank), colors_(q.facet_count()) {
    for (std::size_t v = 0; v < q.count(0); ++v) {
      if (q.facet_set(0, v).size() > 1) vertex_sets_.push_back(q.facet_set(0, v));
    }
  }

  template <typename Visit>
  bool run(Visit&& visit) { return step(0, visit); }

private:
  template <typename Visit>
  bool step(std::size_t i, Visit& visit) {
    if (i == colors_.size()) return visit(colors_);
    for (std::uint32_t b = 1; b < (1u << rank_); ++b) {
      colors_[i] = GroupElement(rank_, b);
      if (!consistent(static_cast<int>(i))) continue;
      if (step(i + 1, visit)) return true;
    }
    return false;
  }

  bool consistent(int i) const {
    for (const auto& fs : vertex_sets_) {
      if (!std::binary_search(fs.begin(), fs.end(), i)) continue;
      std::vector<GroupElement> gens;
      for (int f : fs) {
        if (f <= i) gens.push_back(colors_[sz(f)]);
      }
      if (!independent(gens, rank_)) return false;
    }
    return true;
  }

  const StratifiedComplex& q_;
  int rank_;
  std::vector<GroupElement> colors_;
  std::vector<std::vector<int>> vertex_sets_;
};

Coloring make_coloring(const StratifiedComplex& q, int rank, const std::vector<GroupElement>& colors) {
  Coloring c;
  c.rank = rank;
  for (std::size_t i = 0; i < colors.size(); ++i) c.colors.emplace(q.facet(i).name, colors[i]);
  return c;
}

}  // namespace

ColoringCensus enumerate_colorings(const StratifiedComplex& q, int rank, ColoringQuotient up_to,
                                   std::size_t max_facets) {
  if (q.facet_count() > max_facets) {
    throw std::invalid_argument("coloring enumeration limited to " + std::to_string(max_facets) + " facets");
  }
  if (rank < 1 || rank > 4) throw std::invalid_argument("coloring enumeration needs rank between 1 and 4");
  std::vector<std::vector<GroupElement>> all;
  ColoringSearch(q, rank).run([&](const std::vector<GroupElement>& c) {
    all.push_back(c);
    return false;
  });
  ColoringCensus census;
  census.total = all.size();
  if (up_to == ColoringQuotient::none) {
    for (const auto& c : all) {
      census.representatives.push_back(make_coloring(q, rank, c));
      census.orbit_sizes.push_back(1);
    }
    return census;
  }
  const auto group = enumerate_glnq2(rank);
  std::map<std::vector<GroupElement>, std::size_t> orbit_of;
  for (const auto& c : all) {
    std::vector<GroupElement> best = c;
    for (const auto& sigma : group) {
      std::vector<GroupElement> image;
      for (const auto& g : c) image.push_back(apply(sigma, g));
      best = std::min(best, image);
    }
    auto [it, fresh] = orbit_of.try_emplace(best, census.representatives.size());
    if (fresh) {
      census.representatives.push_back(make_coloring(q, rank, best));
      census.orbit_sizes.push_back(0);
    }
    ++census.orbit_sizes[it->second];
  }
  return census;
}

std::optional<Coloring> first_valid_coloring(const StratifiedComplex& q, int rank) {
  std::optional<Coloring> out;
  ColoringSearch(q, rank).run([&](const std::vector<GroupElement>& c) {
    out = make_coloring(q, rank, c);
    return true;
  });
  return out;
}

}  // namespace glueback
