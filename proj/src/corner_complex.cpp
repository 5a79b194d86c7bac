#include "glueback/corner_complex.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace glueback {

namespace {

std::size_t sz(int d) { return static_cast<std::size_t>(d); }

struct UnionFind {
  std::map<int, int> parent;
  int find(int x) {
    auto it = parent.find(x);
    if (it == parent.end()) {
      parent[x] = x;
      return x;
    }
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

std::string simplex_string(const Simplex& s) {
  std::string out = "(";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(s[i]);
  }
  return out + ")";
}

// All nonempty faces of s, including s.
template <typename F>
void for_each_face(const Simplex& s, F&& f) {
  const std::size_t k = s.size();
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << k); ++mask) {
    Simplex face;
    for (std::size_t i = 0; i < k; ++i) {
      if ((mask >> i) & 1u) face.push_back(s[i]);
    }
    f(face);
  }
}

Simplex without(const Simplex& s, std::size_t i) {
  Simplex out;
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (k != i) out.push_back(s[k]);
  }
  return out;
}

Simplex normalized(Simplex s, const char* what) {
  std::sort(s.begin(), s.end());
  if (std::adjacent_find(s.begin(), s.end()) != s.end()) {
    throw std::invalid_argument(std::string(what) + " " + simplex_string(s) + " repeats a vertex");
  }
  if (!s.empty() && s.front() < 0) {
    throw std::invalid_argument(std::string(what) + " " + simplex_string(s) + " has a negative vertex id");
  }
  return s;
}

// Link of a vertex as the list of maximal link simplices.
std::vector<Simplex> vertex_link(const StratifiedComplex& q, int v) {
  std::vector<Simplex> link;
  for (const auto& top : q.simplices(q.dim())) {
    if (std::binary_search(top.begin(), top.end(), v)) {
      Simplex rest;
      for (int w : top) {
        if (w != v) rest.push_back(w);
      }
      link.push_back(std::move(rest));
    }
  }
  return link;
}

struct LinkShape {
  long euler = 0;
  bool connected = true;
  bool pseudomanifold = true;
  bool has_boundary = false;
  std::size_t points = 0;
};

LinkShape analyse_link(const std::vector<Simplex>& tops, int link_dim) {
  LinkShape shape;
  std::vector<std::set<Simplex>> by_dim(sz(link_dim + 1));
  std::map<Simplex, int> ridge_degree;
  UnionFind uf;
  for (const auto& t : tops) {
    for_each_face(t, [&](const Simplex& f) { by_dim[f.size() - 1].insert(f); });
    for (int w : t) uf.unite(t.front(), w);
    if (link_dim >= 1) {
      for (std::size_t i = 0; i < t.size(); ++i) ++ridge_degree[without(t, i)];
    }
  }
  for (int d = 0; d <= link_dim; ++d) shape.euler += (d % 2 == 0 ? 1 : -1) * static_cast<long>(by_dim[sz(d)].size());
  std::set<int> roots;
  for (const auto& v : by_dim[0]) roots.insert(uf.find(v.front()));
  shape.connected = roots.size() == 1;
  shape.points = by_dim[0].size();
  for (const auto& [ridge, deg] : ridge_degree) {
    if (deg > 2) shape.pseudomanifold = false;
    if (deg == 1) shape.has_boundary = true;
  }
  return shape;
}

}  // namespace

StratifiedComplex::StratifiedComplex(int dim, std::vector<Simplex> top, std::vector<FacetSpec> facets,
                                     std::vector<int> extra_vertices)
    : dim_(dim) {
  if (dim < 1) throw std::invalid_argument("complex dimension must be at least 1");
  simplices_.resize(sz(dim + 1));
  index_.resize(sz(dim + 1));
  std::vector<std::set<Simplex>> closure(sz(dim + 1));
  std::set<Simplex> tops;
  for (auto& t : top) {
    t = normalized(std::move(t), "simplex");
    if (t.size() != sz(dim + 1)) {
      throw std::invalid_argument("simplex " + simplex_string(t) + " does not have " +
                                  std::to_string(dim + 1) + " vertices");
    }
    if (!tops.insert(t).second) throw std::invalid_argument("duplicate simplex " + simplex_string(t));
    for_each_face(t, [&](const Simplex& f) { closure[f.size() - 1].insert(f); });
  }
  for (int v : extra_vertices) {
    if (v < 0) throw std::invalid_argument("negative vertex id " + std::to_string(v));
    closure[0].insert(Simplex{v});
  }
  for (int d = 0; d <= dim; ++d) {
    simplices_[sz(d)].assign(closure[sz(d)].begin(), closure[sz(d)].end());
    for (std::size_t j = 0; j < simplices_[sz(d)].size(); ++j) index_[sz(d)][simplices_[sz(d)][j]] = static_cast<int>(j);
  }
  for (const auto& v : simplices_[0]) vertices_.push_back(v.front());

  codim1_degree_.assign(count(dim - 1), 0);
  for (const auto& t : simplices_[sz(dim)]) {
    for (std::size_t i = 0; i < t.size(); ++i) ++codim1_degree_[sz(index_[sz(dim - 1)].at(without(t, i)))];
  }
  boundary_.resize(sz(dim + 1));
  for (int d = 0; d <= dim; ++d) boundary_[sz(d)].assign(count(d), false);
  for (std::size_t j = 0; j < count(dim - 1); ++j) {
    if (codim1_degree_[j] != 1) continue;
    for_each_face(simplices_[sz(dim - 1)][j], [&](const Simplex& f) {
      boundary_[f.size() - 1][sz(index_[f.size() - 1].at(f))] = true;
    });
  }

  std::set<std::string> names;
  for (auto& facet : facets) {
    if (facet.name.empty()) throw std::invalid_argument("facet with empty name");
    if (!names.insert(facet.name).second) throw std::invalid_argument("duplicate facet name " + facet.name);
    std::set<Simplex> seen;
    for (auto& s : facet.simplices) {
      s = normalized(std::move(s), "facet simplex");
      if (s.size() != sz(dim)) {
        throw std::invalid_argument("facet " + facet.name + " tuple " + simplex_string(s) + " does not have " +
                                    std::to_string(dim) + " vertices");
      }
      if (!index_[sz(dim - 1)].count(s)) {
        throw std::invalid_argument("facet " + facet.name + " tuple " + simplex_string(s) +
                                    " is not a simplex of the complex");
      }
      if (!seen.insert(s).second) {
        throw std::invalid_argument("facet " + facet.name + " lists " + simplex_string(s) + " twice");
      }
    }
    std::sort(facet.simplices.begin(), facet.simplices.end());
  }
  facets_ = std::move(facets);

  facet_sets_.resize(sz(dim + 1));
  for (int d = 0; d <= dim; ++d) facet_sets_[sz(d)].assign(count(d), {});
  for (std::size_t i = 0; i < facets_.size(); ++i) {
    for (const auto& s : facets_[i].simplices) {
      for_each_face(s, [&](const Simplex& f) {
        auto& set = facet_sets_[f.size() - 1][sz(index_[f.size() - 1].at(f))];
        if (set.empty() || set.back() != static_cast<int>(i)) set.push_back(static_cast<int>(i));
      });
    }
  }
}

std::optional<int> StratifiedComplex::index_of(const Simplex& s) const {
  if (s.empty() || s.size() > sz(dim_ + 1)) return std::nullopt;
  const auto& idx = index_[s.size() - 1];
  auto it = idx.find(s);
  if (it == idx.end()) return std::nullopt;
  return it->second;
}

std::optional<int> StratifiedComplex::facet_index(const std::string& name) const {
  for (std::size_t i = 0; i < facets_.size(); ++i) {
    if (facets_[i].name == name) return static_cast<int>(i);
  }
  return std::nullopt;
}

bool StratifiedComplex::vertex_on_boundary(int v) const {
  const auto j = index_of(Simplex{v});
  return j && boundary_[0][sz(*j)];
}

DeltaComplex StratifiedComplex::delta() const {
  DeltaComplex k;
  k.faces.resize(sz(dim_ + 1));
  k.faces[0].assign(count(0), {});
  for (int d = 1; d <= dim_; ++d) {
    for (const auto& s : simplices_[sz(d)]) {
      std::vector<int> fs;
      for (std::size_t i = 0; i < s.size(); ++i) fs.push_back(index_[sz(d - 1)].at(without(s, i)));
      k.faces[sz(d)].push_back(std::move(fs));
    }
  }
  return k;
}

const char* to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::not_pure: return "not-pure";
    case ViolationKind::not_pseudomanifold: return "not-pseudomanifold";
    case ViolationKind::boundary_not_covered: return "boundary-not-covered";
    case ViolationKind::facet_not_on_boundary: return "facet-not-on-boundary";
    case ViolationKind::facet_overlap: return "facet-overlap";
    case ViolationKind::facet_not_pure: return "facet-not-pure";
    case ViolationKind::facet_disconnected: return "facet-disconnected";
    case ViolationKind::niceness: return "niceness";
    case ViolationKind::niceness_depth: return "niceness-depth";
    case ViolationKind::link_condition: return "link-condition";
    case ViolationKind::coloring_missing: return "coloring-missing";
    case ViolationKind::coloring_zero: return "coloring-zero";
    case ViolationKind::coloring_dependent: return "coloring-dependent";
    case ViolationKind::cocycle_condition: return "cocycle-condition";
  }
  return "?";
}

bool ValidationReport::has(ViolationKind k) const {
  return std::any_of(violations.begin(), violations.end(), [k](const Violation& v) { return v.kind == k; });
}

std::string ValidationReport::to_string() const {
  std::ostringstream out;
  for (const auto& v : violations) {
    out << glueback::to_string(v.kind) << " at " << simplex_string(v.where) << ": " << v.message << '\n';
  }
  for (const auto& w : warnings) out << "warning: " << w << '\n';
  return out.str();
}

ValidationReport validate(const StratifiedComplex& q) {
  ValidationReport report;
  const int n = q.dim();
  auto add = [&](ViolationKind kind, Simplex where, std::string msg) {
    report.violations.push_back({kind, std::move(where), std::move(msg)});
  };

  std::set<int> used;
  for (const auto& t : q.simplices(n)) used.insert(t.begin(), t.end());
  for (int v : q.vertices()) {
    if (!used.count(v)) add(ViolationKind::not_pure, {v}, "vertex lies in no top simplex");
  }

  const auto& deg = q.codim1_degree();
  for (std::size_t j = 0; j < q.count(n - 1); ++j) {
    if (deg[j] > 2) {
      add(ViolationKind::not_pseudomanifold, q.simplices(n - 1)[j],
          "lies in " + std::to_string(deg[j]) + " top simplices");
    }
  }

  std::vector<int> cover(q.count(n - 1), 0);
  for (std::size_t i = 0; i < q.facet_count(); ++i) {
    const auto& facet = q.facet(i);
    if (facet.simplices.empty()) {
      add(ViolationKind::facet_not_pure, {}, "facet " + facet.name + " is empty");
      continue;
    }
    UnionFind uf;
    for (const auto& s : facet.simplices) {
      const auto j = sz(*q.index_of(s));
      ++cover[j];
      if (deg[j] != 1) add(ViolationKind::facet_not_on_boundary, s, "facet " + facet.name + " simplex is interior");
      for (int w : s) uf.unite(s.front(), w);
    }
    std::set<int> roots;
    for (const auto& s : facet.simplices) roots.insert(uf.find(s.front()));
    if (roots.size() > 1) add(ViolationKind::facet_disconnected, facet.simplices.front(), "facet " + facet.name + " is disconnected");
  }
  for (std::size_t j = 0; j < q.count(n - 1); ++j) {
    if (deg[j] == 1 && cover[j] == 0) add(ViolationKind::boundary_not_covered, q.simplices(n - 1)[j], "boundary simplex in no facet");
    if (cover[j] > 1) add(ViolationKind::facet_overlap, q.simplices(n - 1)[j], "simplex in " + std::to_string(cover[j]) + " facets");
  }

  if (n >= 2) {
    for (std::size_t j = 0; j < q.count(n - 2); ++j) {
      if (q.on_boundary(n - 2, j) && q.facet_set(n - 2, j).size() > 2) {
        add(ViolationKind::niceness, q.simplices(n - 2)[j],
            std::to_string(q.facet_set(n - 2, j).size()) + " facets meet at a codimension-2 simplex");
      }
    }
  }
  for (int d = 0; d <= n; ++d) {
    for (std::size_t j = 0; j < q.count(d); ++j) {
      if (q.facet_set(d, j).size() > sz(n)) {
        add(ViolationKind::niceness_depth, q.simplices(d)[j],
            std::to_string(q.facet_set(d, j).size()) + " facets meet, more than the dimension");
      }
    }
  }

  if (n > 3) {
    report.warnings.push_back("link condition not checked in dimension " + std::to_string(n));
    return report;
  }
  for (int v : q.vertices()) {
    if (!used.count(v)) continue;
    const auto link = vertex_link(q, v);
    const bool boundary = q.vertex_on_boundary(v);
    const LinkShape shape = analyse_link(link, n - 1);
    bool good;
    std::string expected;
    if (n == 1) {
      good = shape.points == (boundary ? 1u : 2u);
      expected = boundary ? "one point" : "two points";
    } else if (boundary) {
      good = shape.connected && shape.pseudomanifold && shape.has_boundary && shape.euler == 1;
      expected = "a disk";
    } else {
      const long sphere_chi = (n - 1) % 2 == 0 ? 2 : 0;
      good = shape.connected && shape.pseudomanifold && !shape.has_boundary && shape.euler == sphere_chi;
      expected = "a sphere";
    }
    if (!good) {
      add(ViolationKind::link_condition, {v},
          "link is not " + expected + " (euler " + std::to_string(shape.euler) +
              (shape.connected ? "" : ", disconnected") + (shape.pseudomanifold ? "" : ", branching") + ")");
    }
  }
  return report;
}

std::vector<PreFace> pre_faces(const StratifiedComplex& q) {
  const auto report = validate(q);
  if (!report.ok()) throw std::invalid_argument("pre_faces on invalid complex:\n" + report.to_string());
  const int n = q.dim();
  std::set<std::vector<int>> strata;
  for (int d = 0; d <= n; ++d) {
    for (std::size_t j = 0; j < q.count(d); ++j) {
      if (!q.facet_set(d, j).empty()) strata.insert(q.facet_set(d, j));
    }
  }
  std::vector<PreFace> out;
  for (const auto& s : strata) {
    std::vector<std::pair<int, std::size_t>> members;
    UnionFind uf;
    for (int d = 0; d <= n; ++d) {
      for (std::size_t j = 0; j < q.count(d); ++j) {
        const auto& fs = q.facet_set(d, j);
        if (!std::includes(fs.begin(), fs.end(), s.begin(), s.end())) continue;
        members.emplace_back(d, j);
        const auto& simplex = q.simplices(d)[j];
        for (int w : simplex) uf.unite(simplex.front(), w);
      }
    }
    std::map<int, PreFace> by_root;
    for (const auto& [d, j] : members) {
      const auto& simplex = q.simplices(d)[j];
      PreFace& pf = by_root[uf.find(simplex.front())];
      pf.simplices.push_back(simplex);
      if (q.facet_set(d, j) == s) pf.open_simplices.push_back(simplex);
    }
    for (auto& [root, pf] : by_root) {
      if (pf.open_simplices.empty()) continue;
      pf.facet_ids = s;
      pf.codim = static_cast<int>(s.size());
      out.push_back(std::move(pf));
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const PreFace& a, const PreFace& b) {
    if (a.codim != b.codim) return a.codim < b.codim;
    if (a.facet_ids != b.facet_ids) return a.facet_ids < b.facet_ids;
    return a.simplices < b.simplices;
  });
  return out;
}

long euler_characteristic(const StratifiedComplex& q) {
  long chi = 0;
  for (int d = 0; d <= q.dim(); ++d) chi += (d % 2 == 0 ? 1 : -1) * static_cast<long>(q.count(d));
  return chi;
}

std::vector<BoundaryComponent> boundary_components(const StratifiedComplex& q) {
  const int n = q.dim();
  UnionFind uf;
  std::vector<std::size_t> bnd;
  for (std::size_t j = 0; j < q.count(n - 1); ++j) {
    if (q.codim1_degree()[j] != 1) continue;
    bnd.push_back(j);
    const auto& s = q.simplices(n - 1)[j];
    for (int w : s) uf.unite(s.front(), w);
  }
  std::map<int, BoundaryComponent> by_root;
  for (std::size_t j : bnd) {
    const auto& s = q.simplices(n - 1)[j];
    by_root[uf.find(s.front())].simplices.push_back(s);
  }
  std::vector<PreFace> codim2;
  if (n >= 2 && validate(q).ok()) {
    for (auto& pf : pre_faces(q)) {
      if (pf.codim == 2) codim2.push_back(std::move(pf));
    }
  }
  std::vector<BoundaryComponent> out;
  for (auto& [root, c] : by_root) {
    std::vector<std::set<Simplex>> closure(sz(n));
    std::map<Simplex, int> ridge_degree;
    std::set<int> facets;
    for (const auto& s : c.simplices) {
      for_each_face(s, [&](const Simplex& f) { closure[f.size() - 1].insert(f); });
      if (n >= 2) {
        for (std::size_t i = 0; i < s.size(); ++i) ++ridge_degree[without(s, i)];
      }
      for (int f : q.facet_set(n - 1, sz(*q.index_of(s)))) facets.insert(f);
    }
    for (int d = 0; d < n; ++d) c.euler += (d % 2 == 0 ? 1 : -1) * static_cast<long>(closure[sz(d)].size());
    for (const auto& v : closure[0]) c.vertices.push_back(v.front());
    c.closed = std::all_of(ridge_degree.begin(), ridge_degree.end(), [](const auto& e) { return e.second == 2; });
    c.facets.assign(facets.begin(), facets.end());
    for (int f : c.facets) {
      c.face_sizes.push_back(static_cast<int>(std::count_if(codim2.begin(), codim2.end(), [f](const PreFace& pf) {
        return std::binary_search(pf.facet_ids.begin(), pf.facet_ids.end(), f);
      })));
    }
    out.push_back(std::move(c));
  }
  return out;
}

StratifiedComplex induced_subcomplex(const StratifiedComplex& q, const std::vector<int>& keep) {
  const std::set<int> kept(keep.begin(), keep.end());
  auto inside = [&](const Simplex& s) {
    return std::all_of(s.begin(), s.end(), [&](int v) { return kept.count(v) > 0; });
  };
  std::vector<Simplex> tops;
  std::set<Simplex> ridges;
  std::set<int> used;
  for (const auto& t : q.simplices(q.dim())) {
    if (!inside(t)) continue;
    tops.push_back(t);
    used.insert(t.begin(), t.end());
    for (std::size_t i = 0; i < t.size(); ++i) ridges.insert(without(t, i));
  }
  std::vector<FacetSpec> facets;
  for (const auto& f : q.facets()) {
    FacetSpec g{f.name, {}};
    for (const auto& s : f.simplices) {
      if (ridges.count(s)) g.simplices.push_back(s);
    }
    if (!g.simplices.empty()) facets.push_back(std::move(g));
  }
  std::vector<int> extra;
  for (int v : kept) {
    if (!used.count(v) && q.index_of(Simplex{v})) extra.push_back(v);
  }
  return StratifiedComplex(q.dim(), std::move(tops), std::move(facets), std::move(extra));
}

StratifiedComplex relabel(const StratifiedComplex& q, const std::map<int, int>& vertex_map) {
  auto image = [&](const Simplex& s) {
    Simplex t;
    for (int v : s) t.push_back(vertex_map.at(v));
    std::sort(t.begin(), t.end());
    return t;
  };
  std::vector<Simplex> tops;
  for (const auto& t : q.simplices(q.dim())) tops.push_back(image(t));
  std::vector<FacetSpec> facets;
  for (const auto& f : q.facets()) {
    FacetSpec g{f.name, {}};
    for (const auto& s : f.simplices) g.simplices.push_back(image(s));
    facets.push_back(std::move(g));
  }
  std::vector<int> extra;
  for (int v : q.vertices()) extra.push_back(vertex_map.at(v));
  return StratifiedComplex(q.dim(), std::move(tops), std::move(facets), std::move(extra));
}

namespace {

// Top simplices and their adjacency through codimension-1 faces.
struct DualGraph {
  std::vector<Simplex> tops;
  std::map<Simplex, std::vector<int>> ridge_tops;
  std::vector<std::vector<int>> components;
  std::map<Simplex, int> top_index;

  explicit DualGraph(const StratifiedComplex& q) : tops(q.simplices(q.dim())) {
    for (std::size_t t = 0; t < tops.size(); ++t) {
      top_index[tops[t]] = static_cast<int>(t);
      for (std::size_t i = 0; i < tops[t].size(); ++i) ridge_tops[without(tops[t], i)].push_back(static_cast<int>(t));
    }
    std::vector<int> comp(tops.size(), -1);
    for (std::size_t s = 0; s < tops.size(); ++s) {
      if (comp[s] >= 0) continue;
      const int c = static_cast<int>(components.size());
      components.emplace_back();
      std::vector<int> stack{static_cast<int>(s)};
      comp[s] = c;
      while (!stack.empty()) {
        const int t = stack.back();
        stack.pop_back();
        components[sz(c)].push_back(t);
        for (std::size_t i = 0; i < tops[sz(t)].size(); ++i) {
          for (int u : ridge_tops[without(tops[sz(t)], i)]) {
            if (comp[sz(u)] < 0) {
              comp[sz(u)] = c;
              stack.push_back(u);
            }
          }
        }
      }
      std::sort(components.back().begin(), components.back().end());
    }
  }
};

class IsoSearch {
public:
  IsoSearch(const StratifiedComplex& a, const StratifiedComplex& b,
            const std::function<bool(const FacialIsomorphism&)>& visit)
      : a_(a), b_(b), da_(a), db_(b), visit_(visit), b_used_(db_.components.size(), false) {}

  bool run() {
    if (a_.dim() != b_.dim() || a_.facet_count() != b_.facet_count()) return false;
    for (int d = 0; d <= a_.dim(); ++d) {
      if (a_.count(d) != b_.count(d)) return false;
    }
    return match_component(0);
  }

private:
  bool match_component(std::size_t ci) {
    if (ci == da_.components.size()) return finish();
    const auto& comp = da_.components[ci];
    const Simplex& first = da_.tops[sz(comp.front())];
    for (std::size_t cj = 0; cj < db_.components.size(); ++cj) {
      if (b_used_[cj] || db_.components[cj].size() != comp.size()) continue;
      b_used_[cj] = true;
      for (int t : db_.components[cj]) {
        Simplex perm = db_.tops[sz(t)];
        do {
          const auto saved_map = map_;
          const auto saved_used = used_;
          if (assign(first, perm) && propagate(comp)) {
            if (match_component(ci + 1)) return true;
          }
          map_ = saved_map;
          used_ = saved_used;
        } while (std::next_permutation(perm.begin(), perm.end()));
      }
      b_used_[cj] = false;
    }
    return false;
  }

  bool assign(const Simplex& from, const Simplex& to) {
    for (std::size_t i = 0; i < from.size(); ++i) {
      if (!bind(from[i], to[i])) return false;
    }
    return true;
  }

  bool bind(int v, int w) {
    auto it = map_.find(v);
    if (it != map_.end()) return it->second == w;
    if (used_.count(w)) return false;
    map_[v] = w;
    used_.insert(w);
    return true;
  }

  Simplex image(const Simplex& s) const {
    Simplex t;
    for (int v : s) t.push_back(map_.at(v));
    std::sort(t.begin(), t.end());
    return t;
  }

  bool propagate(const std::vector<int>& comp) {
    std::set<int> done;
    std::vector<int> queue{comp.front()};
    done.insert(comp.front());
    while (!queue.empty()) {
      const int t = queue.back();
      queue.pop_back();
      const Simplex& top = da_.tops[sz(t)];
      const Simplex img = image(top);
      const auto bt = db_.top_index.find(img);
      if (bt == db_.top_index.end()) return false;
      for (std::size_t i = 0; i < top.size(); ++i) {
        const Simplex ridge = without(top, i);
        const Simplex ridge_img = image(ridge);
        const auto& na = da_.ridge_tops.at(ridge);
        const auto itb = db_.ridge_tops.find(ridge_img);
        if (itb == db_.ridge_tops.end() || itb->second.size() != na.size()) return false;
        if (na.size() > 2) return false;
        if (na.size() != 2) continue;
        const int other_a = na[0] == t ? na[1] : na[0];
        const int other_b = itb->second[0] == bt->second ? itb->second[1] : itb->second[0];
        const Simplex& ta = da_.tops[sz(other_a)];
        const Simplex& tb = db_.tops[sz(other_b)];
        int apex_a = -1, apex_b = -1;
        for (int v : ta) {
          if (!std::binary_search(ridge.begin(), ridge.end(), v)) apex_a = v;
        }
        for (int w : tb) {
          if (!std::binary_search(ridge_img.begin(), ridge_img.end(), w)) apex_b = w;
        }
        if (!bind(apex_a, apex_b)) return false;
        if (done.insert(other_a).second) queue.push_back(other_a);
      }
    }
    return true;
  }

  bool finish() {
    for (int v : a_.vertices()) {
      if (!map_.count(v)) return false;  // isolated vertices are not matched
    }
    FacialIsomorphism iso;
    iso.vertex_map = map_;
    iso.facet_map.assign(a_.facet_count(), -1);
    std::vector<bool> hit(b_.facet_count(), false);
    const int n = a_.dim();
    for (std::size_t i = 0; i < a_.facet_count(); ++i) {
      const auto& f = a_.facet(i);
      int target = -1;
      for (const auto& s : f.simplices) {
        const auto j = b_.index_of(image(s));
        if (!j) return false;
        const auto& fs = b_.facet_set(n - 1, sz(*j));
        // a top simplex of a facet lies in exactly one facet when valid
        int owner = -1;
        for (int g : fs) {
          if (std::binary_search(b_.facet(sz(g)).simplices.begin(), b_.facet(sz(g)).simplices.end(), image(s))) owner = g;
        }
        if (owner < 0 || (target >= 0 && owner != target)) return false;
        target = owner;
      }
      if (target < 0 || hit[sz(target)] || b_.facet(sz(target)).simplices.size() != f.simplices.size()) return false;
      hit[sz(target)] = true;
      iso.facet_map[i] = target;
    }
    return visit_(iso);
  }

  const StratifiedComplex& a_;
  const StratifiedComplex& b_;
  DualGraph da_, db_;
  const std::function<bool(const FacialIsomorphism&)>& visit_;
  std::vector<bool> b_used_;
  std::map<int, int> map_;
  std::set<int> used_;
};

}  // namespace

bool for_each_facial_isomorphism(const StratifiedComplex& a, const StratifiedComplex& b,
                                 const std::function<bool(const FacialIsomorphism&)>& visit) {
  IsoSearch search(a, b, visit);
  return search.run();
}

std::optional<FacialIsomorphism> find_facial_isomorphism(
    const StratifiedComplex& a, const StratifiedComplex& b,
    const std::function<bool(const FacialIsomorphism&)>& accept) {
  std::optional<FacialIsomorphism> found;
  for_each_facial_isomorphism(a, b, [&](const FacialIsomorphism& iso) {
    if (accept && !accept(iso)) return false;
    found = iso;
    return true;
  });
  return found;
}

}  // namespace glueback
