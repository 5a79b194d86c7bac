#include "glueback/catalog.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace glueback {

namespace {

std::size_t sz(int d) { return static_cast<std::size_t>(d); }

int parse_param(std::string_view name, std::string_view prefix) {
  const std::string_view body = name.substr(prefix.size() + 1, name.size() - prefix.size() - 2);
  if (body.empty() || !std::all_of(body.begin(), body.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    throw std::invalid_argument("bad parameter in " + std::string(name));
  }
  return std::stoi(std::string(body));
}

bool has_form(std::string_view name, std::string_view prefix) {
  return name.size() > prefix.size() + 2 && name.substr(0, prefix.size()) == prefix && name[prefix.size()] == '(' &&
         name.back() == ')';
}

CatalogModel finish(std::string name, StratifiedComplex q, int rank, std::vector<std::string> colors = {}) {
  Coloring lambda;
  lambda.rank = rank;
  if (colors.empty()) {
    if (q.facet_count() > 0) {
      auto c = first_valid_coloring(q, rank);
      if (!c) throw std::logic_error("no valid coloring for " + name);
      lambda = *c;
    }
  } else {
    for (std::size_t i = 0; i < q.facet_count(); ++i) lambda.colors.emplace(q.facet(i).name, GroupElement::parse(colors[i], rank));
  }
  return CatalogModel{std::move(name), std::move(q), std::move(lambda)};
}

CatalogModel interval() {
  StratifiedComplex q(1, {{0, 1}}, {{"lo", {{0}}}, {"hi", {{1}}}});
  return finish("interval", std::move(q), 1, {"1", "1"});
}

CatalogModel circle(int k) {
  if (k < 3 || k > 12) throw std::invalid_argument("circle(k) needs 3 <= k <= 12");
  std::vector<Simplex> edges;
  for (int i = 0; i < k; ++i) edges.push_back({i, (i + 1) % k});
  return CatalogModel{"circle(" + std::to_string(k) + ")", StratifiedComplex(1, edges, {}), Coloring{1, {}}};
}

// Corners 0..k-1, side midpoints k..2k-1, center 2k.
CatalogModel polygon(int k) {
  if (k < 2 || k > 12) throw std::invalid_argument("polygon(k) needs 2 <= k <= 12");
  std::vector<Simplex> tris;
  std::vector<FacetSpec> facets;
  const int center = 2 * k;
  for (int i = 0; i < k; ++i) {
    const int c0 = i, c1 = (i + 1) % k, mid = k + i;
    tris.push_back({center, c0, mid});
    tris.push_back({center, mid, c1});
    facets.push_back({"e" + std::to_string(i), {{c0, mid}, {mid, c1}}});
  }
  return finish("polygon(" + std::to_string(k) + ")", StratifiedComplex(2, tris, facets), 2);
}

CatalogModel triangle() {
  StratifiedComplex q(2, {{0, 1, 2}}, {{"f0", {{1, 2}}}, {"f1", {{0, 2}}}, {"f2", {{0, 1}}}});
  return finish("simplex(2)", std::move(q), 2);
}

// Outer boundary triangles with a collar and a coned-off inner copy.
StratifiedComplex collared_ball(const std::vector<Simplex>& outer, int nouter, const std::vector<FacetSpec>& facets) {
  const int center = 2 * nouter;
  auto inner = [nouter](int v) { return v + nouter; };
  std::vector<Simplex> tets;
  for (const auto& t : outer) {
    const int u = t[0], v = t[1], w = t[2];
    tets.push_back({u, v, w, inner(w)});
    tets.push_back({u, v, inner(v), inner(w)});
    tets.push_back({u, inner(u), inner(v), inner(w)});
    tets.push_back({inner(u), inner(v), inner(w), center});
  }
  return StratifiedComplex(3, tets, facets);
}

CatalogModel football() {
  // N=0, S=1, equator points a=2, b=3, c=4
  const std::vector<Simplex> outer{{0, 2, 3}, {1, 2, 3}, {0, 3, 4}, {1, 3, 4}, {0, 2, 4}, {1, 2, 4}};
  const std::vector<FacetSpec> facets{
      {"F1", {{0, 2, 3}, {1, 2, 3}}}, {"F2", {{0, 3, 4}, {1, 3, 4}}}, {"F3", {{0, 2, 4}, {1, 2, 4}}}};
  return finish("football", collared_ball(outer, 5, facets), 3, {"100", "010", "001"});
}

CatalogModel tetrahedron() {
  const std::vector<Simplex> outer{{1, 2, 3}, {0, 2, 3}, {0, 1, 3}, {0, 1, 2}};
  std::vector<FacetSpec> facets;
  for (int i = 0; i < 4; ++i) facets.push_back({"f" + std::to_string(i), {outer[sz(i)]}});
  return finish("simplex(3)", collared_ball(outer, 4, facets), 3);
}

CatalogModel rename(CatalogModel m, std::string name, const std::map<std::string, std::string>& names) {
  std::vector<Simplex> tops = m.q.simplices(m.q.dim());
  std::vector<FacetSpec> facets;
  Coloring lambda{m.lambda.rank, {}};
  for (const auto& f : m.q.facets()) {
    const std::string& to = names.at(f.name);
    facets.push_back({to, f.simplices});
    lambda.colors.emplace(to, m.lambda.colors.at(f.name));
  }
  return CatalogModel{std::move(name), StratifiedComplex(m.q.dim(), std::move(tops), std::move(facets)), std::move(lambda)};
}

std::size_t top_level_comma(std::string_view body) {
  int depth = 0;
  for (std::size_t i = 0; i < body.size(); ++i) {
    if (body[i] == '(') ++depth;
    if (body[i] == ')') --depth;
    if (body[i] == ',' && depth == 0) return i;
  }
  return std::string_view::npos;
}

// Staircase simplices of s x t: monotone lattice paths.
void staircase(const Simplex& s, const Simplex& t, const std::map<int, int>& ia, const std::map<int, int>& ib,
               int nb, std::vector<Simplex>& out) {
  const std::size_t p = s.size() - 1, qd = t.size() - 1;
  std::vector<bool> steps(p + qd, false);
  std::fill(steps.begin() + static_cast<long>(qd), steps.end(), true);  // true = step in s
  do {
    Simplex simplex;
    std::size_t i = 0, j = 0;
    simplex.push_back(ia.at(s[i]) * nb + ib.at(t[j]));
    for (bool step : steps) {
      step ? ++i : ++j;
      simplex.push_back(ia.at(s[i]) * nb + ib.at(t[j]));
    }
    std::sort(simplex.begin(), simplex.end());
    out.push_back(std::move(simplex));
  } while (std::next_permutation(steps.begin(), steps.end()));
}

}  // namespace

CatalogModel product(const CatalogModel& a, const CatalogModel& b) {
  std::map<int, int> ia, ib;
  for (std::size_t i = 0; i < a.q.vertices().size(); ++i) ia[a.q.vertices()[i]] = static_cast<int>(i);
  for (std::size_t i = 0; i < b.q.vertices().size(); ++i) ib[b.q.vertices()[i]] = static_cast<int>(i);
  const int nb = static_cast<int>(ib.size());
  std::vector<Simplex> tops;
  for (const auto& s : a.q.simplices(a.q.dim())) {
    for (const auto& t : b.q.simplices(b.q.dim())) staircase(s, t, ia, ib, nb, tops);
  }
  std::vector<FacetSpec> facets;
  Coloring lambda{a.lambda.rank + b.lambda.rank, {}};
  if (lambda.rank > kMaxRank) throw std::invalid_argument("product rank too large");
  for (const auto& f : a.q.facets()) {
    FacetSpec g{f.name + "x", {}};
    for (const auto& s : f.simplices) {
      for (const auto& t : b.q.simplices(b.q.dim())) staircase(s, t, ia, ib, nb, g.simplices);
    }
    lambda.colors.emplace(g.name, GroupElement(lambda.rank, a.lambda.colors.at(f.name).bits()));
    facets.push_back(std::move(g));
  }
  for (const auto& f : b.q.facets()) {
    FacetSpec g{"x" + f.name, {}};
    for (const auto& s : a.q.simplices(a.q.dim())) {
      for (const auto& t : f.simplices) staircase(s, t, ia, ib, nb, g.simplices);
    }
    lambda.colors.emplace(g.name, GroupElement(lambda.rank, b.lambda.colors.at(f.name).bits() << a.lambda.rank));
    facets.push_back(std::move(g));
  }
  return CatalogModel{"product(" + a.name + "," + b.name + ")",
                      StratifiedComplex(a.q.dim() + b.q.dim(), std::move(tops), std::move(facets)), std::move(lambda)};
}

CatalogModel make(std::string_view name) {
  if (name == "interval") return interval();
  if (name == "football") return football();
  if (name == "torus") {
    auto m = product(circle(3), circle(3));
    m.name = "torus";
    return m;
  }
  if (name == "klein-square") {
    auto m = polygon(4);
    return finish("klein-square", std::move(m.q), 2, {"10", "01", "10", "11"});
  }
  if (name == "cube") {
    const auto m = product(product(interval(), interval()), interval());
    return rename(m, "cube",
                  {{"loxx", "x0"}, {"hixx", "x1"}, {"xlox", "y0"}, {"xhix", "y1"}, {"xlo", "z0"}, {"xhi", "z1"}});
  }
  if (has_form(name, "circle")) return circle(parse_param(name, "circle"));
  if (has_form(name, "polygon")) return polygon(parse_param(name, "polygon"));
  if (has_form(name, "prism")) {
    const int k = parse_param(name, "prism");
    auto m = product(polygon(k), interval());
    return finish("prism(" + std::to_string(k) + ")", std::move(m.q), 3);
  }
  if (has_form(name, "simplex")) {
    const int n = parse_param(name, "simplex");
    if (n == 1) {
      auto m = interval();
      m.name = "simplex(1)";
      return m;
    }
    if (n == 2) return triangle();
    if (n == 3) return tetrahedron();
    throw std::invalid_argument("simplex(n) needs 1 <= n <= 3");
  }
  if (has_form(name, "product")) {
    const std::string_view body = name.substr(8, name.size() - 9);
    const std::size_t comma = top_level_comma(body);
    if (comma == std::string_view::npos) throw std::invalid_argument("product needs two arguments");
    auto m = product(make(body.substr(0, comma)), make(body.substr(comma + 1)));
    if (m.q.dim() > 3) throw std::invalid_argument("product dimension exceeds 3");
    return m;
  }
  throw std::invalid_argument("unknown catalog entry " + std::string(name));
}

std::vector<std::string> catalog_names() {
  return {"interval",  "circle(4)",  "polygon(2)", "polygon(3)", "polygon(4)", "polygon(5)", "klein-square",
          "simplex(2)", "simplex(3)", "football",   "cube",       "prism(3)",   "torus"};
}

int model_center(std::string_view name) {
  if (name == "football") return 10;
  if (name == "simplex(3)") return 8;
  return -1;
}

std::vector<ExpectedProfile> expected_profiles() {
  return {
      {"interval", {1, 1}, {1, 1}, {{}, {}}, true, "circle; standard"},
      {"circle(4)", {2, 2}, {2, 2}, {{}, {}}, true, "two circles, trivial double cover; standard"},
      {"polygon(2)", {1, 0, 1}, {1, 0, 1}, {{}, {}, {}}, true, "2-sphere over a 2-gon; standard"},
      {"polygon(3)", {1, 1, 1}, {1, 0, 0}, {{}, {2}, {}}, false, "real projective plane over a triangle; standard"},
      {"polygon(4)", {1, 2, 1}, {1, 2, 1}, {{}, {}, {}}, true, "torus over a square; derived by hand"},
      {"polygon(5)", {1, 3, 1}, {1, 2, 0}, {{}, {2}, {}}, false,
       "non-orientable genus-3 surface, euler -1; derived by hand"},
      {"klein-square", {1, 2, 1}, {1, 1, 0}, {{}, {2}, {}}, false, "Klein bottle; derived by hand"},
      {"simplex(2)", {1, 1, 1}, {1, 0, 0}, {{}, {2}, {}}, false, "real projective plane; standard"},
      {"simplex(3)", {1, 1, 1, 1}, {1, 0, 0, 1}, {{}, {2}, {}, {}}, true, "real projective 3-space; standard"},
      {"football", {1, 0, 0, 1}, {1, 0, 0, 1}, {{}, {}, {}, {}}, true, "3-sphere; standard"},
      {"cube", {1, 3, 3, 1}, {1, 3, 3, 1}, {{}, {}, {}, {}}, true, "3-torus; derived from three circle factors"},
      {"prism(3)", {1, 2, 2, 1}, {1, 1, 0, 0}, {{}, {2}, {2}, {}}, false,
       "real projective plane times a circle; derived from the product"},
      {"torus", {4, 8, 4}, {4, 8, 4}, {{}, {}, {}}, true, "four tori, trivial 4-fold cover; standard"},
  };
}

}  // namespace glueback
