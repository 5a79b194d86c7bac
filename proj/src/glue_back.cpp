#include "glueback/glue_back.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

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

void require(const ValidationReport& r, const std::string& what) {
  if (r.ok()) return;
  const Violation& v = r.violations.front();
  std::string where;
  for (int x : v.where) where += (where.empty() ? "" : " ") + std::to_string(x);
  throw std::invalid_argument(what + " invalid: " + to_string(v.kind) + " at (" + where + "): " + v.message);
}

}  // namespace

int BuiltManifold::cell_index(int d, int simplex, const GroupElement& g) const {
  const GroupElement rep = isotropy(d, simplex).reduce(g);
  const auto& layer = cells_[sz(d)];
  const auto [lo, hi] = fiber_range(d, simplex);
  auto it = std::lower_bound(layer.begin() + lo, layer.begin() + hi, rep,
                             [](const Cell& c, const GroupElement& x) { return c.coset < x; });
  if (it == layer.begin() + hi || it->coset != rep) throw std::logic_error("cell lookup failed");
  return static_cast<int>(it - layer.begin());
}

std::pair<int, int> BuiltManifold::fiber_range(int d, int simplex) const {
  const int lo = first_cell_[sz(d)][sz(simplex)];
  const int hi = lo + (1 << (rank_ - isotropy(d, simplex).rank()));
  return {lo, hi};
}

CellMap BuiltManifold::action(const GroupElement& g) const {
  if (g.rank() != rank_) throw std::invalid_argument("acting element has the wrong rank");
  CellMap f;
  for (int d = 0; d <= dim(); ++d) {
    std::vector<int> t;
    t.reserve(cells_[sz(d)].size());
    for (const auto& c : cells_[sz(d)]) t.push_back(cell_index(d, c.simplex, g + c.coset));
    f.target.push_back(std::move(t));
  }
  return f;
}

BuiltManifold build(const StratifiedComplex& q, const Coloring& lambda, const Cocycle& xi) {
  require(validate(q), "orbit space");
  if (lambda.rank != xi.rank) throw std::invalid_argument("coloring and cocycle ranks differ");
  if (lambda.rank < 0 || lambda.rank > kMaxRank) throw std::invalid_argument("rank out of range");
  require(validate_coloring(q, lambda), "coloring");
  require(validate_cocycle(q, xi), "cocycle");

  BuiltManifold m;
  m.rank_ = lambda.rank;
  m.base_ = q;
  const int n = q.dim();
  const auto colors = lambda.by_facet(q);
  m.isotropy_.resize(sz(n + 1));
  m.cells_.resize(sz(n + 1));
  m.first_cell_.resize(sz(n + 1));
  for (int d = 0; d <= n; ++d) {
    for (std::size_t j = 0; j < q.count(d); ++j) {
      m.isotropy_[sz(d)].push_back(facet_span(colors, q.facet_set(d, j), m.rank_));
      m.first_cell_[sz(d)].push_back(static_cast<int>(m.cells_[sz(d)].size()));
      for (const auto& rep : m.isotropy_[sz(d)].back().coset_representatives()) {
        m.cells_[sz(d)].push_back(Cell{static_cast<int>(j), rep});
      }
    }
  }

  m.complex_.faces.resize(sz(n + 1));
  m.complex_.faces[0].assign(m.cells_[0].size(), {});
  for (int d = 1; d <= n; ++d) {
    for (const auto& c : m.cells_[sz(d)]) {
      const Simplex& s = q.simplices(d)[sz(c.simplex)];
      std::vector<int> fs;
      for (std::size_t i = 0; i < s.size(); ++i) {
        const int face = *q.index_of(without(s, i));
        // re-anchor at the least vertex of the face
        const int anchor = i == 0 ? s[1] : s[0];
        const GroupElement g = anchor == s[0] ? c.coset : c.coset + xi.value(s[0], anchor);
        fs.push_back(m.cell_index(d - 1, face, g));
      }
      m.complex_.faces[sz(d)].push_back(std::move(fs));
    }
  }
  check_simplicial_identities(m.complex_);
  for (int i = 0; i < m.rank_; ++i) check_chain_map(m.complex_, m.action(GroupElement::generator(m.rank_, i)));
  return m;
}

BuiltManifold build(const StratifiedComplex& q, const Coloring& lambda) {
  return build(q, lambda, zero_cocycle(lambda.rank));
}

long euler_characteristic_predicted(const StratifiedComplex& q, const Coloring& lambda) {
  const auto colors = lambda.by_facet(q);
  long chi = 0;
  for (int d = 0; d <= q.dim(); ++d) {
    for (std::size_t j = 0; j < q.count(d); ++j) {
      const long fiber = 1L << (lambda.rank - facet_span(colors, q.facet_set(d, j), lambda.rank).rank());
      chi += (d % 2 == 0 ? fiber : -fiber);
    }
  }
  return chi;
}

Subcomplex fixed_subcomplex(const BuiltManifold& m, const Subgroup& h) {
  Subcomplex s = Subcomplex::empty(m.complex());
  for (int d = 0; d <= m.dim(); ++d) {
    for (std::size_t k = 0; k < m.cells(d).size(); ++k) {
      s.member[sz(d)][k] = m.isotropy(d, m.cells(d)[k].simplex).contains(h);
    }
  }
  return s;
}

Subcomplex facet_preimage(const BuiltManifold& m, int facet) {
  Subcomplex s = Subcomplex::empty(m.complex());
  for (int d = 0; d <= m.dim(); ++d) {
    for (std::size_t k = 0; k < m.cells(d).size(); ++k) {
      const auto& fs = m.base().facet_set(d, sz(m.cells(d)[k].simplex));
      s.member[sz(d)][k] = std::binary_search(fs.begin(), fs.end(), facet);
    }
  }
  return s;
}

bool facet_swaps_sides(const BuiltManifold& m, int facet) {
  const DeltaComplex& k = m.complex();
  const int n = k.dim();
  const Subcomplex s = facet_preimage(m, facet);
  std::vector<std::vector<int>> cofaces(k.count(n - 1));
  for (std::size_t t = 0; t < k.count(n); ++t) {
    for (int f : k.faces[sz(n)][t]) cofaces[sz(f)].push_back(static_cast<int>(t));
  }
  for (std::size_t c = 0; c < k.count(n - 1); ++c) {
    if (!s.contains(n - 1, c)) continue;
    if (cofaces[c].size() != 2) return false;
    const Subgroup& h = m.isotropy(n - 1, m.cells(n - 1)[c].simplex);
    if (h.rank() != 1) return false;
    const CellMap tau = m.action(h.basis().front());
    if (tau.target[sz(n)][sz(cofaces[c][0])] != cofaces[c][1]) return false;
  }
  return true;
}

OrbitQuotient orbit_quotient(const BuiltManifold& m) {
  const DeltaComplex& k = m.complex();
  const int n = k.dim();
  const int rank = m.rank();
  if (rank > 12) throw std::invalid_argument("orbit_quotient enumerates the group; rank too large");
  std::vector<GroupElement> group;
  std::vector<CellMap> acts;
  for (std::uint32_t b = 0; b < (1u << rank); ++b) {
    group.emplace_back(rank, b);
    acts.push_back(m.action(group.back()));
  }
  // orbit labels per dimension
  std::vector<std::vector<int>> orbit(sz(n + 1));
  std::vector<std::vector<int>> orbit_rep(sz(n + 1));
  for (int d = 0; d <= n; ++d) {
    orbit[sz(d)].assign(k.count(d), -1);
    for (std::size_t x = 0; x < k.count(d); ++x) {
      if (orbit[sz(d)][x] >= 0) continue;
      const int id = static_cast<int>(orbit_rep[sz(d)].size());
      orbit_rep[sz(d)].push_back(static_cast<int>(x));
      for (const auto& f : acts) orbit[sz(d)][sz(f.target[sz(d)][x])] = id;
    }
  }
  // ordered vertices of every cell
  std::vector<std::vector<std::vector<int>>> verts(sz(n + 1));
  for (std::size_t x = 0; x < k.count(0); ++x) verts[0].push_back({static_cast<int>(x)});
  for (int d = 1; d <= n; ++d) {
    for (std::size_t x = 0; x < k.count(d); ++x) {
      const auto& fs = k.faces[sz(d)][x];
      std::vector<int> v = verts[sz(d - 1)][sz(fs[sz(d)])];
      v.push_back(verts[sz(d - 1)][sz(fs[0])].back());
      verts[sz(d)].push_back(std::move(v));
    }
  }
  auto orbit_simplex = [&](int d, int x) {
    Simplex s;
    for (int v : verts[sz(d)][sz(x)]) s.push_back(orbit[0][sz(v)]);
    std::sort(s.begin(), s.end());
    return s;
  };
  auto stabilizer = [&](int d, int x) {
    std::vector<GroupElement> gens;
    for (std::size_t g = 0; g < group.size(); ++g) {
      if (acts[g].target[sz(d)][sz(x)] == x) gens.push_back(group[g]);
    }
    return Subgroup::span(gens, rank);
  };

  std::vector<Simplex> tops;
  for (int rep : orbit_rep[sz(n)]) tops.push_back(orbit_simplex(n, rep));

  // codimension-1 orbits with nontrivial stabilizers, grouped into facets
  std::vector<int> bnd;
  std::vector<Subgroup> bnd_stab;
  std::map<int, std::size_t> bnd_pos;
  for (std::size_t o = 0; o < orbit_rep[sz(n - 1)].size(); ++o) {
    Subgroup st = stabilizer(n - 1, orbit_rep[sz(n - 1)][o]);
    if (st.rank() == 0) continue;
    bnd_pos[static_cast<int>(o)] = bnd.size();
    bnd.push_back(static_cast<int>(o));
    bnd_stab.push_back(std::move(st));
  }
  std::vector<std::size_t> parent(bnd.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  if (n >= 2) {
    // (n-2)-orbit -> boundary (n-1)-orbits containing it
    std::map<int, std::vector<std::size_t>> ridge_users;
    for (std::size_t b = 0; b < bnd.size(); ++b) {
      for (const auto& f : acts) {
        const int x = f.target[sz(n - 1)][sz(orbit_rep[sz(n - 1)][sz(bnd[b])])];
        for (int face : k.faces[sz(n - 1)][sz(x)]) ridge_users[orbit[sz(n - 2)][sz(face)]].push_back(b);
      }
    }
    for (auto& [ridge, users] : ridge_users) {
      if (stabilizer(n - 2, orbit_rep[sz(n - 2)][sz(ridge)]).rank() != 1) continue;
      for (std::size_t u : users) parent[find(u)] = find(users.front());
    }
  }
  std::map<std::size_t, std::size_t> facet_of_root;
  std::vector<FacetSpec> facets;
  Coloring lambda;
  lambda.rank = rank;
  for (std::size_t b = 0; b < bnd.size(); ++b) {
    const std::size_t r = find(b);
    auto [it, fresh] = facet_of_root.try_emplace(r, facets.size());
    if (fresh) {
      facets.push_back(FacetSpec{"F" + std::to_string(facets.size()), {}});
      lambda.colors.emplace(facets.back().name, bnd_stab[b].basis().front());
    } else if (lambda.colors.at(facets[it->second].name) != bnd_stab[b].basis().front()) {
      throw std::logic_error("stabilizers differ along a recovered facet");
    }
    facets[it->second].simplices.push_back(orbit_simplex(n - 1, orbit_rep[sz(n - 1)][sz(bnd[b])]));
  }
  OrbitQuotient out{StratifiedComplex(n, std::move(tops), std::move(facets)), std::move(lambda)};
  return out;
}

int components(const BuiltManifold& m) { return component_count(m.complex()); }

std::string emit_cells(const BuiltManifold& m) {
  std::ostringstream out;
  std::vector<int> offset(sz(m.dim() + 2), 0);
  for (int d = 0; d <= m.dim(); ++d) offset[sz(d + 1)] = offset[sz(d)] + static_cast<int>(m.cells(d).size());
  for (int d = 0; d <= m.dim(); ++d) {
    for (const auto& c : m.cells(d)) {
      out << "cell " << d << " (";
      const auto& s = m.base().simplices(d)[sz(c.simplex)];
      for (std::size_t i = 0; i < s.size(); ++i) out << (i ? " " : "") << s[i];
      out << ") " << c.coset.to_string() << '\n';
    }
  }
  for (int d = 1; d <= m.dim(); ++d) {
    const auto& layer = m.complex().faces[sz(d)];
    for (std::size_t j = 0; j < layer.size(); ++j) {
      for (std::size_t i = 0; i < layer[j].size(); ++i) {
        out << "face " << offset[sz(d)] + static_cast<int>(j) << ' ' << i << ' ' << offset[sz(d - 1)] + layer[j][i] << '\n';
      }
    }
  }
  return out.str();
}

}  // namespace glueback
