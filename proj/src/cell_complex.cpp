#include "glueback/cell_complex.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace glueback {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  }
};

std::size_t sz(int d) { return static_cast<std::size_t>(d); }

}  // namespace

std::size_t DeltaComplex::total_cells() const {
  std::size_t n = 0;
  for (const auto& layer : faces) n += layer.size();
  return n;
}

Subcomplex Subcomplex::empty(const DeltaComplex& k) {
  Subcomplex s;
  for (const auto& layer : k.faces) s.member.emplace_back(layer.size(), false);
  return s;
}

Subcomplex Subcomplex::all(const DeltaComplex& k) {
  Subcomplex s;
  for (const auto& layer : k.faces) s.member.emplace_back(layer.size(), true);
  return s;
}

std::size_t Subcomplex::count(int d) const {
  std::size_t n = 0;
  for (bool b : member[sz(d)]) n += b ? 1 : 0;
  return n;
}

CellMap CellMap::identity(const DeltaComplex& k) {
  CellMap f;
  for (const auto& layer : k.faces) {
    std::vector<int> t(layer.size());
    std::iota(t.begin(), t.end(), 0);
    f.target.push_back(std::move(t));
  }
  return f;
}

void check_simplicial_identities(const DeltaComplex& k) {
  for (int d = 1; d <= k.dim(); ++d) {
    const auto& layer = k.faces[sz(d)];
    for (std::size_t j = 0; j < layer.size(); ++j) {
      if (layer[j].size() != sz(d + 1)) {
        throw std::logic_error("cell " + std::to_string(j) + " of dimension " + std::to_string(d) +
                               " has " + std::to_string(layer[j].size()) + " faces");
      }
      for (int f : layer[j]) {
        if (f < 0 || sz(f) >= k.count(d - 1)) throw std::logic_error("face index out of range");
      }
      if (d < 2) continue;
      for (int i = 0; i <= d; ++i) {
        for (int jj = i + 1; jj <= d; ++jj) {
          const int lhs = k.faces[sz(d - 1)][sz(layer[j][sz(jj)])][sz(i)];
          const int rhs = k.faces[sz(d - 1)][sz(layer[j][sz(i)])][sz(jj - 1)];
          if (lhs != rhs) {
            throw std::logic_error("simplicial identity fails on cell " + std::to_string(j) +
                                   " of dimension " + std::to_string(d));
          }
        }
      }
    }
  }
}

void check_chain_map(const DeltaComplex& k, const CellMap& f) {
  if (f.target.size() != k.faces.size()) throw std::invalid_argument("cell map has wrong dimension");
  for (int d = 0; d <= k.dim(); ++d) {
    if (f.target[sz(d)].size() != k.count(d)) throw std::invalid_argument("cell map has wrong size");
    for (std::size_t j = 0; j < k.count(d); ++j) {
      const int img = f.target[sz(d)][j];
      if (img < 0 || sz(img) >= k.count(d)) throw std::invalid_argument("cell map target out of range");
      if (d == 0) continue;
      for (std::size_t i = 0; i < sz(d + 1); ++i) {
        const int via_face = f.target[sz(d - 1)][sz(k.faces[sz(d)][j][i])];
        const int via_image = k.faces[sz(d)][sz(img)][i];
        if (via_face != via_image) {
          throw std::invalid_argument("cell map does not commute with face " + std::to_string(i) +
                                      " of cell " + std::to_string(j) + " in dimension " +
                                      std::to_string(d));
        }
      }
    }
  }
}

bool is_closed(const DeltaComplex& k, const Subcomplex& s) {
  for (int d = 1; d <= k.dim(); ++d) {
    for (std::size_t j = 0; j < k.count(d); ++j) {
      if (!s.contains(d, j)) continue;
      for (int f : k.faces[sz(d)][j]) {
        if (!s.contains(d - 1, sz(f))) return false;
      }
    }
  }
  return true;
}

DeltaComplex restrict(const DeltaComplex& k, const Subcomplex& s) {
  if (!is_closed(k, s)) throw std::invalid_argument("restrict: subcomplex is not closed");
  DeltaComplex out;
  std::vector<int> renumber_prev;
  int top = -1;
  for (int d = 0; d <= k.dim(); ++d) {
    if (s.count(d) > 0) top = d;
  }
  for (int d = 0; d <= top; ++d) {
    std::vector<int> renumber(k.count(d), -1);
    std::vector<std::vector<int>> layer;
    for (std::size_t j = 0; j < k.count(d); ++j) {
      if (!s.contains(d, j)) continue;
      renumber[j] = static_cast<int>(layer.size());
      std::vector<int> fs;
      for (int f : k.faces[sz(d)][j]) fs.push_back(renumber_prev[sz(f)]);
      layer.push_back(std::move(fs));
    }
    out.faces.push_back(std::move(layer));
    renumber_prev = std::move(renumber);
  }
  return out;
}

long euler_characteristic(const DeltaComplex& k) {
  long chi = 0;
  for (int d = 0; d <= k.dim(); ++d) chi += (d % 2 == 0 ? 1 : -1) * static_cast<long>(k.count(d));
  return chi;
}

std::vector<int> vertex_components(const DeltaComplex& k) {
  const std::size_t nv = k.count(0);
  UnionFind uf(nv);
  if (k.dim() >= 1) {
    for (const auto& edge : k.faces[1]) uf.unite(edge[0], edge[1]);
  }
  std::vector<int> label(nv, -1), root_label(nv, -1);
  int next = 0;
  for (std::size_t v = 0; v < nv; ++v) {
    const int r = uf.find(static_cast<int>(v));
    if (root_label[sz(r)] < 0) root_label[sz(r)] = next++;
    label[v] = root_label[sz(r)];
  }
  return label;
}

int component_count(const DeltaComplex& k) {
  const auto labels = vertex_components(k);
  int n = 0;
  for (int l : labels) n = std::max(n, l + 1);
  return n;
}

int complement_components(const DeltaComplex& k, const Subcomplex& s) {
  std::vector<std::size_t> offset(k.faces.size() + 1, 0);
  for (int d = 0; d <= k.dim(); ++d) offset[sz(d + 1)] = offset[sz(d)] + k.count(d);
  UnionFind uf(offset.back());
  for (int d = 1; d <= k.dim(); ++d) {
    for (std::size_t j = 0; j < k.count(d); ++j) {
      if (s.contains(d, j)) continue;
      for (int f : k.faces[sz(d)][j]) {
        if (s.contains(d - 1, sz(f))) continue;
        uf.unite(static_cast<int>(offset[sz(d)] + j), static_cast<int>(offset[sz(d - 1)] + sz(f)));
      }
    }
  }
  std::vector<bool> seen(offset.back(), false);
  int n = 0;
  for (int d = 0; d <= k.dim(); ++d) {
    for (std::size_t j = 0; j < k.count(d); ++j) {
      if (s.contains(d, j)) continue;
      const auto r = sz(uf.find(static_cast<int>(offset[sz(d)] + j)));
      if (!seen[r]) {
        seen[r] = true;
        ++n;
      }
    }
  }
  return n;
}

long fixed_cell_euler(const DeltaComplex& k, const CellMap& f) {
  long chi = 0;
  for (int d = 0; d <= k.dim(); ++d) {
    for (std::size_t j = 0; j < k.count(d); ++j) {
      if (sz(f.target[sz(d)][j]) == j) chi += (d % 2 == 0 ? 1 : -1);
    }
  }
  return chi;
}

}  // namespace glueback
