#include "glueback/homology.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace glueback {

namespace {

using Column = std::vector<std::pair<int, Rational>>;

std::size_t sz(int d) { return static_cast<std::size_t>(d); }

// a -= factor * b on sorted sparse columns
void axpy(Column& a, const Rational& factor, const Column& b) {
  Column out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(std::move(a[i++]));
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, -factor * b[j].second);
      ++j;
    } else {
      Rational v = a[i].second - factor * b[j].second;
      if (v != 0) out.emplace_back(a[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  a = std::move(out);
}

Column boundary_column(const DeltaComplex& k, int d, std::size_t j) {
  Column col;
  if (d == 0) return col;
  const auto& fs = k.faces[sz(d)][j];
  for (std::size_t i = 0; i < fs.size(); ++i) {
    const Rational sign = (i % 2 == 0) ? 1 : -1;
    auto it = std::find_if(col.begin(), col.end(), [&](const auto& e) { return e.first == fs[i]; });
    if (it == col.end()) {
      col.emplace_back(fs[i], sign);
    } else {
      it->second += sign;
    }
  }
  std::erase_if(col, [](const auto& e) { return e.second == 0; });
  std::sort(col.begin(), col.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return col;
}

struct Reduction {
  std::vector<Column> reduced;   // R columns
  std::vector<Column> v;         // V columns
  std::vector<int> low_owner;    // row -> column with that low, or -1
};

Reduction reduce_boundary(const DeltaComplex& k, int d) {
  Reduction r;
  const std::size_t n = k.count(d);
  r.low_owner.assign(k.count(d - 1), -1);
  r.reduced.resize(n);
  r.v.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    Column col = boundary_column(k, d, j);
    Column v{{static_cast<int>(j), Rational(1)}};
    while (!col.empty()) {
      const int low = col.back().first;
      const int owner = r.low_owner[sz(low)];
      if (owner < 0) break;
      const Rational factor = col.back().second / r.reduced[sz(owner)].back().second;
      axpy(col, factor, r.reduced[sz(owner)]);
      axpy(v, factor, r.v[sz(owner)]);
    }
    if (!col.empty()) r.low_owner[sz(col.back().first)] = static_cast<int>(j);
    r.reduced[j] = std::move(col);
    r.v[j] = std::move(v);
  }
  return r;
}

BigInt to_integer(const Rational& q) {
  if (boost::multiprecision::denominator(q) != 1) {
    throw std::logic_error("trace is not an integer");
  }
  return boost::multiprecision::numerator(q);
}

int cell_vertex(const DeltaComplex& k, int d, int j) {
  while (d > 0) {
    j = k.faces[sz(d)][sz(j)][0];
    --d;
  }
  return j;
}

}  // namespace

SparseIntMatrix boundary_matrix(const DeltaComplex& k, int d) {
  SparseIntMatrix m;
  m.rows = k.count(d - 1);
  m.cols = k.count(d);
  m.columns.resize(m.cols);
  if (d <= 0) return m;
  for (std::size_t j = 0; j < m.cols; ++j) {
    for (auto& [row, value] : boundary_column(k, d, j)) {
      m.columns[j].emplace_back(row, BigInt(boost::multiprecision::numerator(value)));
    }
  }
  return m;
}

Gf2Matrix boundary_matrix_gf2(const DeltaComplex& k, int d) {
  Gf2Matrix m(k.count(d - 1), k.count(d));
  if (d <= 0) return m;
  for (std::size_t j = 0; j < k.count(d); ++j) {
    for (int f : k.faces[sz(d)][j]) m.flip(sz(f), j);
  }
  return m;
}

void check_boundary_squared(const DeltaComplex& k) {
  for (int d = 2; d <= k.dim(); ++d) {
    for (std::size_t j = 0; j < k.count(d); ++j) {
      Column total;
      for (const auto& [face, coeff] : boundary_column(k, d, j)) {
        axpy(total, -coeff, boundary_column(k, d - 1, sz(face)));
      }
      if (!total.empty()) {
        throw std::logic_error("boundary of boundary nonzero on cell " + std::to_string(j) +
                               " of dimension " + std::to_string(d));
      }
    }
  }
}

std::vector<std::size_t> gf2_betti(const DeltaComplex& k) {
  const int top = k.dim();
  std::vector<std::size_t> rank(sz(top + 2), 0);
  for (int d = 1; d <= top; ++d) rank[sz(d)] = gf2_rank(boundary_matrix_gf2(k, d));
  std::vector<std::size_t> betti;
  for (int d = 0; d <= top; ++d) betti.push_back(k.count(d) - rank[sz(d)] - rank[sz(d + 1)]);
  return betti;
}

std::vector<std::size_t> rational_betti(const DeltaComplex& k) {
  RationalHomology h(k);
  std::vector<std::size_t> betti;
  for (int d = 0; d <= k.dim(); ++d) betti.push_back(h.betti(d));
  return betti;
}

IntegralHomology integral_homology(const DeltaComplex& k) {
  const int top = k.dim();
  std::vector<SmithForm> snf(sz(top + 2));
  for (int d = 1; d <= top; ++d) snf[sz(d)] = smith_normal_form(boundary_matrix(k, d));
  IntegralHomology h;
  for (int d = 0; d <= top; ++d) {
    h.free_rank.push_back(k.count(d) - snf[sz(d)].rank - snf[sz(d + 1)].rank);
    std::vector<BigInt> tors;
    for (const auto& f : snf[sz(d + 1)].diagonal) {
      if (f > 1) tors.push_back(f);
    }
    h.torsion.push_back(std::move(tors));
  }
  return h;
}

std::vector<std::size_t> gf2_betti_from_integral(const IntegralHomology& h) {
  // H_d(;Z2) = H_d (x) Z2 + Tor(H_{d-1}, Z2)
  auto even = [](const std::vector<BigInt>& t) {
    return static_cast<std::size_t>(std::count_if(t.begin(), t.end(), [](const BigInt& x) { return x % 2 == 0; }));
  };
  std::vector<std::size_t> betti;
  for (std::size_t d = 0; d < h.free_rank.size(); ++d) {
    std::size_t b = h.free_rank[d] + even(h.torsion[d]);
    if (d > 0) b += even(h.torsion[d - 1]);
    betti.push_back(b);
  }
  return betti;
}

HomologyProfile homology_profile(const DeltaComplex& k) {
  HomologyProfile p;
  p.gf2_betti = gf2_betti(k);
  p.rational_betti = rational_betti(k);
  p.torsion = integral_homology(k).torsion;
  p.euler = euler_characteristic(k);
  p.orientable = k.dim() >= 0 &&
                 p.rational_betti.back() == static_cast<std::size_t>(component_count(k));
  return p;
}

RationalHomology::RationalHomology(const DeltaComplex& k) {
  const int top = k.dim();
  basis_.resize(sz(top + 1));
  low_owner_.resize(sz(top + 1));
  reduced_next_.resize(sz(top + 1));
  essential_pos_.resize(sz(top + 1));
  if (top < 0) return;
  std::vector<Reduction> red;
  for (int d = 0; d <= top + 1; ++d) {
    if (d <= top) {
      red.push_back(reduce_boundary(k, d));
    } else {
      Reduction empty;
      empty.low_owner.assign(k.count(top), -1);
      red.push_back(std::move(empty));
    }
  }
  for (int d = 0; d <= top; ++d) {
    const Reduction& here = red[sz(d)];
    const Reduction& next = red[sz(d + 1)];
    low_owner_[sz(d)] = next.low_owner;
    reduced_next_[sz(d)] = next.reduced;
    essential_pos_[sz(d)].assign(k.count(d), -1);
    for (std::size_t j = 0; j < k.count(d); ++j) {
      if (!here.reduced[j].empty()) continue;
      if (next.low_owner[j] >= 0) continue;
      essential_pos_[sz(d)][j] = static_cast<int>(basis_[sz(d)].size());
      basis_[sz(d)].push_back(here.v[j]);
    }
  }
}

std::vector<Rational> RationalHomology::coordinates(int d, Column chain) const {
  std::sort(chain.begin(), chain.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  Column merged;
  for (auto& [cell, coeff] : chain) {
    if (!merged.empty() && merged.back().first == cell) {
      merged.back().second += coeff;
    } else {
      merged.emplace_back(cell, std::move(coeff));
    }
  }
  std::erase_if(merged, [](const auto& e) { return e.second == 0; });
  chain = std::move(merged);
  std::vector<Rational> coords(basis_[sz(d)].size(), Rational(0));
  while (!chain.empty()) {
    const int low = chain.back().first;
    const int owner = low_owner_[sz(d)][sz(low)];
    if (owner >= 0) {
      const Column& col = reduced_next_[sz(d)][sz(owner)];
      axpy(chain, chain.back().second / col.back().second, col);
      continue;
    }
    const int pos = essential_pos_[sz(d)][sz(low)];
    if (pos < 0) throw std::invalid_argument("chain is not a cycle");
    const Rational c = chain.back().second;
    coords[sz(pos)] += c;
    axpy(chain, c, basis_[sz(d)][sz(pos)]);
  }
  return coords;
}

RatMatrix induced_map(const RationalHomology& h, const DeltaComplex& k, const CellMap& f, int d) {
  check_chain_map(k, f);
  const auto n = static_cast<Eigen::Index>(h.betti(d));
  RatMatrix m = RatMatrix::Constant(n, n, Rational(0));
  for (Eigen::Index j = 0; j < n; ++j) {
    Column image;
    for (const auto& [cell, coeff] : h.basis(d)[static_cast<std::size_t>(j)]) {
      image.emplace_back(f.target[sz(d)][sz(cell)], coeff);
    }
    const auto coords = h.coordinates(d, std::move(image));
    for (Eigen::Index i = 0; i < n; ++i) m(i, j) = coords[static_cast<std::size_t>(i)];
  }
  return m;
}

RatMatrix induced_map(const DeltaComplex& k, const CellMap& f, int d) {
  return induced_map(RationalHomology(k), k, f, d);
}

BigInt lefschetz_number(const DeltaComplex& k, const CellMap& f) { return lefschetz_number(RationalHomology(k), k, f); }

BigInt lefschetz_number(const RationalHomology& h, const DeltaComplex& k, const CellMap& f) {
  Rational total = 0;
  for (int d = 0; d <= k.dim(); ++d) {
    const RatMatrix m = induced_map(h, k, f, d);
    Rational trace = 0;
    for (Eigen::Index i = 0; i < m.rows(); ++i) trace += m(i, i);
    total += (d % 2 == 0) ? trace : Rational(-trace);
  }
  return to_integer(total);
}

std::vector<OrientationAction> orientation_action(const DeltaComplex& k, const CellMap& f) {
  const int top = k.dim();
  const auto labels = vertex_components(k);
  const int ncomp = component_count(k);
  const RationalHomology h(k);
  std::vector<std::vector<int>> classes(sz(ncomp));
  for (std::size_t b = 0; b < h.betti(top); ++b) {
    const int cell = h.basis(top)[b].front().first;
    classes[sz(labels[sz(cell_vertex(k, top, cell))])].push_back(static_cast<int>(b));
  }
  const RatMatrix m = induced_map(h, k, f, top);
  std::vector<OrientationAction> out;
  for (int c = 0; c < ncomp; ++c) {
    // where does f send this component?
    int rep = -1;
    for (std::size_t v = 0; v < labels.size(); ++v) {
      if (labels[v] == c) {
        rep = static_cast<int>(v);
        break;
      }
    }
    if (labels[sz(f.target[0][sz(rep)])] != c) {
      out.push_back(OrientationAction::moves_component);
      continue;
    }
    const auto& cls = classes[sz(c)];
    if (cls.empty()) {
      out.push_back(OrientationAction::not_orientable);
      continue;
    }
    if (cls.size() > 1) throw std::invalid_argument("component has more than one top class");
    const Rational s = m(cls[0], cls[0]);
    if (s == 1) {
      out.push_back(OrientationAction::preserving);
    } else if (s == -1) {
      out.push_back(OrientationAction::reversing);
    } else {
      throw std::logic_error("top-degree action is not +-1");
    }
  }
  return out;
}

int separation_check(const DeltaComplex& k, const Subcomplex& s) { return complement_components(k, s); }

const char* to_string(OrientationAction a) {
  switch (a) {
    case OrientationAction::preserving: return "+1";
    case OrientationAction::reversing: return "-1";
    case OrientationAction::not_orientable: return "not-orientable";
    case OrientationAction::moves_component: return "moves-component";
  }
  return "?";
}

}  // namespace glueback
