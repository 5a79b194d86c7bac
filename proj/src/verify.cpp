#include "glueback/verify.hpp"

#include <algorithm>
#include <sstream>

#include "glueback/homology.hpp"

namespace glueback {

namespace {

std::string str(long v) { return std::to_string(v); }

Outcome verdict(bool ok) { return ok ? Outcome::pass : Outcome::fail; }

std::string coloring_text(const StratifiedComplex& q, const Coloring& lambda) {
  std::string out;
  for (const auto& f : q.facets()) {
    if (!out.empty()) out += ",";
    out += lambda.colors.at(f.name).to_string();
  }
  return "(" + out + ")";
}

std::vector<GroupElement> nonzero_elements(int rank) {
  std::vector<GroupElement> out;
  for (std::uint32_t b = 1; b < (std::uint32_t{1} << rank); ++b) out.emplace_back(rank, b);
  std::sort(out.begin(), out.end());
  return out;
}

DeltaComplex fixed_set(const BuiltManifold& m, const GroupElement& g) {
  const std::vector<GroupElement> gens{g};
  return restrict(m.complex(), fixed_subcomplex(m, Subgroup::span(gens, m.rank())));
}

}  // namespace

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::pass: return "pass";
    case Outcome::fail: return "FAIL";
    case Outcome::not_applicable: return "n/a";
    case Outcome::hypothesis_failed: return "FAIL(hypothesis)";
  }
  return "?";
}

const char* to_string(BoundaryPattern p) {
  switch (p) {
    case BoundaryPattern::football: return "football-pattern";
    case BoundaryPattern::tetrahedron: return "tetrahedron-pattern";
    case BoundaryPattern::other: return "other";
  }
  return "?";
}

TheoremReport check_surface_euler(const StratifiedComplex& q, const Coloring& lambda) {
  TheoremReport r;
  r.theorem = "surface-euler";
  r.relation = "=";
  if (q.dim() != 2 || lambda.rank != 2) {
    r.detail = "needs a 2-dimensional orbit space with a rank-2 coloring";
    return r;
  }
  r.inputs = coloring_text(q, lambda);
  const BuiltManifold m = build(q, lambda);
  const long chi_sigma = euler_characteristic(m.complex());
  long corners = 0;
  for (const auto& p : pre_faces(q)) {
    if (p.codim == 2) ++corners;
  }
  const long chi_f = euler_characteristic(q);
  r.left = str(chi_sigma);
  r.right = "4*" + str(chi_f) + "-" + str(corners) + " = " + str(4 * chi_f - corners);
  r.outcome = verdict(chi_sigma == 4 * chi_f - corners);
  return r;
}

std::optional<int> homology_sphere_dimension(const DeltaComplex& k) {
  if (k.dim() < 0) return -1;
  const auto b = gf2_betti(k);
  const int top = k.dim();
  if (top == 0) return b[0] == 2 ? std::optional<int>(0) : std::nullopt;
  for (int d = 0; d <= top; ++d) {
    const std::size_t want = (d == 0 || d == top) ? 1 : 0;
    if (b[static_cast<std::size_t>(d)] != want) return std::nullopt;
  }
  return top;
}

TheoremReport check_borel(const BuiltManifold& m) {
  TheoremReport r;
  r.theorem = "borel";
  r.relation = "=";
  const int n = m.dim();
  const auto whole = homology_sphere_dimension(m.complex());
  if (!whole || *whole != n) {
    r.detail = "M is not a GF(2)-homology sphere";
    return r;
  }
  const auto fixed_dim = [&](const Subgroup& h) {
    return homology_sphere_dimension(restrict(m.complex(), fixed_subcomplex(m, h)));
  };
  const auto ng = fixed_dim(Subgroup::whole(m.rank()));
  if (!ng) {
    r.outcome = Outcome::hypothesis_failed;
    r.detail = "fixed set of the whole group is not a GF(2)-homology sphere";
    return r;
  }
  long sum = 0;
  std::ostringstream terms;
  const auto subgroups = subgroups_of_rank(m.rank(), m.rank() - 1);
  for (const auto& h : subgroups) {
    const auto nh = fixed_dim(h);
    if (!nh) {
      r.outcome = Outcome::hypothesis_failed;
      std::string gens;
      for (const auto& g : h.basis()) gens += (gens.empty() ? "" : ",") + g.to_string();
      r.detail = "fixed set of <" + gens + "> is not a GF(2)-homology sphere";
      return r;
    }
    sum += *nh - *ng;
    terms << (terms.tellp() > 0 ? "+" : "") << (*nh - *ng);
  }
  r.inputs = std::to_string(subgroups.size()) + " corank-1 subgroups";
  r.left = str(n) + "-" + str(*ng) + " = " + str(n - *ng);
  r.right = terms.str() + " = " + str(sum);
  r.outcome = verdict(n - *ng == sum);
  return r;
}

TheoremReport check_kobayashi(const BuiltManifold& m, const GroupElement& tau) {
  TheoremReport r;
  r.theorem = "kobayashi";
  r.relation = "<=";
  r.inputs = "tau=" + tau.to_string();
  const DeltaComplex& k = m.complex();
  if (m.dim() != 3) {
    r.detail = "M is not 3-dimensional";
    return r;
  }
  if (component_count(k) != 1) {
    r.detail = "M is not connected";
    return r;
  }
  const HomologyProfile p = homology_profile(k);
  if (!p.orientable) {
    r.detail = "M is not orientable";
    return r;
  }
  const auto act = orientation_action(k, m.action(tau));
  if (act.size() != 1 || act.front() != OrientationAction::reversing) {
    r.detail = std::string("tau is ") + to_string(act.front());
    return r;
  }
  const DeltaComplex fix = fixed_set(m, tau);
  const std::size_t left = fix.dim() >= 1 ? gf2_betti(fix)[1] : 0;
  const std::size_t b1_gf2 = p.gf2_betti.size() > 1 ? p.gf2_betti[1] : 0;
  const std::size_t b1_q = p.rational_betti.size() > 1 ? p.rational_betti[1] : 0;
  r.left = std::to_string(left);
  r.right = std::to_string(b1_gf2) + "+" + std::to_string(b1_q);
  r.outcome = verdict(left <= b1_gf2 + b1_q);
  return r;
}

std::vector<TheoremReport> check_lefschetz_all(const BuiltManifold& m) {
  std::vector<TheoremReport> out;
  const DeltaComplex& k = m.complex();
  const RationalHomology h(k);
  std::vector<GroupElement> elements{GroupElement::zero(m.rank())};
  for (const auto& g : nonzero_elements(m.rank())) elements.push_back(g);
  for (const auto& g : elements) {
    TheoremReport r;
    r.theorem = "lefschetz";
    r.relation = "=";
    r.inputs = "g=" + g.to_string();
    const CellMap f = m.action(g);
    const BigInt lhs = lefschetz_number(h, k, f);
    const long chi = g.is_zero() ? euler_characteristic(k) : euler_characteristic(fixed_set(m, g));
    const long cells = fixed_cell_euler(k, f);
    r.left = lhs.str();
    r.right = str(chi);
    r.outcome = verdict(lhs == chi && cells == chi);
    r.detail = "cellular trace setting";
    if (cells != chi) r.detail += "; fixed cells give " + str(cells);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<std::vector<int>> enumerate_sphere_patterns(const std::set<int>& allowed) {
  for (int s : allowed) {
    if (s < 2 || s > 5) throw std::invalid_argument("face sizes must lie in 2..5");
  }
  const std::vector<int> sizes(allowed.begin(), allowed.end());
  std::vector<std::vector<int>> out;
  std::vector<int> counts(sizes.size(), 0);
  // sum (6 - k) f_k = 12; vertices 3V = 2E = sum k f_k
  auto rec = [&](auto&& self, std::size_t i, int budget) -> void {
    if (i == sizes.size()) {
      if (budget != 0) return;
      int sides = 0;
      for (std::size_t j = 0; j < sizes.size(); ++j) sides += sizes[j] * counts[j];
      if (sides % 6 == 0 && sides > 0) out.push_back(counts);
      return;
    }
    const int w = 6 - sizes[i];
    for (int c = budget / w; c >= 0; --c) {
      counts[i] = c;
      self(self, i + 1, budget - c * w);
    }
    counts[i] = 0;
  };
  rec(rec, 0, 12);
  return out;
}

std::vector<BoundaryVerdict> classify_boundary(const StratifiedComplex& q) {
  std::vector<BoundaryVerdict> out;
  if (q.dim() != 3) return out;
  const auto patterns = enumerate_sphere_patterns({2, 3});
  const auto comps = boundary_components(q);
  for (std::size_t c = 0; c < comps.size(); ++c) {
    const auto& comp = comps[c];
    BoundaryVerdict v;
    v.component = c;
    std::vector<int> count(2, 0);
    bool small = true;
    std::string sizes;
    for (int s : comp.face_sizes) {
      sizes += (sizes.empty() ? "" : ",") + std::to_string(s);
      if (s == 2 || s == 3) {
        ++count[static_cast<std::size_t>(s - 2)];
      } else {
        small = false;
      }
    }
    v.detail = "faces (" + sizes + "), chi " + std::to_string(comp.euler);
    if (!comp.closed || comp.euler != 2) {
      v.detail += ", not a 2-sphere";
    } else if (small && std::find(patterns.begin(), patterns.end(), count) != patterns.end()) {
      v.pattern = count[0] == 3 ? BoundaryPattern::football : BoundaryPattern::tetrahedron;
    }
    out.push_back(std::move(v));
  }
  return out;
}

TheoremReport check_component_counts(const BuiltManifold& m) {
  TheoremReport r;
  r.theorem = "components";
  r.relation = "in";
  const int c = components(m);
  r.left = std::to_string(c);
  std::string allowed;
  for (int p = 0; p <= m.rank(); ++p) allowed += (allowed.empty() ? "" : ",") + std::to_string(1 << p);
  r.right = "{" + allowed + "}";
  const bool power = c > 0 && (c & (c - 1)) == 0 && c <= (1 << m.rank());
  r.outcome = verdict(power);
  return r;
}

std::vector<TheoremReport> run_suite(const StratifiedComplex& q, const Coloring& lambda, const Cocycle& xi,
                                     const SuiteSelection& which) {
  std::vector<TheoremReport> out;
  const BuiltManifold m = build(q, lambda, xi);
  if (which.euler) {
    if (q.dim() == 2 && xi.is_zero()) {
      out.push_back(check_surface_euler(q, lambda));
    } else {
      out.push_back({"surface-euler", "", "", "", "", Outcome::not_applicable, "needs a 2-dimensional orbit space with trivial bundle"});
    }
  }
  if (which.borel) out.push_back(check_borel(m));
  if (which.lefschetz) {
    for (auto& r : check_lefschetz_all(m)) out.push_back(std::move(r));
  }
  if (which.kobayashi) {
    std::optional<TheoremReport> skipped;
    bool any = false;
    for (const auto& g : nonzero_elements(m.rank())) {
      TheoremReport r = check_kobayashi(m, g);
      if (r.outcome == Outcome::not_applicable) {
        if (!skipped) skipped = std::move(r);
        continue;
      }
      any = true;
      out.push_back(std::move(r));
    }
    if (!any && skipped) out.push_back(std::move(*skipped));
  }
  if (which.boundary && q.dim() == 3) {
    for (const auto& v : classify_boundary(q)) {
      out.push_back({"boundary", "component " + std::to_string(v.component), to_string(v.pattern), "", "", Outcome::pass, v.detail});
    }
  }
  if (which.components && q.facet_count() == 0) out.push_back(check_component_counts(m));
  return out;
}

}  // namespace glueback
