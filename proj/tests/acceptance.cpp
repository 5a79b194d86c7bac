// Acceptance criteria AC1-AC12, one line each. Exit status is the number of
// failing criteria.

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>

#include "glueback/catalog.hpp"
#include "glueback/characteristic_data.hpp"
#include "glueback/glue_back.hpp"
#include "glueback/homology.hpp"
#include "glueback/surgery.hpp"
#include "glueback/verify.hpp"
#include "support.hpp"

using namespace glueback;
using Sizes = std::vector<std::size_t>;
using Clock = std::chrono::steady_clock;

namespace {

// Collects the first failed expectation of a criterion.
struct Check {
  std::string failure;
  void expect(bool ok, const std::string& what) {
    if (!ok && failure.empty()) failure = what;
  }
};

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::string str(const Sizes& v) {
  std::ostringstream s;
  s << '(';
  for (std::size_t i = 0; i < v.size(); ++i) s << (i ? "," : "") << v[i];
  s << ')';
  return s.str();
}

std::vector<std::string> three_dimensional() {
  std::vector<std::string> out;
  for (const auto& n : catalog_names()) {
    if (make(n).q.dim() == 3) out.push_back(n);
  }
  return out;
}

void ac1(Check& c) {
  const auto fb = make("football");
  const auto t = Clock::now();
  const auto m = build(fb.q, fb.lambda);
  const double s = seconds_since(t);
  c.expect(s < 1.0, "build took " + std::to_string(s) + " s");
  const auto h = integral_homology(m.complex());
  c.expect(gf2_betti(m.complex()) == Sizes{1, 0, 0, 1}, "betti " + str(gf2_betti(m.complex())));
  c.expect(h.free_rank[1] == 0 && h.torsion[1].empty(), "H1 nonzero");
  c.expect(homology_profile(m.complex()).orientable, "not orientable");
  const auto back = orbit_quotient(m);
  c.expect(weakly_equivalent(back.q, back.lambda, fb.q, fb.lambda).has_value(), "orbit quotient differs");
}

void ac2(Check& c) {
  const auto m = testing::built("simplex(3)");
  const auto h = integral_homology(m.complex());
  c.expect(gf2_betti(m.complex()) == Sizes{1, 1, 1, 1}, "betti " + str(gf2_betti(m.complex())));
  c.expect(h.free_rank[1] == 0 && h.torsion[1].size() == 1 && h.torsion[1][0] == 2, "H1 is not Z/2");
  c.expect(homology_profile(m.complex()).orientable, "not orientable");
}

void ac3(Check& c) {
  const auto t = Clock::now();
  const auto b = gf2_betti(testing::built("cube").complex());
  const double s = seconds_since(t);
  c.expect(b == Sizes{1, 3, 3, 1}, "betti " + str(b));
  c.expect(s < 5.0, "took " + std::to_string(s) + " s");
}

void ac4(Check& c) {
  for (const std::string name : {"polygon(2)", "simplex(2)", "polygon(3)", "polygon(4)", "klein-square", "polygon(5)"}) {
    const auto m = make(name);
    c.expect(check_surface_euler(m.q, m.lambda).outcome == Outcome::pass, name);
  }
}

void ac5(Check& c) {
  const auto m = testing::built("football");
  const auto r = check_borel(m);
  c.expect(r.outcome == Outcome::pass, r.left + " vs " + r.right);
  for (const auto& h : subgroups_of_rank(3, 2)) {
    c.expect(homology_sphere_dimension(restrict(m.complex(), fixed_subcomplex(m, h))).has_value(),
             "a fixed set is not a homology sphere");
  }
}

void ac6(Check& c) {
  for (const auto& name : three_dimensional()) {
    for (const auto& r : check_lefschetz_all(testing::built(name))) {
      c.expect(r.outcome == Outcome::pass, name + " " + r.inputs);
    }
  }
}

void ac7(Check& c) {
  std::size_t reversing = 0;
  for (const auto& name : three_dimensional()) {
    const auto m = testing::built(name);
    for (std::uint32_t b = 1; b < (1u << m.rank()); ++b) {
      const auto r = check_kobayashi(m, GroupElement(m.rank(), b));
      if (r.outcome == Outcome::not_applicable) continue;
      ++reversing;
      c.expect(r.outcome == Outcome::pass, name + " " + r.inputs);
    }
  }
  c.expect(reversing > 0, "no orientation-reversing element found");
  const auto rp3 = check_kobayashi(testing::built("simplex(3)"), GroupElement::parse("100"));
  c.expect(rp3.left == "1" && rp3.right == "1+0", "RP3 reads " + rp3.left + " <= " + rp3.right);
}

void ac8(Check& c) {
  const auto fb = make("football");
  const auto r = equivariant_connected_sum(fb.q, fb.lambda, fb.q, fb.lambda);
  const auto b = gf2_betti(build(r.q, r.lambda).complex());
  c.expect(b == Sizes{1, 7, 7, 1}, "betti " + str(b));
}

void ac9(Check& c) {
  const auto fb = make("football");
  const auto f = fill_hole(fb.q, fb.lambda, 0);
  c.expect(components(build(f.q, f.lambda)) == 8, "football fill is not 8 components");
  const int v = model_center("football");
  const auto tube = cut_and_paste(fb.q, fb.lambda, interior_ball(fb.q, v), fb.q, fb.lambda, interior_ball(fb.q, v));
  const auto one = fill_hole(tube.q, tube.lambda, 0);
  const auto tet = make("simplex(3)");
  for (const auto* g : {&f, &one}) {
    const auto n = components(build(g->q, g->lambda));
    c.expect(n == 1 || n == 2 || n == 4 || n == 8, "fill gave " + std::to_string(n) + " components");
  }
  const auto t = fill_hole(tet.q, tet.lambda, 0);
  const auto n = components(build(t.q, t.lambda));
  c.expect(n == 1 || n == 2 || n == 4 || n == 8, "tetrahedron fill gave " + std::to_string(n));
}

void ac10(Check& c) {
  c.expect(classify_boundary(make("football").q).at(0).pattern == BoundaryPattern::football, "football");
  c.expect(classify_boundary(make("simplex(3)").q).at(0).pattern == BoundaryPattern::tetrahedron, "tetrahedron");
  const auto p = enumerate_sphere_patterns({2, 3});
  c.expect(std::set<std::vector<int>>(p.begin(), p.end()) == std::set<std::vector<int>>{{3, 0}, {0, 4}} && p.size() == 2,
           "patterns");
}

void ac11(Check& c) {
  c.expect(enumerate_bundle_classes(make("football").q, 3).representatives.size() == 1, "football classes");
  const auto q = make("circle(4)").q;
  const auto b = enumerate_bundle_classes(q, 1);
  c.expect(b.representatives.size() == 2, "circle classes");
  if (b.representatives.size() == 2) {
    c.expect(covering_components(q, b.representatives[0]) == 2 && covering_components(q, b.representatives[1]) == 1,
             "circle components");
  }
}

void ac12(Check& c) {
  for (const auto& name : catalog_names()) {
    const auto cat = make(name);
    const auto m = build(cat.q, cat.lambda);
    const DeltaComplex& k = m.complex();
    try {
      check_simplicial_identities(k);
      check_boundary_squared(k);
    } catch (const std::exception& e) {
      c.expect(false, name + ": " + e.what());
    }
    for (int d = 0; d <= m.dim(); ++d) {
      for (std::size_t s = 0; s < m.base().count(d); ++s) {
        const auto [lo, hi] = m.fiber_range(d, static_cast<int>(s));
        c.expect(hi - lo == (1 << (m.rank() - m.isotropy(d, static_cast<int>(s)).rank())), name + " fiber size");
      }
    }
    for (std::uint32_t b = 0; b < (1u << m.rank()); ++b) {
      try {
        check_chain_map(k, m.action(GroupElement(m.rank(), b)));
      } catch (const std::exception& e) {
        c.expect(false, name + " action: " + e.what());
      }
    }
    const auto h = integral_homology(k);
    const auto gf2 = gf2_betti(k);
    c.expect(gf2_betti_from_integral(h) == gf2, name + " universal coefficients");
    c.expect(testing::naive_gf2_betti(k) == gf2, name + " naive betti");
    for (std::size_t i = 0; i < gf2.size(); ++i) c.expect(gf2[i] == gf2[gf2.size() - 1 - i], name + " duality");
    const bool orientable = homology_profile(k).orientable;
    for (std::size_t f = 0; f < cat.q.facet_count(); ++f) {
      const auto& color = cat.lambda.colors.at(cat.q.facet(f).name);
      if (orientable) {
        for (auto a : orientation_action(k, m.action(color))) {
          c.expect(a == OrientationAction::reversing, name + " facet color preserves orientation");
        }
      }
      // each facet preimage is two-sided and its color swaps the sides
      c.expect(facet_swaps_sides(m, static_cast<int>(f)), name + " facet " + cat.q.facet(f).name + " one-sided");
    }
  }
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<void(Check&)>>> criteria{
      {"AC1", ac1}, {"AC2", ac2}, {"AC3", ac3}, {"AC4", ac4},  {"AC5", ac5},   {"AC6", ac6},
      {"AC7", ac7}, {"AC8", ac8}, {"AC9", ac9}, {"AC10", ac10}, {"AC11", ac11}, {"AC12", ac12}};
  int failed = 0;
  const auto start = Clock::now();
  for (const auto& [name, run] : criteria) {
    Check c;
    const auto t = Clock::now();
    try {
      run(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    const double s = seconds_since(t);
    if (std::string(name) == "AC12") c.expect(seconds_since(start) < 60.0, "total runtime over 60 s");
    failed += !c.failure.empty();
    std::printf("%s: %s (%.3f s)%s%s\n", name, c.failure.empty() ? "PASS" : "FAIL", s, c.failure.empty() ? "" : " ",
                c.failure.c_str());
  }
  std::printf("total %.3f s, %d failed\n", seconds_since(start), failed);
  return failed;
}
