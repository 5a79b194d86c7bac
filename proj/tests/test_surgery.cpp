#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "glueback/catalog.hpp"
#include "glueback/glue_back.hpp"
#include "glueback/homology.hpp"
#include "glueback/surgery.hpp"
#include "glueback/verify.hpp"
#include "support.hpp"

using namespace glueback;
using Sizes = std::vector<std::size_t>;

namespace {

Sizes betti_of(const StratifiedComplex& q, const Coloring& l) { return testing::naive_gf2_betti(build(q, l).complex()); }

SurgeryError::Kind error_kind(const std::function<void()>& f) {
  try {
    f();
  } catch (const SurgeryError& e) {
    return e.kind();
  }
  FAIL("no surgery error");
  return SurgeryError::Kind::unsupported;
}

// Colors agree facet by facet through some facial isomorphism, without any
// change of basis.
bool strictly_equal(const StratifiedComplex& a, const Coloring& la, const StratifiedComplex& b, const Coloring& lb) {
  return find_facial_isomorphism(a, b, [&](const FacialIsomorphism& iso) {
           for (std::size_t i = 0; i < a.facet_count(); ++i) {
             const auto& image = b.facet(static_cast<std::size_t>(iso.facet_map[i])).name;
             if (la.colors.at(a.facet(i).name) != lb.colors.at(image)) return false;
           }
           return true;
         })
      .has_value();
}

}  // namespace

TEST_CASE("excising an interior ball leaves a 2-sphere section") {
  const auto fb = make("football");
  // the football is a cone, so thicken first
  const auto q = shrink_star(fb.q, model_center("football"), 100);
  const auto r = excise(q, interior_ball(q, model_center("football")));
  // the frontier is not a facet of the remainder
  CHECK(validate(r.remainder).has(ViolationKind::boundary_not_covered));
  CHECK_FALSE(r.section_has_boundary);
  CHECK(r.section.dim() == 2);
  CHECK(euler_characteristic(r.section) == 2);
  CHECK(euler_characteristic(r.remainder) == 2);
  CHECK(r.remainder.facet_count() == 3);
}

TEST_CASE("excision through the boundary is rejected") {
  const auto fb = make("football");
  const int boundary_vertex = fb.q.facet(0).simplices.front()[0];
  CHECK(error_kind([&] { (void)excise(fb.q, interior_ball(fb.q, boundary_vertex)); }) ==
        SurgeryError::Kind::invalid_excision);
}

TEST_CASE("stellar subdivision and shrinking a star keep the complex valid") {
  const auto fb = make("football");
  const auto top = fb.q.simplices(3).front();
  const auto s = stellar_subdivide(fb.q, top, 100);
  CHECK(validate(s).ok());
  CHECK(s.count(3) == fb.q.count(3) + 3);
  CHECK(euler_characteristic(s) == 1);
  const auto t = shrink_star(fb.q, model_center("football"), 200);
  CHECK(validate(t).ok());
  CHECK(euler_characteristic(t) == 1);
  CHECK(t.facet_count() == fb.q.facet_count());
  CHECK(betti_of(t, fb.lambda) == Sizes{1, 0, 0, 1});
  const auto [p, v] = prepare_interior_ball(make("simplex(3)").q);
  CHECK(validate(p).ok());
  CHECK_FALSE(p.vertex_on_boundary(v));
}

TEST_CASE("connected sum of two footballs has eight tubes") {
  const auto fb = make("football");
  const auto a = equivariant_connected_sum(fb.q, fb.lambda, fb.q, fb.lambda);
  CHECK(validate(a.q).ok());
  CHECK(betti_of(a.q, a.lambda) == Sizes{1, 7, 7, 1});
  CHECK(a.chi_section == 2);
  // the explicit excision at the model center agrees
  const auto b = cut_and_paste(fb.q, fb.lambda, interior_ball(fb.q, model_center("football")), fb.q, fb.lambda,
                               interior_ball(fb.q, model_center("football")));
  CHECK(betti_of(b.q, b.lambda) == Sizes{1, 7, 7, 1});
  CHECK(classify_boundary(b.q).size() == 2);
}

TEST_CASE("connected sums add up the first GF(2) Betti numbers plus seven") {
  const auto fb = make("football"), tet = make("simplex(3)"), cube = make("cube");
  const auto a = equivariant_connected_sum(tet.q, tet.lambda, fb.q, fb.lambda);
  CHECK(betti_of(a.q, a.lambda) == Sizes{1, 8, 8, 1});
  const auto b = equivariant_connected_sum(cube.q, cube.lambda, fb.q, fb.lambda);
  CHECK(betti_of(b.q, b.lambda) == Sizes{1, 10, 10, 1});
  const auto sq = make("polygon(4)"), tri = make("simplex(2)");
  const auto c = equivariant_connected_sum(sq.q, sq.lambda, tri.q, tri.lambda);
  // T^2 # RP^2 glued along four circles
  CHECK(betti_of(c.q, c.lambda) == Sizes{1, 9, 1});
}

TEST_CASE("filling a hole gives eight spheres and undoing it restores the model") {
  for (const std::string name : {"football", "simplex(3)"}) {
    INFO(name);
    const auto c = make(name);
    const auto f = fill_hole(c.q, c.lambda, 0);
    CHECK(f.q.facet_count() == 0);
    const auto m = build(f.q, f.lambda);
    CHECK(components(m) == 8);
    CHECK(testing::naive_gf2_betti(m.complex()) == Sizes{8, 0, 0, 8});
    CHECK_FALSE(check_component_counts(m).failed());
    const auto [q2, l2] = undo_fill(f);
    CHECK(validate(q2).ok());
    CHECK(strictly_equal(q2, l2, c.q, c.lambda));
  }
}

TEST_CASE("filling one end of S^2 x I gives a ball, both ends a closed cover") {
  const auto fb = make("football");
  const int v = model_center("football");
  const auto tube = cut_and_paste(fb.q, fb.lambda, interior_ball(fb.q, v), fb.q, fb.lambda, interior_ball(fb.q, v));
  const auto one = fill_hole(tube.q, tube.lambda, 0);
  CHECK(classify_boundary(one.q).size() == 1);
  CHECK(components(build(one.q, one.lambda)) == 1);
  const auto two = fill_hole(one.q, one.lambda, 0);
  const auto m = build(two.q, two.lambda);
  CHECK(components(m) == 8);
  CHECK_FALSE(check_component_counts(m).failed());
}

TEST_CASE("cut and paste reports mismatched sections") {
  const auto fb = make("football"), tet = make("simplex(3)");
  CHECK(error_kind([&] {
          (void)cut_and_paste(tet.q, tet.lambda, boundary_collar(tet.q, 0), fb.q, fb.lambda, boundary_collar(fb.q, 0));
        }) == SurgeryError::Kind::no_matching);
  const auto circle = make("circle(4)");
  const auto bundles = enumerate_bundle_classes(circle.q, 1);
  REQUIRE(bundles.representatives.size() == 2);
  const auto ball = interior_ball(circle.q, circle.q.vertices().front());
  CHECK(error_kind([&] {
          (void)cut_and_paste(circle.q, circle.lambda, ball, circle.q, circle.lambda, ball, std::nullopt,
                              bundles.representatives[1], std::nullopt);
        }) == SurgeryError::Kind::unsupported);
}
