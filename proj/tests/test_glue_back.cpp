#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "glueback/catalog.hpp"
#include "glueback/glue_back.hpp"
#include "glueback/homology.hpp"
#include "support.hpp"

using namespace glueback;

namespace {

std::vector<GroupElement> all_elements(int rank) {
  std::vector<GroupElement> out;
  for (std::uint32_t b = 0; b < (1u << rank); ++b) out.emplace_back(rank, b);
  return out;
}

}  // namespace

TEST_CASE("fibers have 2^(n - rank G(sigma)) cells") {
  for (const auto& name : catalog_names()) {
    INFO(name);
    const auto m = testing::built(name);
    for (int d = 0; d <= m.dim(); ++d) {
      for (std::size_t s = 0; s < m.base().count(d); ++s) {
        const auto [lo, hi] = m.fiber_range(d, static_cast<int>(s));
        CHECK(hi - lo == (1 << (m.rank() - m.isotropy(d, static_cast<int>(s)).rank())));
      }
    }
  }
}

TEST_CASE("the action commutes with face maps and is a group action") {
  for (const auto& name : catalog_names()) {
    INFO(name);
    const auto m = testing::built(name);
    const DeltaComplex& k = m.complex();
    CHECK_NOTHROW(check_simplicial_identities(k));
    const auto elements = all_elements(m.rank());
    std::vector<CellMap> maps;
    for (const auto& g : elements) {
      maps.push_back(m.action(g));
      CHECK_NOTHROW(check_chain_map(k, maps.back()));
    }
    CHECK(maps[0].target == CellMap::identity(k).target);
    for (std::size_t a = 0; a < elements.size(); ++a) {
      for (std::size_t b = 0; b < elements.size(); ++b) {
        const std::size_t c = (elements[a] + elements[b]).bits();
        bool ok = true;
        for (int d = 0; d <= k.dim(); ++d) {
          for (std::size_t j = 0; j < k.count(d); ++j) {
            const int via = maps[a].target[static_cast<std::size_t>(d)][static_cast<std::size_t>(maps[b].target[static_cast<std::size_t>(d)][j])];
            ok = ok && via == maps[c].target[static_cast<std::size_t>(d)][j];
          }
        }
        CHECK(ok);
      }
    }
  }
}

TEST_CASE("Euler characteristic matches the isotropy count") {
  for (const auto& name : catalog_names()) {
    INFO(name);
    const auto c = make(name);
    const auto m = build(c.q, c.lambda);
    CHECK(euler_characteristic(m.complex()) == euler_characteristic_predicted(c.q, c.lambda));
  }
}

TEST_CASE("orbit quotient recovers the orbit space and its coloring") {
  for (const auto& name : catalog_names()) {
    INFO(name);
    const auto c = make(name);
    const auto m = build(c.q, c.lambda);
    const auto back = orbit_quotient(m);
    CHECK(validate(back.q).ok());
    CHECK(back.q.facet_count() == c.q.facet_count());
    CHECK(weakly_equivalent(back.q, back.lambda, c.q, c.lambda));
  }
}

TEST_CASE("build refuses invalid colorings and names the violation") {
  const auto c = make("simplex(2)");
  Coloring bad = c.lambda;
  bad.colors.at(c.q.facet(0).name) = bad.colors.at(c.q.facet(1).name);
  try {
    (void)build(c.q, bad);
    FAIL("built over a dependent coloring");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("coloring-dependent") != std::string::npos);
  }
}

TEST_CASE("fixed sets of the football action") {
  const auto m = testing::built("football");
  const auto whole = restrict(m.complex(), fixed_subcomplex(m, Subgroup::whole(3)));
  CHECK(whole.dim() == 0);
  CHECK(whole.count(0) == 2);
  const auto refl = restrict(m.complex(), fixed_subcomplex(m, Subgroup::span(std::vector<GroupElement>{GroupElement::parse("100")}, 3)));
  CHECK(gf2_betti(refl) == std::vector<std::size_t>{1, 0, 1});
}

TEST_CASE("facet preimages are two-sided with the color swapping sides") {
  for (const auto& name : catalog_names()) {
    INFO(name);
    const auto m = testing::built(name);
    for (std::size_t f = 0; f < m.base().facet_count(); ++f) CHECK(facet_swaps_sides(m, static_cast<int>(f)));
  }
}

TEST_CASE("facet preimages separate spheres but not tori") {
  for (const std::string name : {"football", "polygon(2)"}) {
    INFO(name);
    const auto m = testing::built(name);
    for (std::size_t f = 0; f < m.base().facet_count(); ++f) {
      CHECK(separation_check(m.complex(), facet_preimage(m, static_cast<int>(f))) == 2);
    }
  }
  // one meridian circle of the torus leaves it connected
  const auto t = testing::built("polygon(4)");
  CHECK(separation_check(t.complex(), facet_preimage(t, 0)) == 1);
}

TEST_CASE("cell dumps are stable") {
  const auto a = emit_cells(testing::built("football"));
  const auto b = emit_cells(testing::built("football"));
  CHECK(a == b);
  CHECK(a.rfind("cell 0 ", 0) == 0);
  CHECK(a.find("\nface ") != std::string::npos);
}

TEST_CASE("components of free actions") {
  CHECK(components(testing::built("circle(4)")) == 2);
  CHECK(components(testing::built("torus")) == 4);
  CHECK(components(testing::built("football")) == 1);
}
