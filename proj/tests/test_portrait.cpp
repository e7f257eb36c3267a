#include "duffing/portrait.hpp"

#include <doctest.h>

#include <map>
#include <string>

using namespace duffing;

TEST_CASE("panel routing at pinned parameters") {
  SUBCASE("linear focus panel") {
    const PortraitClass pc = classify_portrait(Parameters(1, 0.5, 0.5, 1));
    CHECK(pc.figure == PortraitFigure::LinearDegree);
    CHECK(pc.panel == 'a');
    CHECK_FALSE(pc.degenerate());
  }
  SUBCASE("conservative heteroclinic panel") {
    const PortraitClass pc = classify_portrait(Parameters(0, -1, 1, 3));
    CHECK(pc.figure == PortraitFigure::AlphaZero);
    CHECK(pc.panel == 'g');
  }
  SUBCASE("even-degree sign panel") {
    const PortraitClass pc = classify_portrait(Parameters(1, 1, -1, 2));
    CHECK(pc.figure == PortraitFigure::EvenDegree);
    CHECK(pc.panel == 'g');
  }
  SUBCASE("all eight sign octants route for both parities") {
    for (int m : {2, 3}) {
      std::map<char, int> seen;
      for (double a : {-1.0, 1.0})
        for (double e : {-1.0, 1.0})
          for (double s : {-1.0, 1.0}) {
            const PortraitClass pc = classify_portrait(Parameters(a, e, s, m));
            CHECK_FALSE(pc.degenerate());
            ++seen[pc.panel];
          }
      CHECK(seen.size() == 8);  // a..h each exactly once
    }
  }
  SUBCASE("linear zero-discriminant boundary has its own panels") {
    CHECK(classify_portrait(Parameters(2, 0.5, 0.5, 1)).panel == 'f');
    CHECK(classify_portrait(Parameters(-2, 0.5, 0.5, 1)).panel == 'g');
  }
  SUBCASE("linear node and saddle panels") {
    CHECK(classify_portrait(Parameters(3, 0.5, 1.5, 1)).panel == 'c');
    CHECK(classify_portrait(Parameters(-3, 0.5, 1.5, 1)).panel == 'e');
    CHECK(classify_portrait(Parameters(1, 0.5, -1.5, 1)).panel == 'd');
    CHECK(classify_portrait(Parameters(0, 0.5, -1.5, 1)).panel == 'a');
    CHECK(classify_portrait(Parameters(0, 0.5, -1.5, 1)).figure == PortraitFigure::AlphaZero);
  }
}

TEST_CASE("uncovered caption corners and boundaries are flagged, not guessed") {
  SUBCASE("global-center corners carry a marker") {
    const PortraitClass odd = classify_portrait(Parameters(0, 1, 1, 3));
    CHECK(odd.degenerate());
    CHECK(odd.boundary->find("uncovered") != std::string::npos);
    const PortraitClass lin = classify_portrait(Parameters(0, 1, 1, 1));
    CHECK(lin.degenerate());
  }
  SUBCASE("equality boundaries carry a marker") {
    CHECK(classify_portrait(Parameters(0.5, 1, 0, 3)).degenerate());   // sigma = 0
    CHECK(classify_portrait(Parameters(0.5, -1, 1, 1)).degenerate());  // eps+sigma = 0
  }
  SUBCASE("markers and panels are mutually exclusive") {
    for (double a : {-0.5, 0.0, 0.5})
      for (double e : {-1.0, 1.0})
        for (double s : {-1.0, 0.0, 1.0})
          for (int m : {1, 2, 3, 4}) {
            if (s == 0.0 && m == 1) continue;  // sigma may be zero for m = 1
            const PortraitClass pc = classify_portrait(Parameters(a, e, s, m));
            CHECK((pc.panel != 0) != pc.boundary.has_value());
          }
  }
}

TEST_CASE("figure family partition by degree parity") {
  for (int m = 2; m <= 7; ++m)
    for (double a : {-0.5, 0.5}) {
      const PortraitClass pc = classify_portrait(Parameters(a, 1, 1, m));
      CHECK(pc.figure ==
            (m % 2 == 0 ? PortraitFigure::EvenDegree : PortraitFigure::OddDegree));
    }
  CHECK(classify_portrait(Parameters(0.5, 1, 1, 1)).figure == PortraitFigure::LinearDegree);
}

TEST_CASE("panels extended beyond the captioned degrees carry a note") {
  const PortraitClass pc = classify_portrait(Parameters(0.5, 1, 1, 7));
  REQUIRE(pc.note.has_value());
  CHECK(pc.note->find("m = 7") != std::string::npos);
  CHECK_FALSE(classify_portrait(Parameters(0.5, 1, 1, 3)).note.has_value());
}

TEST_CASE("census merges the per-module verdicts consistently") {
  SUBCASE("global center census") {
    const PortraitCensus c = census(Parameters(0, 1, 1, 3));
    REQUIRE(c.finite.size() == 1);
    CHECK(c.finite[0].kind == EquilibriumKind::Center);
    REQUIRE(c.infinite.size() == 1);
    CHECK(c.infinite[0].kind == InfiniteKind::LinearlyZero);
    CHECK(*c.infinite[0].sectors == SectorStructure{2, 0, 0});
    REQUIRE(c.cycles.has_value());
    CHECK(c.cycles->kind == CycleKind::NoCycle);
    CHECK(c.center.is_global_center);
    CHECK(c.inconsistencies.empty());
  }
  SUBCASE("damped linear census") {
    const PortraitCensus c = census(Parameters(3, 0.5, 1.5, 1));
    REQUIRE(c.finite.size() == 1);
    CHECK(c.finite[0].kind == EquilibriumKind::StableNode);
    REQUIRE(c.infinite.size() == 2);
    CHECK(c.infinite[0].kind == InfiniteKind::Saddle);
    CHECK(c.infinite[1].kind == InfiniteKind::UnstableNode);
    CHECK_FALSE(c.cycles.has_value());
    CHECK(c.inconsistencies.empty());
  }
  SUBCASE("heteroclinic census") {
    const PortraitCensus c = census(Parameters(0, -1, 1, 3));
    REQUIRE(c.finite.size() == 3);
    CHECK(c.finite[0].kind == EquilibriumKind::SaddlePoint);
    CHECK(c.finite[1].kind == EquilibriumKind::Center);
    CHECK(c.finite[2].kind == EquilibriumKind::SaddlePoint);
    REQUIRE(c.cycles.has_value());
    CHECK(c.cycles->kind == CycleKind::Heteroclinic);
    CHECK(c.inconsistencies.empty());
  }
  SUBCASE("no inconsistencies across a parameter sweep") {
    for (double a : {-1.0, -0.5, 0.0, 0.5, 1.0})
      for (double e : {-1.0, 1.0})
        for (double s : {-1.0, 1.0})
          for (int m : {1, 2, 3, 4, 5}) {
            const PortraitCensus c = census(Parameters(a, e, s, m));
            CHECK_MESSAGE(c.inconsistencies.empty(), "a=", a, " e=", e, " s=", s, " m=", m);
          }
  }
}

TEST_CASE("same panel, same census signature") {
  // Two points in the even-degree panel (g) and two in the odd heteroclinic
  // panel (g) must agree qualitatively.
  CHECK(census_signature(census(Parameters(1, 1, -1, 2))) ==
        census_signature(census(Parameters(0.5, 0.5, -0.5, 4))));
  CHECK(census_signature(census(Parameters(0, -1, 1, 3))) ==
        census_signature(census(Parameters(0, -0.5, 0.5, 5))));
  // Different stability panels have different signatures.
  CHECK(census_signature(census(Parameters(1, 1, 1, 3))) !=
        census_signature(census(Parameters(-1, 1, 1, 3))));
}
