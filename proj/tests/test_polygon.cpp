#include <doctest.h>

#include <cstdio>
#include <random>

#include "bsl/polygon.hpp"
#include "oracles.hpp"

using namespace bsl;

TEST_CASE("modular preset validates") {
  auto P = preset_modular();
  auto rep = P.validate();
  INFO(rep.summary());
  CHECK(rep.ok());
  CHECK(P.d() == 2);
}

TEST_CASE("modular vertices are -1, 0, 1, inf") {
  auto P = preset_modular();
  bool saw_inf = false;
  std::vector<Real> finite;
  for (int v = 0; v < 4; ++v) {
    HalfPlanePoint h = P.vertex(v).halfplane();
    if (h.inf)
      saw_inf = true;
    else
      finite.push_back(h.x);
  }
  CHECK(saw_inf);
  REQUIRE(finite.size() == 3);
  std::sort(finite.begin(), finite.end());
  CHECK(near(finite[0], Real(-1)));
  CHECK(near(finite[1], Real(0)));
  CHECK(near(finite[2], Real(1)));
}

TEST_CASE("denominator of the parabolic point 0/1 is 1") {
  auto P = preset_modular();
  for (int v = 0; v < 4; ++v) {
    HalfPlanePoint h = P.vertex(v).halfplane();
    if (!h.inf && near(h.x, Real(0))) {
      auto [B, k] = P.vertex_rep(v);
      Real D = abs(compose(B, P.cusps()[k].A).c);
      CHECK(near(D, Real(1)));
    }
  }
}

TEST_CASE("a generator replaced by its inverse breaks the pairing") {
  RealMoebius T2{Real(1), Real(2), Real(0), Real(1)};
  RealMoebius V{Real(1), Real(0), Real(2), Real(1)};
  LabelledPolygon broken("broken", {"a", "b", "B", "A"}, {3, 2, 1, 0},
                         {T2, V.inverse(), V.inverse(), T2.inverse()},
                         {{RealMoebius::identity(), BoundaryPoint::infinity(), Real(1)}}, {},
                         precision::bits());
  auto rep = broken.validate();
  CHECK(!rep.ok());
  bool pairing_failed = false;
  for (const auto& it : rep.items)
    if (!it.pass && (it.name == "inverse_pairing" || it.name == "side_pairing"))
      pairing_failed = true;
  CHECK(pairing_failed);
}

TEST_CASE("arcs with a gap fail the partition check") {
  RealMoebius T3{Real(1), Real(3), Real(0), Real(1)};  // wrong translation length
  RealMoebius V{Real(1), Real(0), Real(2), Real(1)};
  LabelledPolygon gapped("gapped", {"a", "b", "B", "A"}, {3, 2, 1, 0},
                         {T3, V, V.inverse(), T3.inverse()},
                         {{RealMoebius::identity(), BoundaryPoint::infinity(), Real(1)}}, {},
                         precision::bits());
  auto rep = gapped.validate();
  CHECK(!rep.ok());
  bool partition_failed = false;
  for (const auto& it : rep.items)
    if (!it.pass && (it.name == "arc_partition" || it.name == "arc_total")) partition_failed = true;
  CHECK(partition_failed);
}

TEST_CASE("group file round-trip") {
  auto P = preset_modular();
  std::string path = "roundtrip_modular.json";
  save_group(P, path);
  auto Q = load_group(path);
  std::remove(path.c_str());
  REQUIRE(Q.n_letters() == P.n_letters());
  for (int a = 0; a < P.n_letters(); ++a) {
    CHECK(Q.label(a) == P.label(a));
    CHECK(Q.gen_half(a).same(P.gen_half(a), 16 * precision::tau()));
  }
  CHECK(Q.cosets().size() == P.cosets().size());
  CHECK(near(Q.cusps()[0].mu, P.cusps()[0].mu));
}

TEST_CASE("bad files are rejected") {
  using nlohmann::json;
  json j = polygon_to_json(preset_modular());

  SUBCASE("determinant off") {
    j["letters"][0]["generator_halfplane"] = {"1", "2", "0", "0.9"};
    CHECK_THROWS_AS(polygon_from_json(j), ValidationError);
  }
  SUBCASE("involution broken") {
    j["letters"][0]["inverse"] = "b";
    CHECK_THROWS_AS(polygon_from_json(j), ParseError);
  }
  SUBCASE("missing field") {
    j.erase("cusps");
    CHECK_THROWS_AS(polygon_from_json(j), ParseError);
  }
  SUBCASE("non-decimal entry") {
    j["letters"][1]["generator_halfplane"] = {"1", "x", "0", "1"};
    CHECK_THROWS_AS(polygon_from_json(j), ParseError);
  }
}

TEST_CASE("arc action: F_a maps the complement of [hat a] into [a]") {
  auto P = preset_modular();
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0, 1);
  Real twopi = 2 * pi_value();
  for (int a = 0; a < P.n_letters(); ++a) {
    int h = P.hat(a);
    Real tL = P.letter(h).tL, tR = P.letter(h).tR;
    int tested = 0;
    while (tested < 200) {
      Real t = tR + (twopi - (tR - tL)) * Real(u(rng));
      BoundaryPoint p{unit_at(-t)};
      BoundaryPoint img = P.gen_disc(a).apply(p);
      int loc;
      try {
        loc = P.locate(img);
      } catch (const NearBoundaryAmbiguity&) {
        continue;
      }
      CHECK(loc == a);
      ++tested;
    }
  }
}

TEST_CASE("arc partition sums to 2 pi and the o-order matches the walk") {
  auto P = preset_modular();
  Real total = 0;
  for (int a = 0; a < P.n_letters(); ++a) total += P.letter(a).tR - P.letter(a).tL;
  CHECK(abs(total - 2 * pi_value()) <= 10 * precision::tau());
  // clockwise walk visits letters in index order (o is the index)
  for (int a = 0; a + 1 < P.n_letters(); ++a)
    CHECK(abs(P.letter(a).tR - P.letter(a + 1).tL) <= 10 * precision::tau());
}

TEST_CASE("example octagon group loads and validates") {
  auto P = load_group(std::string(BSL_SOURCE_DIR) + "/data/genus2_octagon.json");
  CHECK(P.d() == 4);
  CHECK(P.validate().ok());
  CHECK(near(P.cusps()[0].mu, Real("58.0833146848910658214056925506"), Real("1e-20")));
  // non-arithmeticity certificate: a generator trace equal to 5/2
  bool has_52 = false;
  for (int a = 0; a < P.n_letters(); ++a)
    if (near(abs(P.gen_half(a).trace()), Real(5) / 2, Real("1e-40"))) has_52 = true;
  CHECK(has_52);
  // all eight vertices resolve through the single cusp
  for (int v = 0; v < P.vertex_count(); ++v) {
    auto [B, k] = P.vertex_rep(v);
    CHECK(k == 0);
    HalfPlanePoint img = compose(B, P.cusps()[k].A).apply(HalfPlanePoint::infinity());
    CHECK(img.same(P.vertex(v).halfplane(), sqrt(precision::tau())));
  }
}
