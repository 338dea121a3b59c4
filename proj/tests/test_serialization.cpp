#include <doctest.h>

#include <random>

#include "iwasawa/acs.hpp"
#include "iwasawa/dolbeault.hpp"
#include "iwasawa/echelon.hpp"
#include "iwasawa/errors.hpp"
#include "iwasawa/metric.hpp"
#include "iwasawa/sampling.hpp"
#include "iwasawa/serialization.hpp"
#include "iwasawa/spectra.hpp"

using namespace iwasawa;

TEST_CASE("chart coordinates survive a round trip exactly") {
  std::mt19937_64 rng(191);
  for (int s = 0; s < 50; ++s) {
    EchelonPlus p = random_echelon_plus(rng, 1.5);
    EchelonPlus p2 = echelon_plus_from(json_of(p));
    CHECK(p2.a == p.a);
    CHECK(p2.b == p.b);
    CHECK(p2.c == p.c);
    CHECK(p2.d == p.d);
    CHECK(p2.x == p.x);
    CHECK(p2.y == p.y);

    EchelonMinus m = random_echelon_minus(rng, 1.5);
    EchelonMinus m2 = echelon_minus_from(json_of(m));
    CHECK(m2.a == m.a);
    CHECK(m2.v == m.v);
  }
}

TEST_CASE("derived entries are advisory on parse") {
  EchelonPlus p{0.5, Complex(0, 1), -0.25, 0.75, 0, 0};
  Json tampered = json_of(p);
  REQUIRE(tampered.contains("u"));
  tampered["u"] = json_of(Complex(99.0, -99.0));
  CHECK(echelon_plus_from(tampered).u() == p.u());

  EchelonMinus m{0.5, 0.1, 0.1, 0, 0, Complex(0, 0.4)};
  Json tm = json_of(m);
  REQUIRE(tm.contains("d"));
  tm["d"] = json_of(Complex(99.0, 0.0));
  CHECK(echelon_minus_from(tm).d() == m.d());
}

TEST_CASE("structures and forms round trip") {
  std::mt19937_64 rng(193);
  for (int s = 0; s < 30; ++s) {
    ACS j = random_acs(rng);
    CHECK(acs_from(json_of(j)).J == j.J);
  }
  KForm f(2);
  f.set_coeff(MultiIndex({1, 3}), Complex(0.25, -1.5));
  f.set_coeff(MultiIndex({5, 6}), Complex(-2.0, 0.0));
  KForm f2 = kform_from(json_of(f));
  CHECK(f2.degree() == 2);
  CHECK((f2 - f).is_zero(0.0));
}

TEST_CASE("invalid payloads are rejected") {
  Json bad_shape = Json::object();
  bad_shape["J"] = Json::array({Json::array({1.0, 2.0})});
  CHECK_THROWS_AS((void)acs_from(bad_shape), ValidationError);

  Json bad_form;
  bad_form["degree"] = 2;
  bad_form["terms"] = Json::array({Json{{"idx", {0, 7}}, {"re", 1.0}, {"im", 0.0}}});
  CHECK_THROWS_AS((void)kform_from(bad_form), ValidationError);
}

TEST_CASE("enum names are frozen") {
  CHECK(region_name(Region::ConjugatePair) == "conjugate-pair");
  CHECK(region_name(Region::RealTriangle) == "real-triangle");
  CHECK(region_name(Region::NegativeDiagonal) == "negative-diagonal");
  CHECK(region_name(Region::Shaded) == "shaded");
  CHECK(region_name(Region::Boundary) == "boundary");
  CHECK(component_name(Component::Cplus) == "C+");
  CHECK(component_name(Component::Cminus) == "C-");
  CHECK(component_name(Component::MinusCplus) == "-C+");
  CHECK(component_name(Component::MinusCminus) == "-C-");
}

TEST_CASE("report payloads carry the expected fields") {
  Json sp = json_of(spectrum(EchelonPlus{0.5, 0, 0, 0.3, 0, 0}));
  for (const char* key : {"gamma", "delta", "lambda", "mu", "region", "orient_D", "orient_total"})
    CHECK(sp.contains(key));
  CHECK(sp["region"] == "real-triangle");

  Json dr = json_of(dolbeault_report(j0()));
  for (const char* key : {"dims", "rank0", "rank1", "ker1", "h1", "sv0", "sv1"})
    CHECK(dr.contains(key));
  CHECK(dr["h1"] == 6);

  SphereCoord sc{0.6, 0.0, -0.8};
  SphereCoord sc2 = sphere_from(json_of(sc));
  CHECK(sc2.A == 0.6);
  CHECK(sc2.C == -0.8);
}
