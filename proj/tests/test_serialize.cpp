#include <catch2/catch_amalgamated.hpp>

#include "cubical/serialize.hpp"

using namespace cubical;

TEST_CASE("theory serialization round-trips and is canonically ordered") {
  for (const Theory& t : {Theory::none(), Theory{Symbol::meet}, Theory({Symbol::meet, Symbol::sigma}),
                          Theory::poset(), Theory::full()}) {
    json j = theory_to_json(t);
    CHECK(theory_from_json(j) == t);
    auto names = j.get<std::vector<std::string>>();
    CHECK(std::is_sorted(names.begin(), names.end()));
  }
  CHECK(theory_to_json(Theory({Symbol::meet, Symbol::sigma})) == json::array({"meet", "sigma"}));
  CHECK_THROWS_AS(theory_from_json(json::array({"triangle"})), std::invalid_argument);
}

TEST_CASE("cube map serialization round-trips over enumerated hom-sets") {
  for (const Theory& t : {Theory::none(), Theory::poset()})
    for (int m = 0; m <= 2; ++m)
      for (int n = 0; n <= 2; ++n)
        for (const CubeMap& f : enumerate_hom(t, m, n)) {
          json j = cube_map_to_json(f);
          CHECK(cube_map_from_json(j) == f);
        }
  // the documented example encoding
  json j = cube_map_to_json(connection_map(1, 1, 0));
  CHECK(j == json{{"m", 2}, {"n", 1}, {"table", json::array({"0", "1", "1", "1"})}});
}

TEST_CASE("cube map deserialization validates") {
  CHECK_THROWS_AS(cube_map_from_json(json{{"m", 1}, {"n", 1}, {"table", json::array({"0"})}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(cube_map_from_json(json{{"m", 0}, {"n", 1}, {"table", json::array({"2"})}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(cube_map_from_json(json{{"m", 0}, {"n", 2}, {"table", json::array({"0"})}}),
                  std::invalid_argument);
}

TEST_CASE("certificate serialization round-trips") {
  AnodyneAmbient amb(Theory{Symbol::meet}, Theory::poset(), 1, 3);
  auto cert = certify(amb, SubcomplexSpec{SubcomplexSpec::Kind::unit, -1},
                      SubcomplexSpec{SubcomplexSpec::Kind::full, -1})
                  .certificate;
  json j = certificate_to_json(cert);
  FillingCertificate back = certificate_from_json(j);
  CHECK(back.A == cert.A);
  CHECK(back.B == cert.B);
  CHECK(back.n == cert.n);
  CHECK(back.D == cert.D);
  REQUIRE(back.steps.size() == cert.steps.size());
  for (std::size_t s = 0; s < back.steps.size(); ++s) {
    CHECK(back.steps[s].kappa == cert.steps[s].kappa);
    CHECK(back.steps[s].phi == cert.steps[s].phi);
    CHECK(back.steps[s].interior == cert.steps[s].interior);
    CHECK(back.steps[s].inner == cert.steps[s].inner);
  }
  CHECK(certificate_to_json(back) == j);
  CHECK(verify(back).pass);
}

TEST_CASE("serialized output is deterministic") {
  AnodyneAmbient amb(Theory{Symbol::meet}, Theory::poset(), 2, 3);
  const SubcomplexSpec u{SubcomplexSpec::Kind::unit, -1}, f{SubcomplexSpec::Kind::full, -1};
  const std::string once = certificate_to_json(certify(amb, u, f).certificate).dump(2);
  const std::string twice = certificate_to_json(certify(amb, u, f).certificate).dump(2);
  CHECK(once == twice);
}

TEST_CASE("cubical set serialization reconstructs the action") {
  // elementary table plus composition for a connections-only theory
  for (const CSet& X : {representable(Theory{Symbol::meet}, 2, 2),
                        boundary(Theory{Symbol::meet}, 2, 2).as_cubical_set().set}) {
    json j = cubical_set_to_json(X);
    CHECK(j.at("extendByComposition").get<bool>());
    CSet back = cubical_set_from_json(j);
    for (int d = 0; d <= X->truncation; ++d) {
      REQUIRE(back->size(d) == X->size(d));
      for (int e = 0; e <= X->truncation; ++e)
        for (const CubeMap& g : enumerate_hom(X->theory, e, d))
          for (std::size_t i = 0; i < X->size(d); ++i)
            CHECK(back->action(d, i, g) == X->action(d, i, g));
    }
  }
  // theories with diagonals carry the full table
  CSet P = representable(Theory::poset(), 1, 2);
  json jp = cubical_set_to_json(P);
  CHECK_FALSE(jp.at("extendByComposition").get<bool>());
  CSet pback = cubical_set_from_json(jp);
  for (int d = 0; d <= 2; ++d)
    for (int e = 0; e <= 2; ++e)
      for (const CubeMap& g : enumerate_hom(Theory::poset(), e, d))
        for (std::size_t i = 0; i < P->size(d); ++i) CHECK(pback->action(d, i, g) == P->action(d, i, g));
}
