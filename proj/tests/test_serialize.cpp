#include <catch2/catch_amalgamated.hpp>

#include <complex>

#include "frdm/serialize.hpp"

using namespace frdm;

TEST_CASE("doubles format round-trip exact", "[serialize]") {
  for (double x : {0.0, 1.0, -1.0 / 3.0, 2.7541947200304207, 1e-300, -3.86831635902558e-06}) {
    CHECK(std::stod(format_double(x)) == x);
  }
}

TEST_CASE("sector vectors round-trip through json", "[serialize]") {
  for (auto [M, N, seed] : {std::tuple{4, 2, 1}, {6, 3, 2}, {5, 0, 3}}) {
    SectorVector v = N > 0 ? random_state(M, N, seed) : slater(M, {});
    SectorVector back = sector_vector_from_json(to_json(v));
    CHECK(back.modes == v.modes);
    CHECK(back.particles == v.particles);
    REQUIRE(back.amps.size() == v.amps.size());
    CHECK((back.amps - v.amps).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("sector vector parsing validates its input", "[serialize]") {
  CHECK_THROWS_AS(sector_vector_from_json(std::string{"{\"M\":4,\"N\":2}"}),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      sector_vector_from_json(std::string{
          "{\"M\":4,\"N\":2,\"basis_order\":\"other\",\"amps\":[]}"}),
      std::invalid_argument);
  // wrong amplitude count: C(4,2) = 6, not 2
  CHECK_THROWS_AS(
      sector_vector_from_json(std::string{
          "{\"M\":4,\"N\":2,\"basis_order\":\"mask-ascending\",\"amps\":[[1,0],[0,0]]}"}),
      std::invalid_argument);
  CHECK_THROWS_AS(sector_vector_from_json(std::string{"not json"}), nlohmann::json::exception);
}

TEST_CASE("matrices round-trip through json", "[serialize]") {
  Eigen::MatrixXcd g2 = gamma2(random_state(4, 2, 9));
  Eigen::MatrixXcd back = matrix_from_json(to_json(g2));
  CHECK((back - g2).cwiseAbs().maxCoeff() == 0.0);
  CHECK_THROWS_AS(matrix_from_json(std::string{"{\"dim\":2,\"entries\":[[1,0]]}"}),
                  std::invalid_argument);
}

TEST_CASE("report lines carry the full context map", "[serialize]") {
  CertificateReport r;
  r.name = "demo \"quoted\"";
  r.lhs = 1.5;
  r.rhs = 2.0;
  r.margin = 0.5;
  r.pass = true;
  r.context["alpha"] = 1.0;
  r.context["beta"] = -2.5;
  auto j = nlohmann::json::parse(to_json_line(r));
  CHECK(j.at("name").get<std::string>() == "demo \"quoted\"");
  CHECK(j.at("pass").get<bool>());
  CHECK(j.at("context").at("alpha").get<double>() == 1.0);
  CHECK(j.at("context").at("beta").get<double>() == -2.5);
  CHECK(j.at("context").size() == 2);
}
