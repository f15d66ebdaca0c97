#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "frdm/certificates.hpp"
#include "frdm/serialize.hpp"

using namespace frdm;
using std::complex;

TEST_CASE("tensor antisymmetrization halves and flags", "[certificates]") {
  CoefficientTensor4 a = random_tensor4(3, 5);
  CHECK_FALSE(a.antisymmetrized);
  CoefficientTensor4 anti = antisymmetrize(a);
  CHECK(anti.antisymmetrized);
  for (int k = 0; k < 3; ++k)
    for (int l = 0; l < 3; ++l)
      for (int m = 0; m < 3; ++m)
        for (int n = 0; n < 3; ++n) {
          CHECK(std::abs(anti.at(k, l, m, n) + anti.at(l, k, m, n)) == 0.0);
          CHECK(std::abs(anti.at(k, l, m, n) -
                         0.5 * (a.at(k, l, m, n) - a.at(l, k, m, n))) == 0.0);
        }
  CHECK(anti.hs_norm() <= a.hs_norm() * (1.0 + 1e-12));
  CHECK((antisymmetrize(anti).entries - anti.entries).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("pair-space hilbert-schmidt bound", "[certificates]") {
  SECTION("slater states sit at sqrt(2 N (N-1))") {
    for (auto [M, N] : {std::pair{4, 2}, {6, 3}, {8, 4}}) {
      std::set<int> occ;
      for (int k = 0; k < N; ++k) occ.insert(k);
      CertificateReport r = check_hs_norm_bound(slater(M, occ));
      CHECK(r.pass);
      CHECK(std::abs(r.lhs - std::sqrt(2.0 * N * (N - 1))) < 1e-10);
      CHECK(std::abs(r.rhs - std::sqrt(5.0) * N) < 1e-14);
      CHECK(r.margin == r.rhs - r.lhs);
    }
  }
  SECTION("every two-particle state sits at exactly 2") {
    for (int seed : {1, 2, 3}) {
      CertificateReport r = check_hs_norm_bound(random_state(6, 2, seed));
      CHECK(r.pass);
      CHECK(std::abs(r.lhs - 2.0) < 1e-10);
    }
  }
  SECTION("frozen regression for a generic state") {
    CertificateReport r = check_hs_norm_bound(random_state(6, 3, 1));
    CHECK(r.pass);
    CHECK(std::abs(r.lhs - 2.7541947200304207) < 1e-12);
  }
  SECTION("pairing states") {
    CertificateReport r = check_hs_norm_bound(yang_pairing(8, 4));
    CHECK(r.pass);
    CHECK(std::abs(r.lhs - 3.4641016151377575) < 1e-12);
  }
}

TEST_CASE("truncated hilbert-schmidt bound", "[certificates]") {
  SECTION("slater states have zero on both sides") {
    CertificateReport r = check_truncated_hs_bound(slater(6, {0, 1, 2}));
    CHECK(r.pass);
    CHECK(r.lhs < 1e-12);
    CHECK(r.rhs < 1e-6);
    CHECK(r.context.at("tr_g1_1mg1") < 1e-13);
  }
  SECTION("frozen regression near a slater state") {
    CertificateReport r = check_truncated_hs_bound(near_slater(8, 4, 1e-3, 2));
    CHECK(r.pass);
    CHECK(std::abs(r.lhs - 0.0020102172836557503) < 1e-14);
    CHECK(std::abs(r.margin - 0.0067855957646366927) < 1e-14);
    CHECK(std::abs(r.context.at("tr_g1_1mg1") - 3.86831635902558e-06) < 1e-18);
  }
  SECTION("generic states pass with positive margin") {
    for (auto [M, N, seed] : {std::tuple{6, 3, 1}, {7, 3, 2}, {8, 4, 3}}) {
      CertificateReport r = check_truncated_hs_bound(random_state(M, N, seed));
      CHECK(r.pass);
      CHECK(r.margin > 0.0);
    }
  }
}

TEST_CASE("operator norm bounds", "[certificates]") {
  SECTION("pairing states meet the closed-form operator norm") {
    for (auto [M, N] : {std::pair{4, 2}, {6, 2}, {8, 4}, {10, 4}}) {
      CertificateReport r = check_op_norm_bounds(yang_pairing(M, N));
      CHECK(r.pass);
      const double expect = static_cast<double>(N) * (M - N + 2) / M;
      CHECK(std::abs(r.lhs - expect) < 1e-10);
      CHECK(std::abs(r.context.at("pairing_saturation_gap")) < 1e-10);
    }
  }
  SECTION("frozen regression for a generic state") {
    CertificateReport r = check_op_norm_bounds(random_state(6, 3, 1));
    CHECK(r.pass);
    CHECK(std::abs(r.lhs - 1.7276273042924917) < 1e-12);
    CHECK(r.context.at("gamma1_op") <= 1.0 + 1e-10);
    CHECK(r.context.find("pairing_saturation_value") == r.context.end());  // odd N
  }
  SECTION("slater states saturate the one-body side") {
    CertificateReport r = check_op_norm_bounds(slater(6, {0, 1, 2}));
    CHECK(r.pass);
    CHECK(std::abs(r.context.at("gamma1_op") - 1.0) < 1e-12);
    CHECK(std::abs(r.lhs - 2.0) < 1e-10);  // slater pair eigenvalues are 2
  }
}

TEST_CASE("entropy lower bound", "[certificates]") {
  SECTION("half-filled slater: entropy log 3, collision step tight") {
    CertificateReport r = check_entropy_lower_bound(slater(6, {0, 1, 2}));
    CHECK(r.pass);
    CHECK(std::abs(r.rhs - std::log(3.0)) < 1e-12);
    const double expect_bound =
        2.0 * std::log(3.0) - std::log(5.0 * (1.0 + 5.0 / 4.0));
    CHECK(std::abs(r.lhs - expect_bound) < 1e-12);
    CHECK(std::abs(r.rhs - r.context.at("jensen_bound")) < 1e-10);
  }
  SECTION("pairing state with nearly pure pair matrix") {
    // gamma2 of yang(4,2) is rank-one: entropy 0, bound log(4/20) < 0
    CertificateReport r = check_entropy_lower_bound(yang_pairing(4, 2));
    CHECK(r.pass);
    CHECK(r.rhs < 1e-12);
    CHECK(std::abs(r.lhs - std::log(0.2)) < 1e-12);
  }
  SECTION("generic states pass") {
    for (auto [M, N, seed] : {std::tuple{6, 3, 7}, {8, 4, 8}}) {
      CertificateReport r = check_entropy_lower_bound(random_state(M, N, seed));
      CHECK(r.pass);
      CHECK(r.rhs >= r.context.at("jensen_bound") - 1e-10);
    }
  }
  SECTION("rejects N < 2") {
    CHECK_THROWS_AS(check_entropy_lower_bound(random_state(4, 1, 1)), std::invalid_argument);
  }
}

TEST_CASE("anticommutator identity", "[certificates]") {
  SECTION("single-pair tensor at two modes") {
    Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(4, 4);
    e(pair_index(0, 1, 2), pair_index(0, 0, 2)) = 1.0;
    e(pair_index(1, 0, 2), pair_index(0, 0, 2)) = -1.0;
    CoefficientTensor4 a = make_tensor4(2, e);
    REQUIRE(a.antisymmetrized);
    CertificateReport r = check_anticommutator_identity(a, 0);
    CHECK(r.pass);
    CHECK(r.lhs < 1e-13);
    CHECK(r.margin == -r.lhs);
  }
  SECTION("random antisymmetrized tensors, every contraction index") {
    for (int M : {3, 4}) {
      CoefficientTensor4 a = antisymmetrize(random_tensor4(M, 100 + M));
      for (int n = 0; n < M; ++n) {
        CertificateReport r = check_anticommutator_identity(a, n);
        CHECK(r.pass);
        CHECK(r.lhs < 1e-10 * std::max(1.0, a.hs_norm_sq()));
      }
    }
  }
  SECTION("rejects tensors without the antisymmetry flag") {
    CoefficientTensor4 raw = random_tensor4(3, 9);
    CHECK_THROWS_AS(check_anticommutator_identity(raw, 0), std::invalid_argument);
    CHECK_THROWS_AS(check_anticommutator_identity(antisymmetrize(raw), 3),
                    std::invalid_argument);
  }
}

TEST_CASE("sector anticommutator bound", "[certificates]") {
  SECTION("zero tensor gives the zero operator") {
    CoefficientTensor4 zero = make_tensor4(3, Eigen::MatrixXcd::Zero(9, 9));
    CertificateReport r = check_sector_anticommutator_bound(zero, 2);
    CHECK(r.pass);
    CHECK(r.lhs == 0.0);
    CHECK(r.rhs == 0.0);
  }
  SECTION("vacuum sector is annihilated from both sides") {
    CoefficientTensor4 a = random_tensor4(4, 11);
    CertificateReport r = check_sector_anticommutator_bound(a, 0);
    CHECK(r.pass);
    CHECK(r.lhs < 1e-12);
  }
  SECTION("raw tensors pass: only the antisymmetric part contributes") {
    for (auto [M, N, seed] : {std::tuple{4, 2, 21}, {4, 3, 22}, {5, 2, 23}, {6, 3, 24}}) {
      CoefficientTensor4 a = random_tensor4(M, seed);
      CertificateReport r = check_sector_anticommutator_bound(a, N);
      CHECK(r.pass);
      CHECK(r.margin >= 0.0);
      // antisymmetrizing can only shrink the tensor norm, so the same
      // operator must also clear the tighter antisymmetrized budget
      CoefficientTensor4 anti = antisymmetrize(a);
      CertificateReport tight = check_sector_anticommutator_bound(anti, N);
      CHECK(tight.pass);
      CHECK(std::abs(tight.lhs - r.lhs) < 1e-9 * std::max(1.0, r.lhs));
      CHECK(tight.rhs <= r.rhs);
    }
  }
}

TEST_CASE("trace duality", "[certificates]") {
  SECTION("identity coefficients recover the pair trace") {
    SectorVector v = random_state(5, 3, 31);
    CoefficientTensor4 id = make_tensor4(5, Eigen::MatrixXcd::Identity(25, 25));
    CertificateReport r = check_trace_duality(v, id);
    CHECK(r.pass);
    CHECK(std::abs(r.lhs - 6.0) < 1e-10);  // tr g2 = N(N-1)
    CHECK(r.context.at("route_deviation") < 1e-11);
  }
  SECTION("random tensors agree along both routes") {
    for (auto [M, N, seed] : {std::tuple{4, 2, 41}, {5, 3, 42}, {6, 3, 43}}) {
      SectorVector v = random_state(M, N, seed);
      CoefficientTensor4 a = random_tensor4(M, seed + 1000);
      CertificateReport r = check_trace_duality(v, a);
      CHECK(r.pass);
      CHECK(r.context.at("route_deviation") < 1e-10);
    }
  }
  SECTION("normalized pair matrix as coefficients nearly saturates") {
    SectorVector v = slater(4, {0, 1});
    Eigen::MatrixXcd g2 = gamma2(v);
    CoefficientTensor4 a = make_tensor4(4, g2 / norms(g2).hs);
    CertificateReport r = check_trace_duality(v, a);
    CHECK(r.pass);
    // tr(a g2) = ||g2||_HS = 2 here, against the generic budget sqrt(5) * 2
    CHECK(std::abs(r.lhs - 2.0) < 1e-10);
  }
  SECTION("rejects mode mismatch") {
    CHECK_THROWS_AS(check_trace_duality(random_state(4, 2, 1), random_tensor4(5, 1)),
                    std::invalid_argument);
  }
}

TEST_CASE("truncated bilinear identity", "[certificates]") {
  SECTION("exhaustive basis tuples at small M") {
    for (auto [M, N, seed] : {std::tuple{4, 2, 51}, {5, 2, 52}, {5, 3, 53}}) {
      CertificateReport r = check_truncated_bilinear_identity(random_state(M, N, seed));
      CHECK(r.pass);
      CHECK(r.context.at("tuples") == static_cast<double>(M) * M * M * M);
    }
  }
  SECTION("sampled smeared tuples at larger M") {
    CertificateReport r = check_truncated_bilinear_identity(random_state(6, 3, 54), 25, 7);
    CHECK(r.pass);
    CHECK(r.context.at("tuples") == 25.0);
  }
  SECTION("slater states: both sides vanish identically") {
    CertificateReport r = check_truncated_bilinear_identity(slater(4, {0, 1}));
    CHECK(r.pass);
    CHECK(r.lhs < 1e-13);
  }
  SECTION("single-particle states work (truncated matrix is minus exchange part)") {
    CertificateReport r = check_truncated_bilinear_identity(random_state(4, 1, 55));
    CHECK(r.pass);
  }
}

TEST_CASE("projection lower bound on the truncated pair matrix", "[certificates]") {
  SECTION("zero projection is trivially tight") {
    SectorVector v = random_state(6, 3, 61);
    CertificateReport r = check_bach_lower_bound(v, Eigen::MatrixXcd::Zero(6, 6));
    CHECK(r.pass);
    CHECK(r.lhs == 0.0);
    CHECK(std::abs(r.rhs) < 1e-12);
  }
  SECTION("full projection on a slater state gives zero against zero") {
    SectorVector s = slater(6, {0, 1, 2});
    CertificateReport r = check_bach_lower_bound(s, Eigen::MatrixXcd::Identity(6, 6));
    CHECK(r.pass);
    CHECK(std::abs(r.lhs) < 1e-6);
    CHECK(std::abs(r.rhs) < 1e-12);
  }
  SECTION("random projections on generic states") {
    for (auto [M, N, seed] : {std::tuple{5, 2, 71}, {6, 3, 72}, {7, 3, 73}}) {
      SectorVector v = random_state(M, N, seed);
      for (int rank : {1, M / 2, M}) {
        CertificateReport r = check_bach_lower_bound(v, random_projection(M, rank, seed + rank));
        CHECK(r.pass);
        CHECK(r.context.at("tr_X_gamma1") >= -1e-12);
      }
    }
  }
  SECTION("rejects non-projections") {
    SectorVector v = random_state(4, 2, 81);
    Eigen::MatrixXcd notproj = 2.0 * Eigen::MatrixXcd::Identity(4, 4);
    CHECK_THROWS_AS(check_bach_lower_bound(v, notproj), std::invalid_argument);
    Eigen::MatrixXcd nonherm = Eigen::MatrixXcd::Zero(4, 4);
    nonherm(0, 1) = 1.0;
    CHECK_THROWS_AS(check_bach_lower_bound(v, nonherm), std::invalid_argument);
  }
}

TEST_CASE("report serialization round-trips the pass rule", "[certificates]") {
  CertificateReport r = check_hs_norm_bound(random_state(5, 2, 91));
  std::string line = to_json_line(r);
  auto j = nlohmann::json::parse(line);
  CHECK(j.at("name").get<std::string>() == "hs_norm_bound");
  CHECK(j.at("pass").get<bool>() == r.pass);
  CHECK(j.at("lhs").get<double>() == r.lhs);
  CHECK(j.at("rhs").get<double>() == r.rhs);
  CHECK(j.at("margin").get<double>() == r.margin);
  CHECK(j.at("context").at("tolerance").get<double>() == kSpectralTol);
}
