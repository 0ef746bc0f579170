#include <catch2/catch_amalgamated.hpp>
#include <sstream>

#include "airylab/io.hpp"

using namespace airylab;

TEST_CASE("grid CSV carries the metadata header and rows") {
  WeightGrid g = sample_weight_grid(EnvKind::geometric(2.0), 2, 3, 42);
  std::string csv = grid_to_csv(g);
  REQUIRE(csv.rfind("env,beta,n_rows,n_cols,seed\n", 0) == 0);
  REQUIRE(csv.find("geometric,2,2,3,42\n") != std::string::npos);
  // two data rows of three entries
  int lines = 0;
  for (char c : csv)
    if (c == '\n') ++lines;
  REQUIRE(lines == 4);
}

TEST_CASE("grid JSON envelope matches the CSV metadata") {
  WeightGrid g = sample_weight_grid(EnvKind::bernoulli_sj(1.0), 2, 2, 7);
  std::string js = grid_to_json(g);
  REQUIRE(js.find("\"env\":\"bernoulli_sj\"") != std::string::npos);
  REQUIRE(js.find("\"seed\":7") != std::string::npos);
  REQUIRE(js.find("\"weights\":[") != std::string::npos);
}

TEST_CASE("profile CSV has the JSON header block and k,m,value rows") {
  WeightGrid g = sample_weight_grid(EnvKind::geometric(1.0), 3, 4, 1);
  PassageProfile p = passage_profile_rsk(g, 2, full_m_range(4));
  std::string csv = profile_to_csv(p, g.env.name(), g.seed);
  REQUIRE(csv.rfind("# {\"n\":3,\"k_max\":2,", 0) == 0);
  REQUIRE(csv.find("\nk,m,value\n") != std::string::npos);
}

TEST_CASE("ensemble CSV round numbers and header") {
  WalkEnsemble e = sample_ni_geometric(2, 1.0, 3, 5);
  std::string csv = ensemble_to_csv(e);
  REQUIRE(csv.find("\"model\":\"geometric_ni\"") != std::string::npos);
  REQUIRE(csv.find("time,walk_index,value\n") != std::string::npos);
}

TEST_CASE("identical inputs serialize byte-identically") {
  WeightGrid a = sample_weight_grid(EnvKind::exponential(), 3, 3, 9);
  WeightGrid b = sample_weight_grid(EnvKind::exponential(), 3, 3, 9);
  REQUIRE(grid_to_csv(a) == grid_to_csv(b));
  REQUIRE(grid_to_json(a) == grid_to_json(b));
}

TEST_CASE("arctic tabulation rows carry value and two derivatives") {
  std::string csv = arctic_to_csv(ModelTag::GeometricLPP, 1, 1, {1.0});
  REQUIRE(csv.rfind("m,g,g1,g2\n", 0) == 0);
  // g(1) = 2 + 2 sqrt(2)
  REQUIRE(csv.find("4.8284271247461") != std::string::npos);
}

TEST_CASE("scaling JSON includes damping fields only for walk models") {
  ScalingParams p = scaling_params(ModelTag::BernoulliWalks, 1, 1, 4);
  std::string js = scaling_to_json(p);
  REQUIRE(js.find("\"delta\":") != std::string::npos);
  ScalingParams q = scaling_params(ModelTag::GeometricLPP, 10, 1, 10);
  REQUIRE(scaling_to_json(q).find("\"delta\":") == std::string::npos);
}
