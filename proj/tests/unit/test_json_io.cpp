#include <doctest.h>

#include <random>

#include "ccopt/json_io.hpp"
#include "ccopt/sampling.hpp"

using namespace ccopt;
using nlohmann::json;

TEST_CASE("config parsing") {
  const json cfg = {{"K", 2}, {"N", 4}, {"M", 1.5}, {"popularity", {{"type", "zipf"}, {"gamma", 1.0}}}};
  const Instance inst = parse_config(cfg);
  CHECK(inst.K == 2);
  CHECK(inst.N == 4);
  CHECK(inst.M == 1.5);
  CHECK(inst.pop.probs[0] > inst.pop.probs[3]);

  const json expl = {{"K", 2}, {"N", 3}, {"M", 1.0},
                     {"popularity", {{"type", "explicit"}, {"weights", {1.0, 2.0, 1.0}}}}};
  const Instance e = parse_config(expl);
  CHECK(e.pop.probs[0] == doctest::Approx(0.5));
}

TEST_CASE("malformed configs raise ConfigError") {
  CHECK_THROWS_AS(parse_config(json{{"K", 2}}), ConfigError);
  CHECK_THROWS_AS(parse_config(json{{"K", 2}, {"N", 2}, {"M", "a lot"},
                                    {"popularity", {{"type", "zipf"}, {"gamma", 1.0}}}}),
                  ConfigError);
  CHECK_THROWS_AS(parse_config(json{{"K", 2}, {"N", 2}, {"M", 1.0}, {"popularity", {{"type", "bogus"}}}}),
                  ConfigError);
  CHECK_THROWS_AS(parse_config(json{{"K", 2}, {"N", 2}, {"M", 5.0},  // M > N
                                    {"popularity", {{"type", "zipf"}, {"gamma", 1.0}}}}),
                  ConfigError);
}

TEST_CASE("partition forms round-trip through JSON") {
  std::mt19937_64 rng(9);
  double used = 0.0;
  const SymmetricPartition y = sample_monotone_symmetric(rng, 3, 2, &used);
  const AnyPartition py = parse_partition(to_json(y));
  const auto& y2 = std::get<SymmetricPartition>(py).y;
  for (int n = 0; n < 2; ++n)
    for (int s = 0; s <= 3; ++s) CHECK(y2[n][s] == y.y[n][s]);

  const UniformPartition z{{0.0, 0.5, 0.0}};
  CHECK(std::get<UniformPartition>(parse_partition(to_json(z))).z == z.z);

  const FullPartition x = sample_full_partition(rng, 2, 2, 1.0);
  const auto x2 = std::get<FullPartition>(parse_partition(to_json(x)));
  for (int n = 0; n < 2; ++n)
    for (std::uint32_t m = 0; m < 4; ++m) CHECK(x2.at(n, m) == x.at(n, m));
}

TEST_CASE("partition parse rejects bad shapes") {
  CHECK_THROWS_AS(parse_partition(json{{"type", "symmetric"}, {"y", json::array()}}), ConfigError);
  CHECK_THROWS_AS(parse_partition(json{{"type", "full"}, {"K", 2}, {"N", 1}, {"x", {{1, 9, 0.5}}}}), ConfigError);
  CHECK_THROWS_AS(parse_partition(json{{"type", "wat"}}), ConfigError);
}

TEST_CASE("optimization results serialize with value, partition and diagnostics") {
  OptResult r;
  r.value = 0.5;
  r.partition = UniformPartition{{0.0, 0.5, 0.0}};
  const json j = to_json(r);
  CHECK(j["value"] == 0.5);
  CHECK(j["partition"]["type"] == "uniform");
  CHECK(j.contains("diagnostics"));
}
