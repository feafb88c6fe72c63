#include "ccopt/json_io.hpp"

#include <fstream>

namespace ccopt {

using nlohmann::json;

namespace {

const json& require(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw ConfigError(std::string("missing field \"") + key + "\"");
  return *it;
}

double require_number(const json& j, const char* key) {
  const json& v = require(j, key);
  if (!v.is_number()) throw ConfigError(std::string("field \"") + key + "\" must be a number");
  return v.get<double>();
}

int require_int(const json& j, const char* key) {
  const json& v = require(j, key);
  if (!v.is_number_integer()) throw ConfigError(std::string("field \"") + key + "\" must be an integer");
  return v.get<int>();
}

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return j;
}

}  // namespace

Instance parse_config(const json& j) {
  try {
    Instance inst;
    inst.K = require_int(j, "K");
    inst.N = require_int(j, "N");
    inst.M = require_number(j, "M");
    const json& pj = require(j, "popularity");
    const std::string type = require(pj, "type").get<std::string>();
    if (type == "zipf") {
      inst.pop = zipf(inst.N, require_number(pj, "gamma"));
    } else if (type == "explicit") {
      const json& wj = require(pj, "weights");
      if (!wj.is_array()) throw ConfigError("popularity.weights must be an array");
      std::vector<double> w = wj.get<std::vector<double>>();
      if (int(w.size()) != inst.N) throw ConfigError("popularity.weights must have exactly N entries");
      inst.pop = from_weights(w).first;
    } else {
      throw ConfigError("popularity.type must be \"zipf\" or \"explicit\"");
    }
    inst.validate();
    return inst;
  } catch (const ConfigError&) {
    throw;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
}

Instance load_config(const std::string& path) { return parse_config(read_file(path)); }

namespace {

AnyPartition parse_partition_impl(const json& j) {
  const std::string type = require(j, "type").get<std::string>();
  if (type == "symmetric") {
    const json& yj = require(j, "y");
    if (!yj.is_array() || yj.empty()) throw ConfigError("symmetric partition: \"y\" must be a nonempty matrix");
    SymmetricPartition y;
    y.y = yj.get<std::vector<std::vector<double>>>();
    for (const auto& row : y.y)
      if (row.size() != y.y[0].size()) throw ConfigError("symmetric partition: ragged rows");
    return y;
  }
  if (type == "uniform") {
    UniformPartition z;
    z.z = require(j, "z").get<std::vector<double>>();
    if (z.z.empty()) throw ConfigError("uniform partition: \"z\" must be nonempty");
    return z;
  }
  if (type == "full") {
    const int K = require_int(j, "K");
    const int N = require_int(j, "N");
    if (K < 1 || K > 20 || N < 1) throw ConfigError("full partition: bad dimensions");
    FullPartition x = FullPartition::zeros(K, N);
    for (const auto& triple : require(j, "x")) {
      if (!triple.is_array() || triple.size() != 3) throw ConfigError("full partition: entries must be [file, mask, value]");
      const int n = triple[0].get<int>();
      const std::uint64_t mask = triple[1].get<std::uint64_t>();
      if (n < 1 || n > N || mask >= x.num_masks()) throw ConfigError("full partition: triple out of range");
      x.at(n - 1, std::uint32_t(mask)) = triple[2].get<double>();
    }
    return x;
  }
  throw ConfigError("partition type must be \"symmetric\", \"uniform\" or \"full\"");
}

}  // namespace

AnyPartition parse_partition(const json& j) {
  try {
    return parse_partition_impl(j);
  } catch (const ConfigError&) {
    throw;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("partition: ") + e.what());
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
}

AnyPartition load_partition(const std::string& path) { return parse_partition(read_file(path)); }

json to_json(const SymmetricPartition& y) { return json{{"type", "symmetric"}, {"y", y.y}}; }

json to_json(const UniformPartition& z) { return json{{"type", "uniform"}, {"z", z.z}}; }

json to_json(const FullPartition& x) {
  json triples = json::array();
  for (int n = 0; n < x.N; ++n)
    for (std::uint32_t m = 0; m < x.num_masks(); ++m)
      if (x.at(n, m) != 0.0) triples.push_back({n + 1, m, x.at(n, m)});
  return json{{"type", "full"}, {"K", x.K}, {"N", x.N}, {"x", triples}};
}

json to_json(const AnyPartition& p) {
  return std::visit([](const auto& v) { return to_json(v); }, p);
}

json to_json(const OptResult& r) {
  json p = std::visit([](const auto& v) { return to_json(v); }, r.partition);
  return json{{"value", r.value},
              {"partition", p},
              {"diagnostics",
               {{"iterations", r.diagnostics.iterations},
                {"primal_residual", r.diagnostics.primal_residual},
                {"dual_residual", r.diagnostics.dual_residual},
                {"duality_gap", r.diagnostics.duality_gap},
                {"evaluator_check", r.diagnostics.evaluator_check}}}};
}

}  // namespace ccopt
