#pragma once

#include <string>
#include <variant>

#include <json.hpp>

#include "ccopt/errors.hpp"
#include "ccopt/optimizer.hpp"
#include "ccopt/partition.hpp"
#include "ccopt/simulator.hpp"

namespace ccopt {

/// Malformed configuration or partition file; carries a schema diagnostic.
class ConfigError : public Error {
 public:
  using Error::Error;
};

using AnyPartition = std::variant<FullPartition, SymmetricPartition, UniformPartition>;

/// Config schema: {"K": int, "N": int, "M": real,
///                 "popularity": {"type": "zipf", "gamma": g}
///                             | {"type": "explicit", "weights": [...]}}
/// Explicit weights are normalized and sorted nonincreasing.
Instance parse_config(const nlohmann::json& j);
Instance load_config(const std::string& path);

/// Partition files:
///   {"type": "symmetric", "y": [[...], ...]}    N x (K+1), row-major
///   {"type": "uniform",   "z": [...]}           K+1 entries
///   {"type": "full", "K": k, "N": n, "x": [[file, mask, value], ...]}
/// with 1-based file ids and user k <-> bit k-1 in the mask.
AnyPartition parse_partition(const nlohmann::json& j);
AnyPartition load_partition(const std::string& path);

nlohmann::json to_json(const SymmetricPartition& y);
nlohmann::json to_json(const UniformPartition& z);
nlohmann::json to_json(const FullPartition& x);
nlohmann::json to_json(const AnyPartition& p);
nlohmann::json to_json(const OptResult& r);

}  // namespace ccopt
