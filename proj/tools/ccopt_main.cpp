#include <atomic>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "ccopt/acceptance.hpp"
#include "ccopt/bounds.hpp"
#include "ccopt/evaluator.hpp"
#include "ccopt/json_io.hpp"
#include "ccopt/optimizer.hpp"
#include "ccopt/simulator.hpp"

using nlohmann::json;
using namespace ccopt;

namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

FullPartition as_full(const AnyPartition& p, const Instance& inst) {
  if (std::holds_alternative<FullPartition>(p)) return std::get<FullPartition>(p);
  if (std::holds_alternative<SymmetricPartition>(p)) return expand_symmetric(std::get<SymmetricPartition>(p));
  return expand_symmetric(expand_uniform(std::get<UniformPartition>(p), inst.N));
}

SymmetricPartition as_symmetric(const AnyPartition& p, const Instance& inst) {
  if (std::holds_alternative<SymmetricPartition>(p)) return std::get<SymmetricPartition>(p);
  if (std::holds_alternative<UniformPartition>(p)) return expand_uniform(std::get<UniformPartition>(p), inst.N);
  throw ConfigError("this method needs a symmetric or uniform partition file");
}

int cmd_optimize(const std::string& config) {
  const Instance inst = load_config(config);
  std::cout << to_json(optimize_placement(inst)).dump(2) << "\n";
  return 0;
}

int cmd_evaluate(const std::string& config, const std::string& partition, const std::string& method) {
  const Instance inst = load_config(config);
  const AnyPartition p = load_partition(partition);
  double load = 0.0;
  if (method == "bruteforce") {
    load = avg_load_bruteforce(as_full(p, inst), inst);
  } else if (method == "symmetric") {
    load = avg_load_symmetric(as_symmetric(p, inst), inst);
  } else if (method == "monotone") {
    load = avg_load_monotone(as_symmetric(p, inst), inst);
  } else if (method == "uniform") {
    if (!std::holds_alternative<UniformPartition>(p))
      throw ConfigError("method \"uniform\" needs a uniform partition file");
    load = avg_load_uniform(std::get<UniformPartition>(p), inst.K);
  } else {
    throw ConfigError("method must be bruteforce|symmetric|monotone|uniform");
  }
  std::cout << json{{"method", method}, {"load", load}}.dump(2) << "\n";
  return 0;
}

int cmd_bound(const std::string& config) {
  const Instance inst = load_config(config);
  const GenieBound genie = lb_genie(inst);
  std::cout << json{{"lb_uniform", lb_uniform(inst.K, inst.N, inst.M)},
                    {"lb_uniform_terms", lb_uniform_terms(inst.K, inst.N, inst.M)},
                    {"lb_genie", genie.value},
                    {"argmax_nprime", genie.argmax_nprime},
                    {"lb_genie_per_nprime", genie.per_nprime}}
                   .dump(2)
            << "\n";
  return 0;
}

std::vector<DemandVector> parse_demands(const std::string& spec, const Instance& inst) {
  std::vector<DemandVector> out;
  if (spec == "all") {
    const double count = std::pow(double(inst.N), inst.K);
    if (count > 1e5)
      throw CapacityError("simulate --demands all: N^K = " + num(count) + " exceeds the cap 100000");
    DemandVector d;
    d.d.assign(inst.K, 1);
    for (;;) {
      out.push_back(d);
      int k = 0;
      while (k < inst.K && d.d[k] == inst.N) d.d[k++] = 1;
      if (k == inst.K) break;
      ++d.d[k];
    }
    return out;
  }
  std::stringstream groups(spec);
  std::string group;
  while (std::getline(groups, group, ';')) {
    DemandVector d;
    std::stringstream entries(group);
    std::string entry;
    try {
      while (std::getline(entries, entry, ',')) d.d.push_back(std::stoi(entry));
      d.validate(inst);
    } catch (const std::exception& e) {
      throw ConfigError("bad demand list \"" + group + "\": " + e.what());
    }
    out.push_back(std::move(d));
  }
  if (out.empty()) throw ConfigError("no demands given");
  return out;
}

int cmd_simulate(const std::string& config, const std::string& partition, int F, std::uint64_t seed,
                 const std::string& demands, const std::string& delivery) {
  const Instance inst = load_config(config);
  const FullPartition x = as_full(load_partition(partition), inst);
  const PlacementRealization real = quantize(x, F, inst, seed);
  const bool hcd = delivery == "hcd";
  if (!hcd && delivery != "zeropad") throw ConfigError("delivery must be zeropad|hcd");

  json results = json::array();
  bool all_decoded = true;
  double expected_load = 0.0;
  for (const DemandVector& d : parse_demands(demands, inst)) {
    const DeliveryTranscript t = hcd ? deliver_hcd(real, d) : deliver_zero_pad(real, d);
    const bool ok = decode(real, t, d);
    const bool proper = coloring_check(real, d);
    all_decoded = all_decoded && ok;
    double weight = 1.0;
    for (int k = 0; k < inst.K; ++k) weight *= inst.pop.probs[d.d[k] - 1];
    expected_load += weight * double(t.total_units()) / F;
    results.push_back({{"d", d.d},
                       {"per_size_totals", t.per_size_totals(inst.K)},
                       {"total_units", t.total_units()},
                       {"load", double(t.total_units()) / F},
                       {"decoded", ok},
                       {"coloring_ok", proper}});
  }
  std::cout << json{{"F", F},
                    {"seed", seed},
                    {"delivery", hcd ? "hcd" : "zeropad"},
                    {"results", results},
                    {"all_decoded", all_decoded},
                    {"weighted_load", expected_load}}
                   .dump(2)
            << "\n";
  return 0;
}

struct SweepRow {
  double var = 0.0;
  double optimized = 0.0;
  double baseline = 0.0;
  double genie = 0.0;
  double uniform_lb = 0.0;
};

int cmd_sweep(const std::string& config, const std::string& var, double from, double to, int steps,
              const std::string& out_path, int jobs) {
  std::ifstream in(config);
  if (!in) throw ConfigError("cannot open " + config);
  json cfg;
  try {
    in >> cfg;
  } catch (const json::exception& e) {
    throw ConfigError(config + ": " + e.what());
  }
  const Instance base = parse_config(cfg);
  if (var != "M" && var != "gamma" && var != "N") throw ConfigError("--var must be M, gamma or N");
  if ((var == "gamma" || var == "N") && cfg["popularity"]["type"] != "zipf")
    throw ConfigError("sweeping " + var + " needs a zipf popularity");
  if (steps < 1) throw ConfigError("--steps must be >= 1");

  std::vector<double> points(steps);
  for (int i = 0; i < steps; ++i)
    points[i] = steps == 1 ? from : from + (to - from) * double(i) / double(steps - 1);

  auto instance_at = [&](double v) {
    Instance inst = base;
    if (var == "M") {
      inst.M = v;
    } else if (var == "gamma") {
      inst.pop = zipf(inst.N, v);
    } else {
      inst.N = int(std::llround(v));
      inst.pop = zipf(inst.N, cfg["popularity"]["gamma"].get<double>());
    }
    inst.validate();
    return inst;
  };

  std::vector<SweepRow> rows(steps);
  std::atomic<int> next{0};
  auto worker = [&] {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= steps) return;
      const Instance inst = instance_at(points[i]);
      SweepRow& r = rows[i];
      r.var = points[i];
      r.optimized = optimize_placement(inst).value;
      r.baseline = baseline_mn_centralized(inst).value;
      r.genie = lb_genie(inst).value;
      r.uniform_lb = lb_uniform(inst.K, inst.N, inst.M);
    }
  };
  // Validate every point up front so config errors are not raced.
  for (double v : points) instance_at(v);
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  std::ofstream file;
  std::ostream* os = &std::cout;
  if (!out_path.empty() && out_path != "-") {
    file.open(out_path);
    if (!file) throw ConfigError("cannot write " + out_path);
    os = &file;
  }
  *os << "var,optimized_load,baseline_mn_load,lb_genie,lb_uniform\n";
  for (const SweepRow& r : rows)
    *os << num(r.var) << ',' << num(r.optimized) << ',' << num(r.baseline) << ',' << num(r.genie) << ','
        << num(r.uniform_lb) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"uncoded-placement optimization and coded-delivery simulation"};
  app.require_subcommand(1);

  std::string config, partition, method = "monotone", demands = "all", var = "M", out_path, delivery = "zeropad";
  double from = 0.0, to = 1.0;
  int steps = 2, F = 1000, jobs = 1;
  std::uint64_t seed = 0;
  std::vector<int> criteria;

  auto* opt = app.add_subcommand("optimize", "solve for the load-minimizing placement");
  opt->add_option("--config", config, "instance config JSON")->required();

  auto* eva = app.add_subcommand("evaluate", "average load of a given partition");
  eva->add_option("--config", config)->required();
  eva->add_option("--partition", partition, "partition JSON file")->required();
  eva->add_option("--method", method, "bruteforce|symmetric|monotone|uniform");

  auto* bnd = app.add_subcommand("bound", "converse bounds on the average load");
  bnd->add_option("--config", config)->required();

  auto* sim = app.add_subcommand("simulate", "bit-exact placement/delivery simulation");
  sim->add_option("--config", config)->required();
  sim->add_option("--partition", partition)->required();
  sim->add_option("--F", F, "data units per file");
  sim->add_option("--seed", seed, "payload seed");
  sim->add_option("--demands", demands, "\"all\" or e.g. \"1,2;2,1\"");
  sim->add_option("--delivery", delivery, "zeropad|hcd");

  auto* swp = app.add_subcommand("sweep", "CSV curve over M, gamma or N");
  swp->add_option("--config", config)->required();
  swp->add_option("--var", var, "M|gamma|N");
  swp->add_option("--from", from)->required();
  swp->add_option("--to", to)->required();
  swp->add_option("--steps", steps, "number of grid points");
  swp->add_option("--out", out_path, "output CSV path (\"-\" for stdout)")->required();
  swp->add_option("--jobs", jobs, "concurrent solves");

  auto* self = app.add_subcommand("selftest", "run the verification suite");
  self->add_option("criteria", criteria, "criterion ids (default: all)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (opt->parsed()) return cmd_optimize(config);
    if (eva->parsed()) return cmd_evaluate(config, partition, method);
    if (bnd->parsed()) return cmd_bound(config);
    if (sim->parsed()) return cmd_simulate(config, partition, F, seed, demands, delivery);
    if (swp->parsed()) return cmd_sweep(config, var, from, to, steps, out_path, jobs);
    if (self->parsed()) return acceptance::run(criteria, std::cout) == 0 ? 0 : 1;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
