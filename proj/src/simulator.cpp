#include "ccopt/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ccopt/combinatorics.hpp"
#include "ccopt/errors.hpp"

namespace ccopt {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

void fill_offsets(PlacementRealization& real) {
  const std::uint32_t masks = real.num_masks();
  real.offsets.assign(real.inst.N, std::vector<int>(masks, 0));
  for (int n = 0; n < real.inst.N; ++n) {
    int off = 0;
    for (std::uint32_t m = 0; m < masks; ++m) {
      real.offsets[n][m] = off;
      off += real.sizes[n][m];
    }
  }
}

}  // namespace

int PlacementRealization::cache_cap_units() const {
  return int(std::floor(inst.M * double(F) + 1e-9));
}

long PlacementRealization::user_cache_units(int user) const {
  long total = 0;
  const std::uint32_t masks = num_masks();
  for (int n = 0; n < inst.N; ++n)
    for (std::uint32_t m = 0; m < masks; ++m)
      if (m >> user & 1u) total += sizes[n][m];
  return total;
}

std::uint8_t PlacementRealization::unit_byte(int n_idx, int unit) const {
  const std::uint64_t h = splitmix64(splitmix64(seed ^ (std::uint64_t(n_idx + 1) << 32)) ^ std::uint64_t(unit));
  return std::uint8_t(h & 0xFF);
}

void PlacementRealization::validate() const {
  const std::uint32_t masks = num_masks();
  for (int n = 0; n < inst.N; ++n) {
    long sum = 0;
    int off = 0;
    for (std::uint32_t m = 0; m < masks; ++m) {
      if (sizes[n][m] < 0) throw InternalError("realization: negative subfile size");
      if (offsets[n][m] != off) throw InternalError("realization: inconsistent unit offsets");
      off += sizes[n][m];
      sum += sizes[n][m];
    }
    if (sum != F) throw InternalError("realization: file " + std::to_string(n + 1) + " does not partition into F units");
  }
  for (int k = 0; k < inst.K; ++k)
    if (user_cache_units(k) > cache_cap_units())
      throw InternalError("realization: user " + std::to_string(k + 1) + " exceeds the cache capacity");
}

PlacementRealization quantize(const FullPartition& x, int F, const Instance& inst, std::uint64_t seed) {
  if (F < 1) throw PreconditionError("quantize: F must be >= 1");
  const auto rep = check_full_feasible(x, inst);
  if (!rep.feasible) throw PreconditionError("quantize requires a feasible partition; " + rep.describe());

  PlacementRealization real;
  real.inst = inst;
  real.F = F;
  real.seed = seed;
  const std::uint32_t masks = 1u << inst.K;
  real.sizes.assign(inst.N, std::vector<int>(masks, 0));

  // Largest-remainder rounding per file, remainder ties to the lowest mask.
  for (int n = 0; n < inst.N; ++n) {
    std::vector<double> frac(masks, 0.0);
    long assigned = 0;
    for (std::uint32_t m = 0; m < masks; ++m) {
      const double target = std::clamp(x.at(n, m), 0.0, 1.0) * F;
      const double base = std::floor(target + 1e-12);
      real.sizes[n][m] = int(base);
      frac[m] = target - base;
      assigned += long(base);
    }
    long rem = F - assigned;
    if (rem < 0) throw InternalError("quantize: floor rounding exceeded F");
    std::vector<std::uint32_t> order(masks);
    for (std::uint32_t m = 0; m < masks; ++m) order[m] = m;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::uint32_t a, std::uint32_t b) { return frac[a] > frac[b]; });
    for (long i = 0; i < rem; ++i) real.sizes[n][order[i % masks]] += 1;
  }

  // Rounding can push a cache one or two units past floor(M*F); repair by
  // moving units from the offending user's largest cached subfile to the
  // same file's uncached subfile.
  const int cap = real.cache_cap_units();
  std::vector<long> usage(inst.K, 0);
  for (int k = 0; k < inst.K; ++k) usage[k] = real.user_cache_units(k);
  long guard = long(inst.N) * F + 16;
  for (;;) {
    int bad = -1;
    for (int k = 0; k < inst.K; ++k)
      if (usage[k] > cap) {
        bad = k;
        break;
      }
    if (bad < 0) break;
    if (--guard < 0)
      throw QuantizationError("quantize: cache repair failed to converge; increase F", long(F) * 2);
    int best_n = -1;
    std::uint32_t best_m = 0;
    for (int n = 0; n < inst.N; ++n)
      for (std::uint32_t m = 1; m < masks; ++m)
        if ((m >> bad & 1u) && (best_n < 0 || real.sizes[n][m] > real.sizes[best_n][best_m])) {
          best_n = n;
          best_m = m;
        }
    if (best_n < 0 || real.sizes[best_n][best_m] == 0)
      throw QuantizationError("quantize: no cached units left to evict", long(F) * 2);
    real.sizes[best_n][best_m] -= 1;
    real.sizes[best_n][0] += 1;
    for (int k = 0; k < inst.K; ++k)
      if (best_m >> k & 1u) usage[k] -= 1;
  }

  fill_offsets(real);
  real.validate();
  return real;
}

long DeliveryTranscript::total_units() const {
  long total = 0;
  for (const auto& msg : messages) total += msg.length;
  return total;
}

std::vector<long> DeliveryTranscript::per_size_totals(int K) const {
  std::vector<long> totals(K + 1, 0);
  for (const auto& msg : messages) totals[popcount(msg.user_set)] += msg.length;
  return totals;
}

namespace {

void fill_payload(TranscriptMessage& msg, const PlacementRealization& real, const DemandVector& d) {
  msg.payload.assign(msg.length, 0);
  for (const auto& c : msg.contributions) {
    const int file = d.d[c.user] - 1;
    for (std::size_t i = 0; i < c.units.size(); ++i) msg.payload[i] ^= real.unit_byte(file, c.units[i]);
  }
}

}  // namespace

DeliveryTranscript deliver_zero_pad(const PlacementRealization& real, const DemandVector& d) {
  d.validate(real.inst);
  const int K = real.inst.K;
  const std::uint32_t masks = real.num_masks();
  DeliveryTranscript out;
  out.mode = DeliveryMode::ZeroPad;
  for (int s = K; s >= 1; --s) {
    for (std::uint32_t S = 1; S < masks; ++S) {
      if (popcount(S) != s) continue;
      TranscriptMessage msg;
      msg.user_set = S;
      for (int k = 0; k < K; ++k) {
        if (!(S >> k & 1u)) continue;
        const int file = d.d[k] - 1;
        const std::uint32_t sub = S ^ (1u << k);
        const int len = real.sizes[file][sub];
        msg.length = std::max(msg.length, len);
        Contribution c;
        c.user = k;
        c.units.resize(len);
        for (int u = 0; u < len; ++u) c.units[u] = real.offsets[file][sub] + u;
        msg.contributions.push_back(std::move(c));
      }
      if (msg.length == 0) continue;
      fill_payload(msg, real, d);
      out.messages.push_back(std::move(msg));
    }
  }
  return out;
}

DeliveryTranscript deliver_hcd(const PlacementRealization& real, const DemandVector& d) {
  d.validate(real.inst);
  const int K = real.inst.K;
  const int N = real.inst.N;
  const std::uint32_t masks = real.num_masks();

  // The appending argument needs type symmetry and sizes nonincreasing in
  // the (popularity-sorted) file index, at integer granularity.
  std::vector<std::vector<int>> type_size(N, std::vector<int>(K + 1, -1));
  for (int n = 0; n < N; ++n)
    for (std::uint32_t m = 0; m < masks; ++m) {
      const int s = popcount(m);
      if (type_size[n][s] < 0) type_size[n][s] = real.sizes[n][m];
      if (real.sizes[n][m] != type_size[n][s])
        throw PreconditionError("deliver_hcd: realization is not type-symmetric");
    }
  for (int n = 0; n + 1 < N; ++n)
    for (int s = 1; s <= K; ++s)
      if (type_size[n][s] < type_size[n + 1][s])
        throw PreconditionError("deliver_hcd: subfile sizes are not monotone across files");

  // Delivered units are tracked per user: a borrowed unit reaches only the
  // users of the borrowing message, so with repeated demands the same
  // subfile may still be owed to another requester.
  std::vector<std::vector<std::vector<int>>> consumed(
      K, std::vector<std::vector<int>>(N, std::vector<int>(masks, 0)));
  std::vector<TranscriptMessage> staged;

  // Borrowing must see smaller user sets first: a subfile of type t is only
  // consumed by messages of size <= t and transmitted at size t+1.
  for (int s = 1; s <= K; ++s) {
    for (std::uint32_t S = 1; S < masks; ++S) {
      if (popcount(S) != s) continue;
      TranscriptMessage msg;
      msg.user_set = S;
      std::vector<int> rem(K, 0);
      for (int k = 0; k < K; ++k) {
        if (!(S >> k & 1u)) continue;
        const int file = d.d[k] - 1;
        const std::uint32_t sub = S ^ (1u << k);
        rem[k] = real.sizes[file][sub] - consumed[k][file][sub];
        msg.length = std::max(msg.length, rem[k]);
      }
      if (msg.length == 0) continue;
      for (int k = 0; k < K; ++k) {
        if (!(S >> k & 1u)) continue;
        const int file = d.d[k] - 1;
        const std::uint32_t sub = S ^ (1u << k);
        Contribution c;
        c.user = k;
        for (int u = 0; u < rem[k]; ++u) c.units.push_back(real.offsets[file][sub] + consumed[k][file][sub] + u);
        int need = msg.length - rem[k];
        // Supersets of S in ascending mask order: S | T over submasks T of
        // ~S (disjoint bits, so ascending T is ascending superset). Any
        // shortfall left once the superset pool is dry stays zero padding;
        // borrowing less never changes a message length because the longest
        // subfile in a message is never a borrowing source.
        const std::uint32_t comp = ~S & (masks - 1);
        if (comp != 0) {
          for (std::uint32_t T = comp & (~comp + 1u); need > 0 && T != 0; T = (T - comp) & comp) {
            const std::uint32_t src = (S | T) ^ (1u << k);
            const int avail = real.sizes[file][src] - consumed[k][file][src];
            const int take = std::min(need, avail);
            if (take < 0) throw InternalError("deliver_hcd: borrow cursor overran a subfile");
            for (int u = 0; u < take; ++u) c.units.push_back(real.offsets[file][src] + consumed[k][file][src] + u);
            consumed[k][file][src] += take;
            need -= take;
          }
        }
        msg.contributions.push_back(std::move(c));
      }
      fill_payload(msg, real, d);
      staged.push_back(std::move(msg));
    }
  }

  DeliveryTranscript out;
  out.mode = DeliveryMode::Hcd;
  // Emit in delivery order: size K down to 1, ascending masks within a size.
  for (int s = K; s >= 1; --s)
    for (auto& msg : staged)
      if (popcount(msg.user_set) == s) out.messages.push_back(std::move(msg));
  return out;
}

bool decode(const PlacementRealization& real, const DeliveryTranscript& transcript, const DemandVector& d) {
  d.validate(real.inst);
  const int K = real.inst.K;
  const std::uint32_t masks = real.num_masks();
  for (int k = 0; k < K; ++k) {
    const int file = d.d[k] - 1;
    std::vector<std::uint8_t> value(real.F, 0);
    std::vector<char> have(real.F, 0);
    // Cached subfiles of the requested file.
    for (std::uint32_t m = 0; m < masks; ++m) {
      if (!(m >> k & 1u)) continue;
      for (int u = 0; u < real.sizes[file][m]; ++u) {
        const int id = real.offsets[file][m] + u;
        value[id] = real.unit_byte(file, id);
        have[id] = 1;
      }
    }
    for (const auto& msg : transcript.messages) {
      if (!(msg.user_set >> k & 1u)) continue;
      const Contribution* own = nullptr;
      for (const auto& c : msg.contributions)
        if (c.user == k) own = &c;
      if (own == nullptr) continue;
      for (std::size_t i = 0; i < own->units.size(); ++i) {
        std::uint8_t v = msg.payload[i];
        for (const auto& c : msg.contributions) {
          if (c.user == k || i >= c.units.size()) continue;
          v ^= real.unit_byte(d.d[c.user] - 1, c.units[i]);
        }
        const int id = own->units[i];
        if (have[id] && value[id] != v) return false;
        value[id] = v;
        have[id] = 1;
      }
    }
    for (int u = 0; u < real.F; ++u)
      if (!have[u] || value[u] != real.unit_byte(file, u)) return false;
  }
  return true;
}

bool nodes_conflict(const ConflictNode& a, const ConflictNode& b) {
  if (a.file == b.file && a.subset == b.subset) return false;  // same subfile
  const bool a_cached_at_b = (a.subset >> b.user & 1u) != 0;
  const bool b_cached_at_a = (b.subset >> a.user & 1u) != 0;
  return !(a_cached_at_b && b_cached_at_a);
}

std::vector<ConflictNode> conflict_nodes(const PlacementRealization& real, const DemandVector& d) {
  d.validate(real.inst);
  std::vector<ConflictNode> nodes;
  const std::uint32_t masks = real.num_masks();
  for (int k = 0; k < real.inst.K; ++k) {
    const int file = d.d[k] - 1;
    for (std::uint32_t m = 0; m < masks; ++m) {
      if (m >> k & 1u) continue;
      if (real.sizes[file][m] == 0) continue;
      nodes.push_back({k, m, file});
    }
  }
  return nodes;
}

bool is_proper_coloring(const std::vector<ConflictNode>& nodes, const std::vector<std::uint32_t>& colors) {
  if (nodes.size() != colors.size()) throw ShapeError("is_proper_coloring: one color per node");
  for (std::size_t i = 0; i < nodes.size(); ++i)
    for (std::size_t j = i + 1; j < nodes.size(); ++j)
      if (colors[i] == colors[j] && nodes_conflict(nodes[i], nodes[j])) return false;
  return true;
}

bool coloring_check(const PlacementRealization& real, const DemandVector& d) {
  const auto nodes = conflict_nodes(real, d);
  std::vector<std::uint32_t> colors(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) colors[i] = nodes[i].subset | (1u << nodes[i].user);
  return is_proper_coloring(nodes, colors);
}

}  // namespace ccopt
