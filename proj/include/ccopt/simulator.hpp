#pragma once

#include <cstdint>
#include <vector>

#include "ccopt/partition.hpp"

namespace ccopt {

/// Integer-unit realization of a placement: file n (0-based row) is split
/// into subfiles of sizes[n][mask] data units, user k caches every subfile
/// whose mask contains bit k. Payload bytes are pseudo-random, derived from
/// (seed, file, unit), so nothing is stored.
struct PlacementRealization {
  Instance inst;
  int F = 0;
  std::uint64_t seed = 0;
  std::vector<std::vector<int>> sizes;    // [n][mask] unit counts
  std::vector<std::vector<int>> offsets;  // [n][mask] first unit id, ascending mask order

  std::uint32_t num_masks() const { return 1u << inst.K; }
  int cache_cap_units() const;              // floor(M * F)
  long user_cache_units(int user) const;    // units held by one user
  std::uint8_t unit_byte(int n_idx, int unit) const;

  /// Exact partition per file, the per-user cache cap, and offset
  /// consistency. Throws InternalError on violation.
  void validate() const;
};

/// Largest-remainder rounding of x * F per file (ties to the lowest mask).
/// If rounding pushes a user past floor(M*F), units move one at a time from
/// that user's largest cached subfile to the same file's uncached subfile
/// until every cache fits.
PlacementRealization quantize(const FullPartition& x, int F, const Instance& inst,
                              std::uint64_t seed = 0);

/// One XOR multicast message: every user k in user_set contributes its
/// needed subfile of file d_k; contribution c carries the exact unit ids
/// XORed into byte columns 0..units.size()-1 (columns beyond a contribution
/// are zero padding).
struct Contribution {
  int user = 0;
  std::vector<int> units;
};

struct TranscriptMessage {
  std::uint32_t user_set = 0;
  int length = 0;  // units
  std::vector<std::uint8_t> payload;
  std::vector<Contribution> contributions;
};

enum class DeliveryMode { ZeroPad, Hcd };

/// Messages in delivery order: set size K down to 1, ascending masks within
/// a size. Zero-length messages are omitted.
struct DeliveryTranscript {
  DeliveryMode mode = DeliveryMode::ZeroPad;
  std::vector<TranscriptMessage> messages;

  long total_units() const;
  /// Units sent per set size s (index s, length K+1).
  std::vector<long> per_size_totals(int K) const;
};

/// Plain delivery: every subfile in a message is zero-padded to the longest
/// one, message length = max_k sizes[d_k][S \ {k}].
DeliveryTranscript deliver_zero_pad(const PlacementRealization& real, const DemandVector& d);

/// Appending delivery: short subfiles are padded with units borrowed from
/// the same file's subfiles at strictly larger user sets (lexicographically
/// smallest superset first, lowest unit ids first); borrowed units are
/// consumed per receiving user and excluded from the later messages that
/// would have carried them to that user. When the superset pool runs dry
/// the remainder stays zero padding, so message lengths always match
/// deliver_zero_pad. Requires the realization to be type-symmetric with
/// sizes nonincreasing across files (checked); throws PreconditionError
/// otherwise.
DeliveryTranscript deliver_hcd(const PlacementRealization& real, const DemandVector& d);

/// Replays every user's decoder: cancel cached contributions out of each
/// message, collect the recovered units, and byte-compare the reassembled
/// file against ground truth. True iff all K users recover their requests.
bool decode(const PlacementRealization& real, const DeliveryTranscript& transcript,
            const DemandVector& d);

/// Node of the index-coding conflict graph: user `user` still needs subfile
/// (file, subset) and subset does not contain the user.
struct ConflictNode {
  int user = 0;
  std::uint32_t subset = 0;
  int file = 0;  // 0-based
};

/// Two nodes may share a multicast message iff they are copies of the same
/// subfile or each requester already caches the other's subfile.
bool nodes_conflict(const ConflictNode& a, const ConflictNode& b);

std::vector<ConflictNode> conflict_nodes(const PlacementRealization& real, const DemandVector& d);

/// True iff no two nodes with equal colors conflict.
bool is_proper_coloring(const std::vector<ConflictNode>& nodes, const std::vector<std::uint32_t>& colors);

/// Checks that the delivery grouping (color = full user set of the message)
/// properly colors the conflict graph of the demand.
bool coloring_check(const PlacementRealization& real, const DemandVector& d);

}  // namespace ccopt
