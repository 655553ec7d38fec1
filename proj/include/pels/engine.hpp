#pragma once

#include <cstdint>
#include <functional>

#include "pels/dataset.hpp"
#include "pels/vectors.hpp"

namespace pels {

enum class ReduceMode { all_to_one, tree };

/// How shard partial sums travel to the driver.
///
/// all_to_one: every shard partial is sent straight to the driver.
/// tree: partials are paired left-to-right for `levels` rounds (an odd
/// trailing partial survives unmoved), then the survivors go to the driver.
struct ReduceTopology {
  ReduceMode mode = ReduceMode::all_to_one;
  int levels = 1;  // tree mode only, >= 1

  static ReduceTopology all_to_one() { return {ReduceMode::all_to_one, 1}; }
  static ReduceTopology tree(int levels) { return {ReduceMode::tree, levels}; }
};

/// Communication accounting. Every payload element is 8 bytes (double
/// precision). Reduce traffic and broadcast traffic are tracked separately;
/// `messages`/`bytes` cover partial movements only.
struct CommLedger {
  std::uint64_t messages = 0;
  std::uint64_t bytes = 0;
  std::uint64_t broadcast_messages = 0;
  std::uint64_t broadcast_bytes = 0;
  std::uint64_t driver_fan_in = 0;  // max partials received by the driver in one reduce

  std::uint64_t total_messages() const { return messages + broadcast_messages; }
  std::uint64_t total_bytes() const { return bytes + broadcast_bytes; }
};

void reset_ledger(CommLedger& ledger);

inline constexpr std::uint64_t kPayloadElementBytes = 8;

/// Per-instance map function: accumulates the instance's contribution into
/// `out`, which arrives zeroed with exactly `payload_len` entries. Resizing
/// `out` is a contract violation and is reported as an error.
using PerInstanceFn = std::function<void(const Instance&, std::vector<double>&)>;

/// Sums `per_instance` over the whole dataset. Shard partials are computed
/// left-to-right within each shard (shards may run concurrently), then
/// combined per the topology with one ledger message per partial movement:
/// shard -> aggregator, aggregator -> aggregator, survivor -> driver.
///
/// For a fixed (data, topology) the result is bit-identical across runs.
DenseVector map_reduce(const ShardedDataset& data,
                       const PerInstanceFn& per_instance,
                       std::size_t payload_len, const ReduceTopology& topology,
                       CommLedger& ledger);

/// Accounts a driver -> workers broadcast of one `element_count`-vector as
/// n_p messages. Only the volume is modeled, not the broadcast topology.
void account_broadcast(CommLedger& ledger, std::size_t n_p,
                       std::size_t element_count);

}  // namespace pels
