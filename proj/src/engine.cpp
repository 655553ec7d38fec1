#include "pels/engine.hpp"

#include <algorithm>
#include <cstring>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <utility>
#include <vector>

namespace pels {

namespace {

constexpr std::size_t kSerialInstanceThreshold = 512;

void add_into(std::vector<double>& acc, const std::vector<double>& x) {
  for (std::size_t k = 0; k < acc.size(); ++k) {
    acc[k] += x[k];
  }
}

std::vector<double> shard_partial(const std::vector<Instance>& instances,
                                  const PerInstanceFn& per_instance,
                                  std::size_t payload_len) {
  std::vector<double> partial(payload_len, 0.0);
  std::vector<double> scratch(payload_len, 0.0);
  for (const auto& inst : instances) {
    std::fill(scratch.begin(), scratch.end(), 0.0);
    per_instance(inst, scratch);
    if (scratch.size() != payload_len) {
      throw std::runtime_error("map_reduce: per-instance payload length mismatch");
    }
    add_into(partial, scratch);
  }
  return partial;
}

}  // namespace

void reset_ledger(CommLedger& ledger) { ledger = CommLedger{}; }

void account_broadcast(CommLedger& ledger, std::size_t n_p,
                       std::size_t element_count) {
  ledger.broadcast_messages += n_p;
  ledger.broadcast_bytes += n_p * element_count * kPayloadElementBytes;
}

DenseVector map_reduce(const ShardedDataset& data,
                       const PerInstanceFn& per_instance,
                       std::size_t payload_len, const ReduceTopology& topology,
                       CommLedger& ledger) {
  if (topology.mode == ReduceMode::tree && topology.levels < 1) {
    throw std::invalid_argument("map_reduce: tree levels must be >= 1");
  }
  const std::size_t n_shards = data.shard_count();

  // Map stage: one partial per shard. Workers run concurrently but each
  // shard is summed serially left-to-right, so partials are deterministic.
  std::vector<std::vector<double>> partials(n_shards);
  const std::size_t hw = std::max<std::size_t>(1, std::thread::hardware_concurrency());
  const std::size_t n_workers = std::min(hw, n_shards);
  if (n_workers <= 1 || data.total_instances() < kSerialInstanceThreshold) {
    for (std::size_t s = 0; s < n_shards; ++s) {
      partials[s] = shard_partial(data.shard(s), per_instance, payload_len);
    }
  } else {
    std::vector<std::thread> workers;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    workers.reserve(n_workers);
    for (std::size_t t = 0; t < n_workers; ++t) {
      workers.emplace_back([&, t] {
        try {
          for (std::size_t s = t; s < n_shards; s += n_workers) {
            partials[s] = shard_partial(data.shard(s), per_instance, payload_len);
          }
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      });
    }
    for (auto& w : workers) {
      w.join();
    }
    if (failure) {
      std::rethrow_exception(failure);
    }
  }

  // Merge stage: serialized, fixed order.
  const std::uint64_t message_bytes = payload_len * kPayloadElementBytes;
  std::vector<double> total(payload_len, 0.0);
  if (topology.mode == ReduceMode::all_to_one) {
    for (std::size_t s = 0; s < n_shards; ++s) {
      add_into(total, partials[s]);
    }
    ledger.messages += n_shards;
    ledger.bytes += n_shards * message_bytes;
    ledger.driver_fan_in = std::max<std::uint64_t>(ledger.driver_fan_in, n_shards);
  } else {
    std::vector<std::vector<double>> level = std::move(partials);
    for (int l = 0; l < topology.levels && level.size() > 1; ++l) {
      std::vector<std::vector<double>> next;
      next.reserve((level.size() + 1) / 2);
      for (std::size_t i = 0; i < level.size(); i += 2) {
        if (i + 1 < level.size()) {
          add_into(level[i], level[i + 1]);  // right partial moves left
          ledger.messages += 1;
          ledger.bytes += message_bytes;
        }
        next.push_back(std::move(level[i]));
      }
      level = std::move(next);
    }
    for (const auto& survivor : level) {
      add_into(total, survivor);
    }
    ledger.messages += level.size();
    ledger.bytes += level.size() * message_bytes;
    ledger.driver_fan_in =
        std::max<std::uint64_t>(ledger.driver_fan_in, level.size());
  }
  return DenseVector::from_values(std::move(total));
}

}  // namespace pels
