#pragma once

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "pels/vectors.hpp"

namespace pels {

/// One labeled observation. For binary classification the label is 0 or 1
/// after normalization; for least squares it is an arbitrary real.
struct Instance {
  SparseVector features;
  double label = 0.0;
};

/// How raw file labels map onto stored labels.
enum class LabelPolicy {
  /// Any label > 0 becomes 1, anything else 0. Absorbs both the {0,1} and
  /// {-1,+1} conventions found in LIBSVM corpora.
  binary,
  /// Keep the label as parsed (regression targets).
  raw,
};

/// Raised on malformed input; the message names the offending line.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ParsedData {
  std::vector<Instance> instances;
  std::size_t dim = 0;  // max feature index seen (1-based), i.e. inferred m
};

/// Parses LIBSVM text: `<label> <idx>:<val> ...` per line, indices 1-based
/// and strictly increasing. Blank lines are skipped; LF and CRLF both work.
/// Stored indices are 0-based. Dimension is the largest index seen unless
/// `dim_override` > 0 forces a larger one (to align train/test files).
ParsedData parse_libsvm(std::istream& in, LabelPolicy policy,
                        std::size_t dim_override = 0);

/// Re-serializes instances in LIBSVM text form (1-based indices), one line
/// per instance. Inverse of parse_libsvm for well-formed inputs.
void write_libsvm(std::ostream& out, const std::vector<Instance>& instances);

/// Appends the constant feature (index m, value 1.0) to every instance;
/// output dimension is m + 1. Requires all existing indices < m.
std::vector<Instance> augment(const std::vector<Instance>& instances,
                              std::size_t m);

/// Immutable partitioned dataset shared read-only by engine workers.
class ShardedDataset {
 public:
  ShardedDataset(std::vector<std::vector<Instance>> shards, std::size_t dim);

  std::size_t total_instances() const { return n_; }
  std::size_t dim() const { return dim_; }
  std::size_t shard_count() const { return shards_.size(); }
  const std::vector<Instance>& shard(std::size_t s) const { return shards_[s]; }

 private:
  std::vector<std::vector<Instance>> shards_;
  std::size_t n_ = 0;
  std::size_t dim_ = 0;
};

/// Splits instances into n_p contiguous shards: shard s holds the index
/// range [floor(s*n/n_p), floor((s+1)*n/n_p)). Deterministic given (n, n_p)
/// and order-stable, so shard sums are reproducible.
ShardedDataset shard(std::vector<Instance> instances, std::size_t n_p,
                     std::size_t dim = 0);

}  // namespace pels
