#include "pels/dataset.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <utility>

namespace pels {

namespace {

[[noreturn]] void fail(std::size_t line_no, const std::string& what) {
  throw ParseError("libsvm parse error at line " + std::to_string(line_no) +
                   ": " + what);
}

double parse_double(const std::string& token, std::size_t line_no,
                    const char* what) {
  const char* first = token.data();
  const char* last = token.data() + token.size();
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    fail(line_no, std::string("non-numeric ") + what + " '" + token + "'");
  }
  if (!std::isfinite(value)) {
    fail(line_no, std::string("non-finite ") + what + " '" + token + "'");
  }
  return value;
}

std::size_t parse_index(const std::string& token, std::size_t line_no) {
  std::size_t value = 0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    fail(line_no, "non-numeric index '" + token + "'");
  }
  return value;
}

}  // namespace

ParsedData parse_libsvm(std::istream& in, LabelPolicy policy,
                        std::size_t dim_override) {
  struct RawInstance {
    double label;
    std::vector<std::size_t> indices;  // 0-based
    std::vector<double> values;
  };
  std::vector<RawInstance> raw;
  std::size_t max_dim = dim_override;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    std::istringstream fields(line);
    std::string token;
    if (!(fields >> token)) {
      continue;  // blank line
    }

    RawInstance inst;
    inst.label = parse_double(token, line_no, "label");
    if (policy == LabelPolicy::binary) {
      inst.label = inst.label > 0.0 ? 1.0 : 0.0;
    }

    std::size_t prev_index = 0;  // 1-based; 0 means none yet
    while (fields >> token) {
      const auto colon = token.find(':');
      if (colon == std::string::npos) {
        fail(line_no, "missing ':' in feature '" + token + "'");
      }
      const std::size_t index = parse_index(token.substr(0, colon), line_no);
      if (index < 1) {
        fail(line_no, "feature index must be >= 1");
      }
      if (index <= prev_index) {
        fail(line_no, "non-increasing index " + std::to_string(index));
      }
      const double value =
          parse_double(token.substr(colon + 1), line_no, "feature value");
      inst.indices.push_back(index - 1);
      inst.values.push_back(value);
      prev_index = index;
    }
    if (prev_index > max_dim) {
      max_dim = prev_index;
    }
    raw.push_back(std::move(inst));
  }

  ParsedData out;
  out.dim = max_dim;
  out.instances.reserve(raw.size());
  for (auto& r : raw) {
    out.instances.push_back(
        {SparseVector(std::move(r.indices), std::move(r.values), max_dim),
         r.label});
  }
  return out;
}

void write_libsvm(std::ostream& out, const std::vector<Instance>& instances) {
  char buf[64];
  for (const auto& inst : instances) {
    std::snprintf(buf, sizeof buf, "%.17g", inst.label);
    out << buf;
    const auto idx = inst.features.indices();
    const auto val = inst.features.values();
    for (std::size_t k = 0; k < idx.size(); ++k) {
      std::snprintf(buf, sizeof buf, " %zu:%.17g", idx[k] + 1, val[k]);
      out << buf;
    }
    out << '\n';
  }
}

std::vector<Instance> augment(const std::vector<Instance>& instances,
                              std::size_t m) {
  std::vector<Instance> out;
  out.reserve(instances.size());
  for (const auto& inst : instances) {
    const auto idx = inst.features.indices();
    if (!idx.empty() && idx.back() >= m) {
      throw std::invalid_argument("augment: feature index >= m");
    }
    std::vector<std::size_t> indices(idx.begin(), idx.end());
    std::vector<double> values(inst.features.values().begin(),
                               inst.features.values().end());
    indices.push_back(m);
    values.push_back(1.0);
    out.push_back(
        {SparseVector(std::move(indices), std::move(values), m + 1),
         inst.label});
  }
  return out;
}

ShardedDataset::ShardedDataset(std::vector<std::vector<Instance>> shards,
                               std::size_t dim)
    : shards_(std::move(shards)), dim_(dim) {
  for (const auto& s : shards_) {
    n_ += s.size();
  }
}

ShardedDataset shard(std::vector<Instance> instances, std::size_t n_p,
                     std::size_t dim) {
  if (n_p < 1) {
    throw std::invalid_argument("shard: shard count must be >= 1");
  }
  if (dim == 0) {
    if (instances.empty()) {
      throw std::invalid_argument("shard: dimension required for empty data");
    }
    dim = instances.front().features.dim();
  }
  const std::size_t n = instances.size();
  std::vector<std::vector<Instance>> shards(n_p);
  for (std::size_t s = 0; s < n_p; ++s) {
    const std::size_t begin = s * n / n_p;
    const std::size_t end = (s + 1) * n / n_p;
    shards[s].reserve(end - begin);
    for (std::size_t i = begin; i < end; ++i) {
      shards[s].push_back(std::move(instances[i]));
    }
  }
  return ShardedDataset(std::move(shards), dim);
}

}  // namespace pels
