#include "pels/vectors.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace pels {

namespace {

void require_finite(const std::vector<double>& values, const char* what) {
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument(std::string(what) + ": non-finite entry");
    }
  }
}

}  // namespace

DenseVector::DenseVector(std::initializer_list<double> init) : v_(init) {
  require_finite(v_, "DenseVector");
}

DenseVector DenseVector::from_values(std::vector<double> values) {
  require_finite(values, "DenseVector");
  DenseVector out;
  out.v_ = std::move(values);
  return out;
}

SparseVector::SparseVector(std::vector<std::size_t> indices,
                           std::vector<double> values, std::size_t dim)
    : idx_(std::move(indices)), val_(std::move(values)), dim_(dim) {
  if (idx_.size() != val_.size()) {
    throw std::invalid_argument("SparseVector: index/value length mismatch");
  }
  for (std::size_t k = 0; k < idx_.size(); ++k) {
    if (idx_[k] >= dim_) {
      throw std::invalid_argument("SparseVector: index out of range");
    }
    if (k > 0 && idx_[k] <= idx_[k - 1]) {
      throw std::invalid_argument("SparseVector: indices not strictly increasing");
    }
  }
  require_finite(val_, "SparseVector");
}

double dot(const SparseVector& a, const DenseVector& b) {
  if (a.dim() != b.size()) {
    throw std::invalid_argument("dot: dimension mismatch");
  }
  double acc = 0.0;
  const auto idx = a.indices();
  const auto val = a.values();
  for (std::size_t k = 0; k < idx.size(); ++k) {
    acc += val[k] * b[idx[k]];
  }
  return acc;
}

double dot(const DenseVector& a, const DenseVector& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("dot: dimension mismatch");
  }
  double acc = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    acc += a[k] * b[k];
  }
  return acc;
}

DenseVector axpy(double alpha, const DenseVector& x, const DenseVector& y) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("axpy: dimension mismatch");
  }
  DenseVector out(y.size());
  for (std::size_t k = 0; k < y.size(); ++k) {
    out[k] = y[k] + alpha * x[k];
  }
  return out;
}

double norm2(const DenseVector& x) {
  double acc = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    acc += x[k] * x[k];
  }
  return std::sqrt(acc);
}

void scatter_axpy(double alpha, const SparseVector& x, std::span<double> out) {
  if (x.dim() > out.size()) {
    throw std::invalid_argument("scatter_axpy: dimension mismatch");
  }
  const auto idx = x.indices();
  const auto val = x.values();
  for (std::size_t k = 0; k < idx.size(); ++k) {
    out[idx[k]] += alpha * val[k];
  }
}

DenseVector scaled(const DenseVector& x, double alpha) {
  DenseVector out(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    out[k] = alpha * x[k];
  }
  return out;
}

}  // namespace pels
