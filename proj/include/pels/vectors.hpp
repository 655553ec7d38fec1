#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace pels {

/// Fixed-length dense vector of doubles with value semantics.
///
/// Construction from external data validates that every entry is finite;
/// vectors produced by arithmetic inherit finiteness from their inputs.
class DenseVector {
 public:
  DenseVector() = default;

  /// Zero vector of length n.
  explicit DenseVector(std::size_t n) : v_(n, 0.0) {}

  DenseVector(std::initializer_list<double> init);

  /// Takes ownership of `values`; throws std::invalid_argument on NaN/Inf.
  static DenseVector from_values(std::vector<double> values);

  std::size_t size() const { return v_.size(); }
  double operator[](std::size_t i) const { return v_[i]; }
  double& operator[](std::size_t i) { return v_[i]; }

  const std::vector<double>& values() const { return v_; }
  double* data() { return v_.data(); }
  const double* data() const { return v_.data(); }

  auto begin() const { return v_.begin(); }
  auto end() const { return v_.end(); }

 private:
  std::vector<double> v_;
};

/// Sparse vector: strictly increasing 0-based indices into a logical
/// dimension `dim`, with one stored value per index.
class SparseVector {
 public:
  SparseVector() = default;

  /// Throws std::invalid_argument if indices are not strictly increasing,
  /// an index is >= dim, or a value is non-finite.
  SparseVector(std::vector<std::size_t> indices, std::vector<double> values,
               std::size_t dim);

  static SparseVector zeros(std::size_t dim) { return SparseVector({}, {}, dim); }

  std::size_t dim() const { return dim_; }
  std::size_t nnz() const { return idx_.size(); }
  std::span<const std::size_t> indices() const { return idx_; }
  std::span<const double> values() const { return val_; }

 private:
  std::vector<std::size_t> idx_;
  std::vector<double> val_;
  std::size_t dim_ = 0;
};

// All accumulations below are 64-bit and strictly left-to-right so that
// repeated runs are bit-identical.

/// Σ a_k b_k over stored entries of a. Requires a.dim() == b.size().
double dot(const SparseVector& a, const DenseVector& b);

/// Σ a_k b_k. Requires a.size() == b.size().
double dot(const DenseVector& a, const DenseVector& b);

/// Returns y + alpha * x; inputs are untouched. Requires equal lengths.
DenseVector axpy(double alpha, const DenseVector& x, const DenseVector& y);

/// Euclidean norm.
double norm2(const DenseVector& x);

/// out[idx_k] += alpha * val_k for every stored entry of x.
/// Requires x.dim() <= out.size().
void scatter_axpy(double alpha, const SparseVector& x, std::span<double> out);

/// Returns alpha * x.
DenseVector scaled(const DenseVector& x, double alpha);

}  // namespace pels
