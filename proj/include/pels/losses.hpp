#pragma once

#include <cstddef>
#include <vector>

#include "pels/dataset.hpp"
#include "pels/engine.hpp"
#include "pels/vectors.hpp"

namespace pels {

struct ValueGrad {
  double value = 0.0;
  DenseVector grad;
};

/// Taylor coefficients c_0..c_degree of the univariate loss section
/// phi(alpha) = L(w + alpha*p) expanded about alpha_j.
struct CoefficientVector {
  double alpha_j = 0.0;
  int degree = 0;
  std::vector<double> c;  // length degree + 1
  bool includes_regularizer = false;
};

/// Exact degree-2 contribution of the L2 penalty, computed at the driver:
/// (lambda/2) * [ |r|^2, 2 r.p, |p|^2, 0, ... ] padded to length d+1.
CoefficientVector regularizer_coeffs(const DenseVector& r,
                                     const DenseVector& p, double lambda,
                                     int degree);

/// Training label prediction accuracy proxy exp(-loss).
double accuracy_proxy(double loss_value);

/// L2-regularized mean loss over a sharded dataset.
///
/// value_grad runs one fused reduce with payload dim+1 (gradient entries
/// followed by the value) so that accepting a line-search trial also yields
/// the next iterate's gradient; the regularizer is added at the driver.
/// coefficients runs one (d+1)-payload reduce of the per-instance functions
/// F_l and folds in the driver-side regularizer polynomial. Per-instance
/// functions carry the 1/n factor so the reduce is a plain sum.
class LossModel {
 public:
  explicit LossModel(double lambda);
  virtual ~LossModel() = default;

  double lambda() const { return lambda_; }

  ValueGrad value_grad(const DenseVector& w, const ShardedDataset& data,
                       const ReduceTopology& topology, CommLedger& ledger) const;

  CoefficientVector coefficients(const DenseVector& w, const DenseVector& p,
                                 double alpha_j, int degree,
                                 const ShardedDataset& data,
                                 const ReduceTopology& topology,
                                 CommLedger& ledger) const;

  /// Data part only: per-instance [F_0..F_degree] at the ray r = w + alpha_j*p
  /// along direction p. `n_total` is the dataset size for the 1/n factor.
  virtual PerInstanceFn coeff_fn(const DenseVector& r, const DenseVector& p,
                                 int degree, std::size_t n_total) const = 0;

  /// Data part only: accumulates the instance's gradient into out[0..m) and
  /// its loss value into out[m].
  virtual PerInstanceFn value_grad_fn(const DenseVector& w,
                                      std::size_t n_total) const = 0;

 private:
  double lambda_ = 0.0;
};

/// Binary logistic regression, labels in {0,1}.
///
/// With t = w.x, rho = e^{-t} and N(y) = 1 - I(y != 0), the per-instance
/// loss is log(rho + 1) + N(y) t. Coefficients of order >= 2 come from the
/// derivative recurrence of the sigmoid s = 1/(1+rho): each g^(l) is an
/// integer-coefficient polynomial in s with g'' = s(1-s) and
/// g^(l+1) = d/ds[g^(l)] * s(1-s). Large |t| uses the overflow-safe branch.
class LogisticLoss final : public LossModel {
 public:
  using LossModel::LossModel;

  PerInstanceFn coeff_fn(const DenseVector& r, const DenseVector& p, int degree,
                         std::size_t n_total) const override;
  PerInstanceFn value_grad_fn(const DenseVector& w,
                              std::size_t n_total) const override;
};

/// Least squares regression: per-instance loss (w.x - y)^2 / 2. The loss
/// section is an exact quadratic in alpha, so F_l = 0 for l >= 3.
class LeastSquaresLoss final : public LossModel {
 public:
  using LossModel::LossModel;

  PerInstanceFn coeff_fn(const DenseVector& r, const DenseVector& p, int degree,
                         std::size_t n_total) const override;
  PerInstanceFn value_grad_fn(const DenseVector& w,
                              std::size_t n_total) const override;
};

/// Coefficient arrays (in powers of s) of the sigmoid derivative polynomials
/// g^(2)..g^(degree); exposed for tests.
std::vector<std::vector<double>> sigmoid_derivative_polys(int degree);

}  // namespace pels
