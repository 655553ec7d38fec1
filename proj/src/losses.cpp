#include "pels/losses.hpp"

#include <cmath>
#include <stdexcept>

namespace pels {

namespace {

struct SigmoidParts {
  double s;        // 1/(1 + e^{-t})
  double logterm;  // log(e^{-t} + 1)
};

// Overflow-safe evaluation: for t < 0, e^{-t} would overflow, so compute
// via e^{t} instead.
SigmoidParts sigmoid_parts(double t) {
  if (t >= 0.0) {
    const double emt = std::exp(-t);
    return {1.0 / (1.0 + emt), std::log1p(emt)};
  }
  const double et = std::exp(t);
  return {et / (1.0 + et), -t + std::log1p(et)};
}

double horner(const std::vector<double>& coeffs, double x) {
  double acc = 0.0;
  for (std::size_t k = coeffs.size(); k-- > 0;) {
    acc = acc * x + coeffs[k];
  }
  return acc;
}

}  // namespace

std::vector<std::vector<double>> sigmoid_derivative_polys(int degree) {
  std::vector<std::vector<double>> polys;
  if (degree < 2) {
    return polys;
  }
  polys.push_back({0.0, 1.0, -1.0});  // g'' = s - s^2
  for (int order = 3; order <= degree; ++order) {
    const auto& prev = polys.back();
    // d/ds[prev] * (s - s^2)
    std::vector<double> deriv(prev.size() - 1, 0.0);
    for (std::size_t k = 1; k < prev.size(); ++k) {
      deriv[k - 1] = static_cast<double>(k) * prev[k];
    }
    std::vector<double> next(deriv.size() + 2, 0.0);
    for (std::size_t k = 0; k < deriv.size(); ++k) {
      next[k + 1] += deriv[k];
      next[k + 2] -= deriv[k];
    }
    polys.push_back(std::move(next));
  }
  return polys;
}

CoefficientVector regularizer_coeffs(const DenseVector& r,
                                     const DenseVector& p, double lambda,
                                     int degree) {
  if (degree < 2) {
    throw std::invalid_argument("regularizer_coeffs: degree must be >= 2");
  }
  CoefficientVector out;
  out.degree = degree;
  out.includes_regularizer = true;
  out.c.assign(degree + 1, 0.0);
  const double nr = norm2(r);
  const double np = norm2(p);
  out.c[0] = 0.5 * lambda * nr * nr;
  out.c[1] = lambda * dot(r, p);
  out.c[2] = 0.5 * lambda * np * np;
  return out;
}

double accuracy_proxy(double loss_value) { return std::exp(-loss_value); }

LossModel::LossModel(double lambda) : lambda_(lambda) {
  if (lambda < 0.0) {
    throw std::invalid_argument("LossModel: lambda must be >= 0");
  }
}

ValueGrad LossModel::value_grad(const DenseVector& w,
                                const ShardedDataset& data,
                                const ReduceTopology& topology,
                                CommLedger& ledger) const {
  const std::size_t m = data.dim();
  if (w.size() != m) {
    throw std::invalid_argument("value_grad: dimension mismatch");
  }
  account_broadcast(ledger, data.shard_count(), m);
  const DenseVector reduced = map_reduce(
      data, value_grad_fn(w, data.total_instances()), m + 1, topology, ledger);

  ValueGrad out;
  out.grad = DenseVector(m);
  for (std::size_t k = 0; k < m; ++k) {
    out.grad[k] = reduced[k] + lambda_ * w[k];
  }
  const double nw = norm2(w);
  out.value = reduced[m] + 0.5 * lambda_ * nw * nw;
  return out;
}

CoefficientVector LossModel::coefficients(const DenseVector& w,
                                          const DenseVector& p, double alpha_j,
                                          int degree,
                                          const ShardedDataset& data,
                                          const ReduceTopology& topology,
                                          CommLedger& ledger) const {
  if (degree < 2) {
    throw std::invalid_argument("coefficients: degree must be >= 2");
  }
  const std::size_t m = data.dim();
  if (w.size() != m || p.size() != m) {
    throw std::invalid_argument("coefficients: dimension mismatch");
  }
  const DenseVector r = axpy(alpha_j, p, w);
  account_broadcast(ledger, data.shard_count(), m);  // r
  account_broadcast(ledger, data.shard_count(), m);  // p
  const DenseVector data_part =
      map_reduce(data, coeff_fn(r, p, degree, data.total_instances()),
                 degree + 1, topology, ledger);

  CoefficientVector out = regularizer_coeffs(r, p, lambda_, degree);
  out.alpha_j = alpha_j;
  for (int l = 0; l <= degree; ++l) {
    out.c[l] += data_part[l];
  }
  return out;
}

PerInstanceFn LogisticLoss::value_grad_fn(const DenseVector& w,
                                          std::size_t n_total) const {
  const double inv_n = 1.0 / static_cast<double>(n_total);
  return [w, inv_n](const Instance& inst, std::vector<double>& out) {
    const double t = dot(inst.features, w);
    const auto [s, logterm] = sigmoid_parts(t);
    const double n_y = inst.label != 0.0 ? 0.0 : 1.0;
    scatter_axpy(inv_n * (n_y + s - 1.0), inst.features,
                 {out.data(), out.size() - 1});
    out.back() += inv_n * (logterm + n_y * t);
  };
}

PerInstanceFn LogisticLoss::coeff_fn(const DenseVector& r,
                                     const DenseVector& p, int degree,
                                     std::size_t n_total) const {
  if (degree < 2) {
    throw std::invalid_argument("coeff_fn: degree must be >= 2");
  }
  const double inv_n = 1.0 / static_cast<double>(n_total);
  // inv_n * g^(l) / l! for l = 2..degree, as polynomials in s
  auto polys = sigmoid_derivative_polys(degree);
  double factorial = 1.0;
  for (int l = 2; l <= degree; ++l) {
    factorial *= l;
    for (double& c : polys[l - 2]) {
      c *= inv_n / factorial;
    }
  }
  return [r, p, degree, inv_n, polys = std::move(polys)](
             const Instance& inst, std::vector<double>& out) {
    const double t = dot(inst.features, r);
    const double pi = dot(inst.features, p);
    const auto [s, logterm] = sigmoid_parts(t);
    const double n_y = inst.label != 0.0 ? 0.0 : 1.0;
    out[0] += inv_n * (logterm + n_y * t);
    out[1] += inv_n * pi * (n_y + s - 1.0);
    double pi_pow = pi;
    for (int l = 2; l <= degree; ++l) {
      pi_pow *= pi;
      out[l] += pi_pow * horner(polys[l - 2], s);
    }
  };
}

PerInstanceFn LeastSquaresLoss::value_grad_fn(const DenseVector& w,
                                              std::size_t n_total) const {
  const double inv_n = 1.0 / static_cast<double>(n_total);
  return [w, inv_n](const Instance& inst, std::vector<double>& out) {
    const double e = dot(inst.features, w) - inst.label;
    scatter_axpy(inv_n * e, inst.features, {out.data(), out.size() - 1});
    out.back() += 0.5 * inv_n * e * e;
  };
}

PerInstanceFn LeastSquaresLoss::coeff_fn(const DenseVector& r,
                                         const DenseVector& p, int degree,
                                         std::size_t n_total) const {
  if (degree < 2) {
    throw std::invalid_argument("coeff_fn: degree must be >= 2");
  }
  const double inv_n = 1.0 / static_cast<double>(n_total);
  return [r, p, inv_n](const Instance& inst, std::vector<double>& out) {
    const double e = dot(inst.features, r) - inst.label;
    const double pi = dot(inst.features, p);
    out[0] += 0.5 * inv_n * e * e;
    out[1] += inv_n * pi * e;
    out[2] += 0.5 * inv_n * pi * pi;
  };
}

}  // namespace pels
