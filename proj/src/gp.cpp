#include "mloo/gp.hpp"

#include <cmath>
#include <numbers>

namespace mloo {

namespace {

void check_dims(const Vector& a, const Vector& b, const Hyperparameters& hyp) {
  if (a.size() != b.size() || a.size() != hyp.lengths.size())
    throw ContractError("kernel_value: dimension mismatch");
}

Matrix build_kernel_matrix(const ObservationSet& obs,
                           const Hyperparameters& hyp) {
  const int n = obs.size();
  Matrix r(n, n);
  const Vector inv_h2 = hyp.lengths.array().square().inverse();
  for (int i = 0; i < n; ++i) {
    r(i, i) = 1.0 + obs.uncerts(i) * obs.uncerts(i);
    for (int j = i + 1; j < n; ++j) {
      const Vector d = obs.params.row(i) - obs.params.row(j);
      const double k = std::exp(-d.array().square().matrix().dot(inv_h2));
      r(i, j) = k;
      r(j, i) = k;
    }
  }
  return r;
}

// Factorizes R, escalating relative jitter 1e-10 -> 1e-4 by decades.
// Returns the applied jitter through `jitter`.
Eigen::LLT<Matrix> factorize(const Matrix& r, double& jitter) {
  Eigen::LLT<Matrix> llt(r);
  if (llt.info() == Eigen::Success) {
    jitter = 0.0;
    return llt;
  }
  const double scale = r.diagonal().mean();
  double level = 1e-10;
  while (level <= 1e-4) {
    jitter = level * scale;
    Matrix rj = r;
    rj.diagonal().array() += jitter;
    llt.compute(rj);
    if (llt.info() == Eigen::Success) return llt;
    level *= 10.0;
  }
  throw SingularKernelError(jitter);
}

}  // namespace

double kernel_value(const Vector& a, const Vector& b,
                    const Hyperparameters& hyp) {
  check_dims(a, b, hyp);
  const double e =
      ((a - b).array() / hyp.lengths.array()).square().sum();
  return std::exp(-e);
}

Vector kernel_vector(const ObservationSet& obs, const Hyperparameters& hyp,
                     const Vector& x) {
  if (x.size() != obs.dim() || x.size() != hyp.lengths.size())
    throw ContractError("kernel_vector: dimension mismatch");
  const int n = obs.size();
  Vector r(n);
  const Vector inv_h2 = hyp.lengths.array().square().inverse();
  for (int i = 0; i < n; ++i) {
    const Vector d = x.transpose() - obs.params.row(i);
    r(i) = std::exp(-d.array().square().matrix().dot(inv_h2));
  }
  return r;
}

FittedGP fit_gp(const ObservationSet& obs, const Hyperparameters& hyp) {
  obs.validate();
  if (obs.dim() != hyp.dim())
    throw ContractError("fit_gp: hyperparameter dimension mismatch");
  if ((hyp.lengths.array() <= 0.0).any())
    throw ContractError("fit_gp: correlation lengths must be positive");

  const int n = obs.size();
  const Matrix r = build_kernel_matrix(obs, hyp);

  FittedGP gp;
  gp.obs = obs;
  gp.hyp = hyp;
  gp.factor = factorize(r, gp.jitter);

  Matrix rj = r;
  rj.diagonal().array() += gp.jitter;
  const Vector ones = Vector::Ones(n);
  const Vector& y = obs.costs;

  // Solve for R^-1 j and R^-1 Y with one step of iterative refinement.
  Vector inv_ones = gp.factor.solve(ones);
  inv_ones += gp.factor.solve(ones - rj * inv_ones);
  Vector inv_y = gp.factor.solve(y);
  inv_y += gp.factor.solve(y - rj * inv_y);

  gp.r_inv_ones = inv_ones;
  gp.ones_quad = ones.dot(inv_ones);
  gp.beta = ones.dot(inv_y) / gp.ones_quad;
  gp.gamma = inv_y - gp.beta * inv_ones;

  const double mean_cost = y.mean();
  gp.cost_var = (y.array() - mean_cost).square().mean();

  if (n == 1) {
    gp.log_like = 0.0;  // every term of the likelihood cancels
  } else {
    const double log_det =
        2.0 * gp.factor.matrixLLT().diagonal().array().log().sum();
    const double quad =
        y.dot(inv_y) - std::pow(ones.dot(inv_y), 2) / gp.ones_quad;
    gp.log_like = 0.5 * (-log_det - std::log(gp.ones_quad) -
                         (n - 1) * std::log(2.0 * std::numbers::pi) - quad);
  }
  return gp;
}

double predict_mean(const FittedGP& gp, const Vector& x) {
  const Vector r = kernel_vector(gp.obs, gp.hyp, x);
  return gp.beta + r.dot(gp.gamma);
}

double predict_variance(const FittedGP& gp, const Vector& x) {
  if (gp.size() < 2)
    throw InsufficientDataError(
        "predict_variance needs at least two observations");
  const Vector r = kernel_vector(gp.obs, gp.hyp, x);
  const Vector z = gp.factor.matrixL().solve(r);
  const double r_quad = z.squaredNorm();
  const double ones_r = gp.r_inv_ones.dot(r);
  const double var =
      gp.cost_var *
      (1.0 - r_quad + (ones_r - 1.0) * (ones_r - 1.0) / gp.ones_quad);
  return std::max(var, 0.0);
}

Vector predict_mean_gradient(const FittedGP& gp, const Vector& x) {
  const Vector r = kernel_vector(gp.obs, gp.hyp, x);
  const Vector inv_h2 = gp.hyp.lengths.array().square().inverse();
  Vector grad = Vector::Zero(gp.dim());
  for (int i = 0; i < gp.size(); ++i) {
    const Vector d = x.transpose() - gp.obs.params.row(i);
    grad -= 2.0 * gp.gamma(i) * r(i) * d.cwiseProduct(inv_h2);
  }
  return grad;
}

double log_likelihood(const ObservationSet& obs, const Hyperparameters& hyp) {
  return fit_gp(obs, hyp).log_like;
}

}  // namespace mloo
