#pragma once

#include <Eigen/Cholesky>

#include "mloo/types.hpp"

namespace mloo {

/// Exact Gaussian-process regression with a constant mean offset and the
/// squared-exponential correlation K(a,b,H) = exp(-sum_j (a_j-b_j)^2/h_j^2).
///
/// Fitting factorizes R = K + diag(U^2) once (Cholesky, with escalating
/// diagonal jitter when the matrix is numerically semidefinite) and caches the
/// solves shared by every prediction, so the posterior mean is O(N) per query
/// and the variance one triangular solve.
struct FittedGP {
  ObservationSet obs;
  Hyperparameters hyp;
  Eigen::LLT<Matrix> factor;  // of R + jitter*I
  double beta = 0.0;          // constant offset (j'R^-1 j)^-1 j'R^-1 Y
  Vector gamma;               // R^-1 (Y - j beta)
  Vector r_inv_ones;          // R^-1 j, cached for variance queries
  double ones_quad = 0.0;     // j' R^-1 j
  double cost_var = 0.0;      // population variance of the costs
  double log_like = 0.0;
  double jitter = 0.0;        // diagonal jitter actually applied

  int size() const { return obs.size(); }
  int dim() const { return obs.dim(); }
};

/// K(a,b,H); result in (0,1], exactly 1 when a == b.
double kernel_value(const Vector& a, const Vector& b, const Hyperparameters& hyp);

/// r(x): kernel of x against every observed point.
Vector kernel_vector(const ObservationSet& obs, const Hyperparameters& hyp,
                     const Vector& x);

/// Fits the GP. Throws SingularKernelError if R cannot be factorized even at
/// the maximum jitter level (1e-4 * mean diagonal).
FittedGP fit_gp(const ObservationSet& obs, const Hyperparameters& hyp);

/// Posterior mean beta + r(x)' gamma.
double predict_mean(const FittedGP& gp, const Vector& x);

/// Posterior variance; requires N >= 2 (the cost-variance prefactor is
/// undefined for a single observation). Clamped below at zero.
double predict_variance(const FittedGP& gp, const Vector& x);

/// Gradient of the posterior mean with respect to the query point.
Vector predict_mean_gradient(const FittedGP& gp, const Vector& x);

/// Marginal log-likelihood of the costs given points, uncertainties and
/// correlation lengths. Exactly zero for N == 1.
double log_likelihood(const ObservationSet& obs, const Hyperparameters& hyp);

}  // namespace mloo
