#pragma once

// Independent reference computations used to check the factorized GP path.
// Everything here is written against the closed-form matrix expressions with
// dense inverses / eigendecompositions, deliberately avoiding the library's
// Cholesky route.

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>

#include "mloo/types.hpp"

namespace oracle {

using mloo::Matrix;
using mloo::ObservationSet;
using mloo::Vector;

inline double kernel(const Vector& a, const Vector& b, const Vector& h) {
  double e = 0.0;
  for (int j = 0; j < a.size(); ++j) {
    const double d = a(j) - b(j);
    e += d * d / (h(j) * h(j));
  }
  return std::exp(-e);
}

struct DenseGP {
  Matrix r_inv;
  Vector gamma;
  double beta = 0.0;
  double ones_quad = 0.0;
  double cost_var = 0.0;
  double log_like = 0.0;
  ObservationSet obs;
  Vector h;
};

inline DenseGP dense_fit(const ObservationSet& obs, const Vector& h,
                         double jitter = 0.0) {
  const int n = obs.size();
  Matrix r(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      r(i, j) = kernel(obs.params.row(i), obs.params.row(j), h);
      if (i == j) r(i, j) += obs.uncerts(i) * obs.uncerts(i) + jitter;
    }

  DenseGP gp;
  gp.obs = obs;
  gp.h = h;
  gp.r_inv = r.inverse();
  const Vector ones = Vector::Ones(n);
  gp.ones_quad = ones.dot(gp.r_inv * ones);
  gp.beta = ones.dot(gp.r_inv * obs.costs) / gp.ones_quad;
  gp.gamma = gp.r_inv * (obs.costs - ones * gp.beta);
  gp.cost_var = (obs.costs.array() - obs.costs.mean()).square().mean();

  // log|R| from the eigenvalues of the symmetric matrix.
  Eigen::SelfAdjointEigenSolver<Matrix> es(r);
  double log_det = 0.0;
  for (int i = 0; i < n; ++i) log_det += std::log(es.eigenvalues()(i));
  const Matrix proj =
      gp.r_inv - (gp.r_inv * ones) * (ones.transpose() * gp.r_inv) / gp.ones_quad;
  const double quad = obs.costs.dot(proj * obs.costs);
  gp.log_like = 0.5 * (-log_det - std::log(gp.ones_quad) -
                       (n - 1) * std::log(2.0 * std::numbers::pi) - quad);
  return gp;
}

inline Vector dense_r(const DenseGP& gp, const Vector& x) {
  Vector r(gp.obs.size());
  for (int i = 0; i < gp.obs.size(); ++i)
    r(i) = kernel(x, gp.obs.params.row(i), gp.h);
  return r;
}

inline double dense_mean(const DenseGP& gp, const Vector& x) {
  return gp.beta + dense_r(gp, x).dot(gp.gamma);
}

inline double dense_variance(const DenseGP& gp, const Vector& x) {
  const Vector r = dense_r(gp, x);
  const Vector ones = Vector::Ones(gp.obs.size());
  const double ones_r = ones.dot(gp.r_inv * r);
  return gp.cost_var * (1.0 - r.dot(gp.r_inv * r) +
                        (ones_r - 1.0) * (ones_r - 1.0) / gp.ones_quad);
}

}  // namespace oracle
