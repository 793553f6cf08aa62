#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace mloo {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Thrown when inputs violate a documented contract (dimension mismatch,
/// out-of-range argument, malformed configuration).
struct ContractError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Thrown when the kernel matrix cannot be factorized even at the maximum
/// jitter level. Carries the last jitter that was attempted.
struct SingularKernelError : std::runtime_error {
  explicit SingularKernelError(double jitter)
      : std::runtime_error("kernel matrix not positive definite at jitter " +
                           std::to_string(jitter)),
        attempted_jitter(jitter) {}
  double attempted_jitter;
};

/// Thrown by operations that need at least two observations (variance
/// predictions and everything built on them).
struct InsufficientDataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown by threshold_cost when no pixel falls inside the OD band.
struct NoSignalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown by the file experiment protocol on timeouts, index mismatches and
/// malformed payloads. The offending payload, when any, is kept for diagnosis.
struct ProtocolError : std::runtime_error {
  explicit ProtocolError(const std::string& what, std::string payload_ = "")
      : std::runtime_error(what), payload(std::move(payload_)) {}
  std::string payload;
};

/// Per-dimension squared-exponential correlation lengths, in normalized
/// parameter units.
struct Hyperparameters {
  Vector lengths;

  int dim() const { return static_cast<int>(lengths.size()); }
};

/// History the learner conditions on: rows of `params` are parameter vectors
/// in [0,1]^M, with one cost and one |uncertainty| per row.
struct ObservationSet {
  Matrix params;   // N x M
  Vector costs;    // N
  Vector uncerts;  // N, entries >= 0

  int size() const { return static_cast<int>(costs.size()); }
  int dim() const { return static_cast<int>(params.cols()); }

  void append(const Vector& x, double cost, double uncert) {
    if (size() > 0 && x.size() != params.cols())
      throw ContractError("observation dimension mismatch");
    if (!(uncert >= 0.0)) throw ContractError("uncertainty must be >= 0");
    const int n = size();
    params.conservativeResize(n + 1, x.size());
    costs.conservativeResize(n + 1);
    uncerts.conservativeResize(n + 1);
    params.row(n) = x.transpose();
    costs(n) = cost;
    uncerts(n) = uncert;
  }

  void validate() const {
    if (size() < 1) throw ContractError("observation set is empty");
    if (params.rows() != costs.size() || costs.size() != uncerts.size())
      throw ContractError("observation set length mismatch");
    if (!params.allFinite() || !costs.allFinite() || !uncerts.allFinite())
      throw ContractError("observation set contains non-finite values");
    if ((uncerts.array() < 0.0).any())
      throw ContractError("negative uncertainty");
  }
};

/// Axis-aligned search box in normalized coordinates.
struct Box {
  Vector lo;
  Vector hi;

  int dim() const { return static_cast<int>(lo.size()); }

  Vector clip(Vector x) const {
    return x.cwiseMax(lo).cwiseMin(hi);
  }
  bool contains(const Vector& x, double tol = 0.0) const {
    return ((x.array() >= lo.array() - tol) && (x.array() <= hi.array() + tol))
        .all();
  }
  static Box unit(int m) {
    return Box{Vector::Zero(m), Vector::Ones(m)};
  }
};

}  // namespace mloo
