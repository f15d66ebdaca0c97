#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <string>

#include "frdm/errors.hpp"

namespace frdm {

inline constexpr double kHermitianTol = 1e-10;  // assembly-level tolerance
inline constexpr double kSpectralTol = 1e-8;    // eigensolver-level tolerance

/// Largest absolute entry of H - H^dagger.
inline double hermitian_deviation(const Eigen::MatrixXcd& h) {
  if (h.size() == 0) return 0.0;
  return (h - Eigen::MatrixXcd(h.adjoint())).cwiseAbs().maxCoeff();
}

/// (H + H^dagger)/2 after asserting the input was already Hermitian within
/// `tol`; every eigendecomposition below goes through this gate.
inline Eigen::MatrixXcd symmetrized(const Eigen::MatrixXcd& h, double tol = kHermitianTol) {
  if (h.rows() != h.cols()) throw std::invalid_argument("symmetrized: matrix not square");
  const double dev = hermitian_deviation(h);
  if (dev > tol)
    throw hermiticity_error("matrix deviates from Hermitian by " + std::to_string(dev));
  Eigen::MatrixXcd adj = h.adjoint();
  return 0.5 * (h + adj);
}

/// Real eigenvalues in descending order.
struct Spectrum {
  Eigen::VectorXd values;
};

struct EigenSystem {
  Eigen::VectorXd values;    // descending
  Eigen::MatrixXcd vectors;  // columns aligned with values
};

inline Spectrum eig_hermitian(const Eigen::MatrixXcd& h, double tol = kHermitianTol) {
  Eigen::MatrixXcd s = symmetrized(h, tol);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(s, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eig_hermitian: solver failed");
  Eigen::VectorXd vals = solver.eigenvalues().reverse();
  return Spectrum{vals};
}

/// Eigendecomposition with vectors; the reconstruction residual
/// ||H - V diag(vals) V^dagger||_HS is checked against 1e-8 * ||H||_HS.
inline EigenSystem eig_hermitian_full(const Eigen::MatrixXcd& h, double tol = kHermitianTol) {
  Eigen::MatrixXcd s = symmetrized(h, tol);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(s);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eig_hermitian_full: solver failed");
  EigenSystem sys;
  sys.values = solver.eigenvalues().reverse();
  sys.vectors = solver.eigenvectors().rowwise().reverse();
  const double resid =
      (s - sys.vectors * sys.values.asDiagonal() * sys.vectors.adjoint()).norm();
  if (resid > kSpectralTol * std::max(1.0, s.norm()))
    throw std::runtime_error("eig_hermitian_full: reconstruction residual " +
                             std::to_string(resid));
  return sys;
}

/// Operator, Hilbert-Schmidt, and trace norms of a Hermitian matrix. op and
/// tr_abs come from the eigenvalues; hs is the Frobenius norm of the
/// symmetrized matrix, so hs^2 = sum(lambda^2) stays a genuine cross-check.
struct Norms {
  double op;
  double hs;
  double tr_abs;
};

inline Norms norms(const Eigen::MatrixXcd& h, double tol = kHermitianTol) {
  Eigen::MatrixXcd s = symmetrized(h, tol);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(s, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("norms: solver failed");
  const Eigen::VectorXd vals = solver.eigenvalues();
  Norms n{};
  n.op = (vals.size() == 0) ? 0.0 : vals.cwiseAbs().maxCoeff();
  n.tr_abs = vals.cwiseAbs().sum();
  n.hs = s.norm();
  const double cross = std::sqrt(n.tr_abs * n.op);
  if (n.hs > cross + kSpectralTol * std::max(1.0, n.hs))
    throw std::runtime_error("norms: hs exceeds sqrt(tr_abs * op) beyond tolerance");
  return n;
}

/// Von Neumann entropy -sum(lambda log lambda) (natural log) of a
/// trace-normalized PSD matrix. Eigenvalues in [-1e-10, 0) are clipped to 0;
/// anything more negative is rejected.
inline double entropy(const Eigen::MatrixXcd& h, double tol = kHermitianTol) {
  Spectrum sp = eig_hermitian(h, tol);
  const double tr = sp.values.sum();
  if (std::abs(tr - 1.0) > kSpectralTol)
    throw normalization_error("entropy: trace " + std::to_string(tr) + " != 1");
  double s = 0.0;
  for (Eigen::Index i = 0; i < sp.values.size(); ++i) {
    double lam = sp.values[i];
    if (lam < -kHermitianTol)
      throw std::domain_error("entropy: eigenvalue " + std::to_string(lam) + " below -1e-10");
    lam = std::min(std::max(lam, 0.0), 1.0);
    if (lam > 0.0) s -= lam * std::log(lam);
  }
  return s;
}

}  // namespace frdm
