#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <stdexcept>

#include "frdm/rdm.hpp"
#include "frdm/rng.hpp"

namespace frdm {

/// Four-index coefficient tensor A_{k,l,m,n} for two-particle test operators,
/// stored as the M^2 x M^2 matrix entries(k*M+l, m*M+n).
struct CoefficientTensor4 {
  int modes = 0;
  Eigen::MatrixXcd entries;
  bool antisymmetrized = false;  // true <=> A_{l,k,m,n} == -A_{k,l,m,n} exactly

  std::complex<double> at(int k, int l, int m, int n) const {
    return entries(pair_index(k, l, modes), pair_index(m, n, modes));
  }
  double hs_norm_sq() const { return entries.squaredNorm(); }
  double hs_norm() const { return entries.norm(); }
};

inline bool is_pair_antisymmetric(const Eigen::MatrixXcd& entries, int modes) {
  for (int k = 0; k < modes; ++k)
    for (int l = 0; l < modes; ++l)
      for (Eigen::Index col = 0; col < entries.cols(); ++col)
        if (entries(pair_index(k, l, modes), col) != -entries(pair_index(l, k, modes), col))
          return false;
  return true;
}

/// Wrap an M^2 x M^2 coefficient matrix, detecting exact (k,l)-antisymmetry.
inline CoefficientTensor4 make_tensor4(int modes, Eigen::MatrixXcd entries) {
  const Eigen::Index d = static_cast<Eigen::Index>(modes) * modes;
  if (entries.rows() != d || entries.cols() != d)
    throw std::invalid_argument("make_tensor4: entries must be M^2 x M^2");
  CoefficientTensor4 t{modes, std::move(entries), false};
  t.antisymmetrized = is_pair_antisymmetric(t.entries, modes);
  return t;
}

/// Independent complex-Gaussian entries; deterministic in the seed.
inline CoefficientTensor4 random_tensor4(int modes, std::uint64_t seed) {
  const Eigen::Index d = static_cast<Eigen::Index>(modes) * modes;
  GaussianSource g(seed);
  Eigen::MatrixXcd e(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) e(i, j) = g.complex_normal();
  return make_tensor4(modes, std::move(e));
}

/// Antisymmetrize in the first index pair: out_{k,l,m,n} =
/// (A_{k,l,m,n} - A_{l,k,m,n})/2. The unhalved difference obeys
/// sum |A_{k,l,m,n} - A_{l,k,m,n}|^2 <= 4 sum |A|^2, which is asserted.
inline CoefficientTensor4 antisymmetrize(const CoefficientTensor4& a) {
  const int M = a.modes;
  Eigen::MatrixXcd e(a.entries.rows(), a.entries.cols());
  for (int k = 0; k < M; ++k)
    for (int l = 0; l < M; ++l)
      e.row(pair_index(k, l, M)) =
          0.5 * (a.entries.row(pair_index(k, l, M)) - a.entries.row(pair_index(l, k, M)));
  const double diff_sq = 4.0 * e.squaredNorm();
  if (diff_sq > 4.0 * a.hs_norm_sq() * (1.0 + 1e-12))
    throw std::logic_error("antisymmetrize: norm bound violated");
  CoefficientTensor4 out{M, std::move(e), true};
  return out;
}

}  // namespace frdm
