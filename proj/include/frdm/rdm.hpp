#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "frdm/basis.hpp"
#include "frdm/states.hpp"

namespace frdm {

/// Row-major flattening of two-particle indices: (k, l) -> k*M + l.
inline Eigen::Index pair_index(int k, int l, int modes) {
  return static_cast<Eigen::Index>(k) * modes + l;
}

/// Rank of an ordered pair k < l in the (k outer, l inner) enumeration.
inline std::size_t ordered_pair_rank(int k, int l, int modes) {
  return static_cast<std::size_t>(k) * modes - static_cast<std::size_t>(k) * (k + 1) / 2 +
         static_cast<std::size_t>(l - k - 1);
}

/// v_k = c_k Psi for every mode k, each in the (N-1)-particle sector.
inline std::vector<Eigen::VectorXcd> annihilated_vectors(const SectorVector& psi) {
  const int M = psi.modes;
  const int N = psi.particles;
  const Eigen::Index tdim =
      (N >= 1) ? static_cast<Eigen::Index>(binomial(M, N - 1)) : Eigen::Index{0};
  std::vector<Eigen::VectorXcd> v(static_cast<std::size_t>(M), Eigen::VectorXcd::Zero(tdim));
  if (N < 1) return v;
  SectorBasis basis = enumerate_sector(M, N);
  SectorBasis target = enumerate_sector(M, N - 1);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const Mask m = basis.mask(i);
    const std::complex<double> a = psi.amps[static_cast<Eigen::Index>(i)];
    for (Mask rest = m; rest != 0; rest &= rest - 1) {
      const int k = std::countr_zero(rest);
      v[static_cast<std::size_t>(k)][static_cast<Eigen::Index>(
          target.rank(m ^ (Mask{1} << k)))] += static_cast<double>(jw_sign(m, k)) * a;
    }
  }
  return v;
}

/// v_{kl} = c_l c_k Psi for k < l (pair rank order), each in the
/// (N-2)-particle sector; v_{lk} = -v_{kl} by the anticommutation relations.
inline std::vector<Eigen::VectorXcd> pair_annihilated_vectors(const SectorVector& psi) {
  const int M = psi.modes;
  const int N = psi.particles;
  const std::size_t npairs = static_cast<std::size_t>(M) * (M - 1) / 2;
  const Eigen::Index tdim =
      (N >= 2) ? static_cast<Eigen::Index>(binomial(M, N - 2)) : Eigen::Index{0};
  std::vector<Eigen::VectorXcd> v(npairs, Eigen::VectorXcd::Zero(tdim));
  if (N < 2) return v;
  SectorBasis basis = enumerate_sector(M, N);
  SectorBasis target = enumerate_sector(M, N - 2);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const Mask m = basis.mask(i);
    const std::complex<double> a = psi.amps[static_cast<Eigen::Index>(i)];
    for (Mask rk = m; rk != 0; rk &= rk - 1) {
      const int k = std::countr_zero(rk);
      const int s1 = jw_sign(m, k);
      const Mask m1 = m ^ (Mask{1} << k);
      for (Mask rl = rk & (rk - 1); rl != 0; rl &= rl - 1) {
        const int l = std::countr_zero(rl);  // l > k, both occupied in m
        const int s2 = jw_sign(m1, l);
        v[ordered_pair_rank(k, l, M)][static_cast<Eigen::Index>(
            target.rank(m1 ^ (Mask{1} << l)))] += static_cast<double>(s1 * s2) * a;
      }
    }
  }
  return v;
}

/// One-body reduced density matrix, (g1)_{k,m} = <c_m Psi, c_k Psi>.
/// Hermitian, PSD, trace N, operator norm <= 1.
inline Eigen::MatrixXcd gamma1(const SectorVector& psi) {
  require_normalized(psi);
  const int M = psi.modes;
  auto v = annihilated_vectors(psi);
  Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(M, M);
  for (int k = 0; k < M; ++k)
    for (int m = 0; m < M; ++m)
      g(k, m) = v[static_cast<std::size_t>(m)].dot(v[static_cast<std::size_t>(k)]);
  return g;
}

/// Two-body reduced density matrix on the pair space (dimension M^2): entry at
/// row (k,l), column (m,n) is <c_n c_m Psi, c_l c_k Psi>. Assembled as a Gram
/// matrix of the pair intermediates v_{kl} = c_l c_k Psi, never by four-fold
/// operator application per entry. Hermitian, PSD, trace N(N-1).
inline Eigen::MatrixXcd gamma2(const SectorVector& psi) {
  require_normalized(psi);
  const int M = psi.modes;
  Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(M) * M,
                                              static_cast<Eigen::Index>(M) * M);
  if (psi.particles < 2) return g;
  auto v = pair_annihilated_vectors(psi);
  for (int k = 0; k < M; ++k)
    for (int l = k + 1; l < M; ++l) {
      const auto& vkl = v[ordered_pair_rank(k, l, M)];
      for (int m = 0; m < M; ++m)
        for (int n = m + 1; n < M; ++n) {
          const std::complex<double> z = v[ordered_pair_rank(m, n, M)].dot(vkl);
          g(pair_index(k, l, M), pair_index(m, n, M)) = z;
          g(pair_index(l, k, M), pair_index(m, n, M)) = -z;
          g(pair_index(k, l, M), pair_index(n, m, M)) = -z;
          g(pair_index(l, k, M), pair_index(n, m, M)) = z;
        }
    }
  return g;
}

/// Exchange operator on the pair space: Ex (phi (x) psi) = psi (x) phi, i.e.
/// entry ((k,l),(l,k)) = 1. Involution, Hermitian.
inline Eigen::MatrixXcd exchange_matrix(int modes) {
  const Eigen::Index d = static_cast<Eigen::Index>(modes) * modes;
  Eigen::MatrixXcd ex = Eigen::MatrixXcd::Zero(d, d);
  for (int k = 0; k < modes; ++k)
    for (int l = 0; l < modes; ++l) ex(pair_index(k, l, modes), pair_index(l, k, modes)) = 1.0;
  return ex;
}

/// Kronecker product under the same row-major pair flattening, so that
/// (a (x) b)[(k,l),(m,n)] = a(k,m) * b(l,n).
inline Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// (1 - Ex) (g1 (x) g1): the pair matrix a determinant state would produce
/// from its one-body matrix; entries g1(k,m) g1(l,n) - g1(l,m) g1(k,n).
inline Eigen::MatrixXcd determinant_pair_matrix(const Eigen::MatrixXcd& g1) {
  const int M = static_cast<int>(g1.rows());
  Eigen::MatrixXcd out(static_cast<Eigen::Index>(M) * M, static_cast<Eigen::Index>(M) * M);
  for (int k = 0; k < M; ++k)
    for (int l = 0; l < M; ++l)
      for (int m = 0; m < M; ++m)
        for (int n = 0; n < M; ++n)
          out(pair_index(k, l, M), pair_index(m, n, M)) =
              g1(k, m) * g1(l, n) - g1(l, m) * g1(k, n);
  return out;
}

/// Truncated two-body matrix g2T = g2 - (1 - Ex)(g1 (x) g1). Vanishes
/// identically on determinant states.
inline Eigen::MatrixXcd gamma2_truncated(const SectorVector& psi) {
  return gamma2(psi) - determinant_pair_matrix(gamma1(psi));
}

}  // namespace frdm
