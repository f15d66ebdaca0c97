#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <string>

#include "frdm/fock.hpp"
#include "frdm/rdm.hpp"
#include "frdm/rng.hpp"
#include "frdm/spectral.hpp"
#include "frdm/states.hpp"
#include "frdm/tensor4.hpp"

namespace frdm {

/// Outcome of one numerical check. Two shapes share one pass rule
/// (pass <=> margin >= -tolerance, tolerance recorded in context):
///   inequality: lhs, rhs are the two sides and margin = rhs - lhs;
///   identity:   lhs = max elementwise deviation, rhs = 0, margin = -lhs.
struct CertificateReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  bool pass = false;
  std::map<std::string, double> context;
};

inline CertificateReport inequality_report(std::string name, double lhs, double rhs,
                                           double tol) {
  CertificateReport r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.margin = rhs - lhs;
  r.pass = r.margin >= -tol;
  r.context["tolerance"] = tol;
  return r;
}

inline CertificateReport identity_report(std::string name, double deviation, double tol) {
  CertificateReport r;
  r.name = std::move(name);
  r.lhs = deviation;
  r.rhs = 0.0;
  r.margin = -deviation;
  r.pass = deviation <= tol;
  r.context["tolerance"] = tol;
  return r;
}

// ---------------------------------------------------------------------------
// contraction helpers
// ---------------------------------------------------------------------------

/// B_n = sum_{k,l,m} conj(A_{k,l,m,n}) c*_m c_l c_k on the full Fock space.
inline Eigen::MatrixXcd contracted_triple_matrix(const CoefficientTensor4& a, int n) {
  const int M = a.modes;
  if (M > kMaxFockModes) throw dimension_error("contracted_triple_matrix: modes > 14");
  const std::size_t dim = std::size_t{1} << M;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::size_t col = 0; col < dim; ++col) {
    const Mask m0 = static_cast<Mask>(col);
    for (Mask rk = m0; rk != 0; rk &= rk - 1) {
      const int k = std::countr_zero(rk);
      const int s1 = jw_sign(m0, k);
      const Mask m1 = m0 ^ (Mask{1} << k);
      for (Mask rl = m1; rl != 0; rl &= rl - 1) {
        const int l = std::countr_zero(rl);
        const int s2 = jw_sign(m1, l);
        const Mask m2 = m1 ^ (Mask{1} << l);
        for (int m = 0; m < M; ++m) {
          if (m2 & (Mask{1} << m)) continue;
          const int s3 = jw_sign(m2, m);
          const Mask m3 = m2 | (Mask{1} << m);
          out(static_cast<Eigen::Index>(m3), static_cast<Eigen::Index>(col)) +=
              std::conj(a.at(k, l, m, n)) * static_cast<double>(s1 * s2 * s3);
        }
      }
    }
  }
  return out;
}

/// B_n applied to a sector vector (N -> N-1) without any 2^M matrix.
inline SectorVector apply_contracted_triple(const CoefficientTensor4& a, int n,
                                            const SectorVector& psi) {
  const int M = psi.modes;
  SectorVector out = sector_zero(M, psi.particles - 1);
  if (psi.amps.size() == 0 || out.amps.size() == 0) return out;
  SectorBasis src = enumerate_sector(M, psi.particles);
  SectorBasis dst = enumerate_sector(M, psi.particles - 1);
  for (std::size_t i = 0; i < src.size(); ++i) {
    const Mask m0 = src.mask(i);
    const std::complex<double> amp = psi.amps[static_cast<Eigen::Index>(i)];
    for (Mask rk = m0; rk != 0; rk &= rk - 1) {
      const int k = std::countr_zero(rk);
      const int s1 = jw_sign(m0, k);
      const Mask m1 = m0 ^ (Mask{1} << k);
      for (Mask rl = m1; rl != 0; rl &= rl - 1) {
        const int l = std::countr_zero(rl);
        const int s2 = jw_sign(m1, l);
        const Mask m2 = m1 ^ (Mask{1} << l);
        for (int m = 0; m < M; ++m) {
          if (m2 & (Mask{1} << m)) continue;
          const int s3 = jw_sign(m2, m);
          const Mask m3 = m2 | (Mask{1} << m);
          out.amps[static_cast<Eigen::Index>(dst.rank(m3))] +=
              std::conj(a.at(k, l, m, n)) * static_cast<double>(s1 * s2 * s3) * amp;
        }
      }
    }
  }
  return out;
}

/// sum_{k,l} coeff(k*M+l) c_l c_k on the full Fock space.
inline Eigen::MatrixXcd pair_annihilation_sum_matrix(const Eigen::VectorXcd& coeff, int modes) {
  const std::size_t dim = std::size_t{1} << modes;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::size_t col = 0; col < dim; ++col) {
    const Mask m0 = static_cast<Mask>(col);
    for (Mask rk = m0; rk != 0; rk &= rk - 1) {
      const int k = std::countr_zero(rk);
      const int s1 = jw_sign(m0, k);
      const Mask m1 = m0 ^ (Mask{1} << k);
      for (Mask rl = m1; rl != 0; rl &= rl - 1) {
        const int l = std::countr_zero(rl);
        const int s2 = jw_sign(m1, l);
        out(static_cast<Eigen::Index>(m1 ^ (Mask{1} << l)), static_cast<Eigen::Index>(col)) +=
            coeff[pair_index(k, l, modes)] * static_cast<double>(s1 * s2);
      }
    }
  }
  return out;
}

/// sum_{l,m} coeff(l*M+m) c*_l c_m on the full Fock space.
inline Eigen::MatrixXcd hop_sum_matrix(const Eigen::VectorXcd& coeff, int modes) {
  const std::size_t dim = std::size_t{1} << modes;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::size_t col = 0; col < dim; ++col) {
    const Mask m0 = static_cast<Mask>(col);
    for (Mask rm = m0; rm != 0; rm &= rm - 1) {
      const int m = std::countr_zero(rm);
      const int s1 = jw_sign(m0, m);
      const Mask m1 = m0 ^ (Mask{1} << m);
      for (int l = 0; l < modes; ++l) {
        if (m1 & (Mask{1} << l)) continue;
        const int s2 = jw_sign(m1, l);
        out(static_cast<Eigen::Index>(m1 | (Mask{1} << l)), static_cast<Eigen::Index>(col)) +=
            coeff[pair_index(l, m, modes)] * static_cast<double>(s1 * s2);
      }
    }
  }
  return out;
}

/// sum_m coeff(m) c_m on the full Fock space.
inline Eigen::MatrixXcd annihilation_sum_matrix(const Eigen::VectorXcd& coeff, int modes) {
  const std::size_t dim = std::size_t{1} << modes;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::size_t col = 0; col < dim; ++col) {
    const Mask m0 = static_cast<Mask>(col);
    for (Mask rm = m0; rm != 0; rm &= rm - 1) {
      const int m = std::countr_zero(rm);
      out(static_cast<Eigen::Index>(m0 ^ (Mask{1} << m)), static_cast<Eigen::Index>(col)) +=
          coeff[m] * static_cast<double>(jw_sign(m0, m));
    }
  }
  return out;
}

/// Rank-r orthogonal projection on the mode space from a seeded Gaussian
/// draw (QR orthonormalization); deterministic in (modes, rank, seed).
inline Eigen::MatrixXcd random_projection(int modes, int rank, std::uint64_t seed) {
  if (rank < 0 || rank > modes) throw std::invalid_argument("random_projection: bad rank");
  GaussianSource g(seed);
  Eigen::MatrixXcd cols(modes, rank);
  for (Eigen::Index i = 0; i < cols.rows(); ++i)
    for (Eigen::Index j = 0; j < cols.cols(); ++j) cols(i, j) = g.complex_normal();
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(cols);
  Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(modes, rank);
  return q * q.adjoint();
}

// ---------------------------------------------------------------------------
// certificates
// ---------------------------------------------------------------------------

/// ||g2||_HS <= sqrt(5) * N.
inline CertificateReport check_hs_norm_bound(const SectorVector& psi) {
  const double lhs = norms(gamma2(psi)).hs;
  const double rhs = std::sqrt(5.0) * psi.particles;
  CertificateReport r = inequality_report("hs_norm_bound", lhs, rhs, kSpectralTol);
  r.context["M"] = psi.modes;
  r.context["N"] = psi.particles;
  return r;
}

/// ||g2T||_HS <= sqrt(5 N tr(g1 (1 - g1))).
inline CertificateReport check_truncated_hs_bound(const SectorVector& psi) {
  const Eigen::MatrixXcd g1 = gamma1(psi);
  const double lhs = norms(gamma2_truncated(psi)).hs;
  const Eigen::MatrixXcd one = Eigen::MatrixXcd::Identity(psi.modes, psi.modes);
  double slaterness = (g1 * (one - g1)).trace().real();
  if (slaterness < 0.0) slaterness = 0.0;
  const double rhs = std::sqrt(5.0 * psi.particles * slaterness);
  CertificateReport r = inequality_report("truncated_hs_bound", lhs, rhs, kSpectralTol);
  r.context["M"] = psi.modes;
  r.context["N"] = psi.particles;
  r.context["tr_g1_1mg1"] = slaterness;
  return r;
}

/// ||g1||_op <= 1 and ||g2||_op <= N; for even M, N the context also carries
/// the pairing-state saturation value N(M-N+2)/M and the gap to it.
inline CertificateReport check_op_norm_bounds(const SectorVector& psi) {
  const double op1 = norms(gamma1(psi)).op;
  const double op2 = norms(gamma2(psi)).op;
  const double n = psi.particles;
  CertificateReport r;
  r.name = "op_norm_bounds";
  r.lhs = op2;
  r.rhs = n;
  r.margin = std::min(n - op2, 1.0 - op1);
  r.pass = r.margin >= -kSpectralTol;
  r.context["tolerance"] = kSpectralTol;
  r.context["M"] = psi.modes;
  r.context["N"] = n;
  r.context["gamma1_op"] = op1;
  if (psi.modes % 2 == 0 && psi.particles % 2 == 0 && psi.modes > 0) {
    const double yang = n * (psi.modes - n + 2.0) / psi.modes;
    r.context["pairing_saturation_value"] = yang;
    r.context["pairing_saturation_gap"] = yang - op2;
  }
  return r;
}

/// S(g2 / (N(N-1))) >= 2 log N - log(5 (1 + (2N-1)/(N-1)^2)), plus the
/// quadratic lower step S >= -log tr(gbar^2) checked independently.
inline CertificateReport check_entropy_lower_bound(const SectorVector& psi) {
  const double n = psi.particles;
  if (psi.particles < 2)
    throw std::invalid_argument("check_entropy_lower_bound: needs N >= 2");
  const Eigen::MatrixXcd gbar = gamma2(psi) / (n * (n - 1.0));
  const double s = entropy(gbar);
  const double bound =
      2.0 * std::log(n) - std::log(5.0 * (1.0 + (2.0 * n - 1.0) / ((n - 1.0) * (n - 1.0))));
  const double jensen = -std::log(gbar.squaredNorm());
  CertificateReport r;
  r.name = "entropy_lower_bound";
  r.lhs = bound;
  r.rhs = s;
  r.margin = s - bound;
  r.pass = (s - bound >= -kSpectralTol) && (s - jensen >= -kSpectralTol);
  r.context["tolerance"] = kSpectralTol;
  r.context["M"] = psi.modes;
  r.context["N"] = n;
  r.context["jensen_bound"] = jensen;
  return r;
}

/// Operator identity on the full Fock space: for A antisymmetric in (k,l),
///   B_n B_n* + B_n* B_n
///     = sum_m |sum_{k,l} conj(A_{k,l,m,n}) c_l c_k|^2
///     + 4 sum_k |sum_{l,m} A_{k,l,m,n} c*_l c_m|^2
///     - 2 sum_{k,l} |sum_m A_{k,l,m,n} c_m|^2 ,
/// where |X|^2 = X* X. Checked entrywise at the assembly tolerance.
inline CertificateReport check_anticommutator_identity(const CoefficientTensor4& a, int n) {
  const int M = a.modes;
  if (!a.antisymmetrized)
    throw std::invalid_argument("check_anticommutator_identity: tensor must be antisymmetrized");
  if (M > 8) throw dimension_error("check_anticommutator_identity: modes > 8");
  if (n < 0 || n >= M) throw std::invalid_argument("check_anticommutator_identity: bad n");
  const Eigen::Index d = static_cast<Eigen::Index>(M) * M;

  const Eigen::MatrixXcd b = contracted_triple_matrix(a, n);
  const Eigen::MatrixXcd lhs = b * b.adjoint() + b.adjoint() * b;

  const std::size_t dim = std::size_t{1} << M;
  Eigen::MatrixXcd rhs = Eigen::MatrixXcd::Zero(dim, dim);
  for (int m = 0; m < M; ++m) {
    Eigen::VectorXcd coeff(d);
    for (int k = 0; k < M; ++k)
      for (int l = 0; l < M; ++l) coeff[pair_index(k, l, M)] = std::conj(a.at(k, l, m, n));
    const Eigen::MatrixXcd x = pair_annihilation_sum_matrix(coeff, M);
    rhs += x.adjoint() * x;
  }
  for (int k = 0; k < M; ++k) {
    Eigen::VectorXcd coeff(d);
    for (int l = 0; l < M; ++l)
      for (int m = 0; m < M; ++m) coeff[pair_index(l, m, M)] = a.at(k, l, m, n);
    const Eigen::MatrixXcd y = hop_sum_matrix(coeff, M);
    rhs += 4.0 * (y.adjoint() * y);
  }
  for (int k = 0; k < M; ++k)
    for (int l = 0; l < M; ++l) {
      Eigen::VectorXcd coeff(M);
      for (int m = 0; m < M; ++m) coeff[m] = a.at(k, l, m, n);
      const Eigen::MatrixXcd z = annihilation_sum_matrix(coeff, M);
      rhs -= 2.0 * (z.adjoint() * z);
    }

  const double dev = (lhs - rhs).cwiseAbs().maxCoeff();
  CertificateReport r = identity_report("anticommutator_identity", dev, kHermitianTol);
  r.context["M"] = M;
  r.context["n"] = n;
  return r;
}

/// lambda_max of (sum_n {B_n*, B_n}) restricted to the N-particle sector is
/// at most 5 N ||A||_HS^2, for arbitrary A (the contraction only sees the
/// antisymmetric part, whose norm is no larger). The full-Fock lambda_max is
/// reported as informational context without pass/fail semantics.
inline CertificateReport check_sector_anticommutator_bound(const CoefficientTensor4& a,
                                                           int particles) {
  const int M = a.modes;
  if (M > 8) throw dimension_error("check_sector_anticommutator_bound: modes > 8");
  if (particles < 0 || particles > M)
    throw std::invalid_argument("check_sector_anticommutator_bound: bad N");
  const std::size_t dim = std::size_t{1} << M;
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(dim, dim);
  for (int n = 0; n < M; ++n) {
    const Eigen::MatrixXcd b = contracted_triple_matrix(a, n);
    s += b * b.adjoint() + b.adjoint() * b;
  }
  const Eigen::MatrixXcd ssec = sector_submatrix(s, M, particles);
  const double lam = eig_hermitian(ssec).values[0];
  const double rhs = 5.0 * particles * a.hs_norm_sq();
  CertificateReport r = inequality_report("sector_anticommutator_bound", lam, rhs, kSpectralTol);
  r.context["M"] = M;
  r.context["N"] = particles;
  r.context["tensor_hs_sq"] = a.hs_norm_sq();
  r.context["full_fock_lambda_max"] = eig_hermitian(s).values[0];
  return r;
}

/// |tr(A g2)| <= sqrt(5) N ||A||_HS, with tr(A g2) computed twice: as a
/// matrix trace and through the contraction route
/// tr(A g2) = -sum_n <B_n Psi, c_n Psi>; both must agree to 1e-10.
inline CertificateReport check_trace_duality(const SectorVector& psi,
                                             const CoefficientTensor4& a) {
  if (a.modes != psi.modes) throw std::invalid_argument("check_trace_duality: modes mismatch");
  const Eigen::MatrixXcd g2 = gamma2(psi);
  const std::complex<double> tr_direct = (a.entries * g2).trace();
  std::complex<double> acc = 0.0;
  for (int n = 0; n < psi.modes; ++n) {
    const SectorVector bn_psi = apply_contracted_triple(a, n, psi);
    const SectorVector cn_psi = apply_annihilator(psi, n);
    acc += bn_psi.amps.dot(cn_psi.amps);
  }
  const std::complex<double> tr_contracted = -acc;
  const double route_dev = std::abs(tr_direct - tr_contracted);
  const double lhs = std::abs(tr_direct);
  const double rhs = std::sqrt(5.0) * psi.particles * a.hs_norm();
  CertificateReport r = inequality_report("trace_duality", lhs, rhs, kSpectralTol);
  r.pass = r.pass && route_dev <= kHermitianTol;
  r.context["M"] = psi.modes;
  r.context["N"] = psi.particles;
  r.context["route_deviation"] = route_dev;
  r.context["identity_tolerance"] = kHermitianTol;
  return r;
}

namespace detail {
/// Flattened product vector, (phi1 (x) phi2)_{(k,l)} = phi1_k phi2_l.
inline Eigen::VectorXcd pair_product_vector(const Eigen::VectorXcd& phi1,
                                            const Eigen::VectorXcd& phi2) {
  const int M = static_cast<int>(phi1.size());
  Eigen::VectorXcd out(static_cast<Eigen::Index>(M) * M);
  for (int k = 0; k < M; ++k)
    for (int l = 0; l < M; ++l) out[pair_index(k, l, M)] = phi1[k] * phi2[l];
  return out;
}

/// <Psi, c(g1 phi2) c*(psi1) c*(psi2) c(phi1) Psi>
///  - <Psi, c*(psi1) c*(psi2) c(phi1) c((1-g1) phi2) Psi>.
inline std::complex<double> truncated_bilinear_rhs(const SectorVector& psi,
                                                   const Eigen::MatrixXcd& g1,
                                                   const Eigen::VectorXcd& phi1,
                                                   const Eigen::VectorXcd& phi2,
                                                   const Eigen::VectorXcd& psi1,
                                                   const Eigen::VectorXcd& psi2) {
  const Eigen::MatrixXcd one = Eigen::MatrixXcd::Identity(g1.rows(), g1.cols());
  SectorVector w = apply_field_annihilator(psi, phi1);
  w = apply_field_creator(w, psi2);
  w = apply_field_creator(w, psi1);
  w = apply_field_annihilator(w, g1 * phi2);
  const std::complex<double> t1 = psi.amps.dot(w.amps);
  SectorVector u = apply_field_annihilator(psi, (one - g1) * phi2);
  u = apply_field_annihilator(u, phi1);
  u = apply_field_creator(u, psi2);
  u = apply_field_creator(u, psi1);
  const std::complex<double> t2 = psi.amps.dot(u.amps);
  return t1 - t2;
}
}  // namespace detail

/// Bilinear identity defining g2T:
///   <phi1 (x) phi2, g2T psi1 (x) psi2>
///     = <Psi, c(g1 phi2) c*(psi1) c*(psi2) c(phi1) Psi>
///     - <Psi, c*(psi1) c*(psi2) c(phi1) c((1 - g1) phi2) Psi>.
/// Checked on every basis 4-tuple for M <= 5, else on `samples` seeded
/// random unit 4-tuples.
inline CertificateReport check_truncated_bilinear_identity(const SectorVector& psi,
                                                           int samples = 50,
                                                           std::uint64_t seed = 2026) {
  const int M = psi.modes;
  const Eigen::MatrixXcd g1 = gamma1(psi);
  const Eigen::MatrixXcd g2t = gamma2_truncated(psi);
  double dev = 0.0;
  double tuples = 0.0;
  if (M <= 5) {
    for (int k = 0; k < M; ++k)
      for (int l = 0; l < M; ++l)
        for (int m = 0; m < M; ++m)
          for (int n = 0; n < M; ++n) {
            SectorVector w = apply_annihilator(psi, k);
            w = apply_creator(w, n);
            w = apply_creator(w, m);
            w = apply_field_annihilator(w, g1.col(l));
            const std::complex<double> t1 = psi.amps.dot(w.amps);
            SectorVector u = apply_field_annihilator(
                psi, (Eigen::MatrixXcd::Identity(M, M) - g1).col(l));
            u = apply_annihilator(u, k);
            u = apply_creator(u, n);
            u = apply_creator(u, m);
            const std::complex<double> t2 = psi.amps.dot(u.amps);
            const std::complex<double> lhs = g2t(pair_index(k, l, M), pair_index(m, n, M));
            dev = std::max(dev, std::abs(lhs - (t1 - t2)));
            tuples += 1.0;
          }
  } else {
    GaussianSource g(seed);
    auto unit_vector = [&]() {
      Eigen::VectorXcd v(M);
      for (int i = 0; i < M; ++i) v[i] = g.complex_normal();
      v.normalize();
      return v;
    };
    for (int s = 0; s < samples; ++s) {
      const Eigen::VectorXcd phi1 = unit_vector();
      const Eigen::VectorXcd phi2 = unit_vector();
      const Eigen::VectorXcd psi1 = unit_vector();
      const Eigen::VectorXcd psi2 = unit_vector();
      const std::complex<double> lhs = detail::pair_product_vector(phi1, phi2).dot(
          g2t * detail::pair_product_vector(psi1, psi2));
      const std::complex<double> rhs =
          detail::truncated_bilinear_rhs(psi, g1, phi1, phi2, psi1, psi2);
      dev = std::max(dev, std::abs(lhs - rhs));
      tuples += 1.0;
    }
  }
  CertificateReport r = identity_report("truncated_bilinear_identity", dev, kHermitianTol);
  r.context["M"] = M;
  r.context["N"] = psi.particles;
  r.context["tuples"] = tuples;
  return r;
}

/// For a projection X on the mode space:
///   tr((X (x) X) g2T) >= -tr(X g1) * min{1, 7.554 sqrt(tr(X g1 (1 - g1)))}.
inline CertificateReport check_bach_lower_bound(const SectorVector& psi,
                                                const Eigen::MatrixXcd& x) {
  const int M = psi.modes;
  if (x.rows() != M || x.cols() != M)
    throw std::invalid_argument("check_bach_lower_bound: projection must be M x M");
  if (hermitian_deviation(x) > kHermitianTol ||
      (x * x - x).cwiseAbs().maxCoeff() > kHermitianTol)
    throw std::invalid_argument("check_bach_lower_bound: X is not an orthogonal projection");
  const Eigen::MatrixXcd g1 = gamma1(psi);
  const Eigen::MatrixXcd g2t = gamma2_truncated(psi);
  const double quantity = (kron(x, x) * g2t).trace().real();
  const double tr_xg1 = (x * g1).trace().real();
  double slaterness_x = (x * (g1 - g1 * g1)).trace().real();
  if (slaterness_x < 0.0) slaterness_x = 0.0;
  const double bound = -tr_xg1 * std::min(1.0, 7.554 * std::sqrt(slaterness_x));
  CertificateReport r = inequality_report("bach_lower_bound", bound, quantity, kSpectralTol);
  r.context["M"] = M;
  r.context["N"] = psi.particles;
  r.context["tr_X_gamma1"] = tr_xg1;
  r.context["tr_X_slaterness"] = slaterness_x;
  return r;
}

}  // namespace frdm
