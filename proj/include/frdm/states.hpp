#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstdint>
#include <set>
#include <string>

#include "frdm/basis.hpp"
#include "frdm/errors.hpp"
#include "frdm/rng.hpp"

namespace frdm {

/// N-particle state on M modes: amplitudes over the sector basis in rank
/// order (masks ascending). `particles` may sit outside [0, modes] only for
/// the zero-dimensional sectors produced by ladder-operator chains.
struct SectorVector {
  int modes = 0;
  int particles = 0;
  Eigen::VectorXcd amps;

  double norm() const { return amps.norm(); }
  bool is_normalized(double tol = 1e-12) const { return std::abs(norm() - 1.0) <= tol; }
};

inline void require_normalized(const SectorVector& v, double tol = 1e-8) {
  const double n = v.norm();
  if (std::abs(n - 1.0) > tol)
    throw normalization_error("state norm " + std::to_string(n) + " deviates from 1 beyond " +
                              std::to_string(tol));
}

/// Zero vector of the (modes, particles) sector; zero-dimensional when the
/// particle number is outside [0, modes].
inline SectorVector sector_zero(int modes, int particles) {
  const std::uint64_t dim =
      (particles >= 0 && particles <= modes) ? binomial(modes, particles) : 0;
  return SectorVector{modes, particles,
                      Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim))};
}

// ---------------------------------------------------------------------------
// state families
// ---------------------------------------------------------------------------

/// Determinant state c*_{i1} ... c*_{iN} |0> for the given occupied set
/// (ascending application order; amplitude +1 on the single mask).
inline SectorVector slater(int modes, const std::set<int>& occupied) {
  for (int k : occupied)
    if (k < 0 || k >= modes)
      throw std::invalid_argument("slater: occupied mode " + std::to_string(k) +
                                  " outside [0, " + std::to_string(modes) + ")");
  SectorVector out = sector_zero(modes, static_cast<int>(occupied.size()));
  Mask m = 0;
  for (int k : occupied) m |= Mask{1} << k;
  out.amps[static_cast<Eigen::Index>(enumerate_sector(modes, out.particles).rank(m))] = 1.0;
  return out;
}

/// Pair condensate normalize((b*)^{N/2} |0>) with b* = sum_j c*_{2j} c*_{2j+1}:
/// a uniform superposition of all C(M/2, N/2) pair-union masks (pair operators
/// commute and each carries a + sign, so every amplitude is equal).
inline SectorVector yang_pairing(int modes, int particles) {
  if (modes % 2 != 0 || particles % 2 != 0)
    throw parity_error("yang_pairing: M and N must both be even, got M=" +
                       std::to_string(modes) + " N=" + std::to_string(particles));
  if (particles < 0 || particles > modes)
    throw std::invalid_argument("yang_pairing: need 0 <= N <= M");
  SectorBasis pairs = enumerate_sector(modes / 2, particles / 2);
  SectorBasis basis = enumerate_sector(modes, particles);
  SectorVector out = sector_zero(modes, particles);
  const double amp = 1.0 / std::sqrt(static_cast<double>(pairs.size()));
  for (Mask pm : pairs.masks()) {
    Mask m = 0;
    for (Mask rest = pm; rest != 0; rest &= rest - 1)
      m |= Mask{0b11} << (2 * std::countr_zero(rest));
    out.amps[static_cast<Eigen::Index>(basis.rank(m))] = amp;
  }
  return out;
}

/// Normalized state with independent complex-Gaussian amplitudes; identical
/// output for identical (modes, particles, seed).
inline SectorVector random_state(int modes, int particles, std::uint64_t seed) {
  SectorVector out = sector_zero(modes, particles);
  if (particles < 0 || particles > modes)
    throw std::invalid_argument("random_state: need 0 <= N <= M");
  GaussianSource g(seed);
  for (Eigen::Index i = 0; i < out.amps.size(); ++i) out.amps[i] = g.complex_normal();
  const double n = out.amps.norm();
  if (n == 0.0) throw normalization_error("random_state: zero draw");
  out.amps /= n;
  return out;
}

/// normalize((1-t) * slater(M, {0..N-1}) + t * random_state(M, N, seed));
/// t = 0 reproduces the determinant state exactly, t = 1 the random state.
inline SectorVector near_slater(int modes, int particles, double t, std::uint64_t seed) {
  std::set<int> occ;
  for (int k = 0; k < particles; ++k) occ.insert(k);
  SectorVector s = slater(modes, occ);
  SectorVector r = random_state(modes, particles, seed);
  SectorVector out{modes, particles, (1.0 - t) * s.amps + t * r.amps};
  const double n = out.amps.norm();
  if (n < 1e-12)
    throw normalization_error("near_slater: interpolated vector is numerically zero");
  out.amps /= n;
  return out;
}

// ---------------------------------------------------------------------------
// ladder operators on sector vectors
// ---------------------------------------------------------------------------

/// c_mode: sector N -> N-1.
inline SectorVector apply_annihilator(const SectorVector& in, int mode) {
  if (mode < 0 || mode >= in.modes) throw std::invalid_argument("apply_annihilator: bad mode");
  SectorVector out = sector_zero(in.modes, in.particles - 1);
  if (in.amps.size() == 0 || out.amps.size() == 0) return out;
  SectorBasis src = enumerate_sector(in.modes, in.particles);
  SectorBasis dst = enumerate_sector(in.modes, in.particles - 1);
  for (std::size_t i = 0; i < src.size(); ++i) {
    if (auto r = apply_annihilation(mode, src.mask(i)))
      out.amps[static_cast<Eigen::Index>(dst.rank(r->mask))] +=
          static_cast<double>(r->sign) * in.amps[static_cast<Eigen::Index>(i)];
  }
  return out;
}

/// c*_mode: sector N -> N+1.
inline SectorVector apply_creator(const SectorVector& in, int mode) {
  if (mode < 0 || mode >= in.modes) throw std::invalid_argument("apply_creator: bad mode");
  SectorVector out = sector_zero(in.modes, in.particles + 1);
  if (in.amps.size() == 0 || out.amps.size() == 0) return out;
  SectorBasis src = enumerate_sector(in.modes, in.particles);
  SectorBasis dst = enumerate_sector(in.modes, in.particles + 1);
  for (std::size_t i = 0; i < src.size(); ++i) {
    if (auto r = apply_creation(mode, src.mask(i)))
      out.amps[static_cast<Eigen::Index>(dst.rank(r->mask))] +=
          static_cast<double>(r->sign) * in.amps[static_cast<Eigen::Index>(i)];
  }
  return out;
}

/// Smeared annihilator c(phi) = sum_j conj(phi_j) c_j (antilinear in phi), so
/// that {c(phi), c*(psi)} = <phi, psi>.
inline SectorVector apply_field_annihilator(const SectorVector& in, const Eigen::VectorXcd& phi) {
  if (phi.size() != in.modes)
    throw std::invalid_argument("apply_field_annihilator: coefficient length != modes");
  SectorVector out = sector_zero(in.modes, in.particles - 1);
  if (in.amps.size() == 0 || out.amps.size() == 0) return out;
  SectorBasis src = enumerate_sector(in.modes, in.particles);
  SectorBasis dst = enumerate_sector(in.modes, in.particles - 1);
  for (std::size_t i = 0; i < src.size(); ++i) {
    const Mask m = src.mask(i);
    const std::complex<double> a = in.amps[static_cast<Eigen::Index>(i)];
    for (Mask rest = m; rest != 0; rest &= rest - 1) {
      const int j = std::countr_zero(rest);
      const std::complex<double> c = std::conj(phi[j]);
      if (c == std::complex<double>{}) continue;
      out.amps[static_cast<Eigen::Index>(dst.rank(m ^ (Mask{1} << j)))] +=
          c * static_cast<double>(jw_sign(m, j)) * a;
    }
  }
  return out;
}

/// Smeared creator c*(psi) = sum_j psi_j c*_j (linear in psi).
inline SectorVector apply_field_creator(const SectorVector& in, const Eigen::VectorXcd& psi) {
  if (psi.size() != in.modes)
    throw std::invalid_argument("apply_field_creator: coefficient length != modes");
  SectorVector out = sector_zero(in.modes, in.particles + 1);
  if (in.amps.size() == 0 || out.amps.size() == 0) return out;
  SectorBasis src = enumerate_sector(in.modes, in.particles);
  SectorBasis dst = enumerate_sector(in.modes, in.particles + 1);
  for (std::size_t i = 0; i < src.size(); ++i) {
    const Mask m = src.mask(i);
    const std::complex<double> a = in.amps[static_cast<Eigen::Index>(i)];
    for (int j = 0; j < in.modes; ++j) {
      if (m & (Mask{1} << j)) continue;
      if (psi[j] == std::complex<double>{}) continue;
      out.amps[static_cast<Eigen::Index>(dst.rank(m | (Mask{1} << j)))] +=
          psi[j] * static_cast<double>(jw_sign(m, j)) * a;
    }
  }
  return out;
}

}  // namespace frdm
