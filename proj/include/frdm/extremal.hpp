#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <set>
#include <utility>
#include <vector>

#include "frdm/rdm.hpp"
#include "frdm/states.hpp"

namespace frdm {

struct OptimizerConfig {
  int max_iters = 2000;
  double step_size = 0.1;
  double tol_grad = 1e-8;
  int restarts = 8;  // random initializations, on top of the structured ones
  std::uint64_t seed = 1;
};

struct ExtremalResult {
  double best_value = 0.0;  // ||g2||_HS at the best state found
  SectorVector best_state;
  std::vector<std::pair<int, double>> trajectory;  // best run's (iter, ||g2||_HS)
  bool converged = false;
  // best_value > sqrt(5) N + 1e-6 would falsify a proven bound; it is flagged
  // loudly instead of silently passing through.
  bool bound_violated = false;
};

namespace detail {

struct ObjectiveData {
  std::vector<Eigen::VectorXcd> v;  // pair intermediates c_l c_k psi, k < l
  Eigen::MatrixXcd gram;            // gram(a, b) = <v_b, v_a>
  double f = 0.0;                   // ||g2||_HS^2 = 4 ||gram||_HS^2
};

/// The quartic sum_{pairs} |<v_b, v_a>|^2 evaluated on the amplitudes as
/// given (no normalization applied), so directional derivatives are exact.
inline ObjectiveData objective_data(const SectorVector& psi) {
  const int M = psi.modes;
  ObjectiveData d;
  d.v = pair_annihilated_vectors(psi);
  const Eigen::Index npairs = static_cast<Eigen::Index>(d.v.size());
  d.gram.resize(npairs, npairs);
  for (Eigen::Index a = 0; a < npairs; ++a)
    for (Eigen::Index b = 0; b < npairs; ++b)
      d.gram(a, b) = d.v[static_cast<std::size_t>(b)].dot(d.v[static_cast<std::size_t>(a)]);
  d.f = 4.0 * d.gram.squaredNorm();
  (void)M;
  return d;
}

}  // namespace detail

/// f(Psi) = ||g2||_HS^2, evaluated directly from the pair-intermediate Gram
/// matrix (no eigendecomposition). Meaningful as a density-matrix norm when
/// the input is unit; the zero region is excluded.
inline double objective(const SectorVector& psi) {
  if (psi.norm() < 0.5)
    throw normalization_error("objective: state norm below 0.5 (zero region excluded)");
  return detail::objective_data(psi).f;
}

/// Gradient of f with respect to the amplitudes, packed as a complex vector:
/// Re(grad_i) = df/d(Re amps_i) and Im(grad_i) = df/d(Im amps_i). Matches
/// central finite differences of `objective`.
inline Eigen::VectorXcd gradient(const SectorVector& psi) {
  if (psi.norm() < 0.5)
    throw normalization_error("gradient: state norm below 0.5 (zero region excluded)");
  const int M = psi.modes;
  detail::ObjectiveData d = detail::objective_data(psi);
  Eigen::VectorXcd grad = Eigen::VectorXcd::Zero(psi.amps.size());
  if (psi.particles < 2) return grad;
  // d f / d conj(amps) = 8 sum_{m<n} c*_m c*_n sum_{k<l} gram(b, a) v_a, and the
  // packed real gradient doubles that once more.
  for (int m = 0; m < M; ++m)
    for (int n = m + 1; n < M; ++n) {
      const std::size_t b = ordered_pair_rank(m, n, M);
      Eigen::VectorXcd u = Eigen::VectorXcd::Zero(d.v[b].size());
      for (std::size_t a = 0; a < d.v.size(); ++a)
        u += d.gram(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(a)) * d.v[a];
      SectorVector us{psi.modes, psi.particles - 2, u};
      SectorVector created = apply_creator(apply_creator(us, n), m);
      grad += 16.0 * created.amps;
    }
  return grad;
}

/// Projected gradient ascent for f on the unit sphere, with step halving on
/// objective decrease. Runs cfg.restarts seeded random initializations plus a
/// determinant one and (for even M, N) a pairing one, and keeps the best run
/// by value (first such run on ties).
inline ExtremalResult maximize(int modes, int particles, const OptimizerConfig& cfg = {}) {
  std::vector<SectorVector> inits;
  for (int r = 0; r < cfg.restarts; ++r)
    inits.push_back(random_state(modes, particles, cfg.seed + static_cast<std::uint64_t>(r)));
  std::set<int> occ;
  for (int k = 0; k < particles; ++k) occ.insert(k);
  inits.push_back(slater(modes, occ));
  if (modes % 2 == 0 && particles % 2 == 0) inits.push_back(yang_pairing(modes, particles));

  ExtremalResult best;
  bool have_best = false;
  for (const SectorVector& init : inits) {
    SectorVector x = init;
    double fx = detail::objective_data(x).f;
    double step = cfg.step_size;
    std::vector<std::pair<int, double>> traj{{0, std::sqrt(fx)}};
    bool converged = false;
    for (int iter = 1; iter <= cfg.max_iters; ++iter) {
      const Eigen::VectorXcd g = gradient(x);
      const Eigen::VectorXcd pg = g - x.amps * x.amps.dot(g).real();
      if (pg.norm() < cfg.tol_grad) {
        converged = true;
        break;
      }
      bool accepted = false;
      while (step > 1e-14) {
        SectorVector cand{x.modes, x.particles, (x.amps + step * pg).normalized()};
        const double fc = detail::objective_data(cand).f;
        if (fc >= fx - 1e-12 * std::max(1.0, std::abs(fx))) {
          x = std::move(cand);
          fx = fc;
          accepted = true;
          break;
        }
        step *= 0.5;
      }
      if (!accepted) break;  // step underflow: stalled at a stationary point
      traj.emplace_back(iter, std::sqrt(fx));
    }
    const double value = std::sqrt(fx);
    if (!have_best || value > best.best_value) {
      best.best_value = value;
      best.best_state = x;
      best.trajectory = std::move(traj);
      best.converged = converged;
      have_best = true;
    }
  }
  best.bound_violated = best.best_value > std::sqrt(5.0) * particles + 1e-6;
  return best;
}

}  // namespace frdm
