#pragma once

#include <Eigen/Dense>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "frdm/basis.hpp"
#include "frdm/errors.hpp"

namespace frdm {

/// One ladder operator in a word: c*_mode when dagger, else c_mode.
struct LadderOp {
  bool dagger;
  int mode;
};

/// Apply an operator word to a basis mask. The word is written in operator
/// order (leftmost entry acts last), so application runs right to left.
inline std::optional<SignedMask> apply_word(std::span<const LadderOp> word, Mask m) {
  int sign = 1;
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    auto r = it->dagger ? apply_creation(it->mode, m) : apply_annihilation(it->mode, m);
    if (!r) return std::nullopt;
    sign *= r->sign;
    m = r->mask;
  }
  return SignedMask{sign, m};
}

/// Dense matrix of an operator word on the full Fock space (dimension
/// 2^modes), basis masks in ascending integer order.
inline Eigen::MatrixXcd operator_matrix(std::span<const LadderOp> word, int modes) {
  if (modes < 0 || modes > kMaxFockModes)
    throw dimension_error("operator_matrix: modes must be in [0, " +
                          std::to_string(kMaxFockModes) + "], got " + std::to_string(modes));
  const std::size_t dim = std::size_t{1} << modes;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::size_t col = 0; col < dim; ++col) {
    if (auto r = apply_word(word, static_cast<Mask>(col)))
      out(static_cast<Eigen::Index>(r->mask), static_cast<Eigen::Index>(col)) +=
          static_cast<double>(r->sign);
  }
  return out;
}

inline Eigen::MatrixXcd operator_matrix(std::initializer_list<LadderOp> word, int modes) {
  return operator_matrix(std::span<const LadderOp>(word.begin(), word.size()), modes);
}

/// Rows/columns of a full-Fock matrix restricted to the popcount-`particles`
/// sector, in sector rank order.
inline Eigen::MatrixXcd sector_submatrix(const Eigen::MatrixXcd& fock_matrix, int modes,
                                         int particles) {
  const Eigen::Index dim = Eigen::Index{1} << modes;
  if (fock_matrix.rows() != dim || fock_matrix.cols() != dim)
    throw std::invalid_argument("sector_submatrix: matrix dimension != 2^modes");
  SectorBasis basis = enumerate_sector(modes, particles);
  Eigen::MatrixXcd out(basis.size(), basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j)
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          fock_matrix(static_cast<Eigen::Index>(basis.mask(i)),
                      static_cast<Eigen::Index>(basis.mask(j)));
  return out;
}

}  // namespace frdm
