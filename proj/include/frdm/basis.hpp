#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "frdm/errors.hpp"

namespace frdm {

/// Occupation-number basis vector: bit k set <=> mode k occupied.
using Mask = std::uint32_t;

inline constexpr int kMaxSectorModes = 30;  // cap for sector enumeration
inline constexpr int kMaxFockModes = 14;    // cap for dense full-Fock matrices
inline constexpr std::uint64_t kDefaultSectorCap = 1'000'000;

/// Exact binomial coefficient; 0 when k is out of range.
inline std::uint64_t binomial(int n, int k) {
  if (n < 0 || k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) {
    // multiply-then-divide stays exact: the running value is C(n-k+i, i)
    r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  }
  return r;
}

inline int particle_count(Mask m) { return std::popcount(m); }

/// Jordan-Wigner parity factor: (-1)^(number of occupied modes strictly below `mode`).
inline int jw_sign(Mask m, int mode) {
  Mask below = m & ((Mask{1} << mode) - 1);
  return (std::popcount(below) & 1) ? -1 : 1;
}

struct SignedMask {
  int sign;   // +1 or -1
  Mask mask;  // resulting occupation mask
};

/// c_mode applied to a basis mask; empty when the mode is unoccupied.
inline std::optional<SignedMask> apply_annihilation(int mode, Mask m) {
  Mask bit = Mask{1} << mode;
  if (!(m & bit)) return std::nullopt;
  return SignedMask{jw_sign(m, mode), static_cast<Mask>(m ^ bit)};
}

/// c*_mode applied to a basis mask; empty when the mode is already occupied.
inline std::optional<SignedMask> apply_creation(int mode, Mask m) {
  Mask bit = Mask{1} << mode;
  if (m & bit) return std::nullopt;
  return SignedMask{jw_sign(m, mode), static_cast<Mask>(m | bit)};
}

/// Fixed-particle-number sector basis: all popcount-N masks on M modes in
/// ascending integer order, with O(N) ranking via the combinatorial number
/// system (no lookup table).
class SectorBasis {
 public:
  SectorBasis(int modes, int particles, std::uint64_t dim_cap = kDefaultSectorCap)
      : modes_(modes), particles_(particles) {
    if (modes < 0 || modes > kMaxSectorModes)
      throw dimension_error("SectorBasis: modes must be in [0, " +
                            std::to_string(kMaxSectorModes) + "], got " + std::to_string(modes));
    if (particles < 0 || particles > modes)
      throw std::invalid_argument("SectorBasis: particles must be in [0, modes], got N=" +
                                  std::to_string(particles) + " for M=" + std::to_string(modes));
    const std::uint64_t dim = binomial(modes, particles);
    if (dim > dim_cap)
      throw dimension_error("SectorBasis: dimension C(" + std::to_string(modes) + "," +
                            std::to_string(particles) + ") = " + std::to_string(dim) +
                            " exceeds cap " + std::to_string(dim_cap));
    masks_.reserve(dim);
    Mask v = (particles == 0) ? Mask{0} : static_cast<Mask>((Mask{1} << particles) - 1);
    masks_.push_back(v);
    for (std::uint64_t i = 1; i < dim; ++i) {
      // Gosper's hack: next integer with the same popcount
      Mask t = v | (v - 1);
      v = (t + 1) | (((~t & (t + 1)) - 1) >> (std::countr_zero(v) + 1));
      masks_.push_back(v);
    }
  }

  int modes() const { return modes_; }
  int particles() const { return particles_; }
  std::size_t size() const { return masks_.size(); }
  const std::vector<Mask>& masks() const { return masks_; }

  /// rank -> mask
  Mask mask(std::size_t rank) const { return masks_[rank]; }

  /// mask -> rank (inverse of mask()); combinatorial number system, so no
  /// search. Requires popcount(m) == particles and all bits below `modes`.
  std::size_t rank(Mask m) const {
    std::size_t r = 0;
    int j = 0;
    for (Mask rest = m; rest != 0; rest &= rest - 1) {
      int pos = std::countr_zero(rest);
      ++j;
      r += binomial(pos, j);
    }
    return r;
  }

 private:
  int modes_;
  int particles_;
  std::vector<Mask> masks_;
};

/// All popcount-`particles` masks on `modes` modes, ascending by integer value.
inline SectorBasis enumerate_sector(int modes, int particles,
                                    std::uint64_t dim_cap = kDefaultSectorCap) {
  return SectorBasis(modes, particles, dim_cap);
}

}  // namespace frdm
