#pragma once

// Umbrella header: exact fermionic reduced density matrices on a
// finite-dimensional mode space, their norm/entropy certificates, and a
// numerical probe of the extremal pair-matrix Hilbert-Schmidt norm.

#include "frdm/basis.hpp"
#include "frdm/certificates.hpp"
#include "frdm/errors.hpp"
#include "frdm/extremal.hpp"
#include "frdm/fock.hpp"
#include "frdm/rdm.hpp"
#include "frdm/rng.hpp"
#include "frdm/serialize.hpp"
#include "frdm/spectral.hpp"
#include "frdm/states.hpp"
#include "frdm/tensor4.hpp"
