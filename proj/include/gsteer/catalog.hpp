#pragma once

// Reference instances with known classifications.

#include "gsteer/channels.hpp"
#include "gsteer/states.hpp"
#include "gsteer/superchannels.hpp"

namespace gsteer::catalog {

/// (1+1)-mode channel K = diag(1.03, 1.03, 0.1, 0.1), M = I: steering-annihilating,
/// yet the PSD sufficient test for annihilation fails and it is not steering-breaking.
GaussianChannel annihilating_not_breaking();

/// Single-mode attenuator (cos theta, thermal noise n_th) on A, identity on B.
GaussianChannel attenuator_on_a(double cos_theta = 0.5, double thermal_noise = 1.0);

/// Constant channel onto a two-mode squeezed state of squeezing r (steerable for r > 0).
GaussianChannel constant_squeezed(double r = 2.0);

/// (1+1)-mode superchannel with E = I that satisfies the maximal-unsteerable
/// sufficient conditions but not the unsteerable one.
GaussianSuperchannel mus_not_us_superchannel();

}  // namespace gsteer::catalog
