#include "gsteer/catalog.hpp"

#include <cmath>

namespace gsteer::catalog {

GaussianChannel annihilating_not_breaking() {
  Matrix k = Vector((Vector(4) << 1.03, 1.03, 0.1, 0.1).finished()).asDiagonal();
  return GaussianChannel(ModePartition(1, 1), std::move(k), Matrix::Identity(4, 4));
}

GaussianChannel attenuator_on_a(double cos_theta, double thermal_noise) {
  const GaussianChannel single = attenuator(std::acos(cos_theta), thermal_noise);
  return tensor_with_identity(single, 1, Side::kA);
}

GaussianChannel constant_squeezed(double r) { return constant_channel(two_mode_squeezed(r)); }

GaussianSuperchannel mus_not_us_superchannel() {
  Matrix a(4, 4);
  a << 0.170929, -0.942009, -0.609808, -0.108889,
       1.301268, 0.599464, 0.666952, -0.800351,
       -0.151061, -0.241749, 0.938864, 1.130728,
       0.441668, 1.125889, -1.767416, 0.418528;
  Matrix y(4, 4);
  y << 5.890063, -1.845370, 2.502275, -1.763982,
       -1.845370, 5.297160, -2.573896, -2.759869,
       2.502275, -2.573896, 4.270381, 0.944184,
       -1.763982, -2.759869, 0.944184, 3.732230;
  return GaussianSuperchannel(ModePartition(1, 1), std::move(a), Matrix::Identity(4, 4), std::move(y),
                              Vector::Zero(4));
}

}  // namespace gsteer::catalog
