#pragma once

#include <cstdint>

#include "mproj/pipeline.hpp"

namespace mproj {

struct SyntheticOptions {
  double noise_sigma = 12.0;
};

/// Two-class texture set: +1 are sinusoidal gratings near 45 degrees with
/// random phase, frequency and contrast; -1 are Gaussian blob fields or
/// checkerboards. Both get the same additive noise.
/// Pixels are rounded and clamped to [0, 255]. Samples alternate +1, -1.
Dataset gen_synthetic(std::size_t n_per_class, Eigen::Index rows, Eigen::Index cols, std::uint64_t seed,
                      const SyntheticOptions& options = {});

}  // namespace mproj
