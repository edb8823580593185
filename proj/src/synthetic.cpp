#include "mproj/synthetic.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

namespace mproj {

namespace {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

Image grating(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  // Near-fixed orientation and a narrow band: the descriptors are
  // position-specific, so only the phase is left fully random.
  const double theta = std::numbers::pi / 4 + uniform(rng, -0.05, 0.05);
  const double freq = uniform(rng, 0.11, 0.13);
  const double phase = uniform(rng, 0.0, 2.0 * std::numbers::pi);
  const double amp = uniform(rng, 40.0, 70.0);
  Image img(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      const double t = double(c) * std::cos(theta) + double(r) * std::sin(theta);
      img(r, c) = 128.0 + amp * std::sin(2.0 * std::numbers::pi * freq * t + phase);
    }
  }
  return img;
}

Image blobs(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  Image img = Image::Constant(rows, cols, 128.0);
  const int count = std::uniform_int_distribution<int>(4, 9)(rng);
  for (int k = 0; k < count; ++k) {
    const double cr = uniform(rng, 0.0, double(rows));
    const double cc = uniform(rng, 0.0, double(cols));
    const double sigma = uniform(rng, 3.0, 8.0);
    const double amp = uniform(rng, 40.0, 80.0) * (uniform(rng, 0.0, 1.0) < 0.5 ? -1.0 : 1.0);
    for (Eigen::Index r = 0; r < rows; ++r) {
      for (Eigen::Index c = 0; c < cols; ++c) {
        const double d2 = (double(r) - cr) * (double(r) - cr) + (double(c) - cc) * (double(c) - cc);
        img(r, c) += amp * std::exp(-d2 / (2.0 * sigma * sigma));
      }
    }
  }
  return img;
}

Image checkerboard(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  const int cell = std::uniform_int_distribution<int>(4, 10)(rng);
  const int off_r = std::uniform_int_distribution<int>(0, cell - 1)(rng);
  const int off_c = std::uniform_int_distribution<int>(0, cell - 1)(rng);
  const double amp = uniform(rng, 40.0, 70.0);
  Image img(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      const bool odd = ((r + off_r) / cell + (c + off_c) / cell) % 2 != 0;
      img(r, c) = 128.0 + (odd ? amp : -amp);
    }
  }
  return img;
}

}  // namespace

Dataset gen_synthetic(std::size_t n_per_class, Eigen::Index rows, Eigen::Index cols, std::uint64_t seed,
                      const SyntheticOptions& options) {
  if (rows < 1 || cols < 1) throw InputError("gen_synthetic: resolution must be positive");
  Rng rng(seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  Dataset ds;
  ds.rows = rows;
  ds.cols = cols;
  for (std::size_t i = 0; i < 2 * n_per_class; ++i) {
    const int label = i % 2 == 0 ? 1 : -1;
    Image img;
    if (label == 1) img = grating(rng, rows, cols);
    else img = uniform(rng, 0.0, 1.0) < 0.5 ? blobs(rng, rows, cols) : checkerboard(rng, rows, cols);
    for (Eigen::Index k = 0; k < img.size(); ++k) {
      const double px = img.data()[k] + options.noise_sigma * noise(rng);
      img.data()[k] = std::clamp(std::round(px), 0.0, 255.0);
    }
    char id[32];
    std::snprintf(id, sizeof id, "syn_%05zu", i);
    ds.samples.push_back(Sample{std::move(img), label, id});
  }
  return ds;
}

}  // namespace mproj
