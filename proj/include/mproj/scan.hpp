#pragma once

// Per-pixel loop implementations of the M-HOG stages. They share no code with
// the operator-based path and serve as its oracle and as the scanning
// baseline in benchmarks.

#include <cmath>

#include "mproj/mhog.hpp"

namespace mproj::scan {

/// X(r + dr, c + dc) - X(r, c), circular.
template <typename Scalar>
ImageMatrix<Scalar> difference(const ImageMatrix<Scalar>& x, Offset off) {
  const Eigen::Index rows = x.rows(), cols = x.cols();
  ImageMatrix<Scalar> out(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      const Eigen::Index sr = ((r + off.dr) % rows + rows) % rows;
      const Eigen::Index sc = ((c + off.dc) % cols + cols) % cols;
      out(r, c) = x(sr, sc) - x(r, c);
    }
  }
  return out;
}

template <typename Scalar>
DirectionalStack<Scalar> gradient_stack(const ImageMatrix<Scalar>& x) {
  if (x.rows() < 5 || x.cols() < 5) throw InputError("gradient_stack: image must be at least 5x5, got " + shape_string(x));
  DirectionalStack<Scalar> out;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = difference(x, kGradientOffsets[i]);
  return out;
}

/// Mean over each cell x cell window, windows stepping by cell - overlap;
/// trailing positions no window reaches are dropped.
template <typename Scalar>
ImageMatrix<Scalar> window_mean(const ImageMatrix<Scalar>& x, Eigen::Index cell, Eigen::Index overlap) {
  if (cell < 1 || overlap < 0 || overlap >= cell || cell > x.rows() || cell > x.cols()) {
    throw ConfigError("window_mean: need 0 <= v < c <= image side");
  }
  const Eigen::Index s = cell - overlap;
  const Eigen::Index out_rows = (x.rows() - cell) / s + 1;
  const Eigen::Index out_cols = (x.cols() - cell) / s + 1;
  ImageMatrix<Scalar> out(out_rows, out_cols);
  for (Eigen::Index i = 0; i < out_rows; ++i) {
    for (Eigen::Index j = 0; j < out_cols; ++j) {
      Scalar sum = 0;
      for (Eigen::Index r = i * s; r < i * s + cell; ++r) {
        for (Eigen::Index c = j * s; c < j * s + cell; ++c) sum += x(r, c);
      }
      out(i, j) = sum / Scalar(cell * cell);
    }
  }
  return out;
}

/// Each entry times 1 / sqrt(eps + sum of squares over every b x b block
/// that contains it).
template <typename Scalar>
ImageMatrix<Scalar> block_normalize(const ImageMatrix<Scalar>& g, Eigen::Index b, Eigen::Index overlap, double epsilon) {
  if (b < 1 || overlap < 0 || overlap >= b || b > g.rows() || b > g.cols()) {
    throw ConfigError("block_normalize: need 0 <= v < b <= map side");
  }
  const Eigen::Index s = b - overlap;
  const Eigen::Index block_rows = (g.rows() - b) / s + 1;
  const Eigen::Index block_cols = (g.cols() - b) / s + 1;
  ImageMatrix<Scalar> energy = ImageMatrix<Scalar>::Zero(g.rows(), g.cols());
  for (Eigen::Index bi = 0; bi < block_rows; ++bi) {
    for (Eigen::Index bj = 0; bj < block_cols; ++bj) {
      Scalar sum = 0;
      for (Eigen::Index r = bi * s; r < bi * s + b; ++r) {
        for (Eigen::Index c = bj * s; c < bj * s + b; ++c) sum += g(r, c) * g(r, c);
      }
      for (Eigen::Index r = bi * s; r < bi * s + b; ++r) {
        for (Eigen::Index c = bj * s; c < bj * s + b; ++c) energy(r, c) += sum;
      }
    }
  }
  ImageMatrix<Scalar> out(g.rows(), g.cols());
  for (Eigen::Index r = 0; r < g.rows(); ++r) {
    for (Eigen::Index c = 0; c < g.cols(); ++c) {
      const Scalar radicand = energy(r, c) + Scalar(epsilon);
      if (!(radicand > Scalar(0))) throw DomainError("block_normalize: zero block energy with epsilon = 0");
      out(r, c) = g(r, c) * (Scalar(1) / std::sqrt(radicand));
    }
  }
  return out;
}

template <typename Scalar>
DirectionalStack<Scalar> mhog(const ImageMatrix<Scalar>& x, const MhogConfig& cfg) {
  cfg.validate();
  DirectionalStack<Scalar> out = gradient_stack(x);
  for (auto& m : out) {
    m = window_mean(window_mean(m, cfg.c2, 0), cfg.c1, cfg.v);
    if (cfg.normalize) m = block_normalize(m, cfg.b, cfg.effective_block_overlap(), cfg.epsilon);
  }
  return out;
}

}  // namespace mproj::scan
