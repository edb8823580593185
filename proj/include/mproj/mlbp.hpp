#pragma once

#include <array>
#include <bitset>

#include "mproj/execution.hpp"

namespace mproj {

/// Neighbor direction i (0-based) carries bit weight 2^i.
inline constexpr std::array<Offset, 8> kLbpOffsets{{
    {-1, +1}, {-1, 0}, {-1, -1}, {0, -1}, {+1, -1}, {+1, 0}, {+1, +1}, {0, +1},
}};

struct MlbpConfig {
  int neighbor_count = 8;
  /// Directions contributing to the code; a cleared bit masks that direction.
  std::bitset<8> directions = std::bitset<8>().set();

  void validate() const {
    if (neighbor_count != 8) throw ConfigError("mlbp: neighbor count must be 8, got " + std::to_string(neighbor_count));
  }

  static constexpr double weight(int direction) { return double(1u << direction); }
};

enum class LbpPadding { circular, none };

/// Output of the windowed LBP. `valid` is false where the pixel was not
/// coded (the border ring when padding is `none`); those codes are 0.
template <typename Scalar = double>
struct LbpMap {
  ImageMatrix<Scalar> codes;
  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> valid;
};

namespace detail {
template <typename Scalar>
void check_lbp_input(const ImageMatrix<Scalar>& x) {
  if (x.rows() < 3 || x.cols() < 3) throw InputError("lbp: image must be at least 3x3, got " + shape_string(x));
}
}  // namespace detail

/// Classical per-pixel LBP: each pixel compared against its eight
/// neighbors, bit set when neighbor - center >= 0.
template <typename Scalar>
LbpMap<Scalar> scanning_lbp(const ImageMatrix<Scalar>& x, LbpPadding padding, const MlbpConfig& cfg = {}) {
  cfg.validate();
  detail::check_lbp_input(x);
  const Eigen::Index rows = x.rows(), cols = x.cols();
  LbpMap<Scalar> out{ImageMatrix<Scalar>::Zero(rows, cols), decltype(LbpMap<Scalar>::valid)::Constant(rows, cols, true)};
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      if (padding == LbpPadding::none && (r == 0 || c == 0 || r == rows - 1 || c == cols - 1)) {
        out.valid(r, c) = false;
        continue;
      }
      const Scalar center = x(r, c);
      Scalar code = 0;
      for (int i = 0; i < 8; ++i) {
        if (!cfg.directions[i]) continue;
        const Eigen::Index nr = (r + kLbpOffsets[i].dr + rows) % rows;
        const Eigen::Index nc = (c + kLbpOffsets[i].dc + cols) % cols;
        if (x(nr, nc) - center >= Scalar(0)) code += Scalar(MlbpConfig::weight(i));
      }
      out.codes(r, c) = code;
    }
  }
  return out;
}

/// S_i - X for direction i, through shift operators.
template <typename Scalar>
ImageMatrix<Scalar> lbp_difference(const ImageMatrix<Scalar>& x, int direction, ExecutionPath path = ExecutionPath::projection) {
  return shift_image(x, kLbpOffsets.at(direction), path) - x;
}

/// Matrix-projection LBP: sum over directions of step(S_i - X) * 2^i.
/// The scanning path defers to the circular windowed LBP.
template <typename Scalar>
ImageMatrix<Scalar> mlbp(const ImageMatrix<Scalar>& x, const MlbpConfig& cfg = {},
                         ExecutionPath path = ExecutionPath::projection) {
  cfg.validate();
  detail::check_lbp_input(x);
  if (path == ExecutionPath::scanning) return scanning_lbp(x, LbpPadding::circular, cfg).codes;
  ImageMatrix<Scalar> out = ImageMatrix<Scalar>::Zero(x.rows(), x.cols());
  for (int i = 0; i < 8; ++i) {
    if (!cfg.directions[i]) continue;
    out += step(lbp_difference(x, i, path)) * Scalar(MlbpConfig::weight(i));
  }
  return out;
}

}  // namespace mproj
