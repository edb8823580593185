#pragma once

#include <string_view>

#include "mproj/projection.hpp"

namespace mproj {

/// How a descriptor is evaluated. All three produce the same features; they
/// differ only in cost. `projection` applies operators through index
/// remapping and banded accumulation, `dense` multiplies by the materialized
/// operator matrices, `scanning` runs per-pixel window loops.
enum class ExecutionPath { projection, dense, scanning };

constexpr std::string_view to_string(ExecutionPath p) {
  switch (p) {
    case ExecutionPath::projection: return "projection";
    case ExecutionPath::dense: return "dense";
    case ExecutionPath::scanning: return "scanning";
  }
  return "?";
}

/// Pixel offset (row, col): a shifted image S with this offset satisfies
/// S(r, c) = X(r + dr, c + dc) with circular wrap.
struct Offset {
  int dr = 0;
  int dc = 0;
};

/// V_{dr} X H_{dc}, evaluated on the projection or dense path.
template <typename Scalar>
ImageMatrix<Scalar> shift_image(const ImageMatrix<Scalar>& x, Offset off, ExecutionPath path) {
  const bool dense = path == ExecutionPath::dense;
  ImageMatrix<Scalar> out = x;
  if (off.dr != 0) {
    const auto v = make_shift(x.rows(), off.dr, Axis::vertical);
    out = dense ? apply_shift_dense(out, v) : apply_shift(out, v);
  }
  if (off.dc != 0) {
    const auto h = make_shift(x.cols(), off.dc, Axis::horizontal);
    out = dense ? apply_shift_dense(out, h) : apply_shift(out, h);
  }
  return out;
}

}  // namespace mproj
