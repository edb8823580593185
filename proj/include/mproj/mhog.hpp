#pragma once

#include <array>
#include <optional>

#include "mproj/execution.hpp"

namespace mproj {

/// First-order offsets (directions 0..3) and their distance-2 analogues
/// (directions 4..7).
inline constexpr std::array<Offset, 8> kGradientOffsets{{
    {-1, +1}, {-1, 0}, {-1, -1}, {0, -1}, {-2, +2}, {-2, 0}, {-2, -2}, {0, -2},
}};

/// One map per gradient direction, all of the same shape.
template <typename Scalar = double>
using DirectionalStack = std::array<ImageMatrix<Scalar>, 8>;

struct MhogConfig {
  Eigen::Index c1 = 4;  // overlapping pooling cell
  Eigen::Index c2 = 2;  // non-overlapping pooling cell
  Eigen::Index v = 2;   // overlap for c1 pooling
  Eigen::Index b = 2;   // normalization block
  /// Overlap of normalization blocks. Defaults to v, clamped to b - 1 so that
  /// configurations with v >= b still define a block operator.
  std::optional<Eigen::Index> block_overlap;
  double epsilon = 1e-12;
  bool normalize = true;

  Eigen::Index effective_block_overlap() const { return block_overlap.value_or(std::min(v, b - 1)); }

  void validate() const {
    if (c1 < 1 || c2 < 1 || b < 1) throw ConfigError("mhog: c1, c2 and b must be >= 1");
    if (v < 0 || v >= c1) {
      throw ConfigError("mhog: overlap v=" + std::to_string(v) + " must satisfy 0 <= v < c1=" + std::to_string(c1));
    }
    const Eigen::Index vb = effective_block_overlap();
    if (vb < 0 || vb >= b) {
      throw ConfigError("mhog: block overlap " + std::to_string(vb) + " must satisfy 0 <= vb < b=" + std::to_string(b));
    }
    if (!(epsilon >= 0.0)) throw ConfigError("mhog: epsilon must be non-negative");
  }

  /// Per-direction side length of the descriptor for an n-long input axis.
  Eigen::Index output_length(Eigen::Index n) const { return (n / c2 - c1) / (c1 - v) + 1; }
};

namespace detail {
template <typename Scalar>
void check_stack(const DirectionalStack<Scalar>& s, const char* what) {
  for (const auto& m : s) require_same_shape(m, s[0], what);
}

template <typename Scalar, typename Fn>
DirectionalStack<Scalar> map_stack(const DirectionalStack<Scalar>& s, Fn&& fn) {
  DirectionalStack<Scalar> out;
  for (std::size_t i = 0; i < s.size(); ++i) out[i] = fn(s[i]);
  return out;
}

template <typename Scalar>
ImageMatrix<Scalar> pool(const ImageMatrix<Scalar>& x, const PoolingOperator& op, bool dense) {
  return dense ? apply_pooling_dense(x, op) : apply_pooling(x, op);
}

template <typename Scalar>
ImageMatrix<Scalar> pool_transposed(const ImageMatrix<Scalar>& x, const PoolingOperator& op, bool dense) {
  return dense ? apply_pooling_transposed_dense(x, op) : apply_pooling_transposed(x, op);
}

/// L X R with averaging windows of the given cell and overlap.
template <typename Scalar>
ImageMatrix<Scalar> pool_both(const ImageMatrix<Scalar>& x, Eigen::Index cell, Eigen::Index overlap, bool dense) {
  const auto l = make_pooling(x.rows(), cell, overlap, true, Side::left);
  const auto r = make_pooling(x.cols(), cell, overlap, true, Side::right);
  return pool(pool(x, l, dense), r, dense);
}
}  // namespace detail

/// Q_i - X for the eight gradient directions.
template <typename Scalar>
DirectionalStack<Scalar> gradient_stack(const ImageMatrix<Scalar>& x, ExecutionPath path = ExecutionPath::projection) {
  if (x.rows() < 5 || x.cols() < 5) throw InputError("gradient_stack: image must be at least 5x5, got " + shape_string(x));
  DirectionalStack<Scalar> out;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = shift_image(x, kGradientOffsets[i], path) - x;
  return out;
}

/// F_i = L_{c2,0} (Q_i - X) R_{c2,0}, averaging.
template <typename Scalar>
DirectionalStack<Scalar> pooled_gradients(const DirectionalStack<Scalar>& stack, const MhogConfig& cfg,
                                          ExecutionPath path = ExecutionPath::projection) {
  detail::check_stack(stack, "pooled_gradients");
  const bool dense = path == ExecutionPath::dense;
  return detail::map_stack(stack, [&](const ImageMatrix<Scalar>& d) { return detail::pool_both(d, cfg.c2, 0, dense); });
}

/// G_i = L_{c1,v} F_i R_{c1,v}, averaging with overlap.
template <typename Scalar>
DirectionalStack<Scalar> overlap_pooled(const DirectionalStack<Scalar>& stack, const MhogConfig& cfg,
                                        ExecutionPath path = ExecutionPath::projection) {
  detail::check_stack(stack, "overlap_pooled");
  const bool dense = path == ExecutionPath::dense;
  return detail::map_stack(stack, [&](const ImageMatrix<Scalar>& f) { return detail::pool_both(f, cfg.c1, cfg.v, dense); });
}

/// Z_i = G_i o (eps + L^T (L G_i^2 R) R^T)^(-1/2) with summing b x b blocks.
/// Each entry is divided by the root of the summed energy of every block
/// covering it; entries covered by no block see only eps.
template <typename Scalar>
DirectionalStack<Scalar> block_normalize(const DirectionalStack<Scalar>& stack, const MhogConfig& cfg,
                                         ExecutionPath path = ExecutionPath::projection) {
  detail::check_stack(stack, "block_normalize");
  const bool dense = path == ExecutionPath::dense;
  const Eigen::Index vb = cfg.effective_block_overlap();
  const auto l = make_pooling(stack[0].rows(), cfg.b, vb, false, Side::left);
  const auto r = make_pooling(stack[0].cols(), cfg.b, vb, false, Side::right);
  return detail::map_stack(stack, [&](const ImageMatrix<Scalar>& g) {
    const ImageMatrix<Scalar> energy = detail::pool(detail::pool(elementwise_pow(g, 2), l, dense), r, dense);
    const ImageMatrix<Scalar> spread =
        detail::pool_transposed(detail::pool_transposed(energy, l, dense), r, dense);
    const ImageMatrix<Scalar> radicand = (spread.array() + Scalar(cfg.epsilon)).matrix();
    return hadamard(g, elementwise_pow(radicand, -0.5));
  });
}

}  // namespace mproj
