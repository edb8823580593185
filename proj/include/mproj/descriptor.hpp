#pragma once

#include "mproj/mhog.hpp"
#include "mproj/mlbp.hpp"
#include "mproj/scan.hpp"

namespace mproj {

/// Full M-HOG: gradients, c2 pooling, overlapping c1 pooling, then block
/// normalization unless the config disables it (the DMP reading).
template <typename Scalar>
DirectionalStack<Scalar> mhog(const ImageMatrix<Scalar>& x, const MhogConfig& cfg,
                              ExecutionPath path = ExecutionPath::projection) {
  cfg.validate();
  if (path == ExecutionPath::scanning) return scan::mhog(x, cfg);
  auto g = overlap_pooled(pooled_gradients(gradient_stack(x, path), cfg, path), cfg, path);
  if (!cfg.normalize) return g;
  return block_normalize(g, cfg, path);
}

/// Concatenates the maps in direction order, row-major within each map.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> flatten(const DirectionalStack<Scalar>& stack) {
  const Eigen::Index per = stack[0].size();
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> out(per * Eigen::Index(stack.size()));
  for (std::size_t i = 0; i < stack.size(); ++i) {
    out.segment(Eigen::Index(i) * per, per) = Eigen::Map<const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>>(stack[i].data(), per);
  }
  return out;
}

/// M-HOG of the M-LBP image, as one stack.
template <typename Scalar>
DirectionalStack<Scalar> mlbp_hog_stack(const ImageMatrix<Scalar>& x, const MlbpConfig& lbp_cfg, const MhogConfig& hog_cfg,
                                        ExecutionPath path = ExecutionPath::projection) {
  return mhog(mlbp(x, lbp_cfg, path), hog_cfg, path);
}

}  // namespace mproj
