#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mproj/pipeline.hpp"

namespace mproj {

/// Per-dimension z-scoring fitted on training data. Zero-variance
/// dimensions keep scale 1.
struct Standardizer {
  Eigen::RowVectorXd mean;
  Eigen::RowVectorXd scale;

  static Standardizer fit(const FeatureTable& x);
  static Standardizer identity(Eigen::Index dim);
  FeatureTable apply(const FeatureTable& x) const;
};

/// K(u, w) = exp(-gamma * |u - w|^2) between the rows of a and b.
Eigen::MatrixXd rbf_gram(const FeatureTable& a, const FeatureTable& b, double gamma);

/// gamma = 1 / (2 median^2) over pairwise row distances; all pairs when there
/// are at most 1000, else 1000 pairs drawn with `seed`.
double median_heuristic_gamma(const FeatureTable& x, std::uint64_t seed = 0);

struct LseOptions {
  double lambda = 1e-4;
  std::optional<double> gamma;  // empty: median heuristic
  bool standardize = true;
  std::uint64_t gamma_seed = 0;
};

/// Kernel ridge classifier on +1/-1 targets: (K + lambda I) alpha = y.
struct LseModel {
  Eigen::VectorXd dual_weights;
  FeatureTable training_features;  // standardized
  double gamma = 0;
  double lambda = 0;
  Standardizer standardization;

  Eigen::Index dim() const { return training_features.cols(); }
};

LseModel lse_train(const FeatureTable& features, std::span<const int> labels, const LseOptions& options = {});

struct Prediction {
  std::vector<int> labels;
  Eigen::VectorXd decision;
};

/// label = sign(d) with d = 0 mapped to +1.
Prediction lse_predict(const LseModel& model, const FeatureTable& features);

struct Confusion {
  std::size_t tp = 0, tn = 0, fp = 0, fn = 0;

  void add(int truth, int predicted);
  Confusion& operator+=(const Confusion& o);
  std::size_t total() const { return tp + tn + fp + fn; }
  double accuracy() const { return total() == 0 ? 0.0 : double(tp + tn) / double(total()); }
};

Confusion confusion(std::span<const int> truth, std::span<const int> predicted);

/// Fold index per sample, stratified by label and seeded.
std::vector<int> stratified_folds(std::span<const int> labels, int folds, std::uint64_t seed);

/// Pooled confusion over all held-out folds.
Confusion cross_validate(const FeatureTable& features, std::span<const int> labels, int folds, std::uint64_t seed,
                         const LseOptions& options = {});

/// Seeded shuffle of labels, for chance-level controls.
std::vector<int> permuted_labels(std::span<const int> labels, std::uint64_t seed);

FeatureTable select_rows(const FeatureTable& x, std::span<const Eigen::Index> rows);

}  // namespace mproj
