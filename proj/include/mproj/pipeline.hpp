#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mproj/descriptor.hpp"

namespace mproj {

enum class DescriptorKind { mlbp, mhog, dmp, mlbp_hog, lbp_ref };

std::string_view to_string(DescriptorKind kind);
std::optional<DescriptorKind> parse_descriptor(std::string_view name);

struct DescriptorConfig {
  MlbpConfig mlbp;
  MhogConfig mhog;
};

/// The config actually used for `kind`: dmp forces v = 0 and disables block
/// normalization; kinds without an M-HOG stage ignore the M-HOG fields.
DescriptorConfig effective_config(DescriptorKind kind, const DescriptorConfig& cfg);

using FeatureRow = Eigen::VectorXd;
using FeatureTable = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct FeatureVector {
  FeatureRow values;
  DescriptorKind descriptor = DescriptorKind::mlbp_hog;
  DescriptorConfig config;
  std::string source_id;
};

/// Feature length for an image of the given size.
Eigen::Index feature_dimension(DescriptorKind kind, const DescriptorConfig& cfg, Eigen::Index rows, Eigen::Index cols);

FeatureVector extract(const Image& x, DescriptorKind kind, const DescriptorConfig& cfg,
                      ExecutionPath path = ExecutionPath::projection, std::string source_id = {});

FeatureVector mlbp_hog(const Image& x, const MlbpConfig& lbp_cfg, const MhogConfig& hog_cfg,
                       ExecutionPath path = ExecutionPath::projection);

struct Sample {
  Image image;
  int label = 1;  // +1 or -1
  std::string id;
};

struct Dataset {
  std::vector<Sample> samples;
  Eigen::Index rows = 0;
  Eigen::Index cols = 0;

  /// Throws InputError unless every image has the dataset resolution and
  /// the labels are +1/-1.
  void validate() const;
};

/// Features stacked one row per sample in dataset order.
struct FeatureMatrix {
  FeatureTable values;
  std::vector<int> labels;
  std::vector<std::string> ids;
  DescriptorKind descriptor = DescriptorKind::mlbp_hog;
  DescriptorConfig config;
  Eigen::Index image_rows = 0;
  Eigen::Index image_cols = 0;

  Eigen::Index size() const { return values.rows(); }
  Eigen::Index dim() const { return values.cols(); }
};

/// Worker count for extraction: MPFV_THREADS when set, else the core count.
unsigned extraction_threads();

/// Extracts every sample, fanning out over `threads` workers (0 = default).
/// A failing sample aborts the run with an InputError naming its id.
FeatureMatrix extract_all(const Dataset& ds, DescriptorKind kind, const DescriptorConfig& cfg,
                          ExecutionPath path = ExecutionPath::projection, unsigned threads = 0);

}  // namespace mproj
