#include "mproj/pipeline.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <thread>

namespace mproj {

std::string_view to_string(DescriptorKind kind) {
  switch (kind) {
    case DescriptorKind::mlbp: return "mlbp";
    case DescriptorKind::mhog: return "mhog";
    case DescriptorKind::dmp: return "dmp";
    case DescriptorKind::mlbp_hog: return "mlbp-hog";
    case DescriptorKind::lbp_ref: return "lbp-ref";
  }
  return "?";
}

std::optional<DescriptorKind> parse_descriptor(std::string_view name) {
  for (auto kind : {DescriptorKind::mlbp, DescriptorKind::mhog, DescriptorKind::dmp, DescriptorKind::mlbp_hog,
                    DescriptorKind::lbp_ref}) {
    if (name == to_string(kind)) return kind;
  }
  if (name == "mlbp_hog") return DescriptorKind::mlbp_hog;
  if (name == "lbp_ref") return DescriptorKind::lbp_ref;
  return std::nullopt;
}

DescriptorConfig effective_config(DescriptorKind kind, const DescriptorConfig& cfg) {
  DescriptorConfig out = cfg;
  if (kind == DescriptorKind::dmp) {
    out.mhog.v = 0;
    out.mhog.block_overlap.reset();
    out.mhog.normalize = false;
  }
  return out;
}

namespace {

bool has_hog_stage(DescriptorKind kind) {
  return kind == DescriptorKind::mhog || kind == DescriptorKind::dmp || kind == DescriptorKind::mlbp_hog;
}

}  // namespace

Eigen::Index feature_dimension(DescriptorKind kind, const DescriptorConfig& cfg, Eigen::Index rows, Eigen::Index cols) {
  if (!has_hog_stage(kind)) return rows * cols;
  const MhogConfig hog = effective_config(kind, cfg).mhog;
  hog.validate();
  if (rows < hog.c2 || cols < hog.c2 || rows / hog.c2 < hog.c1 || cols / hog.c2 < hog.c1) {
    throw ConfigError("feature_dimension: pooling cells do not fit a " + std::to_string(rows) + "x" +
                      std::to_string(cols) + " image");
  }
  const Eigen::Index out_rows = hog.output_length(rows);
  const Eigen::Index out_cols = hog.output_length(cols);
  if (hog.normalize && (out_rows < hog.b || out_cols < hog.b)) {
    throw ConfigError("feature_dimension: block size b=" + std::to_string(hog.b) + " exceeds pooled map " +
                      std::to_string(out_rows) + "x" + std::to_string(out_cols));
  }
  return 8 * out_rows * out_cols;
}

FeatureVector extract(const Image& x, DescriptorKind kind, const DescriptorConfig& cfg, ExecutionPath path,
                      std::string source_id) {
  const DescriptorConfig eff = effective_config(kind, cfg);
  FeatureVector fv{{}, kind, eff, std::move(source_id)};
  auto flat_map = [](const Image& m) { return FeatureRow(Eigen::Map<const FeatureRow>(m.data(), m.size())); };
  switch (kind) {
    case DescriptorKind::mlbp:
      fv.values = flat_map(mlbp(x, eff.mlbp, path));
      break;
    case DescriptorKind::lbp_ref:
      fv.values = flat_map(scanning_lbp(x, LbpPadding::circular, eff.mlbp).codes);
      break;
    case DescriptorKind::mhog:
    case DescriptorKind::dmp:
      fv.values = flatten(mhog(x, eff.mhog, path));
      break;
    case DescriptorKind::mlbp_hog:
      fv.values = flatten(mlbp_hog_stack(x, eff.mlbp, eff.mhog, path));
      break;
  }
  return fv;
}

FeatureVector mlbp_hog(const Image& x, const MlbpConfig& lbp_cfg, const MhogConfig& hog_cfg, ExecutionPath path) {
  return extract(x, DescriptorKind::mlbp_hog, DescriptorConfig{lbp_cfg, hog_cfg}, path);
}

void Dataset::validate() const {
  for (const auto& s : samples) {
    if (s.image.rows() != rows || s.image.cols() != cols) {
      throw InputError("dataset: sample '" + s.id + "' is " + shape_string(s.image) + ", expected " +
                       std::to_string(rows) + "x" + std::to_string(cols));
    }
    if (s.label != 1 && s.label != -1) throw InputError("dataset: sample '" + s.id + "' has label outside {-1,+1}");
  }
}

unsigned extraction_threads() {
  if (const char* env = std::getenv("MPFV_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n >= 1) return unsigned(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

FeatureMatrix extract_all(const Dataset& ds, DescriptorKind kind, const DescriptorConfig& cfg, ExecutionPath path,
                          unsigned threads) {
  if (ds.samples.empty()) throw InputError("extract_all: dataset is empty");
  ds.validate();
  const auto n = ds.samples.size();
  const Eigen::Index dim = feature_dimension(kind, cfg, ds.rows, ds.cols);

  FeatureMatrix fm;
  fm.values.resize(Eigen::Index(n), dim);
  fm.descriptor = kind;
  fm.config = effective_config(kind, cfg);
  fm.image_rows = ds.rows;
  fm.image_cols = ds.cols;
  for (const auto& s : ds.samples) {
    fm.labels.push_back(s.label);
    fm.ids.push_back(s.id);
  }

  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        const FeatureVector fv = extract(ds.samples[i].image, kind, cfg, path);
        if (fv.values.size() != dim) throw ShapeError("feature length " + std::to_string(fv.values.size()) + " != " + std::to_string(dim));
        fm.values.row(Eigen::Index(i)) = fv.values.transpose();
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned workers = std::min<std::size_t>(threads == 0 ? extraction_threads() : threads, n);
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (!errors[i]) continue;
    try {
      std::rethrow_exception(errors[i]);
    } catch (const std::exception& e) {
      throw InputError("extraction failed for sample '" + ds.samples[i].id + "': " + e.what());
    }
  }
  return fm;
}

}  // namespace mproj
