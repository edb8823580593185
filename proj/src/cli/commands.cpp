#include "mproj/cli/commands.hpp"

#include <chrono>
#include <cmath>
#include <cstring>
#include <iostream>
#include <numeric>
#include <sstream>

#include <CLI11.hpp>

#include "mproj/dataset_io.hpp"
#include "mproj/feature_file.hpp"
#include "mproj/image_io.hpp"
#include "mproj/synthetic.hpp"

namespace mproj::cli {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

DescriptorKind require_descriptor(const std::string& name) {
  if (auto kind = parse_descriptor(name)) return *kind;
  throw UsageError("unknown descriptor '" + name + "' (expected mlbp, mhog, dmp, mlbp-hog or lbp-ref)");
}

std::filesystem::path manifest_for(const std::filesystem::path& input, const std::filesystem::path& labels) {
  return labels.empty() ? input / "labels.csv" : labels;
}

std::optional<double> parse_gamma(const std::string& text) {
  if (text == "auto") return std::nullopt;
  try {
    std::size_t used = 0;
    const double g = std::stod(text, &used);
    if (used == text.size() && g > 0) return g;
  } catch (const std::exception&) {
  }
  throw UsageError("--gamma must be 'auto' or a positive number, got '" + text + "'");
}

}  // namespace

void run_gen(const GenOptions& opts, std::ostream& log) {
  if (opts.n < 1) throw UsageError("--n must be at least 1");
  if (opts.size < 5) throw UsageError("--size must be at least 5");
  std::error_code ec;
  std::filesystem::create_directories(opts.out, ec);
  if (ec) throw IoError("cannot create " + opts.out.string() + ": " + ec.message());
  const Dataset ds = gen_synthetic(std::size_t(opts.n), opts.size, opts.size, opts.seed, SyntheticOptions{opts.noise});
  std::vector<ManifestEntry> manifest;
  for (const auto& s : ds.samples) {
    write_pgm(opts.out / (s.id + ".pgm"), s.image);
    manifest.push_back({s.id, s.label});
  }
  write_manifest(opts.out / "labels.csv", manifest);
  log << "wrote " << ds.samples.size() << " images (" << opts.size << "x" << opts.size << ") and labels.csv to "
      << opts.out.string() << '\n';
}

void run_extract(const ExtractOptions& opts, std::ostream& log) {
  const DescriptorKind kind = require_descriptor(opts.descriptor);
  // Fail on bad parameters before touching any image.
  feature_dimension(kind, opts.config, opts.size, opts.size);
  const Dataset ds = load_dataset(opts.input, manifest_for(opts.input, opts.labels), opts.size, opts.size);
  const FeatureMatrix fm = extract_all(ds, kind, opts.config, opts.path, opts.threads);
  write_feature_file(opts.out, fm);
  log << "extracted " << fm.size() << " x " << fm.dim() << " " << to_string(kind) << " features to "
      << opts.out.string() << '\n';
}

RunReport run_eval(const EvalOptions& opts) {
  const bool holdout = !opts.train.empty() || !opts.test.empty();
  const bool from_file = !opts.features.empty();
  const bool inline_extract = !opts.input.empty();
  if (int(holdout) + int(from_file) + int(inline_extract) != 1) {
    throw UsageError("eval needs exactly one of: --train/--test, --features, --input");
  }
  if (holdout && (opts.train.empty() || opts.test.empty())) throw UsageError("--train and --test go together");
  if (!holdout && opts.folds < 2) throw UsageError("--folds must be at least 2");

  LseOptions lse;
  lse.lambda = opts.lambda;
  lse.gamma = parse_gamma(opts.gamma);
  lse.standardize = opts.standardize;
  lse.gamma_seed = opts.seed;

  RunReport report;
  report.lambda = opts.lambda;
  report.seed = opts.seed;

  if (holdout) {
    const FeatureMatrix train = read_feature_file(opts.train);
    const FeatureMatrix test = read_feature_file(opts.test);
    if (train.dim() != test.dim()) {
      throw InputError("feature dimension mismatch: train " + std::to_string(train.dim()) + ", test " +
                       std::to_string(test.dim()));
    }
    report.descriptor = std::string(to_string(train.descriptor));
    report.config = train.config;
    report.dataset = opts.train.string() + "|" + opts.test.string();
    report.mode = "holdout";
    report.feature_dim = train.dim();
    const std::vector<int> labels = opts.permute_labels ? permuted_labels(train.labels, opts.seed) : train.labels;
    auto t0 = Clock::now();
    const LseModel model = lse_train(train.values, labels, lse);
    report.train_seconds = seconds_since(t0);
    t0 = Clock::now();
    const Prediction p = lse_predict(model, test.values);
    report.predict_seconds = seconds_since(t0);
    report.confusion = confusion(test.labels, p.labels);
    report.gamma = model.gamma;
    return report;
  }

  FeatureMatrix fm;
  if (from_file) {
    fm = read_feature_file(opts.features);
    report.dataset = opts.features.string();
  } else {
    const DescriptorKind kind = require_descriptor(opts.descriptor);
    feature_dimension(kind, opts.config, opts.size, opts.size);
    const Dataset ds = load_dataset(opts.input, manifest_for(opts.input, opts.labels), opts.size, opts.size);
    const auto t0 = Clock::now();
    fm = extract_all(ds, kind, opts.config);
    report.extract_seconds = seconds_since(t0);
    report.dataset = opts.input.string();
  }
  report.descriptor = std::string(to_string(fm.descriptor));
  report.config = fm.config;
  report.mode = "cv" + std::to_string(opts.folds);
  report.feature_dim = fm.dim();

  const std::vector<int> labels = opts.permute_labels ? permuted_labels(fm.labels, opts.seed) : fm.labels;
  const std::vector<int> fold = stratified_folds(labels, opts.folds, opts.seed);
  double gamma_sum = 0;
  for (int f = 0; f < opts.folds; ++f) {
    std::vector<Eigen::Index> train_rows, test_rows;
    std::vector<int> train_labels, test_labels;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      (fold[i] == f ? test_rows : train_rows).push_back(Eigen::Index(i));
      (fold[i] == f ? test_labels : train_labels).push_back(labels[i]);
    }
    auto t0 = Clock::now();
    const LseModel model = lse_train(select_rows(fm.values, train_rows), train_labels, lse);
    report.train_seconds += seconds_since(t0);
    t0 = Clock::now();
    const Prediction p = lse_predict(model, select_rows(fm.values, test_rows));
    report.predict_seconds += seconds_since(t0);
    report.confusion += confusion(test_labels, p.labels);
    gamma_sum += model.gamma;
  }
  report.gamma = gamma_sum / opts.folds;
  return report;
}

namespace {

bool bitwise_equal(const FeatureTable& a, const FeatureTable& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() &&
         std::memcmp(a.data(), b.data(), std::size_t(a.size()) * sizeof(double)) == 0;
}

double max_mixed_error(const FeatureTable& a, const FeatureTable& b) {
  double worst = 0;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const double x = a.data()[i], y = b.data()[i];
    worst = std::max(worst, std::abs(x - y) / std::max({1.0, std::abs(x), std::abs(y)}));
  }
  return worst;
}

}  // namespace

BenchReport run_bench(const BenchOptions& opts) {
  if (opts.repeat < 1) throw UsageError("--repeat must be at least 1");
  const DescriptorKind kind = require_descriptor(opts.descriptor);
  BenchReport report;
  report.descriptor = std::string(to_string(kind));
  report.config = effective_config(kind, opts.config);
  report.repeat = opts.repeat;
  report.feature_dim = feature_dimension(kind, opts.config, opts.size, opts.size);
  const Dataset ds = load_dataset(opts.input, manifest_for(opts.input, opts.labels), opts.size, opts.size);
  report.samples = ds.samples.size();

  constexpr ExecutionPath kPaths[] = {ExecutionPath::projection, ExecutionPath::dense, ExecutionPath::scanning};
  const FeatureMatrix projection = extract_all(ds, kind, opts.config, ExecutionPath::projection, opts.threads);
  const FeatureMatrix dense = extract_all(ds, kind, opts.config, ExecutionPath::dense, opts.threads);
  const FeatureMatrix scanning = extract_all(ds, kind, opts.config, ExecutionPath::scanning, opts.threads);
  const bool exact_scan = kind == DescriptorKind::mlbp || kind == DescriptorKind::lbp_ref;
  const bool dense_ok = bitwise_equal(projection.values, dense.values);
  const double scan_err = max_mixed_error(projection.values, scanning.values);
  const bool scan_ok = exact_scan ? bitwise_equal(projection.values, scanning.values) : scan_err <= 1e-9;
  std::ostringstream detail;
  detail << "projection==dense bitwise: " << (dense_ok ? "yes" : "NO") << ", projection vs scanning "
         << (exact_scan ? "exact: " : "max rel err " + std::to_string(scan_err) + " <= 1e-9: ")
         << (scan_ok ? "yes" : "NO");
  report.gate_detail = detail.str();
  report.gate_passed = dense_ok && scan_ok;
  if (!report.gate_passed) return report;

  std::vector<std::vector<double>> samples(std::size(kPaths));
  for (int rep = 0; rep < opts.repeat; ++rep) {
    for (std::size_t p = 0; p < std::size(kPaths); ++p) {
      const auto t0 = Clock::now();
      const FeatureMatrix fm = extract_all(ds, kind, opts.config, kPaths[p], opts.threads);
      samples[p].push_back(seconds_since(t0));
    }
  }
  for (std::size_t p = 0; p < std::size(kPaths); ++p) {
    const auto& s = samples[p];
    const double mean = std::accumulate(s.begin(), s.end(), 0.0) / double(s.size());
    double var = 0;
    for (double x : s) var += (x - mean) * (x - mean);
    const double sd = s.size() > 1 ? std::sqrt(var / double(s.size() - 1)) : 0.0;
    report.timings.push_back({kPaths[p], mean, sd});
  }
  return report;
}

namespace {

void add_config_flags(CLI::App* sub, DescriptorConfig& cfg, long& block_overlap, bool& no_normalize) {
  sub->add_option("--c1", cfg.mhog.c1, "overlapping pooling cell")->capture_default_str();
  sub->add_option("--c2", cfg.mhog.c2, "non-overlapping pooling cell")->capture_default_str();
  sub->add_option("--v", cfg.mhog.v, "overlap of the c1 pooling")->capture_default_str();
  sub->add_option("--b", cfg.mhog.b, "normalization block size")->capture_default_str();
  sub->add_option("--block-overlap", block_overlap, "normalization block overlap (default min(v, b-1))");
  sub->add_option("--epsilon", cfg.mhog.epsilon, "normalization guard")->capture_default_str();
  sub->add_flag("--no-normalize", no_normalize, "skip block normalization");
}

void finish_config(DescriptorConfig& cfg, long block_overlap, bool no_normalize) {
  if (block_overlap >= 0) cfg.mhog.block_overlap = block_overlap;
  if (no_normalize) cfg.mhog.normalize = false;
}

}  // namespace

int main(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Matrix-projection LBP/HOG descriptors: extraction, evaluation and benchmarking", "mproj"};
  app.set_version_flag("--version", std::string(MPROJ_VERSION));
  app.require_subcommand(1);

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "write a synthetic two-class PGM dataset with labels.csv");
  gen_cmd->add_option("--out", gen.out, "output directory")->required();
  gen_cmd->add_option("--n", gen.n, "images per class")->required();
  gen_cmd->add_option("--size", gen.size, "image side")->capture_default_str();
  gen_cmd->add_option("--seed", gen.seed, "random seed")->capture_default_str();
  gen_cmd->add_option("--noise", gen.noise, "Gaussian noise sigma (grey levels)")->capture_default_str();

  ExtractOptions ext;
  long ext_vb = -1;
  bool ext_no_norm = false;
  std::string ext_path = "projection";
  auto* ext_cmd = app.add_subcommand("extract", "extract descriptors for a dataset into an MPFV feature file");
  ext_cmd->add_option("--descriptor", ext.descriptor, "mlbp | mhog | dmp | mlbp-hog | lbp-ref")->capture_default_str();
  ext_cmd->add_option("--input", ext.input, "dataset directory")->required();
  ext_cmd->add_option("--labels", ext.labels, "manifest CSV (default INPUT/labels.csv)");
  ext_cmd->add_option("--size", ext.size, "resize images to SIZE x SIZE")->capture_default_str();
  ext_cmd->add_option("--out", ext.out, "feature file")->required();
  ext_cmd->add_option("--path", ext_path, "projection | dense | scanning")
      ->check(CLI::IsMember({"projection", "dense", "scanning"}))
      ->capture_default_str();
  add_config_flags(ext_cmd, ext.config, ext_vb, ext_no_norm);

  EvalOptions ev;
  long ev_vb = -1;
  bool ev_no_norm = false;
  bool ev_no_std = false;
  auto* eval_cmd = app.add_subcommand("eval", "train and evaluate the RBF least-squares classifier");
  eval_cmd->add_option("--train", ev.train, "training feature file");
  eval_cmd->add_option("--test", ev.test, "test feature file");
  eval_cmd->add_option("--features", ev.features, "feature file for cross-validation");
  eval_cmd->add_option("--input", ev.input, "dataset directory (extract, then cross-validate)");
  eval_cmd->add_option("--labels", ev.labels, "manifest CSV for --input");
  eval_cmd->add_option("--descriptor", ev.descriptor, "descriptor for --input")->capture_default_str();
  eval_cmd->add_option("--size", ev.size, "image side for --input")->capture_default_str();
  eval_cmd->add_option("--folds", ev.folds, "cross-validation folds")->capture_default_str();
  eval_cmd->add_option("--lambda", ev.lambda, "ridge regularization")->capture_default_str();
  eval_cmd->add_option("--gamma", ev.gamma, "RBF width or 'auto' (median heuristic)")->capture_default_str();
  eval_cmd->add_option("--seed", ev.seed, "fold / permutation seed")->capture_default_str();
  eval_cmd->add_flag("--permute-labels", ev.permute_labels, "shuffle training labels (chance control)");
  eval_cmd->add_flag("--no-standardize", ev_no_std, "use raw features in the kernel");
  add_config_flags(eval_cmd, ev.config, ev_vb, ev_no_norm);

  BenchOptions bench;
  long bench_vb = -1;
  bool bench_no_norm = false;
  auto* bench_cmd = app.add_subcommand("bench", "time projection, dense and scanning extraction");
  bench_cmd->add_option("--descriptor", bench.descriptor, "descriptor")->capture_default_str();
  bench_cmd->add_option("--input", bench.input, "dataset directory")->required();
  bench_cmd->add_option("--labels", bench.labels, "manifest CSV (default INPUT/labels.csv)");
  bench_cmd->add_option("--size", bench.size, "image side")->capture_default_str();
  bench_cmd->add_option("--repeat", bench.repeat, "timed runs per path")->capture_default_str();
  add_config_flags(bench_cmd, bench.config, bench_vb, bench_no_norm);

  SelftestOptions st;
  auto* st_cmd = app.add_subcommand("selftest", "run the oracle-equivalence and invariant checks");
  st_cmd->add_option("--seed", st.seed, "random seed")->capture_default_str();
  st_cmd->add_flag("--corrupt-shift-convention", st.corrupt_shift_convention,
                   "negative control: mirror the horizontal shift convention")
      ->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (gen_cmd->parsed()) {
      run_gen(gen, err);
    } else if (ext_cmd->parsed()) {
      finish_config(ext.config, ext_vb, ext_no_norm);
      ext.path = ext_path == "dense" ? ExecutionPath::dense
                 : ext_path == "scanning" ? ExecutionPath::scanning
                                          : ExecutionPath::projection;
      run_extract(ext, err);
    } else if (eval_cmd->parsed()) {
      finish_config(ev.config, ev_vb, ev_no_norm);
      ev.standardize = !ev_no_std;
      print_report(out, run_eval(ev));
    } else if (bench_cmd->parsed()) {
      finish_config(bench.config, bench_vb, bench_no_norm);
      const BenchReport r = run_bench(bench);
      print_bench(out, r);
      if (!r.gate_passed) {
        err << "error: correctness gate failed, timings withheld\n";
        return kExitFailure;
      }
    } else if (st_cmd->parsed()) {
      const SelftestResult r = run_selftest(st, out);
      return r.passed() ? kExitOk : kExitFailure;
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace mproj::cli
