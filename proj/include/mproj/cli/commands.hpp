#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mproj/classifier.hpp"
#include "mproj/pipeline.hpp"

namespace mproj::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Thrown for argument combinations the parser cannot reject on its own.
class UsageError : public Error {
 public:
  using Error::Error;
};

struct GenOptions {
  std::filesystem::path out;
  long n = 0;  // per class
  Eigen::Index size = 56;
  std::uint64_t seed = 0;
  double noise = 12.0;
};

struct ExtractOptions {
  std::string descriptor = "mlbp-hog";
  std::filesystem::path input;
  std::filesystem::path labels;  // defaults to input/labels.csv
  DescriptorConfig config;
  Eigen::Index size = 56;
  std::filesystem::path out;
  ExecutionPath path = ExecutionPath::projection;
  unsigned threads = 0;
};

struct EvalOptions {
  std::filesystem::path train, test, features;
  // Inline mode: extract from a dataset directory instead of feature files.
  std::filesystem::path input, labels;
  std::string descriptor = "mlbp-hog";
  DescriptorConfig config;
  Eigen::Index size = 56;
  int folds = 5;
  double lambda = 1e-4;
  std::string gamma = "auto";
  std::uint64_t seed = 0;
  bool permute_labels = false;
  bool standardize = true;
};

struct BenchOptions {
  std::string descriptor = "mlbp-hog";
  std::filesystem::path input, labels;
  DescriptorConfig config;
  Eigen::Index size = 56;
  int repeat = 10;
  unsigned threads = 0;
};

struct RunReport {
  std::string descriptor;
  DescriptorConfig config;
  std::string dataset;
  std::string mode;
  Confusion confusion;
  double extract_seconds = 0;
  double train_seconds = 0;
  double predict_seconds = 0;
  Eigen::Index feature_dim = 0;
  double gamma = 0;
  double lambda = 0;
  std::uint64_t seed = 0;
  std::string version = MPROJ_VERSION;

  double accuracy() const { return confusion.accuracy(); }
  std::string config_text() const;
};

struct PathTiming {
  ExecutionPath path;
  double mean_seconds = 0;
  double std_seconds = 0;
};

struct BenchReport {
  std::string descriptor;
  DescriptorConfig config;
  std::size_t samples = 0;
  Eigen::Index feature_dim = 0;
  int repeat = 0;
  bool gate_passed = false;
  std::string gate_detail;
  std::vector<PathTiming> timings;  // empty when the gate fails
};

std::string config_string(DescriptorKind kind, const DescriptorConfig& cfg);

void print_report(std::ostream& out, const RunReport& r);
void print_bench(std::ostream& out, const BenchReport& r);

void run_gen(const GenOptions& opts, std::ostream& log);
void run_extract(const ExtractOptions& opts, std::ostream& log);
RunReport run_eval(const EvalOptions& opts);
/// Correctness gate first; timings only when all three paths agree.
BenchReport run_bench(const BenchOptions& opts);

struct SelftestOptions {
  bool corrupt_shift_convention = false;  // negative-control hook
  std::uint64_t seed = 2024;
};

struct SelftestResult {
  std::vector<std::string> failures;
  std::size_t checks = 0;
  bool passed() const { return failures.empty(); }
};

SelftestResult run_selftest(const SelftestOptions& opts, std::ostream& out);

/// Parses argv and dispatches; returns the process exit code.
int main(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace mproj::cli
