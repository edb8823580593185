#include <iomanip>
#include <ostream>
#include <sstream>

#include "mproj/cli/commands.hpp"

namespace mproj::cli {

std::string config_string(DescriptorKind kind, const DescriptorConfig& cfg) {
  std::ostringstream os;
  os << "P=" << cfg.mlbp.neighbor_count;
  if (kind == DescriptorKind::mhog || kind == DescriptorKind::dmp || kind == DescriptorKind::mlbp_hog) {
    const auto& h = cfg.mhog;
    os << " c1=" << h.c1 << " c2=" << h.c2 << " v=" << h.v << " b=" << h.b << " vb=" << h.effective_block_overlap()
       << " eps=" << h.epsilon << " normalize=" << (h.normalize ? 1 : 0);
  }
  return os.str();
}

void print_report(std::ostream& out, const RunReport& r) {
  const auto& c = r.confusion;
  out << std::left;
  auto row = [&](const char* key, const auto& value) { out << "  " << std::setw(16) << key << value << '\n'; };
  out << "run report\n";
  row("descriptor", r.descriptor);
  row("config", r.config_text());
  row("dataset", r.dataset);
  row("mode", r.mode);
  row("feature dim", r.feature_dim);
  row("accuracy", std::to_string(r.accuracy()));
  row("confusion", "tp=" + std::to_string(c.tp) + " tn=" + std::to_string(c.tn) + " fp=" + std::to_string(c.fp) +
                       " fn=" + std::to_string(c.fn));
  row("lambda", r.lambda);
  row("gamma", r.gamma);
  row("extract [s]", r.extract_seconds);
  row("train [s]", r.train_seconds);
  row("predict [s]", r.predict_seconds);
  row("seed", r.seed);
  row("version", r.version);

  out << "record=run descriptor=" << r.descriptor << " dataset=" << r.dataset << " mode=" << r.mode
      << " accuracy=" << std::setprecision(6) << r.accuracy() << " tp=" << c.tp << " tn=" << c.tn << " fp=" << c.fp
      << " fn=" << c.fn << " total=" << c.total() << " feature_dim=" << r.feature_dim << " lambda=" << r.lambda
      << " gamma=" << r.gamma << " extract_s=" << r.extract_seconds << " train_s=" << r.train_seconds
      << " predict_s=" << r.predict_seconds << " seed=" << r.seed << " version=" << r.version;
  std::istringstream cfg(r.config_text());
  for (std::string kv; cfg >> kv;) out << ' ' << kv;
  out << '\n';
}

void print_bench(std::ostream& out, const BenchReport& r) {
  const auto kind = parse_descriptor(r.descriptor).value_or(DescriptorKind::mlbp_hog);
  out << "benchmark " << r.descriptor << " (" << config_string(kind, r.config) << "), " << r.samples
      << " images, feature dim " << r.feature_dim << ", " << r.repeat << " runs\n";
  out << "  correctness gate: " << (r.gate_passed ? "passed" : "FAILED") << " (" << r.gate_detail << ")\n";
  if (!r.gate_passed) return;
  double projection_mean = 0;
  for (const auto& t : r.timings) {
    if (t.path == ExecutionPath::projection) projection_mean = t.mean_seconds;
  }
  out << std::fixed << std::setprecision(6);
  for (const auto& t : r.timings) {
    out << "  " << std::left << std::setw(12) << to_string(t.path) << " mean " << t.mean_seconds << " s  std "
        << t.std_seconds << " s\n";
  }
  out.unsetf(std::ios::floatfield);
  for (const auto& t : r.timings) {
    out << "record=bench descriptor=" << r.descriptor << " path=" << to_string(t.path) << " mean_s=" << t.mean_seconds
        << " std_s=" << t.std_seconds << " repeat=" << r.repeat << " samples=" << r.samples
        << " feature_dim=" << r.feature_dim;
    if (projection_mean > 0) out << " ratio_to_projection=" << t.mean_seconds / projection_mean;
    out << '\n';
  }
}

}  // namespace mproj::cli

namespace mproj::cli {

std::string RunReport::config_text() const {
  return config_string(parse_descriptor(descriptor).value_or(DescriptorKind::mlbp_hog), config);
}

}  // namespace mproj::cli
