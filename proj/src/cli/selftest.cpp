#include <chrono>
#include <cstring>
#include <functional>
#include <ostream>
#include <random>

#include "mproj/cli/commands.hpp"
#include "mproj/descriptor.hpp"

namespace mproj::cli {

namespace {

using Rng = std::mt19937_64;

Image random_image(Rng& rng, Eigen::Index rows, Eigen::Index cols, bool integral = true) {
  std::uniform_real_distribution<double> u(0.0, 255.0);
  Image x(rows, cols);
  for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = integral ? std::floor(u(rng)) : u(rng);
  return x;
}

bool same_bits(const Image& a, const Image& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() &&
         std::memcmp(a.data(), b.data(), std::size_t(a.size()) * sizeof(double)) == 0;
}

double max_abs(const Image& a, const Image& b) { return (a - b).cwiseAbs().maxCoeff(); }

/// Grid configurations that fit an n x n image.
std::vector<MhogConfig> feasible_grid(Eigen::Index n) {
  std::vector<MhogConfig> out;
  for (Eigen::Index c1 : {2, 4, 6}) {
    for (Eigen::Index v : {Eigen::Index(0), c1 / 2}) {
      for (Eigen::Index c2 : {2, 4, 6}) {
        for (Eigen::Index b : {2, 4, 6}) {
          MhogConfig cfg;
          cfg.c1 = c1;
          cfg.c2 = c2;
          cfg.v = v;
          cfg.b = b;
          if (n / c2 < c1 || cfg.output_length(n) < b) continue;
          out.push_back(cfg);
        }
      }
    }
  }
  return out;
}

using Check = std::function<std::string()>;  // empty string = pass

}  // namespace

SelftestResult run_selftest(const SelftestOptions& opts, std::ostream& out) {
  Rng rng(opts.seed);
  const Eigen::Index n = 56;
  std::vector<std::pair<std::string, Check>> checks;

  checks.emplace_back("matmul matches Eigen product", [&]() -> std::string {
    const Image a = Image::Random(17, 11), b = Image::Random(11, 9);
    const Image eig = a * b;
    const double err = max_abs(matmul(a, b), eig);
    return err < 1e-12 ? "" : "max error " + std::to_string(err);
  });

  checks.emplace_back("shift operators are permutations, fast == dense", [&]() -> std::string {
    for (int l : {-2, -1, 0, 1, 2}) {
      for (Axis axis : {Axis::horizontal, Axis::vertical}) {
        const auto op = make_shift(n, l, axis);
        const Image m = materialize(op);
        if ((m.rowwise().sum().array() != 1.0).any() || (m.colwise().sum().array() != 1.0).any()) {
          return "not a permutation for l=" + std::to_string(l);
        }
        const Image x = random_image(rng, n, n, false);
        if (!same_bits(apply_shift(x, op), apply_shift_dense(x, op))) return "fast != dense for l=" + std::to_string(l);
      }
    }
    return "";
  });

  checks.emplace_back("pooling fast == dense over the parameter grid", [&]() -> std::string {
    for (Eigen::Index c : {2, 4, 6}) {
      for (Eigen::Index v : {Eigen::Index(0), c / 2}) {
        for (bool normalized : {true, false}) {
          const auto l = make_pooling(n, c, v, normalized, Side::left);
          const auto r = make_pooling(n, c, v, normalized, Side::right);
          const Image x = random_image(rng, n, n, false);
          if (!same_bits(apply_pooling(x, l), apply_pooling_dense(x, l)) ||
              !same_bits(apply_pooling(x, r), apply_pooling_dense(x, r))) {
            return "mismatch at c=" + std::to_string(c) + " v=" + std::to_string(v);
          }
          const Image y = random_image(rng, l.windows(), n, false);
          if (!same_bits(apply_pooling_transposed(y, l), apply_pooling_transposed_dense(y, l))) {
            return "transposed mismatch at c=" + std::to_string(c) + " v=" + std::to_string(v);
          }
        }
      }
    }
    return "";
  });

  checks.emplace_back("direction consistency of S_i - X", [&]() -> std::string {
    const Image x = random_image(rng, n, n, false);
    for (int i = 0; i < 8; ++i) {
      const Offset off = kLbpOffsets[std::size_t(i)];
      const Image d = opts.corrupt_shift_convention ? Image(shift_image(x, Offset{off.dr, -off.dc}, ExecutionPath::projection) - x)
                                                    : lbp_difference(x, i);
      for (Eigen::Index r = 1; r < n - 1; ++r) {
        for (Eigen::Index c = 1; c < n - 1; ++c) {
          if (d(r, c) != x(r + off.dr, c + off.dc) - x(r, c)) return "direction " + std::to_string(i + 1) + " disagrees";
        }
      }
    }
    return "";
  });

  checks.emplace_back("mlbp == scanning LBP (circular everywhere, interior without padding)", [&]() -> std::string {
    for (int k = 0; k < 20; ++k) {
      const Image x = random_image(rng, n, n);
      const Image m = mlbp(x);
      if (!same_bits(m, scanning_lbp(x, LbpPadding::circular).codes)) return "circular mismatch on image " + std::to_string(k);
      const auto none = scanning_lbp(x, LbpPadding::none);
      if (!same_bits(m.block(1, 1, n - 2, n - 2), none.codes.block(1, 1, n - 2, n - 2))) {
        return "interior mismatch on image " + std::to_string(k);
      }
    }
    return "";
  });

  checks.emplace_back("M-HOG stages match loop oracles", [&]() -> std::string {
    for (const MhogConfig& cfg : feasible_grid(n)) {
      const Image x = random_image(rng, n, n, false);
      const auto q = gradient_stack(x);
      const auto f = pooled_gradients(q, cfg);
      const auto g = overlap_pooled(f, cfg);
      const auto z = block_normalize(g, cfg);
      for (std::size_t i = 0; i < 8; ++i) {
        if (max_abs(f[i], scan::window_mean(q[i], cfg.c2, 0)) > 1e-12) return "pooled_gradients";
        if (max_abs(g[i], scan::window_mean(f[i], cfg.c1, cfg.v)) > 1e-12) return "overlap_pooled";
        if (max_abs(z[i], scan::block_normalize(g[i], cfg.b, cfg.effective_block_overlap(), cfg.epsilon)) > 1e-9) {
          return "block_normalize";
        }
      }
    }
    return "";
  });

  checks.emplace_back("block normalization: scale invariance, zero input, bound", [&]() -> std::string {
    MhogConfig cfg;
    cfg.b = 2;
    cfg.v = 0;
    cfg.epsilon = 0;
    DirectionalStack<double> g;
    for (auto& m : g) m = random_image(rng, 12, 12, false).array() + 1.0;
    const auto z = block_normalize(g, cfg);
    for (double alpha : {0.5, 3.0, 100.0}) {
      DirectionalStack<double> scaled;
      for (std::size_t i = 0; i < 8; ++i) scaled[i] = alpha * g[i];
      const auto zs = block_normalize(scaled, cfg);
      for (std::size_t i = 0; i < 8; ++i) {
        if (max_abs(zs[i], z[i]) > 1e-9) return "scale alpha=" + std::to_string(alpha);
      }
    }
    for (const auto& m : z) {
      if (m.cwiseAbs().maxCoeff() > 1.0) return "entry above 1";
    }
    DirectionalStack<double> zero;
    zero.fill(Image::Zero(12, 12));
    const auto zz = block_normalize(zero, MhogConfig{});
    for (const auto& m : zz) {
      if (!m.isZero(0)) return "zero input not preserved";
    }
    return "";
  });

  checks.emplace_back("shape law over the parameter grid", [&]() -> std::string {
    const Image x = random_image(rng, n, n);
    for (const MhogConfig& cfg : feasible_grid(n)) {
      const Eigen::Index side = (n / cfg.c2 - cfg.c1) / (cfg.c1 - cfg.v) + 1;
      const auto z = mhog(x, cfg);
      if (z[0].rows() != side || z[0].cols() != side) return "wrong side for c1=" + std::to_string(cfg.c1);
    }
    return "";
  });

  checks.emplace_back("composition mlbp_hog == mhog(mlbp)", [&]() -> std::string {
    const DescriptorConfig cfg;
    for (int k = 0; k < 5; ++k) {
      const Image x = random_image(rng, n, n);
      const auto fv = mlbp_hog(x, cfg.mlbp, cfg.mhog);
      const auto manual = flatten(mhog(mlbp(x, cfg.mlbp), cfg.mhog));
      if (fv.values.size() != manual.size() || std::memcmp(fv.values.data(), manual.data(), sizeof(double) * manual.size())) {
        return "mismatch on image " + std::to_string(k);
      }
    }
    return "";
  });

  checks.emplace_back("illumination offset invariance", [&]() -> std::string {
    const DescriptorConfig cfg;
    const Image x = random_image(rng, n, n);
    const auto base = mlbp_hog(x, cfg.mlbp, cfg.mhog).values;
    for (double k : {1.0, 57.0, 200.0}) {
      const Image shifted = x.array() + k;
      if (!same_bits(mlbp(shifted), mlbp(x))) return "mlbp changed for k=" + std::to_string(k);
      if (mlbp_hog(shifted, cfg.mlbp, cfg.mhog).values != base) return "mlbp_hog changed for k=" + std::to_string(k);
    }
    return "";
  });

  checks.emplace_back("execution paths agree", [&]() -> std::string {
    const DescriptorConfig cfg;
    const Image x = random_image(rng, n, n);
    const auto p = extract(x, DescriptorKind::mlbp_hog, cfg, ExecutionPath::projection).values;
    const auto d = extract(x, DescriptorKind::mlbp_hog, cfg, ExecutionPath::dense).values;
    const auto s = extract(x, DescriptorKind::mlbp_hog, cfg, ExecutionPath::scanning).values;
    if (p != d) return "projection != dense";
    if ((p - s).cwiseAbs().maxCoeff() > 1e-9) return "projection vs scanning";
    return "";
  });

  checks.emplace_back("LSE: sample-order invariance and label negation", [&]() -> std::string {
    FeatureTable x(30, 4);
    std::normal_distribution<double> nd;
    std::vector<int> y;
    for (Eigen::Index i = 0; i < 30; ++i) {
      y.push_back(i % 2 ? 1 : -1);
      for (Eigen::Index j = 0; j < 4; ++j) x(i, j) = nd(rng) + (i % 2 ? 1.5 : -1.5);
    }
    FeatureTable probe(10, 4);
    for (Eigen::Index i = 0; i < probe.size(); ++i) probe.data()[i] = nd(rng);
    LseOptions o;
    o.gamma = 0.3;
    const auto base = lse_predict(lse_train(x, y, o), probe).decision;
    std::vector<Eigen::Index> order(30);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<int> yp;
    for (auto i : order) yp.push_back(y[std::size_t(i)]);
    const auto permuted = lse_predict(lse_train(select_rows(x, order), yp, o), probe).decision;
    if ((permuted - base).cwiseAbs().maxCoeff() > 1e-10) return "order changed predictions";
    std::vector<int> flipped;
    for (int v : y) flipped.push_back(-v);
    if (lse_predict(lse_train(x, flipped, o), probe).decision != -base) return "flip not an exact negation";
    return "";
  });

  SelftestResult result;
  const auto start = std::chrono::steady_clock::now();
  for (const auto& [name, check] : checks) {
    std::string failure;
    try {
      failure = check();
    } catch (const std::exception& e) {
      failure = std::string("exception: ") + e.what();
    }
    ++result.checks;
    if (failure.empty()) {
      out << "PASS  " << name << '\n';
    } else {
      out << "FAIL  " << name << ": " << failure << '\n';
      result.failures.push_back(name);
    }
  }
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out << result.checks - result.failures.size() << "/" << result.checks << " checks passed in " << elapsed << " s\n";
  return result;
}

}  // namespace mproj::cli
