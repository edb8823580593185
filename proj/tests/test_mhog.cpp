#include <doctest.h>

#include "mproj/descriptor.hpp"
#include "oracles.hpp"

using namespace mproj;

namespace {

// Gradient directions: immediate neighbors then distance-two neighbors.
constexpr int kDr[8] = {-1, -1, -1, 0, -2, -2, -2, 0};
constexpr int kDc[8] = {1, 0, -1, -1, 2, 0, -2, -2};

DirectionalStack<double> oracle_mhog(const Image& x, const MhogConfig& cfg) {
  DirectionalStack<double> out;
  for (int i = 0; i < 8; ++i) {
    const Image f = oracle::sliding_mean(oracle::difference(x, kDr[i], kDc[i]), cfg.c2, 0);
    const Image g = oracle::sliding_mean(f, cfg.c1, cfg.v);
    out[i] = cfg.normalize ? oracle::block_normalize(g, cfg.b, cfg.effective_block_overlap(), cfg.epsilon) : g;
  }
  return out;
}

}  // namespace

TEST_SUITE("mhog") {

TEST_CASE("constant image has zero gradients") {
  const auto s = gradient_stack(Image(Image::Constant(8, 8, 17)));
  for (const auto& m : s) CHECK(m.isZero(0));
}

TEST_CASE("horizontal ramp") {
  Image x(8, 8);
  for (Eigen::Index r = 0; r < 8; ++r) {
    for (Eigen::Index c = 0; c < 8; ++c) x(r, c) = double(c);
  }
  const auto s = gradient_stack(x);
  CHECK(s[1].isZero(0));
  CHECK(s[5].isZero(0));
  for (Eigen::Index c = 2; c < 6; ++c) {
    CHECK(s[0](3, c) == 1);
    CHECK(s[3](3, c) == -1);
    CHECK(s[4](3, c) == 2);
    CHECK(s[7](3, c) == -2);
  }
}

TEST_CASE("gradient directions match the offset table") {
  for (int i = 0; i < 8; ++i) {
    CHECK(kGradientOffsets[i].dr == kDr[i]);
    CHECK(kGradientOffsets[i].dc == kDc[i]);
  }
  std::mt19937_64 rng(6);
  const Image x = oracle::random_image(rng, 10, 7);
  const auto s = gradient_stack(x);
  for (int i = 0; i < 8; ++i) CHECK(s[i] == oracle::difference(x, kDr[i], kDc[i]));
  CHECK_THROWS_AS(gradient_stack(Image(Image::Zero(4, 9))), InputError);
}

TEST_CASE("pooling stages") {
  DirectionalStack<double> s;
  std::mt19937_64 rng(12);
  for (auto& m : s) m = oracle::random_image(rng, 8, 8);

  MhogConfig identity;
  identity.c2 = 1;
  const auto f = pooled_gradients(s, identity);
  for (int i = 0; i < 8; ++i) CHECK(f[i] == s[i]);

  DirectionalStack<double> eights;
  eights.fill(Image::Constant(4, 4, 8));
  MhogConfig cfg;
  cfg.c2 = 2;
  for (const auto& m : pooled_gradients(eights, cfg)) CHECK(m == Image::Constant(2, 2, 8));

  DirectionalStack<double> row;
  Image r(1, 4);
  r << 1, 2, 3, 4;
  Image tile(4, 4);
  for (Eigen::Index i = 0; i < 4; ++i) tile.row(i) = r;
  row.fill(tile);
  MhogConfig ov;
  ov.c1 = 2;
  ov.v = 1;
  const auto g = overlap_pooled(row, ov);
  Image expected(1, 3);
  expected << 1.5, 2.5, 3.5;
  CHECK(g[0].rows() == 3);
  CHECK(g[0].row(1) == expected);
}

TEST_CASE("block normalization closed form") {
  MhogConfig cfg;
  cfg.b = 2;
  cfg.v = 0;
  for (double value : {0.5, 3.0, -7.0}) {
    DirectionalStack<double> g;
    g.fill(Image::Constant(4, 4, value));
    const auto z = block_normalize(g, cfg);
    const double expected = value / std::sqrt(cfg.epsilon + 4 * value * value);
    for (const auto& m : z) CHECK(oracle::max_abs_diff(m, Image::Constant(4, 4, expected)) <= 1e-15);
  }
  DirectionalStack<double> zero;
  zero.fill(Image::Zero(6, 6));
  for (const auto& m : block_normalize(zero, cfg)) CHECK(m.isZero(0));
}

TEST_CASE("block normalization is scale invariant and bounded") {
  std::mt19937_64 rng(13);
  for (Eigen::Index b : {2, 3, 4, 6}) {
    MhogConfig cfg;
    cfg.b = b;
    cfg.v = 0;
    cfg.epsilon = 0;
    DirectionalStack<double> g;
    for (auto& m : g) m = (oracle::random_image(rng, 12, 12).array() - 127.0).matrix();
    const auto z = block_normalize(g, cfg);
    for (double alpha : {0.5, 3.0, 100.0}) {
      DirectionalStack<double> scaled;
      for (int i = 0; i < 8; ++i) scaled[i] = g[i] * alpha;
      const auto zs = block_normalize(scaled, cfg);
      for (int i = 0; i < 8; ++i) CHECK(oracle::max_abs_diff(zs[i], z[i]) <= 1e-9);
    }
    for (const auto& m : z) {
      if (12 % b == 0) CHECK(m.cwiseAbs().maxCoeff() <= 1.0);
    }
  }
}

TEST_CASE("stage outputs match the loop oracles") {
  std::mt19937_64 rng(14);
  for (int k = 0; k < 10; ++k) {
    const Image x = oracle::random_image(rng, 32, 32);
    MhogConfig cfg;
    cfg.c1 = 4;
    cfg.c2 = 2;
    cfg.v = k % 3;
    cfg.b = 2 + k % 2;
    const auto s = gradient_stack(x);
    const auto f = pooled_gradients(s, cfg);
    const auto g = overlap_pooled(f, cfg);
    const auto z = block_normalize(g, cfg);
    for (int i = 0; i < 8; ++i) {
      const Image fo = oracle::sliding_mean(s[i], cfg.c2, 0);
      const Image go = oracle::sliding_mean(f[i], cfg.c1, cfg.v);
      CHECK(oracle::max_abs_diff(f[i], fo) <= 1e-12);
      CHECK(oracle::max_abs_diff(g[i], go) <= 1e-12);
      CHECK(oracle::max_abs_diff(z[i], oracle::block_normalize(g[i], cfg.b, cfg.effective_block_overlap(), cfg.epsilon)) <=
            1e-9);
    }
  }
}

TEST_CASE("default config on 56x56 yields eight 13x13 maps") {
  std::mt19937_64 rng(15);
  const Image x = oracle::random_image(rng, 56, 56);
  MhogConfig cfg;
  const auto z = mhog(x, cfg);
  for (const auto& m : z) {
    CHECK(m.rows() == 13);
    CHECK(m.cols() == 13);
  }
  CHECK(cfg.output_length(56) == 13);
  CHECK(flatten(z).size() == 1352);
  CHECK(flatten(z).head(169) == Eigen::Map<const Eigen::VectorXd>(z[0].data(), 169));
}

TEST_CASE("end to end against the oracle and across paths") {
  std::mt19937_64 rng(16);
  for (bool normalize : {true, false}) {
    MhogConfig cfg;
    cfg.normalize = normalize;
    const Image x = oracle::random_image(rng, 56, 56);
    const auto z = mhog(x, cfg);
    const auto zo = oracle_mhog(x, cfg);
    const auto zd = mhog(x, cfg, ExecutionPath::dense);
    const auto zs = mhog(x, cfg, ExecutionPath::scanning);
    for (int i = 0; i < 8; ++i) {
      CHECK(oracle::max_abs_diff(z[i], zo[i]) <= 1e-9);
      CHECK(oracle::same_bits(z[i], zd[i]));
      CHECK(oracle::max_abs_diff(z[i], zs[i]) <= 1e-9);
    }
  }
}

TEST_CASE("gradient features ignore a constant offset") {
  std::mt19937_64 rng(18);
  MhogConfig cfg;
  cfg.normalize = false;
  const Image x = oracle::random_image(rng, 24, 24, true);
  const auto z = mhog(x, cfg);
  const auto zk = mhog(Image((x.array() + 57.0).matrix()), cfg);
  for (int i = 0; i < 8; ++i) CHECK(zk[i] == z[i]);
}

TEST_CASE("config validation") {
  MhogConfig cfg;
  cfg.v = 4;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = {};
  cfg.block_overlap = 2;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = {};
  cfg.c2 = 0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = {};
  CHECK(cfg.effective_block_overlap() == 1);
  cfg.v = 0;
  CHECK(cfg.effective_block_overlap() == 0);
}

}
