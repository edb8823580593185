#include <doctest.h>

#include "mproj/classifier.hpp"
#include "mproj/descriptor.hpp"
#include "mproj/pipeline.hpp"
#include "mproj/synthetic.hpp"
#include "oracles.hpp"

using namespace mproj;

TEST_SUITE("pipeline") {

TEST_CASE("descriptor names round trip") {
  for (auto kind : {DescriptorKind::mlbp, DescriptorKind::mhog, DescriptorKind::dmp, DescriptorKind::mlbp_hog,
                    DescriptorKind::lbp_ref}) {
    CHECK(parse_descriptor(to_string(kind)) == kind);
  }
  CHECK(parse_descriptor("mlbp_hog") == DescriptorKind::mlbp_hog);
  CHECK(!parse_descriptor("hog"));
}

TEST_CASE("M-LBP-HOG of a constant image is zero") {
  const FeatureVector fv = mlbp_hog(Image::Constant(56, 56, 90), {}, {});
  CHECK(fv.values.size() == 1352);
  CHECK(fv.values.isZero(0));
}

TEST_CASE("M-LBP-HOG is M-HOG applied to the M-LBP image") {
  std::mt19937_64 rng(30);
  for (int k = 0; k < 5; ++k) {
    const Image x = oracle::random_image(rng, 56, 56, true);
    const FeatureVector fused = mlbp_hog(x, {}, {});
    const FeatureRow staged = flatten(mhog(mlbp(x), MhogConfig{}));
    CHECK(std::memcmp(fused.values.data(), staged.data(), sizeof(double) * std::size_t(staged.size())) == 0);
  }
}

TEST_CASE("feature dimensions") {
  DescriptorConfig cfg;
  CHECK(feature_dimension(DescriptorKind::mlbp, cfg, 56, 56) == 3136);
  CHECK(feature_dimension(DescriptorKind::mhog, cfg, 56, 56) == 1352);
  CHECK(feature_dimension(DescriptorKind::dmp, cfg, 56, 56) == 8 * 7 * 7);
  CHECK(feature_dimension(DescriptorKind::mhog, cfg, 56, 40) == 8 * 13 * 9);
  cfg.mhog.c1 = 8;
  cfg.mhog.c2 = 8;
  cfg.mhog.v = 0;
  CHECK_THROWS_AS(feature_dimension(DescriptorKind::mhog, cfg, 56, 56), ConfigError);
}

TEST_CASE("dmp is M-HOG without overlap or normalization") {
  const DescriptorConfig eff = effective_config(DescriptorKind::dmp, {});
  CHECK(eff.mhog.v == 0);
  CHECK(!eff.mhog.normalize);
  std::mt19937_64 rng(31);
  const Image x = oracle::random_image(rng, 56, 56);
  DescriptorConfig plain;
  plain.mhog.v = 0;
  plain.mhog.normalize = false;
  CHECK(extract(x, DescriptorKind::dmp, {}).values == extract(x, DescriptorKind::mhog, plain).values);
}

TEST_CASE("extract_all is deterministic across thread counts") {
  const Dataset ds = gen_synthetic(6, 56, 56, 1);
  const FeatureMatrix one = extract_all(ds, DescriptorKind::mlbp_hog, {}, ExecutionPath::projection, 1);
  for (unsigned t : {2u, 4u, 16u}) {
    const FeatureMatrix many = extract_all(ds, DescriptorKind::mlbp_hog, {}, ExecutionPath::projection, t);
    CHECK(many.values == one.values);
    CHECK(many.ids == one.ids);
  }
  CHECK(one.size() == 12);
  CHECK(one.dim() == 1352);
  CHECK(one.labels[0] == 1);
  CHECK(one.labels[1] == -1);
}

TEST_CASE("a failing sample is named") {
  Dataset ds = gen_synthetic(2, 24, 24, 2);
  ds.samples[2].image.setConstant(5);
  ds.samples[2].id = "flat_one";
  DescriptorConfig cfg;
  cfg.mhog.epsilon = 0;
  try {
    (void)extract_all(ds, DescriptorKind::mhog, cfg, ExecutionPath::projection, 3);
    FAIL("expected InputError");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("flat_one") != std::string::npos);
  }

  Dataset wrong = gen_synthetic(1, 24, 24, 2);
  wrong.samples[1].image = Image::Zero(20, 24);
  CHECK_THROWS_AS(extract_all(wrong, DescriptorKind::mlbp, {}), InputError);
  CHECK_THROWS_AS(extract_all(Dataset{}, DescriptorKind::mlbp, {}), InputError);
}

TEST_CASE("synthetic generator") {
  const Dataset a = gen_synthetic(5, 56, 56, 42);
  const Dataset b = gen_synthetic(5, 56, 56, 42);
  const Dataset c = gen_synthetic(5, 56, 56, 43);
  REQUIRE(a.samples.size() == 10);
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    CHECK(a.samples[i].image == b.samples[i].image);
    CHECK(a.samples[i].id == b.samples[i].id);
    CHECK(a.samples[i].label == (i % 2 == 0 ? 1 : -1));
    CHECK((a.samples[i].image.array() >= 0).all());
    CHECK((a.samples[i].image.array() <= 255).all());
    CHECK((a.samples[i].image.array() == a.samples[i].image.array().round()).all());
  }
  CHECK(a.samples[0].image != c.samples[0].image);
  CHECK(a.samples[0].id == "syn_00000");
}

TEST_CASE("synthetic classes are separable by the descriptor") {
  const Dataset ds = gen_synthetic(50, 56, 56, 7);
  const FeatureMatrix fm = extract_all(ds, DescriptorKind::mlbp_hog, {});
  const Confusion cm = cross_validate(fm.values, fm.labels, 5, 7);
  CHECK(cm.total() == 100);
  CHECK(cm.accuracy() > 0.6);
}

}
