#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "mproj/classifier.hpp"

using namespace mproj;

namespace {

struct Blobs {
  FeatureTable x;
  std::vector<int> y;
};

Blobs blobs(std::size_t n_per_class, Eigen::Index dim, double separation, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  Blobs b;
  b.x.resize(Eigen::Index(2 * n_per_class), dim);
  for (std::size_t i = 0; i < 2 * n_per_class; ++i) {
    const int label = i % 2 == 0 ? 1 : -1;
    b.y.push_back(label);
    for (Eigen::Index d = 0; d < dim; ++d) b.x(Eigen::Index(i), d) = noise(rng) + (d == 0 ? label * separation / 2 : 0.0);
  }
  return b;
}

}  // namespace

TEST_SUITE("classifier") {

TEST_CASE("strong ridge shrinks decisions toward zero") {
  const Blobs b = blobs(20, 3, 10, 1);
  LseOptions opt;
  opt.lambda = 1e6;
  const auto pred = lse_predict(lse_train(b.x, b.y, opt), b.x);
  CHECK(pred.decision.cwiseAbs().maxCoeff() < 1e-2);
}

TEST_CASE("well separated blobs are learned exactly") {
  const Blobs b = blobs(30, 4, 10, 2);
  const auto model = lse_train(b.x, b.y);
  const auto pred = lse_predict(model, b.x);
  CHECK(confusion(b.y, pred.labels).accuracy() == 1.0);
  const Blobs test = blobs(30, 4, 10, 3);
  CHECK(confusion(test.y, lse_predict(model, test.x).labels).accuracy() >= 0.95);
}

TEST_CASE("gram matrix is symmetric positive semidefinite") {
  const Blobs b = blobs(25, 5, 2, 4);
  const Eigen::MatrixXd k = rbf_gram(b.x, b.x, 0.3);
  CHECK(k == k.transpose());
  CHECK(k.diagonal() == Eigen::VectorXd::Ones(50));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(k);
  CHECK(es.eigenvalues().minCoeff() >= -1e-10);
}

TEST_CASE("tiny ridge interpolates the training labels") {
  const Blobs b = blobs(15, 6, 0.5, 5);
  LseOptions opt;
  opt.lambda = 1e-10;
  opt.gamma = 0.5;
  const auto pred = lse_predict(lse_train(b.x, b.y, opt), b.x);
  for (std::size_t i = 0; i < b.y.size(); ++i) CHECK(std::abs(pred.decision(Eigen::Index(i)) - b.y[i]) < 1e-3);
}

TEST_CASE("flipping labels negates the decision") {
  const Blobs b = blobs(20, 3, 1, 6);
  std::vector<int> flipped(b.y.size());
  std::transform(b.y.begin(), b.y.end(), flipped.begin(), [](int y) { return -y; });
  const Blobs test = blobs(10, 3, 1, 7);
  const auto d = lse_predict(lse_train(b.x, b.y), test.x).decision;
  const auto df = lse_predict(lse_train(b.x, flipped), test.x).decision;
  CHECK(df == -d);
}

TEST_CASE("training order does not change predictions") {
  const Blobs b = blobs(20, 3, 1, 8);
  std::vector<Eigen::Index> order(b.y.size());
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), std::mt19937_64(9));
  std::vector<int> y;
  for (auto i : order) y.push_back(b.y[std::size_t(i)]);
  LseOptions opt;
  opt.gamma = 0.2;
  const Blobs test = blobs(10, 3, 1, 10);
  const auto d = lse_predict(lse_train(b.x, b.y, opt), test.x).decision;
  const auto dp = lse_predict(lse_train(select_rows(b.x, order), y, opt), test.x).decision;
  CHECK((d - dp).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("edge cases and errors") {
  const Blobs b = blobs(5, 2, 3, 11);
  const auto model = lse_train(b.x, b.y);
  const auto empty = lse_predict(model, FeatureTable(0, 2));
  CHECK(empty.labels.empty());
  CHECK(empty.decision.size() == 0);
  CHECK_THROWS_AS(lse_predict(model, FeatureTable::Zero(3, 5)), InputError);

  const std::vector<int> same(b.y.size(), 1);
  CHECK_THROWS_AS(lse_train(b.x, same), InputError);
  std::vector<int> bad = b.y;
  bad[0] = 2;
  CHECK_THROWS_AS(lse_train(b.x, bad), InputError);
  LseOptions neg;
  neg.lambda = 0;
  CHECK_THROWS(lse_train(b.x, b.y, neg));
  CHECK_THROWS_AS(lse_train(b.x, std::vector<int>{1, -1}), InputError);
}

TEST_CASE("standardizer") {
  FeatureTable x(4, 2);
  x << 1, 5, 3, 5, 5, 5, 7, 5;
  const Standardizer s = Standardizer::fit(x);
  CHECK(s.mean(0) == 4);
  CHECK(s.mean(1) == 5);
  CHECK(s.scale(1) == 1);
  const FeatureTable z = s.apply(x);
  CHECK(std::abs(z.col(0).mean()) < 1e-15);
  CHECK(std::abs(z.col(0).squaredNorm() / 4 - 1) < 1e-12);
  CHECK(z.col(1).isZero(0));
  CHECK(Standardizer::identity(2).apply(x) == x);
}

TEST_CASE("median heuristic matches brute force") {
  const Blobs b = blobs(10, 3, 1, 12);
  std::vector<double> d2;
  for (Eigen::Index i = 0; i < b.x.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < b.x.rows(); ++j) d2.push_back((b.x.row(i) - b.x.row(j)).norm());
  }
  std::sort(d2.begin(), d2.end());
  const double med = d2.size() % 2 ? d2[d2.size() / 2] : 0.5 * (d2[d2.size() / 2 - 1] + d2[d2.size() / 2]);
  CHECK(median_heuristic_gamma(b.x) == doctest::Approx(1.0 / (2.0 * med * med)).epsilon(1e-12));
}

TEST_CASE("folds and confusion") {
  std::vector<int> labels;
  for (int i = 0; i < 23; ++i) labels.push_back(i < 13 ? 1 : -1);
  const auto folds = stratified_folds(labels, 5, 1);
  CHECK(folds == stratified_folds(labels, 5, 1));
  for (int f = 0; f < 5; ++f) {
    int pos = 0, neg = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (folds[i] == f) (labels[i] > 0 ? pos : neg)++;
    }
    CHECK(pos >= 2);
    CHECK(pos <= 3);
    CHECK(neg == 2);
  }
  CHECK_THROWS_AS(stratified_folds(std::vector<int>{1, 1, 1, -1}, 2, 0), InputError);

  const auto c = confusion(std::vector<int>{1, 1, -1, -1}, std::vector<int>{1, -1, -1, 1});
  CHECK(c.tp == 1);
  CHECK(c.fn == 1);
  CHECK(c.tn == 1);
  CHECK(c.fp == 1);
  CHECK(c.accuracy() == 0.5);

  const auto p = permuted_labels(labels, 3);
  CHECK(std::count(p.begin(), p.end(), 1) == 13);
  CHECK(p == permuted_labels(labels, 3));
}

}
