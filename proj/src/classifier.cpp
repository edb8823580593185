#include "mproj/classifier.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace mproj {

Standardizer Standardizer::fit(const FeatureTable& x) {
  Standardizer s;
  const double n = double(x.rows());
  s.mean = x.colwise().sum() / n;
  s.scale.resize(x.cols());
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    const double sd = std::sqrt((x.col(j).array() - s.mean(j)).square().sum() / n);
    s.scale(j) = sd > 1e-12 * std::max(1.0, std::abs(s.mean(j))) ? sd : 1.0;
  }
  return s;
}

Standardizer Standardizer::identity(Eigen::Index dim) {
  return Standardizer{Eigen::RowVectorXd::Zero(dim), Eigen::RowVectorXd::Ones(dim)};
}

FeatureTable Standardizer::apply(const FeatureTable& x) const {
  if (x.cols() != mean.size()) {
    throw InputError("standardize: feature length " + std::to_string(x.cols()) + " != " + std::to_string(mean.size()));
  }
  return (x.rowwise() - mean).array().rowwise() / scale.array();
}

Eigen::MatrixXd rbf_gram(const FeatureTable& a, const FeatureTable& b, double gamma) {
  if (a.cols() != b.cols()) throw ShapeError("rbf_gram: " + shape_string(a) + " vs " + shape_string(b));
  Eigen::MatrixXd k(a.rows(), b.rows());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < b.rows(); ++j) {
      k(i, j) = std::exp(-gamma * (a.row(i) - b.row(j)).squaredNorm());
    }
  }
  return k;
}

double median_heuristic_gamma(const FeatureTable& x, std::uint64_t seed) {
  const Eigen::Index n = x.rows();
  if (n < 2) throw InputError("median heuristic needs at least 2 samples");
  constexpr std::size_t kMaxPairs = 1000;
  std::vector<double> dist;
  const std::size_t all_pairs = std::size_t(n) * std::size_t(n - 1) / 2;
  if (all_pairs <= kMaxPairs) {
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = i + 1; j < n; ++j) dist.push_back((x.row(i) - x.row(j)).norm());
    }
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<Eigen::Index> pick(0, n - 1);
    while (dist.size() < kMaxPairs) {
      const Eigen::Index i = pick(rng), j = pick(rng);
      if (i != j) dist.push_back((x.row(i) - x.row(j)).norm());
    }
  }
  std::sort(dist.begin(), dist.end());
  const std::size_t m = dist.size();
  const double median = m % 2 ? dist[m / 2] : 0.5 * (dist[m / 2 - 1] + dist[m / 2]);
  if (!(median > 0)) {
    warn("median heuristic: median pairwise distance is zero, using gamma = 1");
    return 1.0;
  }
  return 1.0 / (2.0 * median * median);
}

namespace {

void check_labels(std::span<const int> labels, Eigen::Index rows) {
  if (Eigen::Index(labels.size()) != rows) {
    throw InputError("lse: " + std::to_string(labels.size()) + " labels for " + std::to_string(rows) + " samples");
  }
  bool pos = false, neg = false;
  for (int y : labels) {
    if (y == 1) pos = true;
    else if (y == -1) neg = true;
    else throw InputError("lse: labels must be +1 or -1, got " + std::to_string(y));
  }
  if (!pos || !neg) throw InputError("lse: training labels contain a single class");
}

}  // namespace

LseModel lse_train(const FeatureTable& features, std::span<const int> labels, const LseOptions& options) {
  if (features.rows() < 2) throw InputError("lse: need at least 2 training samples");
  check_labels(labels, features.rows());
  if (!(options.lambda > 0)) throw ConfigError("lse: lambda must be positive");
  if (options.gamma && !(*options.gamma > 0)) throw ConfigError("lse: gamma must be positive");

  LseModel model;
  model.lambda = options.lambda;
  model.standardization = options.standardize ? Standardizer::fit(features) : Standardizer::identity(features.cols());
  model.training_features = model.standardization.apply(features);
  model.gamma = options.gamma ? *options.gamma : median_heuristic_gamma(model.training_features, options.gamma_seed);

  Eigen::MatrixXd system = rbf_gram(model.training_features, model.training_features, model.gamma);
  system.diagonal().array() += model.lambda;
  Eigen::VectorXd y(features.rows());
  for (Eigen::Index i = 0; i < y.size(); ++i) y(i) = labels[std::size_t(i)];

  const Eigen::LLT<Eigen::MatrixXd> llt(system);
  if (llt.info() != Eigen::Success) throw NumericError("lse: kernel system is not positive definite");
  model.dual_weights = llt.solve(y);
  if (!model.dual_weights.allFinite()) throw NumericError("lse: non-finite dual weights");
  return model;
}

Prediction lse_predict(const LseModel& model, const FeatureTable& features) {
  Prediction p;
  if (features.rows() == 0) return p;
  if (features.cols() != model.dim()) {
    throw InputError("lse_predict: feature length " + std::to_string(features.cols()) + " != trained " +
                     std::to_string(model.dim()));
  }
  const Eigen::MatrixXd k = rbf_gram(model.standardization.apply(features), model.training_features, model.gamma);
  p.decision = k * model.dual_weights;
  p.labels.reserve(std::size_t(p.decision.size()));
  for (Eigen::Index i = 0; i < p.decision.size(); ++i) p.labels.push_back(p.decision(i) >= 0 ? 1 : -1);
  return p;
}

void Confusion::add(int truth, int predicted) {
  if (truth == 1) (predicted == 1 ? tp : fn)++;
  else (predicted == 1 ? fp : tn)++;
}

Confusion& Confusion::operator+=(const Confusion& o) {
  tp += o.tp;
  tn += o.tn;
  fp += o.fp;
  fn += o.fn;
  return *this;
}

Confusion confusion(std::span<const int> truth, std::span<const int> predicted) {
  if (truth.size() != predicted.size()) throw InputError("confusion: length mismatch");
  Confusion c;
  for (std::size_t i = 0; i < truth.size(); ++i) c.add(truth[i], predicted[i]);
  return c;
}

std::vector<int> stratified_folds(std::span<const int> labels, int folds, std::uint64_t seed) {
  if (folds < 2) throw ConfigError("cross-validation needs at least 2 folds");
  std::vector<std::size_t> pos, neg;
  for (std::size_t i = 0; i < labels.size(); ++i) (labels[i] == 1 ? pos : neg).push_back(i);
  if (pos.size() < std::size_t(folds) || neg.size() < std::size_t(folds)) {
    throw InputError("cross-validation: each class needs at least " + std::to_string(folds) + " samples");
  }
  std::mt19937_64 rng(seed);
  std::shuffle(pos.begin(), pos.end(), rng);
  std::shuffle(neg.begin(), neg.end(), rng);
  std::vector<int> fold(labels.size());
  std::size_t slot = 0;
  for (const auto* group : {&pos, &neg}) {
    for (std::size_t i : *group) fold[i] = int(slot++ % std::size_t(folds));
  }
  return fold;
}

FeatureTable select_rows(const FeatureTable& x, std::span<const Eigen::Index> rows) {
  FeatureTable out(Eigen::Index(rows.size()), x.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) out.row(Eigen::Index(i)) = x.row(rows[i]);
  return out;
}

Confusion cross_validate(const FeatureTable& features, std::span<const int> labels, int folds, std::uint64_t seed,
                         const LseOptions& options) {
  check_labels(labels, features.rows());
  const std::vector<int> fold = stratified_folds(labels, folds, seed);
  Confusion total;
  for (int f = 0; f < folds; ++f) {
    std::vector<Eigen::Index> train_rows, test_rows;
    std::vector<int> train_labels, test_labels;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (fold[i] == f) {
        test_rows.push_back(Eigen::Index(i));
        test_labels.push_back(labels[i]);
      } else {
        train_rows.push_back(Eigen::Index(i));
        train_labels.push_back(labels[i]);
      }
    }
    const LseModel model = lse_train(select_rows(features, train_rows), train_labels, options);
    const Prediction p = lse_predict(model, select_rows(features, test_rows));
    total += confusion(test_labels, p.labels);
  }
  return total;
}

std::vector<int> permuted_labels(std::span<const int> labels, std::uint64_t seed) {
  std::vector<int> out(labels.begin(), labels.end());
  std::mt19937_64 rng(seed);
  std::shuffle(out.begin(), out.end(), rng);
  return out;
}

}  // namespace mproj
