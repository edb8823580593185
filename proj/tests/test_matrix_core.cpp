#include <doctest.h>

#include "mproj/matrix_core.hpp"
#include "oracles.hpp"

using namespace mproj;

TEST_SUITE("matrix_core") {

TEST_CASE("matmul identity and permutation") {
  const Image a = Image::Random(3, 3);
  CHECK(matmul(Image(Image::Identity(3, 3)), a) == a);

  Image x(2, 2), p(2, 2), expected(2, 2);
  x << 1, 2, 3, 4;
  p << 0, 1, 1, 0;
  expected << 2, 1, 4, 3;
  CHECK(matmul(x, p) == expected);
}

TEST_CASE("matmul matches triple loop") {
  std::mt19937_64 rng(11);
  const Image a = oracle::random_image(rng, 5, 4), b = oracle::random_image(rng, 4, 3);
  CHECK(oracle::max_abs_diff(matmul(a, b), oracle::matmul(a, b)) <= 1e-12 * 255 * 255);

  for (Eigen::Index n : {1, 7, 33, 64}) {
    const Image x = Image::Random(n, n), y = Image::Random(n, n);
    const Image ref = oracle::matmul(x, y);
    const double scale = std::max(1.0, ref.cwiseAbs().maxCoeff());
    CHECK(oracle::max_abs_diff(matmul(x, y), ref) / scale <= 1e-12);
  }
}

TEST_CASE("matmul shape error names both shapes") {
  const Image a(2, 3), b(2, 3);
  try {
    (void)matmul(a, b);
    FAIL("expected ShapeError");
  } catch (const ShapeError& e) {
    CHECK(std::string(e.what()).find("2x3 x 2x3") != std::string::npos);
  }
}

TEST_CASE("hadamard") {
  const Image a = Image::Random(3, 4);
  CHECK(hadamard(a, Image(Image::Ones(3, 4))) == a);
  CHECK(hadamard(a, Image(Image::Zero(3, 4))).isZero(0));
  Image l(1, 2), r(1, 2), expected(1, 2);
  l << 2, 3;
  r << 4, 5;
  expected << 8, 15;
  CHECK(hadamard(l, r) == expected);
  CHECK_THROWS_AS(hadamard(a, Image(4, 3)), ShapeError);
}

TEST_CASE("elementwise_pow") {
  Image a(1, 2);
  a << 4, 9;
  const Image r = elementwise_pow(a, -0.5);
  CHECK(r(0, 0) == 0.5);
  CHECK(r(0, 1) == 1.0 / 3.0);

  Image b(1, 2), sq(1, 2);
  b << 2, -3;
  sq << 4, 9;
  CHECK(elementwise_pow(b, 2) == sq);

  Image bad(1, 2);
  bad << 1, 0;
  CHECK_THROWS_AS(elementwise_pow(bad, -0.5), DomainError);
  bad << 1, -2;
  CHECK_THROWS_AS(elementwise_pow(bad, -0.5), DomainError);

  const Image pos = (Image::Random(6, 5).array() + 1.5).matrix();
  const Image lhs = elementwise_pow(elementwise_pow(pos, 2), -0.5);
  CHECK(oracle::max_abs_diff(lhs, Image(pos.cwiseInverse())) <= 1e-12);
  CHECK(oracle::max_abs_diff(elementwise_pow(pos, 1.5), Image(pos.array().pow(1.5))) == 0);
}

TEST_CASE("step thresholds at zero inclusive") {
  Image a(1, 3), expected(1, 3);
  a << -1, 0, 2;
  expected << 0, 1, 1;
  CHECK(step(a) == expected);
  CHECK(step(Image(Image::Zero(4, 4))) == Image::Ones(4, 4));

  Image x = Image::Random(9, 9);
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (x.data()[i] == 0) x.data()[i] = 0.25;
  }
  // Holds for any delta below the smallest |x|.
  const double smallest = x.cwiseAbs().minCoeff();
  for (double delta : {1e-12, smallest / 2}) {
    CHECK(step(x) + step(Image((-x).array() - delta)) == Image::Ones(9, 9));
  }
}

TEST_CASE("elementwise ops commute with transposition") {
  for (int trial = 0; trial < 20; ++trial) {
    const Image a = Image::Random(5, 7), b = Image::Random(5, 7);
    const Image pos = (a.array().abs() + 0.1).matrix();
    CHECK(hadamard(Image(a.transpose()), Image(b.transpose())) == Image(hadamard(a, b).transpose()));
    CHECK(elementwise_pow(Image(pos.transpose()), -0.5) == Image(elementwise_pow(pos, -0.5).transpose()));
    CHECK(elementwise_pow(Image(a.transpose()), 2) == Image(elementwise_pow(a, 2).transpose()));
    // step(0) = 1, so a second application maps everything to one.
    CHECK(step(step(a)) == Image::Ones(5, 7));
  }
}

}
