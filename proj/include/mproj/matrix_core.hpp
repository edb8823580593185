#pragma once

#include <cmath>
#include <sstream>
#include <string>
#include <type_traits>

#include <Eigen/Dense>

#include "mproj/errors.hpp"

namespace mproj {

/// Dense row-major image or intermediate map.
template <typename Scalar = double>
using ImageMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

using Image = ImageMatrix<double>;

template <typename Derived>
std::string shape_string(const Eigen::DenseBase<Derived>& a) {
  std::ostringstream os;
  os << a.rows() << "x" << a.cols();
  return os.str();
}

template <typename A, typename B>
void require_same_shape(const Eigen::DenseBase<A>& a, const Eigen::DenseBase<B>& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ShapeError(std::string(what) + ": shape mismatch " + shape_string(a) + " vs " + shape_string(b));
  }
}

/// Dense product with a fixed accumulation order: every output entry is the
/// sum over k = 0..K-1 in ascending order, one rounding per multiply and per
/// add. The projection fast paths reproduce exactly this order, which is what
/// makes them bitwise comparable.
template <typename Scalar>
ImageMatrix<Scalar> matmul(const ImageMatrix<Scalar>& a, const ImageMatrix<Scalar>& b) {
  if (a.cols() != b.rows()) {
    throw ShapeError("matmul: inner dimensions differ, " + shape_string(a) + " x " + shape_string(b));
  }
  ImageMatrix<Scalar> out = ImageMatrix<Scalar>::Zero(a.rows(), b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index k = 0; k < a.cols(); ++k) {
      const Scalar aik = a(i, k);
      for (Eigen::Index j = 0; j < b.cols(); ++j) {
        out(i, j) += aik * b(k, j);
      }
    }
  }
  return out;
}

template <typename Scalar>
ImageMatrix<Scalar> hadamard(const ImageMatrix<Scalar>& a, const ImageMatrix<Scalar>& b) {
  require_same_shape(a, b, "hadamard");
  return a.cwiseProduct(b);
}

/// Entrywise power. Exponent 2 squares exactly and exponent -1/2 is the
/// reciprocal square root, which requires strictly positive entries.
template <typename Scalar>
ImageMatrix<Scalar> elementwise_pow(const ImageMatrix<Scalar>& a, std::type_identity_t<Scalar> exponent) {
  if (exponent == Scalar(2)) {
    return a.cwiseProduct(a);
  }
  if (exponent == Scalar(-0.5)) {
    ImageMatrix<Scalar> out(a.rows(), a.cols());
    for (Eigen::Index i = 0; i < a.size(); ++i) {
      const Scalar x = a.data()[i];
      if (!(x > Scalar(0))) {
        std::ostringstream os;
        os << "elementwise_pow: entry " << i << " = " << x << " is not positive for exponent -1/2";
        throw DomainError(os.str());
      }
      out.data()[i] = Scalar(1) / std::sqrt(x);
    }
    return out;
  }
  return a.unaryExpr([exponent](Scalar x) { return std::pow(x, exponent); });
}

/// Heaviside step with step(0) = 1.
template <typename Scalar>
ImageMatrix<Scalar> step(const ImageMatrix<Scalar>& a) {
  return a.unaryExpr([](Scalar x) { return x >= Scalar(0) ? Scalar(1) : Scalar(0); });
}

}  // namespace mproj
