#pragma once

#include <cstdint>

#include "mproj/matrix_core.hpp"

namespace mproj {

enum class Axis { horizontal, vertical };
enum class Side { left, right };

/// Circulant shift. A horizontal operator H acts from the right,
/// (X H)(r, c) = X(r, (c + l) mod N); a vertical operator V acts from the
/// left, (V X)(r, c) = X((r + l) mod M, c). A negative distance is the
/// inverse shift.
struct ShiftOperator {
  Eigen::Index size = 0;
  int shift = 0;
  Axis axis = Axis::horizontal;

  /// Source index feeding output index `i` along the shifted axis.
  Eigen::Index source(Eigen::Index i) const {
    const Eigen::Index s = (i + shift) % size;
    return s < 0 ? s + size : s;
  }
};

ShiftOperator make_shift(Eigen::Index size, int shift, Axis axis);

template <typename Scalar = double>
ImageMatrix<Scalar> materialize(const ShiftOperator& op) {
  ImageMatrix<Scalar> m = ImageMatrix<Scalar>::Zero(op.size, op.size);
  for (Eigen::Index i = 0; i < op.size; ++i) {
    if (op.axis == Axis::horizontal) {
      m(op.source(i), i) = Scalar(1);
    } else {
      m(i, op.source(i)) = Scalar(1);
    }
  }
  return m;
}

namespace detail {
template <typename Scalar>
void check_shift_shape(const ImageMatrix<Scalar>& x, const ShiftOperator& op) {
  const Eigen::Index n = op.axis == Axis::horizontal ? x.cols() : x.rows();
  if (n != op.size) {
    throw ShapeError("apply_shift: operator of size " + std::to_string(op.size) + " does not fit image " +
                     shape_string(x));
  }
}
}  // namespace detail

/// Index-remapping application of a shift operator.
template <typename Scalar>
ImageMatrix<Scalar> apply_shift(const ImageMatrix<Scalar>& x, const ShiftOperator& op) {
  detail::check_shift_shape(x, op);
  ImageMatrix<Scalar> out(x.rows(), x.cols());
  if (op.axis == Axis::horizontal) {
    for (Eigen::Index c = 0; c < x.cols(); ++c) out.col(c) = x.col(op.source(c));
  } else {
    for (Eigen::Index r = 0; r < x.rows(); ++r) out.row(r) = x.row(op.source(r));
  }
  return out;
}

/// Same result through a dense product with the materialized operator.
template <typename Scalar>
ImageMatrix<Scalar> apply_shift_dense(const ImageMatrix<Scalar>& x, const ShiftOperator& op) {
  detail::check_shift_shape(x, op);
  const ImageMatrix<Scalar> m = materialize<Scalar>(op);
  return op.axis == Axis::horizontal ? matmul(x, m) : matmul(m, x);
}

/// Banded window operator. Window k covers input positions
/// [k*stride, k*stride + cell) with stride = cell - overlap. A left operator
/// is (windows x n) and pools rows, L X; a right operator is its transpose
/// (n x windows) and pools columns, X R.
struct PoolingOperator {
  Eigen::Index input_length = 0;
  Eigen::Index cell = 0;
  Eigen::Index overlap = 0;
  bool normalized = true;
  Side side = Side::left;

  Eigen::Index stride() const { return cell - overlap; }
  Eigen::Index windows() const { return (input_length - cell) / stride() + 1; }
  /// Trailing input positions not covered by any window.
  Eigen::Index dropped() const { return input_length - ((windows() - 1) * stride() + cell); }

  template <typename Scalar = double>
  Scalar weight() const {
    return normalized ? Scalar(1) / Scalar(cell) : Scalar(1);
  }
};

/// Builds a pooling operator; warns when trailing positions are dropped.
PoolingOperator make_pooling(Eigen::Index n, Eigen::Index cell, Eigen::Index overlap, bool normalized, Side side);

template <typename Scalar = double>
ImageMatrix<Scalar> materialize(const PoolingOperator& op) {
  ImageMatrix<Scalar> l = ImageMatrix<Scalar>::Zero(op.windows(), op.input_length);
  const Scalar w = op.weight<Scalar>();
  for (Eigen::Index k = 0; k < op.windows(); ++k) {
    l.row(k).segment(k * op.stride(), op.cell).setConstant(w);
  }
  if (op.side == Side::right) return l.transpose();
  return l;
}

namespace detail {
template <typename Scalar>
void check_pooling_shape(const ImageMatrix<Scalar>& x, const PoolingOperator& op, bool transposed) {
  const Eigen::Index expected = transposed ? op.windows() : op.input_length;
  const Eigen::Index n = op.side == Side::left ? x.rows() : x.cols();
  if (n != expected) {
    throw ShapeError(std::string("pooling: operator ") + (op.side == Side::left ? "L" : "R") +
                     (transposed ? "^T" : "") + " expects " + std::to_string(expected) + " along its axis, got image " +
                     shape_string(x));
  }
}
}  // namespace detail

/// Banded accumulation of L X (left) or X R (right), summing each window in
/// ascending input order.
template <typename Scalar>
ImageMatrix<Scalar> apply_pooling(const ImageMatrix<Scalar>& x, const PoolingOperator& op) {
  detail::check_pooling_shape(x, op, false);
  const Scalar w = op.weight<Scalar>();
  const Eigen::Index s = op.stride();
  if (op.side == Side::left) {
    ImageMatrix<Scalar> out = ImageMatrix<Scalar>::Zero(op.windows(), x.cols());
    for (Eigen::Index k = 0; k < op.windows(); ++k) {
      for (Eigen::Index t = k * s; t < k * s + op.cell; ++t) out.row(k) += w * x.row(t);
    }
    return out;
  }
  ImageMatrix<Scalar> out = ImageMatrix<Scalar>::Zero(x.rows(), op.windows());
  for (Eigen::Index k = 0; k < op.windows(); ++k) {
    for (Eigen::Index t = k * s; t < k * s + op.cell; ++t) out.col(k) += x.col(t) * w;
  }
  return out;
}

/// Scatters window values back onto input positions: L^T Y (left) or
/// Y R^T (right). Overlapping windows accumulate in ascending window order.
template <typename Scalar>
ImageMatrix<Scalar> apply_pooling_transposed(const ImageMatrix<Scalar>& y, const PoolingOperator& op) {
  detail::check_pooling_shape(y, op, true);
  const Scalar w = op.weight<Scalar>();
  const Eigen::Index s = op.stride();
  const Eigen::Index n = op.input_length;
  auto first_window = [&](Eigen::Index t) {
    const Eigen::Index lo = t - op.cell + 1;
    return lo <= 0 ? Eigen::Index(0) : (lo + s - 1) / s;
  };
  auto last_window = [&](Eigen::Index t) { return std::min<Eigen::Index>(t / s, op.windows() - 1); };
  if (op.side == Side::left) {
    ImageMatrix<Scalar> out = ImageMatrix<Scalar>::Zero(n, y.cols());
    for (Eigen::Index t = 0; t < n; ++t) {
      for (Eigen::Index k = first_window(t); k <= last_window(t); ++k) out.row(t) += w * y.row(k);
    }
    return out;
  }
  ImageMatrix<Scalar> out = ImageMatrix<Scalar>::Zero(y.rows(), n);
  for (Eigen::Index t = 0; t < n; ++t) {
    for (Eigen::Index k = first_window(t); k <= last_window(t); ++k) out.col(t) += y.col(k) * w;
  }
  return out;
}

template <typename Scalar>
ImageMatrix<Scalar> apply_pooling_dense(const ImageMatrix<Scalar>& x, const PoolingOperator& op) {
  detail::check_pooling_shape(x, op, false);
  const ImageMatrix<Scalar> m = materialize<Scalar>(op);
  return op.side == Side::left ? matmul(m, x) : matmul(x, m);
}

template <typename Scalar>
ImageMatrix<Scalar> apply_pooling_transposed_dense(const ImageMatrix<Scalar>& y, const PoolingOperator& op) {
  detail::check_pooling_shape(y, op, true);
  const ImageMatrix<Scalar> mt = materialize<Scalar>(op).transpose();
  return op.side == Side::left ? matmul(mt, y) : matmul(y, mt);
}

}  // namespace mproj
