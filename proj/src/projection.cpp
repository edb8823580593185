#include "mproj/projection.hpp"

#include <iostream>
#include <mutex>
#include <set>

namespace mproj {

namespace {

std::mutex warning_mutex;

WarningHandler default_handler() {
  return [](const std::string& message) {
    static std::set<std::string> seen;
    if (seen.insert(message).second) std::cerr << "warning: " << message << '\n';
  };
}

WarningHandler& handler_slot() {
  static WarningHandler handler = default_handler();
  return handler;
}

}  // namespace

WarningHandler set_warning_handler(WarningHandler handler) {
  std::lock_guard lock(warning_mutex);
  WarningHandler previous = std::move(handler_slot());
  handler_slot() = handler ? std::move(handler) : default_handler();
  return previous;
}

void warn(const std::string& message) {
  std::lock_guard lock(warning_mutex);
  handler_slot()(message);
}

ShiftOperator make_shift(Eigen::Index size, int shift, Axis axis) {
  if (size < 2) throw ConfigError("make_shift: size must be at least 2, got " + std::to_string(size));
  if (std::abs(shift) >= size) {
    throw ConfigError("make_shift: |shift| = " + std::to_string(std::abs(shift)) + " must be below size " +
                      std::to_string(size));
  }
  return ShiftOperator{size, shift, axis};
}

PoolingOperator make_pooling(Eigen::Index n, Eigen::Index cell, Eigen::Index overlap, bool normalized, Side side) {
  if (cell < 1 || overlap < 0 || overlap >= cell || cell > n) {
    throw ConfigError("make_pooling: need 0 <= v < c <= n, got n=" + std::to_string(n) + " c=" + std::to_string(cell) +
                      " v=" + std::to_string(overlap));
  }
  PoolingOperator op{n, cell, overlap, normalized, side};
  if (op.dropped() > 0) {
    warn("pooling with c=" + std::to_string(cell) + " v=" + std::to_string(overlap) + " over length " +
         std::to_string(n) + " drops " + std::to_string(op.dropped()) + " trailing position(s)");
  }
  return op;
}

}  // namespace mproj
