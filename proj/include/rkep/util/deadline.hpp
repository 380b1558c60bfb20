#pragma once

#include <chrono>
#include <limits>

namespace rkep {

using Clock = std::chrono::steady_clock;

inline double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

/// Wall-clock budget shared by nested solver calls.
class Deadline {
 public:
  Deadline() : end_(Clock::time_point::max()) {}
  explicit Deadline(double seconds) {
    if (seconds >= 1e12 || seconds == std::numeric_limits<double>::infinity()) {
      end_ = Clock::time_point::max();
    } else {
      end_ = Clock::now() + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(seconds));
    }
  }

  bool expired() const { return end_ != Clock::time_point::max() && Clock::now() >= end_; }

  double remaining() const {
    if (end_ == Clock::time_point::max()) return std::numeric_limits<double>::infinity();
    return std::chrono::duration<double>(end_ - Clock::now()).count();
  }

 private:
  Clock::time_point end_;
};

}  // namespace rkep
