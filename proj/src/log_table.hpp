// Tables of ln n in double-double, shared by the Riemann-Siegel kernel and
// the Euler-Maclaurin oracle.
#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

#include "zlaw/double_double.hpp"

namespace zlaw::detail {

class LogTable {
 public:
  /// Entries for n in [0, size); entry 0 is unused.
  explicit LogTable(std::size_t size);

  std::size_t size() const { return hi_.size(); }
  DoubleDouble operator[](std::size_t n) const { return {hi_[n], lo_[n]}; }
  std::uint32_t smallest_prime_factor(std::size_t n) const { return spf_[n]; }

 private:
  std::vector<double> hi_;
  std::vector<double> lo_;
  std::vector<std::uint32_t> spf_;
};

/// Fixed table for the Riemann-Siegel main sum (n < 2^16).
const LogTable& kernel_log_table();

/// Growable table; the returned snapshot stays valid after later growth.
std::shared_ptr<const LogTable> oracle_log_table(std::size_t min_size);

/// ln x to double-double accuracy via binary128.
DoubleDouble log_dd(double x);

}  // namespace zlaw::detail
