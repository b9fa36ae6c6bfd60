#include "log_table.hpp"

#include <quadmath.h>

#include <cstdint>
#include <mutex>

namespace zlaw::detail {
namespace {

DoubleDouble from_quad(__float128 q) {
  const double hi = static_cast<double>(q);
  const double lo = static_cast<double>(q - static_cast<__float128>(hi));
  return quick_two_sum(hi, lo);
}

}  // namespace

DoubleDouble log_dd(double x) { return from_quad(logq(static_cast<__float128>(x))); }

// ln n = ln p + ln(n/p) with p the smallest prime factor, so only primes need a
// binary128 logarithm.
LogTable::LogTable(std::size_t size) : hi_(size, 0.0), lo_(size, 0.0), spf_(size, 0) {
  if (size < 3) return;
  auto& spf = spf_;
  std::vector<std::uint32_t> primes;
  for (std::size_t n = 2; n < size; ++n) {
    if (spf[n] == 0) {
      spf[n] = static_cast<std::uint32_t>(n);
      primes.push_back(static_cast<std::uint32_t>(n));
      const DoubleDouble l = from_quad(logq(static_cast<__float128>(n)));
      hi_[n] = l.hi;
      lo_[n] = l.lo;
    } else {
      const std::size_t p = spf[n];
      const DoubleDouble l = (*this)[p] + (*this)[n / p];
      hi_[n] = l.hi;
      lo_[n] = l.lo;
    }
    for (const std::uint32_t p : primes) {
      const std::size_t m = n * p;
      if (p > spf[n] || m >= size) break;
      spf[m] = p;
    }
  }
}

const LogTable& kernel_log_table() {
  static const LogTable table(std::size_t{1} << 16);
  return table;
}

std::shared_ptr<const LogTable> oracle_log_table(std::size_t min_size) {
  static std::mutex mutex;
  static std::shared_ptr<const LogTable> table;
  std::lock_guard<std::mutex> lock(mutex);
  if (!table || table->size() < min_size) {
    std::size_t size = table ? table->size() : std::size_t{1} << 12;
    while (size < min_size) size *= 2;
    table = std::make_shared<const LogTable>(size);
  }
  return table;
}

}  // namespace zlaw::detail
