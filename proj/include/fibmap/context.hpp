#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "fibmap/point.hpp"

namespace fibmap {

/// Parameter c together with constants every module keeps reaching for.
/// fib holds F_0..F_N with F_0 = F_1 = 1, capped at the last value that
/// fits in a signed 64-bit exponent; fib_at(-1) = 0 completes the
/// recurrence downward.
struct ParamContext {
  Complex c;
  bool is_real = false;
  double beta = 0.0;  // golden ratio (1+sqrt(5))/2
  std::vector<long long> fib;

  double real_c() const { return c.real(); }

  long long fib_at(int n) const {
    if (n == -1) return 0;
    return fib.at(static_cast<std::size_t>(n));
  }

  int max_fib_index() const { return static_cast<int>(fib.size()) - 1; }

  static ParamContext make(Complex c_value);
};

}  // namespace fibmap
