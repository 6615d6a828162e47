#pragma once

#include <cstdint>
#include <vector>

namespace scsvm {

// Log-spaced evaluation schedule: unique values of ceil(10^u) for u evenly
// spaced on [0, log10 T] with T points. For T = 100 this yields the 55
// indices 1,2,3,...,50,53,55,...,87,92,96,100.
std::vector<std::int64_t> log_schedule(std::int64_t T);

std::vector<std::int64_t> full_schedule(std::int64_t T);

}  // namespace scsvm
