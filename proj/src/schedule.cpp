#include "scsvm/schedule.hpp"

#include <cmath>
#include <stdexcept>

namespace scsvm {

std::vector<std::int64_t> log_schedule(std::int64_t T) {
  if (T < 1) throw std::invalid_argument("log_schedule: T must be >= 1");
  std::vector<std::int64_t> out;
  if (T == 1) return {1};
  double logT = std::log10(static_cast<double>(T));
  for (std::int64_t k = 0; k < T; ++k) {
    double u = logT * static_cast<double>(k) / static_cast<double>(T - 1);
    auto idx = static_cast<std::int64_t>(std::ceil(std::pow(10.0, u)));
    if (idx > T) idx = T;
    if (out.empty() || idx != out.back()) out.push_back(idx);
  }
  return out;
}

std::vector<std::int64_t> full_schedule(std::int64_t T) {
  std::vector<std::int64_t> out;
  out.reserve(static_cast<size_t>(T));
  for (std::int64_t t = 1; t <= T; ++t) out.push_back(t);
  return out;
}

}  // namespace scsvm
