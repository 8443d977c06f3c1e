#pragma once

#include <cmath>
#include <span>
#include <vector>

namespace rst {

struct RichardsonResult {
  double value = 0.0;
  double error = 0.0;          // |best - next best| from the table
  double amplification = 1.0;  // bound on how much input noise is magnified
};

// Limit of F(h) as h -> 0 from samples values[k] = F(h0 * ratio^-k), assuming
// F(h) = L + c_p h^p + c_{p+s} h^{p+s} + ... with p = first_power and
// s = power_step (2 for even expansions such as central differences).
inline RichardsonResult richardson_limit(std::span<const double> values, double ratio = 2.0,
                                         int first_power = 1, int power_step = 1) {
  RichardsonResult out;
  if (values.empty()) return out;
  std::vector<double> level(values.begin(), values.end());
  std::vector<double> previous;
  int power = first_power;
  while (level.size() > 1) {
    const double factor = std::pow(ratio, power);
    previous = level;
    std::vector<double> next(level.size() - 1);
    for (std::size_t i = 0; i + 1 < level.size(); ++i) {
      next[i] = (factor * level[i + 1] - level[i]) / (factor - 1.0);
    }
    out.amplification *= (factor + 1.0) / (factor - 1.0);
    level = std::move(next);
    power += power_step;
  }
  out.value = level.front();
  out.error = previous.empty() ? 0.0 : std::abs(level.front() - previous.back());
  return out;
}

}  // namespace rst
