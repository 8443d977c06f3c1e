#pragma once

#include <string>
#include <vector>

// The acceptance gates, shared by the acceptance test binary and the CLI
// selftest mode.
namespace rst::checks {

struct SubCheck {
  std::string name;
  double deviation = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string note;
};

struct CheckResult {
  int id = 0;
  std::string name;
  std::vector<SubCheck> parts;
  double seconds = 0.0;
  double time_limit = 0.0;  // 0 means no limit
  bool passed = false;

  // Largest deviation / tolerance over the parts.
  double worst_ratio() const;
};

CheckResult cp1_arithmetic_identity();
CheckResult cp1_asymptotics();
CheckResult two_route_coefficients();
CheckResult g_function_suite();
CheckResult supertrace_oracle();
CheckResult duhamel_moment_oracle();
CheckResult orbifold_suite();
CheckResult special_function_gates();
CheckResult covolume_asymptotics();

std::vector<CheckResult> run_all();

// Fixed-seed geometries used by the two-route check; seed is part of the contract.
struct RandomGeometry {
  int n;
  int rk_e;
  double vol;
  double int_c1tm;
  double int_c1e;
};
std::vector<RandomGeometry> random_geometries(unsigned long long seed, int count);
inline constexpr unsigned long long kGeometrySeed = 0x5eed2024ULL;

}  // namespace rst::checks
