#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "spinmkt/errors.hpp"

namespace spinmkt {

// Exact ratio form of a numeric constant given as text ("4.1" -> 41/10,
// "5/2" -> 5/2). Sign-critical comparisons use this to avoid rounding.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

// Accepts integers, plain decimals, and a/b fractions; nullopt otherwise.
std::optional<Rational> parse_rational(const std::string& text);

enum class Phase { Frozen, FiniteTemperature };

struct Params {
  int N = 0;          // number of agents/sites
  int d = 0;          // half neighborhood size; each site samples 2d neighbors
  double alpha = 0;   // global-local coupling
  std::optional<Rational> alpha_ratio;  // exact form when alpha came as text
  double lambda = 0;  // price impact
  Phase phase = Phase::Frozen;
  double beta = 0;    // inverse temperature, FiniteTemperature only

  bool supercritical() const { return alpha > 2.0 * d; }
  void validate() const;  // throws InvalidParams
};

// alpha as text keeps the exact ratio; the plain-double overload is for tests.
Params make_params(int N, int d, const std::string& alpha, double lambda);
Params make_params(int N, int d, double alpha, double lambda);

}  // namespace spinmkt
