#include "spinmkt/params.hpp"

#include <cctype>
#include <charconv>
#include <numeric>

namespace spinmkt {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

std::optional<std::int64_t> to_i64(std::string_view s) {
  if (s.size() > 18) return std::nullopt;  // keeps products away from overflow
  std::int64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
  return v;
}

}  // namespace

std::optional<Rational> parse_rational(const std::string& text) {
  std::string_view s = text;
  std::int64_t sign = 1;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    if (s.front() == '-') sign = -1;
    s.remove_prefix(1);
  }
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto n = s.substr(0, slash), d = s.substr(slash + 1);
    if (!all_digits(n) || !all_digits(d)) return std::nullopt;
    auto num = to_i64(n), den = to_i64(d);
    if (!num || !den || *den == 0) return std::nullopt;
    auto g = std::gcd(*num, *den);
    return Rational{sign * *num / g, *den / g};
  }
  auto dot = s.find('.');
  std::string_view whole = dot == std::string_view::npos ? s : s.substr(0, dot);
  std::string_view frac = dot == std::string_view::npos ? std::string_view{} : s.substr(dot + 1);
  if (!all_digits(whole) || (dot != std::string_view::npos && !all_digits(frac))) return std::nullopt;
  if (whole.size() + frac.size() > 15) return std::nullopt;
  std::string digits(whole);
  digits += frac;
  auto num = to_i64(digits);
  if (!num) return std::nullopt;
  std::int64_t den = 1;
  for (size_t i = 0; i < frac.size(); ++i) den *= 10;
  auto g = std::gcd(*num, den);
  return Rational{sign * *num / g, den / g};
}

void Params::validate() const {
  if (N < 2 * d + 2) throw InvalidParams("N must be at least 2d+2");
  if (d < 1) throw InvalidParams("d must be positive");
  if (!(alpha > 0)) throw InvalidParams("alpha must be positive");
  if (!(lambda >= 0)) throw InvalidParams("lambda must be nonnegative");
  if (phase == Phase::FiniteTemperature && !(beta > 0))
    throw InvalidParams("beta must be positive in the finite-temperature phase");
  if (alpha_ratio && (alpha_ratio->num <= 0 || alpha_ratio->den <= 0))
    throw InvalidParams("alpha ratio must be positive");
}

Params make_params(int N, int d, const std::string& alpha, double lambda) {
  Params p;
  p.N = N;
  p.d = d;
  p.alpha_ratio = parse_rational(alpha);
  if (p.alpha_ratio) {
    p.alpha = p.alpha_ratio->value();
  } else {
    try {
      p.alpha = std::stod(alpha);
    } catch (const std::exception&) {
      throw InvalidParams("cannot parse alpha: " + alpha);
    }
  }
  p.lambda = lambda;
  p.validate();
  return p;
}

Params make_params(int N, int d, double alpha, double lambda) {
  Params p;
  p.N = N;
  p.d = d;
  p.alpha = alpha;
  p.lambda = lambda;
  p.validate();
  return p;
}

}  // namespace spinmkt
