#include "branchtrace/special_functions.hpp"

#include <cmath>
#include <limits>

#include "branchtrace/errors.hpp"

namespace branchtrace::special {
namespace {

constexpr double kEps = 1e-16;
constexpr int kMaxIter = 10'000;

// P(a, x) by its power series; converges quickly for x < a + 1.
double gamma_p_series(double a, double x) {
  double ap = a;
  double term = 1.0 / a;
  double sum = term;
  for (int i = 0; i < kMaxIter; ++i) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * kEps) {
      break;
    }
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Q(a, x) by continued fraction (modified Lentz); for x >= a + 1.
double gamma_q_fraction(double a, double x) {
  constexpr double kTiny = std::numeric_limits<double>::min() / kEps;
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIter; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < kTiny) {
      d = kTiny;
    }
    c = b + an / c;
    if (std::fabs(c) < kTiny) {
      c = kTiny;
    }
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kEps) {
      break;
    }
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

void check_args(double a, double x) {
  if (!(a > 0.0) || !(x >= 0.0)) {
    throw DomainError("incomplete gamma: require a > 0 and x >= 0");
  }
}

}  // namespace

double regularized_gamma_q(double a, double x) {
  check_args(a, x);
  if (x == 0.0) {
    return 1.0;
  }
  if (x < a + 1.0) {
    return 1.0 - gamma_p_series(a, x);
  }
  return gamma_q_fraction(a, x);
}

double regularized_gamma_p(double a, double x) {
  check_args(a, x);
  if (x == 0.0) {
    return 0.0;
  }
  if (x < a + 1.0) {
    return gamma_p_series(a, x);
  }
  return 1.0 - gamma_q_fraction(a, x);
}

double erfc(double x) {
  if (std::isnan(x)) {
    return x;
  }
  if (x < 0.0) {
    return 2.0 - erfc(-x);
  }
  return regularized_gamma_q(0.5, x * x);
}

}  // namespace branchtrace::special
