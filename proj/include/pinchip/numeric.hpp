#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace pinchip::numeric {

// Complete elliptic integral of the first kind K(k), modulus convention
// (not parameter m = k^2), via the arithmetic-geometric mean.
inline double ellint_k(double k) {
  if (!(k >= 0.0 && k < 1.0)) throw std::domain_error("ellint_k: modulus must be in [0, 1)");
  double a = 1.0;
  double b = std::sqrt((1.0 - k) * (1.0 + k));
  for (int i = 0; i < 64 && std::abs(a - b) > 1e-16 * a; ++i) {
    const double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
  }
  return std::numbers::pi / (a + b);
}

// K(k') / K(k) with k' = sqrt(1 - k^2).
inline double ellint_k_ratio_complement(double k) {
  const double kp = std::sqrt((1.0 - k) * (1.0 + k));
  return ellint_k(kp) / ellint_k(k);
}

// n points from lo to hi, both endpoints included. n == 1 yields {lo}.
inline std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> out;
  if (n == 0) return out;
  out.reserve(n);
  if (n == 1) {
    out.push_back(lo);
    return out;
  }
  const double span = hi - lo;
  const auto last = static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(lo + span * (static_cast<double>(i) / last));
  }
  out.back() = hi;
  return out;
}

// Floor that ignores representation noise: values within 1e-9 relative of an
// integer snap to it first, so 36.0000000001 and 35.9999999999 both give 36.
inline std::uint64_t floor_count(double x) {
  if (!(x >= 0.0)) return 0;
  const double r = std::round(x);
  if (std::abs(x - r) <= 1e-9 * std::max(1.0, std::abs(x))) return static_cast<std::uint64_t>(r);
  return static_cast<std::uint64_t>(std::floor(x));
}

namespace detail {

inline double adaptive_trapezoid_step(const std::function<double(double)>& f, double a, double b,
                                      double fa, double fb, double whole, double tol, int depth,
                                      int& evaluations) {
  const double m = 0.5 * (a + b);
  const double fm = f(m);
  ++evaluations;
  const double left = 0.5 * (m - a) * (fa + fm);
  const double right = 0.5 * (b - m) * (fm + fb);
  const double refined = left + right;
  if (depth <= 0 || std::abs(refined - whole) <= 3.0 * tol) return refined;
  return adaptive_trapezoid_step(f, a, m, fa, fm, left, 0.5 * tol, depth - 1, evaluations) +
         adaptive_trapezoid_step(f, m, b, fm, fb, right, 0.5 * tol, depth - 1, evaluations);
}

} // namespace detail

struct QuadratureResult {
  double value = 0.0;
  int evaluations = 0;
};

// Adaptive trapezoid rule on [a, b] with absolute tolerance `abs_tol`.
// Subintervals are bisected until successive trapezoid estimates agree.
inline QuadratureResult adaptive_trapezoid(const std::function<double(double)>& f, double a,
                                           double b, double abs_tol, int max_depth = 40) {
  QuadratureResult r;
  if (a == b) return r;
  const double fa = f(a);
  const double fb = f(b);
  r.evaluations = 2;
  const double whole = 0.5 * (b - a) * (fa + fb);
  r.value = detail::adaptive_trapezoid_step(f, a, b, fa, fb, whole, abs_tol, max_depth, r.evaluations);
  return r;
}

} // namespace pinchip::numeric
