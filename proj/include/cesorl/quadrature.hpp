#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace cesorl {

struct QuadratureOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  int max_subdivisions = 1 << 14;
};

struct QuadratureResult {
  double value = 0.0;
  double abs_error = 0.0;
  int subdivisions = 0;
  bool converged = false;
};

namespace detail {

inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851, 0.864864423359769072789712788640926,
    0.741531185599394439863864773280788, 0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204, 0.104790010322250183839876322541518,
    0.140653259715525918745189590510238, 0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780, 0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Segment {
  double lo, hi, value, error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

template <class F>
Segment gauss_kronrod(F& f, double lo, double hi) {
  const double c = 0.5 * (lo + hi);
  const double h = 0.5 * (hi - lo);
  const double fc = f(c);
  double kronrod = fc * kKronrodWeights[7];
  double gauss = fc * kGaussWeights[3];
  double abs_sum = std::abs(kronrod);
  std::array<double, 7> f1{}, f2{};
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kKronrodNodes[j];
    f1[j] = f(c - dx);
    f2[j] = f(c + dx);
    kronrod += kKronrodWeights[j] * (f1[j] + f2[j]);
    abs_sum += kKronrodWeights[j] * (std::abs(f1[j]) + std::abs(f2[j]));
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * (f1[j] + f2[j]);
  }
  const double mean = 0.5 * kronrod;
  double asc = kKronrodWeights[7] * std::abs(fc - mean);
  for (int j = 0; j < 7; ++j) asc += kKronrodWeights[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));
  const double ah = std::abs(h);
  asc *= ah;
  double err = std::abs((kronrod - gauss) * h);
  if (asc != 0.0 && err != 0.0) err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
  const double resabs = abs_sum * ah;
  const double eps = std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(err, 50.0 * eps * resabs);
  return {lo, hi, kronrod * h, err};
}

} // namespace detail

/// Globally adaptive Gauss-Kronrod (7/15) quadrature on a finite interval.
template <class F>
QuadratureResult integrate(F&& f, double lo, double hi, const QuadratureOptions& opt = {}) {
  QuadratureResult out;
  if (!(hi > lo)) return out;
  std::priority_queue<detail::Segment> heap;
  auto first = detail::gauss_kronrod(f, lo, hi);
  double total = first.value;
  double error = first.error;
  heap.push(first);
  int n = 1;
  while (error > std::max(opt.abs_tol, opt.rel_tol * std::abs(total))) {
    if (n >= opt.max_subdivisions || !std::isfinite(total)) {
      out.value = total;
      out.abs_error = error;
      out.subdivisions = n;
      return out;
    }
    const auto worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(mid > worst.lo && mid < worst.hi)) {
      // Interval cannot be split further in floating point; accept it.
      heap.push({worst.lo, worst.hi, worst.value, 0.0});
      error -= worst.error;
      continue;
    }
    auto left = detail::gauss_kronrod(f, worst.lo, mid);
    auto right = detail::gauss_kronrod(f, mid, worst.hi);
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++n;
    if (n % 64 == 0) {
      // Re-sum to shed accumulated cancellation in the running totals.
      auto copy = heap;
      total = error = 0.0;
      while (!copy.empty()) {
        total += copy.top().value;
        error += copy.top().error;
        copy.pop();
      }
    }
  }
  out.value = total;
  out.abs_error = std::max(error, 0.0);
  out.subdivisions = n;
  out.converged = true;
  return out;
}

/// Integrates over consecutive subintervals split at `cuts` (outside points ignored).
template <class F>
QuadratureResult integrate_split(F&& f, double lo, double hi, std::vector<double> cuts, const QuadratureOptions& opt = {}) {
  std::vector<double> pts{lo};
  std::sort(cuts.begin(), cuts.end());
  for (double c : cuts) {
    if (c > pts.back() && c < hi) pts.push_back(c);
  }
  pts.push_back(hi);
  QuadratureResult out;
  out.converged = true;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const auto r = integrate(f, pts[i], pts[i + 1], opt);
    out.value += r.value;
    out.abs_error += r.abs_error;
    out.subdivisions += r.subdivisions;
    out.converged = out.converged && r.converged;
  }
  return out;
}

} // namespace cesorl
