#include "curvosc/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace curvosc {

namespace {

// 15-point Gauss-Legendre nodes/weights on [-1, 1] (positive half; symmetric).
constexpr int kHalf = 8;
const double kNodes[kHalf] = {
    0.0000000000000000000, 0.2011940939974345223, 0.3941513470775633699,
    0.5709721726085388475, 0.7244177313601700474, 0.8482065834104272162,
    0.9372733924007059043, 0.9879925180204854284};
const double kWeights[kHalf] = {
    0.2025782419255612729, 0.1984314853271115765, 0.1861610000155622110,
    0.1662692058169939336, 0.1395706779261543144, 0.1071592204671719350,
    0.0703660474881081247, 0.0307532419961172684};

double gauss15(const std::function<double(double)>& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double hal = 0.5 * (b - a);
  double acc = kWeights[0] * f(mid);
  for (int i = 1; i < kHalf; ++i) {
    const double dx = hal * kNodes[i];
    acc += kWeights[i] * (f(mid + dx) + f(mid - dx));
  }
  return acc * hal;
}

struct Panel {
  double a, b, value, error;
};

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double tol) {
  QuadratureResult res;
  if (!(tol >= 1e-12)) tol = 1e-12;
  if (a == b) {
    res.converged = true;
    return res;
  }

  auto make_panel = [&f](double lo, double hi) {
    const double whole = gauss15(f, lo, hi);
    const double mid = 0.5 * (lo + hi);
    const double split = gauss15(f, lo, mid) + gauss15(f, mid, hi);
    return Panel{lo, hi, split, std::abs(split - whole)};
  };

  constexpr int kMaxPanels = 20000;
  std::vector<Panel> panels;
  panels.reserve(256);
  panels.push_back(make_panel(a, b));

  double total = panels[0].value;
  double err = panels[0].error;
  while (static_cast<int>(panels.size()) < kMaxPanels) {
    if (err <= tol * std::max(std::abs(total), 1e-3)) break;
    // split the worst panel
    size_t worst = 0;
    for (size_t i = 1; i < panels.size(); ++i) {
      if (panels[i].error > panels[worst].error) worst = i;
    }
    const Panel p = panels[worst];
    const double mid = 0.5 * (p.a + p.b);
    if (mid <= p.a || mid >= p.b) break;  // interval exhausted at double resolution
    Panel left = make_panel(p.a, mid);
    Panel right = make_panel(mid, p.b);
    panels[worst] = left;
    panels.push_back(right);
    total += left.value + right.value - p.value;
    err += left.error + right.error - p.error;
    if (panels.size() % 64 == 0) {
      // refresh accumulators to shed cancellation noise
      total = 0.0;
      err = 0.0;
      for (const Panel& q : panels) {
        total += q.value;
        err += q.error;
      }
    }
  }

  total = 0.0;
  err = 0.0;
  for (const Panel& q : panels) {
    total += q.value;
    err += q.error;
  }
  res.value = total;
  res.error_estimate = err;
  res.panels = static_cast<int>(panels.size());
  res.converged = err <= tol * std::max(std::abs(total), 1e-3);
  return res;
}

QuadratureResult integrate_to_infinity(const std::function<double(double)>& f, double a,
                                       double tol) {
  QuadratureResult res;
  if (!(tol >= 1e-12)) tol = 1e-12;

  const double len0 = std::max(1.0, std::abs(a));
  double lo = a;
  double hi = a + len0;
  double total = 0.0;
  double err = 0.0;
  double prev_chunk = 0.0;
  bool have_prev = false;
  constexpr int kMaxChunks = 64;

  for (int k = 0; k < kMaxChunks; ++k) {
    QuadratureResult chunk = integrate(f, lo, hi, tol * 0.25);
    total += chunk.value;
    err += chunk.error_estimate;
    res.panels += chunk.panels;
    if (!chunk.converged) {
      res.value = total;
      res.error_estimate = err;
      return res;  // converged stays false
    }

    const double scale = std::max(std::abs(total), 1e-3);
    if (have_prev && std::abs(prev_chunk) > 0.0) {
      const double ratio = std::abs(chunk.value) / std::abs(prev_chunk);
      if (ratio < 0.75) {
        // geometric tail bound: |next chunks| <= |chunk| * ratio / (1 - ratio)
        const double tail = std::abs(chunk.value) * ratio / (1.0 - ratio);
        if (std::abs(chunk.value) + tail <= 0.5 * tol * scale) {
          res.value = total;
          res.error_estimate = err + tail;
          res.converged = res.error_estimate <= tol * scale;
          return res;
        }
      }
    }
    if (std::abs(chunk.value) == 0.0 && have_prev && std::abs(prev_chunk) == 0.0) {
      res.value = total;
      res.error_estimate = err;
      res.converged = true;
      return res;
    }
    have_prev = true;
    prev_chunk = chunk.value;
    lo = hi;
    hi = a + (hi - a) * 2.0;
  }

  res.value = total;
  res.error_estimate = err + std::abs(prev_chunk);
  res.converged = false;  // never reached a decaying tail
  return res;
}

}  // namespace curvosc
