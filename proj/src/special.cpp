#include "curvosc/special.hpp"

#include <cmath>
#include <string>

namespace curvosc {

namespace {

bool is_nonpositive_integer(double x, double tol = 1e-8) {
  return x <= tol && std::abs(x - std::round(x)) <= tol * std::max(1.0, std::abs(x));
}

constexpr double kPi = 3.14159265358979323846264338327950288;

}  // namespace

double log_gamma(double x) {
  if (!(x > 0.0)) {
    throw PoleError("log_gamma: requires x > 0, got x=" + std::to_string(x));
  }
  // 14-term Lanczos-type series, full double accuracy.
  static const double cof[14] = {
      57.1562356658629235,     -59.5979603554754912,
      14.1360979747417471,     -0.491913816097620199,
      0.339946499848118887e-4,  0.465236289270485756e-4,
      -0.983744753048795646e-4, 0.158088703224912494e-3,
      -0.210264441724104883e-3, 0.217439618115212643e-3,
      -0.164318106536763890e-3, 0.844182239838527433e-4,
      -0.261908384015814087e-4, 0.368991826595316234e-5};
  double y = x;
  double tmp = x + 5.24218750000000000;
  tmp = (x + 0.5) * std::log(tmp) - tmp;
  double ser = 0.999999999999997092;
  for (int j = 0; j < 14; ++j) ser += cof[j] / ++y;
  return tmp + std::log(2.5066282746310005 * ser / x);
}

double gamma_fn(double x) {
  if (is_nonpositive_integer(x, 0.0)) {
    throw PoleError("gamma_fn: pole at non-positive integer x=" + std::to_string(x));
  }
  if (x >= 0.5) {
    return std::exp(log_gamma(x));
  }
  // Reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x).
  const double s = std::sin(kPi * x);
  return kPi / (s * std::exp(log_gamma(1.0 - x)));
}

double pochhammer(double a, int n) {
  if (n < 0) {
    throw std::invalid_argument("pochhammer: n must be >= 0");
  }
  double prod = 1.0;
  for (int k = 0; k < n; ++k) prod *= a + k;
  return prod;
}

HypergeometricParams make_hypergeometric_params(double a, double b, double c) {
  if (is_nonpositive_integer(c)) {
    throw std::invalid_argument("HypergeometricParams: c must not be 0 or a negative integer");
  }
  return HypergeometricParams{a, b, c};
}

std::vector<double> gauss_2f1_coefficients(int nr, double b, double c) {
  if (nr < 0) throw std::invalid_argument("gauss_2f1_coefficients: nr must be >= 0");
  std::vector<double> coeffs(static_cast<size_t>(nr) + 1);
  coeffs[0] = 1.0;
  // c_{k+1}/c_k = (a+k)(b+k) / ((c+k)(k+1)) with a = -nr
  for (int k = 0; k < nr; ++k) {
    coeffs[k + 1] = coeffs[k] * ((-nr + k) * (b + k)) / ((c + k) * (k + 1.0));
  }
  return coeffs;
}

double evaluate_polynomial(const std::vector<double>& coeffs, double x) {
  double acc = 0.0;
  for (size_t i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
  return acc;
}

double gauss_2f1_polynomial(int nr, double b, double c, double t) {
  return evaluate_polynomial(gauss_2f1_coefficients(nr, b, c), t);
}

double gauss_2f1_polynomial(const HypergeometricParams& params, double t) {
  if (!is_nonpositive_integer(params.a)) {
    throw std::invalid_argument(
        "gauss_2f1_polynomial: a must be a non-positive integer (truncating series)");
  }
  const int nr = static_cast<int>(std::llround(-params.a));
  return gauss_2f1_polynomial(nr, params.b, params.c, t);
}

std::vector<double> confluent_1f1_coefficients(int nr, double c) {
  if (nr < 0) throw std::invalid_argument("confluent_1f1_coefficients: nr must be >= 0");
  std::vector<double> coeffs(static_cast<size_t>(nr) + 1);
  coeffs[0] = 1.0;
  for (int k = 0; k < nr; ++k) {
    coeffs[k + 1] = coeffs[k] * (-nr + k) / ((c + k) * (k + 1.0));
  }
  return coeffs;
}

double confluent_1f1_polynomial(int nr, double c, double x) {
  return evaluate_polynomial(confluent_1f1_coefficients(nr, c), x);
}

double spherical_harmonic_theta(int l, int m, double theta) {
  // Fully normalized associated Legendre P~_l^m(cos theta) including the
  // sqrt((2l+1)/(4pi) (l-m)!/(l+m)!) factor and the Condon-Shortley sign,
  // by the standard stable upward recurrence in l.
  const double ct = std::cos(theta);
  const double st = std::sin(theta);
  double pmm = std::sqrt(1.0 / (4.0 * kPi));  // P~_0^0
  for (int k = 1; k <= m; ++k) {
    pmm *= -std::sqrt((2.0 * k + 1.0) / (2.0 * k)) * st;
  }
  if (l == m) return pmm;
  double pm1 = std::sqrt(2.0 * m + 3.0) * ct * pmm;  // P~_{m+1}^m
  if (l == m + 1) return pm1;
  double plm = 0.0;
  for (int k = m + 2; k <= l; ++k) {
    const double a = std::sqrt((4.0 * k * k - 1.0) / (static_cast<double>(k) * k - static_cast<double>(m) * m));
    const double ap =
        std::sqrt((4.0 * (k - 1.0) * (k - 1.0) - 1.0) /
                  ((k - 1.0) * (k - 1.0) - static_cast<double>(m) * m));
    plm = a * (ct * pm1 - pmm / ap);
    pmm = pm1;
    pm1 = plm;
  }
  return plm;
}

std::complex<double> spherical_harmonic(int l, int m, double theta, double phi) {
  if (l < 0 || std::abs(m) > l) {
    throw std::invalid_argument("spherical_harmonic: need l >= 0 and |m| <= l");
  }
  const int ma = std::abs(m);
  const double p = spherical_harmonic_theta(l, ma, theta);
  const std::complex<double> e(std::cos(ma * phi), std::sin(ma * phi));
  std::complex<double> y = p * e;
  if (m < 0) {
    // Y_{l,-m} = (-1)^m conj(Y_{l,m})
    y = std::conj(y);
    if (ma % 2 == 1) y = -y;
  }
  return y;
}

}  // namespace curvosc
