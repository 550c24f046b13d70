#pragma once

// Independent reference values for the tests: 50-digit Boost arithmetic,
// Boost special functions and tanh-sinh quadrature. Nothing here calls the
// library.

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/zeta.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <cstddef>

namespace oracle {

using hp = boost::multiprecision::cpp_bin_float_50;

inline double gamma(double x) { return static_cast<double>(boost::math::tgamma(hp(x))); }

inline double zeta(double x) { return static_cast<double>(boost::math::zeta(hp(x))); }

inline hp pi() { return boost::math::constants::pi<hp>(); }

/// int_0^x cos^{alpha-2} = B(sin^2 x; 1/2, (alpha-1)/2) / 2 for alpha > 1.
inline double cos_power_integral(double x, double alpha) {
  const hp s = sin(hp(x));
  return static_cast<double>(boost::math::beta(hp(0.5), (hp(alpha) - 1) / 2, s * s) / 2);
}

/// Same integral by tanh-sinh in double precision (valid for any alpha).
inline double cos_power_integral_quad(double x, double alpha) {
  boost::math::quadrature::tanh_sinh<double> ts;
  return ts.integrate([&](double t) { return std::pow(std::cos(t), alpha - 2.0); }, 0.0, x);
}

/// W_alpha(T) = 2^{alpha-2} / sqrt(pi) Gamma((alpha-1)/2) / Gamma(alpha/2).
inline double circle_wiener(double alpha) {
  const hp a(alpha);
  return static_cast<double>(pow(hp(2), a - 2) / sqrt(pi()) * boost::math::tgamma((a - 1) / 2) /
                             boost::math::tgamma(a / 2));
}

/// W_alpha(S^{N-1}) = 2^{alpha-2} Gamma(N/2) Gamma((alpha-1)/2) / (sqrt(pi) Gamma((N+alpha-2)/2)).
inline double sphere_wiener(int n, double alpha) {
  const hp a(alpha);
  const hp nn(n);
  return static_cast<double>(pow(hp(2), a - 2) * boost::math::tgamma(nn / 2) * boost::math::tgamma((a - 1) / 2) /
                             (sqrt(pi()) * boost::math::tgamma((nn + a - 2) / 2)));
}

/// c(N, alpha) = Gamma(alpha/2) Gamma((N-alpha)/2 + 1) / Gamma(N/2).
inline double c_factor(int n, double alpha) {
  const hp a(alpha);
  const hp nn(n);
  return static_cast<double>(boost::math::tgamma(a / 2) * boost::math::tgamma((nn - a) / 2 + 1) /
                             boost::math::tgamma(nn / 2));
}

/// Closed form of the circle reverse triangle constant with equally spaced
/// centers: 2^{alpha-2} (2m/pi) I(pi/(2m)) - W.
inline double circle_rt(double alpha, std::size_t m) {
  const double md = static_cast<double>(m);
  const double x = static_cast<double>(pi() / (2 * md));
  const hp integral = boost::math::beta(hp(0.5), (hp(alpha) - 1) / 2, pow(sin(hp(x)), 2)) / 2;
  return static_cast<double>(pow(hp(2), hp(alpha) - 2) * 2 * md / pi() * integral) - circle_wiener(alpha);
}

/// sum_{k=1}^m (2 sin(pi (2k-1) / (2m)))^{-s} in 50 digits.
inline double circle_polarization(std::size_t m, double s) {
  hp sum = 0;
  for (std::size_t k = 1; k <= m; ++k) {
    sum += pow(2 * sin(pi() * (2 * hp(k) - 1) / (2 * hp(m))), -hp(s));
  }
  return static_cast<double>(sum);
}

/// Average of |x - t|^{-s} over the sphere of radius r in R^N, |x| = rho,
/// by tanh-sinh over the polar angle.
inline double shell_average(int n, double r, double rho, double s) {
  boost::math::quadrature::tanh_sinh<double> ts;
  const double norm = std::tgamma(n / 2.0) / (std::sqrt(M_PI) * std::tgamma((n - 1) / 2.0));
  // tc is the distance from t to the nearer endpoint, exact near t = 1
  auto f = [&](double t, double tc) {
    const double one_minus = t > 0 ? std::abs(tc) : 1.0 - t;
    const double one_plus = t > 0 ? 1.0 + t : std::abs(tc);
    const double d2 = (r - rho) * (r - rho) + 2.0 * r * rho * one_minus;
    const double weight = n == 3 ? 0.0 : (n - 3) / 2.0 * std::log(one_minus * one_plus);
    return d2 > 0 ? std::exp(weight - s / 2.0 * std::log(d2)) : 0.0;
  };
  return norm * ts.integrate(f, -1.0, 1.0);
}

}  // namespace oracle
