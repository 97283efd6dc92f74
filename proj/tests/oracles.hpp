// Copyright 2026 The percldp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <boost/math/distributions/binomial.hpp>
#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/beta.hpp>

#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

namespace oracle {

// int_a^b g(x) dx by adaptive Gauss-Kronrod.
inline double integrate(const std::function<double(double)>& g, double a, double b) {
  if (b <= a) return 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(g, a, b, 25, 1e-14);
}

// int_a^b g(x) dx by tanh-sinh, which tolerates endpoint singularities.
inline double integrate_singular(const std::function<double(double)>& g, double a, double b) {
  if (b <= a) return 0.0;
  boost::math::quadrature::tanh_sinh<double> ts;
  return ts.integrate(g, a, b, 1e-13);
}

// Integrand of I(f, s, t) for a derivative df at x.
inline double i_integrand(double df, double x, int r) {
  if (df <= 0.0) return 0.0;
  return df * (1.0 + (r - 1) * std::log(x) - std::log(df));
}

// P(Bin(t, p) >= r) through the regularized incomplete beta function.
inline double binomial_upper_tail(std::int64_t t, double p, int r) {
  if (t < r) return 0.0;
  return boost::math::ibeta(static_cast<double>(r), static_cast<double>(t - r + 1), p);
}

inline double binomial_pmf(std::int64_t n, std::int64_t k, double p) {
  boost::math::binomial_distribution<double> d(static_cast<double>(n), p);
  return boost::math::pdf(d, static_cast<double>(k));
}

// Upper quantile of chi-square with `df` degrees of freedom.
inline double chi2_quantile(double df, double upper_tail) {
  boost::math::chi_squared_distribution<double> d(df);
  return boost::math::quantile(boost::math::complement(d, upper_tail));
}

// Pearson statistic with bins of expected count < 5 pooled together.
// Returns {statistic, degrees of freedom}.
inline std::pair<double, double> chi_square(const std::vector<double>& observed,
                                            const std::vector<double>& expected) {
  double stat = 0.0;
  double pool_o = 0.0;
  double pool_e = 0.0;
  int bins = 0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (expected[i] < 5.0) {
      pool_o += observed[i];
      pool_e += expected[i];
      continue;
    }
    stat += (observed[i] - expected[i]) * (observed[i] - expected[i]) / expected[i];
    ++bins;
  }
  if (pool_e > 0.0) {
    stat += (pool_o - pool_e) * (pool_o - pool_e) / pool_e;
    ++bins;
  }
  return {stat, static_cast<double>(bins - 1)};
}

// Root of g on [a, b] by plain bisection; g(a) and g(b) must differ in sign.
inline double bisect(const std::function<double(double)>& g, double a, double b) {
  double ga = g(a);
  for (int i = 0; i < 300; ++i) {
    const double mid = 0.5 * (a + b);
    const double gm = g(mid);
    if ((gm < 0) == (ga < 0)) {
      a = mid;
      ga = gm;
    } else {
      b = mid;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace oracle
