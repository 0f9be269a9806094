/*
   Copyright 2026 The mmwi Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <vector>

#include "mmwi/types.hpp"

namespace mmwi {

double bessel_j0(double x);

/// 1 / (Gamma(1-alpha) cos(pi alpha / 2)), alpha in (0,1).
double c_alpha(double alpha);

/// Normalized lower incomplete gamma ratio gamma(x,z)/Gamma(x), x in (-1,0).
/// Series below |z| = 30, upper-gamma asymptotic above.
Complex gamma_ratio_p(double x, Complex z);

Complex stable_cf(double omega, const StableParams& params);

/// int_{tau_lo}^{tau_hi} (1 - e^{jt}) t^{-alpha-1} dt for alpha in (0,1].
/// tau_hi may be +inf; tau_lo = 0 needs alpha < 1.
Complex stable_ring_integral(double alpha, double tau_lo, double tau_hi);

/// Same with tau_lo = 0.
Complex stable_kernel(double alpha, double tau);

/// stable_ring_integral for one fixed alpha, tabulated for speed: the series range is a
/// Chebyshev fit of the entire factor of A(tau), the rest uses the asymptotic form.
class StableKernelTable {
public:
    explicit StableKernelTable(double alpha);

    double alpha() const { return alpha_; }
    Complex operator()(double tau) const;  // A(tau), alpha < 1
    Complex ring(double tau_lo, double tau_hi) const;
    /// g(tau) with A(tau) = -j tau^{1-alpha} g(tau); valid for tau <= switch_point().
    Complex entire(double tau) const;
    static double switch_point();

private:
    double alpha_;
    std::vector<Complex> cheb_;
    Complex at_infinity_;
};

namespace detail {

double series_switch();
Complex gamma_ratio_p_series(double x, Complex z);
Complex gamma_ratio_p_asymptotic(double x, Complex z);

// int_tau^inf e^{jt} t^{-s} dt, s > 0, large tau.
Complex oscillatory_tail(double s, double tau);

}  // namespace detail
}  // namespace mmwi
