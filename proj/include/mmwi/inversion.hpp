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

#include <functional>
#include <vector>

#include "mmwi/charfn.hpp"

namespace mmwi {

struct InversionSettings {
    double omega_max = 0.0;  // hard frequency cutoff; 0 = none (integrals run to infinity)
    int n_points = 1 << 14;  // node budget per refinement level
    double min_omega = 1e-8;  // lower cut of the non-oscillatory x = 0 integrals
    double tol = 1e-4;
    bool refine = true;  // halve the step until two levels agree; otherwise one fine level
};

/// Gil-Pelaez CDF via double-exponential Fourier quadrature; clamped to [0,1].
double cdf_from_cf(const CharFn& cf, double x, const InversionSettings& settings = {});
double pdf_from_cf(const CharFn& cf, double x, const InversionSettings& settings = {});
double quantile_from_cf(const CharFn& cf, double p, const InversionSettings& settings = {});

/// CDF on a sorted grid with an isotonic (pool-adjacent-violators) pass.
std::vector<double> cdf_grid(const CharFn& cf, const std::vector<double>& xs, const InversionSettings& settings = {});

namespace detail {

struct Quadrature {
    double value = 0.0;
    double error = 0.0;
};

// int_0^inf g(u) sin(u) du or int_0^inf g(u) cos(u) du (Ooura-Mori double exponential),
// step halving until two levels agree to abs_tol.
Quadrature fourier_de(const std::function<double(double)>& g, bool cosine, double abs_tol,
                      const InversionSettings& s);

}  // namespace detail
}  // namespace mmwi
