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

#include "mmwi/types.hpp"

namespace mmwi {

// Xi is the CF exponent divided by pi lambda alpha: Psi = exp(pi lambda alpha Xi).

/// Partial Taylor sum of Xi in omega with n_terms terms (r_max = inf).
/// Throws ConvergenceError when omega beta^2 max(G^2) / h^{2b} >= 1 and the tail is not negligible.
Complex xi_series(double omega, const NetworkParams& params, const ArrayConfig& config, int n_terms = 40);

/// Xi from the ring kernel; exact up to the wedge discretization. h = 0 uses the stable closed form.
Complex xi_exact(double omega, const NetworkParams& params, const ArrayConfig& config, int k_wedges = 0);

/// Xi with the linear shift term removed.
Complex xi_prime(double omega, const NetworkParams& params, const ArrayConfig& config, int k_wedges = 0);

/// Coefficient a1 of the shift term j a1 omega.
double xi_shift_coefficient(const NetworkParams& params, const ArrayConfig& config, int k_wedges = 0);

enum class BreakRule {
    MeanGain,     // S_i with the mean power gain raised to the i, K = Nc half-offset sectors
    MomentRatio,  // S_i with G^(i) entering linearly, full-circle quadrature
};

double breaking_frequency(const NetworkParams& params, const ArrayConfig& config,
                          BreakRule rule = BreakRule::MeanGain);

/// omega where the local log-log slope of |Re Xi'| crosses (2 + alpha)/2.
double measured_slope_break(const NetworkParams& params, const ArrayConfig& config);

/// d log|Re Xi'| / d log omega by a central difference.
double xi_prime_slope(double omega, const NetworkParams& params, const ArrayConfig& config);

enum class Transition { Hard, Logistic };

struct MixtureModel {
    double omega_bar = 1.0;
    double shift = 0.0;      // a1: W1 = j a1 w - a2 w^2
    double quadratic = 0.0;  // a2 >= 0
    StableParams w2;         // stable branch
    Transition transition = Transition::Hard;
    double alpha = 0.5;
};

MixtureModel make_mixture(const NetworkParams& params, const ArrayConfig& config,
                          Transition transition = Transition::Hard, BreakRule rule = BreakRule::MeanGain);

Complex cf_mixture(double omega, const MixtureModel& model, const NetworkParams& params);

}  // namespace mmwi
