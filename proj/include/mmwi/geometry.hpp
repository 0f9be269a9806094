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

#include <cmath>
#include <vector>

#include "mmwi/types.hpp"

namespace mmwi {

/// Azimuth amplitude gain of a UCA; exactly 1 for n_c = 1.
/// The J0 approximation is only accurate for n_c >= 16.
double gain_uca(double phi, const ArrayConfig& config);

/// Elevation amplitude gain of an n_v-element half-wavelength ULA (Dirichlet kernel).
double gain_ula(double theta, const ArrayConfig& config);

/// Amplitude gain G_c(phi) G_v(atan(h/r)) toward an interferer at ground range r.
/// Power quantities use the square of this value.
double gain_ucyla(double r, double phi, const NetworkParams& params, const ArrayConfig& config);

/// (1/2pi) int G_c^{2z}(phi) dphi by the periodic trapezoid rule.
double gain_moment(const ArrayConfig& config, double z, int quad_points = 4096);

/// Sector angles phi0 + 2pi (k + offset)/K, k = 0..K-1.
std::vector<double> wedge_angles(const ArrayConfig& config, int k_wedges, double offset = 0.0);

/// (1/K) sum_k G_c^{2z}(Phi_k) over wedge_angles(config, K, offset).
double wedge_gain_moment(const ArrayConfig& config, double z, int k_wedges, double offset = 0.0);

/// Mean ground length of a reflected path via a ring of radius d around the interferer.
double nlos_mean_distance(double r_direct, double d, int quad_points = 4096);

/// Elevation angle of a ground point at range r seen from height h.
inline double elevation(double r, double h) { return std::atan2(h, r); }

}  // namespace mmwi
