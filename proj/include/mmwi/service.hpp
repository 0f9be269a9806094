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
#include <string>
#include <utility>
#include <vector>

#include "mmwi/charfn.hpp"
#include "mmwi/inversion.hpp"
#include "mmwi/montecarlo.hpp"

namespace mmwi {

inline constexpr double kSpeedOfLightRounded = 1e8;
inline constexpr double kSpeedOfLight = 2.99792458e8;

struct ServiceSettings {
    InversionSettings inversion;
    UcylaMethod ucyla_method = UcylaMethod::Discrete;
    NlosForm nlos_form = NlosForm::Renormalized;
    bool exact_square = false;  // users_served: exact square average instead of the equal-area disk
    double avg_tol = 1e-4;      // radial quadrature tolerance for averaged probabilities
    int k_wedges = 0;           // 0 = default (8 Nc for UCA sums, Nc for the UcylA plan)
    int m_rings = 0;            // 0 = max(1, Nv/2)
};

/// Interference CF seen by a beam steered toward a user at ground range r0.
CharFn interference_cf_at(double r0, const Scenario& scenario, const ServiceSettings& settings = {});

/// F_I(|beta_0|^2 / (T (r0^2 + h^2)^b)) with the analytic CF (params.r_max applies).
double service_probability(double r0, const Scenario& scenario, const ServiceSettings& settings = {});

/// 2/R^2 int_0^R P_s(r) r dr.
double avg_service_probability(double r_bar, const Scenario& scenario, const ServiceSettings& settings = {});
double avg_service_probability(const std::function<double(double)>& ps, double r_bar, double tol = 1e-4);

/// Fraction of the perimeter of radius r inside a centred square of side a, times 2 pi r.
double square_arc_length(double r, double side);

/// lambda a^2 P_s averaged over a centred square of side a.
double users_served(double area_side, const Scenario& scenario, const ServiceSettings& settings = {});

/// Per-path reference interference for the combiner weights: the mean, or the median where the mean diverges.
double reference_interference(const CharFn& path_cf, const Scenario& scenario, const ServiceSettings& settings = {});

/// MRC service probability with thermal noise (path.noise_power) over path.l_paths paths.
double service_with_noise(double r0, const Scenario& scenario, const ServiceSettings& settings = {});

/// Exact average over the 2^L per-path blockage masks.
double service_with_blockage(double r0, const Scenario& scenario, const ServiceSettings& settings = {});

/// -174 + 10 log10(bw) + nf
double thermal_noise_dbm(double bandwidth_hz, double noise_figure_db);
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

enum class SweepAxis { Height, Density, Threshold, NcNvRatio, Blockage, Radius };

SweepAxis parse_axis(const std::string& name);
std::string axis_name(SweepAxis axis);

struct SweepSpec {
    SweepAxis axis = SweepAxis::Height;
    std::vector<double> values;
    Scenario fixed;
    double area_side = 0.0;  // square side; 0 = use r_bar
    double r_bar = 100.0;    // disk radius when area_side = 0
    int total_antennas = 256;  // for NcNvRatio
    double r0_ref = 0.0;       // > 0 adds signal / mean-interference columns at this range
    double fc_hz = 28e9;
    double c_mps = kSpeedOfLightRounded;
};

struct SweepRow {
    double value = 0.0;
    double avg_ps = 0.0;
    double users = 0.0;
    int n_c = 1;
    int n_v = 1;
    double signal = 0.0;             // received_power at r0_ref
    double mean_interference = 0.0;  // same 1 m path gain applied to the interferers
    std::string status = "ok";
};

/// (n_c, n_v) with n_c n_v = total, ordered by n_c.
std::vector<std::pair<int, int>> factorizations(int total);

std::vector<SweepRow> run_sweep(const SweepSpec& spec, const ServiceSettings& settings = {});

}  // namespace mmwi
