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

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mmwi/montecarlo.hpp"
#include "mmwi/service.hpp"
#include "mmwi/stable_mixture.hpp"

namespace mmwi {

/// All parse and validation problems of one config text, each "section.key (line n): message".
class ConfigError : public DomainError {
public:
    explicit ConfigError(std::vector<std::string> errors);
    const std::vector<std::string>& errors() const noexcept { return errors_; }

private:
    std::vector<std::string> errors_;
};

struct RunConfig {
    Scenario scenario;
    ServiceSettings service;
    Aggregation mc_mode = Aggregation::PowerSum;

    std::vector<double> r0_grid{10, 20, 30, 40, 50, 60, 70, 80, 90, 100};
    double r_bar = 100.0;
    double area_side = 0.0;
    double fc_hz = 28e9;
    double c_mps = kSpeedOfLightRounded;

    SweepAxis sweep_axis = SweepAxis::Height;
    std::vector<double> sweep_values;
    int total_antennas = 256;
    double r0_ref = 0.0;  // > 0 adds signal / mean-interference columns

    double omega_min = 1e-2;
    double omega_max = 1e6;
    int n_omega = 161;
    int n_terms = 40;
    Transition transition = Transition::Hard;
    BreakRule break_rule = BreakRule::MeanGain;

    double x_min = 0.0;  // x_max = 0 picks a range from the CF scale
    double x_max = 0.0;
    int n_x = 101;

    double validate_tol = 0.03;  // max |analytic - MC| accepted by validate

    std::string output;      // empty = stdout
    std::string trials_csv;  // montecarlo trial dump
    bool plot_script = false;
};

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// Every key with its resolved value, in a fixed order (for the CSV metadata block).
std::vector<std::pair<std::string, std::string>> describe(const RunConfig& config);

/// "12", "0.5 dB", "30deg", "inf"; unit is "" (plain), "dB" or "deg".
double parse_quantity(const std::string& text, const std::string& unit);

}  // namespace mmwi
