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
#include <functional>
#include <ostream>
#include <vector>

#include "mmwi/rng.hpp"
#include "mmwi/types.hpp"

namespace mmwi {

struct Scenario {
    NetworkParams params;
    ArrayConfig config;
    PathModel path;
    double r_max_num = 200.0;  // simulation disk [m]
    long trials = 10000;
    std::uint64_t seed = 1;
    double beta0_sq = 1.0;  // served user's |beta_0|^2
    // Draws |beta|^2 for one link; empty means unit fading.
    std::function<double(Philox4x32&)> fading_power;
    // Mean interference per path used by the MRC weights; empty = computed analytically.
    std::vector<double> mean_path_interference;

    void validate() const;
};

struct PolarPoint {
    double r;
    double phi;
};

struct TrialResult {
    std::vector<double> interference;  // I_l per path
    std::vector<bool> blocked;         // mu_l = !blocked[l]
    bool served = false;
};

enum class Aggregation { PowerSum, AmplitudeSum };

std::vector<PolarPoint> sample_ppp_disk(double lambda_density, double r_max, Philox4x32& rng);

/// Aggregate interference of one drop at the AP, including L-1 reflected terms per interferer
/// when the path model has l_paths > 1.
double simulate_interference(const std::vector<PolarPoint>& points, const Scenario& scenario, Aggregation mode,
                             Philox4x32& rng);

/// Fully skewed stable sample (Chambers-Mallows-Stuck), CF as stable_cf.
double sample_stable_skewed(double alpha, double gamma, Philox4x32& rng);

/// One interference value per trial; trial i uses Philox4x32(seed, i).
std::vector<double> simulate_interference_samples(const Scenario& scenario,
                                                  Aggregation mode = Aggregation::PowerSum);

struct Proportion {
    double p = 0.0;
    double lo = 0.0;  // 95% Wilson interval
    double hi = 0.0;
    long n = 0;
};

Proportion wilson_interval(long successes, long n);

struct ServiceEstimate {
    double r0 = 0.0;
    Proportion est;
};

std::vector<ServiceEstimate> empirical_service(const Scenario& scenario, const std::vector<double>& r0_grid);

struct CombiningEstimate {
    Proportion mrc;        // linear combiner with mean-based weights
    Proportion sc;         // best single-path SINR
    Proportion mrc_ideal;  // sum of per-path SINRs
};

CombiningEstimate simulate_mrc_sc(const Scenario& scenario, double r0,
                                  std::vector<TrialResult>* trials_out = nullptr);

Complex empirical_cf(const std::vector<double>& samples, double omega);

/// Rows trial_id, I_1..I_L, mu_1..mu_L, served.
void write_trials_csv(std::ostream& os, const std::vector<TrialResult>& trials);

/// Worker count from MMWI_THREADS, else the hardware concurrency.
int worker_threads();

/// Runs fn(i) for i in [0, n) on worker_threads() threads with static blocks.
void parallel_for(long n, const std::function<void(long)>& fn);

}  // namespace mmwi
