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
#include <memory>
#include <string>
#include <vector>

#include "mmwi/types.hpp"

namespace mmwi {

struct CfMetadata {
    std::string kind;
    int k_wedges = 0;
    int m_rings = 0;
    double r_max = kInf;
    // log of the raw Psi_2(0+) removed by renormalization (renormalized NLOS form)
    double nlos_deviation = 0.0;
};

/// Evaluable characteristic function omega -> Psi(omega) of a real random variable.
class CharFn {
public:
    using Fn = std::function<Complex(double)>;

    CharFn() = default;
    CharFn(Fn fn, CfMetadata meta, bool nonnegative = true, double scale = 1.0)
        : fn_(std::make_shared<Fn>(std::move(fn))), meta_(std::move(meta)), nonnegative_(nonnegative),
          scale_(scale) {}

    Complex operator()(double omega) const { return (*fn_)(omega); }

    const CfMetadata& metadata() const { return meta_; }
    /// Variable supported on [0, inf).
    bool nonnegative() const { return nonnegative_; }
    /// Typical magnitude of the variable (mean or median order); seeds brackets and frequency ranges.
    double scale() const { return scale_; }

private:
    std::shared_ptr<const Fn> fn_;
    CfMetadata meta_;
    bool nonnegative_ = true;
    double scale_ = 1.0;
};

struct DiscretizationPlan {
    int k_wedges = 1;
    int m_rings = 1;
    std::vector<double> ring_centers;  // rho_m [m], strictly increasing
    std::vector<double> ring_edges;    // m_rings + 1 radii [m], edges[0] = 0, last may be inf
};

/// K = Nc, M = max(1, Nv/2); ring edges h tan(m pi / 2M), centres at the bisecting elevation.
DiscretizationPlan make_plan(const NetworkParams& params, const ArrayConfig& config, int k_wedges = 0,
                             int m_rings = 0);

enum class UcylaMethod { Discrete, Quadrature };
enum class NlosForm { Renormalized, Displaced };

/// Wedge count used for UCA sums when the caller passes k_wedges = 0.
int default_uca_wedges(const ArrayConfig& config);

Complex cf_point(double omega, const NetworkParams& params);
Complex cf_uca(double omega, const NetworkParams& params, const ArrayConfig& config, int k_wedges = 0);
Complex cf_ucyla(double omega, const NetworkParams& params, const ArrayConfig& config,
                 const DiscretizationPlan& plan, UcylaMethod method = UcylaMethod::Discrete);
StableParams cf_stable_limit(const NetworkParams& params, const ArrayConfig& config);
Complex cf_nlos_augmented(double omega, const NetworkParams& params, const ArrayConfig& config,
                          const PathModel& path, NlosForm form = NlosForm::Renormalized);

/// Unwrapped log Psi of the UCA / point CF (no branch cut from taking log of the value).
Complex uca_log_cf(double omega, const NetworkParams& params, const ArrayConfig& config, int k_wedges = 0);

double mean_interference(const NetworkParams& params, const ArrayConfig& config);
double received_power(double r0, const NetworkParams& params, double fc_hz, double c_mps);

// CharFn constructors; the lambdas capture precomputed gain tables.
CharFn make_point_cf(const NetworkParams& params);
CharFn make_uca_cf(const NetworkParams& params, const ArrayConfig& config, int k_wedges = 0);
CharFn make_ucyla_cf(const NetworkParams& params, const ArrayConfig& config, const DiscretizationPlan& plan,
                     UcylaMethod method = UcylaMethod::Discrete);
CharFn make_stable_cf(const StableParams& params);
CharFn make_nlos_cf(const NetworkParams& params, const ArrayConfig& config, const PathModel& path,
                    NlosForm form = NlosForm::Renormalized);
/// Interference CF for any configuration: point / UCA / UcylA, LOS or NLOS-augmented.
CharFn make_interference_cf(const NetworkParams& params, const ArrayConfig& config, const PathModel& path);
CharFn make_gaussian_cf(double mu, double sigma);

/// omega -> prod_l Psi_l(a_l omega)
CharFn cf_scale_product(const std::vector<CharFn>& cfs, const std::vector<double>& a_weights);

/// Mean of the reflected-path interference, lambda int G^2 ((rho + d)^2 + h^2)^{-b} dA
/// over reflection points rho.
double mean_nlos_interference(const NetworkParams& params, const ArrayConfig& config, double d);

}  // namespace mmwi
