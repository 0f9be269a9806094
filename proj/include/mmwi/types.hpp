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

#include <complex>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

namespace mmwi {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Bad argument or parameter combination.
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// A numerical procedure did not reach its tolerance.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double estimated_error)
        : std::runtime_error(what), estimated_error_(estimated_error) {}
    double estimated_error() const noexcept { return estimated_error_; }

private:
    double estimated_error_;
};

/// Fully skewed stable law, CF exp(-gamma |w|^alpha (1 - j sign(w) tan(pi alpha/2))).
struct StableParams {
    double alpha = 0.5;
    double gamma = 1.0;
};

struct NetworkParams {
    double lambda_density = 1e-3;  // active interferers per m^2
    double b = 1.3;                // amplitude path-loss exponent, power exponent is 2b
    double h = 10.0;               // AP height [m]
    double r_max = kInf;           // coverage radius [m]
    double threshold_t = 1.0;      // SIR threshold, linear
    // c -> E|beta|^c; empty means unit fading.
    std::function<double(double)> beta_moments;

    double alpha() const { return 1.0 / b; }
    double beta_moment(double c) const { return beta_moments ? beta_moments(c) : 1.0; }

    // b > 1, or b == 1 with a finite r_max (the mean and the CF diverge otherwise).
    void validate() const;
};

struct ArrayConfig {
    int n_c = 1;
    int n_v = 1;
    double phi0 = 0.0;    // azimuth pointing [rad]
    double theta0 = 0.0;  // elevation pointing [rad]

    bool isotropic() const { return n_c == 1 && n_v == 1; }
    void validate() const;
};

struct PathModel {
    int l_paths = 1;
    double ring_radius_d = 0.0;
    double p_block = 0.0;
    double noise_power = 0.0;  // after array gain

    void validate() const;
};

}  // namespace mmwi
