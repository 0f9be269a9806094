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
#include <queue>
#include <vector>

#include "mmwi/types.hpp"

namespace mmwi::quad {

template <class T>
struct Estimate {
    T value{};
    double error = 0.0;
};

namespace detail {

inline constexpr double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                                   0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                                   0.58608723546769113029414483825873,  0.405845151377397166906606412076961,
                                   0.207784955007898467600689403773245, 0.0};
inline constexpr double kWgk[8] = {0.02293532201052922496373200805897,  0.063092092629978553290700663189204,
                                   0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                                   0.16900472663926790282658342659855,  0.190350578064785409913256402421014,
                                   0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.27970539148927666790146777142378,
                                  0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

}  // namespace detail

/// 15-point Kronrod rule with the embedded 7-point Gauss error estimate.
template <class T, class F>
Estimate<T> gk15(F&& f, double a, double b) {
    const double c = 0.5 * (a + b), hw = 0.5 * (b - a);
    const T fc = f(c);
    T kron = fc * detail::kWgk[7];
    T gauss = fc * detail::kWg[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = hw * detail::kXgk[j];
        const T s = f(c - dx) + f(c + dx);
        kron += s * detail::kWgk[j];
        if (j % 2 == 1) gauss += s * detail::kWg[j / 2];
    }
    return {kron * hw, std::abs((kron - gauss) * hw)};
}

/// Globally adaptive bisection on [a, b] until err <= max(abs_tol, rel_tol |I|).
template <class T, class F>
Estimate<T> integrate(F&& f, double a, double b, double abs_tol, double rel_tol, int max_intervals = 4000) {
    struct Piece {
        double a, b;
        Estimate<T> est;
        bool operator<(const Piece& o) const { return est.error < o.est.error; }
    };
    std::priority_queue<Piece> heap;
    Estimate<T> first = gk15<T>(f, a, b);
    heap.push({a, b, first});
    T total = first.value;
    double err = first.error;
    int count = 1;
    while (err > std::max(abs_tol, rel_tol * std::abs(total))) {
        if (count >= max_intervals) throw ConvergenceError("adaptive quadrature: interval budget exhausted", err);
        Piece p = heap.top();
        heap.pop();
        const double m = 0.5 * (p.a + p.b);
        if (!(m > p.a && m < p.b)) throw ConvergenceError("adaptive quadrature: interval underflow", err);
        Estimate<T> l = gk15<T>(f, p.a, m), r = gk15<T>(f, m, p.b);
        total += l.value + r.value - p.est.value;
        err += l.error + r.error - p.est.error;
        heap.push({p.a, m, l});
        heap.push({m, p.b, r});
        count += 2;
        if (err < 0.0) err = 0.0;
    }
    // recompute to shed accumulated update rounding
    T sum{};
    double esum = 0.0;
    while (!heap.empty()) {
        sum += heap.top().est.value;
        esum += heap.top().est.error;
        heap.pop();
    }
    return {sum, esum};
}

}  // namespace mmwi::quad
