// Copyright (c) fixaccel contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fixaccel/interval.hpp"
#include "fixaccel/program.hpp"

namespace fixaccel::testing {

inline Program bundled(const std::string& name) {
    return load_program(std::string(FIXACCEL_PROGRAMS_DIR) + "/" + name);
}

inline const std::vector<std::string>& bundled_names() {
    static const std::vector<std::string> names = {"intro.loop", "butterworth1.loop", "butterworth2_modal.loop",
                                                   "identity.loop", "counter.loop"};
    return names;
}

/// Random finite interval with bounds in [-scale, scale].
inline Interval random_interval(std::mt19937_64& rng, double scale = 100.0) {
    std::uniform_real_distribution<double> d(-scale, scale);
    double a = d(rng);
    double b = d(rng);
    if (a > b) std::swap(a, b);
    return {a, b};
}

/// Random interval that may have infinite bounds or be bottom.
inline Interval random_extended_interval(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> pick(0, 9);
    const int k = pick(rng);
    if (k == 0) return Interval::bottom();
    Interval i = random_interval(rng);
    if (k == 1) return {minus_infinity, i.ub()};
    if (k == 2) return {i.lb(), plus_infinity};
    if (k == 3) return Interval::top();
    return i;
}

/// Random matrix scaled to the given spectral radius.
inline Eigen::MatrixXd random_stable_matrix(std::mt19937_64& rng, int dim, double radius) {
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    Eigen::MatrixXd a(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) a(i, j) = d(rng);
    const double rho = a.eigenvalues().cwiseAbs().maxCoeff();
    return a * (radius / rho);
}

} // namespace fixaccel::testing
