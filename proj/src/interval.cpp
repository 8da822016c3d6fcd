// Copyright (c) fixaccel contributors.
// SPDX-License-Identifier: Apache-2.0
#include "fixaccel/interval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace fixaccel {

namespace {

void check_not_nan(double v, const char* what) {
    if (std::isnan(v)) {
        throw DomainError(std::string("NaN in interval computation: ") + what);
    }
}

std::string format_bound(double v) {
    if (v == plus_infinity) return "+oo";
    if (v == minus_infinity) return "-oo";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

Interval::Interval(double lb, double ub) : _lb(lb), _ub(ub), _bottom(false) {
    check_not_nan(lb, "lower bound");
    check_not_nan(ub, "upper bound");
    if (lb > ub) {
        throw std::invalid_argument("interval lower bound exceeds upper bound: [" + format_bound(lb) + ", " +
                                    format_bound(ub) + "]");
    }
    if (lb == plus_infinity || ub == minus_infinity) {
        throw std::invalid_argument("interval bounds must not collapse at infinity");
    }
}

bool Interval::operator==(const Interval& other) const {
    if (_bottom || other._bottom) return _bottom == other._bottom;
    return _lb == other._lb && _ub == other._ub;
}

std::string Interval::to_string() const {
    if (_bottom) return "_|_";
    return "[" + format_bound(_lb) + ", " + format_bound(_ub) + "]";
}

std::ostream& operator<<(std::ostream& o, const Interval& i) { return o << i.to_string(); }

ThresholdSet::ThresholdSet(std::vector<double> values) : _values(std::move(values)) {
    for (double v : _values) {
        if (!std::isfinite(v)) throw std::invalid_argument("thresholds must be finite");
    }
    std::sort(_values.begin(), _values.end());
    _values.erase(std::unique(_values.begin(), _values.end()), _values.end());
}

double ThresholdSet::ceil(double d) const {
    auto it = std::lower_bound(_values.begin(), _values.end(), d);
    return it == _values.end() ? plus_infinity : *it;
}

double ThresholdSet::floor(double c) const {
    auto it = std::upper_bound(_values.begin(), _values.end(), c);
    return it == _values.begin() ? minus_infinity : *std::prev(it);
}

Interval join(const Interval& a, const Interval& b) {
    if (a.is_bottom()) return b;
    if (b.is_bottom()) return a;
    return {std::min(a.lb(), b.lb()), std::max(a.ub(), b.ub())};
}

bool leq(const Interval& a, const Interval& b) {
    if (a.is_bottom()) return true;
    if (b.is_bottom()) return false;
    return b.lb() <= a.lb() && a.ub() <= b.ub();
}

Interval widen(const Interval& a, const Interval& b) {
    if (a.is_bottom()) return b;
    if (b.is_bottom()) return a;
    return {a.lb() <= b.lb() ? a.lb() : minus_infinity, a.ub() >= b.ub() ? a.ub() : plus_infinity};
}

Interval widen(const Interval& a, const Interval& b, const ThresholdSet& thresholds) {
    if (a.is_bottom()) return b;
    if (b.is_bottom()) return a;
    return {a.lb() <= b.lb() ? a.lb() : thresholds.floor(b.lb()),
            a.ub() >= b.ub() ? a.ub() : thresholds.ceil(b.ub())};
}

Interval scale(double coeff, const Interval& i) {
    check_not_nan(coeff, "coefficient");
    if (i.is_bottom()) return i;
    if (coeff == 0.0) return Interval{0.0};
    if (coeff > 0.0) return {coeff * i.lb(), coeff * i.ub()};
    return {coeff * i.ub(), coeff * i.lb()};
}

Interval add(const Interval& a, const Interval& b) {
    if (a.is_bottom() || b.is_bottom()) return Interval::bottom();
    return {a.lb() + b.lb(), a.ub() + b.ub()};
}

Interval affine_eval(double c0, std::span<const AffineTerm> terms) {
    check_not_nan(c0, "constant");
    double lo = c0;
    double hi = c0;
    for (const auto& term : terms) {
        const Interval s = scale(term.coeff, term.arg);
        if (s.is_bottom()) return Interval::bottom();
        lo += s.lb();
        hi += s.ub();
    }
    return {lo, hi};
}

} // namespace fixaccel
