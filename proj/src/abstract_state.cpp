// Copyright (c) fixaccel contributors.
// SPDX-License-Identifier: Apache-2.0
#include "fixaccel/abstract_state.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace fixaccel {

namespace {

void require_same_shape(const AbstractState& x, const AbstractState& y) {
    if (!x.same_shape(y)) {
        throw StructureError("abstract states have different variable sets");
    }
}

template <typename Op>
AbstractState pointwise(const AbstractState& x, const AbstractState& y, Op op) {
    require_same_shape(x, y);
    std::vector<Interval> out;
    out.reserve(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        out.push_back(op(x[i], y[i]));
    }
    return {x.names(), std::move(out)};
}

double bound_distance(double a, double b) {
    if (a == b) return 0.0;
    if (!std::isfinite(a) || !std::isfinite(b)) return plus_infinity;
    return std::abs(a - b);
}

} // namespace

AbstractState::AbstractState(std::vector<std::string> names, std::vector<Interval> values)
    : _names(std::move(names)), _values(std::move(values)) {
    if (_names.size() != _values.size()) {
        throw StructureError("abstract state needs one interval per variable");
    }
    std::set<std::string> seen;
    for (const auto& n : _names) {
        if (!seen.insert(n).second) throw StructureError("duplicate variable '" + n + "'");
    }
}

AbstractState::AbstractState(std::initializer_list<std::pair<std::string, Interval>> vars) {
    std::vector<std::string> names;
    std::vector<Interval> values;
    for (const auto& [n, v] : vars) {
        names.push_back(n);
        values.push_back(v);
    }
    *this = AbstractState(std::move(names), std::move(values));
}

std::optional<std::size_t> AbstractState::index_of(const std::string& name) const {
    auto it = std::find(_names.begin(), _names.end(), name);
    if (it == _names.end()) return std::nullopt;
    return static_cast<std::size_t>(it - _names.begin());
}

const Interval& AbstractState::at(const std::string& name) const {
    auto i = index_of(name);
    if (!i) throw StructureError("no variable '" + name + "' in state");
    return _values[*i];
}

std::string AbstractState::to_string() const {
    std::string s = "{";
    for (std::size_t i = 0; i < size(); ++i) {
        if (i) s += ", ";
        s += _names[i] + ": " + _values[i].to_string();
    }
    return s + "}";
}

AbstractState join(const AbstractState& x, const AbstractState& y) {
    return pointwise(x, y, [](const Interval& a, const Interval& b) { return join(a, b); });
}

bool leq(const AbstractState& x, const AbstractState& y) {
    require_same_shape(x, y);
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!leq(x[i], y[i])) return false;
    }
    return true;
}

AbstractState widen(const AbstractState& x, const AbstractState& y) {
    return pointwise(x, y, [](const Interval& a, const Interval& b) { return widen(a, b); });
}

AbstractState widen(const AbstractState& x, const AbstractState& y, const ThresholdSet& thresholds) {
    return pointwise(x, y, [&](const Interval& a, const Interval& b) { return widen(a, b, thresholds); });
}

double max_bound_distance(const AbstractState& x, const AbstractState& y) {
    require_same_shape(x, y);
    double d = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i].is_bottom() || y[i].is_bottom()) {
            if (x[i].is_bottom() != y[i].is_bottom()) return plus_infinity;
            continue;
        }
        d = std::max({d, bound_distance(x[i].lb(), y[i].lb()), bound_distance(x[i].ub(), y[i].ub())});
    }
    return d;
}

} // namespace fixaccel
