// Copyright (c) fixaccel contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fixaccel/interval.hpp"

namespace fixaccel {

/// Two states were combined whose variable lists differ.
class StructureError : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

/// A named vector of intervals: one element of the product lattice.
/// Variable order is fixed on construction and all pointwise operations
/// require both operands to share it.
class AbstractState final {
    std::vector<std::string> _names;
    std::vector<Interval> _values;

  public:
    AbstractState() = default;
    AbstractState(std::vector<std::string> names, std::vector<Interval> values);
    AbstractState(std::initializer_list<std::pair<std::string, Interval>> vars);

    [[nodiscard]] std::size_t size() const { return _values.size(); }
    [[nodiscard]] const std::vector<std::string>& names() const { return _names; }
    [[nodiscard]] const std::vector<Interval>& values() const { return _values; }

    [[nodiscard]] const Interval& operator[](std::size_t i) const { return _values.at(i); }
    [[nodiscard]] const Interval& at(const std::string& name) const;
    [[nodiscard]] std::optional<std::size_t> index_of(const std::string& name) const;

    void set(std::size_t i, Interval value) { _values.at(i) = value; }

    [[nodiscard]] bool same_shape(const AbstractState& other) const { return _names == other._names; }

    bool operator==(const AbstractState& other) const = default;

    [[nodiscard]] std::string to_string() const;
};

[[nodiscard]] AbstractState join(const AbstractState& x, const AbstractState& y);
[[nodiscard]] bool leq(const AbstractState& x, const AbstractState& y);
[[nodiscard]] AbstractState widen(const AbstractState& x, const AbstractState& y);
[[nodiscard]] AbstractState widen(const AbstractState& x, const AbstractState& y, const ThresholdSet& thresholds);

/// Largest absolute bound displacement between two same-shaped states.
/// Returns +inf when a bound differs in finiteness or bottomness.
[[nodiscard]] double max_bound_distance(const AbstractState& x, const AbstractState& y);

} // namespace fixaccel
