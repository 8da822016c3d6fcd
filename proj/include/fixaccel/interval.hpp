// Copyright (c) fixaccel contributors.
// SPDX-License-Identifier: Apache-2.0
/*******************************************************************************
 *
 * Floating-point interval lattice.
 *
 * Bounds are extended reals represented as IEEE doubles where -inf and +inf
 * are legal and NaN is not. Arithmetic uses round-to-nearest; there is no
 * outward rounding.
 *
 ******************************************************************************/
#pragma once

#include <initializer_list>
#include <iosfwd>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fixaccel {

constexpr double plus_infinity = std::numeric_limits<double>::infinity();
constexpr double minus_infinity = -std::numeric_limits<double>::infinity();

/// Raised when an interval computation produces or receives a NaN.
class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

class Interval final {
    double _lb{1.0};
    double _ub{0.0};
    bool _bottom{true};

  public:
    /// Bottom.
    Interval() = default;
    Interval(double lb, double ub);
    explicit Interval(double point) : Interval(point, point) {}

    static Interval bottom() { return {}; }
    static Interval top() { return {minus_infinity, plus_infinity}; }

    [[nodiscard]] bool is_bottom() const { return _bottom; }
    [[nodiscard]] bool is_top() const { return !_bottom && _lb == minus_infinity && _ub == plus_infinity; }
    /// Lower bound; undefined on bottom.
    [[nodiscard]] double lb() const { return _lb; }
    [[nodiscard]] double ub() const { return _ub; }

    [[nodiscard]] bool operator==(const Interval& other) const;

    [[nodiscard]] std::string to_string() const;
};

std::ostream& operator<<(std::ostream& o, const Interval& i);

/// Finite ascending threshold values; -inf and +inf are implicit members.
class ThresholdSet final {
    std::vector<double> _values;

  public:
    ThresholdSet() = default;
    /// Sorts and deduplicates; rejects non-finite values.
    explicit ThresholdSet(std::vector<double> values);
    ThresholdSet(std::initializer_list<double> values) : ThresholdSet(std::vector<double>(values)) {}

    [[nodiscard]] std::span<const double> values() const { return _values; }
    [[nodiscard]] std::size_t size() const { return _values.size(); }
    [[nodiscard]] bool empty() const { return _values.empty(); }

    /// min { t in T : t >= d }
    [[nodiscard]] double ceil(double d) const;
    /// max { t in T : t <= c }
    [[nodiscard]] double floor(double c) const;
};

[[nodiscard]] Interval join(const Interval& a, const Interval& b);
[[nodiscard]] bool leq(const Interval& a, const Interval& b);

/// Classical interval widening: unstable bounds jump to infinity.
[[nodiscard]] Interval widen(const Interval& a, const Interval& b);
/// Widening with thresholds: unstable bounds snap to the nearest enclosing threshold.
[[nodiscard]] Interval widen(const Interval& a, const Interval& b, const ThresholdSet& thresholds);

/// coeff * i under interval arithmetic; 0 * [-inf, +inf] is [0, 0].
[[nodiscard]] Interval scale(double coeff, const Interval& i);
/// Endpoint-wise sum; bottom absorbs.
[[nodiscard]] Interval add(const Interval& a, const Interval& b);

struct AffineTerm {
    double coeff;
    Interval arg;
};

/// Interval value of c0 + sum(coeff_i * arg_i). Any bottom argument yields bottom.
[[nodiscard]] Interval affine_eval(double c0, std::span<const AffineTerm> terms);

} // namespace fixaccel
