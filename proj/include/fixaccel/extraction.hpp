// Copyright (c) fixaccel contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "fixaccel/abstract_state.hpp"
#include "fixaccel/accel.hpp"

namespace fixaccel {

/// The state has no finite bound left to accelerate.
class NothingToAccelerate : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class BoundKind { lower, upper };

struct Coordinate {
    std::string var;
    BoundKind kind;
    bool operator==(const Coordinate&) const = default;
};

/// Coordinate meanings of the extracted vector: (lower_1, upper_1, ..., lower_v, upper_v).
class ExtractionSchema final {
    std::vector<Coordinate> _coords;

  public:
    ExtractionSchema() = default;
    explicit ExtractionSchema(const std::vector<std::string>& vars);
    static ExtractionSchema of(const AbstractState& x) { return ExtractionSchema(x.names()); }

    [[nodiscard]] std::size_t dimension() const { return _coords.size(); }
    [[nodiscard]] std::size_t variables() const { return _coords.size() / 2; }
    [[nodiscard]] const std::vector<Coordinate>& coordinates() const { return _coords; }
    /// "x1_lo", "x1_hi", ...
    [[nodiscard]] std::string coordinate_name(std::size_t i) const;
};

struct ExtractionResult {
    RealVector vector;
    /// Schema indices (ascending) whose bound was infinite or whose variable was bottom.
    std::vector<std::size_t> excluded;
};

/// Throws NothingToAccelerate if every coordinate is excluded.
[[nodiscard]] ExtractionResult extract(const AbstractState& x, const ExtractionSchema& schema);

/// Full 2v-vector of bounds, infinities included, NaN for bottom variables.
[[nodiscard]] RealVector bounds_vector(const AbstractState& x, const ExtractionSchema& schema);

struct CombineResult {
    AbstractState state;
    /// Variables whose accelerated pair came out with lower > upper (swapped in state).
    std::vector<std::size_t> inverted;
};

/// Rebuilds intervals from paired coordinates; excluded coordinates become the
/// matching infinity. Throws std::invalid_argument on dimension mismatch.
[[nodiscard]] CombineResult combine(const RealVector& y, const std::vector<std::size_t>& excluded,
                                    const ExtractionSchema& schema);

} // namespace fixaccel
