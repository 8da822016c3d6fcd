// Copyright (c) fixaccel contributors.
// SPDX-License-Identifier: Apache-2.0
/*******************************************************************************
 *
 * Fixpoint engines over the loop head of an affine program.
 *
 *   kleene               X_{i+1} = X_i join F(X_i)
 *   kleene_widened       X_{i+1} = X_i widen (X_i join F(X_i)) after a delay
 *   accelerated_fixpoint Kleene iteration in parallel with a sequence
 *                        transformation of the extracted bounds; once two
 *                        consecutive accelerated elements agree within delta,
 *                        their abstract image is joined into the iterate.
 *
 * All engines stop when consecutive iterates coincide. With stable_tol > 0 an
 * iterate whose bounds all moved by at most stable_tol also counts as stable;
 * it is then closed into a post-fixpoint by one extra step that joins F(X)
 * with its escaping bounds pushed slightly outward.
 *
 ******************************************************************************/
#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "fixaccel/abstract_state.hpp"
#include "fixaccel/accel.hpp"
#include "fixaccel/interval.hpp"
#include "fixaccel/program.hpp"

namespace fixaccel {

enum class Mode { kleene, widen, accel };
enum class InjectPolicy { once, repeat };

struct EngineConfig {
    Mode mode{Mode::accel};
    Method method{Method::vector_epsilon};
    double delta{1e-3};
    std::size_t widen_delay{0};
    std::optional<ThresholdSet> thresholds;
    InjectPolicy inject{InjectPolicy::once};
    std::size_t fallback_after{20};
    std::size_t max_iter{10000};
    /// Absolute bound movement below which an iterate counts as stable; 0 means bit-exact.
    double stable_tol{3e-7};
    TransformConfig transform;

    /// Throws std::invalid_argument on inconsistent settings.
    void validate() const;
};

enum class Event { initial, plain_step, widen_step, injection, fallback_widen, converged, exhausted };
enum class Termination { converged, max_iter };

[[nodiscard]] std::string to_string(Mode m);
[[nodiscard]] Mode parse_mode(const std::string& s);
[[nodiscard]] std::string to_string(InjectPolicy p);
[[nodiscard]] InjectPolicy parse_inject_policy(const std::string& s);
[[nodiscard]] std::string to_string(Event e);
[[nodiscard]] std::string to_string(Termination t);

struct IterationRecord {
    std::size_t index;
    AbstractState state;
    /// New accelerated element in schema coordinates (lo_1, hi_1, ...); NaN where excluded.
    std::optional<RealVector> accelerated;
    Event event;
    /// Iterate just before an injection was joined in.
    std::optional<AbstractState> before_injection;
};

struct IterationTrace {
    /// records[0] is the initial state; records[1..] are the steps.
    std::vector<IterationRecord> records;
    Termination reason{Termination::max_iter};

    [[nodiscard]] std::size_t steps() const { return records.empty() ? 0 : records.size() - 1; }
};

struct FixpointReport {
    AbstractState invariant;
    std::size_t iterations{0};
    std::size_t injections{0};
    bool converged{false};
    /// transfer(invariant) is included in invariant.
    bool sound{false};
};

struct AnalysisResult {
    FixpointReport report;
    IterationTrace trace;
};

[[nodiscard]] bool verify_postfixpoint(const Program& p, const AbstractState& x);

[[nodiscard]] AnalysisResult kleene(const Program& p, const EngineConfig& cfg);
[[nodiscard]] AnalysisResult kleene_widened(const Program& p, const EngineConfig& cfg);
[[nodiscard]] AnalysisResult accelerated_fixpoint(const Program& p, const EngineConfig& cfg);

/// Dispatches on cfg.mode.
[[nodiscard]] AnalysisResult analyze(const Program& p, const EngineConfig& cfg);

/// Bound relaxation used for fallback thresholds and closing steps: max(1e-6, 1e-6 |b|).
[[nodiscard]] double relaxation(double bound);

} // namespace fixaccel
