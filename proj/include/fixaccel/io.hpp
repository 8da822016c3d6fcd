// Copyright (c) fixaccel contributors.
// SPDX-License-Identifier: Apache-2.0
//
// Serialization of analysis results and CSV sequence ingestion.
//
// Numbers are written with 17 significant digits; infinities as inf / -inf in
// CSV and as the strings "inf" / "-inf" in JSON. Nothing time-dependent is
// ever written, so identical runs produce identical bytes.
#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "fixaccel/accel.hpp"
#include "fixaccel/engine.hpp"
#include "fixaccel/extraction.hpp"

namespace fixaccel {

class CsvError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

[[nodiscard]] std::string format_number(double v);

[[nodiscard]] nlohmann::ordered_json config_json(const EngineConfig& cfg);
[[nodiscard]] nlohmann::ordered_json report_json(const AnalysisResult& r, const EngineConfig& cfg);

/// One header row, then the initial state and one row per iteration:
/// index, <var>_lo, <var>_hi, ..., y_<var>_lo, y_<var>_hi, ..., event.
void write_trace_csv(std::ostream& out, const IterationTrace& trace);

/// Comma-separated cells; '#' comment lines and blank lines are skipped.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::size_t> row_lines;  // source line of each row
};

[[nodiscard]] CsvTable read_csv(std::istream& in);

struct NumericTable {
    std::vector<std::string> columns;
    std::vector<RealVector> rows;
};

/// Parses the selected columns (all when empty) as finite decimals.
/// Throws CsvError on ragged rows, unknown columns or non-numeric cells.
[[nodiscard]] NumericTable select_numeric(const CsvTable& table, const std::vector<std::string>& columns = {});

struct AccelerateSummary {
    enum class Status { converged, not_converged, insufficient_data };
    Status status{Status::insufficient_data};
    std::size_t elements{0};
    /// First k >= 1 with ||d_k - d_{k-1}|| <= delta.
    std::optional<std::size_t> converged_element;
    /// Base terms consumed up to that element, and the iteration index of the
    /// last one (terms - 1).
    std::optional<std::size_t> base_terms;
    std::optional<std::size_t> before;
    std::optional<RealVector> limit;
};

[[nodiscard]] std::string to_string(AccelerateSummary::Status s);

struct AccelerateResult {
    VectorSeries elements;
    AccelerateSummary summary;
};

[[nodiscard]] AccelerateResult accelerate_table(const NumericTable& table, Method method, double delta,
                                                const TransformConfig& cfg = {});

/// k, <columns...>, status
void write_accelerated_csv(std::ostream& out, const NumericTable& table, const AccelerateResult& r);
[[nodiscard]] nlohmann::ordered_json summary_json(const NumericTable& table, const AccelerateResult& r,
                                                  Method method, double delta, const TransformConfig& cfg);

} // namespace fixaccel
