// Copyright (c) fixaccel contributors.
// SPDX-License-Identifier: Apache-2.0
#include "fixaccel/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>

namespace fixaccel {

using json = nlohmann::ordered_json;

std::string format_number(double v) {
    if (v == plus_infinity) return "inf";
    if (v == minus_infinity) return "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

json number_json(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

json interval_json(const Interval& i) {
    if (i.is_bottom()) return "bottom";
    return json{{"lo", number_json(i.lb())}, {"hi", number_json(i.ub())}};
}

json state_json(const AbstractState& x) {
    json o = json::object();
    for (std::size_t v = 0; v < x.size(); ++v) o[x.names()[v]] = interval_json(x[v]);
    return o;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    for (;;) {
        const auto comma = line.find(',', start);
        cells.push_back(trim(line.substr(start, comma == std::string::npos ? std::string::npos : comma - start)));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return cells;
}

} // namespace

json config_json(const EngineConfig& cfg) {
    json c;
    c["mode"] = to_string(cfg.mode);
    c["method"] = to_string(cfg.method);
    c["delta"] = cfg.delta;
    c["widen_delay"] = cfg.widen_delay;
    if (cfg.thresholds) {
        json t = json::array();
        for (double v : cfg.thresholds->values()) t.push_back(v);
        c["thresholds"] = t;
    } else {
        c["thresholds"] = nullptr;
    }
    c["inject"] = to_string(cfg.inject);
    c["fallback_after"] = cfg.fallback_after;
    c["max_iter"] = cfg.max_iter;
    c["stable_tol"] = cfg.stable_tol;
    c["stall_tolerance"] = cfg.transform.stall_tolerance;
    c["norm"] = cfg.transform.norm == Norm::infinity ? "infinity" : "euclidean";
    return c;
}

json report_json(const AnalysisResult& r, const EngineConfig& cfg) {
    json j;
    j["invariant"] = state_json(r.report.invariant);
    j["iterations"] = r.report.iterations;
    j["injections"] = r.report.injections;
    j["converged"] = r.report.converged;
    j["sound"] = r.report.sound;
    j["termination"] = to_string(r.trace.reason);
    j["config"] = config_json(cfg);
    return j;
}

void write_trace_csv(std::ostream& out, const IterationTrace& trace) {
    if (trace.records.empty()) return;
    const ExtractionSchema schema = ExtractionSchema::of(trace.records.front().state);
    out << "index";
    for (std::size_t c = 0; c < schema.dimension(); ++c) out << ',' << schema.coordinate_name(c);
    for (std::size_t c = 0; c < schema.dimension(); ++c) out << ",y_" << schema.coordinate_name(c);
    out << ",event\n";
    for (const auto& rec : trace.records) {
        out << rec.index;
        const RealVector b = bounds_vector(rec.state, schema);
        for (Eigen::Index c = 0; c < b.size(); ++c) {
            out << ',';
            if (!std::isnan(b[c])) out << format_number(b[c]);
        }
        for (std::size_t c = 0; c < schema.dimension(); ++c) {
            out << ',';
            if (rec.accelerated) {
                const double y = (*rec.accelerated)[static_cast<Eigen::Index>(c)];
                if (!std::isnan(y)) out << format_number(y);
            }
        }
        out << ',' << to_string(rec.event) << '\n';
    }
}

CsvTable read_csv(std::istream& in) {
    CsvTable t;
    std::string line;
    std::size_t lineno = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string s = trim(line);
        if (s.empty() || s[0] == '#') continue;
        auto cells = split(s);
        if (!have_header) {
            t.header = std::move(cells);
            have_header = true;
            continue;
        }
        if (cells.size() != t.header.size()) {
            throw CsvError("line " + std::to_string(lineno) + ": expected " + std::to_string(t.header.size()) +
                           " cells, got " + std::to_string(cells.size()));
        }
        t.rows.push_back(std::move(cells));
        t.row_lines.push_back(lineno);
    }
    if (!have_header) throw CsvError("missing header row");
    return t;
}

NumericTable select_numeric(const CsvTable& table, const std::vector<std::string>& columns) {
    std::vector<std::size_t> idx;
    NumericTable out;
    if (columns.empty()) {
        for (std::size_t i = 0; i < table.header.size(); ++i) idx.push_back(i);
        out.columns = table.header;
    } else {
        for (const auto& c : columns) {
            auto it = std::find(table.header.begin(), table.header.end(), c);
            if (it == table.header.end()) throw CsvError("no column named '" + c + "'");
            idx.push_back(static_cast<std::size_t>(it - table.header.begin()));
        }
        out.columns = columns;
    }
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        RealVector v(static_cast<Eigen::Index>(idx.size()));
        for (std::size_t j = 0; j < idx.size(); ++j) {
            const std::string& cell = table.rows[r][idx[j]];
            double d = 0.0;
            const char* first = cell.data();
            const char* last = first + cell.size();
            if (!cell.empty() && *first == '+') ++first;
            auto [ptr, ec] = std::from_chars(first, last, d);
            if (cell.empty() || ec != std::errc() || ptr != last || !std::isfinite(d)) {
                throw CsvError("line " + std::to_string(table.row_lines[r]) + ": column '" + table.header[idx[j]] +
                               "' is not a finite number: '" + cell + "'");
            }
            v[static_cast<Eigen::Index>(j)] = d;
        }
        out.rows.push_back(std::move(v));
    }
    return out;
}

std::string to_string(AccelerateSummary::Status s) {
    switch (s) {
    case AccelerateSummary::Status::converged: return "converged";
    case AccelerateSummary::Status::not_converged: return "not-converged";
    case AccelerateSummary::Status::insufficient_data: return "insufficient data";
    }
    return "?";
}

AccelerateResult accelerate_table(const NumericTable& table, Method method, double delta,
                                  const TransformConfig& cfg) {
    if (!(delta > 0.0)) throw std::invalid_argument("delta must be positive");
    if (table.columns.empty()) throw std::invalid_argument("no columns to accelerate");
    SequenceAccelerator acc(method, cfg);
    for (const auto& row : table.rows) (void)acc.push(row);

    AccelerateResult r;
    r.elements = acc.elements();
    auto& s = r.summary;
    s.elements = r.elements.size();
    if (s.elements < 2) {
        s.status = AccelerateSummary::Status::insufficient_data;
        return r;
    }
    s.status = AccelerateSummary::Status::not_converged;
    for (std::size_t k = 1; k < s.elements; ++k) {
        if (converged(r.elements.values[k], r.elements.values[k - 1], delta, cfg)) {
            s.status = AccelerateSummary::Status::converged;
            s.converged_element = k;
            s.base_terms = acc.terms_for_element(k);
            s.before = *s.base_terms - 1;
            s.limit = r.elements.values[k];
            break;
        }
    }
    return r;
}

void write_accelerated_csv(std::ostream& out, const NumericTable& table, const AccelerateResult& r) {
    out << 'k';
    for (const auto& c : table.columns) out << ',' << c;
    out << ",status\n";
    for (std::size_t k = 0; k < r.elements.size(); ++k) {
        out << k;
        const RealVector& y = r.elements.values[k];
        for (Eigen::Index c = 0; c < y.size(); ++c) out << ',' << format_number(y[c]);
        out << ',' << (r.elements.stalled[k] ? "stalled" : "valid") << '\n';
    }
}

json summary_json(const NumericTable& table, const AccelerateResult& r, Method method, double delta,
                  const TransformConfig& cfg) {
    json j;
    j["method"] = to_string(method);
    j["delta"] = delta;
    j["norm"] = cfg.norm == Norm::infinity ? "infinity" : "euclidean";
    j["stall_tolerance"] = cfg.stall_tolerance;
    j["rows"] = table.rows.size();
    j["elements"] = r.summary.elements;
    j["status"] = to_string(r.summary.status);
    auto opt = [](const std::optional<std::size_t>& v) -> json { return v ? json(*v) : json(nullptr); };
    j["converged_element"] = opt(r.summary.converged_element);
    j["base_terms"] = opt(r.summary.base_terms);
    j["before"] = opt(r.summary.before);
    if (r.summary.limit) {
        json lim = json::object();
        for (std::size_t c = 0; c < table.columns.size(); ++c) {
            lim[table.columns[c]] = (*r.summary.limit)[static_cast<Eigen::Index>(c)];
        }
        j["limit"] = lim;
    } else {
        j["limit"] = nullptr;
    }
    return j;
}

} // namespace fixaccel
