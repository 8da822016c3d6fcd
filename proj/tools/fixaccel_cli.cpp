// Copyright (c) fixaccel contributors.
// SPDX-License-Identifier: Apache-2.0
//
// fixaccel analyze <program> [engine flags]
// fixaccel accelerate <csv> [transform flags]
//
// Exit status: 0 success, 1 input or usage error, 2 analysis did not reach a
// sound fixpoint.
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fixaccel/engine.hpp"
#include "fixaccel/io.hpp"
#include "fixaccel/program.hpp"

namespace {

using namespace fixaccel;

constexpr int exit_ok = 0;
constexpr int exit_input = 1;
constexpr int exit_not_converged = 2;

struct AnalyzeArgs {
    std::string input;
    std::string mode = "accel";
    std::string method = "vea";
    double delta = 1e-3;
    std::size_t widen_delay = 0;
    std::vector<double> thresholds;
    std::string inject = "once";
    std::size_t fallback_after = 20;
    std::size_t max_iter = 10000;
    double stable_tol = 3e-7;
    double stall_tol = 1e-12;
    std::string norm = "inf";
    std::string trace_path;
    std::string report_path;
};

struct AccelerateArgs {
    std::string input;
    std::string method = "vea";
    double delta = 1e-3;
    double stall_tol = 1e-12;
    std::string norm = "inf";
    std::vector<std::string> columns;
    std::string output_path;
    std::string report_path;
};

Norm parse_norm(const std::string& s) {
    if (s == "inf" || s == "infinity") return Norm::infinity;
    if (s == "2" || s == "euclidean") return Norm::euclidean;
    throw std::invalid_argument("unknown norm '" + s + "'");
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << content;
}

int run_analyze(const AnalyzeArgs& a) {
    EngineConfig cfg;
    try {
        cfg.mode = parse_mode(a.mode);
        cfg.method = parse_method(a.method);
        cfg.delta = a.delta;
        cfg.widen_delay = a.widen_delay;
        if (!a.thresholds.empty()) cfg.thresholds = ThresholdSet(a.thresholds);
        cfg.inject = parse_inject_policy(a.inject);
        cfg.fallback_after = a.fallback_after;
        cfg.max_iter = a.max_iter;
        cfg.stable_tol = a.stable_tol;
        cfg.transform.stall_tolerance = a.stall_tol;
        cfg.transform.norm = parse_norm(a.norm);
        cfg.validate();
    } catch (const std::exception& e) {
        std::cerr << "fixaccel: " << e.what() << '\n';
        return exit_input;
    }

    std::optional<Program> program;
    try {
        program.emplace(load_program(a.input));
    } catch (const ParseError& e) {
        std::cerr << a.input << ':' << e.what() << '\n';
        return exit_input;
    } catch (const std::exception& e) {
        std::cerr << "fixaccel: " << e.what() << '\n';
        return exit_input;
    }

    const AnalysisResult r = analyze(*program, cfg);
    const std::string report = report_json(r, cfg).dump(2) + "\n";
    if (!a.report_path.empty()) {
        write_file(a.report_path, report);
    } else {
        std::cout << report;
    }
    if (!a.trace_path.empty()) {
        std::ostringstream csv;
        write_trace_csv(csv, r.trace);
        write_file(a.trace_path, csv.str());
    }
    return r.report.converged && r.report.sound ? exit_ok : exit_not_converged;
}

int run_accelerate(const AccelerateArgs& a) {
    try {
        const Method method = parse_method(a.method);
        TransformConfig cfg;
        cfg.stall_tolerance = a.stall_tol;
        cfg.norm = parse_norm(a.norm);
        cfg.validate();

        std::ifstream in(a.input);
        if (!in) throw std::runtime_error("cannot open '" + a.input + "'");
        const NumericTable table = select_numeric(read_csv(in), a.columns);
        const AccelerateResult r = accelerate_table(table, method, a.delta, cfg);

        std::ostringstream csv;
        write_accelerated_csv(csv, table, r);
        if (!a.output_path.empty()) {
            write_file(a.output_path, csv.str());
        } else {
            std::cout << csv.str();
        }
        const std::string summary = summary_json(table, r, method, a.delta, cfg).dump(2) + "\n";
        if (!a.report_path.empty()) {
            write_file(a.report_path, summary);
        } else {
            std::cerr << summary;
        }
    } catch (const std::exception& e) {
        std::cerr << "fixaccel: " << e.what() << '\n';
        return exit_input;
    }
    return exit_ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Abstract fixpoints of affine loops with accelerated Kleene iteration"};
    app.require_subcommand(1);

    AnalyzeArgs an;
    auto* analyze_cmd = app.add_subcommand("analyze", "Compute a loop-head invariant of a program");
    analyze_cmd->add_option("program", an.input, "Program file")->required();
    analyze_cmd->add_option("--mode", an.mode, "kleene | widen | accel")->capture_default_str();
    analyze_cmd->add_option("--method", an.method, "aitken | epsilon | vea")->capture_default_str();
    analyze_cmd->add_option("--delta", an.delta, "Convergence threshold on accelerated elements")->capture_default_str();
    analyze_cmd->add_option("--widen-delay", an.widen_delay, "Plain steps before widening")->capture_default_str();
    analyze_cmd->add_option("--thresholds", an.thresholds, "Widening thresholds a,b,c")->delimiter(',');
    analyze_cmd->add_option("--inject", an.inject, "once | repeat")->capture_default_str();
    analyze_cmd->add_option("--fallback-after", an.fallback_after, "Steps without convergence before widening")
        ->capture_default_str();
    analyze_cmd->add_option("--max-iter", an.max_iter, "Iteration budget")->capture_default_str();
    analyze_cmd->add_option("--stable-tol", an.stable_tol, "Bound movement counted as stable (0: exact)")
        ->capture_default_str();
    analyze_cmd->add_option("--stall-tol", an.stall_tol, "Relative stall tolerance")->capture_default_str();
    analyze_cmd->add_option("--norm", an.norm, "inf | euclidean")->capture_default_str();
    analyze_cmd->add_option("--trace", an.trace_path, "Write the iteration trace CSV here");
    analyze_cmd->add_option("--report", an.report_path, "Write the report JSON here (default: stdout)");

    AccelerateArgs ac;
    auto* accel_cmd = app.add_subcommand("accelerate", "Accelerate the column sequences of a CSV file");
    accel_cmd->add_option("csv", ac.input, "Input CSV")->required();
    accel_cmd->add_option("--method", ac.method, "aitken | epsilon | vea")->capture_default_str();
    accel_cmd->add_option("--delta", ac.delta, "Convergence threshold")->capture_default_str();
    accel_cmd->add_option("--stall-tol", ac.stall_tol, "Relative stall tolerance")->capture_default_str();
    accel_cmd->add_option("--norm", ac.norm, "inf | euclidean")->capture_default_str();
    accel_cmd->add_option("--columns", ac.columns, "Columns to use (default: all)")->delimiter(',');
    accel_cmd->add_option("--output", ac.output_path, "Accelerated CSV (default: stdout)");
    accel_cmd->add_option("--report", ac.report_path, "Summary JSON (default: stderr)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_input;
    }

    if (*analyze_cmd) return run_analyze(an);
    return run_accelerate(ac);
}
