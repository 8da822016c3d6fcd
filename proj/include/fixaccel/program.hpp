// Copyright (c) fixaccel contributors.
// SPDX-License-Identifier: Apache-2.0
/*******************************************************************************
 *
 * Affine loop programs and their abstract transfer function.
 *
 * A program declares state variables (the loop-head invariant), input
 * variables (constant ranges re-read on every iteration) and a loop body of
 * sequential affine assignments:
 *
 *     state x1 in [0, 0];
 *     input u in [1, 2];
 *     loop {
 *       xn1 = 0.9048 * x1 + 0.9524 * u;
 *       x1 = xn1;
 *     }
 *
 * Assignments are evaluated in order, so later statements see the values
 * produced by earlier ones. Variables first assigned inside the body are
 * locals and are not part of the abstract state.
 *
 ******************************************************************************/
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fixaccel/abstract_state.hpp"
#include "fixaccel/interval.hpp"

namespace fixaccel {

class ParseError : public std::runtime_error {
    std::size_t _line;
    std::size_t _column;

  public:
    ParseError(const std::string& message, std::size_t line, std::size_t column);
    [[nodiscard]] std::size_t line() const { return _line; }
    [[nodiscard]] std::size_t column() const { return _column; }
};

struct LinearTerm {
    double coeff;
    std::string var;
    bool operator==(const LinearTerm&) const = default;
};

/// constant + sum(coeff * var); each variable appears at most once.
struct AffineExpr {
    double constant{0.0};
    std::vector<LinearTerm> terms;
    bool operator==(const AffineExpr&) const = default;
};

struct Assignment {
    std::string target;
    AffineExpr rhs;
    bool operator==(const Assignment&) const = default;
};

struct VarDecl {
    std::string name;
    Interval range;
    bool operator==(const VarDecl&) const = default;
};

class Program final {
    struct CompiledTerm {
        double coeff;
        std::size_t slot;
    };
    struct CompiledAssignment {
        std::size_t target;
        double constant;
        std::vector<CompiledTerm> terms;
    };

    std::vector<VarDecl> _state;
    std::vector<VarDecl> _inputs;
    std::vector<Assignment> _body;
    std::vector<CompiledAssignment> _compiled;
    std::size_t _slots{0};

  public:
    /// Validates scoping and resolves variables; throws std::invalid_argument.
    Program(std::vector<VarDecl> state, std::vector<VarDecl> inputs, std::vector<Assignment> body);

    [[nodiscard]] const std::vector<VarDecl>& state_vars() const { return _state; }
    [[nodiscard]] const std::vector<VarDecl>& input_vars() const { return _inputs; }
    [[nodiscard]] const std::vector<Assignment>& body() const { return _body; }

    /// Declared initial intervals of the state variables.
    [[nodiscard]] AbstractState initial_state() const;

    /// One abstract execution of the loop body.
    [[nodiscard]] AbstractState transfer(const AbstractState& x) const;

    /// x joined with transfer(x).
    [[nodiscard]] AbstractState step(const AbstractState& x) const;

    bool operator==(const Program& other) const {
        return _state == other._state && _inputs == other._inputs && _body == other._body;
    }
};

[[nodiscard]] Program parse_program(std::string_view text);
[[nodiscard]] Program load_program(const std::string& path);

/// Renders a program in the input grammar; parse_program(print_program(p)) == p.
[[nodiscard]] std::string print_program(const Program& p);

} // namespace fixaccel
