// Copyright (c) fixaccel contributors.
// SPDX-License-Identifier: Apache-2.0
#include "fixaccel/program.hpp"

#include <cmath>
#include <map>

namespace fixaccel {

Program::Program(std::vector<VarDecl> state, std::vector<VarDecl> inputs, std::vector<Assignment> body)
    : _state(std::move(state)), _inputs(std::move(inputs)), _body(std::move(body)) {
    if (_state.empty()) throw std::invalid_argument("program declares no state variable");

    std::map<std::string, std::size_t> slot_of;
    auto declare = [&](const std::string& name) {
        if (!slot_of.emplace(name, _slots).second) {
            throw std::invalid_argument("variable '" + name + "' declared twice");
        }
        ++_slots;
    };
    for (const auto& d : _state) declare(d.name);
    for (const auto& d : _inputs) declare(d.name);
    const std::size_t first_input = _state.size();
    const std::size_t first_local = _state.size() + _inputs.size();

    for (const auto& a : _body) {
        CompiledAssignment c{0, a.rhs.constant, {}};
        if (!std::isfinite(a.rhs.constant)) throw std::invalid_argument("non-finite constant in assignment");
        for (const auto& t : a.rhs.terms) {
            if (!std::isfinite(t.coeff)) throw std::invalid_argument("non-finite coefficient for '" + t.var + "'");
            auto it = slot_of.find(t.var);
            if (it == slot_of.end()) throw std::invalid_argument("undeclared variable '" + t.var + "'");
            c.terms.push_back({t.coeff, it->second});
        }
        auto it = slot_of.find(a.target);
        if (it == slot_of.end()) {
            it = slot_of.emplace(a.target, _slots++).first;
        } else if (it->second >= first_input && it->second < first_local) {
            throw std::invalid_argument("cannot assign to input variable '" + a.target + "'");
        }
        c.target = it->second;
        _compiled.push_back(std::move(c));
    }
}

AbstractState Program::initial_state() const {
    std::vector<std::string> names;
    std::vector<Interval> values;
    for (const auto& d : _state) {
        names.push_back(d.name);
        values.push_back(d.range);
    }
    return {std::move(names), std::move(values)};
}

AbstractState Program::transfer(const AbstractState& x) const {
    if (x.size() != _state.size()) throw StructureError("state does not match program variables");
    std::vector<Interval> env(_slots);
    for (std::size_t i = 0; i < _state.size(); ++i) {
        if (x.names()[i] != _state[i].name) throw StructureError("state does not match program variables");
        env[i] = x[i];
    }
    for (std::size_t i = 0; i < _inputs.size(); ++i) {
        env[_state.size() + i] = _inputs[i].range;
    }

    std::vector<AffineTerm> terms;
    for (const auto& a : _compiled) {
        terms.clear();
        for (const auto& t : a.terms) terms.push_back({t.coeff, env[t.slot]});
        env[a.target] = affine_eval(a.constant, terms);
    }
    env.resize(_state.size());
    return {x.names(), std::move(env)};
}

AbstractState Program::step(const AbstractState& x) const { return join(x, transfer(x)); }

} // namespace fixaccel
