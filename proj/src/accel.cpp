// Copyright (c) fixaccel contributors.
// SPDX-License-Identifier: Apache-2.0
#include "fixaccel/accel.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace fixaccel {

namespace {

double magnitude(double x) { return std::abs(x); }
double magnitude(const RealVector& x) { return x.norm(); }

double zero_like(double) { return 0.0; }
RealVector zero_like(const RealVector& x) { return RealVector::Zero(x.size()); }

std::optional<double> invert(double d) { return 1.0 / d; }
std::optional<RealVector> invert(const RealVector& d) { return samelson_inverse(d); }

void check_dimension(Eigen::Index& dim, double) { dim = 1; }

void check_dimension(Eigen::Index& dim, const RealVector& x) {
    if (x.size() == 0) throw std::invalid_argument("empty vector in sequence");
    if (dim >= 0 && x.size() != dim) {
        throw std::invalid_argument("vector dimension mismatch: expected " + std::to_string(dim) + ", got " +
                                    std::to_string(x.size()));
    }
    dim = x.size();
}

bool too_small(double denom_mag, double a_mag, double b_mag, double tol) {
    return !(denom_mag >= tol * std::max({1.0, a_mag, b_mag}));
}

} // namespace

void TransformConfig::validate() const {
    if (!(stall_tolerance > 0.0)) throw std::invalid_argument("stall tolerance must be positive");
}

ScalarSeries aitken(std::span<const double> x, const TransformConfig& cfg) {
    cfg.validate();
    if (x.size() < 3) throw std::invalid_argument("Aitken's process needs at least 3 terms");
    ScalarSeries out;
    std::optional<double> last;
    for (std::size_t n = 0; n + 2 < x.size(); ++n) {
        const double d1 = x[n + 1] - x[n];
        const double d2 = x[n + 2] - 2.0 * x[n + 1] + x[n];
        if (!(std::abs(d2) >= cfg.stall_tolerance * std::max(1.0, std::abs(x[n])))) {
            out.values.push_back(last.value_or(x[n]));
            out.stalled.push_back(true);
            continue;
        }
        last = x[n] - d1 * d1 / d2;
        out.values.push_back(*last);
        out.stalled.push_back(false);
    }
    return out;
}

std::optional<RealVector> samelson_inverse(const RealVector& v) {
    if (v.size() == 1) {
        if (v[0] == 0.0) return std::nullopt;
        RealVector r(1);
        r[0] = 1.0 / v[0];
        return r;
    }
    const double sq = v.squaredNorm();
    if (sq == 0.0 || !std::isfinite(sq)) return std::nullopt;
    return RealVector(v / sq);
}

template <typename Cell>
EpsilonTable<Cell>::EpsilonTable(const TransformConfig& cfg) : _cfg(cfg) {
    _cfg.validate();
}

template <typename Cell>
std::size_t EpsilonTable<Cell>::column_size(int k) const {
    if (k == -1) return base_length() + 1;
    if (k < -1 || static_cast<std::size_t>(k) >= _columns.size()) return 0;
    return _columns[static_cast<std::size_t>(k)].size();
}

template <typename Cell>
Cell EpsilonTable<Cell>::at(int k, std::size_t n) const {
    if (k == -1) {
        if (_columns.empty()) throw std::out_of_range("empty epsilon table");
        return zero_like(_columns[0].at(0).value);
    }
    if (k < -1 || static_cast<std::size_t>(k) >= _columns.size()) throw std::out_of_range("epsilon column");
    return _columns[static_cast<std::size_t>(k)].at(n).value;
}

template <typename Cell>
bool EpsilonTable<Cell>::stalled(int k, std::size_t n) const {
    if (k == -1) return false;
    if (k < -1 || static_cast<std::size_t>(k) >= _columns.size()) throw std::out_of_range("epsilon column");
    return _columns[static_cast<std::size_t>(k)].at(n).stalled;
}

template <typename Cell>
void EpsilonTable<Cell>::push(const Cell& x) {
    check_dimension(_dim, x);
    if (_columns.empty()) _columns.emplace_back();
    _columns[0].push_back({x, false});
    const std::size_t m = _columns[0].size();

    for (std::size_t k = 1; k < m; ++k) {
        // New cell eps^k_n with n = m-1-k.
        if (_columns.size() <= k) _columns.emplace_back();
        const std::size_t n = m - 1 - k;
        const auto& prev = _columns[k - 1];
        const Entry& lo = prev[n];
        const Entry& hi = prev[n + 1];
        const bool two_back_stalled = k >= 2 && _columns[k - 2][n + 1].stalled;

        Entry cell{zero_like(x), true};
        if (!lo.stalled && !hi.stalled && !two_back_stalled) {
            const Cell diff = hi.value - lo.value;
            if (!too_small(magnitude(diff), magnitude(lo.value), magnitude(hi.value), _cfg.stall_tolerance)) {
                if (auto inv = invert(diff)) {
                    cell.value = k >= 2 ? Cell(_columns[k - 2][n + 1].value + *inv) : Cell(*inv);
                    cell.stalled = false;
                }
            }
        }
        _columns[k].push_back(std::move(cell));
    }
}

template <typename Cell>
Series<Cell> EpsilonTable<Cell>::even_diagonal() const {
    Series<Cell> out;
    for (std::size_t k = 0; 2 * k < _columns.size() && !_columns[2 * k].empty(); ++k) {
        const Entry& e = _columns[2 * k][0];
        if (e.stalled) {
            out.values.push_back(out.values.back());
        } else {
            out.values.push_back(e.value);
        }
        out.stalled.push_back(e.stalled);
    }
    return out;
}

template class EpsilonTable<double>;
template class EpsilonTable<RealVector>;

ScalarEpsilonTable epsilon_table(std::span<const double> x, const TransformConfig& cfg) {
    ScalarEpsilonTable table(cfg);
    for (double v : x) table.push(v);
    return table;
}

ScalarSeries epsilon_diagonal(std::span<const double> x, const TransformConfig& cfg) {
    return epsilon_table(x, cfg).even_diagonal();
}

VectorSeries vector_epsilon_diagonal(std::span<const RealVector> x, const TransformConfig& cfg) {
    VectorEpsilonTable table(cfg);
    for (const auto& v : x) table.push(v);
    return table.even_diagonal();
}

double distance(const RealVector& a, const RealVector& b, Norm norm) {
    if (a.size() != b.size()) throw std::invalid_argument("vector dimension mismatch");
    if (a.size() == 0) return 0.0;
    const RealVector d = a - b;
    return norm == Norm::infinity ? d.lpNorm<Eigen::Infinity>() : d.norm();
}

bool converged(const RealVector& y, const RealVector& y_prev, double delta, const TransformConfig& cfg) {
    if (!(delta > 0.0)) throw std::invalid_argument("delta must be positive");
    return distance(y, y_prev, cfg.norm) <= delta;
}

std::string to_string(Method m) {
    switch (m) {
    case Method::aitken: return "aitken";
    case Method::epsilon: return "epsilon";
    case Method::vector_epsilon: return "vea";
    }
    return "?";
}

Method parse_method(const std::string& s) {
    if (s == "aitken") return Method::aitken;
    if (s == "epsilon") return Method::epsilon;
    if (s == "vea" || s == "vector-epsilon") return Method::vector_epsilon;
    throw std::invalid_argument("unknown acceleration method '" + s + "'");
}

namespace {

int deepest_even(std::size_t m) {
    const int top = static_cast<int>(m) - 1;
    return top - top % 2;
}

// Highest even column with a valid entry on the newest antidiagonal
// (k + n = m - 1). Column 0 is always valid.
template <typename Cell>
std::pair<int, std::size_t> deepest_valid(const EpsilonTable<Cell>& t) {
    const std::size_t m = t.base_length();
    for (int k = deepest_even(m); k > 0; k -= 2) {
        const std::size_t n = m - 1 - static_cast<std::size_t>(k);
        if (!t.stalled(k, n)) return {k, n};
    }
    return {0, m - 1};
}

} // namespace

SequenceAccelerator::SequenceAccelerator(Method method, const TransformConfig& cfg) : _method(method), _cfg(cfg) {
    _cfg.validate();
    if (_method == Method::vector_epsilon) _vector_table.emplace(_cfg);
}

std::size_t SequenceAccelerator::terms_for_element(std::size_t k) const {
    return k + 3;
}

std::optional<RealVector> SequenceAccelerator::push(const RealVector& x) {
    check_dimension(_dim, x);
    const auto p = static_cast<std::size_t>(x.size());
    _base.push_back(x);
    const std::size_t m = _base.size();

    switch (_method) {
    case Method::aitken: {
        if (_aitken_last.empty()) {
            _aitken_last.assign(p, 0.0);
            _aitken_has_valid.assign(p, false);
        }
        if (m < 3) return std::nullopt;
        const RealVector& x0 = _base[m - 3];
        const RealVector& x1 = _base[m - 2];
        const RealVector& x2 = _base[m - 1];
        RealVector y(x.size());
        bool any_stalled = false;
        for (std::size_t c = 0; c < p; ++c) {
            const auto i = static_cast<Eigen::Index>(c);
            const double d1 = x1[i] - x0[i];
            const double d2 = x2[i] - 2.0 * x1[i] + x0[i];
            if (!(std::abs(d2) >= _cfg.stall_tolerance * std::max(1.0, std::abs(x0[i])))) {
                y[i] = _aitken_has_valid[c] ? _aitken_last[c] : x0[i];
                any_stalled = true;
            } else {
                y[i] = x0[i] - d1 * d1 / d2;
                _aitken_last[c] = y[i];
                _aitken_has_valid[c] = true;
            }
        }
        _out.values.push_back(y);
        _out.stalled.push_back(any_stalled);
        return y;
    }
    case Method::epsilon: {
        if (_scalar_tables.empty()) _scalar_tables.assign(p, ScalarEpsilonTable(_cfg));
        RealVector y(x.size());
        bool any_stalled = false;
        for (std::size_t c = 0; c < p; ++c) {
            auto& t = _scalar_tables[c];
            t.push(x[static_cast<Eigen::Index>(c)]);
            if (m < 3) continue;
            const auto [k, n] = deepest_valid(t);
            y[static_cast<Eigen::Index>(c)] = t.at(k, n);
            any_stalled = any_stalled || k != deepest_even(m);
        }
        if (m < 3) return std::nullopt;
        _out.values.push_back(y);
        _out.stalled.push_back(any_stalled);
        return y;
    }
    case Method::vector_epsilon: {
        _vector_table->push(x);
        if (m < 3) return std::nullopt;
        const auto [k, n] = deepest_valid(*_vector_table);
        RealVector y = _vector_table->at(k, n);
        _out.values.push_back(y);
        _out.stalled.push_back(k != deepest_even(m));
        return y;
    }
    }
    return std::nullopt;
}

} // namespace fixaccel
