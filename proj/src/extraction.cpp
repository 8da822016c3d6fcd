// Copyright (c) fixaccel contributors.
// SPDX-License-Identifier: Apache-2.0
#include "fixaccel/extraction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fixaccel {

ExtractionSchema::ExtractionSchema(const std::vector<std::string>& vars) {
    _coords.reserve(2 * vars.size());
    for (const auto& v : vars) {
        _coords.push_back({v, BoundKind::lower});
        _coords.push_back({v, BoundKind::upper});
    }
}

std::string ExtractionSchema::coordinate_name(std::size_t i) const {
    const auto& c = _coords.at(i);
    return c.var + (c.kind == BoundKind::lower ? "_lo" : "_hi");
}

RealVector bounds_vector(const AbstractState& x, const ExtractionSchema& schema) {
    if (schema.variables() != x.size()) throw StructureError("schema does not match state");
    RealVector out(static_cast<Eigen::Index>(schema.dimension()));
    for (std::size_t v = 0; v < x.size(); ++v) {
        if (x.names()[v] != schema.coordinates()[2 * v].var) throw StructureError("schema does not match state");
        const Interval& i = x[v];
        const double nan = std::numeric_limits<double>::quiet_NaN();
        out[static_cast<Eigen::Index>(2 * v)] = i.is_bottom() ? nan : i.lb();
        out[static_cast<Eigen::Index>(2 * v + 1)] = i.is_bottom() ? nan : i.ub();
    }
    return out;
}

ExtractionResult extract(const AbstractState& x, const ExtractionSchema& schema) {
    const RealVector all = bounds_vector(x, schema);
    ExtractionResult r;
    std::vector<double> kept;
    for (Eigen::Index i = 0; i < all.size(); ++i) {
        if (std::isfinite(all[i])) {
            kept.push_back(all[i]);
        } else {
            r.excluded.push_back(static_cast<std::size_t>(i));
        }
    }
    if (kept.empty()) throw NothingToAccelerate("every bound is infinite or bottom");
    r.vector = Eigen::Map<const RealVector>(kept.data(), static_cast<Eigen::Index>(kept.size()));
    return r;
}

CombineResult combine(const RealVector& y, const std::vector<std::size_t>& excluded, const ExtractionSchema& schema) {
    const std::size_t dim = schema.dimension();
    std::vector<bool> is_excluded(dim, false);
    for (std::size_t e : excluded) {
        if (e >= dim || is_excluded[e]) throw std::invalid_argument("bad excluded coordinate set");
        is_excluded[e] = true;
    }
    if (static_cast<std::size_t>(y.size()) + excluded.size() != dim) {
        throw std::invalid_argument("accelerated vector dimension does not match schema");
    }

    std::vector<double> full(dim);
    Eigen::Index next = 0;
    for (std::size_t i = 0; i < dim; ++i) {
        if (is_excluded[i]) {
            full[i] = schema.coordinates()[i].kind == BoundKind::lower ? minus_infinity : plus_infinity;
        } else {
            full[i] = y[next++];
            if (!std::isfinite(full[i])) throw std::invalid_argument("non-finite accelerated coordinate");
        }
    }

    CombineResult r;
    std::vector<std::string> names;
    std::vector<Interval> values;
    for (std::size_t v = 0; v < schema.variables(); ++v) {
        double lo = full[2 * v];
        double hi = full[2 * v + 1];
        if (lo > hi) {
            std::swap(lo, hi);
            r.inverted.push_back(v);
        }
        names.push_back(schema.coordinates()[2 * v].var);
        values.emplace_back(lo, hi);
    }
    r.state = AbstractState(std::move(names), std::move(values));
    return r;
}

} // namespace fixaccel
