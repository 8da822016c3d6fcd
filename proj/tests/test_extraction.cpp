// Copyright (c) fixaccel contributors.
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <random>

#include "fixaccel/extraction.hpp"
#include "support.hpp"

using namespace fixaccel;

namespace {

RealVector vec(std::initializer_list<double> v) {
    RealVector out(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double d : v) out[i++] = d;
    return out;
}

} // namespace

TEST_SUITE("extraction") {

TEST_CASE("schema order is lower then upper per variable") {
    const ExtractionSchema s({"x1", "x2"});
    CHECK(s.dimension() == 4);
    CHECK(s.variables() == 2);
    CHECK(s.coordinates()[1] == Coordinate{"x1", BoundKind::upper});
    CHECK(s.coordinate_name(2) == "x2_lo");
    CHECK(s.coordinate_name(3) == "x2_hi");
}

TEST_CASE("intro initial state") {
    const Program p = fixaccel::testing::bundled("intro.loop");
    const AbstractState x0 = p.initial_state();
    const ExtractionResult r = extract(x0, ExtractionSchema::of(x0));
    CHECK(r.excluded.empty());
    CHECK(r.vector == vec({1, 2, 1, 4, 1, 20}));
}

TEST_CASE("infinite and bottom coordinates are excluded") {
    const AbstractState x{{"a", Interval(minus_infinity, 3)}, {"b", Interval::bottom()}, {"c", Interval(1, 2)}};
    const ExtractionSchema s = ExtractionSchema::of(x);
    const ExtractionResult r = extract(x, s);
    CHECK(r.excluded == std::vector<std::size_t>{0, 2, 3});
    CHECK(r.vector == vec({3, 1, 2}));
    const RealVector b = bounds_vector(x, s);
    CHECK(b[0] == minus_infinity);
    CHECK(std::isnan(b[2]));
    CHECK(b[5] == 2.0);
}

TEST_CASE("nothing left to accelerate") {
    const AbstractState x{{"a", Interval::top()}};
    CHECK_THROWS_AS((void)extract(x, ExtractionSchema::of(x)), NothingToAccelerate);
}

TEST_CASE("schema must match the state") {
    const AbstractState x{{"a", Interval(0, 1)}};
    CHECK_THROWS_AS((void)extract(x, ExtractionSchema({"b"})), StructureError);
    CHECK_THROWS_AS((void)extract(x, ExtractionSchema({"a", "b"})), StructureError);
}

TEST_CASE("combine restores excluded bounds as infinities") {
    const ExtractionSchema s({"a", "c"});
    const CombineResult r = combine(vec({3, 1, 2}), {0}, s);
    CHECK(r.inverted.empty());
    CHECK(r.state.at("a") == Interval(minus_infinity, 3));
    CHECK(r.state.at("c") == Interval(1, 2));
}

TEST_CASE("combine swaps and flags inverted pairs") {
    const ExtractionSchema s({"a", "b"});
    const CombineResult r = combine(vec({5, 4, 0, 1}), {}, s);
    CHECK(r.inverted == std::vector<std::size_t>{0});
    CHECK(r.state.at("a") == Interval(4, 5));
    CHECK(r.state.at("b") == Interval(0, 1));
}

TEST_CASE("combine validates its input") {
    const ExtractionSchema s({"a"});
    CHECK_THROWS_AS((void)combine(vec({1, 2, 3}), {}, s), std::invalid_argument);
    CHECK_THROWS_AS((void)combine(vec({1}), {5}, s), std::invalid_argument);
    CHECK_THROWS_AS((void)combine(vec({1, std::nan("")}), {}, s), std::invalid_argument);
}

TEST_CASE("combine after extract is the identity") {
    std::mt19937_64 rng(53);
    std::uniform_int_distribution<int> size(1, 8);
    for (int i = 0; i < 1000; ++i) {
        std::vector<std::string> names;
        std::vector<Interval> values;
        for (int v = size(rng); v > 0; --v) {
            names.push_back("v" + std::to_string(v));
            values.push_back(fixaccel::testing::random_interval(rng, 1e3));
        }
        const AbstractState x(names, values);
        const ExtractionSchema s = ExtractionSchema::of(x);
        const ExtractionResult e = extract(x, s);
        const CombineResult c = combine(e.vector, e.excluded, s);
        CHECK(c.state == x);
        CHECK(c.inverted.empty());
    }
}

} // TEST_SUITE
