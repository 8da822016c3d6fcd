// Copyright (c) fixaccel contributors.
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "fixaccel/interval.hpp"
#include "support.hpp"

using namespace fixaccel;
using fixaccel::testing::random_extended_interval;
using fixaccel::testing::random_interval;

namespace {

// Reference evaluation of sum c_i * [a_i, b_i] by picking the bound that
// minimizes / maximizes each product.
std::pair<double, double> affine_oracle(double c0, const std::vector<std::pair<double, std::pair<double, double>>>& t) {
    double lo = c0;
    double hi = c0;
    for (const auto& [c, r] : t) {
        const double p = c * r.first;
        const double q = c * r.second;
        lo += std::min(p, q);
        hi += std::max(p, q);
    }
    return {lo, hi};
}

} // namespace

TEST_SUITE("interval") {

TEST_CASE("construction") {
    CHECK(Interval{}.is_bottom());
    CHECK(Interval::bottom().is_bottom());
    CHECK(Interval::top().is_top());
    CHECK_FALSE(Interval(0.0, 1.0).is_bottom());
    CHECK(Interval(3.0) == Interval(3.0, 3.0));
    CHECK_THROWS_AS(Interval(2.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(Interval(plus_infinity, plus_infinity), std::invalid_argument);
    CHECK_THROWS_AS(Interval(minus_infinity, minus_infinity), std::invalid_argument);
    CHECK_THROWS_AS(Interval(std::nan(""), 1.0), DomainError);
    CHECK_THROWS_AS(Interval(0.0, std::nan("")), DomainError);
    CHECK(Interval(minus_infinity, 0.0).lb() == minus_infinity);
}

TEST_CASE("to_string") {
    CHECK(Interval(0.0, 1.5).to_string() == "[0, 1.5]");
    CHECK(Interval::bottom().to_string() == "_|_");
    CHECK(Interval::top().to_string() == "[-oo, +oo]");
}

TEST_CASE("join") {
    CHECK(join(Interval(0, 1), Interval(2, 3)) == Interval(0, 3));
    CHECK(join(Interval::bottom(), Interval(2, 3)) == Interval(2, 3));
    CHECK(join(Interval(2, 3), Interval::bottom()) == Interval(2, 3));
    CHECK(join(Interval::bottom(), Interval::bottom()).is_bottom());
    CHECK(join(Interval(minus_infinity, 0), Interval(5, 6)) == Interval(minus_infinity, 6));
}

TEST_CASE("leq") {
    CHECK(leq(Interval(1, 2), Interval(0, 3)));
    CHECK_FALSE(leq(Interval(0, 3), Interval(1, 2)));
    CHECK(leq(Interval::bottom(), Interval(1, 2)));
    CHECK(leq(Interval::bottom(), Interval::bottom()));
    CHECK_FALSE(leq(Interval(1, 2), Interval::bottom()));
    CHECK(leq(Interval(1, 2), Interval::top()));
}

TEST_CASE("join is the least upper bound") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 500; ++i) {
        const Interval a = random_extended_interval(rng);
        const Interval b = random_extended_interval(rng);
        const Interval c = random_extended_interval(rng);
        const Interval j = join(a, b);
        CHECK(leq(a, j));
        CHECK(leq(b, j));
        CHECK(join(a, b) == join(b, a));
        CHECK(join(a, a) == a);
        if (leq(a, c) && leq(b, c)) CHECK(leq(j, c));
        CHECK(leq(a, b) == (join(a, b) == b));
    }
}

TEST_CASE("standard widening") {
    CHECK(widen(Interval(0, 1), Interval(0, 2)) == Interval(0, plus_infinity));
    CHECK(widen(Interval(0, 2), Interval(0, 1)) == Interval(0, 2));
    CHECK(widen(Interval(1, 2), Interval(0, 2)) == Interval(minus_infinity, 2));
    CHECK(widen(Interval::bottom(), Interval(3, 4)) == Interval(3, 4));
    CHECK(widen(Interval(3, 4), Interval::bottom()) == Interval(3, 4));
}

TEST_CASE("threshold widening") {
    CHECK(widen(Interval(0, 1), Interval(0, 2), ThresholdSet{5, 10}) == Interval(0, 5));
    CHECK(widen(Interval(2, 3), Interval(1, 3), ThresholdSet{0}) == Interval(0, 3));
    CHECK(widen(Interval(0, 1), Interval(0, 20), ThresholdSet{5, 10}) == Interval(0, plus_infinity));
    CHECK(widen(Interval(0, 1), Interval(0, 5), ThresholdSet{5, 10}) == Interval(0, 5));
    CHECK(widen(Interval(0, 1), Interval(0, 2), ThresholdSet{}) == Interval(0, plus_infinity));
}

TEST_CASE("threshold set") {
    const ThresholdSet t{10, 5, 5, -1};
    CHECK(t.size() == 3);
    CHECK(t.values()[0] == -1);
    CHECK(t.ceil(6) == 10);
    CHECK(t.ceil(5) == 5);
    CHECK(t.ceil(11) == plus_infinity);
    CHECK(t.floor(4) == -1);
    CHECK(t.floor(-2) == minus_infinity);
    CHECK_THROWS_AS(ThresholdSet({1.0, plus_infinity}), std::invalid_argument);
}

TEST_CASE("widening over-approximates both arguments") {
    std::mt19937_64 rng(7);
    const ThresholdSet t{-50, -10, 0, 10, 50};
    for (int i = 0; i < 1000; ++i) {
        const Interval a = random_extended_interval(rng);
        const Interval b = random_extended_interval(rng);
        CHECK(leq(a, widen(a, b)));
        CHECK(leq(b, widen(a, b)));
        CHECK(leq(a, widen(a, b, t)));
        CHECK(leq(b, widen(a, b, t)));
        CHECK(leq(widen(a, b, t), widen(a, b)));
    }
}

TEST_CASE("widened chains stabilize") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> step(0.0, 5.0);
    const ThresholdSet t{-30, -5, 5, 30, 100};
    for (int c = 0; c < 100; ++c) {
        Interval x = random_interval(rng, 10.0);
        Interval w = x;
        Interval wt = x;
        int changes = 0;
        int changes_t = 0;
        for (int n = 0; n < 200; ++n) {
            x = join(x, Interval(x.lb() - step(rng), x.ub() + step(rng)));
            const Interval nw = widen(w, join(w, x));
            const Interval nwt = widen(wt, join(wt, x), t);
            if (!(nw == w)) ++changes;
            if (!(nwt == wt)) ++changes_t;
            w = nw;
            wt = nwt;
            CHECK(leq(x, w));
            CHECK(leq(x, wt));
        }
        // Each bound may move at most once under standard widening and at
        // most |T| + 1 times with thresholds.
        CHECK(changes <= 2);
        CHECK(changes_t <= 2 * static_cast<int>(t.size() + 1));
    }
}

TEST_CASE("scale and add") {
    CHECK(scale(2.0, Interval(1, 3)) == Interval(2, 6));
    CHECK(scale(-2.0, Interval(1, 3)) == Interval(-6, -2));
    CHECK(scale(0.0, Interval::top()) == Interval(0.0));
    CHECK(scale(-1.0, Interval(0, plus_infinity)) == Interval(minus_infinity, 0));
    CHECK(scale(3.0, Interval::bottom()).is_bottom());
    CHECK_THROWS_AS((void)scale(std::nan(""), Interval(0, 1)), DomainError);
    CHECK(add(Interval(1, 2), Interval(10, 20)) == Interval(11, 22));
    CHECK(add(Interval(1, 2), Interval::bottom()).is_bottom());
}

TEST_CASE("affine evaluation of the first intro update") {
    const std::array<AffineTerm, 4> terms{{{-0.4375, Interval(1, 2)},
                                           {0.0625, Interval(1, 4)},
                                           {0.2652, Interval(1, 20)},
                                           {0.1, Interval(1, 6)}}};
    const Interval r = affine_eval(0.0, terms);
    const auto [lo, hi] = affine_oracle(0.0, {{-0.4375, {1, 2}}, {0.0625, {1, 4}}, {0.2652, {1, 20}}, {0.1, {1, 6}}});
    CHECK(r.ub() == doctest::Approx(5.7165).epsilon(1e-12));
    CHECK(r.lb() == doctest::Approx(-0.4473).epsilon(1e-12));
    CHECK(r.ub() == doctest::Approx(hi).epsilon(1e-15));
    CHECK(r.lb() == doctest::Approx(lo).epsilon(1e-15));
}

TEST_CASE("affine evaluation matches the bound-picking oracle and is monotone") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> coef(-2.0, 2.0);
    std::uniform_int_distribution<int> len(0, 5);
    for (int i = 0; i < 300; ++i) {
        const double c0 = coef(rng);
        std::vector<AffineTerm> terms;
        std::vector<AffineTerm> wider;
        std::vector<std::pair<double, std::pair<double, double>>> ref;
        for (int k = len(rng); k > 0; --k) {
            const Interval a = random_interval(rng);
            const double c = coef(rng);
            terms.push_back({c, a});
            wider.push_back({c, join(a, random_interval(rng))});
            ref.push_back({c, {a.lb(), a.ub()}});
        }
        const Interval r = affine_eval(c0, terms);
        const auto [lo, hi] = affine_oracle(c0, ref);
        CHECK(r.lb() == doctest::Approx(lo).epsilon(1e-12));
        CHECK(r.ub() == doctest::Approx(hi).epsilon(1e-12));
        CHECK(leq(r, affine_eval(c0, wider)));
    }
}

TEST_CASE("affine evaluation with bottom or infinite arguments") {
    const std::array<AffineTerm, 2> with_bottom{{{1.0, Interval(0, 1)}, {2.0, Interval::bottom()}}};
    CHECK(affine_eval(0.0, with_bottom).is_bottom());
    const std::array<AffineTerm, 2> with_inf{{{1.0, Interval(0, plus_infinity)}, {-1.0, Interval(0, 1)}}};
    CHECK(affine_eval(1.0, with_inf) == Interval(0, plus_infinity));
    CHECK(affine_eval(4.0, {}) == Interval(4.0));
}

} // TEST_SUITE
