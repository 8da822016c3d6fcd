// Copyright (c) fixaccel contributors.
// SPDX-License-Identifier: Apache-2.0
#include "fixaccel/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fixaccel/extraction.hpp"

namespace fixaccel {

void EngineConfig::validate() const {
    if (max_iter < 1) throw std::invalid_argument("max_iter must be at least 1");
    if (mode == Mode::accel && !(delta > 0.0)) throw std::invalid_argument("delta must be positive");
    if (!(stable_tol >= 0.0) || !std::isfinite(stable_tol)) {
        throw std::invalid_argument("stable_tol must be finite and non-negative");
    }
    transform.validate();
}

std::string to_string(Mode m) {
    switch (m) {
    case Mode::kleene: return "kleene";
    case Mode::widen: return "widen";
    case Mode::accel: return "accel";
    }
    return "?";
}

Mode parse_mode(const std::string& s) {
    if (s == "kleene") return Mode::kleene;
    if (s == "widen") return Mode::widen;
    if (s == "accel") return Mode::accel;
    throw std::invalid_argument("unknown mode '" + s + "'");
}

std::string to_string(InjectPolicy p) { return p == InjectPolicy::once ? "once" : "repeat"; }

InjectPolicy parse_inject_policy(const std::string& s) {
    if (s == "once") return InjectPolicy::once;
    if (s == "repeat") return InjectPolicy::repeat;
    throw std::invalid_argument("unknown inject policy '" + s + "'");
}

std::string to_string(Event e) {
    switch (e) {
    case Event::initial: return "initial";
    case Event::plain_step: return "plain-step";
    case Event::widen_step: return "widen-step";
    case Event::injection: return "injection";
    case Event::fallback_widen: return "fallback-widen";
    case Event::converged: return "converged";
    case Event::exhausted: return "exhausted";
    }
    return "?";
}

std::string to_string(Termination t) { return t == Termination::converged ? "converged" : "max-iter"; }

double relaxation(double bound) { return std::max(1e-6, 1e-6 * std::abs(bound)); }

bool verify_postfixpoint(const Program& p, const AbstractState& x) { return leq(p.transfer(x), x); }

namespace {

// Joins in F(x) with escaping bounds pushed outward by a uniform margin,
// growing the margin until the result is a post-fixpoint. A uniform margin is
// closed under F whenever the absolute row sums of the loop are below one.
// Returns the last candidate either way.
AbstractState close_iterate(const Program& p, const AbstractState& x) {
    constexpr int attempts = 12;
    double scale = 0.0;
    for (const auto& i : x.values()) {
        if (i.is_bottom()) continue;
        if (std::isfinite(i.lb())) scale = std::max(scale, std::abs(i.lb()));
        if (std::isfinite(i.ub())) scale = std::max(scale, std::abs(i.ub()));
    }
    double margin = relaxation(scale);
    AbstractState c = x;
    for (int a = 0; a < attempts; ++a, margin *= 4.0) {
        const AbstractState f = p.transfer(c);
        if (leq(f, c)) return c;
        std::vector<Interval> next;
        next.reserve(c.size());
        for (std::size_t v = 0; v < c.size(); ++v) {
            const Interval& cur = c[v];
            const Interval& img = f[v];
            if (leq(img, cur)) {
                next.push_back(cur);
                continue;
            }
            if (cur.is_bottom()) {
                next.push_back(img);
                continue;
            }
            double lo = cur.lb();
            double hi = cur.ub();
            if (img.lb() < lo) lo = img.lb() - margin;
            if (img.ub() > hi) hi = img.ub() + margin;
            next.emplace_back(lo, hi);
        }
        c = AbstractState(c.names(), std::move(next));
    }
    return c;
}

class Runner {
    const Program& _p;
    const EngineConfig& _cfg;
    AnalysisResult _out;
    AbstractState _x;
    bool _done{false};

  public:
    Runner(const Program& p, const EngineConfig& cfg) : _p(p), _cfg(cfg), _x(p.initial_state()) {
        _cfg.validate();
        _out.trace.records.push_back({0, _x, std::nullopt, Event::initial, std::nullopt});
    }

    [[nodiscard]] const AbstractState& current() const { return _x; }
    [[nodiscard]] bool done() const { return _done; }
    [[nodiscard]] std::size_t next_index() const { return _out.trace.records.size(); }

    // Records X_i and applies the stabilization test against X_{i-1}.
    void commit(AbstractState next, Event event, std::optional<RealVector> accelerated = std::nullopt,
                std::optional<AbstractState> before_injection = std::nullopt) {
        const AbstractState prev = std::move(_x);
        _x = std::move(next);
        const std::size_t i = next_index();
        const double moved = max_bound_distance(prev, _x);
        const bool injected = event == Event::injection;

        bool stable = moved == 0.0;
        if (!stable && !injected && _cfg.stable_tol > 0.0 && moved <= _cfg.stable_tol) {
            if (verify_postfixpoint(_p, _x)) {
                stable = true;
            } else {
                _out.trace.records.push_back({i, _x, std::move(accelerated), event, std::nullopt});
                AbstractState closed = close_iterate(_p, _x);
                const bool ok = verify_postfixpoint(_p, closed);
                _x = std::move(closed);
                _out.trace.records.push_back({i + 1, _x, std::nullopt, ok ? Event::converged : Event::widen_step,
                                              std::nullopt});
                if (ok) finish(Termination::converged);
                return;
            }
        }
        _out.trace.records.push_back(
            {i, _x, std::move(accelerated), stable ? Event::converged : event, std::move(before_injection)});
        if (stable) finish(Termination::converged);
    }

    void count_injection() { ++_out.report.injections; }

    void finish(Termination reason) {
        _done = true;
        _out.trace.reason = reason;
    }

    AnalysisResult result() && {
        if (!_done) {
            finish(Termination::max_iter);
            if (_out.trace.records.size() > 1) _out.trace.records.back().event = Event::exhausted;
        }
        _out.report.invariant = _x;
        _out.report.iterations = _out.trace.steps();
        _out.report.converged = _out.trace.reason == Termination::converged;
        _out.report.sound = verify_postfixpoint(_p, _x);
        return std::move(_out);
    }
};

void require_mode(const EngineConfig& cfg, Mode m) {
    if (cfg.mode != m) throw std::invalid_argument("engine called with mode '" + to_string(cfg.mode) + "'");
}

// Tracks the extracted bound history and the accelerator over its finite coordinates.
class AccelerationState {
    const EngineConfig& _cfg;
    ExtractionSchema _schema;
    std::vector<RealVector> _history;
    std::vector<std::size_t> _excluded;
    std::optional<SequenceAccelerator> _acc;
    std::optional<RealVector> _prev_element;
    std::optional<RealVector> _last_full;

    static std::vector<std::size_t> excluded_of(const RealVector& full) {
        std::vector<std::size_t> ex;
        for (Eigen::Index i = 0; i < full.size(); ++i) {
            if (!std::isfinite(full[i])) ex.push_back(static_cast<std::size_t>(i));
        }
        return ex;
    }

    RealVector filtered(const RealVector& full) const {
        RealVector out(full.size() - static_cast<Eigen::Index>(_excluded.size()));
        Eigen::Index j = 0;
        std::size_t e = 0;
        for (Eigen::Index i = 0; i < full.size(); ++i) {
            if (e < _excluded.size() && _excluded[e] == static_cast<std::size_t>(i)) {
                ++e;
                continue;
            }
            out[j++] = full[i];
        }
        return out;
    }

    RealVector expand(const RealVector& y) const {
        RealVector full(static_cast<Eigen::Index>(_schema.dimension()));
        Eigen::Index j = 0;
        std::size_t e = 0;
        for (Eigen::Index i = 0; i < full.size(); ++i) {
            if (e < _excluded.size() && _excluded[e] == static_cast<std::size_t>(i)) {
                full[i] = std::numeric_limits<double>::quiet_NaN();
                ++e;
            } else {
                full[i] = y[j++];
            }
        }
        return full;
    }

    void rebuild() {
        _acc.reset();
        _prev_element.reset();
        if (_excluded.size() == _schema.dimension()) return;
        _acc.emplace(_cfg.method, _cfg.transform);
        for (const auto& h : _history) {
            if (auto y = _acc->push(filtered(h))) {
                _prev_element = *y;
            }
        }
    }

  public:
    struct Outcome {
        std::optional<RealVector> element_full;  // new element, schema coordinates
        bool converged{false};
    };

    AccelerationState(const EngineConfig& cfg, const AbstractState& x0)
        : _cfg(cfg), _schema(ExtractionSchema::of(x0)) {
        _history.push_back(bounds_vector(x0, _schema));
        _excluded = excluded_of(_history.back());
        rebuild();
    }

    Outcome observe(const AbstractState& x) {
        Outcome o;
        RealVector full = bounds_vector(x, _schema);
        auto ex = excluded_of(full);
        _history.push_back(std::move(full));
        if (ex != _excluded) {
            _excluded = std::move(ex);
            rebuild();
            return o;
        }
        if (!_acc) return o;
        auto y = _acc->push(filtered(_history.back()));
        if (!y) return o;
        o.element_full = expand(*y);
        _last_full = o.element_full;
        if (_prev_element) o.converged = converged(*y, *_prev_element, _cfg.delta, _cfg.transform);
        _prev_element = std::move(y);
        return o;
    }

    // Replaces the newest history entry after an injection and replays.
    void replace_last(const AbstractState& x) {
        _history.back() = bounds_vector(x, _schema);
        _excluded = excluded_of(_history.back());
        rebuild();
    }

    // Injected state: schema image of the newest element; inverted and fully
    // excluded variables contribute nothing.
    [[nodiscard]] AbstractState injection_image(const RealVector& element_full) const {
        const CombineResult c = combine(filtered(element_full), _excluded, _schema);
        AbstractState s = c.state;
        for (std::size_t v : c.inverted) s.set(v, Interval::bottom());
        for (std::size_t v = 0; v < _schema.variables(); ++v) {
            const bool lo_out = std::binary_search(_excluded.begin(), _excluded.end(), 2 * v);
            const bool hi_out = std::binary_search(_excluded.begin(), _excluded.end(), 2 * v + 1);
            if (lo_out && hi_out) s.set(v, Interval::bottom());
        }
        return s;
    }

    [[nodiscard]] ThresholdSet fallback_thresholds() const {
        std::vector<double> t;
        if (_last_full) {
            for (Eigen::Index i = 0; i < _last_full->size(); ++i) {
                const double b = (*_last_full)[i];
                if (!std::isfinite(b)) continue;
                const bool lower = _schema.coordinates()[static_cast<std::size_t>(i)].kind == BoundKind::lower;
                t.push_back(lower ? b - relaxation(b) : b + relaxation(b));
            }
        }
        return ThresholdSet(std::move(t));
    }
};

} // namespace

AnalysisResult kleene(const Program& p, const EngineConfig& cfg) {
    require_mode(cfg, Mode::kleene);
    Runner run(p, cfg);
    while (!run.done() && run.next_index() <= cfg.max_iter) {
        run.commit(p.step(run.current()), Event::plain_step);
    }
    return std::move(run).result();
}

AnalysisResult kleene_widened(const Program& p, const EngineConfig& cfg) {
    require_mode(cfg, Mode::widen);
    Runner run(p, cfg);
    while (!run.done() && run.next_index() <= cfg.max_iter) {
        const AbstractState& x = run.current();
        AbstractState next = p.step(x);
        if (run.next_index() > cfg.widen_delay) {
            next = cfg.thresholds ? widen(x, next, *cfg.thresholds) : widen(x, next);
            run.commit(std::move(next), Event::widen_step);
        } else {
            run.commit(std::move(next), Event::plain_step);
        }
    }
    return std::move(run).result();
}

AnalysisResult accelerated_fixpoint(const Program& p, const EngineConfig& cfg) {
    require_mode(cfg, Mode::accel);
    Runner run(p, cfg);

    enum class Phase { accelerate, kleene, thresholds, widen };
    Phase phase = Phase::accelerate;
    std::size_t mark = 0;  // last injection, or start of the current fallback phase
    std::size_t injections = 0;
    std::optional<AccelerationState> acc;
    try {
        acc.emplace(cfg, run.current());
    } catch (const NothingToAccelerate&) {
        phase = Phase::kleene;
    }
    ThresholdSet fallback;

    while (!run.done() && run.next_index() <= cfg.max_iter) {
        const std::size_t i = run.next_index();
        const AbstractState& x = run.current();

        if (phase == Phase::thresholds || phase == Phase::widen) {
            AbstractState next = phase == Phase::thresholds ? widen(x, p.step(x), fallback) : widen(x, p.step(x));
            run.commit(std::move(next), Event::fallback_widen);
            if (phase == Phase::thresholds && i - mark >= cfg.fallback_after) {
                phase = Phase::widen;
                mark = i;
            }
            continue;
        }

        AbstractState next = p.step(x);
        std::optional<RealVector> element;
        bool injected = false;
        std::optional<AbstractState> before;
        if (phase == Phase::accelerate) {
            auto o = acc->observe(next);
            element = o.element_full;
            if (o.converged && element) {
                AbstractState joined = join(next, acc->injection_image(*element));
                if (!(joined == next)) {
                    before = next;
                    next = std::move(joined);
                    injected = true;
                    ++injections;
                    run.count_injection();
                    mark = i;
                    if (cfg.inject == InjectPolicy::once) {
                        phase = Phase::kleene;
                    } else {
                        acc->replace_last(next);
                    }
                }
            }
        }
        run.commit(std::move(next), injected ? Event::injection : Event::plain_step, std::move(element),
                   std::move(before));

        if (!run.done() && (phase == Phase::accelerate || phase == Phase::kleene) &&
            run.next_index() - 1 - mark >= cfg.fallback_after) {
            fallback = acc ? acc->fallback_thresholds() : ThresholdSet{};
            phase = fallback.empty() ? Phase::widen : Phase::thresholds;
            mark = run.next_index() - 1;
        }
    }
    return std::move(run).result();
}

AnalysisResult analyze(const Program& p, const EngineConfig& cfg) {
    switch (cfg.mode) {
    case Mode::kleene: return kleene(p, cfg);
    case Mode::widen: return kleene_widened(p, cfg);
    case Mode::accel: return accelerated_fixpoint(p, cfg);
    }
    throw std::invalid_argument("unknown mode");
}

} // namespace fixaccel
