#ifndef HAJOS_BUILDER_HPP
#define HAJOS_BUILDER_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hajos/digraph.hpp"
#include "hajos/errors.hpp"
#include "hajos/hajos_ops.hpp"
#include "hajos/relabel.hpp"
#include "hajos/trace.hpp"

// Construction of D(C_N) for odd N from copies of D(K3).
//
// A doubling round takes D(C_{2^t+1}) to D(C_{2^{t+1}+1}) through the digraphs
// H0, H1, ..., H_{t+2}:
//
//   H0       one join of two copies of the small cycle (three asymmetric arcs)
//   H1       H0 ⊗ H0', then rotated by one so its chords are (0,2^t), (2^t+2,1)
//   H2..     t chord-doubling rounds; the moving chord (2^t+a+1, a) becomes
//            (2^t+2a+1, 2a) until it lands on (0, 2^t)
//   H_{t+2}  the last ⊗ removes the remaining chord
//
// Every ⊗ on order M costs M operations (one join, M-1 identifications), so a
// round costs 1 + (t+2)(2^{t+1}+1). Other odd orders are reached by
// collapsing the next power cycle with two set identifications.
namespace hajos::builder {

using trace::GraphId;

/// A digraph together with the trace id that denotes it.
struct Tracked {
    Digraph graph;
    GraphId id;
};

/// Bookkeeping for one doubling round: target order is 2^{exponent+1}+1, the
/// current digraph is H_stage, and its moving chord is (2^exponent + chord_a + 1, chord_a).
struct StageState {
    unsigned exponent = 1;
    unsigned stage = 1;
    Label chord_a = 1;
};

enum class StageKind { h0, h1, lemma, finalize, reduce };

struct StageRecord {
    std::string name;
    StageKind kind = StageKind::h0;
    unsigned exponent = 0;
    std::size_t ops = 0;
    std::size_t first_step = 0;  // [first_step, end_step) in the trace
    std::size_t end_step = 0;
    GraphId input;
    GraphId output;
    // Chord-doubling rounds only: the arc that disappears and the one that appears.
    std::optional<Arc> removed;
    std::optional<Arc> added;
};

struct Envelope {
    double low = 0;
    double high = 0;
};

struct ConstructionReport {
    std::uint64_t target_order = 0;
    unsigned exponent = 0;  // power cycle 2^exponent+1 that was built; 0 for the base case
    std::optional<std::uint64_t> reduce_m;
    std::uint64_t op_count = 0;
    std::uint64_t bound = 0;  // 0 for N = 3, where no bound is stated
    std::optional<Envelope> envelope;
    bool in_envelope = false;
    // Power-cycle count in closed form, and the shifted-index summation
    // sum_{i=2}^{n} (i+1)(2^i+1) + 1, which undercounts it by n-2.
    std::uint64_t power_closed_form = 0;
    std::uint64_t power_index_sum = 0;
    std::vector<StageRecord> stages;
};

struct Construction {
    Digraph graph;
    trace::HajosTrace trace;
    ConstructionReport report;
};

/// Trace recorder plus the per-stage breakdown of a running construction.
struct Session {
    trace::Recorder recorder;
    std::vector<StageRecord> stages;
};

// ---------------------------------------------------------------------------
// Closed forms

inline std::uint64_t pow2(unsigned e) {
    if (e >= 63) {
        throw DomainError("exponent " + std::to_string(e) + " is too large");
    }
    return std::uint64_t{1} << e;
}

/// Operations used by one doubling round D(C_{2^t+1}) -> D(C_{2^{t+1}+1}).
inline std::uint64_t doubling_count(unsigned t) {
    return 1 + (t + 2) * (pow2(t + 1) + 1);
}

/// n(2^{n+2}+n+5)/2 - 7: operations to reach D(C_{2^n+1}) from D(K3).
inline std::uint64_t power_cycle_count(unsigned n) {
    if (n < 2 || n > 40) {
        throw DomainError("power cycle exponent must be in [2, 40], got " + std::to_string(n));
    }
    std::uint64_t a = n;
    std::uint64_t b = pow2(n + 2) + n + 5;
    // One of the factors is always even: n odd makes n+5 even.
    if ((a * b) % 2 != 0) {
        throw InvariantError("closed form is not an integer");
    }
    return a * b / 2 - 7;
}

inline std::uint64_t power_index_sum(unsigned n) {
    std::uint64_t sum = 1;
    for (unsigned i = 2; i <= n; ++i) {
        sum += (i + 1) * (pow2(i) + 1);
    }
    return sum;
}

inline bool is_power_cycle_order(std::uint64_t order) {
    return order >= 3 && ((order - 1) & (order - 2)) == 0;
}

/// Smallest n with N <= 2^n + 1.
inline unsigned covering_exponent(std::uint64_t order) {
    unsigned n = 1;
    while (pow2(n) + 1 < order) {
        ++n;
    }
    return n;
}

inline void require_odd_order(std::uint64_t order, std::uint64_t minimum) {
    if (order % 2 == 0) {
        throw DomainError("order must be odd, got " + std::to_string(order));
    }
    if (order < minimum) {
        throw DomainError("order must be at least " + std::to_string(minimum) + ", got " +
                          std::to_string(order));
    }
}

/// Upper bound on the Hajós number of D(C_N), N >= 5 odd.
inline std::uint64_t hajos_bound(std::uint64_t order) {
    require_odd_order(order, 5);
    if (order > pow2(40) + 1) {
        throw DomainError("order is too large");
    }
    unsigned n = covering_exponent(order);
    std::uint64_t base = power_cycle_count(n);
    return order == pow2(n) + 1 ? base : base + 2;
}

/// (N ln N, 13 N ln N).
inline Envelope complexity_envelope(std::uint64_t order) {
    require_odd_order(order, 5);
    double x = static_cast<double>(order) * std::log(static_cast<double>(order));
    return {x, 13.0 * x};
}

// ---------------------------------------------------------------------------
// Shapes

/// D(C_order) plus extra arcs.
inline Digraph cycle_with_chords(std::size_t order, const std::vector<Arc>& chords) {
    Digraph cycle = symmetric_cycle(order);
    std::vector<Label> vertices(cycle.vertices().begin(), cycle.vertices().end());
    std::vector<Arc> arcs(cycle.arcs().begin(), cycle.arcs().end());
    arcs.insert(arcs.end(), chords.begin(), chords.end());
    return Digraph::from(std::move(vertices), std::move(arcs));
}

/// The digraph H0 of a doubling round at exponent t: D(C_{2^{t+1}+1}) without
/// the arc (2^t+1, 2^t), plus (0, 2^t) and (2^t+1, 0).
inline Digraph expected_h0(unsigned t) {
    const Label half = static_cast<Label>(pow2(t));
    const std::size_t order = 2 * half + 1;
    Digraph cycle = symmetric_cycle(order);
    std::vector<Label> vertices(cycle.vertices().begin(), cycle.vertices().end());
    std::vector<Arc> arcs;
    for (const Arc& a : cycle.arcs()) {
        if (!(a.tail == half + 1 && a.head == half)) {
            arcs.push_back(a);
        }
    }
    arcs.push_back({0, half});
    arcs.push_back({half + 1, 0});
    return Digraph::from(std::move(vertices), std::move(arcs));
}

namespace detail {

inline unsigned exponent_of_cycle(const Digraph& c) {
    if (!is_power_cycle_order(c.order()) || c.order() < 3) {
        throw ShapeError("order " + std::to_string(c.order()) + " is not of the form 2^t+1");
    }
    if (c != symmetric_cycle(c.order())) {
        throw ShapeError("input is not the canonical symmetric cycle of order " + std::to_string(c.order()));
    }
    unsigned t = 0;
    while (pow2(t) + 1 < c.order()) {
        ++t;
    }
    return t;
}

inline void require_input(const Digraph& got, const Digraph& expected, const std::string& stage) {
    if (got != expected) {
        throw ShapeError(stage + ": input digraph does not have the expected arcs");
    }
}

inline void require_output(const Digraph& got, const Digraph& expected, const std::string& stage) {
    if (got != expected) {
        throw InvariantError(stage + ": result does not match the predicted arc set");
    }
}

// One ⊗ of `h` with a disjoint copy of itself shifted by its order.
inline Tracked cyclic_with_copy(const Tracked& h, const ops::CyclicSpec& spec, Session& session) {
    const Label n = static_cast<Label>(h.graph.order());
    GraphId copy_id = session.recorder.copy(h.id, n);
    auto result = ops::cyclic_identification(h.graph, copy_offset(h.graph, n), spec);
    GraphId out = session.recorder.apply(h.id, copy_id, result.operations);
    return {std::move(result.graph), out};
}

class StageScope {
public:
    StageScope(Session& session, std::string name, StageKind kind, unsigned exponent, GraphId input)
        : session_(session),
          first_step_(session.recorder.step_count()),
          first_ops_(session.recorder.ops()) {
        record_.name = std::move(name);
        record_.kind = kind;
        record_.exponent = exponent;
        record_.input = input;
    }

    StageRecord& record() { return record_; }

    std::size_t finish(GraphId output) {
        record_.output = output;
        record_.first_step = first_step_;
        record_.end_step = session_.recorder.step_count();
        record_.ops = session_.recorder.ops() - first_ops_;
        session_.stages.push_back(record_);
        return record_.ops;
    }

private:
    Session& session_;
    std::size_t first_step_;
    std::size_t first_ops_;
    StageRecord record_;
};

inline std::string round_name(unsigned t, const std::string& stage) {
    return stage + "[" + std::to_string(pow2(t) + 1) + "->" + std::to_string(pow2(t + 1) + 1) + "]";
}

inline void require_ops(std::size_t got, std::uint64_t expected, const std::string& stage) {
    if (got != expected) {
        throw InvariantError(stage + ": used " + std::to_string(got) + " operations, expected " +
                             std::to_string(expected));
    }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Doubling round

/// H0 = (C, v_{2^t}, v_0) ▽ (C', v'_0, v'_1).
///
/// The copy C' is rotated back by one before the offset, so that v'_i lands on
/// label 2^t+i for i >= 1 and the merged v'_0 disappears into v_0. One operation.
inline Tracked build_h0(const Tracked& cycle, Session& session) {
    const unsigned t = detail::exponent_of_cycle(cycle.graph);
    const Label half = static_cast<Label>(pow2(t));
    const Label small = half + 1;
    const std::string name = detail::round_name(t, "H0");
    detail::StageScope scope(session, name, StageKind::h0, t, cycle.id);

    GraphId rotated = session.recorder.relabel(cycle.id, small - 1, small);
    GraphId copy_id = session.recorder.copy(rotated, small);
    Digraph copy = copy_offset(relabel_cyclic(cycle.graph, small - 1, small), small);

    const ops::JoinSpec spec{half, 0, 2 * small - 1, small};
    GraphId out = session.recorder.join(cycle.id, copy_id, spec);
    Digraph h0 = ops::hajos_join(cycle.graph, copy, spec);
    detail::require_output(h0, expected_h0(t), name);
    detail::require_ops(scope.finish(out), 1, name);
    return {std::move(h0), out};
}

/// H1 = (H0, v_0, v_{2^t}) ⊗ (H0', v'_{2^t+1}, v'_0), before the rotation.
/// Result: D(C_{2^{t+1}+1}) plus (2^{t+1}, 2^t-1) and (2^t+1, 0).
inline Tracked build_h1(const Tracked& h0, unsigned t, Session& session) {
    const Label half = static_cast<Label>(pow2(t));
    const std::size_t order = 2 * half + 1;
    const std::string name = detail::round_name(t, "H1");
    detail::require_input(h0.graph, expected_h0(t), name);
    detail::StageScope scope(session, name, StageKind::h1, t, h0.id);

    Tracked h1 = detail::cyclic_with_copy(h0, {0, half, half + 1, 0}, session);
    detail::require_output(h1.graph, cycle_with_chords(order, {{2 * half, half - 1}, {half + 1, 0}}), name);
    detail::require_ops(scope.finish(h1.id), order, name);
    return h1;
}

/// One chord-doubling round: (H, v_x, v_a) ⊗ (H', v'_0, v'_{2^t}) with x = 2^t+a+1.
///
/// The result differs from H in a single arc: (x, a) is replaced by
/// (x+a, 2a), indices mod 2^{t+1}+1. When 2a = 2^t the new arc coincides with
/// the fixed chord (0, 2^t).
inline std::pair<Tracked, StageState> lemma_step(const StageState& state, const Tracked& h, Session& session) {
    const unsigned t = state.exponent;
    const Label half = static_cast<Label>(pow2(t));
    const Label order = 2 * half + 1;
    const Label a = state.chord_a;
    const std::string name = detail::round_name(t, "H" + std::to_string(state.stage + 1));
    if (a == 0 || a >= half) {
        throw ShapeError(name + ": chord parameter " + std::to_string(a) + " out of range");
    }
    const Label x = half + a + 1;
    const Arc removed{x, a};
    const Arc added{(x + a) % order, 2 * a};
    detail::require_input(h.graph, cycle_with_chords(order, {{0, half}, removed}), name);
    detail::StageScope scope(session, name, StageKind::lemma, t, h.id);
    scope.record().removed = removed;
    scope.record().added = added;

    Tracked next = detail::cyclic_with_copy(h, {x, a, 0, half}, session);

    // H_next = H + {(x+a, 2a)} - {(x, a)}
    std::vector<Arc> arcs;
    for (const Arc& arc : h.graph.arcs()) {
        if (arc != removed) {
            arcs.push_back(arc);
        }
    }
    arcs.push_back(added);
    std::vector<Label> vertices(h.graph.vertices().begin(), h.graph.vertices().end());
    detail::require_output(next.graph, Digraph::from(std::move(vertices), std::move(arcs)), name);
    detail::require_output(next.graph, cycle_with_chords(order, {{0, half}, added}), name);
    detail::require_ops(scope.finish(next.id), order, name);

    return {std::move(next), StageState{t, state.stage + 1, 2 * a}};
}

/// (H, v_0, v_{2^t}) ⊗ (H', v'_0, v'_{2^t}) on D(C_{2^{t+1}+1}) + (0, 2^t); yields the cycle itself.
inline Tracked finalize(const Tracked& h, unsigned t, Session& session) {
    const Label half = static_cast<Label>(pow2(t));
    const std::size_t order = 2 * half + 1;
    const std::string name = detail::round_name(t, "H" + std::to_string(t + 2));
    detail::require_input(h.graph, cycle_with_chords(order, {{0, half}}), name);
    detail::StageScope scope(session, name, StageKind::finalize, t, h.id);

    Tracked out = detail::cyclic_with_copy(h, {0, half, 0, half}, session);
    detail::require_output(out.graph, symmetric_cycle(order), name);
    detail::require_ops(scope.finish(out.id), order, name);
    return out;
}

/// D(C_{2^t+1}) -> D(C_{2^{t+1}+1}) in 1 + (t+2)(2^{t+1}+1) operations.
inline Tracked double_order(const Tracked& cycle, Session& session) {
    const unsigned t = detail::exponent_of_cycle(cycle.graph);
    const Label half = static_cast<Label>(pow2(t));
    const std::size_t start_ops = session.recorder.ops();

    Tracked h0 = build_h0(cycle, session);
    Tracked h1 = build_h1(h0, t, session);
    const Label order = 2 * half + 1;
    Tracked current{relabel_cyclic(h1.graph, 1, order), session.recorder.relabel(h1.id, 1, order)};
    detail::require_output(current.graph, cycle_with_chords(order, {{0, half}, {half + 2, 1}}),
                           detail::round_name(t, "H1-rotation"));

    StageState state{t, 1, 1};
    for (unsigned round = 0; round < t; ++round) {
        auto [next, next_state] = lemma_step(state, current, session);
        current = std::move(next);
        state = next_state;
    }
    if (state.chord_a != half) {
        throw InvariantError("chord parameter ended at " + std::to_string(state.chord_a));
    }
    Tracked result = finalize(current, t, session);
    detail::require_ops(session.recorder.ops() - start_ops, doubling_count(t),
                        detail::round_name(t, "round"));
    return result;
}

// ---------------------------------------------------------------------------
// Full constructions

/// Collapses D(C_{2^n+1}) to D(C_{2m+1}) by identifying {2m, 2m+2, ..., 2^n}
/// into 2m and {2m+1, 2m+3, ..., 2^n-1, 0} into 2m+1, then rotating labels
/// 1..2m+1 down to 0..2m. Two operations.
inline Tracked reduce_to_odd(const Tracked& cycle, unsigned n, std::uint64_t m, Session& session) {
    if (n < 2 || m < 1 || m >= pow2(n - 1)) {
        throw DomainError("reduction needs n >= 2 and 1 <= m < 2^(n-1), got n=" + std::to_string(n) +
                          " m=" + std::to_string(m));
    }
    const Label top = static_cast<Label>(pow2(n));
    const Label order = top + 1;
    if (cycle.graph != symmetric_cycle(order)) {
        throw ShapeError("reduction input is not D(C_" + std::to_string(order) + ")");
    }
    const Label even = static_cast<Label>(2 * m);
    const std::string name = "reduce[" + std::to_string(order) + "->" + std::to_string(even + 1) + "]";
    detail::StageScope scope(session, name, StageKind::reduce, n, cycle.id);

    std::vector<Label> evens;
    for (Label v = even; v <= top; v += 2) {
        evens.push_back(v);
    }
    std::vector<Label> odds{0};
    for (Label v = even + 1; v < top; v += 2) {
        odds.push_back(v);
    }

    Digraph g = ops::identify(cycle.graph, evens, even);
    GraphId id = session.recorder.identify(cycle.id, evens, even);
    g = ops::identify(g, odds, even + 1);
    id = session.recorder.identify(id, odds, even + 1);
    g = relabel_cyclic(g, top, order);
    id = session.recorder.relabel(id, top, order);

    detail::require_output(g, symmetric_cycle(even + 1), name);
    detail::require_ops(scope.finish(id), 2, name);
    return {std::move(g), id};
}

namespace detail {

inline Tracked build_power_cycle(unsigned n, Session& session) {
    Tracked current{symmetric_cycle(3), session.recorder.base_k3(0, 1, 2)};
    for (unsigned t = 1; t < n; ++t) {
        current = double_order(current, session);
    }
    return current;
}

inline Construction finish_construction(Tracked result, Session session, unsigned n,
                                        std::optional<std::uint64_t> m) {
    const std::uint64_t order = result.graph.order();
    session.recorder.end(result.id, order);

    ConstructionReport report;
    report.target_order = order;
    report.exponent = n;
    report.reduce_m = m;
    report.op_count = session.recorder.ops();
    if (order >= 5) {
        report.bound = hajos_bound(order);
        report.envelope = complexity_envelope(order);
        double x = static_cast<double>(report.op_count);
        report.in_envelope = report.envelope->low < x && x < report.envelope->high;
    }
    if (n >= 2) {
        report.power_closed_form = power_cycle_count(n);
        report.power_index_sum = power_index_sum(n);
    }
    report.stages = std::move(session.stages);
    return {std::move(result.graph), std::move(session.recorder).take(), std::move(report)};
}

}  // namespace detail

/// D(C_{2^n+1}) from D(K3) by n-1 doubling rounds.
inline Construction construct_power_cycle(unsigned n) {
    if (n < 2 || n > 30) {
        throw DomainError("power cycle exponent must be in [2, 30], got " + std::to_string(n));
    }
    Session session;
    Tracked result = detail::build_power_cycle(n, session);
    detail::require_ops(session.recorder.ops(), power_cycle_count(n), "power cycle");
    return detail::finish_construction(std::move(result), std::move(session), n, std::nullopt);
}

/// D(C_N) for any odd N >= 3. Orders strictly between 2^{n-1}+1 and 2^n+1 are
/// obtained by building D(C_{2^n+1}) and reducing it.
inline Construction construct_odd_cycle(std::uint64_t order) {
    require_odd_order(order, 3);
    if (order > pow2(30) + 1) {
        throw DomainError("order " + std::to_string(order) + " exceeds the supported label range");
    }
    Session session;
    if (order == 3) {
        Tracked base{symmetric_cycle(3), session.recorder.base_k3(0, 1, 2)};
        return detail::finish_construction(std::move(base), std::move(session), 0, std::nullopt);
    }
    const unsigned n = covering_exponent(order);
    Tracked power = detail::build_power_cycle(n, session);
    if (order == pow2(n) + 1) {
        return detail::finish_construction(std::move(power), std::move(session), n, std::nullopt);
    }
    const std::uint64_t m = (order - 1) / 2;
    Tracked reduced = reduce_to_odd(power, n, m, session);
    return detail::finish_construction(std::move(reduced), std::move(session), n, m);
}

/// Builds D(C_{2^n+1}) and reduces it to D(C_{2m+1}).
inline Construction construct_reduced(unsigned n, std::uint64_t m) {
    if (n < 2 || n > 30) {
        throw DomainError("power cycle exponent must be in [2, 30], got " + std::to_string(n));
    }
    if (m < 1 || m >= pow2(n - 1)) {
        throw DomainError("m must satisfy 1 <= m < 2^(n-1), got m=" + std::to_string(m));
    }
    Session session;
    Tracked power = detail::build_power_cycle(n, session);
    Tracked reduced = reduce_to_odd(power, n, m, session);
    return detail::finish_construction(std::move(reduced), std::move(session), n, m);
}

}  // namespace hajos::builder

#endif  // HAJOS_BUILDER_HPP
