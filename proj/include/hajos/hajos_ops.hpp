#ifndef HAJOS_HAJOS_OPS_HPP
#define HAJOS_HAJOS_OPS_HPP

#include <algorithm>
#include <cstddef>
#include <iterator>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hajos/digraph.hpp"
#include "hajos/errors.hpp"

// The directed Hajós operations: identification of an independent set, the
// directed Hajós join, and the cyclic identification built from them.
namespace hajos::ops {

/// Arcs (u1,v1) of the left operand and (v2,u2) of the right operand are
/// deleted, v1 and v2 are merged under the label v1, and (u1,u2) is added.
struct JoinSpec {
    Label u1 = 0;
    Label v1 = 0;
    Label v2 = 0;
    Label u2 = 0;

    friend bool operator==(const JoinSpec&, const JoinSpec&) = default;
};

struct IdentifySpec {
    std::vector<Label> labels;  // ascending
    Label target = 0;

    friend bool operator==(const IdentifySpec&, const IdentifySpec&) = default;
};

/// One counted Hajós operation, without digraph bookkeeping.
using Operation = std::variant<JoinSpec, IdentifySpec>;

/// Indices for (D, v_i, v_j) ⊗ (D', v'_k, v'_l). Both operands have order n;
/// D is labeled 0..n-1 and D' occupies a contiguous block base..base+n-1, so
/// v'_a carries the label base + a.
struct CyclicSpec {
    Label i = 0;
    Label j = 0;
    Label k = 0;
    Label l = 0;
};

struct CyclicResult {
    Digraph graph;
    std::vector<Operation> operations;  // one join, then n-1 identifications
};

/// Merges the independent set `set` into a single vertex labeled `target`.
///
/// Arcs not touching the set are kept as-is; the new vertex receives every
/// out-arc and in-arc of the members. Counts as one Hajós operation whatever
/// the size of the set.
inline Digraph identify(const Digraph& d, std::vector<Label> set, Label target) {
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
    if (set.empty()) {
        throw DomainError("cannot identify an empty set");
    }
    for (Label v : set) {
        d.require_vertex(v);
    }
    if (!std::binary_search(set.begin(), set.end(), target)) {
        throw LabelError("identification target " + std::to_string(target) +
                         " is not a member of the identified set");
    }
    if (!d.is_independent(set)) {
        throw DependentSetError("identified set is not independent");
    }
    if (set.size() == 1) {
        return d;
    }

    const Label lo = set.front();
    const Label hi = set.back();
    auto member = [&set, lo, hi](Label v) {
        if (v < lo || v > hi) {
            return false;
        }
        if (set.size() <= 4) {
            return std::find(set.begin(), set.end(), v) != set.end();
        }
        return std::binary_search(set.begin(), set.end(), v);
    };

    std::vector<Label> vertices;
    vertices.reserve(d.order() - set.size() + 1);
    for (Label v : d.vertices()) {
        if (!member(v) || v == target) {
            vertices.push_back(v);
        }
    }

    std::vector<Arc> moved;
    for (Label v : set) {
        for (Label h : d.out_neighborhood(v)) {
            moved.push_back({target, h});
        }
    }
    for (const Arc& a : d.arcs()) {
        if (member(a.head)) {
            moved.push_back({a.tail, target});
        }
    }
    std::sort(moved.begin(), moved.end());
    moved.erase(std::unique(moved.begin(), moved.end()), moved.end());

    // Untouched arcs are already sorted; merge the redirected ones in as we go.
    std::vector<Arc> arcs;
    arcs.reserve(d.size());
    auto next = moved.begin();
    for (const Arc& a : d.arcs()) {
        if (member(a.tail) || member(a.head)) {
            continue;
        }
        while (next != moved.end() && *next < a) {
            arcs.push_back(*next++);
        }
        if (next != moved.end() && *next == a) {
            ++next;
        }
        arcs.push_back(a);
    }
    arcs.insert(arcs.end(), next, moved.end());
    return Digraph(Digraph::Trusted{}, std::move(vertices), std::move(arcs));
}

/// Directed Hajós join (D1, u1, v1) ▽ (D2, v2, u2). The label sets must be disjoint.
inline Digraph hajos_join(const Digraph& d1, const Digraph& d2, const JoinSpec& spec) {
    if (!d1.has_arc(spec.u1, spec.v1)) {
        throw MissingArcError("join: arc (" + std::to_string(spec.u1) + "," +
                              std::to_string(spec.v1) + ") is not in the left operand");
    }
    if (!d2.has_arc(spec.v2, spec.u2)) {
        throw MissingArcError("join: arc (" + std::to_string(spec.v2) + "," +
                              std::to_string(spec.u2) + ") is not in the right operand");
    }
    for (Label v : d2.vertices()) {
        if (d1.has_vertex(v)) {
            throw LabelError("join: operands share vertex label " + std::to_string(v));
        }
    }

    auto merge = [&spec](Label v) { return v == spec.v2 ? spec.v1 : v; };

    std::vector<Label> vertices(d1.vertices().begin(), d1.vertices().end());
    for (Label v : d2.vertices()) {
        if (v != spec.v2) {
            vertices.push_back(v);
        }
    }
    std::vector<Arc> arcs;
    arcs.reserve(d1.size() + d2.size() - 1);
    for (const Arc& a : d1.arcs()) {
        if (!(a.tail == spec.u1 && a.head == spec.v1)) {
            arcs.push_back(a);
        }
    }
    for (const Arc& a : d2.arcs()) {
        if (!(a.tail == spec.v2 && a.head == spec.u2)) {
            arcs.push_back({merge(a.tail), merge(a.head)});
        }
    }
    arcs.push_back({spec.u1, spec.u2});
    return Digraph::from(std::move(vertices), std::move(arcs));
}

namespace detail {

inline Label mod_add(Label a, Label b, Label n) {
    return static_cast<Label>((static_cast<std::uint64_t>(a) + b) % n);
}

inline Label mod_sub(Label a, Label b, Label n) {
    return static_cast<Label>((static_cast<std::uint64_t>(a) + n - b % n) % n);
}

}  // namespace detail

/// Cyclic Hajós identification H = (D, v_i, v_j) ⊗ (D', v'_k, v'_l).
///
/// The operation is a join followed by n-1 identifications of v'_{k+r} into
/// v_{j+r}. Rather than executing those steps, the result is computed in one
/// pass from the arc transport v'_a -> v_{a-k+j} (indices mod n):
///
///   A(H) = (A(D) - {v_i v_j}) + shift(A(D') - {v'_k v'_l}) + {v_i v_{l-k+j}}
///
/// The returned operation list is exactly the sequence of joins and
/// identifications that realizes H step by step, for recording in a trace.
inline CyclicResult cyclic_identification(const Digraph& d, const Digraph& dp, const CyclicSpec& spec) {
    const std::size_t order = d.order();
    if (order < 2) {
        throw SpecError("cyclic identification needs operands of order at least 2");
    }
    if (d.vertices().front() != 0 || d.vertices().back() != order - 1) {
        throw SpecError("left operand must be labeled 0..n-1");
    }
    if (dp.order() != order) {
        throw SpecError("operands have different orders (" + std::to_string(order) + " vs " +
                        std::to_string(dp.order()) + ")");
    }
    const Label base = dp.vertices().front();
    if (dp.vertices().back() - base != order - 1) {
        throw SpecError("right operand labels must form a contiguous block");
    }
    if (base < order) {
        throw SpecError("right operand labels overlap the left operand");
    }
    const Label n = static_cast<Label>(order);
    if (spec.i >= n || spec.j >= n || spec.k >= n || spec.l >= n) {
        throw SpecError("cyclic identification index out of range");
    }
    if (spec.i == spec.j || spec.k == spec.l) {
        throw SpecError("cyclic identification needs i != j and k != l");
    }
    if (!d.has_arc(spec.i, spec.j)) {
        throw MissingArcError("arc v_" + std::to_string(spec.i) + " v_" + std::to_string(spec.j) +
                              " is not in the left operand");
    }
    if (!dp.has_arc(base + spec.k, base + spec.l)) {
        throw MissingArcError("arc v'_" + std::to_string(spec.k) + " v'_" + std::to_string(spec.l) +
                              " is not in the right operand");
    }
    // v'_{k+r} and v_{j+r} are adjacent exactly when the added arc v_i v'_l
    // joins them, i.e. r = l-k and i = j+r. That identification would put a loop at v_i.
    const Label bad_r = detail::mod_sub(spec.l, spec.k, n);
    if (detail::mod_sub(spec.j, spec.i, n) == detail::mod_sub(spec.k, spec.l, n)) {
        throw DependentSetError("j-i = k-l (mod " + std::to_string(n) + "): identification r=" +
                                std::to_string(bad_r) + " would merge v'_l into v_i");
    }

    auto shift = [&](Label label) { return detail::mod_add(detail::mod_sub(label - base, spec.k, n), spec.j, n); };

    std::vector<Arc> arcs;
    arcs.reserve(d.size() + dp.size() - 1);
    for (const Arc& a : d.arcs()) {
        if (!(a.tail == spec.i && a.head == spec.j)) {
            arcs.push_back(a);
        }
    }
    for (const Arc& a : dp.arcs()) {
        if (!(a.tail == base + spec.k && a.head == base + spec.l)) {
            arcs.push_back({shift(a.tail), shift(a.head)});
        }
    }
    arcs.push_back({spec.i, shift(base + spec.l)});

    // Every label is in [0, n): bucket by tail, then sort the short buckets.
    std::vector<std::size_t> start(order + 1, 0);
    for (const Arc& a : arcs) {
        ++start[a.tail + 1];
    }
    for (std::size_t v = 0; v < order; ++v) {
        start[v + 1] += start[v];
    }
    std::vector<Arc> sorted(arcs.size());
    std::vector<std::size_t> fill(start.begin(), start.end() - 1);
    for (const Arc& a : arcs) {
        sorted[fill[a.tail]++] = a;
    }
    for (std::size_t v = 0; v < order; ++v) {
        std::sort(sorted.begin() + static_cast<std::ptrdiff_t>(start[v]),
                  sorted.begin() + static_cast<std::ptrdiff_t>(start[v + 1]));
    }
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

    std::vector<Label> vertices(d.vertices().begin(), d.vertices().end());

    CyclicResult result{Digraph::from_sorted(std::move(vertices), std::move(sorted)), {}};
    result.operations.reserve(order);
    result.operations.emplace_back(JoinSpec{spec.i, spec.j, base + spec.k, base + spec.l});
    for (Label r = 1; r < n; ++r) {
        Label kept = detail::mod_add(spec.j, r, n);
        Label merged = base + detail::mod_add(spec.k, r, n);
        result.operations.emplace_back(IdentifySpec{{kept, merged}, kept});
    }
    return result;
}

}  // namespace hajos::ops

#endif  // HAJOS_HAJOS_OPS_HPP
