#ifndef HAJOS_TESTS_SUPPORT_ORACLES_HPP
#define HAJOS_TESTS_SUPPORT_ORACLES_HPP

// Reference implementations used only by tests. They follow the definitions
// step by step and share no code path with the closed forms they check.

#include <cstddef>
#include <random>
#include <vector>

#include "hajos/analysis.hpp"
#include "hajos/digraph.hpp"
#include "hajos/hajos_ops.hpp"

namespace hajos::testing {

/// (D, v_i, v_j) ⊗ (D', v'_k, v'_l) executed literally: the join, then the
/// identifications v'_{k+r} -> v_{j+r} for r = 1..n-1. D' is labeled base..base+n-1.
inline Digraph literal_cyclic_identification(const Digraph& d, const Digraph& dp, Label i, Label j, Label k,
                                             Label l) {
    const auto n = static_cast<Label>(d.order());
    const Label base = dp.vertices().front();
    Digraph h = ops::hajos_join(d, dp, ops::JoinSpec{i, j, base + k, base + l});
    for (Label r = 1; r < n; ++r) {
        Label keep = (j + r) % n;
        h = ops::identify(h, {keep, base + (k + r) % n}, keep);
    }
    return h;
}

/// Dichromatic number by enumerating every c-coloring (no symmetry breaking,
/// no pruning) and testing each class with is_acyclic on the induced subdigraph.
inline unsigned naive_dichromatic(const Digraph& d) {
    const std::size_t n = d.order();
    if (n == 0) {
        return 0;
    }
    std::vector<Label> labels(d.vertices().begin(), d.vertices().end());
    for (unsigned c = 1;; ++c) {
        std::vector<unsigned> color(n, 0);
        while (true) {
            bool ok = true;
            for (unsigned cls = 0; cls < c && ok; ++cls) {
                std::vector<Label> members;
                for (std::size_t v = 0; v < n; ++v) {
                    if (color[v] == cls) {
                        members.push_back(labels[v]);
                    }
                }
                ok = analysis::is_acyclic(induced_subdigraph(d, members));
            }
            if (ok) {
                return c;
            }
            std::size_t pos = 0;
            while (pos < n && ++color[pos] == c) {
                color[pos++] = 0;
            }
            if (pos == n) {
                break;
            }
        }
    }
}

/// D(C_n) plus `chords` random asymmetric arcs between non-consecutive vertices.
inline Digraph random_cycle_with_chords(std::size_t n, std::size_t chords, std::mt19937& rng) {
    Digraph cycle = symmetric_cycle(n);
    std::vector<Label> vertices(cycle.vertices().begin(), cycle.vertices().end());
    std::vector<Arc> arcs(cycle.arcs().begin(), cycle.arcs().end());
    std::uniform_int_distribution<Label> pick(0, static_cast<Label>(n - 1));
    std::size_t added = 0;
    std::size_t attempts = 0;
    while (added < chords && attempts++ < 1000) {
        Label u = pick(rng);
        Label v = pick(rng);
        Label gap = (v + n - u) % n;
        if (gap <= 1 || gap == n - 1) {
            continue;
        }
        Digraph probe = Digraph::from(vertices, arcs);
        if (probe.has_arc(u, v) || probe.has_arc(v, u)) {
            continue;
        }
        arcs.push_back({u, v});
        ++added;
    }
    return Digraph::from(std::move(vertices), std::move(arcs));
}

}  // namespace hajos::testing

#endif  // HAJOS_TESTS_SUPPORT_ORACLES_HPP
