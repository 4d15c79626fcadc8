#ifndef HAJOS_ANALYSIS_HPP
#define HAJOS_ANALYSIS_HPP

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hajos/digraph.hpp"
#include "hajos/errors.hpp"

namespace hajos::analysis {

inline constexpr std::size_t kDefaultBruteForceLimit = 16;
// Colorings are searched over 64-bit vertex masks.
inline constexpr std::size_t kMaxBruteForceOrder = 64;

struct ColoringWitness {
    std::map<Label, unsigned> colors;
    unsigned num_colors = 0;
};

/// True iff D is D(C_n) up to relabeling: n >= 3, every arc symmetric, every
/// vertex with in- and out-degree 2, and the underlying graph connected.
inline bool is_symmetric_cycle(const Digraph& d) {
    if (d.order() < 3 || d.size() != 2 * d.order()) {
        return false;
    }
    for (const Arc& a : d.arcs()) {
        if (!d.has_arc(a.head, a.tail)) {
            return false;
        }
    }
    for (Label v : d.vertices()) {
        if (d.out_degree(v) != 2) {
            return false;
        }
    }
    // Symmetric with all out-degrees 2, so in-degrees are 2 as well. Walk the cycle.
    const Label start = d.vertices().front();
    Label prev = start;
    Label cur = d.out_neighborhood(start).front();
    std::size_t length = 1;
    while (cur != start) {
        auto nbrs = d.out_neighborhood(cur);
        Label next = nbrs[0] == prev ? nbrs[1] : nbrs[0];
        prev = cur;
        cur = next;
        ++length;
        if (length > d.order()) {
            return false;
        }
    }
    return length == d.order();
}

/// True iff D has no directed cycle. A digon counts as a cycle of length 2.
inline bool is_acyclic(const Digraph& d) {
    // Kahn's algorithm over label positions.
    auto vertices = d.vertices();
    auto index = [&vertices](Label v) {
        return static_cast<std::size_t>(std::lower_bound(vertices.begin(), vertices.end(), v) - vertices.begin());
    };
    std::vector<std::size_t> in_degree(vertices.size(), 0);
    for (const Arc& a : d.arcs()) {
        ++in_degree[index(a.head)];
    }
    std::vector<Label> stack;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        if (in_degree[i] == 0) {
            stack.push_back(vertices[i]);
        }
    }
    std::size_t removed = 0;
    while (!stack.empty()) {
        Label v = stack.back();
        stack.pop_back();
        ++removed;
        for (Label w : d.out_neighborhood(v)) {
            if (--in_degree[index(w)] == 0) {
                stack.push_back(w);
            }
        }
    }
    return removed == vertices.size();
}

namespace detail {

// Out-neighbourhoods as bitmasks over vertex positions.
class MaskDigraph {
public:
    explicit MaskDigraph(const Digraph& d) : labels_(d.vertices().begin(), d.vertices().end()), out_(d.order(), 0) {
        for (const Arc& a : d.arcs()) {
            out_[position(a.tail)] |= bit(position(a.head));
        }
    }

    std::size_t order() const { return labels_.size(); }
    Label label(std::size_t i) const { return labels_[i]; }

    // Is v on a directed cycle inside `members` (which contains v)?
    bool closes_cycle(std::size_t v, std::uint64_t members) const {
        std::uint64_t seen = 0;
        std::uint64_t frontier = out_[v] & members;
        while (frontier != 0) {
            if (frontier & bit(v)) {
                return true;
            }
            seen |= frontier;
            std::uint64_t next = 0;
            for (std::uint64_t f = frontier; f != 0; f &= f - 1) {
                next |= out_[static_cast<std::size_t>(std::countr_zero(f))];
            }
            frontier = next & members & ~seen;
        }
        return false;
    }

    static std::uint64_t bit(std::size_t i) { return std::uint64_t{1} << i; }

private:
    std::size_t position(Label v) const {
        return static_cast<std::size_t>(std::lower_bound(labels_.begin(), labels_.end(), v) - labels_.begin());
    }

    std::vector<Label> labels_;
    std::vector<std::uint64_t> out_;
};

// Backtracking over canonical colorings: vertex 0 gets color 0 and a vertex
// may only open the next unused color. A partial class that already holds a
// cycle is pruned, since extending it cannot remove the cycle.
class ColoringSearch {
public:
    ColoringSearch(const MaskDigraph& g, unsigned colors)
        : g_(g), colors_(colors), assignment_(g.order(), 0), classes_(colors, 0) {}

    bool run() { return assign(0, 0); }

    const std::vector<unsigned>& assignment() const { return assignment_; }

private:
    bool assign(std::size_t v, unsigned used) {
        if (v == g_.order()) {
            return true;
        }
        const unsigned limit = std::min(colors_, used + 1);
        for (unsigned c = 0; c < limit; ++c) {
            std::uint64_t members = classes_[c] | MaskDigraph::bit(v);
            if (g_.closes_cycle(v, members)) {
                continue;
            }
            classes_[c] = members;
            assignment_[v] = c;
            if (assign(v + 1, std::max(used, c + 1))) {
                return true;
            }
            classes_[c] &= ~MaskDigraph::bit(v);
        }
        return false;
    }

    const MaskDigraph& g_;
    unsigned colors_;
    std::vector<unsigned> assignment_;
    std::vector<std::uint64_t> classes_;
};

inline void check_size(const Digraph& d, std::size_t limit) {
    if (d.order() > std::min(limit, kMaxBruteForceOrder)) {
        throw SizeLimitError("digraph of order " + std::to_string(d.order()) +
                             " exceeds the brute-force limit of " +
                             std::to_string(std::min(limit, kMaxBruteForceOrder)));
    }
}

}  // namespace detail

struct DichromaticResult {
    unsigned number = 0;
    ColoringWitness witness;
};

/// Exact dichromatic number by exhaustive search, with a coloring that attains it.
///
/// Tries c = 1, 2, ..., cap and returns the first c admitting a coloring whose
/// classes all induce acyclic subdigraphs. The empty digraph has dichromatic number 0.
inline DichromaticResult dichromatic_number(const Digraph& d, unsigned cap,
                                            std::size_t limit = kDefaultBruteForceLimit) {
    if (cap < 1) {
        throw DomainError("color cap must be at least 1");
    }
    detail::check_size(d, limit);
    if (d.order() == 0) {
        return {};
    }
    detail::MaskDigraph g(d);
    for (unsigned c = 1; c <= cap; ++c) {
        detail::ColoringSearch search(g, c);
        if (search.run()) {
            DichromaticResult result{c, {{}, c}};
            for (std::size_t i = 0; i < g.order(); ++i) {
                result.witness.colors.emplace(g.label(i), search.assignment()[i]);
            }
            return result;
        }
    }
    throw NoColoringError("no acyclic coloring with at most " + std::to_string(cap) + " colors");
}

/// Checks a witness from scratch: every vertex colored within range and every class acyclic.
inline bool is_valid_witness(const Digraph& d, const ColoringWitness& w) {
    if (w.colors.size() != d.order()) {
        return false;
    }
    std::vector<std::vector<Label>> classes(w.num_colors);
    for (Label v : d.vertices()) {
        auto it = w.colors.find(v);
        if (it == w.colors.end() || it->second >= w.num_colors) {
            return false;
        }
        classes[it->second].push_back(v);
    }
    return std::all_of(classes.begin(), classes.end(),
                       [&d](const auto& cls) { return is_acyclic(induced_subdigraph(d, cls)); });
}

/// Vertex-criticality: dichromatic number 3 and every vertex-deleted subdigraph 2-colorable.
inline bool is_3_critical(const Digraph& d, std::size_t limit = kDefaultBruteForceLimit) {
    detail::check_size(d, limit);
    if (d.order() < 3) {
        return false;
    }
    auto cap = static_cast<unsigned>(d.order());
    if (dichromatic_number(d, cap, limit).number != 3) {
        return false;
    }
    for (Label v : d.vertices()) {
        if (dichromatic_number(remove_vertex(d, v), cap, limit).number > 2) {
            return false;
        }
    }
    return true;
}

}  // namespace hajos::analysis

#endif  // HAJOS_ANALYSIS_HPP
