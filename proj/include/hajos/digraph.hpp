#ifndef HAJOS_DIGRAPH_HPP
#define HAJOS_DIGRAPH_HPP

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hajos/errors.hpp"

namespace hajos {

using Label = std::uint32_t;

struct Arc {
    Label tail = 0;
    Label head = 0;

    friend auto operator<=>(const Arc&, const Arc&) = default;
    friend bool operator==(const Arc&, const Arc&) = default;
    // Same order as <=>, on a single 64-bit key.
    friend bool operator<(const Arc& a, const Arc& b) noexcept { return a.key() < b.key(); }

    std::uint64_t key() const noexcept { return (std::uint64_t{tail} << 32) | head; }
};

enum class ArcClass { symmetric, asymmetric };

class Digraph;

namespace ops {
inline Digraph identify(const Digraph& d, std::vector<Label> set, Label target);
}

/// A finite loopless digraph without multiple arcs.
///
/// Vertex labels are arbitrary non-negative integers. Both the vertex list and
/// the arc list are kept sorted and duplicate-free, so iteration order is
/// deterministic and equality is plain container equality. A Digraph is a value:
/// every operation in the library returns a new one.
class Digraph {
public:
    Digraph() = default;

    /// Builds a digraph from unsorted input. Duplicate vertices and arcs are
    /// collapsed; loops and dangling arc endpoints are rejected.
    static Digraph from(std::vector<Label> vertices, std::vector<Arc> arcs) {
        sort_runs(vertices);
        vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
        sort_runs(arcs);
        arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
        return Digraph(std::move(vertices), std::move(arcs));
    }

    /// Same as from() but for vertex and arc lists that are already sorted and unique.
    static Digraph from_sorted(std::vector<Label> vertices, std::vector<Arc> arcs) {
        if (!std::is_sorted(vertices.begin(), vertices.end()) ||
            std::adjacent_find(vertices.begin(), vertices.end()) != vertices.end()) {
            throw InvariantError("vertex list is not strictly ascending");
        }
        // Arc order is checked along with the other invariants.
        return Digraph(std::move(vertices), std::move(arcs));
    }

    std::size_t order() const noexcept { return vertices_.size(); }
    std::size_t size() const noexcept { return arcs_.size(); }

    std::span<const Label> vertices() const noexcept { return vertices_; }
    std::span<const Arc> arcs() const noexcept { return arcs_; }

    bool has_vertex(Label v) const {
        return std::binary_search(vertices_.begin(), vertices_.end(), v);
    }

    bool has_arc(Label tail, Label head) const {
        return std::binary_search(arcs_.begin(), arcs_.end(), Arc{tail, head});
    }

    Label max_label() const {
        if (vertices_.empty()) {
            throw DomainError("empty digraph has no labels");
        }
        return vertices_.back();
    }

    std::vector<Label> out_neighborhood(Label u) const {
        require_vertex(u);
        std::vector<Label> out;
        for (auto it = first_out_arc(u); it != arcs_.end() && it->tail == u; ++it) {
            out.push_back(it->head);
        }
        return out;
    }

    std::vector<Label> in_neighborhood(Label u) const {
        require_vertex(u);
        std::vector<Label> in;
        for (const Arc& a : arcs_) {
            if (a.head == u) {
                in.push_back(a.tail);
            }
        }
        std::sort(in.begin(), in.end());
        return in;
    }

    std::size_t out_degree(Label u) const {
        require_vertex(u);
        auto first = first_out_arc(u);
        auto last = std::upper_bound(first, arcs_.end(), Arc{u, std::numeric_limits<Label>::max()});
        return static_cast<std::size_t>(last - first);
    }

    /// True iff no arc joins two members of `set`, in either direction.
    bool is_independent(std::span<const Label> set) const {
        for (Label u : set) {
            require_vertex(u);
        }
        for (Label u : set) {
            for (auto it = first_out_arc(u); it != arcs_.end() && it->tail == u; ++it) {
                if (std::find(set.begin(), set.end(), it->head) != set.end()) {
                    return false;
                }
            }
        }
        return true;
    }

    ArcClass classify_arc(Label tail, Label head) const {
        if (!has_arc(tail, head)) {
            throw MissingArcError("arc (" + std::to_string(tail) + "," + std::to_string(head) +
                                  ") is not in the digraph");
        }
        return has_arc(head, tail) ? ArcClass::symmetric : ArcClass::asymmetric;
    }

    /// Arcs whose reverse is absent, in (tail, head) order.
    std::vector<Arc> asymmetric_arcs() const {
        std::vector<Arc> out;
        for (const Arc& a : arcs_) {
            if (!has_arc(a.head, a.tail)) {
                out.push_back(a);
            }
        }
        return out;
    }

    void require_vertex(Label u) const {
        if (!has_vertex(u)) {
            throw UnknownVertexError("vertex " + std::to_string(u) + " is not in the digraph");
        }
    }

    friend bool operator==(const Digraph&, const Digraph&) = default;

private:
    // Identification of an independent set in a valid digraph cannot break an
    // invariant, and replay calls it thousands of times.
    friend Digraph ops::identify(const Digraph& d, std::vector<Label> set, Label target);
    struct Trusted {};
    Digraph(Trusted, std::vector<Label> vertices, std::vector<Arc> arcs)
        : vertices_(std::move(vertices)), arcs_(std::move(arcs)) {
#ifndef NDEBUG
        check_invariants();
#endif
    }

    // Callers mostly pass a few ascending runs (kept arcs, then a shifted or
    // appended block), so merging runs beats a full sort.
    template <class T>
    static void sort_runs(std::vector<T>& v) {
        std::vector<std::size_t> bounds{0};
        for (std::size_t i = 1; i < v.size(); ++i) {
            if (v[i] < v[i - 1]) {
                bounds.push_back(i);
                if (bounds.size() > 32) {
                    std::sort(v.begin(), v.end());
                    return;
                }
            }
        }
        bounds.push_back(v.size());
        while (bounds.size() > 2) {
            std::vector<std::size_t> next{0};
            for (std::size_t r = 0; r + 2 < bounds.size(); r += 2) {
                std::inplace_merge(v.begin() + static_cast<std::ptrdiff_t>(bounds[r]),
                                   v.begin() + static_cast<std::ptrdiff_t>(bounds[r + 1]),
                                   v.begin() + static_cast<std::ptrdiff_t>(bounds[r + 2]));
                next.push_back(bounds[r + 2]);
            }
            if (bounds.size() % 2 == 0) {
                next.push_back(bounds.back());
            }
            bounds = std::move(next);
        }
    }

    Digraph(std::vector<Label> vertices, std::vector<Arc> arcs)
        : vertices_(std::move(vertices)), arcs_(std::move(arcs)) {
        check_invariants();
    }

    std::vector<Arc>::const_iterator first_out_arc(Label u) const {
        return std::lower_bound(arcs_.begin(), arcs_.end(), Arc{u, 0});
    }

    // Loops are rejected and every endpoint must be a vertex. Tails are sorted,
    // so they are matched against the vertex list with a single forward sweep.
    // Heads go through a bitmap over the label range when it is not too sparse.
    void check_invariants() const {
        if (arcs_.empty()) {
            return;
        }
        const std::size_t range = vertices_.empty() ? 0 : vertices_.back() - vertices_.front() + 1;
        const bool contiguous = range == vertices_.size();
        std::vector<unsigned char> present;
        if (!contiguous && range <= 8 * vertices_.size() + 64) {
            present.assign(range, 0);
            for (Label v : vertices_) {
                present[v - vertices_.front()] = 1;
            }
        }
        auto head_ok = [&](Label h) {
            if (vertices_.empty() || h < vertices_.front() || h > vertices_.back()) {
                return false;
            }
            if (contiguous) {
                return true;
            }
            return present.empty() ? has_vertex(h) : present[h - vertices_.front()] != 0;
        };
        auto vit = vertices_.begin();
        std::uint64_t prev = 0;
        for (const Arc& a : arcs_) {
            if (&a != arcs_.data() && a.key() <= prev) {
                throw InvariantError("arc list is not strictly ascending");
            }
            prev = a.key();
            if (a.tail == a.head) {
                throw InvariantError("loop at vertex " + std::to_string(a.tail));
            }
            while (vit != vertices_.end() && *vit < a.tail) {
                ++vit;
            }
            if (vit == vertices_.end() || *vit != a.tail) {
                throw InvariantError("arc tail " + std::to_string(a.tail) + " is not a vertex");
            }
            if (!head_ok(a.head)) {
                throw InvariantError("arc head " + std::to_string(a.head) + " is not a vertex");
            }
        }
    }

    std::vector<Label> vertices_;
    std::vector<Arc> arcs_;
};

/// D(C_n): vertices 0..n-1, each consecutive pair (cyclically) joined by a digon.
inline Digraph symmetric_cycle(std::size_t n) {
    if (n < 3) {
        throw DomainError("symmetric cycle needs at least 3 vertices, got " + std::to_string(n));
    }
    std::vector<Label> vertices(n);
    std::vector<Arc> arcs;
    arcs.reserve(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        auto lo = static_cast<Label>(i == 0 ? 1 : i - 1);
        auto hi = static_cast<Label>(i == 0 ? n - 1 : (i + 1) % n);
        if (lo > hi) {
            std::swap(lo, hi);
        }
        vertices[i] = static_cast<Label>(i);
        arcs.push_back({static_cast<Label>(i), lo});
        arcs.push_back({static_cast<Label>(i), hi});
    }
    return Digraph::from_sorted(std::move(vertices), std::move(arcs));
}

/// Subdigraph induced by `keep`; labels not in the digraph are an error.
inline Digraph induced_subdigraph(const Digraph& d, std::vector<Label> keep) {
    std::sort(keep.begin(), keep.end());
    keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
    for (Label v : keep) {
        d.require_vertex(v);
    }
    std::vector<Arc> arcs;
    for (const Arc& a : d.arcs()) {
        if (std::binary_search(keep.begin(), keep.end(), a.tail) &&
            std::binary_search(keep.begin(), keep.end(), a.head)) {
            arcs.push_back(a);
        }
    }
    return Digraph::from_sorted(std::move(keep), std::move(arcs));
}

inline Digraph remove_vertex(const Digraph& d, Label v) {
    d.require_vertex(v);
    std::vector<Label> keep;
    keep.reserve(d.order() - 1);
    for (Label u : d.vertices()) {
        if (u != v) {
            keep.push_back(u);
        }
    }
    return induced_subdigraph(d, std::move(keep));
}

}  // namespace hajos

#endif  // HAJOS_DIGRAPH_HPP
