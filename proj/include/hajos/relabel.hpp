#ifndef HAJOS_RELABEL_HPP
#define HAJOS_RELABEL_HPP

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "hajos/digraph.hpp"
#include "hajos/errors.hpp"

// Label transformations. Neither is a Hajós operation; both are free in the
// operation count.
namespace hajos::builder {

/// Isomorphic copy with every label increased by `offset`.
inline Digraph copy_offset(const Digraph& d, Label offset) {
    if (d.order() > 0 &&
        static_cast<std::uint64_t>(d.max_label()) + offset > std::numeric_limits<Label>::max()) {
        throw LabelError("copy offset " + std::to_string(offset) + " overflows the label range");
    }
    std::vector<Label> vertices;
    vertices.reserve(d.order());
    for (Label v : d.vertices()) {
        vertices.push_back(v + offset);
    }
    std::vector<Arc> arcs;
    arcs.reserve(d.size());
    for (const Arc& a : d.arcs()) {
        arcs.push_back({a.tail + offset, a.head + offset});
    }
    return Digraph::from_sorted(std::move(vertices), std::move(arcs));
}

/// Maps every label v to (v + add) mod modulus.
///
/// Every label must lie in [0, modulus); the map is then injective. The usual
/// case is a canonically labeled digraph (labels exactly 0..modulus-1), but a
/// proper subset is accepted so that a gap left by an identification can be
/// rotated out.
inline Digraph relabel_cyclic(const Digraph& d, Label add, Label modulus) {
    if (modulus == 0) {
        throw LabelError("relabel modulus must be positive");
    }
    if (d.order() > 0 && d.max_label() >= modulus) {
        throw LabelError("label " + std::to_string(d.max_label()) + " is outside [0, " +
                         std::to_string(modulus) + ")");
    }
    auto map = [add, modulus](Label v) {
        return static_cast<Label>((static_cast<std::uint64_t>(v) + add) % modulus);
    };
    std::vector<Label> vertices;
    vertices.reserve(d.order());
    for (Label v : d.vertices()) {
        vertices.push_back(map(v));
    }
    std::vector<Arc> arcs;
    arcs.reserve(d.size());
    for (const Arc& a : d.arcs()) {
        arcs.push_back({map(a.tail), map(a.head)});
    }
    return Digraph::from(std::move(vertices), std::move(arcs));
}

}  // namespace hajos::builder

#endif  // HAJOS_RELABEL_HPP
