#ifndef HAJOS_REPLAY_HPP
#define HAJOS_REPLAY_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <type_traits>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "hajos/digraph.hpp"
#include "hajos/errors.hpp"
#include "hajos/hajos_ops.hpp"
#include "hajos/relabel.hpp"
#include "hajos/trace.hpp"

namespace hajos::trace {

struct ReplayResult {
    Digraph graph;
    std::size_t ops = 0;
};

/// Called with (step index, produced id, produced digraph) after each step that defines a digraph.
using StepObserver = std::function<void(std::size_t, GraphId, const Digraph&)>;

/// Executes every step of a trace literally, one Hajós operation at a time.
///
/// Joins and identifications go through ops::hajos_join and ops::identify, so
/// a trace is checked against the definitions and never against the builder's
/// closed-form shortcut. Any failing precondition is reported as a ReplayError
/// carrying the step index. When the trace ends with END, the declared order and
/// operation count are checked against what was actually produced.
///
/// Digraphs are dropped as soon as no later step refers to them.
inline ReplayResult replay(const HajosTrace& trace, const StepObserver& observer = {}) {
    auto steps = trace.steps();
    if (steps.empty()) {
        throw ReplayError(0, "trace has no steps");
    }

    std::unordered_map<std::uint32_t, std::size_t> last_use;
    for (std::size_t s = 0; s < steps.size(); ++s) {
        for (GraphId id : inputs(steps[s])) {
            last_use[id.value] = s;
        }
    }

    std::unordered_map<std::uint32_t, Digraph> graphs;
    std::optional<GraphId> latest;
    std::size_t ops = 0;

    for (std::size_t s = 0; s < steps.size(); ++s) {
        const TraceStep& step = steps[s];
        auto fetch = [&](GraphId id) -> const Digraph& {
            auto it = graphs.find(id.value);
            if (it == graphs.end()) {
                throw ReplayError(s, "digraph g" + std::to_string(id.value) + " is not available");
            }
            return it->second;
        };

        try {
            if (const auto* end = std::get_if<EndStep>(&step)) {
                const Digraph& g = fetch(end->final_id);
                if (g.order() != end->order) {
                    throw ReplayError(s, "declared order " + std::to_string(end->order) +
                                             " but the digraph has order " + std::to_string(g.order()));
                }
                if (ops != end->ops) {
                    throw ReplayError(s, "declared " + std::to_string(end->ops) + " operations but " +
                                             std::to_string(ops) + " were performed");
                }
                return {g, ops};
            }

            Digraph produced = std::visit(
                [&](const auto& st) -> Digraph {
                    using T = std::decay_t<decltype(st)>;
                    if constexpr (std::is_same_v<T, BaseStep>) {
                        const auto& l = st.labels;
                        if (l[0] == l[1] || l[0] == l[2] || l[1] == l[2]) {
                            throw LabelError("K3 labels must be distinct");
                        }
                        std::vector<Arc> arcs;
                        for (Label a : l) {
                            for (Label b : l) {
                                if (a != b) {
                                    arcs.push_back({a, b});
                                }
                            }
                        }
                        return Digraph::from({l[0], l[1], l[2]}, std::move(arcs));
                    } else if constexpr (std::is_same_v<T, CopyStep>) {
                        return builder::copy_offset(fetch(st.src), st.offset);
                    } else if constexpr (std::is_same_v<T, JoinStep>) {
                        return ops::hajos_join(fetch(st.left), fetch(st.right), st.spec);
                    } else if constexpr (std::is_same_v<T, IdentStep>) {
                        return ops::identify(fetch(st.src), st.labels, st.target);
                    } else if constexpr (std::is_same_v<T, RelabelStep>) {
                        return builder::relabel_cyclic(fetch(st.src), st.add, st.modulus);
                    } else {
                        throw InvariantError("unreachable");
                    }
                },
                step);

            if (counted(step)) {
                ++ops;
            }
            for (GraphId id : inputs(step)) {
                if (last_use[id.value] == s) {
                    graphs.erase(id.value);
                }
            }
            GraphId out = *output(step);
            if (observer) {
                observer(s, out, produced);
            }
            graphs.insert_or_assign(out.value, std::move(produced));
            latest = out;
        } catch (const ReplayError&) {
            throw;
        } catch (const HajosError& e) {
            throw ReplayError(s, e.what());
        }
    }
    return {graphs.at(latest->value), ops};
}

}  // namespace hajos::trace

#endif  // HAJOS_REPLAY_HPP
