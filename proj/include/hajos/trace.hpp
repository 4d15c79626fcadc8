#ifndef HAJOS_TRACE_HPP
#define HAJOS_TRACE_HPP

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <type_traits>
#include <unordered_set>
#include <utility>
#include <variant>
#include <vector>

#include "hajos/digraph.hpp"
#include "hajos/digraph_io.hpp"
#include "hajos/errors.hpp"
#include "hajos/hajos_ops.hpp"

// Construction certificates: an ordered list of steps, each producing a fresh
// digraph id from previously defined ones. Serialized as
//
//   HAJOS-TRACE 1
//   BASE g<id> K3 <a> <b> <c>
//   COPY g<src> g<dst> OFFSET <d>
//   JOIN g<A> <u1> <v1> g<B> <v2> <u2> g<out>
//   IDENT g<id> <l1>,<l2>[,...] <target> g<out>
//   RELABEL g<id> ADD <c> MOD <M> g<out>
//   END g<id> ORDER <N> OPS <X>
namespace hajos::trace {

struct GraphId {
    std::uint32_t value = 0;

    friend auto operator<=>(const GraphId&, const GraphId&) = default;
};

struct BaseStep {
    GraphId out;
    std::array<Label, 3> labels{};
    friend bool operator==(const BaseStep&, const BaseStep&) = default;
};

struct CopyStep {
    GraphId src;
    GraphId out;
    Label offset = 0;
    friend bool operator==(const CopyStep&, const CopyStep&) = default;
};

struct JoinStep {
    GraphId left;
    GraphId right;
    ops::JoinSpec spec;
    GraphId out;
    friend bool operator==(const JoinStep&, const JoinStep&) = default;
};

struct IdentStep {
    GraphId src;
    std::vector<Label> labels;
    Label target = 0;
    GraphId out;
    friend bool operator==(const IdentStep&, const IdentStep&) = default;
};

struct RelabelStep {
    GraphId src;
    Label add = 0;
    Label modulus = 0;
    GraphId out;
    friend bool operator==(const RelabelStep&, const RelabelStep&) = default;
};

struct EndStep {
    GraphId final_id;
    std::uint64_t order = 0;
    std::uint64_t ops = 0;
    friend bool operator==(const EndStep&, const EndStep&) = default;
};

using TraceStep = std::variant<BaseStep, CopyStep, JoinStep, IdentStep, RelabelStep, EndStep>;

/// Joins and identifications are Hajós operations; everything else is bookkeeping.
inline bool counted(const TraceStep& step) {
    return std::holds_alternative<JoinStep>(step) || std::holds_alternative<IdentStep>(step);
}

inline std::vector<GraphId> inputs(const TraceStep& step) {
    return std::visit(
        [](const auto& s) -> std::vector<GraphId> {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, BaseStep>) {
                return {};
            } else if constexpr (std::is_same_v<T, JoinStep>) {
                return {s.left, s.right};
            } else if constexpr (std::is_same_v<T, EndStep>) {
                return {s.final_id};
            } else {
                return {s.src};
            }
        },
        step);
}

inline std::optional<GraphId> output(const TraceStep& step) {
    return std::visit(
        [](const auto& s) -> std::optional<GraphId> {
            if constexpr (std::is_same_v<std::decay_t<decltype(s)>, EndStep>) {
                return std::nullopt;
            } else {
                return s.out;
            }
        },
        step);
}

/// An ordered, single-assignment list of construction steps.
class HajosTrace {
public:
    /// Appends a step. Every referenced id must already be defined, the output
    /// id must be fresh, and nothing may follow END.
    void record(TraceStep step) {
        if (end_) {
            throw TraceSemanticError("step recorded after END");
        }
        for (GraphId id : inputs(step)) {
            if (!defined_.contains(id.value)) {
                throw TraceSemanticError("reference to undefined digraph g" + std::to_string(id.value));
            }
        }
        if (const auto* ident = std::get_if<IdentStep>(&step)) {
            if (ident->labels.empty()) {
                throw TraceSemanticError("IDENT with an empty label set");
            }
            for (std::size_t i = 1; i < ident->labels.size(); ++i) {
                if (ident->labels[i - 1] >= ident->labels[i]) {
                    throw TraceSemanticError("IDENT label set is not strictly ascending");
                }
            }
        }
        if (auto out = output(step)) {
            if (!defined_.insert(out->value).second) {
                throw TraceSemanticError("digraph g" + std::to_string(out->value) + " is defined twice");
            }
        }
        if (counted(step)) {
            ++counted_ops_;
        }
        if (const auto* e = std::get_if<EndStep>(&step)) {
            end_ = *e;
        }
        steps_.push_back(std::move(step));
    }

    std::span<const TraceStep> steps() const noexcept { return steps_; }
    std::size_t counted_ops() const noexcept { return counted_ops_; }
    const std::optional<EndStep>& end() const noexcept { return end_; }

    friend bool operator==(const HajosTrace& a, const HajosTrace& b) { return a.steps_ == b.steps_; }

private:
    std::vector<TraceStep> steps_;
    std::unordered_set<std::uint32_t> defined_;
    std::size_t counted_ops_ = 0;
    std::optional<EndStep> end_;
};

/// Appends steps to a trace, handing out fresh sequential ids.
class Recorder {
public:
    GraphId base_k3(Label a, Label b, Label c) { return emit(BaseStep{fresh(), {a, b, c}}); }

    GraphId copy(GraphId src, Label offset) { return emit(CopyStep{src, fresh(), offset}); }

    GraphId join(GraphId left, GraphId right, const ops::JoinSpec& spec) {
        return emit(JoinStep{left, right, spec, fresh()});
    }

    GraphId identify(GraphId src, std::vector<Label> labels, Label target) {
        return emit(IdentStep{src, std::move(labels), target, fresh()});
    }

    GraphId relabel(GraphId src, Label add, Label modulus) {
        return emit(RelabelStep{src, add, modulus, fresh()});
    }

    /// Records a join of `left` with `right` followed by identifications on its result.
    GraphId apply(GraphId left, GraphId right, std::span<const ops::Operation> operations) {
        GraphId current = left;
        bool joined = false;
        for (const auto& op : operations) {
            if (const auto* j = std::get_if<ops::JoinSpec>(&op)) {
                if (joined) {
                    throw InvariantError("operation list contains more than one join");
                }
                current = join(current, right, *j);
                joined = true;
            } else {
                const auto& id = std::get<ops::IdentifySpec>(op);
                current = identify(current, id.labels, id.target);
            }
        }
        return current;
    }

    void end(GraphId final_id, std::uint64_t order) {
        trace_.record(EndStep{final_id, order, trace_.counted_ops()});
    }

    std::size_t ops() const noexcept { return trace_.counted_ops(); }
    std::size_t step_count() const noexcept { return trace_.steps().size(); }
    const HajosTrace& trace() const noexcept { return trace_; }
    HajosTrace take() && { return std::move(trace_); }

private:
    GraphId fresh() { return GraphId{next_++}; }

    template <class Step>
    GraphId emit(Step step) {
        GraphId out = step.out;
        trace_.record(std::move(step));
        return out;
    }

    HajosTrace trace_;
    std::uint32_t next_ = 0;
};

namespace detail {

inline std::string id_text(GraphId id) { return "g" + std::to_string(id.value); }

inline std::string step_text(const TraceStep& step) {
    using std::to_string;
    return std::visit(
        [](const auto& s) -> std::string {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, BaseStep>) {
                return "BASE " + id_text(s.out) + " K3 " + to_string(s.labels[0]) + " " +
                       to_string(s.labels[1]) + " " + to_string(s.labels[2]);
            } else if constexpr (std::is_same_v<T, CopyStep>) {
                return "COPY " + id_text(s.src) + " " + id_text(s.out) + " OFFSET " + to_string(s.offset);
            } else if constexpr (std::is_same_v<T, JoinStep>) {
                return "JOIN " + id_text(s.left) + " " + to_string(s.spec.u1) + " " + to_string(s.spec.v1) +
                       " " + id_text(s.right) + " " + to_string(s.spec.v2) + " " + to_string(s.spec.u2) +
                       " " + id_text(s.out);
            } else if constexpr (std::is_same_v<T, IdentStep>) {
                std::string set;
                for (std::size_t i = 0; i < s.labels.size(); ++i) {
                    set += (i ? "," : "") + to_string(s.labels[i]);
                }
                return "IDENT " + id_text(s.src) + " " + set + " " + to_string(s.target) + " " + id_text(s.out);
            } else if constexpr (std::is_same_v<T, RelabelStep>) {
                return "RELABEL " + id_text(s.src) + " ADD " + to_string(s.add) + " MOD " +
                       to_string(s.modulus) + " " + id_text(s.out);
            } else {
                return "END " + id_text(s.final_id) + " ORDER " + to_string(s.order) + " OPS " +
                       to_string(s.ops);
            }
        },
        step);
}

}  // namespace detail

inline constexpr std::string_view kHeader = "HAJOS-TRACE 1";

inline std::string serialize(const HajosTrace& trace) {
    std::string out(kHeader);
    out += '\n';
    for (const auto& step : trace.steps()) {
        out += detail::step_text(step);
        out += '\n';
    }
    return out;
}

namespace detail {

class LineParser {
public:
    LineParser(std::string_view line, std::size_t line_no, std::size_t last_good)
        : fields_(hajos::detail::split_fields(line)), line_no_(line_no), last_good_(last_good) {}

    std::size_t arity() const { return fields_.size(); }
    std::string_view keyword() const { return fields_[0]; }

    void expect_arity(std::size_t n) const {
        if (fields_.size() != n) {
            fail("expected " + std::to_string(n) + " fields, found " + std::to_string(fields_.size()));
        }
    }

    void literal(std::size_t i, std::string_view word) const {
        if (fields_[i] != word) {
            fail("expected '" + std::string(word) + "' in field " + std::to_string(i + 1));
        }
    }

    GraphId id(std::size_t i) const {
        std::string_view f = fields_[i];
        GraphId id;
        if (f.size() < 2 || f[0] != 'g' || !hajos::detail::parse_decimal(f.substr(1), id.value)) {
            fail("malformed digraph id '" + std::string(f) + "'");
        }
        return id;
    }

    template <class T = Label>
    T number(std::size_t i) const {
        T value{};
        if (!hajos::detail::parse_decimal(fields_[i], value)) {
            fail("malformed number '" + std::string(fields_[i]) + "'");
        }
        return value;
    }

    std::vector<Label> label_set(std::size_t i) const {
        std::vector<Label> labels;
        std::string_view f = fields_[i];
        std::size_t pos = 0;
        while (true) {
            std::size_t comma = f.find(',', pos);
            std::string_view item = f.substr(pos, comma == std::string_view::npos ? comma : comma - pos);
            Label v = 0;
            if (!hajos::detail::parse_decimal(item, v)) {
                fail("malformed label set '" + std::string(f) + "'");
            }
            labels.push_back(v);
            if (comma == std::string_view::npos) {
                break;
            }
            pos = comma + 1;
        }
        return labels;
    }

    [[noreturn]] void fail(const std::string& what) const {
        throw TraceSyntaxError(line_no_, what + " (last good line " + std::to_string(last_good_) + ")");
    }

private:
    std::vector<std::string_view> fields_;
    std::size_t line_no_;
    std::size_t last_good_;
};

inline TraceStep parse_step(const LineParser& p) {
    std::string_view kw = p.keyword();
    if (kw == "BASE") {
        p.expect_arity(6);
        p.literal(2, "K3");
        return BaseStep{p.id(1), {p.number(3), p.number(4), p.number(5)}};
    }
    if (kw == "COPY") {
        p.expect_arity(5);
        p.literal(3, "OFFSET");
        return CopyStep{p.id(1), p.id(2), p.number(4)};
    }
    if (kw == "JOIN") {
        p.expect_arity(8);
        return JoinStep{p.id(1), p.id(4), ops::JoinSpec{p.number(2), p.number(3), p.number(5), p.number(6)},
                        p.id(7)};
    }
    if (kw == "IDENT") {
        p.expect_arity(5);
        return IdentStep{p.id(1), p.label_set(2), p.number(3), p.id(4)};
    }
    if (kw == "RELABEL") {
        p.expect_arity(7);
        p.literal(2, "ADD");
        p.literal(4, "MOD");
        return RelabelStep{p.id(1), p.number(3), p.number(5), p.id(6)};
    }
    if (kw == "END") {
        p.expect_arity(6);
        p.literal(2, "ORDER");
        p.literal(4, "OPS");
        return EndStep{p.id(1), p.number<std::uint64_t>(3), p.number<std::uint64_t>(5)};
    }
    p.fail("unknown step '" + std::string(kw) + "'");
}

}  // namespace detail

/// Parses the text form. Layout problems raise TraceSyntaxError with the line
/// number; well-formed lines that break single assignment raise TraceSemanticError.
inline HajosTrace parse(std::string_view text) {
    auto make_error = [](std::size_t line, const std::string& what) {
        return TraceSyntaxError(line, what + " (last good line " + std::to_string(line - 1) + ")");
    };
    auto lines = hajos::detail::split_lines(text, make_error);
    if (lines.empty() || lines[0] != kHeader) {
        throw TraceSyntaxError(1, "missing '" + std::string(kHeader) + "' header");
    }
    HajosTrace trace;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        detail::LineParser p(lines[i], i + 1, i);
        TraceStep step = detail::parse_step(p);
        try {
            trace.record(std::move(step));
        } catch (const TraceSemanticError& e) {
            throw TraceSemanticError("line " + std::to_string(i + 1) + ": " + e.what());
        }
    }
    return trace;
}

}  // namespace hajos::trace

#endif  // HAJOS_TRACE_HPP
