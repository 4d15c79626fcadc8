#ifndef HAJOS_DIGRAPH_IO_HPP
#define HAJOS_DIGRAPH_IO_HPP

#include <charconv>
#include <string>
#include <string_view>
#include <vector>

#include "hajos/digraph.hpp"
#include "hajos/errors.hpp"

namespace hajos {

namespace detail {

// Splits newline-terminated text into lines. A missing final newline is
// reported as an error on the last line.
inline std::vector<std::string_view> split_lines(std::string_view text,
                                                 auto&& make_error) {
    std::vector<std::string_view> lines;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) {
            throw make_error(lines.size() + 1, "line is not newline-terminated");
        }
        lines.push_back(text.substr(pos, nl - pos));
        pos = nl + 1;
    }
    return lines;
}

inline std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t pos = 0;
    while (true) {
        std::size_t sp = line.find(' ', pos);
        fields.push_back(line.substr(pos, sp == std::string_view::npos ? sp : sp - pos));
        if (sp == std::string_view::npos) {
            break;
        }
        pos = sp + 1;
    }
    return fields;
}

// Canonical unsigned decimal: digits only, no sign, no leading zeros.
template <class T>
bool parse_decimal(std::string_view s, T& out) {
    if (s.empty() || (s.size() > 1 && s.front() == '0')) {
        return false;
    }
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size();
}

}  // namespace detail

/// Line-based text form:
///   DIGRAPH <order> <size>
///   V <label>          (ascending)
///   A <tail> <head>    (ascending by (tail, head))
inline std::string to_text(const Digraph& d) {
    std::string out = "DIGRAPH " + std::to_string(d.order()) + " " + std::to_string(d.size()) + "\n";
    for (Label v : d.vertices()) {
        out += "V " + std::to_string(v) + "\n";
    }
    for (const Arc& a : d.arcs()) {
        out += "A " + std::to_string(a.tail) + " " + std::to_string(a.head) + "\n";
    }
    return out;
}

/// Strict inverse of to_text(): any deviation from the canonical layout is a FormatError.
inline Digraph parse_digraph(std::string_view text) {
    auto make_error = [](std::size_t line, const std::string& what) {
        return FormatError(line, what);
    };
    auto lines = detail::split_lines(text, make_error);
    if (lines.empty()) {
        throw FormatError(1, "missing DIGRAPH header");
    }
    auto header = detail::split_fields(lines[0]);
    std::size_t order = 0;
    std::size_t size = 0;
    if (header.size() != 3 || header[0] != "DIGRAPH" || !detail::parse_decimal(header[1], order) ||
        !detail::parse_decimal(header[2], size)) {
        throw FormatError(1, "expected 'DIGRAPH <order> <size>'");
    }
    if (lines.size() != 1 + order + size) {
        throw FormatError(lines.size(), "expected " + std::to_string(order) + " vertex lines and " +
                                            std::to_string(size) + " arc lines");
    }

    std::vector<Label> vertices;
    vertices.reserve(order);
    for (std::size_t i = 0; i < order; ++i) {
        auto f = detail::split_fields(lines[1 + i]);
        Label v = 0;
        if (f.size() != 2 || f[0] != "V" || !detail::parse_decimal(f[1], v)) {
            throw FormatError(2 + i, "expected 'V <label>'");
        }
        if (!vertices.empty() && v <= vertices.back()) {
            throw FormatError(2 + i, "vertex labels must be strictly ascending");
        }
        vertices.push_back(v);
    }

    std::vector<Arc> arcs;
    arcs.reserve(size);
    for (std::size_t i = 0; i < size; ++i) {
        std::size_t line_no = 2 + order + i;
        auto f = detail::split_fields(lines[1 + order + i]);
        Arc a;
        if (f.size() != 3 || f[0] != "A" || !detail::parse_decimal(f[1], a.tail) ||
            !detail::parse_decimal(f[2], a.head)) {
            throw FormatError(line_no, "expected 'A <tail> <head>'");
        }
        if (!arcs.empty() && a <= arcs.back()) {
            throw FormatError(line_no, "arcs must be strictly ascending by (tail, head)");
        }
        if (a.tail == a.head) {
            throw FormatError(line_no, "loop at vertex " + std::to_string(a.tail));
        }
        if (!std::binary_search(vertices.begin(), vertices.end(), a.tail) ||
            !std::binary_search(vertices.begin(), vertices.end(), a.head)) {
            throw FormatError(line_no, "arc endpoint is not a declared vertex");
        }
        arcs.push_back(a);
    }
    return Digraph::from_sorted(std::move(vertices), std::move(arcs));
}

}  // namespace hajos

#endif  // HAJOS_DIGRAPH_IO_HPP
