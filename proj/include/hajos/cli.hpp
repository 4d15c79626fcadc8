#ifndef HAJOS_CLI_HPP
#define HAJOS_CLI_HPP

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>

#include <CLI11.hpp>

#include "hajos/analysis.hpp"
#include "hajos/builder.hpp"
#include "hajos/digraph.hpp"
#include "hajos/digraph_io.hpp"
#include "hajos/errors.hpp"
#include "hajos/replay.hpp"
#include "hajos/trace.hpp"

namespace hajos::cli {

enum ExitCode : int {
    kOk = 0,
    kVerifyFailure = 1,
    kUsage = 2,
    kResourceLimit = 3,
};

enum class ReportFormat { kv, text };

struct CliConfig {
    std::string subcommand;
    std::uint64_t order = 0;
    unsigned exponent = 0;
    std::uint64_t reduce_m = 0;
    std::filesystem::path input;
    std::filesystem::path out_dir = ".";
    bool out_dir_given = false;
    bool construct = false;
    std::optional<std::size_t> limit;
    ReportFormat format = ReportFormat::kv;
};

namespace detail {

inline std::string fixed(double x, int digits = 6) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, x);
    return buf;
}

inline std::optional<std::string> read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        return std::nullopt;
    }
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

inline void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << text;
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
}

inline void print_report(const builder::ConstructionReport& r, ReportFormat format, std::ostream& out) {
    if (format == ReportFormat::text) {
        out << "D(C_" << r.target_order << ") built with " << r.op_count << " Hajos operations\n";
        if (r.bound != 0) {
            out << "  bound:    " << r.bound << "\n";
        }
        if (r.envelope) {
            out << "  envelope: " << fixed(r.envelope->low, 3) << " < " << r.op_count << " < "
                << fixed(r.envelope->high, 3) << (r.in_envelope ? " (inside)" : " (OUTSIDE)") << "\n";
        }
        if (r.exponent >= 2) {
            out << "  power cycle D(C_" << builder::pow2(r.exponent) + 1 << "): closed form "
                << r.power_closed_form << ", index summation " << r.power_index_sum << "\n";
        }
        for (const auto& s : r.stages) {
            out << "  " << s.name << ": " << s.ops << "\n";
        }
        return;
    }
    auto na = [](bool present, const std::string& value) { return present ? value : std::string("na"); };
    out << "order=" << r.target_order << "\n";
    out << "exponent=" << r.exponent << "\n";
    out << "reduce_m=" << na(r.reduce_m.has_value(), r.reduce_m ? std::to_string(*r.reduce_m) : "") << "\n";
    out << "op_count=" << r.op_count << "\n";
    out << "bound=" << na(r.bound != 0, std::to_string(r.bound)) << "\n";
    out << "envelope_low=" << na(r.envelope.has_value(), r.envelope ? fixed(r.envelope->low) : "") << "\n";
    out << "envelope_high=" << na(r.envelope.has_value(), r.envelope ? fixed(r.envelope->high) : "") << "\n";
    out << "in_envelope=" << na(r.envelope.has_value(), r.in_envelope ? "true" : "false") << "\n";
    out << "power_closed_form=" << na(r.exponent >= 2, std::to_string(r.power_closed_form)) << "\n";
    out << "power_index_sum=" << na(r.exponent >= 2, std::to_string(r.power_index_sum)) << "\n";
    out << "stages=" << r.stages.size() << "\n";
    for (const auto& s : r.stages) {
        out << "stage." << s.name << "=" << s.ops << "\n";
    }
}

// Domain problems are usage errors, anything else the engine raises is an invariant failure.
template <class F>
int guarded(std::ostream& err, F&& body) {
    try {
        return body();
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const SizeLimitError& e) {
        err << "error: " << e.what() << "\n";
        return kResourceLimit;
    } catch (const HajosError& e) {
        err << "error: " << e.what() << "\n";
        return kVerifyFailure;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
}

}  // namespace detail

inline std::string trace_file_name(std::uint64_t order) { return "C" + std::to_string(order) + ".hajos"; }
inline std::string digraph_file_name(std::uint64_t order) { return "C" + std::to_string(order) + ".digraph"; }

/// construct <N>: builds D(C_N), writes the trace and the final digraph, prints the report.
inline int cmd_construct(std::uint64_t order, const std::filesystem::path& out_dir, ReportFormat format,
                         std::ostream& out, std::ostream& err) {
    return detail::guarded(err, [&] {
        auto c = builder::construct_odd_cycle(order);
        if (c.graph != symmetric_cycle(order)) {
            err << "error: constructed digraph is not D(C_" << order << ")\n";
            return int{kVerifyFailure};
        }
        std::filesystem::create_directories(out_dir);
        auto trace_path = out_dir / trace_file_name(order);
        auto graph_path = out_dir / digraph_file_name(order);
        detail::write_file(trace_path, trace::serialize(c.trace));
        detail::write_file(graph_path, to_text(c.graph));
        detail::print_report(c.report, format, out);
        if (format == ReportFormat::kv) {
            out << "trace=" << trace_path.string() << "\n";
            out << "digraph=" << graph_path.string() << "\n";
        }
        return int{kOk};
    });
}

/// Replays a trace held in memory. Layout errors exit 2; a certificate that
/// parses but does not replay to D(C_N) with the declared count exits 1.
inline int verify_text(std::string_view text, std::ostream& out, std::ostream& err) {
    trace::HajosTrace t;
    try {
        t = trace::parse(text);
    } catch (const TraceSyntaxError& e) {
        err << "parse error: " << e.what() << "\n";
        return kUsage;
    } catch (const TraceSemanticError& e) {
        err << "invalid trace: " << e.what() << "\n";
        return kVerifyFailure;
    }
    if (!t.end()) {
        err << "verification failed: trace has no END declaration\n";
        return kVerifyFailure;
    }
    trace::ReplayResult result;
    try {
        result = trace::replay(t);
    } catch (const ReplayError& e) {
        err << "verification failed at " << e.what() << "\n";
        return kVerifyFailure;
    }
    const auto& end = *t.end();
    if (end.order < 3 || result.graph != symmetric_cycle(end.order)) {
        err << "verification failed at step " << t.steps().size() - 1
            << ": final digraph is not D(C_" << end.order << ")\n";
        return kVerifyFailure;
    }
    out << "verify=ok\n";
    out << "order=" << end.order << "\n";
    out << "ops=" << result.ops << "\n";
    return kOk;
}

inline int cmd_verify(const std::filesystem::path& path, std::ostream& out, std::ostream& err) {
    auto text = detail::read_file(path);
    if (!text) {
        err << "error: cannot read " << path.string() << "\n";
        return kUsage;
    }
    return verify_text(*text, out, err);
}

/// bounds <N_max>: one row per odd N in [5, N_max].
inline int cmd_bounds(std::uint64_t max_order, bool construct, std::ostream& out, std::ostream& err) {
    return detail::guarded(err, [&] {
        if (max_order < 5) {
            throw DomainError("N_max must be at least 5, got " + std::to_string(max_order));
        }
        int status = kOk;
        out << "N bound op_count envelope_low envelope_high in_envelope\n";
        for (std::uint64_t n = 5; n <= max_order; n += 2) {
            const std::uint64_t bound = builder::hajos_bound(n);
            const auto env = builder::complexity_envelope(n);
            std::uint64_t x = bound;
            std::string count = "-";
            if (construct) {
                x = builder::construct_odd_cycle(n).report.op_count;
                count = std::to_string(x);
                if (x > bound) {
                    status = kVerifyFailure;
                }
            }
            const bool inside = env.low < static_cast<double>(x) && static_cast<double>(x) < env.high;
            if (!inside) {
                status = kVerifyFailure;
            }
            out << n << " " << bound << " " << count << " " << detail::fixed(env.low) << " "
                << detail::fixed(env.high) << " " << (inside ? "in" : "out") << "\n";
        }
        return status;
    });
}

inline std::optional<std::size_t> limit_from_env() {
    const char* raw = std::getenv("HAJOS_BF_LIMIT");
    if (raw == nullptr) {
        return std::nullopt;
    }
    std::size_t value = 0;
    if (!hajos::detail::parse_decimal(std::string_view(raw), value)) {
        throw DomainError(std::string("HAJOS_BF_LIMIT is not a number: '") + raw + "'");
    }
    return value;
}

/// dichromatic <file>: prints the dichromatic number, then a witness coloring.
inline int cmd_dichromatic(const std::filesystem::path& path, std::optional<std::size_t> limit,
                           std::ostream& out, std::ostream& err) {
    return detail::guarded(err, [&]() -> int {
        auto text = detail::read_file(path);
        if (!text) {
            err << "error: cannot read " << path.string() << "\n";
            return kUsage;
        }
        Digraph d;
        try {
            d = parse_digraph(*text);
        } catch (const FormatError& e) {
            err << "parse error: " << e.what() << "\n";
            return kUsage;
        }
        std::size_t effective = limit.value_or(limit_from_env().value_or(analysis::kDefaultBruteForceLimit));
        auto cap = static_cast<unsigned>(d.order() == 0 ? 1 : d.order());
        auto result = analysis::dichromatic_number(d, cap, effective);
        out << result.number << "\n";
        out << "witness";
        for (const auto& [label, color] : result.witness.colors) {
            out << " " << label << ":" << color;
        }
        out << "\n";
        return kOk;
    });
}

/// reduce <n> <m>: builds D(C_{2^n+1}) and collapses it to D(C_{2m+1}).
inline int cmd_reduce(unsigned n, std::uint64_t m, std::optional<std::filesystem::path> out_dir,
                      ReportFormat format, std::ostream& out, std::ostream& err) {
    return detail::guarded(err, [&] {
        auto c = builder::construct_reduced(n, m);
        if (c.graph != symmetric_cycle(2 * m + 1)) {
            err << "error: reduction did not produce D(C_" << 2 * m + 1 << ")\n";
            return int{kVerifyFailure};
        }
        detail::print_report(c.report, format, out);
        if (out_dir) {
            std::filesystem::create_directories(*out_dir);
            std::string stem = "reduce_" + std::to_string(n) + "_" + std::to_string(m);
            detail::write_file(*out_dir / (stem + ".hajos"), trace::serialize(c.trace));
            detail::write_file(*out_dir / (stem + ".digraph"), to_text(c.graph));
            if (format == ReportFormat::kv) {
                out << "trace=" << (*out_dir / (stem + ".hajos")).string() << "\n";
                out << "digraph=" << (*out_dir / (stem + ".digraph")).string() << "\n";
            }
        }
        return int{kOk};
    });
}

/// Parses argv and dispatches to a subcommand.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Directed Hajos constructions of symmetric odd cycles"};
    app.require_subcommand(1);
    CliConfig cfg;
    std::string format = "kv";
    auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", format, "Report format")->check(CLI::IsMember({"kv", "text"}));
    };

    auto* construct = app.add_subcommand("construct", "Build D(C_N) and write its certificate");
    construct->add_option("N", cfg.order, "Odd order N >= 3")->required();
    construct->add_option("--out", cfg.out_dir, "Output directory");
    add_format(construct);

    auto* verify = app.add_subcommand("verify", "Replay a .hajos certificate");
    verify->add_option("trace", cfg.input, "Trace file")->required();

    auto* bounds = app.add_subcommand("bounds", "Tabulate bounds and the complexity envelope");
    bounds->add_option("N_max", cfg.order, "Largest order")->required();
    bounds->add_flag("--construct", cfg.construct, "Also run each construction");

    auto* dichromatic = app.add_subcommand("dichromatic", "Brute-force dichromatic number of a digraph file");
    dichromatic->add_option("digraph", cfg.input, "Digraph file")->required();
    dichromatic->add_option("--limit", cfg.limit, "Brute-force order limit");

    auto* reduce = app.add_subcommand("reduce", "Build D(C_{2^n+1}) and reduce it to D(C_{2m+1})");
    reduce->add_option("n", cfg.exponent, "Exponent n >= 2")->required();
    reduce->add_option("m", cfg.reduce_m, "1 <= m < 2^(n-1)")->required();
    auto* reduce_out = reduce->add_option("--out", cfg.out_dir, "Output directory");
    add_format(reduce);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kUsage;
    }
    cfg.format = format == "text" ? ReportFormat::text : ReportFormat::kv;

    if (construct->parsed()) {
        return cmd_construct(cfg.order, cfg.out_dir, cfg.format, out, err);
    }
    if (verify->parsed()) {
        return cmd_verify(cfg.input, out, err);
    }
    if (bounds->parsed()) {
        return cmd_bounds(cfg.order, cfg.construct, out, err);
    }
    if (dichromatic->parsed()) {
        return cmd_dichromatic(cfg.input, cfg.limit, out, err);
    }
    std::optional<std::filesystem::path> dir;
    if (reduce_out->count() > 0) {
        dir = cfg.out_dir;
    }
    return cmd_reduce(cfg.exponent, cfg.reduce_m, dir, cfg.format, out, err);
}

}  // namespace hajos::cli

#endif  // HAJOS_CLI_HPP
