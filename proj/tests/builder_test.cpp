#include <cmath>
#include <cstdint>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "hajos/analysis.hpp"
#include "hajos/builder.hpp"
#include "hajos/replay.hpp"

namespace hajos {
namespace {

using builder::Session;
using builder::Tracked;

Tracked Start(Session& session, const Digraph& cycle) {
    // Enter the pipeline from an arbitrary cycle; the base step only provides an id.
    trace::GraphId id = session.recorder.base_k3(0, 1, 2);
    return {cycle, id};
}

// Per-round count summed stage by stage: one join for H0, then t+2 cyclic
// identifications of order 2^{t+1}+1, each a join plus order-1 identifications.
std::uint64_t StageSum(unsigned n) {
    std::uint64_t total = 0;
    for (unsigned t = 1; t < n; ++t) {
        std::uint64_t order = (std::uint64_t{1} << (t + 1)) + 1;
        total += 1;
        for (unsigned s = 0; s < t + 2; ++s) {
            total += 1 + (order - 1);
        }
    }
    return total;
}

TEST(RelabelTest, CopyOffset) {
    EXPECT_EQ(builder::copy_offset(symmetric_cycle(3), 3),
              Digraph::from({3, 4, 5}, {{3, 4}, {3, 5}, {4, 3}, {4, 5}, {5, 3}, {5, 4}}));
    Digraph c5 = builder::copy_offset(symmetric_cycle(5), 5);
    EXPECT_EQ(c5.vertices().front(), 5u);
    EXPECT_TRUE(c5.has_arc(9, 5));
    EXPECT_TRUE(analysis::is_symmetric_cycle(c5));
}

TEST(RelabelTest, CyclicRelabel) {
    Digraph h1 = builder::cycle_with_chords(5, {{4, 1}, {3, 0}});
    EXPECT_EQ(builder::relabel_cyclic(h1, 1, 5), builder::cycle_with_chords(5, {{0, 2}, {4, 1}}));
    EXPECT_EQ(builder::relabel_cyclic(h1, 0, 5), h1);
    for (Label a = 0; a < 5; ++a) {
        EXPECT_EQ(builder::relabel_cyclic(builder::relabel_cyclic(h1, a, 5), 5 - a, 5), h1);
    }
    EXPECT_THROW(builder::relabel_cyclic(h1, 1, 4), LabelError);
    EXPECT_THROW(builder::relabel_cyclic(h1, 1, 0), LabelError);
}

TEST(BuildH0Test, FirstRounds) {
    Session session;
    Digraph h0 = builder::build_h0(Start(session, symmetric_cycle(3)), session).graph;
    EXPECT_EQ(h0.order(), 5u);
    EXPECT_EQ(h0.size(), 11u);
    EXPECT_EQ(h0.asymmetric_arcs(), (std::vector<Arc>{{0, 2}, {2, 3}, {3, 0}}));
    for (auto [u, v] : std::vector<Arc>{{3, 4}, {4, 0}, {0, 1}, {1, 2}}) {
        EXPECT_EQ(h0.classify_arc(u, v), ArcClass::symmetric);
    }
    EXPECT_FALSE(analysis::is_symmetric_cycle(h0));

    Digraph h0b = builder::build_h0(Start(session, symmetric_cycle(5)), session).graph;
    EXPECT_EQ(h0b.order(), 9u);
    EXPECT_EQ(h0b.asymmetric_arcs(), (std::vector<Arc>{{0, 4}, {4, 5}, {5, 0}}));
    EXPECT_EQ(session.stages.back().ops, 1u);
}

TEST(BuildH0Test, RejectsNonPowerCycle) {
    Session session;
    EXPECT_THROW(builder::build_h0(Start(session, symmetric_cycle(7)), session), ShapeError);
    EXPECT_THROW(builder::build_h0(Start(session, builder::cycle_with_chords(5, {{0, 2}})), session), ShapeError);
}

TEST(BuildH1Test, FirstRound) {
    Session session;
    Tracked h0 = builder::build_h0(Start(session, symmetric_cycle(3)), session);
    Tracked h1 = builder::build_h1(h0, 1, session);
    EXPECT_EQ(h1.graph.asymmetric_arcs(), (std::vector<Arc>{{3, 0}, {4, 1}}));
    EXPECT_EQ(builder::relabel_cyclic(h1.graph, 1, 5).asymmetric_arcs(), (std::vector<Arc>{{0, 2}, {4, 1}}));
    EXPECT_EQ(session.stages.back().ops, 5u);
    EXPECT_FALSE(analysis::is_symmetric_cycle(h1.graph));
}

TEST(ChordDoublingTest, ChordMovesAndLands) {
    Session session;
    Tracked h{builder::cycle_with_chords(9, {{0, 4}, {6, 1}}), session.recorder.base_k3(0, 1, 2)};
    auto [h2, s2] = builder::lemma_step({2, 1, 1}, h, session);
    EXPECT_EQ(h2.graph, builder::cycle_with_chords(9, {{0, 4}, {7, 2}}));
    EXPECT_EQ(s2.chord_a, 2u);
    EXPECT_EQ(session.stages.back().ops, 9u);

    auto [h3, s3] = builder::lemma_step(s2, h2, session);
    EXPECT_EQ(h3.graph.asymmetric_arcs(), (std::vector<Arc>{{0, 4}}));
    EXPECT_EQ(s3.chord_a, 4u);
}

TEST(ChordDoublingTest, DeltaIsOneArcOut) {
    for (unsigned t = 2; t <= 6; ++t) {
        const Label half = Label{1} << t;
        const Label order = 2 * half + 1;
        for (Label a = 1; a < half; a *= 2) {
            Session session;
            Label x = half + a + 1;
            Tracked h{builder::cycle_with_chords(order, {{0, half}, {x, a}}), session.recorder.base_k3(0, 1, 2)};
            auto [next, state] = builder::lemma_step({t, 1, a}, h, session);
            std::set<Arc> before(h.graph.arcs().begin(), h.graph.arcs().end());
            std::set<Arc> after(next.graph.arcs().begin(), next.graph.arcs().end());
            std::vector<Arc> gone;
            std::vector<Arc> fresh;
            for (const Arc& arc : before) {
                if (!after.count(arc)) {
                    gone.push_back(arc);
                }
            }
            for (const Arc& arc : after) {
                if (!before.count(arc)) {
                    fresh.push_back(arc);
                }
            }
            EXPECT_EQ(gone, (std::vector<Arc>{{x, a}}));
            Arc expected{(x + a) % order, 2 * a};
            if (expected == Arc{0, half}) {
                EXPECT_TRUE(fresh.empty());
            } else {
                EXPECT_EQ(fresh, (std::vector<Arc>{expected}));
            }
            EXPECT_EQ(state.chord_a, 2 * a);
        }
    }
}

TEST(ChordDoublingTest, RejectsMissingChord) {
    Session session;
    Tracked h{builder::cycle_with_chords(9, {{0, 4}}), session.recorder.base_k3(0, 1, 2)};
    EXPECT_THROW(builder::lemma_step({2, 1, 1}, h, session), ShapeError);
    EXPECT_THROW(builder::lemma_step({2, 1, 0}, h, session), ShapeError);
}

TEST(FinalizeTest, RemovesLastChord) {
    Session session;
    Tracked h{builder::cycle_with_chords(5, {{0, 2}}), session.recorder.base_k3(0, 1, 2)};
    EXPECT_EQ(builder::finalize(h, 1, session).graph, symmetric_cycle(5));
    Tracked h9{builder::cycle_with_chords(9, {{0, 4}}), session.recorder.base_k3(10, 11, 12)};
    EXPECT_EQ(builder::finalize(h9, 2, session).graph, symmetric_cycle(9));
    EXPECT_THROW(builder::finalize(Tracked{symmetric_cycle(9), h9.id}, 2, session), ShapeError);
}

TEST(DoubleOrderTest, RoundCounts) {
    Session session;
    Tracked c{symmetric_cycle(3), session.recorder.base_k3(0, 1, 2)};
    std::vector<std::uint64_t> expected{16, 37, 86, 199};
    for (std::uint64_t want : expected) {
        std::size_t before = session.recorder.ops();
        c = builder::double_order(c, session);
        EXPECT_EQ(session.recorder.ops() - before, want);
    }
    EXPECT_EQ(c.graph, symmetric_cycle(33));
}

TEST(CountTest, ClosedFormMatchesStageSum) {
    for (unsigned n = 2; n <= 30; ++n) {
        EXPECT_EQ(builder::power_cycle_count(n), StageSum(n)) << "n=" << n;
    }
}

TEST(CountTest, IndexSummationUndercounts) {
    for (unsigned n = 2; n <= 20; ++n) {
        EXPECT_EQ(builder::power_cycle_count(n) - builder::power_index_sum(n), n - 2);
    }
}

TEST(CountTest, PowerCycles) {
    // n(2^{n+2}+n+5)/2 - 7
    const std::vector<std::uint64_t> table{16, 53, 139, 338, 794, 1827, 4141, 9272, 20548};
    for (unsigned n = 2; n <= 10; ++n) {
        auto c = builder::construct_power_cycle(n);
        EXPECT_EQ(c.report.op_count, table[n - 2]);
        EXPECT_EQ(c.report.op_count, c.trace.counted_ops());
        EXPECT_EQ(c.graph, symmetric_cycle((std::size_t{1} << n) + 1));
    }
    EXPECT_THROW(builder::construct_power_cycle(1), DomainError);
}

TEST(ReduceTest, Examples) {
    struct Case {
        unsigned n;
        std::uint64_t m;
        std::vector<Label> evens;
        std::vector<Label> odds;
    };
    for (const auto& c : std::vector<Case>{{2, 1, {2, 4}, {0, 3}}, {3, 3, {6, 8}, {0, 7}}, {3, 2, {4, 6, 8}, {0, 5, 7}}}) {
        Session session;
        const std::size_t order = (std::size_t{1} << c.n) + 1;
        Tracked cycle{symmetric_cycle(order), session.recorder.base_k3(0, 1, 2)};
        Tracked out = builder::reduce_to_odd(cycle, c.n, c.m, session);
        EXPECT_EQ(out.graph, symmetric_cycle(2 * c.m + 1));
        EXPECT_EQ(session.recorder.ops(), 2u);
        auto steps = session.recorder.trace().steps();
        EXPECT_EQ(std::get<trace::IdentStep>(steps[1]).labels, c.evens);
        EXPECT_EQ(std::get<trace::IdentStep>(steps[2]).labels, c.odds);
    }
}

TEST(ReduceTest, Preconditions) {
    Session session;
    Tracked c9{symmetric_cycle(9), session.recorder.base_k3(0, 1, 2)};
    EXPECT_THROW(builder::reduce_to_odd(c9, 3, 0, session), DomainError);
    EXPECT_THROW(builder::reduce_to_odd(c9, 3, 4, session), DomainError);
    EXPECT_THROW(builder::reduce_to_odd(c9, 4, 3, session), ShapeError);
}

TEST(ConstructOddCycleTest, Examples) {
    EXPECT_EQ(builder::construct_odd_cycle(3).report.op_count, 0u);
    EXPECT_EQ(builder::construct_odd_cycle(5).report.op_count, 16u);
    EXPECT_EQ(builder::construct_odd_cycle(7).report.op_count, 55u);
    EXPECT_EQ(builder::construct_odd_cycle(11).report.op_count, 141u);
    EXPECT_THROW(builder::construct_odd_cycle(4), DomainError);
    EXPECT_THROW(builder::construct_odd_cycle(1), DomainError);
}

TEST(ConstructOddCycleTest, AllOrdersUpTo2049) {
    for (std::uint64_t order = 3; order <= 2049; order += 2) {
        auto c = builder::construct_odd_cycle(order);
        ASSERT_EQ(c.graph, symmetric_cycle(order)) << "N=" << order;
        if (order >= 5) {
            EXPECT_EQ(c.report.op_count, builder::hajos_bound(order)) << "N=" << order;
            EXPECT_TRUE(c.report.in_envelope) << "N=" << order;
            double x = static_cast<double>(c.report.op_count);
            double nl = static_cast<double>(order) * std::log(static_cast<double>(order));
            EXPECT_LT(nl, x);
            EXPECT_LT(x, 13 * nl);
        }
    }
}

TEST(ConstructOddCycleTest, ReplayAgrees) {
    for (std::uint64_t order : {3u, 5u, 7u, 9u, 11u, 33u, 63u}) {
        auto c = builder::construct_odd_cycle(order);
        auto r = trace::replay(c.trace);
        EXPECT_EQ(r.graph, c.graph);
        EXPECT_EQ(r.ops, c.report.op_count);
    }
}

TEST(BoundTest, Values) {
    EXPECT_EQ(builder::hajos_bound(5), 16u);
    EXPECT_EQ(builder::hajos_bound(9), 53u);
    EXPECT_EQ(builder::hajos_bound(7), 55u);
    EXPECT_EQ(builder::hajos_bound(11), 141u);
    EXPECT_EQ(builder::hajos_bound(1025), 20548u);
    EXPECT_THROW(builder::hajos_bound(3), DomainError);
    EXPECT_THROW(builder::hajos_bound(6), DomainError);
}

TEST(BoundTest, Envelope) {
    auto e5 = builder::complexity_envelope(5);
    EXPECT_NEAR(e5.low, 8.047189562, 1e-9);
    EXPECT_NEAR(e5.high, 104.613464308, 1e-9);
    auto e9 = builder::complexity_envelope(9);
    EXPECT_NEAR(e9.low, 19.775021196, 1e-9);
    EXPECT_NEAR(e9.high, 257.075275548, 1e-9);
    auto e1025 = builder::complexity_envelope(1025);
    EXPECT_NEAR(e1025.low, 7105.759088862, 1e-6);
    EXPECT_NEAR(e1025.high, 92374.868155204, 1e-6);
    EXPECT_THROW(builder::complexity_envelope(3), DomainError);
}

TEST(ReportTest, StageBreakdown) {
    auto c = builder::construct_odd_cycle(11);
    ASSERT_TRUE(c.report.reduce_m.has_value());
    EXPECT_EQ(*c.report.reduce_m, 5u);
    EXPECT_EQ(c.report.exponent, 4u);
    EXPECT_EQ(c.report.power_closed_form, 139u);
    EXPECT_EQ(c.report.power_index_sum, 137u);
    std::uint64_t sum = 0;
    for (const auto& s : c.report.stages) {
        sum += s.ops;
    }
    EXPECT_EQ(sum, c.report.op_count);
    EXPECT_EQ(c.report.stages.back().name, "reduce[17->11]");
    EXPECT_EQ(c.report.stages.front().name, "H0[3->5]");
}

}  // namespace
}  // namespace hajos
