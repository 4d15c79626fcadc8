#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "hajos/builder.hpp"
#include "hajos/digraph.hpp"
#include "hajos/digraph_io.hpp"
#include "support/oracles.hpp"

namespace hajos {
namespace {

Digraph DirectedTriangle() { return Digraph::from({0, 1, 2}, {{0, 1}, {1, 2}, {2, 0}}); }

TEST(DigraphTest, OutNeighborhood) {
    EXPECT_EQ(DirectedTriangle().out_neighborhood(0), (std::vector<Label>{1}));
    EXPECT_EQ(symmetric_cycle(3).out_neighborhood(0), (std::vector<Label>{1, 2}));
    EXPECT_EQ(symmetric_cycle(5).out_neighborhood(3), (std::vector<Label>{2, 4}));
}

TEST(DigraphTest, InNeighborhood) {
    EXPECT_EQ(DirectedTriangle().in_neighborhood(0), (std::vector<Label>{2}));
    EXPECT_EQ(symmetric_cycle(3).in_neighborhood(1), (std::vector<Label>{0, 2}));
    EXPECT_EQ(symmetric_cycle(5).in_neighborhood(0), (std::vector<Label>{1, 4}));
}

TEST(DigraphTest, NeighborhoodOfUnknownVertexThrows) {
    EXPECT_THROW(symmetric_cycle(5).out_neighborhood(7), UnknownVertexError);
    EXPECT_THROW(symmetric_cycle(5).in_neighborhood(7), UnknownVertexError);
}

TEST(DigraphTest, IsIndependent) {
    Digraph c5 = symmetric_cycle(5);
    EXPECT_TRUE(c5.is_independent(std::vector<Label>{0, 2}));
    EXPECT_FALSE(c5.is_independent(std::vector<Label>{0, 1}));
    for (Label v = 0; v < 5; ++v) {
        EXPECT_TRUE(c5.is_independent(std::vector<Label>{v}));
    }
    EXPECT_TRUE(DirectedTriangle().is_independent(std::vector<Label>{2}));
    EXPECT_THROW(c5.is_independent(std::vector<Label>{0, 9}), UnknownVertexError);
}

TEST(DigraphTest, IndependenceSeesArcsInBothDirections) {
    Digraph d = Digraph::from({0, 1, 2}, {{2, 0}});
    EXPECT_FALSE(d.is_independent(std::vector<Label>{0, 2}));
    EXPECT_FALSE(d.is_independent(std::vector<Label>{2, 0}));
}

TEST(DigraphTest, ClassifyArc) {
    EXPECT_EQ(symmetric_cycle(5).classify_arc(0, 1), ArcClass::symmetric);
    EXPECT_EQ(DirectedTriangle().classify_arc(0, 1), ArcClass::asymmetric);
    EXPECT_THROW(DirectedTriangle().classify_arc(1, 0), MissingArcError);

    // H0 of the first doubling round: (2,3) has no reverse.
    builder::Session session;
    builder::Tracked k3{symmetric_cycle(3), session.recorder.base_k3(0, 1, 2)};
    Digraph h0 = builder::build_h0(k3, session).graph;
    EXPECT_EQ(h0.classify_arc(2, 3), ArcClass::asymmetric);
}

TEST(DigraphTest, SymmetricCycle) {
    Digraph k3 = symmetric_cycle(3);
    EXPECT_EQ(k3.order(), 3u);
    EXPECT_EQ(k3.size(), 6u);

    Digraph c4 = symmetric_cycle(4);
    EXPECT_EQ(c4.order(), 4u);
    EXPECT_EQ(c4.size(), 8u);

    Digraph c5 = symmetric_cycle(5);
    EXPECT_EQ(c5.order(), 5u);
    EXPECT_EQ(c5.size(), 10u);
    EXPECT_TRUE(c5.asymmetric_arcs().empty());

    EXPECT_THROW(symmetric_cycle(2), DomainError);
    EXPECT_THROW(symmetric_cycle(0), DomainError);
}

TEST(DigraphTest, SymmetricCycleIsTwoRegularAndSymmetric) {
    for (std::size_t n = 3; n <= 40; ++n) {
        Digraph c = symmetric_cycle(n);
        EXPECT_EQ(c.size(), 2 * n);
        for (Label v : c.vertices()) {
            EXPECT_EQ(c.out_neighborhood(v).size(), 2u);
            EXPECT_EQ(c.in_neighborhood(v).size(), 2u);
        }
        for (const Arc& a : c.arcs()) {
            EXPECT_EQ(c.classify_arc(a.tail, a.head), ArcClass::symmetric);
        }
    }
}

TEST(DigraphTest, ConstructionEnforcesInvariants) {
    EXPECT_THROW(Digraph::from({0, 1}, {{0, 0}}), InvariantError);
    EXPECT_THROW(Digraph::from({0, 1}, {{0, 2}}), InvariantError);
    EXPECT_THROW(Digraph::from({1, 2}, {{0, 2}}), InvariantError);

    Digraph d = Digraph::from({3, 1, 1, 2}, {{1, 2}, {1, 2}, {3, 1}});
    EXPECT_EQ(std::vector<Label>(d.vertices().begin(), d.vertices().end()), (std::vector<Label>{1, 2, 3}));
    EXPECT_EQ(d.size(), 2u);

    EXPECT_THROW(Digraph::from_sorted({2, 1}, {}), InvariantError);
    EXPECT_THROW(Digraph::from_sorted({1, 2}, {{1, 2}, {1, 2}}), InvariantError);
}

TEST(DigraphTest, ArcsIterateInTailHeadOrder) {
    Digraph d = Digraph::from({0, 1, 2, 3}, {{3, 0}, {0, 2}, {2, 1}, {0, 1}});
    std::vector<Arc> arcs(d.arcs().begin(), d.arcs().end());
    EXPECT_EQ(arcs, (std::vector<Arc>{{0, 1}, {0, 2}, {2, 1}, {3, 0}}));
}

TEST(DigraphTest, IndependenceMatchesPairwiseDefinition) {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        Digraph d = testing::random_cycle_with_chords(9, 3, rng);
        std::uniform_int_distribution<Label> pick(0, 8);
        std::vector<Label> set{pick(rng), pick(rng), pick(rng)};
        std::sort(set.begin(), set.end());
        set.erase(std::unique(set.begin(), set.end()), set.end());
        bool pairwise = true;
        for (Label u : set) {
            for (Label v : set) {
                auto out = d.out_neighborhood(u);
                if (std::find(out.begin(), out.end(), v) != out.end()) {
                    pairwise = false;
                }
            }
        }
        EXPECT_EQ(d.is_independent(set), pairwise);
    }
}

TEST(DigraphTest, RemoveVertexAndInducedSubdigraph) {
    Digraph path = remove_vertex(symmetric_cycle(5), 0);
    EXPECT_EQ(path.order(), 4u);
    EXPECT_EQ(path.size(), 6u);
    EXPECT_FALSE(path.has_vertex(0));

    Digraph pair = induced_subdigraph(symmetric_cycle(5), {1, 2});
    EXPECT_EQ(pair.size(), 2u);
    EXPECT_THROW(induced_subdigraph(symmetric_cycle(5), {1, 9}), UnknownVertexError);
}

TEST(DigraphIoTest, TextLayout) {
    EXPECT_EQ(to_text(DirectedTriangle()),
              "DIGRAPH 3 3\n"
              "V 0\nV 1\nV 2\n"
              "A 0 1\nA 1 2\nA 2 0\n");
}

TEST(DigraphIoTest, ParseInvertsToText) {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        Digraph d = builder::copy_offset(testing::random_cycle_with_chords(5 + trial, 4, rng), trial * 3);
        std::string text = to_text(d);
        Digraph back = parse_digraph(text);
        EXPECT_EQ(back, d);
        EXPECT_EQ(to_text(back), text);
    }
}

TEST(DigraphIoTest, RejectsMalformedInput) {
    EXPECT_THROW(parse_digraph(""), FormatError);
    EXPECT_THROW(parse_digraph("DIGRAPH 1 0\nV 0"), FormatError);            // no final newline
    EXPECT_THROW(parse_digraph("DIGRAPH 2 0\nV 1\nV 0\n"), FormatError);     // not ascending
    EXPECT_THROW(parse_digraph("DIGRAPH 1 1\nV 0\nA 0 0\n"), FormatError);   // loop
    EXPECT_THROW(parse_digraph("DIGRAPH 1 1\nV 0\nA 0 1\n"), FormatError);   // dangling
    EXPECT_THROW(parse_digraph("DIGRAPH 1 0\nV 0 \n"), FormatError);         // trailing space
    EXPECT_THROW(parse_digraph("DIGRAPH 1 0\nV 00\n"), FormatError);         // non-canonical number
    EXPECT_THROW(parse_digraph("DIGRAPH 2 0\nV 0\n"), FormatError);          // count mismatch
    try {
        parse_digraph("DIGRAPH 2 1\nV 0\nV 1\nA 1 x\n");
        FAIL();
    } catch (const FormatError& e) {
        EXPECT_EQ(e.line(), 4u);
    }
}

}  // namespace
}  // namespace hajos
