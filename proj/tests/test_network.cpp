#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "stakenet/network.hpp"

using namespace stakenet;
using stakenet::testing::make_nodes;
using stakenet::testing::pair_network;
using stakenet::testing::random_network;

namespace {

RelationEdge edge(std::string from, std::string to, int strength,
                  TieType tie = TieType::Unknown, bool conflict = false) {
    RelationEdge e;
    e.from = std::move(from);
    e.to = std::move(to);
    e.strength = Strength(strength);
    e.tie_type = tie;
    e.conflict = conflict;
    return e;
}

StakeholderNode node(std::string id) {
    return {.id = id, .role_name = id};
}

} // namespace

TEST_CASE("build_network validates its input") {
    auto net = build_network({node("A"), node("B")}, {edge("A", "B", 2)}, "p");
    CHECK(net.size() == 2);
    CHECK(net.edges().size() == 1);
    CHECK(net.find_edge("A", "B")->strength.value() == 2);

    CHECK_THROWS_WITH_AS(build_network({node("A")}, {edge("A", "A", 1)}, "p"),
                         doctest::Contains("'A' -> 'A'"), Error);
    CHECK_THROWS_AS(
        build_network({node("A"), node("B")}, {edge("A", "B", 1), edge("A", "B", 2)}, "p"),
        Error);
    CHECK_THROWS_AS(build_network({node("A"), node("A")}, {}, "p"), Error);
    CHECK_THROWS_AS(build_network({node("A")}, {edge("A", "B", 1)}, "p"), Error);

    try {
        build_network({node("A"), node("B")}, {edge("A", "B", 1), edge("A", "B", 2)}, "p");
        FAIL("expected DuplicateEdge");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DuplicateEdge);
    }
}

TEST_CASE("zero-strength edges are rejected") {
    RelationEdge e;
    e.from = "A";
    e.to = "B";
    e.strength = Strength(0);
    try {
        build_network({node("A"), node("B")}, {e}, "p");
        FAIL("expected ZeroStrengthEdge");
    } catch (const Error& err) {
        CHECK(err.kind() == ErrorKind::ZeroStrengthEdge);
    }
    CHECK_THROWS_AS(Strength(4), Error);
    CHECK_THROWS_AS(Strength(-1), Error);
}

TEST_CASE("symmetrize completes single arcs") {
    auto net = build_network({node("A"), node("B")}, {edge("A", "B", 3)}, "p");
    auto sym = symmetrize(net);
    REQUIRE(sym.edges().size() == 2);
    CHECK(sym.find_edge("A", "B")->strength.value() == 3);
    CHECK(sym.find_edge("B", "A")->strength.value() == 3);
}

TEST_CASE("symmetrize takes the max of both directions") {
    auto net = build_network({node("A"), node("B")},
                             {edge("A", "B", 1), edge("B", "A", 3)}, "p");
    auto sym = symmetrize(net);
    CHECK(sym.find_edge("A", "B")->strength.value() == 3);
    CHECK(sym.find_edge("B", "A")->strength.value() == 3);
}

TEST_CASE("symmetrize resolves ties and conflict flags") {
    auto net = build_network({node("A"), node("B"), node("C")},
                             {edge("A", "B", 2, TieType::Authority, true),
                              edge("B", "A", 2, TieType::InfoSharing, false),
                              edge("A", "C", 1, TieType::Authority, false)},
                             "p");
    auto sym = symmetrize(net);
    CHECK(sym.find_edge("A", "B")->tie_type == TieType::Unknown); // disagreement
    CHECK(sym.find_edge("A", "B")->conflict);
    CHECK(sym.find_edge("B", "A")->conflict);
    CHECK(sym.find_edge("C", "A")->tie_type == TieType::Authority); // single side kept
}

TEST_CASE("symmetrize is idempotent and never loses strength or conflicts") {
    std::mt19937 rng(7);
    for (int i = 0; i < 50; ++i) {
        auto net = random_network(rng, 2 + i % 8, 0.4, false);
        auto once = symmetrize(net);
        CHECK(symmetrize(once) == once);
        for (const auto& e : net.edges()) {
            const auto* kept = once.find_edge(e.from, e.to);
            REQUIRE(kept != nullptr);
            CHECK(kept->strength.value() >= e.strength.value());
            if (e.conflict) CHECK(kept->conflict);
        }
    }
}

TEST_CASE("to_sociomatrix lays out labels lexicographically") {
    auto net = build_network({node("B"), node("A")}, {edge("A", "B", 2)}, "p");
    auto m = to_sociomatrix(net);
    CHECK(m.labels == std::vector<std::string>{"A", "B"});
    CHECK(m.cells == std::vector<std::vector<int>>{{0, 2}, {0, 0}});

    auto empty = build_network(make_nodes(3), {}, "p");
    auto zeros = to_sociomatrix(empty);
    for (const auto& row : zeros.cells)
        for (int cell : row) CHECK(cell == 0);
}

TEST_CASE("sociomatrix row and column sums match per-node strength totals") {
    std::mt19937 rng(11);
    for (int i = 0; i < 30; ++i) {
        auto net = random_network(rng, 2 + i % 9, 0.5, false);
        auto m = to_sociomatrix(net);
        for (std::size_t k = 0; k < m.labels.size(); ++k) {
            int out_total = 0, in_total = 0;
            for (const auto& e : net.edges()) {
                if (e.from == m.labels[k]) out_total += e.strength.value();
                if (e.to == m.labels[k]) in_total += e.strength.value();
            }
            int row_sum = 0, col_sum = 0;
            for (std::size_t j = 0; j < m.labels.size(); ++j) {
                row_sum += m.cells[k][j];
                col_sum += m.cells[j][k];
            }
            CHECK(row_sum == out_total);
            CHECK(col_sum == in_total);
        }
    }
}

TEST_CASE("from_sociomatrix validates shape and entries") {
    auto net = from_sociomatrix({"A", "B"}, {{0, 2}, {0, 0}}, "p");
    REQUIRE(net.edges().size() == 1);
    CHECK(net.find_edge("A", "B")->strength.value() == 2);

    try {
        from_sociomatrix({"A", "B"}, {{0, 4}, {0, 0}}, "p");
        FAIL("expected EntryOutOfRange");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::EntryOutOfRange);
    }
    try {
        from_sociomatrix({"A", "B"}, {{1, 0}, {0, 0}}, "p");
        FAIL("expected NonZeroDiagonal");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NonZeroDiagonal);
    }
    try {
        from_sociomatrix({"A", "B"}, {{0, 1}}, "p");
        FAIL("expected NonSquareMatrix");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NonSquareMatrix);
    }
}

TEST_CASE("sociomatrix round-trip preserves ids and strengths") {
    std::mt19937 rng(23);
    for (int i = 0; i < 60; ++i) {
        auto net = random_network(rng, 1 + i % 10, 0.5, false);
        auto m = to_sociomatrix(net);
        auto back = from_sociomatrix(m.labels, m.cells, net.project_id());
        REQUIRE(back.size() == net.size());
        REQUIRE(back.edges().size() == net.edges().size());
        for (const auto& e : net.edges()) {
            const auto* round = back.find_edge(e.from, e.to);
            REQUIRE(round != nullptr);
            CHECK(round->strength.value() == e.strength.value());
        }
    }
}

TEST_CASE("neighbors distinguishes direction") {
    auto net = build_network({node("A"), node("B"), node("C")},
                             {edge("A", "B", 1), edge("C", "A", 1)}, "p");
    CHECK(neighbors(net, "A", NeighborMode::Out) == std::set<std::string>{"B"});
    CHECK(neighbors(net, "A", NeighborMode::In) == std::set<std::string>{"C"});
    CHECK(neighbors(net, "A", NeighborMode::All) == std::set<std::string>{"B", "C"});
    try {
        neighbors(net, "X", NeighborMode::All);
        FAIL("expected UnknownNode");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::UnknownNode);
    }
}
