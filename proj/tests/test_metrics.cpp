#include <doctest.h>

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "helpers.hpp"
#include "stakenet/metrics.hpp"
#include "stakenet/serialize.hpp"

using namespace stakenet;
using stakenet::testing::pair_network;
using stakenet::testing::random_network;

namespace {

StakeholderNetwork load_fixture_network(const std::string& name) {
    std::ifstream in(std::string(STAKENET_FIXTURE_DIR) + "/" + name, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return network_from_json(nlohmann::json::parse(buffer.str()));
}

/// Hub adjacent to ten mids; two pendants hang off different mids, so both
/// sit at distance 2 from the hub. 13 nodes in total.
StakeholderNetwork star13() {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t mid = 1; mid <= 10; ++mid) pairs.push_back({0, mid});
    pairs.push_back({1, 11});
    pairs.push_back({2, 12});
    return pair_network(13, pairs, "star13");
}

double rel_of(const std::vector<BetweennessScore>& scores, const std::string& id) {
    for (const auto& s : scores)
        if (s.id == id) return s.rel;
    FAIL("missing node ", id);
    return 0.0;
}

const NodeMetrics& row_of(const CentralityReport& report, const std::string& id) {
    for (const auto& row : report.rows)
        if (row.id == id) return row;
    FAIL("missing row ", id);
    static NodeMetrics dummy;
    return dummy;
}

} // namespace

TEST_CASE("geodesic distances by breadth-first search") {
    auto path = pair_network(3, {{0, 1}, {1, 2}});
    auto d = geodesic_distances(path);
    CHECK(d.dist[0][2] == 2);
    CHECK(d.dist[2][0] == 2);
    CHECK(d.dist[0][0] == 0);

    auto triangle = pair_network(3, {{0, 1}, {1, 2}, {0, 2}});
    auto dt = geodesic_distances(triangle);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            CHECK(dt.dist[i][j] == (i == j ? 0 : 1));

    auto split = pair_network(4, {{0, 1}, {2, 3}});
    auto ds = geodesic_distances(split);
    CHECK(ds.dist[0][2] == DistanceMatrix::kUnreachable);
    CHECK_FALSE(ds.reachable(1, 3));
}

TEST_CASE("directed distances respect arc direction") {
    auto net = pair_network(3, {{0, 1}, {1, 2}}); // arcs n00->n01->n02
    auto d = geodesic_distances(net, GraphMode::Directed);
    CHECK(d.dist[0][2] == 2);
    CHECK(d.dist[2][0] == DistanceMatrix::kUnreachable);
}

TEST_CASE("relative degree uses the unordered-pair count over n-1") {
    // 13 nodes, hub with 10 partners
    auto net = star13();
    auto scores = degree_centrality(net);
    CHECK(scores[0].id == "n00");
    CHECK(scores[0].degree_abs == 10);
    CHECK(*scores[0].degree_rel_pct == doctest::Approx(83.333).epsilon(1e-5));

    // 22 nodes, one node with 15 partners
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t v = 1; v <= 15; ++v) pairs.push_back({0, v});
    // keep it connected: chain the remaining nodes off node 1
    for (std::size_t v = 16; v < 22; ++v) pairs.push_back({1, v});
    auto wide = pair_network(22, pairs);
    auto wide_scores = degree_centrality(wide);
    CHECK(wide_scores[0].degree_abs == 15);
    CHECK(*wide_scores[0].degree_rel_pct == doctest::Approx(71.429).epsilon(1e-4));
}

TEST_CASE("degree counts partners once regardless of arc direction") {
    auto net = build_network(stakenet::testing::make_nodes(3),
                             {{.from = "n00", .to = "n01", .strength = Strength(2)},
                              {.from = "n01", .to = "n00", .strength = Strength(1)},
                              {.from = "n02", .to = "n00", .strength = Strength(3)}},
                             "t");
    auto scores = degree_centrality(net);
    CHECK(scores[0].degree_abs == 2); // n01 counted once
    CHECK(scores[1].degree_abs == 1);
    CHECK(scores[2].degree_abs == 1);
}

TEST_CASE("isolated nodes and complete graphs bound the degree range") {
    auto lonely = pair_network(3, {{0, 1}});
    auto scores = degree_centrality(lonely);
    CHECK(scores[2].degree_abs == 0);
    CHECK(*scores[2].degree_rel_pct == 0.0);

    std::vector<std::pair<std::size_t, std::size_t>> k5;
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = i + 1; j < 5; ++j) k5.push_back({i, j});
    for (const auto& s : degree_centrality(pair_network(5, k5))) {
        CHECK(s.degree_abs == 4);
        CHECK(*s.degree_rel_pct == 100.0);
    }
}

TEST_CASE("degree is invariant under symmetrize") {
    std::mt19937 rng(31);
    for (int i = 0; i < 40; ++i) {
        auto net = random_network(rng, 2 + i % 9, 0.4, false);
        auto before = degree_centrality(net);
        auto after = degree_centrality(symmetrize(net));
        for (std::size_t k = 0; k < before.size(); ++k)
            CHECK(before[k].degree_abs == after[k].degree_abs);
    }
}

TEST_CASE("closeness on the reconstruction fixture") {
    auto net = star13();
    auto scores = closeness_centrality(net);
    // hub: ten partners at one step, the two pendants at two
    CHECK(*scores[0].closeness_rel_pct == doctest::Approx(85.714).epsilon(1e-5));
    // pendant n11: farness 1 + 2 + 9*3 + 4 = 34
    CHECK(*scores[11].closeness_rel_pct == doctest::Approx(100.0 * 12 / 34).epsilon(1e-9));
    CHECK(*scores[11].closeness_rel_pct == doctest::Approx(35.3).epsilon(0.002));
}

TEST_CASE("closeness on tiny hand-checked graphs") {
    auto path = pair_network(3, {{0, 1}, {1, 2}});
    auto scores = closeness_centrality(path);
    CHECK(*scores[1].closeness_rel_pct == doctest::Approx(100.0));
    CHECK(*scores[0].closeness_rel_pct == doctest::Approx(100.0 * 2 / 3));

    std::vector<std::pair<std::size_t, std::size_t>> k4;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j) k4.push_back({i, j});
    for (const auto& s : closeness_centrality(pair_network(4, k4)))
        CHECK(*s.closeness_rel_pct == doctest::Approx(100.0));
}

TEST_CASE("closeness is undefined on disconnected networks") {
    auto split = pair_network(4, {{0, 1}, {2, 3}});
    for (const auto& s : closeness_centrality(split))
        CHECK_FALSE(s.closeness_rel_pct.has_value());
}

TEST_CASE("adding an edge never decreases closeness") {
    std::mt19937 rng(47);
    int tested = 0;
    while (tested < 60) {
        auto n = 3 + tested % 7;
        auto net = random_network(rng, static_cast<std::size_t>(n), 0.4, true);
        auto before = closeness_centrality(net);

        // pick an absent unordered pair
        std::uniform_int_distribution<std::size_t> pick(0, net.size() - 1);
        std::size_t u = pick(rng), v = pick(rng);
        if (u == v) continue;
        const auto& a = net.nodes()[u].id;
        const auto& b = net.nodes()[v].id;
        if (net.find_edge(a, b) || net.find_edge(b, a)) continue;

        auto edges = net.edges();
        edges.push_back({.from = a, .to = b, .strength = Strength(1)});
        auto grown = build_network(net.nodes(), edges, net.project_id());
        auto after = closeness_centrality(grown);
        for (std::size_t k = 0; k < before.size(); ++k) {
            REQUIRE(before[k].closeness_rel_pct.has_value());
            CHECK(*after[k].closeness_rel_pct >= *before[k].closeness_rel_pct - 1e-9);
        }
        ++tested;
    }
}

TEST_CASE("betweenness of hand-checked graphs") {
    auto path = pair_network(3, {{0, 1}, {1, 2}});
    auto scores = betweenness_centrality(path);
    CHECK(scores[1].raw == doctest::Approx(1.0));
    CHECK(scores[1].rel == doctest::Approx(0.5));
    CHECK(scores[0].raw == doctest::Approx(0.0));

    std::vector<std::pair<std::size_t, std::size_t>> k4;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j) k4.push_back({i, j});
    for (const auto& s : betweenness_centrality(pair_network(4, k4)))
        CHECK(s.raw == doctest::Approx(0.0));
}

TEST_CASE("enumeration oracle on hand-checked graphs") {
    auto path = pair_network(3, {{0, 1}, {1, 2}});
    auto scores = enumerate_betweenness(path);
    CHECK(scores[1].raw == doctest::Approx(1.0));
    CHECK(scores[0].raw == doctest::Approx(0.0));
    CHECK(scores[2].raw == doctest::Approx(0.0));

    // 4-cycle: opposite corners have two geodesics, each corner carries one
    auto cycle = pair_network(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
    for (const auto& s : enumerate_betweenness(cycle)) CHECK(s.raw == doctest::Approx(0.5));

    CHECK_THROWS_AS(enumerate_betweenness(pair_network(13, {{0, 1}})), Error);
    try {
        enumerate_betweenness(pair_network(13, {{0, 1}}));
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NetworkTooLarge);
    }
}

TEST_CASE("accumulation matches the enumeration oracle") {
    std::mt19937 rng(71);
    const double probabilities[] = {0.3, 0.5, 0.8};
    for (int i = 0; i < 120; ++i) {
        const auto n = 4 + i % 7; // 4..10
        auto net = random_network(rng, static_cast<std::size_t>(n),
                                  probabilities[i % 3], i % 2 == 0);
        for (auto mode : {GraphMode::Symmetrized, GraphMode::Directed}) {
            auto fast = betweenness_centrality(net, mode);
            auto exact = enumerate_betweenness(net, mode);
            for (std::size_t k = 0; k < fast.size(); ++k)
                CHECK(std::abs(fast[k].raw - exact[k].raw) < 1e-9);
        }
    }
}

TEST_CASE("metrics are invariant under relabeling") {
    std::mt19937 rng(83);
    for (int i = 0; i < 30; ++i) {
        auto net = random_network(rng, 3 + i % 8, 0.5, true);

        // relabel n<k> -> m<9-k> to shuffle lexicographic order
        auto rename = [&](const std::string& id) {
            const int k = std::stoi(id.substr(1));
            return "m" + std::to_string(99 - k);
        };
        std::vector<StakeholderNode> nodes;
        for (const auto& node : net.nodes())
            nodes.push_back({.id = rename(node.id), .role_name = rename(node.id)});
        std::vector<RelationEdge> edges;
        for (auto e : net.edges()) {
            e.from = rename(e.from);
            e.to = rename(e.to);
            edges.push_back(std::move(e));
        }
        auto relabeled = build_network(nodes, edges, net.project_id());

        auto original_close = closeness_centrality(net);
        auto relabeled_close = closeness_centrality(relabeled);
        auto original_between = betweenness_centrality(net);
        auto relabeled_between = betweenness_centrality(relabeled);
        auto original_degree = degree_centrality(net);
        auto relabeled_degree = degree_centrality(relabeled);
        for (std::size_t k = 0; k < net.size(); ++k) {
            const auto renamed = rename(net.nodes()[k].id);
            for (std::size_t j = 0; j < net.size(); ++j) {
                if (relabeled_close[j].id != renamed) continue;
                CHECK(*original_close[k].closeness_rel_pct ==
                      doctest::Approx(*relabeled_close[j].closeness_rel_pct));
                CHECK(original_between[k].raw == doctest::Approx(relabeled_between[j].raw));
                CHECK(original_degree[k].degree_abs == relabeled_degree[j].degree_abs);
            }
        }
    }
}

TEST_CASE("report ranks the hub first everywhere") {
    auto report = centrality_report(star13());
    CHECK(report.degree_ranking[0] == "n00");
    CHECK(report.closeness_ranking[0] == "n00");
    CHECK(report.betweenness_ranking[0] == "n00");
    CHECK(row_of(report, "n00").degree_rank == 1);
}

TEST_CASE("project-1-shaped fixture puts the project manager first on all metrics") {
    auto net = load_fixture_network("project1.json");
    REQUIRE(net.size() == 13);
    auto report = centrality_report(net);
    CHECK(report.degree_ranking[0] == "ProjectManager");
    CHECK(report.closeness_ranking[0] == "ProjectManager");
    CHECK(report.betweenness_ranking[0] == "ProjectManager");
    const auto& row = row_of(report, "ProjectManager");
    CHECK(row.degree_abs == 10);
    CHECK(*row.degree_rel_pct == doctest::Approx(83.333).epsilon(1e-4));
}

TEST_CASE("report tie-breaking is lexicographic and ranks are a total order") {
    std::vector<std::pair<std::size_t, std::size_t>> k4;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j) k4.push_back({i, j});
    auto report = centrality_report(pair_network(4, k4));
    CHECK(report.degree_ranking ==
          std::vector<std::string>{"n00", "n01", "n02", "n03"});
    std::set<int> ranks;
    for (const auto& row : report.rows) ranks.insert(row.degree_rank);
    CHECK(ranks.size() == 4);
}

TEST_CASE("two-node report") {
    auto report = centrality_report(pair_network(2, {{0, 1}}));
    for (const auto& row : report.rows) {
        CHECK(*row.degree_rel_pct == doctest::Approx(100.0));
        CHECK(*row.closeness_rel_pct == doctest::Approx(100.0));
        CHECK(row.betweenness_raw == doctest::Approx(0.0));
    }
    CHECK_THROWS_AS(centrality_report(pair_network(1, {})), Error);
}

TEST_CASE("enumeration and accumulation agree on the betweenness total") {
    std::mt19937 rng(97);
    for (int i = 0; i < 20; ++i) {
        auto net = random_network(rng, 4 + i % 6, 0.5, true);
        auto fast = betweenness_centrality(net);
        auto exact = enumerate_betweenness(net);
        double fast_total = 0, exact_total = 0;
        for (std::size_t k = 0; k < fast.size(); ++k) {
            fast_total += fast[k].raw;
            exact_total += exact[k].raw;
        }
        CHECK(std::abs(fast_total - exact_total) < 1e-9);
    }
}
