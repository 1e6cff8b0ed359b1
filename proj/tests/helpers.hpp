#ifndef STAKENET_TEST_HELPERS_HPP
#define STAKENET_TEST_HELPERS_HPP

#include <random>
#include <set>
#include <string>
#include <vector>

#include "stakenet/network.hpp"

namespace stakenet::testing {

inline std::string node_name(std::size_t i) {
    std::string name = "n";
    if (i < 10) name += '0';
    name += std::to_string(i);
    return name;
}

inline std::vector<StakeholderNode> make_nodes(std::size_t n) {
    std::vector<StakeholderNode> nodes;
    nodes.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        nodes.push_back({.id = node_name(i), .role_name = node_name(i)});
    return nodes;
}

/// Network from undirected pair list; every pair becomes one forward arc.
inline StakeholderNetwork
pair_network(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& pairs,
             std::string project_id = "test") {
    std::vector<RelationEdge> edges;
    edges.reserve(pairs.size());
    for (const auto& [u, v] : pairs)
        edges.push_back({.from = node_name(u), .to = node_name(v), .strength = Strength(1)});
    return build_network(make_nodes(n), std::move(edges), std::move(project_id));
}

/// Random directed network. With ensure_connected, a random spanning tree
/// over the symmetrized view is laid down first.
inline StakeholderNetwork random_network(std::mt19937& rng, std::size_t n, double p,
                                         bool ensure_connected) {
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::uniform_int_distribution<int> strength_die(1, 3);
    std::set<std::pair<std::size_t, std::size_t>> arcs;

    if (ensure_connected && n > 1) {
        std::vector<std::size_t> order(n);
        for (std::size_t i = 0; i < n; ++i) order[i] = i;
        std::shuffle(order.begin(), order.end(), rng);
        for (std::size_t i = 1; i < n; ++i) {
            std::uniform_int_distribution<std::size_t> pick(0, i - 1);
            arcs.insert({order[pick(rng)], order[i]});
        }
    }
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v)
            if (coin(rng) < p) {
                if (coin(rng) < 0.5)
                    arcs.insert({u, v});
                else
                    arcs.insert({v, u});
                if (coin(rng) < 0.3) arcs.insert({v, u});
            }

    std::vector<RelationEdge> edges;
    for (const auto& [u, v] : arcs) {
        RelationEdge e;
        e.from = node_name(u);
        e.to = node_name(v);
        e.strength = Strength(strength_die(rng));
        e.tie_type = coin(rng) < 0.4 ? TieType::Authority
                                     : (coin(rng) < 0.5 ? TieType::InfoSharing : TieType::Unknown);
        e.conflict = coin(rng) < 0.1;
        edges.push_back(std::move(e));
    }
    return build_network(make_nodes(n), std::move(edges), "random");
}

/// Brute-force maximal-clique oracle: checks every vertex subset for
/// completeness and maximality. Usable up to n = 12.
inline std::vector<std::vector<std::string>> clique_oracle(const StakeholderNetwork& net,
                                                           std::size_t min_size = 3) {
    const std::size_t n = net.size();
    std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
    for (const auto& e : net.edges()) {
        const auto u = *net.index_of(e.from);
        const auto v = *net.index_of(e.to);
        adj[u][v] = adj[v][u] = 1;
    }

    auto complete = [&](unsigned mask) {
        for (std::size_t u = 0; u < n; ++u)
            for (std::size_t v = u + 1; v < n; ++v)
                if ((mask >> u & 1u) && (mask >> v & 1u) && !adj[u][v]) return false;
        return true;
    };

    std::vector<unsigned> cliques;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        if (static_cast<std::size_t>(__builtin_popcount(mask)) < min_size) continue;
        if (!complete(mask)) continue;
        bool maximal = true;
        for (std::size_t w = 0; w < n && maximal; ++w) {
            if (mask >> w & 1u) continue;
            bool extends = true;
            for (std::size_t u = 0; u < n; ++u)
                if ((mask >> u & 1u) && !adj[w][u]) extends = false;
            if (extends) maximal = false;
        }
        if (maximal) cliques.push_back(mask);
    }

    std::vector<std::vector<std::string>> result;
    for (unsigned mask : cliques) {
        std::vector<std::string> ids;
        for (std::size_t u = 0; u < n; ++u)
            if (mask >> u & 1u) ids.push_back(net.nodes()[u].id);
        std::sort(ids.begin(), ids.end());
        result.push_back(std::move(ids));
    }
    std::sort(result.begin(), result.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() > b.size();
        return a < b;
    });
    return result;
}

} // namespace stakenet::testing

#endif
