#include "stakenet/cohesion.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>

#include "stakenet/metrics.hpp"

namespace stakenet {

namespace {

using IndexList = std::vector<std::size_t>;

struct CliqueFinder {
    const std::vector<std::vector<char>>& adj; // symmetric adjacency matrix
    std::size_t min_size;
    std::vector<IndexList> found;

    void expand(IndexList& r, IndexList p, IndexList x) {
        if (p.empty() && x.empty()) {
            if (r.size() >= min_size) found.push_back(r);
            return;
        }
        // Pivot: the candidate or excluded vertex covering most of P.
        std::size_t pivot = p.empty() ? x.front() : p.front();
        std::size_t best_cover = 0;
        for (const auto* pool : {&p, &x}) {
            for (std::size_t u : *pool) {
                std::size_t cover = 0;
                for (std::size_t v : p)
                    if (adj[u][v]) ++cover;
                if (cover > best_cover) {
                    best_cover = cover;
                    pivot = u;
                }
            }
        }

        IndexList branch;
        for (std::size_t v : p)
            if (!adj[pivot][v]) branch.push_back(v);

        for (std::size_t v : branch) {
            IndexList next_p, next_x;
            for (std::size_t u : p)
                if (adj[v][u]) next_p.push_back(u);
            for (std::size_t u : x)
                if (adj[v][u]) next_x.push_back(u);
            r.push_back(v);
            expand(r, std::move(next_p), std::move(next_x));
            r.pop_back();
            p.erase(std::find(p.begin(), p.end(), v));
            x.push_back(v);
        }
    }
};

std::vector<std::vector<char>> adjacency_matrix(const StakeholderNetwork& net) {
    std::vector<std::vector<char>> adj(net.size(), std::vector<char>(net.size(), 0));
    for (const auto& e : net.edges()) {
        const std::size_t u = *net.index_of(e.from);
        const std::size_t v = *net.index_of(e.to);
        adj[u][v] = adj[v][u] = 1;
    }
    return adj;
}

std::vector<int> component_labels(const std::vector<std::vector<std::size_t>>& adj,
                                  const std::vector<char>& removed) {
    std::vector<int> comp(adj.size(), -1);
    int label = 0;
    for (std::size_t s = 0; s < adj.size(); ++s) {
        if (removed[s] || comp[s] >= 0) continue;
        std::deque<std::size_t> queue{s};
        comp[s] = label;
        while (!queue.empty()) {
            const std::size_t u = queue.front();
            queue.pop_front();
            for (std::size_t v : adj[u]) {
                if (removed[v] || comp[v] >= 0) continue;
                comp[v] = label;
                queue.push_back(v);
            }
        }
        ++label;
    }
    return comp;
}

long long reachable_pairs(const std::vector<int>& comp, const std::vector<char>& skip) {
    std::map<int, long long> sizes;
    for (std::size_t i = 0; i < comp.size(); ++i)
        if (!skip[i] && comp[i] >= 0) ++sizes[comp[i]];
    long long pairs = 0;
    for (const auto& [label, size] : sizes) pairs += size * (size - 1) / 2;
    return pairs;
}

} // namespace

CliqueSet maximal_cliques(const StakeholderNetwork& net, std::size_t min_size) {
    if (min_size < 3)
        fail(ErrorKind::InvalidParameter, "minimum clique size is 3, got " +
                                              std::to_string(min_size));
    CliqueFinder finder{adjacency_matrix(net), min_size, {}};
    IndexList r, p, x;
    for (std::size_t i = 0; i < net.size(); ++i) p.push_back(i);
    finder.expand(r, std::move(p), std::move(x));

    CliqueSet result;
    result.cliques.reserve(finder.found.size());
    for (auto& clique : finder.found) {
        std::vector<std::string> ids;
        ids.reserve(clique.size());
        for (std::size_t v : clique) ids.push_back(net.nodes()[v].id);
        std::sort(ids.begin(), ids.end());
        result.cliques.push_back(std::move(ids));
    }
    std::sort(result.cliques.begin(), result.cliques.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() > b.size();
        return a < b;
    });
    return result;
}

std::vector<std::vector<int>> clique_co_membership(const CliqueSet& cliques,
                                                   const std::vector<std::string>& labels) {
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < labels.size(); ++i) index[labels[i]] = i;

    std::vector<std::vector<int>> matrix(labels.size(), std::vector<int>(labels.size(), 0));
    for (const auto& clique : cliques.cliques) {
        for (const auto& a : clique) {
            auto ia = index.find(a);
            if (ia == index.end()) fail(ErrorKind::UnknownNode, a);
            for (const auto& b : clique) {
                matrix[ia->second][index.at(b)] += 1; // diagonal counts memberships
            }
        }
    }
    return matrix;
}

std::set<std::string> articulation_points(const StakeholderNetwork& net) {
    const auto adj = detail::adjacency(net, GraphMode::Symmetrized);
    const std::size_t n = net.size();
    std::vector<int> discovery(n, -1), low(n, 0);
    std::vector<char> is_cut(n, 0);
    int timer = 0;

    // Tarjan lowlink over every component.
    std::function<void(std::size_t, std::size_t)> dfs = [&](std::size_t u, std::size_t parent) {
        discovery[u] = low[u] = timer++;
        std::size_t children = 0;
        for (std::size_t v : adj[u]) {
            if (v == parent && parent != n) continue;
            if (discovery[v] >= 0) {
                low[u] = std::min(low[u], discovery[v]);
                continue;
            }
            ++children;
            dfs(v, u);
            low[u] = std::min(low[u], low[v]);
            if (parent != n && low[v] >= discovery[u]) is_cut[u] = 1;
        }
        if (parent == n && children > 1) is_cut[u] = 1;
    };
    for (std::size_t s = 0; s < n; ++s)
        if (discovery[s] < 0) dfs(s, n);

    std::set<std::string> result;
    for (std::size_t i = 0; i < n; ++i)
        if (is_cut[i]) result.insert(net.nodes()[i].id);
    return result;
}

std::vector<Mediator> mediators(const StakeholderNetwork& net) {
    const auto betweenness = betweenness_centrality(net, GraphMode::Symmetrized);
    const auto cuts = articulation_points(net);

    std::vector<Mediator> result;
    for (const auto& score : betweenness) {
        if (score.raw <= 0.0) continue;
        result.push_back({score.id, cuts.count(score.id) > 0, score.rel});
    }
    std::sort(result.begin(), result.end(), [](const Mediator& a, const Mediator& b) {
        if (a.betweenness_rel != b.betweenness_rel) return a.betweenness_rel > b.betweenness_rel;
        return a.id < b.id;
    });
    return result;
}

std::vector<BottleneckEntry> bottleneck_ranking(const StakeholderNetwork& net, std::size_t k) {
    if (k < 1) fail(ErrorKind::InvalidParameter, "k must be >= 1");
    const auto betweenness = betweenness_centrality(net, GraphMode::Symmetrized);
    const auto cuts = articulation_points(net);

    std::vector<BottleneckEntry> entries;
    entries.reserve(betweenness.size());
    for (const auto& score : betweenness)
        entries.push_back({score.id, score.rel, cuts.count(score.id) > 0});
    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
        if (a.betweenness_rel != b.betweenness_rel) return a.betweenness_rel > b.betweenness_rel;
        return a.id < b.id;
    });
    if (entries.size() > k) entries.resize(k);
    return entries;
}

FragilityReport fragility(const StakeholderNetwork& net, std::string_view id) {
    const auto removed_index = net.index_of(id);
    if (!removed_index) fail(ErrorKind::UnknownNode, std::string(id));
    if (net.size() < 2)
        fail(ErrorKind::InvalidParameter, "fragility needs at least 2 nodes");

    const auto adj = detail::adjacency(net, GraphMode::Symmetrized);
    const std::size_t n = net.size();

    std::vector<char> nobody(n, 0), only_removed(n, 0);
    only_removed[*removed_index] = 1;

    const auto before = component_labels(adj, nobody);
    const auto after = component_labels(adj, only_removed);

    FragilityReport report;
    report.removed = std::string(id);
    report.lost_pairs = reachable_pairs(before, only_removed) - reachable_pairs(after, only_removed);

    int components = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (!only_removed[i]) components = std::max(components, after[i] + 1);
    report.components_after = components;

    for (std::size_t i = 0; i < n; ++i) {
        if (only_removed[i] || adj[i].empty()) continue;
        bool still_connected = false;
        for (std::size_t v : adj[i])
            if (v != *removed_index) still_connected = true;
        if (!still_connected) report.newly_isolated.push_back(net.nodes()[i].id);
    }
    return report;
}

} // namespace stakenet
