#include "stakenet/metrics.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <set>

#include <boost/multiprecision/cpp_int.hpp>

namespace stakenet {

namespace {

using Rational = boost::multiprecision::cpp_rational;

std::vector<int> bfs_hops(const std::vector<std::vector<std::size_t>>& adj, std::size_t source) {
    std::vector<int> dist(adj.size(), DistanceMatrix::kUnreachable);
    std::deque<std::size_t> queue{source};
    dist[source] = 0;
    while (!queue.empty()) {
        const std::size_t u = queue.front();
        queue.pop_front();
        for (std::size_t v : adj[u]) {
            if (dist[v] != DistanceMatrix::kUnreachable) continue;
            dist[v] = dist[u] + 1;
            queue.push_back(v);
        }
    }
    return dist;
}

} // namespace

DistanceMatrix geodesic_distances(const StakeholderNetwork& net, GraphMode mode) {
    const auto adj = detail::adjacency(net, mode);
    DistanceMatrix m;
    m.labels.reserve(net.size());
    for (const auto& n : net.nodes()) m.labels.push_back(n.id);
    m.dist.reserve(net.size());
    for (std::size_t s = 0; s < net.size(); ++s) m.dist.push_back(bfs_hops(adj, s));
    return m;
}

std::vector<DegreeScore> degree_centrality(const StakeholderNetwork& net) {
    const std::size_t n = net.size();
    std::vector<int> degree(n, 0);
    std::set<std::pair<std::size_t, std::size_t>> pairs;
    for (const auto& e : net.edges()) {
        auto u = *net.index_of(e.from);
        auto v = *net.index_of(e.to);
        if (u > v) std::swap(u, v);
        pairs.insert({u, v});
    }
    for (const auto& [u, v] : pairs) {
        ++degree[u];
        ++degree[v];
    }

    std::vector<DegreeScore> scores;
    scores.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        DegreeScore s;
        s.id = net.nodes()[i].id;
        s.degree_abs = degree[i];
        if (n >= 2) s.degree_rel_pct = 100.0 * degree[i] / static_cast<double>(n - 1);
        scores.push_back(std::move(s));
    }
    return scores;
}

std::vector<ClosenessScore> closeness_centrality(const StakeholderNetwork& net, GraphMode mode) {
    const auto adj = detail::adjacency(net, mode);
    const std::size_t n = net.size();
    std::vector<ClosenessScore> scores;
    scores.reserve(n);
    for (std::size_t s = 0; s < n; ++s) {
        const auto dist = bfs_hops(adj, s);
        long long farness = 0;
        bool defined = n >= 2;
        for (std::size_t t = 0; t < n; ++t) {
            if (t == s) continue;
            if (dist[t] == DistanceMatrix::kUnreachable) {
                defined = false;
                break;
            }
            farness += dist[t];
        }
        ClosenessScore score;
        score.id = net.nodes()[s].id;
        if (defined) score.closeness_rel_pct = 100.0 * static_cast<double>(n - 1) / farness;
        scores.push_back(std::move(score));
    }
    return scores;
}

std::vector<BetweennessScore> betweenness_centrality(const StakeholderNetwork& net,
                                                     GraphMode mode) {
    const auto adj = detail::adjacency(net, mode);
    const std::size_t n = net.size();
    std::vector<double> raw(n, 0.0);

    // Brandes-style accumulation: one BFS per source, dependencies pushed
    // back along predecessor links in reverse BFS order.
    std::vector<int> dist(n);
    std::vector<double> sigma(n), delta(n);
    std::vector<std::vector<std::size_t>> preds(n);
    for (std::size_t s = 0; s < n; ++s) {
        std::fill(dist.begin(), dist.end(), -1);
        std::fill(sigma.begin(), sigma.end(), 0.0);
        std::fill(delta.begin(), delta.end(), 0.0);
        for (auto& p : preds) p.clear();

        std::vector<std::size_t> order;
        std::deque<std::size_t> queue{s};
        dist[s] = 0;
        sigma[s] = 1.0;
        while (!queue.empty()) {
            const std::size_t u = queue.front();
            queue.pop_front();
            order.push_back(u);
            for (std::size_t v : adj[u]) {
                if (dist[v] < 0) {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
                if (dist[v] == dist[u] + 1) {
                    sigma[v] += sigma[u];
                    preds[v].push_back(u);
                }
            }
        }
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            const std::size_t w = *it;
            for (std::size_t p : preds[w])
                delta[p] += sigma[p] / sigma[w] * (1.0 + delta[w]);
            if (w != s) raw[w] += delta[w];
        }
    }

    const double pair_factor = mode == GraphMode::Symmetrized ? 0.5 : 1.0;
    std::vector<BetweennessScore> scores;
    scores.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        BetweennessScore score;
        score.id = net.nodes()[i].id;
        score.raw = raw[i] * pair_factor;
        score.rel = n >= 2 ? score.raw / static_cast<double>(n - 1) : 0.0;
        scores.push_back(std::move(score));
    }
    return scores;
}

namespace {

/// All shortest simple paths from s to t by depth-first search with a
/// shrinking length bound; no breadth-first machinery shared with the
/// accumulation algorithm above.
struct PathEnumerator {
    const std::vector<std::vector<std::size_t>>& adj;
    std::size_t target;
    int best;
    std::vector<std::vector<std::size_t>> paths;
    std::vector<std::size_t> trail;
    std::vector<char> visited;

    PathEnumerator(const std::vector<std::vector<std::size_t>>& adj_, std::size_t target_)
        : adj(adj_), target(target_), best(static_cast<int>(adj_.size())),
          visited(adj_.size(), 0) {}

    void dfs(std::size_t u, int depth) {
        if (u == target) {
            if (depth < best) {
                best = depth;
                paths.clear();
            }
            if (depth == best) paths.push_back(trail);
            return;
        }
        if (depth + 1 > best) return;
        visited[u] = 1;
        trail.push_back(u);
        for (std::size_t v : adj[u])
            if (!visited[v]) dfs(v, depth + 1);
        trail.pop_back();
        visited[u] = 0;
    }
};

} // namespace

std::vector<BetweennessScore> enumerate_betweenness(const StakeholderNetwork& net,
                                                    GraphMode mode) {
    const std::size_t n = net.size();
    if (n > 12)
        fail(ErrorKind::NetworkTooLarge,
             "path enumeration is limited to 12 nodes, got " + std::to_string(n));

    const auto adj = detail::adjacency(net, mode);
    std::vector<Rational> raw(n, Rational(0));
    for (std::size_t s = 0; s < n; ++s) {
        for (std::size_t t = 0; t < n; ++t) {
            if (s == t) continue;
            if (mode == GraphMode::Symmetrized && s > t) continue; // unordered pairs once
            PathEnumerator walker(adj, t);
            walker.dfs(s, 0);
            if (walker.paths.empty()) continue; // unreachable pair contributes nothing
            const auto total = static_cast<std::int64_t>(walker.paths.size());
            std::vector<std::int64_t> through(n, 0);
            for (const auto& path : walker.paths)
                for (std::size_t i = 1; i < path.size(); ++i) // interior nodes only
                    ++through[path[i]];
            for (std::size_t v = 0; v < n; ++v)
                if (through[v] > 0) raw[v] += Rational(through[v], total);
        }
    }

    std::vector<BetweennessScore> scores;
    scores.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        BetweennessScore score;
        score.id = net.nodes()[i].id;
        score.raw = raw[i].convert_to<double>();
        score.rel = n >= 2 ? score.raw / static_cast<double>(n - 1) : 0.0;
        scores.push_back(std::move(score));
    }
    return scores;
}

namespace {

template <typename Value>
std::vector<std::string> ranking_of(const std::vector<std::string>& ids,
                                    const std::vector<Value>& values) {
    std::vector<std::size_t> order(ids.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (values[a] != values[b]) return values[a] > values[b];
        return ids[a] < ids[b];
    });
    std::vector<std::string> ranking;
    ranking.reserve(ids.size());
    for (std::size_t i : order) ranking.push_back(ids[i]);
    return ranking;
}

} // namespace

CentralityReport centrality_report(const StakeholderNetwork& net, GraphMode mode) {
    if (net.size() < 2)
        fail(ErrorKind::InvalidParameter, "centrality report requires at least 2 nodes");

    const auto degrees = degree_centrality(net);
    const auto closeness = closeness_centrality(net, mode);
    const auto betweenness = betweenness_centrality(net, mode);
    const std::size_t n = net.size();

    std::vector<std::string> ids(n);
    std::vector<int> degree_values(n);
    std::vector<double> closeness_values(n), betweenness_values(n);
    for (std::size_t i = 0; i < n; ++i) {
        ids[i] = degrees[i].id;
        degree_values[i] = degrees[i].degree_abs;
        closeness_values[i] = closeness[i].closeness_rel_pct.value_or(-1.0);
        betweenness_values[i] = betweenness[i].rel;
    }

    CentralityReport report;
    report.project_id = net.project_id();
    report.degree_ranking = ranking_of(ids, degree_values);
    report.closeness_ranking = ranking_of(ids, closeness_values);
    report.betweenness_ranking = ranking_of(ids, betweenness_values);

    std::map<std::string, int> degree_rank, closeness_rank, betweenness_rank;
    for (std::size_t i = 0; i < n; ++i) {
        degree_rank[report.degree_ranking[i]] = static_cast<int>(i + 1);
        closeness_rank[report.closeness_ranking[i]] = static_cast<int>(i + 1);
        betweenness_rank[report.betweenness_ranking[i]] = static_cast<int>(i + 1);
    }

    report.rows.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        NodeMetrics row;
        row.id = ids[i];
        row.degree_abs = degrees[i].degree_abs;
        row.degree_rel_pct = degrees[i].degree_rel_pct;
        row.closeness_rel_pct = closeness[i].closeness_rel_pct;
        row.betweenness_raw = betweenness[i].raw;
        row.betweenness_rel = betweenness[i].rel;
        row.degree_rank = degree_rank[row.id];
        row.closeness_rank = closeness_rank[row.id];
        row.betweenness_rank = betweenness_rank[row.id];
        report.rows.push_back(std::move(row));
    }
    return report;
}

} // namespace stakenet
