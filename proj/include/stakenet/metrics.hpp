#ifndef STAKENET_METRICS_HPP
#define STAKENET_METRICS_HPP

#include <optional>
#include <string>
#include <vector>

#include "stakenet/network.hpp"

namespace stakenet {

struct DistanceMatrix {
    static constexpr int kUnreachable = -1;

    std::vector<std::string> labels;
    std::vector<std::vector<int>> dist; // hop counts, kUnreachable where no path exists

    bool reachable(std::size_t i, std::size_t j) const { return dist[i][j] != kUnreachable; }
};

/// Hop-count shortest distances, one BFS per source.
DistanceMatrix geodesic_distances(const StakeholderNetwork& net,
                                  GraphMode mode = GraphMode::Symmetrized);

struct DegreeScore {
    std::string id;
    int degree_abs = 0; // distinct partners, arc direction ignored
    std::optional<double> degree_rel_pct; // 100 * degree_abs / (n-1); empty when n < 2
};

std::vector<DegreeScore> degree_centrality(const StakeholderNetwork& net);

struct ClosenessScore {
    std::string id;
    // 100 * (n-1) / farness; empty when some node is unreachable.
    std::optional<double> closeness_rel_pct;
};

std::vector<ClosenessScore> closeness_centrality(const StakeholderNetwork& net,
                                                 GraphMode mode = GraphMode::Symmetrized);

struct BetweennessScore {
    std::string id;
    double raw = 0.0; // sum over pairs of the geodesic fraction through this node
    double rel = 0.0; // raw / (n-1)
};

/// Single-source dependency accumulation over all sources.
std::vector<BetweennessScore> betweenness_centrality(const StakeholderNetwork& net,
                                                     GraphMode mode = GraphMode::Symmetrized);

/// Verification oracle: enumerates every shortest path explicitly and
/// accumulates pair fractions in exact rational arithmetic. Limited to
/// n <= 12 nodes (throws NetworkTooLarge beyond that).
std::vector<BetweennessScore> enumerate_betweenness(const StakeholderNetwork& net,
                                                    GraphMode mode = GraphMode::Symmetrized);

struct NodeMetrics {
    std::string id;
    int degree_abs = 0;
    std::optional<double> degree_rel_pct;
    std::optional<double> closeness_rel_pct;
    double betweenness_raw = 0.0;
    double betweenness_rel = 0.0;
    int degree_rank = 0;
    int closeness_rank = 0;
    int betweenness_rank = 0;
};

struct CentralityReport {
    std::string project_id;
    std::vector<NodeMetrics> rows; // sorted by node id
    // Node ids in descending metric order; ties broken lexicographically.
    std::vector<std::string> degree_ranking;
    std::vector<std::string> closeness_ranking;
    std::vector<std::string> betweenness_ranking;
};

/// All three centralities plus total-order rankings. Requires n >= 2.
CentralityReport centrality_report(const StakeholderNetwork& net,
                                   GraphMode mode = GraphMode::Symmetrized);

} // namespace stakenet

#endif
