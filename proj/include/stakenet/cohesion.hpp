#ifndef STAKENET_COHESION_HPP
#define STAKENET_COHESION_HPP

#include <set>
#include <string>
#include <vector>

#include "stakenet/network.hpp"

namespace stakenet {

struct CliqueSet {
    // Each clique sorted lexicographically; the list ordered by size
    // descending, then lexicographically.
    std::vector<std::vector<std::string>> cliques;
};

/// Maximal cliques of the symmetrized view, pivot-based recursive
/// enumeration. min_size starts at the conventional 3 and is only
/// configurable upward.
CliqueSet maximal_cliques(const StakeholderNetwork& net, std::size_t min_size = 3);

/// cell (i,j) = cliques containing both labels[i] and labels[j];
/// diagonal = memberships of labels[i].
std::vector<std::vector<int>> clique_co_membership(const CliqueSet& cliques,
                                                   const std::vector<std::string>& labels);

struct Mediator {
    std::string id;
    bool cut = false; // removal disconnects the remaining graph
    double betweenness_rel = 0.0;
};

/// Nodes with positive betweenness, highest first.
std::vector<Mediator> mediators(const StakeholderNetwork& net);

struct BottleneckEntry {
    std::string id;
    double betweenness_rel = 0.0;
    bool cut = false;
};

/// Top-k nodes by relative betweenness (all nodes when k >= n).
std::vector<BottleneckEntry> bottleneck_ranking(const StakeholderNetwork& net, std::size_t k);

struct FragilityReport {
    std::string removed;
    long long lost_pairs = 0; // pairs reachable before but not after removal
    int components_after = 0;
    std::vector<std::string> newly_isolated;
};

/// Impact of deleting one node and its incident relations, measured on
/// the symmetrized view over pairs that do not involve the removed node.
FragilityReport fragility(const StakeholderNetwork& net, std::string_view id);

/// Nodes whose removal increases the number of connected components of
/// the symmetrized view.
std::set<std::string> articulation_points(const StakeholderNetwork& net);

} // namespace stakenet

#endif
