#ifndef STAKENET_NETWORK_HPP
#define STAKENET_NETWORK_HPP

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "stakenet/errors.hpp"

namespace stakenet {

enum class OrgGroup {
    ProjectOrganization,
    BusinessOrganization,
    CompanyManagement,
};

enum class TieType {
    Authority,   // "A": one side has formal authority over the other
    InfoSharing, // "B": peers exchanging information
    Unknown,
};

const char* to_string(OrgGroup group);
const char* to_string(TieType tie);
std::optional<OrgGroup> parse_org_group(std::string_view text);
std::optional<TieType> parse_tie_type(std::string_view text);

/// Influence strength on the 0..3 scale. 0 means "no influence" and is
/// never stored on a network edge.
class Strength {
public:
    Strength() = default;
    explicit Strength(int value) : value_(value) {
        if (value < 0 || value > 3)
            fail(ErrorKind::StrengthOutOfRange,
                 "strength " + std::to_string(value) + " outside 0..3");
    }

    int value() const { return value_; }
    auto operator<=>(const Strength&) const = default;

private:
    int value_ = 0;
};

struct StakeholderNode {
    std::string id;        // role token, unique within a network
    std::string role_name; // display text, e.g. "Project Manager"
    OrgGroup org_group = OrgGroup::ProjectOrganization;
    std::optional<std::string> canonical_role;
    std::string notes;

    friend bool operator==(const StakeholderNode&, const StakeholderNode&) = default;
};

/// One directed influence relation: `from` influences `to`.
struct RelationEdge {
    std::string from;
    std::string to;
    Strength strength{1};
    TieType tie_type = TieType::Unknown;
    bool conflict = false;
    std::string frequency_label;          // opaque interview text, e.g. "weekly"
    std::vector<std::string> provenance;  // interviewee ids, kept sorted

    friend bool operator==(const RelationEdge&, const RelationEdge&) = default;
};

/// Which view analysis operates on.
enum class GraphMode { Symmetrized, Directed };

/// How several reported strengths for the same relation are combined.
enum class StrengthRule { Max, MedianLow };

struct Sociomatrix {
    std::vector<std::string> labels;     // node ids, lexicographic
    std::vector<std::vector<int>> cells; // cells[i][j] = strength of labels[i] -> labels[j]
};

enum class NeighborMode { Out, In, All };

/// Immutable directed weighted graph over role-identified stakeholders.
/// Construct through build_network(); all operations are pure reads, so
/// instances can be shared across threads freely.
class StakeholderNetwork {
public:
    StakeholderNetwork() = default;

    const std::vector<StakeholderNode>& nodes() const { return nodes_; } // sorted by id
    const std::vector<RelationEdge>& edges() const { return edges_; }   // sorted by (from, to)
    const std::string& project_id() const { return project_id_; }
    std::size_t size() const { return nodes_.size(); }

    bool has_node(std::string_view id) const;
    const StakeholderNode& node(std::string_view id) const; // throws UnknownNode
    std::optional<std::size_t> index_of(std::string_view id) const;
    const RelationEdge* find_edge(std::string_view from, std::string_view to) const;

    friend bool operator==(const StakeholderNetwork&, const StakeholderNetwork&) = default;

private:
    friend StakeholderNetwork build_network(std::vector<StakeholderNode> nodes,
                                            std::vector<RelationEdge> edges,
                                            std::string project_id);

    std::string project_id_;
    std::vector<StakeholderNode> nodes_;
    std::vector<RelationEdge> edges_;
    std::map<std::string, std::size_t, std::less<>> index_;
};

/// Validates and assembles a network. Throws DuplicateNodeId,
/// DanglingEdgeEndpoint, SelfLoop, DuplicateEdge or ZeroStrengthEdge,
/// naming the offending element.
StakeholderNetwork build_network(std::vector<StakeholderNode> nodes,
                                 std::vector<RelationEdge> edges,
                                 std::string project_id);

/// Completes every relation in both directions: each direction gets the
/// max of the two original strengths, tie type is kept only when both
/// directions agree, conflict flags are OR-ed. Idempotent.
StakeholderNetwork symmetrize(const StakeholderNetwork& net);

/// Labels sorted lexicographically; cell (i,j) = strength of i->j, 0 when absent.
Sociomatrix to_sociomatrix(const StakeholderNetwork& net);

StakeholderNetwork from_sociomatrix(const std::vector<std::string>& labels,
                                    const std::vector<std::vector<int>>& matrix,
                                    std::string project_id);

std::set<std::string> neighbors(const StakeholderNetwork& net, std::string_view id,
                                NeighborMode mode);

namespace detail {
/// Adjacency lists as node indices. Symmetrized mode unions arcs into
/// undirected neighbor sets; Directed keeps out-neighbors only.
std::vector<std::vector<std::size_t>> adjacency(const StakeholderNetwork& net, GraphMode mode);
} // namespace detail

} // namespace stakenet

#endif
