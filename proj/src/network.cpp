#include "stakenet/network.hpp"

#include <algorithm>
#include <map>
#include <tuple>

namespace stakenet {

const char* to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::DuplicateNodeId: return "DuplicateNodeId";
    case ErrorKind::DanglingEdgeEndpoint: return "DanglingEdgeEndpoint";
    case ErrorKind::SelfLoop: return "SelfLoop";
    case ErrorKind::DuplicateEdge: return "DuplicateEdge";
    case ErrorKind::ZeroStrengthEdge: return "ZeroStrengthEdge";
    case ErrorKind::UnknownNode: return "UnknownNode";
    case ErrorKind::NonSquareMatrix: return "NonSquareMatrix";
    case ErrorKind::EntryOutOfRange: return "EntryOutOfRange";
    case ErrorKind::NonZeroDiagonal: return "NonZeroDiagonal";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::UnknownTieType: return "UnknownTieType";
    case ErrorKind::StrengthOutOfRange: return "StrengthOutOfRange";
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::NetworkTooLarge: return "NetworkTooLarge";
    case ErrorKind::UnmappedRole: return "UnmappedRole";
    case ErrorKind::QuorumExceedsProjects: return "QuorumExceedsProjects";
    case ErrorKind::UnknownPhase: return "UnknownPhase";
    case ErrorKind::InvalidParameter: return "InvalidParameter";
    case ErrorKind::IoError: return "IoError";
    }
    return "Error";
}

const char* to_string(OrgGroup group) {
    switch (group) {
    case OrgGroup::ProjectOrganization: return "ProjectOrganization";
    case OrgGroup::BusinessOrganization: return "BusinessOrganization";
    case OrgGroup::CompanyManagement: return "CompanyManagement";
    }
    return "ProjectOrganization";
}

const char* to_string(TieType tie) {
    switch (tie) {
    case TieType::Authority: return "A";
    case TieType::InfoSharing: return "B";
    case TieType::Unknown: return "unknown";
    }
    return "unknown";
}

std::optional<OrgGroup> parse_org_group(std::string_view text) {
    if (text == "ProjectOrganization") return OrgGroup::ProjectOrganization;
    if (text == "BusinessOrganization") return OrgGroup::BusinessOrganization;
    if (text == "CompanyManagement") return OrgGroup::CompanyManagement;
    return std::nullopt;
}

std::optional<TieType> parse_tie_type(std::string_view text) {
    if (text == "A" || text == "a") return TieType::Authority;
    if (text == "B" || text == "b") return TieType::InfoSharing;
    if (text == "unknown" || text.empty()) return TieType::Unknown;
    return std::nullopt;
}

bool StakeholderNetwork::has_node(std::string_view id) const {
    return index_.find(id) != index_.end();
}

const StakeholderNode& StakeholderNetwork::node(std::string_view id) const {
    auto it = index_.find(id);
    if (it == index_.end()) fail(ErrorKind::UnknownNode, std::string(id));
    return nodes_[it->second];
}

std::optional<std::size_t> StakeholderNetwork::index_of(std::string_view id) const {
    auto it = index_.find(id);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

const RelationEdge* StakeholderNetwork::find_edge(std::string_view from,
                                                  std::string_view to) const {
    auto it = std::lower_bound(edges_.begin(), edges_.end(), std::tie(from, to),
                               [](const RelationEdge& e, const auto& key) {
                                   return std::tie(e.from, e.to) < key;
                               });
    if (it == edges_.end() || it->from != from || it->to != to) return nullptr;
    return &*it;
}

StakeholderNetwork build_network(std::vector<StakeholderNode> nodes,
                                 std::vector<RelationEdge> edges,
                                 std::string project_id) {
    if (nodes.empty()) fail(ErrorKind::EmptyInput, "a network needs at least one node");

    StakeholderNetwork net;
    net.project_id_ = std::move(project_id);

    std::sort(nodes.begin(), nodes.end(),
              [](const StakeholderNode& a, const StakeholderNode& b) { return a.id < b.id; });
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const auto& n = nodes[i];
        if (n.id.empty()) fail(ErrorKind::InvalidParameter, "node with empty id");
        if (n.role_name.empty())
            fail(ErrorKind::InvalidParameter, "node '" + n.id + "' has an empty role name");
        if (!net.index_.emplace(n.id, i).second)
            fail(ErrorKind::DuplicateNodeId, "node '" + n.id + "' defined more than once");
    }

    std::sort(edges.begin(), edges.end(), [](const RelationEdge& a, const RelationEdge& b) {
        return std::tie(a.from, a.to) < std::tie(b.from, b.to);
    });
    for (std::size_t i = 0; i < edges.size(); ++i) {
        auto& e = edges[i];
        if (e.from == e.to)
            fail(ErrorKind::SelfLoop, "edge '" + e.from + "' -> '" + e.to + "'");
        for (const auto* endpoint : {&e.from, &e.to})
            if (!net.index_.count(*endpoint))
                fail(ErrorKind::DanglingEdgeEndpoint, "edge '" + e.from + "' -> '" + e.to +
                                                          "' references unknown node '" +
                                                          *endpoint + "'");
        if (e.strength.value() < 1)
            fail(ErrorKind::ZeroStrengthEdge,
                 "edge '" + e.from + "' -> '" + e.to + "' has strength 0");
        if (i > 0 && edges[i - 1].from == e.from && edges[i - 1].to == e.to)
            fail(ErrorKind::DuplicateEdge, "edge '" + e.from + "' -> '" + e.to + "'");
        std::sort(e.provenance.begin(), e.provenance.end());
        e.provenance.erase(std::unique(e.provenance.begin(), e.provenance.end()),
                           e.provenance.end());
    }

    net.nodes_ = std::move(nodes);
    net.edges_ = std::move(edges);
    return net;
}

namespace {

struct PairAttrs {
    int strength = 0;
    std::vector<TieType> ties;
    bool conflict = false;
    std::string frequency;
    std::vector<std::string> provenance;
};

} // namespace

StakeholderNetwork symmetrize(const StakeholderNetwork& net) {
    std::map<std::pair<std::string, std::string>, PairAttrs> pairs;
    for (const auto& e : net.edges()) {
        auto key = e.from < e.to ? std::make_pair(e.from, e.to) : std::make_pair(e.to, e.from);
        auto& attrs = pairs[key];
        attrs.strength = std::max(attrs.strength, e.strength.value());
        attrs.ties.push_back(e.tie_type);
        attrs.conflict = attrs.conflict || e.conflict;
        if (!e.frequency_label.empty() &&
            (attrs.frequency.empty() || e.frequency_label < attrs.frequency))
            attrs.frequency = e.frequency_label;
        attrs.provenance.insert(attrs.provenance.end(), e.provenance.begin(),
                                e.provenance.end());
    }

    std::vector<RelationEdge> edges;
    edges.reserve(pairs.size() * 2);
    for (auto& [key, attrs] : pairs) {
        TieType tie = attrs.ties.front();
        for (TieType t : attrs.ties)
            if (t != tie) tie = TieType::Unknown;
        for (const auto& [from, to] :
             {std::pair{key.first, key.second}, std::pair{key.second, key.first}}) {
            RelationEdge e;
            e.from = from;
            e.to = to;
            e.strength = Strength(attrs.strength);
            e.tie_type = tie;
            e.conflict = attrs.conflict;
            e.frequency_label = attrs.frequency;
            e.provenance = attrs.provenance;
            edges.push_back(std::move(e));
        }
    }
    return build_network(net.nodes(), std::move(edges), net.project_id());
}

Sociomatrix to_sociomatrix(const StakeholderNetwork& net) {
    Sociomatrix m;
    m.labels.reserve(net.size());
    for (const auto& n : net.nodes()) m.labels.push_back(n.id);
    m.cells.assign(net.size(), std::vector<int>(net.size(), 0));
    for (const auto& e : net.edges())
        m.cells[*net.index_of(e.from)][*net.index_of(e.to)] = e.strength.value();
    return m;
}

StakeholderNetwork from_sociomatrix(const std::vector<std::string>& labels,
                                    const std::vector<std::vector<int>>& matrix,
                                    std::string project_id) {
    const std::size_t n = labels.size();
    if (matrix.size() != n)
        fail(ErrorKind::NonSquareMatrix, std::to_string(matrix.size()) + " rows for " +
                                             std::to_string(n) + " labels");
    for (std::size_t i = 0; i < n; ++i)
        if (matrix[i].size() != n)
            fail(ErrorKind::NonSquareMatrix,
                 "row " + std::to_string(i) + " has " + std::to_string(matrix[i].size()) +
                     " cells, expected " + std::to_string(n));

    std::vector<StakeholderNode> nodes;
    nodes.reserve(n);
    for (const auto& label : labels)
        nodes.push_back({.id = label, .role_name = label});

    std::vector<RelationEdge> edges;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const int value = matrix[i][j];
            if (value < 0 || value > 3)
                fail(ErrorKind::EntryOutOfRange, "cell (" + labels[i] + ", " + labels[j] +
                                                     ") = " + std::to_string(value));
            if (i == j && value != 0)
                fail(ErrorKind::NonZeroDiagonal,
                     "cell (" + labels[i] + ", " + labels[j] + ") = " + std::to_string(value));
            if (value > 0)
                edges.push_back({.from = labels[i], .to = labels[j], .strength = Strength(value)});
        }
    }
    return build_network(std::move(nodes), std::move(edges), std::move(project_id));
}

std::set<std::string> neighbors(const StakeholderNetwork& net, std::string_view id,
                                NeighborMode mode) {
    if (!net.has_node(id)) fail(ErrorKind::UnknownNode, std::string(id));
    std::set<std::string> result;
    for (const auto& e : net.edges()) {
        if (e.from == id && (mode == NeighborMode::Out || mode == NeighborMode::All))
            result.insert(e.to);
        if (e.to == id && (mode == NeighborMode::In || mode == NeighborMode::All))
            result.insert(e.from);
    }
    return result;
}

namespace detail {

std::vector<std::vector<std::size_t>> adjacency(const StakeholderNetwork& net, GraphMode mode) {
    std::vector<std::set<std::size_t>> sets(net.size());
    for (const auto& e : net.edges()) {
        const std::size_t u = *net.index_of(e.from);
        const std::size_t v = *net.index_of(e.to);
        sets[u].insert(v);
        if (mode == GraphMode::Symmetrized) sets[v].insert(u);
    }
    std::vector<std::vector<std::size_t>> adj(net.size());
    for (std::size_t i = 0; i < net.size(); ++i) adj[i].assign(sets[i].begin(), sets[i].end());
    return adj;
}

} // namespace detail

} // namespace stakenet
