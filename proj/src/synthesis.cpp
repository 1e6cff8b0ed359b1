#include "stakenet/synthesis.hpp"

#include <algorithm>

#include <json.hpp>

#include "internal_util.hpp"
#include "stakenet/ingest.hpp"

namespace stakenet {

void RoleAliasTable::add(std::string_view raw_name, std::string_view canonical_role) {
    const std::string key = normalize_role(raw_name);
    const std::string value(util::trim(canonical_role));
    if (key.empty() || value.empty())
        fail(ErrorKind::InvalidParameter, "alias entries need both a raw and a canonical name");
    mapping_[key] = value;
}

std::optional<std::string> RoleAliasTable::lookup(std::string_view raw_name) const {
    auto it = mapping_.find(normalize_role(raw_name));
    if (it == mapping_.end()) return std::nullopt;
    return it->second;
}

const std::vector<std::string>& canonical_roles() {
    static const std::vector<std::string> roles = {
        "BusinessOwner",   "CompanyManagement", "DeploymentManager", "DevelopmentTeam",
        "IntegrationTeam", "KeyUsers",          "ProcessOwner",      "ProgramManager",
        "ProjectManager",  "SolutionOwner",     "SteeringGroup",     "TechnicalTeam",
        "TrainingTeam",    "Users",
    };
    return roles;
}

OrgGroup org_group_for_role(std::string_view canonical_role) {
    static const std::map<std::string, OrgGroup, std::less<>> groups = {
        {"ProgramManager", OrgGroup::ProjectOrganization},
        {"ProjectManager", OrgGroup::ProjectOrganization},
        {"SolutionOwner", OrgGroup::ProjectOrganization},
        {"DevelopmentTeam", OrgGroup::ProjectOrganization},
        {"TechnicalTeam", OrgGroup::ProjectOrganization},
        {"IntegrationTeam", OrgGroup::ProjectOrganization},
        {"TrainingTeam", OrgGroup::ProjectOrganization},
        {"DeploymentManager", OrgGroup::ProjectOrganization},
        {"BusinessOwner", OrgGroup::BusinessOrganization},
        {"ProcessOwner", OrgGroup::BusinessOrganization},
        {"KeyUsers", OrgGroup::BusinessOrganization},
        {"Users", OrgGroup::BusinessOrganization},
        {"SteeringGroup", OrgGroup::CompanyManagement},
        {"CompanyManagement", OrgGroup::CompanyManagement},
    };
    auto it = groups.find(canonical_role);
    return it == groups.end() ? OrgGroup::ProjectOrganization : it->second;
}

RoleAliasTable RoleAliasTable::defaults() {
    RoleAliasTable table;
    for (const auto& role : canonical_roles()) table.add(role, role);

    static const std::pair<const char*, const char*> entries[] = {
        // service-company project
        {"Project Manager", "ProjectManager"},
        {"Program Steering Group", "SteeringGroup"},
        {"Vice President", "CompanyManagement"},
        {"Business Organization Mgr", "BusinessOwner"},
        {"Process Owner", "ProcessOwner"},
        {"Program Manager", "ProgramManager"},
        {"Board", "CompanyManagement"},
        {"Development Team", "DevelopmentTeam"},
        {"Technical Team", "TechnicalTeam"},
        {"Integration Team", "IntegrationTeam"},
        {"Local Specialists", "KeyUsers"},
        {"Key Users", "KeyUsers"},
        // process-industry project
        {"Business Process Owner", "ProcessOwner"},
        {"Program Mgr", "ProgramManager"},
        {"Global Rollout Mgr", "DeploymentManager"},
        {"Global Project Mgr", "ProjectManager"},
        {"Technical Mgr", "TechnicalTeam"},
        {"Local Steering Group", "SteeringGroup"},
        {"Global Training & Docum.", "TrainingTeam"},
        {"Local Training & Docum.", "TrainingTeam"},
        {"Local Project Mgr", "ProjectManager"},
        {"Solution Owner", "SolutionOwner"},
        {"Local Business Specialists", "KeyUsers"},
        {"Global Steering Group", "SteeringGroup"},
        {"Financial Services", "BusinessOwner"},
        {"Controller Community", "KeyUsers"},
        {"Group Controller", "CompanyManagement"},
        {"Financial Mgmt", "CompanyManagement"},
        {"PMO", "ProgramManager"},
        {"PMO Owner Group", "SteeringGroup"},
        {"IFRS Team", "BusinessOwner"},
        // hi-tech manufacturing project
        {"Business Deployment Mgr", "DeploymentManager"},
        {"Business Owner", "BusinessOwner"},
        {"Business Owner 1", "BusinessOwner"},
        {"Business Owner 2", "BusinessOwner"},
        {"Business Owner 3", "BusinessOwner"},
        {"Business Owner 4", "BusinessOwner"},
        {"Sub-process Owner", "ProcessOwner"},
        {"Integration Manager", "IntegrationTeam"},
        {"Other Line Org Stakeholders", "Users"},
        {"Regional Solution Owner", "SolutionOwner"},
        {"Country Manager", "CompanyManagement"},
        {"CIO", "CompanyManagement"},
        {"CFO", "CompanyManagement"},
        {"CEO", "CompanyManagement"},
        {"FI & Co Project manager", "ProjectManager"},
        {"Configuration Team", "TechnicalTeam"},
        {"Program Mgmt Office", "ProgramManager"},
        {"Operative Board", "CompanyManagement"},
        // common variants
        {"Steering Group", "SteeringGroup"},
        {"Deployment Manager", "DeploymentManager"},
        {"Training Team", "TrainingTeam"},
        {"Deployment Team", "DeploymentManager"},
    };
    for (const auto& [raw, canonical] : entries) table.add(raw, canonical);
    return table;
}

RoleAliasTable RoleAliasTable::from_csv(std::string_view content) {
    RoleAliasTable table;
    const auto lines = util::split_lines(content);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::string_view line = util::trim(lines[i]);
        if (line.empty() || line.front() == '#') continue;
        const auto fields = util::split_csv_line(line);
        if (fields.size() != 2)
            fail(ErrorKind::ParseError,
                 "line " + std::to_string(i + 1) + ": expected 'raw_name,canonical_role'");
        if (normalize_role(fields[0]) == "raw_name") continue; // optional header
        table.add(fields[0], fields[1]);
    }
    if (table.mapping().empty()) fail(ErrorKind::EmptyInput, "alias table is empty");
    return table;
}

namespace {

struct MergedEdge {
    int strength = 0;
    std::vector<TieType> ties;
    bool conflict = false;
    std::string frequency;
    std::vector<std::string> provenance;
};

TieType unanimous_tie(const std::vector<TieType>& ties) {
    if (ties.empty()) return TieType::Unknown;
    for (TieType t : ties)
        if (t != ties.front()) return TieType::Unknown;
    return ties.front();
}

} // namespace

StakeholderNetwork canonicalize_roles(const StakeholderNetwork& net,
                                      const RoleAliasTable& aliases,
                                      std::vector<std::string>* warnings) {
    std::map<std::string, std::string> canon_of; // node id -> canonical role
    for (const auto& node : net.nodes()) {
        const auto canonical = aliases.lookup(node.role_name);
        if (!canonical) fail(ErrorKind::UnmappedRole, "'" + node.role_name + "'");
        canon_of[node.id] = *canonical;
    }

    std::map<std::string, std::vector<const StakeholderNode*>> groups;
    for (const auto& node : net.nodes()) groups[canon_of[node.id]].push_back(&node);

    std::vector<StakeholderNode> nodes;
    for (const auto& [canonical, members] : groups) {
        StakeholderNode merged;
        merged.id = canonical;
        merged.role_name = canonical;
        merged.canonical_role = canonical;
        merged.org_group = org_group_for_role(canonical);
        std::vector<std::string> notes;
        for (const auto* member : members)
            if (!member->notes.empty()) notes.push_back(member->notes);
        std::sort(notes.begin(), notes.end());
        notes.erase(std::unique(notes.begin(), notes.end()), notes.end());
        for (const auto& note : notes) {
            if (!merged.notes.empty()) merged.notes += "; ";
            merged.notes += note;
        }
        nodes.push_back(std::move(merged));
    }

    std::map<std::pair<std::string, std::string>, MergedEdge> merged;
    for (const auto& e : net.edges()) {
        const std::string from = canon_of[e.from];
        const std::string to = canon_of[e.to];
        if (from == to) {
            if (warnings)
                warnings->push_back("dropping self-relation on '" + from + "' (was '" + e.from +
                                    "' -> '" + e.to + "')");
            continue;
        }
        auto& entry = merged[{from, to}];
        entry.strength = std::max(entry.strength, e.strength.value());
        entry.ties.push_back(e.tie_type);
        entry.conflict = entry.conflict || e.conflict;
        if (!e.frequency_label.empty() &&
            (entry.frequency.empty() || e.frequency_label < entry.frequency))
            entry.frequency = e.frequency_label;
        entry.provenance.insert(entry.provenance.end(), e.provenance.begin(),
                                e.provenance.end());
    }

    std::vector<RelationEdge> edges;
    edges.reserve(merged.size());
    for (auto& [key, entry] : merged) {
        RelationEdge e;
        e.from = key.first;
        e.to = key.second;
        e.strength = Strength(entry.strength);
        e.tie_type = unanimous_tie(entry.ties);
        e.conflict = entry.conflict;
        e.frequency_label = entry.frequency;
        e.provenance = std::move(entry.provenance);
        edges.push_back(std::move(e));
    }
    return build_network(std::move(nodes), std::move(edges), net.project_id());
}

GenericModel aggregate_generic_model(const std::vector<StakeholderNetwork>& nets, int quorum,
                                     StrengthRule rule,
                                     const std::vector<RelationEdge>& external_edges) {
    if (nets.empty()) fail(ErrorKind::EmptyInput, "no networks to aggregate");
    if (quorum < 1) fail(ErrorKind::InvalidParameter, "quorum must be >= 1");
    if (quorum > static_cast<int>(nets.size()))
        fail(ErrorKind::QuorumExceedsProjects, "quorum " + std::to_string(quorum) + " with " +
                                                   std::to_string(nets.size()) + " networks");

    struct Observed {
        std::vector<int> strengths;
        std::vector<TieType> ties;
        bool conflict = false;
        std::set<std::string> projects;
    };
    std::map<std::pair<std::string, std::string>, Observed> observed;
    std::map<std::string, std::set<std::string>> role_presence; // role -> projects
    for (const auto& net : nets) {
        for (const auto& node : net.nodes()) role_presence[node.id].insert(net.project_id());
        for (const auto& e : net.edges()) {
            auto& entry = observed[{e.from, e.to}];
            entry.strengths.push_back(e.strength.value());
            entry.ties.push_back(e.tie_type);
            entry.conflict = entry.conflict || e.conflict;
            entry.projects.insert(net.project_id());
        }
    }

    struct Pending {
        RelationEdge edge;
        GenericEdgeInfo info;
    };
    std::map<std::pair<std::string, std::string>, Pending> result;
    for (auto& [key, entry] : observed) {
        const int support = static_cast<int>(entry.projects.size());
        if (support < quorum) continue;
        std::sort(entry.strengths.begin(), entry.strengths.end());
        Pending pending;
        pending.edge.from = key.first;
        pending.edge.to = key.second;
        pending.edge.strength = Strength(rule == StrengthRule::Max
                                             ? entry.strengths.back()
                                             : entry.strengths[(entry.strengths.size() - 1) / 2]);
        pending.edge.tie_type = unanimous_tie(entry.ties);
        pending.edge.conflict = entry.conflict;
        pending.edge.provenance.assign(entry.projects.begin(), entry.projects.end());
        pending.info = {support, false};
        result.emplace(key, std::move(pending));
    }

    for (const auto& external : external_edges) {
        const auto key = std::make_pair(external.from, external.to);
        if (result.count(key)) continue; // already carried by quorum
        Pending pending;
        pending.edge = external;
        auto it = observed.find(key);
        const int support = it == observed.end() ? 0 : static_cast<int>(it->second.projects.size());
        if (it != observed.end())
            pending.edge.provenance.assign(it->second.projects.begin(),
                                           it->second.projects.end());
        pending.info = {support, true};
        result.emplace(key, std::move(pending));
    }

    std::set<std::string> role_set;
    for (const auto& [key, pending] : result) {
        role_set.insert(key.first);
        role_set.insert(key.second);
    }
    for (const auto& [role, projects] : role_presence)
        if (static_cast<int>(projects.size()) >= quorum) role_set.insert(role);

    std::vector<StakeholderNode> nodes;
    for (const auto& role : role_set)
        nodes.push_back({.id = role,
                         .role_name = role,
                         .org_group = org_group_for_role(role),
                         .canonical_role = role});

    std::vector<RelationEdge> edges;
    edges.reserve(result.size());
    for (auto& [key, pending] : result) edges.push_back(std::move(pending.edge));

    GenericModel model;
    model.network = build_network(std::move(nodes), std::move(edges), "generic");
    model.quorum = quorum;
    model.edge_info.reserve(model.network.edges().size());
    for (const auto& e : model.network.edges())
        model.edge_info.push_back(result.at({e.from, e.to}).info);
    return model;
}

std::vector<CriticalityScore> criticality_scores(const CentralityReport& report,
                                                 const std::map<std::string, int>& votes,
                                                 double w_quant, double w_votes) {
    if (w_quant < 0 || w_votes < 0 || (w_quant == 0 && w_votes == 0))
        fail(ErrorKind::InvalidParameter, "weights must be non-negative and not both zero");

    const std::size_t n = report.rows.size();
    if (n == 0) return {};

    int max_votes = 0;
    for (const auto& [role, count] : votes) max_votes = std::max(max_votes, count);

    // Competition ranking over metric values: equal values share a rank.
    auto percentile = [n](const std::vector<double>& values, std::size_t i) {
        std::size_t better = 0;
        for (double v : values)
            if (v > values[i]) ++better;
        const double rank = static_cast<double>(better + 1);
        return (static_cast<double>(n) - rank + 1.0) / static_cast<double>(n);
    };

    std::vector<double> degree_values(n), closeness_values(n), betweenness_values(n);
    for (std::size_t i = 0; i < n; ++i) {
        degree_values[i] = report.rows[i].degree_abs;
        closeness_values[i] = report.rows[i].closeness_rel_pct.value_or(-1.0);
        betweenness_values[i] = report.rows[i].betweenness_rel;
    }

    std::vector<CriticalityScore> scores;
    scores.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        CriticalityScore score;
        score.role = report.rows[i].id;
        score.quant = (percentile(degree_values, i) + percentile(closeness_values, i) +
                       percentile(betweenness_values, i)) /
                      3.0;
        auto it = votes.find(score.role);
        score.votes = it == votes.end() ? 0 : it->second;
        const double votes_norm = max_votes > 0 ? static_cast<double>(score.votes) / max_votes : 0.0;
        score.combined = w_quant * score.quant + w_votes * votes_norm;
        scores.push_back(std::move(score));
    }
    std::sort(scores.begin(), scores.end(), [](const auto& a, const auto& b) {
        if (a.combined != b.combined) return a.combined > b.combined;
        return a.role < b.role;
    });
    return scores;
}

const char* to_string(ProjectPhase phase) {
    switch (phase) {
    case ProjectPhase::FeasibilityStudy: return "FeasibilityStudy";
    case ProjectPhase::Planning: return "Planning";
    case ProjectPhase::Analysis: return "Analysis";
    case ProjectPhase::Design: return "Design";
    case ProjectPhase::Build: return "Build";
    case ProjectPhase::Test: return "Test";
    case ProjectPhase::Deploy: return "Deploy";
    case ProjectPhase::HandOver: return "HandOver";
    }
    return "FeasibilityStudy";
}

const std::vector<std::string>& all_phase_names() {
    static const std::vector<std::string> names = {
        "FeasibilityStudy", "Planning", "Analysis", "Design",
        "Build",            "Test",     "Deploy",   "HandOver",
    };
    return names;
}

std::optional<ProjectPhase> parse_phase(std::string_view name) {
    static const std::map<std::string, ProjectPhase, std::less<>> phases = {
        {"feasibilitystudy", ProjectPhase::FeasibilityStudy},
        {"feasibility-study", ProjectPhase::FeasibilityStudy},
        {"planning", ProjectPhase::Planning},
        {"analysis", ProjectPhase::Analysis},
        {"design", ProjectPhase::Design},
        {"build", ProjectPhase::Build},
        {"test", ProjectPhase::Test},
        {"deploy", ProjectPhase::Deploy},
        {"handover", ProjectPhase::HandOver},
        {"hand-over", ProjectPhase::HandOver},
    };
    auto it = phases.find(util::to_lower(util::trim(name)));
    if (it == phases.end()) return std::nullopt;
    return it->second;
}

std::set<std::string> phase_critical_roles(ProjectPhase phase) {
    switch (phase) {
    case ProjectPhase::FeasibilityStudy:
        return {"CompanyManagement", "BusinessUnitManagement"};
    case ProjectPhase::Planning:
        return {"ProgramManager", "ProcessOwner", "BusinessOwner"};
    case ProjectPhase::Analysis:
    case ProjectPhase::Design:
    case ProjectPhase::Build:
        return {"ProjectManager", "SolutionOwner", "DevelopmentTeam"};
    case ProjectPhase::Test:
    case ProjectPhase::Deploy:
        return {"TrainingTeam", "KeyUsers", "DeploymentManager"};
    case ProjectPhase::HandOver:
        return {"DeploymentManager", "KeyUsers"};
    }
    return {};
}

std::vector<PhaseWarning> phase_coverage_check(const StakeholderNetwork& net,
                                               ProjectPhase phase) {
    std::set<std::string> connected;
    for (const auto& e : net.edges()) {
        connected.insert(e.from);
        connected.insert(e.to);
    }

    std::vector<PhaseWarning> warnings;
    for (const auto& role : phase_critical_roles(phase)) {
        if (!net.has_node(role)) {
            warnings.push_back({role, PhaseWarning::Reason::Absent,
                                "critical role '" + role + "' for phase " +
                                    std::string(to_string(phase)) + " is absent"});
        } else if (!connected.count(role)) {
            warnings.push_back({role, PhaseWarning::Reason::Isolated,
                                "critical role '" + role + "' for phase " +
                                    std::string(to_string(phase)) +
                                    " is present but isolated"});
        }
    }
    return warnings;
}

const std::vector<ConflictRecord>& builtin_conflict_registry() {
    static const std::vector<ConflictRecord> registry = {
        {1,
         {"SolutionOwner", "ProcessOwner", "ProjectManager"},
         "Solution owners of different processes disagree about cross-process solution "
         "specifications; the project manager mediates and the dispute can escalate to the "
         "process owners",
         "Schedule slips; design disputes escalate to program management",
         "Improve communication between the solution teams; settle cross-process design "
         "ownership early",
         {"project3"}},
        {2,
         {"SolutionOwner", "DevelopmentTeam", "ProjectManager"},
         "Disagreement about the level of detail of solution specifications: the development "
         "team finds them too coarse while the solution owners consider them sufficient",
         "Schedule slips; rework between specification and build",
         "Improve communication between teams; agree specification depth before build starts",
         {"project3"}},
        {3,
         {"ProjectManager", "DevelopmentTeam"},
         "External consultants' skills fall short of the project manager's expectations",
         "Schedule and quality suffer while staffing is corrected",
         "Vet consultant skills before onboarding; escalate staffing gaps immediately",
         {"project1"}},
        {4,
         {"BusinessOwner", "ProgramManager", "SteeringGroup"},
         "Disputes over steering-group composition: business organizations feel "
         "under-represented and business owners argue among themselves",
         "Weakened business commitment to the program",
         "Make representation rules explicit; communicate scope and budget trade-offs to "
         "management early",
         {"project3"}},
        {5,
         {"ProgramManager", "ProjectManager", "BusinessOwner", "ProcessOwner"},
         "Arguments about allocating business-organization people to the project; the "
         "business owner does not see the benefit of releasing resources",
         "Schedule and quality suffer; fear of losing power hardens positions",
         "Communicate the impact of unmet staffing needs; escalate to the steering group "
         "early",
         {"project1"}},
        {6,
         {"SteeringGroup", "CompanyManagement", "DeploymentManager", "ProgramManager"},
         "Local country management wants solution changes and the local deployment manager "
         "promises them, clashing with the global design and program management",
         "Global objectives diluted; conflicting commitments to local organizations",
         "State roles and responsibilities of the project organization clearly; improve "
         "escalation procedures",
         {"project2", "project3"}},
        {7,
         {"BusinessOwner", "KeyUsers", "Users"},
         "Local business organizations keep changing requirements after agreed freeze "
         "deadlines",
         "Schedule slips and rework in configuration",
         "Communicate change deadlines clearly and enforce them",
         {"project2"}},
        {8,
         {"BusinessOwner", "ProgramManager"},
         "Business units resist globally harmonized to-be processes pushed by program "
         "management",
         "Dissatisfied business owners withdraw support or actively resist the project",
         "Involve business units in process design; escalate unresolved disputes to company "
         "management",
         {}},
        {9,
         {"BusinessOwner", "SteeringGroup"},
         "Business-unit owners disagree among themselves about to-be processes, scope and "
         "budget; the steering group is drawn in because most owners sit on it",
         "Weakened commitment of the losing business units",
         "Surface differing business needs to higher management early",
         {}},
        {10,
         {"BusinessOwner", "ProjectManager"},
         "General friction between the business organization and the project organization "
         "over priorities and ways of working",
         "Cooperation degrades at the business/project boundary",
         "Define clear communication procedures, roles and channels between the "
         "organizations",
         {}},
    };
    return registry;
}

std::vector<ConflictRecord> parse_conflict_registry(std::string_view json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::ParseError, e.what());
    }
    if (!doc.is_array()) fail(ErrorKind::ParseError, "expected a JSON array of conflicts");

    std::vector<ConflictRecord> registry;
    std::set<int> seen;
    try {
        for (const auto& item : doc) {
            ConflictRecord record;
            record.conflict_id = item.at("conflict_id").get<int>();
            for (const auto& role : item.at("stakeholders"))
                record.stakeholders.insert(role.get<std::string>());
            record.description = item.value("description", std::string{});
            record.consequences = item.value("consequences", std::string{});
            record.mitigation = item.value("mitigation", std::string{});
            for (const auto& project : item.value("projects", nlohmann::json::array()))
                record.projects.insert(project.get<std::string>());
            if (record.stakeholders.empty())
                fail(ErrorKind::ParseError, "conflict " + std::to_string(record.conflict_id) +
                                                " has no stakeholders");
            if (!seen.insert(record.conflict_id).second)
                fail(ErrorKind::ParseError,
                     "duplicate conflict_id " + std::to_string(record.conflict_id));
            registry.push_back(std::move(record));
        }
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::ParseError, e.what());
    }
    return registry;
}

ConflictMatchResult match_conflicts(const StakeholderNetwork& net,
                                    const std::vector<ConflictRecord>& registry) {
    ConflictMatchResult result;
    std::set<std::pair<std::string, std::string>> covered;
    for (const auto& record : registry) {
        std::set<std::string> present;
        for (const auto& role : record.stakeholders)
            if (net.has_node(role)) present.insert(role);
        if (present.size() < 2) continue;

        std::vector<RelationEdge> edges;
        for (const auto& e : net.edges())
            if (e.conflict && present.count(e.from) && present.count(e.to))
                edges.push_back(e);
        if (edges.empty()) continue;

        for (const auto& e : edges) covered.insert({e.from, e.to});
        result.matches.push_back({record, std::move(edges)});
    }

    for (const auto& e : net.edges())
        if (e.conflict && !covered.count({e.from, e.to}))
            result.notes.push_back("unregistered conflict: '" + e.from + "' -> '" + e.to +
                                   "' matches no registry record");
    return result;
}

TieMatrices tie_matrices(const StakeholderNetwork& net) {
    TieMatrices m;
    auto socio = to_sociomatrix(net);
    m.labels = std::move(socio.labels);
    m.strength = std::move(socio.cells);
    m.authority.assign(net.size(), std::vector<bool>(net.size(), false));
    for (const auto& e : net.edges())
        if (e.tie_type == TieType::Authority)
            m.authority[*net.index_of(e.from)][*net.index_of(e.to)] = true;
    return m;
}

} // namespace stakenet
