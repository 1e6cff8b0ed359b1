#ifndef STAKENET_SYNTHESIS_HPP
#define STAKENET_SYNTHESIS_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "stakenet/metrics.hpp"
#include "stakenet/network.hpp"

namespace stakenet {

/// Maps project-specific role titles ("Global Rollout Mgr") onto the
/// shared canonical vocabulary (DeploymentManager, ...). Lookups are
/// trimmed and case-folded; the table must cover every role name of a
/// network before it can be canonicalized.
class RoleAliasTable {
public:
    RoleAliasTable() = default;

    void add(std::string_view raw_name, std::string_view canonical_role);
    std::optional<std::string> lookup(std::string_view raw_name) const;
    const std::map<std::string, std::string>& mapping() const { return mapping_; }

    /// Built-in table covering the role titles observed across the three
    /// reference projects, plus identity entries for the canonical roles.
    static RoleAliasTable defaults();

    /// CSV rows `raw_name,canonical_role`; '#' comment lines ignored.
    static RoleAliasTable from_csv(std::string_view content);

private:
    std::map<std::string, std::string> mapping_; // normalized raw name -> canonical token
};

/// The fixed canonical role vocabulary.
const std::vector<std::string>& canonical_roles();

/// Organizational group a canonical role belongs to.
OrgGroup org_group_for_role(std::string_view canonical_role);

/// Merges nodes that share a canonical role; edge strengths take the max
/// per direction, self-loops produced by a merge are dropped with a
/// warning. Throws UnmappedRole when the table misses a role name.
StakeholderNetwork canonicalize_roles(const StakeholderNetwork& net,
                                      const RoleAliasTable& aliases,
                                      std::vector<std::string>* warnings = nullptr);

struct GenericEdgeInfo {
    int support = 0;               // source projects containing the edge
    bool external_validated = false;
};

/// Cross-project aggregate; edge_info is aligned with network.edges().
struct GenericModel {
    StakeholderNetwork network;
    std::vector<GenericEdgeInfo> edge_info;
    int quorum = 0;
};

/// Majority-logic combination: a directed edge survives when present in
/// at least `quorum` input networks; per-direction strengths aggregate by
/// `rule`. external_edges are appended regardless of quorum and flagged.
GenericModel aggregate_generic_model(const std::vector<StakeholderNetwork>& nets, int quorum,
                                     StrengthRule rule = StrengthRule::MedianLow,
                                     const std::vector<RelationEdge>& external_edges = {});

struct CriticalityScore {
    std::string role;
    double quant = 0.0;  // mean of the three per-metric rank percentiles
    int votes = 0;
    double combined = 0.0;
};

/// Combines the quantitative centrality view with interview vote counts.
/// Per-metric ranks share a position on equal values, so structurally
/// identical roles differ only by their votes.
std::vector<CriticalityScore> criticality_scores(const CentralityReport& report,
                                                 const std::map<std::string, int>& votes,
                                                 double w_quant = 0.5, double w_votes = 0.5);

enum class ProjectPhase {
    FeasibilityStudy,
    Planning,
    Analysis,
    Design,
    Build,
    Test,
    Deploy,
    HandOver,
};

const char* to_string(ProjectPhase phase);
std::optional<ProjectPhase> parse_phase(std::string_view name);
const std::vector<std::string>& all_phase_names();

/// Which canonical roles carry a phase.
std::set<std::string> phase_critical_roles(ProjectPhase phase);

struct PhaseWarning {
    enum class Reason { Absent, Isolated };
    std::string role;
    Reason reason = Reason::Absent;
    std::string message;
};

/// One warning per phase-critical role missing from or isolated in the
/// network. Expects a canonicalized network.
std::vector<PhaseWarning> phase_coverage_check(const StakeholderNetwork& net,
                                               ProjectPhase phase);

struct ConflictRecord {
    int conflict_id = 0;
    std::set<std::string> stakeholders; // canonical roles
    std::string description;
    std::string consequences;
    std::string mitigation;
    std::set<std::string> projects; // where observed; empty when unattributed
};

/// The ten recurring stakeholder conflicts shipped with the library.
const std::vector<ConflictRecord>& builtin_conflict_registry();

/// JSON array of ConflictRecord objects.
std::vector<ConflictRecord> parse_conflict_registry(std::string_view json_text);

struct ConflictMatch {
    ConflictRecord record;
    std::vector<RelationEdge> edges; // conflict-flagged edges among the record's roles
};

struct ConflictMatchResult {
    std::vector<ConflictMatch> matches;
    std::vector<std::string> notes; // e.g. conflict edges covered by no record
};

/// A record matches when >= 2 of its roles are present and some edge
/// among them carries the conflict flag. Expects a canonicalized network.
ConflictMatchResult match_conflicts(const StakeholderNetwork& net,
                                    const std::vector<ConflictRecord>& registry
                                    = builtin_conflict_registry());

struct TieMatrices {
    std::vector<std::string> labels;
    std::vector<std::vector<bool>> authority; // cell (i,j): edge i->j has tie "A"
    std::vector<std::vector<int>> strength;   // the sociomatrix
};

TieMatrices tie_matrices(const StakeholderNetwork& net);

} // namespace stakenet

#endif
