#ifndef STAKENET_INGEST_HPP
#define STAKENET_INGEST_HPP

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "stakenet/network.hpp"

namespace stakenet {

/// One relation as reported in an interview. Roles are stored normalized
/// (trimmed, case-folded); strength 0 is a legal record ("no influence")
/// that is dropped when the network is assembled.
struct EdgeRecord {
    std::string from_role;
    std::string to_role;
    std::optional<int> strength; // 0..3 when present
    std::optional<TieType> tie;
    bool conflict = false;
    std::string frequency_label;
    int line = 0; // source line for diagnostics, 0 when unavailable

    friend bool operator==(const EdgeRecord&, const EdgeRecord&) = default;
};

struct InterviewGraph {
    std::string interviewee_id;
    std::string interviewee_role;
    std::vector<EdgeRecord> records;
    std::set<std::string> critical_votes; // normalized role tokens

    friend bool operator==(const InterviewGraph&, const InterviewGraph&) = default;
};

struct MergePolicy {
    StrengthRule strength_rule = StrengthRule::Max;
    int require_corroboration = 1; // minimum distinct interviewees per edge
};

/// trim + ASCII case-fold; the only normalization applied to role names here.
std::string normalize_role(std::string_view raw);

/// Dispatches on content: a leading '{' selects JSON, anything else CSV.
/// fallback_id is used when the content does not carry an interviewee id.
InterviewGraph parse_interview_graph(std::string_view content,
                                     std::string_view fallback_id = "interview");

InterviewGraph parse_interview_csv(std::string_view content,
                                   std::string_view fallback_id = "interview");
InterviewGraph parse_interview_json(std::string_view content,
                                    std::string_view fallback_id = "interview");

/// Folds several interviewees' graphs into one per-project network.
/// An edge survives when at least `require_corroboration` distinct
/// interviewees reported it with non-zero strength; strengths merge per
/// the policy rule, conflict flags OR, tie types must be unanimous to be
/// kept. Zero-strength rows are dropped with a warning.
StakeholderNetwork merge_interviews(const std::vector<InterviewGraph>& graphs,
                                    const MergePolicy& policy, std::string project_id,
                                    std::vector<std::string>* warnings = nullptr);

/// Distinct-interviewee vote counts per role, descending, ties lexicographic.
std::vector<std::pair<std::string, int>>
tally_critical_votes(const std::vector<InterviewGraph>& graphs);

} // namespace stakenet

#endif
