#include "stakenet/ingest.hpp"

#include <algorithm>
#include <map>

#include <json.hpp>

#include "internal_util.hpp"

namespace stakenet {

using util::trim;

std::string normalize_role(std::string_view raw) {
    return util::to_lower(trim(raw));
}

namespace {

constexpr std::string_view kCsvHeader = "from,to,strength,tie,conflict,frequency";

std::optional<bool> parse_bool(std::string_view s) {
    const std::string v = util::to_lower(trim(s));
    if (v.empty() || v == "false" || v == "0" || v == "no") return false;
    if (v == "true" || v == "1" || v == "yes") return true;
    return std::nullopt;
}

void check_record(EdgeRecord& rec, int line) {
    rec.line = line;
    if (rec.from_role.empty() || rec.to_role.empty())
        fail(ErrorKind::ParseError, "line " + std::to_string(line) + ": empty role name");
    if (rec.from_role == rec.to_role)
        fail(ErrorKind::ParseError, "line " + std::to_string(line) + ": relation from '" +
                                        rec.from_role + "' to itself");
    if (rec.strength && (*rec.strength < 0 || *rec.strength > 3))
        fail(ErrorKind::StrengthOutOfRange, "line " + std::to_string(line) + ": strength " +
                                                std::to_string(*rec.strength) +
                                                " outside 0..3");
}

void check_votes(const InterviewGraph& graph) {
    std::set<std::string> mentioned;
    for (const auto& rec : graph.records) {
        mentioned.insert(rec.from_role);
        mentioned.insert(rec.to_role);
    }
    for (const auto& vote : graph.critical_votes)
        if (!mentioned.count(vote))
            fail(ErrorKind::ParseError,
                 "critical vote for '" + vote + "' which appears in no relation record");
}

} // namespace

InterviewGraph parse_interview_csv(std::string_view content, std::string_view fallback_id) {
    InterviewGraph graph;
    graph.interviewee_id = std::string(trim(fallback_id));

    bool header_seen = false;
    bool in_critical = false;
    const auto lines = util::split_lines(content);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const int lineno = static_cast<int>(i + 1);
        std::string_view line = trim(lines[i]);
        if (i == 0 && line.starts_with("\xEF\xBB\xBF")) line = trim(line.substr(3));
        if (line.empty()) continue;

        if (line.front() == '#') {
            const std::string directive = util::to_lower(line);
            if (directive == "#critical") {
                in_critical = true;
            } else if (directive.starts_with("#interviewee_role:")) {
                graph.interviewee_role = trim(line.substr(18));
            } else if (directive.starts_with("#interviewee:")) {
                graph.interviewee_id = trim(line.substr(13));
            }
            continue;
        }

        if (in_critical) {
            graph.critical_votes.insert(normalize_role(line));
            continue;
        }

        if (!header_seen) {
            if (util::to_lower(line) != kCsvHeader)
                fail(ErrorKind::ParseError, "line " + std::to_string(lineno) +
                                                ": expected header '" +
                                                std::string(kCsvHeader) + "'");
            header_seen = true;
            continue;
        }

        const auto fields = util::split_csv_line(line);
        if (fields.size() != 6)
            fail(ErrorKind::ParseError, "line " + std::to_string(lineno) + ": expected 6 fields, got " +
                                            std::to_string(fields.size()));

        EdgeRecord rec;
        rec.from_role = normalize_role(fields[0]);
        rec.to_role = normalize_role(fields[1]);
        if (!trim(fields[2]).empty()) {
            const auto strength = util::parse_int(fields[2]);
            if (!strength)
                fail(ErrorKind::ParseError, "line " + std::to_string(lineno) +
                                                ": strength '" + fields[2] +
                                                "' is not an integer");
            rec.strength = *strength;
        }
        if (!trim(fields[3]).empty()) {
            const auto tie = parse_tie_type(trim(fields[3]));
            if (!tie || *tie == TieType::Unknown)
                fail(ErrorKind::UnknownTieType,
                     "line " + std::to_string(lineno) + ": tie '" + fields[3] + "'");
            rec.tie = *tie;
        }
        const auto conflict = parse_bool(fields[4]);
        if (!conflict)
            fail(ErrorKind::ParseError, "line " + std::to_string(lineno) + ": conflict '" +
                                            fields[4] + "' is not a boolean");
        rec.conflict = *conflict;
        rec.frequency_label = trim(fields[5]);
        check_record(rec, lineno);
        graph.records.push_back(std::move(rec));
    }

    if (!header_seen && !graph.records.empty())
        fail(ErrorKind::ParseError, "missing header line");
    if (graph.interviewee_id.empty())
        fail(ErrorKind::ParseError, "interviewee id is empty");
    check_votes(graph);
    return graph;
}

InterviewGraph parse_interview_json(std::string_view content, std::string_view fallback_id) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(content);
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::ParseError, e.what());
    }
    if (!doc.is_object()) fail(ErrorKind::ParseError, "expected a JSON object");

    InterviewGraph graph;
    graph.interviewee_id = std::string(trim(fallback_id));
    try {
        if (doc.contains("interviewee_id"))
            graph.interviewee_id = std::string(trim(doc.at("interviewee_id").get<std::string>()));
        if (doc.contains("interviewee_role"))
            graph.interviewee_role = doc.at("interviewee_role").get<std::string>();
        for (const auto& item : doc.value("edges", nlohmann::json::array())) {
            EdgeRecord rec;
            rec.from_role = normalize_role(item.at("from").get<std::string>());
            rec.to_role = normalize_role(item.at("to").get<std::string>());
            if (item.contains("strength") && !item.at("strength").is_null())
                rec.strength = item.at("strength").get<int>();
            if (item.contains("tie") && !item.at("tie").is_null()) {
                const auto tie = parse_tie_type(item.at("tie").get<std::string>());
                if (!tie || *tie == TieType::Unknown)
                    fail(ErrorKind::UnknownTieType,
                         "tie '" + item.at("tie").get<std::string>() + "'");
                rec.tie = *tie;
            }
            rec.conflict = item.value("conflict", false);
            rec.frequency_label = item.value("frequency", std::string{});
            check_record(rec, 0);
            graph.records.push_back(std::move(rec));
        }
        for (const auto& vote : doc.value("critical", nlohmann::json::array()))
            graph.critical_votes.insert(normalize_role(vote.get<std::string>()));
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::ParseError, e.what());
    }

    if (graph.interviewee_id.empty()) fail(ErrorKind::ParseError, "interviewee id is empty");
    check_votes(graph);
    return graph;
}

InterviewGraph parse_interview_graph(std::string_view content, std::string_view fallback_id) {
    const std::string_view body = trim(content);
    if (!body.empty() && body.front() == '{') return parse_interview_json(content, fallback_id);
    return parse_interview_csv(content, fallback_id);
}

namespace {

struct EdgeAccumulator {
    std::set<std::string> contributors;
    std::vector<int> strengths;
    std::vector<TieType> ties;
    bool conflict = false;
    std::string frequency;
};

int merge_strengths(std::vector<int> values, StrengthRule rule) {
    if (values.empty()) return 1; // a reported but unquantified relation counts as weak
    std::sort(values.begin(), values.end());
    if (rule == StrengthRule::Max) return values.back();
    return values[(values.size() - 1) / 2]; // lower median
}

} // namespace

StakeholderNetwork merge_interviews(const std::vector<InterviewGraph>& graphs,
                                    const MergePolicy& policy, std::string project_id,
                                    std::vector<std::string>* warnings) {
    if (graphs.empty()) fail(ErrorKind::EmptyInput, "no interview graphs to merge");
    if (policy.require_corroboration < 1)
        fail(ErrorKind::InvalidParameter, "require_corroboration must be >= 1");

    std::set<std::string> roles;
    std::map<std::pair<std::string, std::string>, EdgeAccumulator> acc;
    for (const auto& graph : graphs) {
        for (const auto& rec : graph.records) {
            roles.insert(rec.from_role);
            roles.insert(rec.to_role);
            if (rec.strength && *rec.strength == 0) {
                if (warnings)
                    warnings->push_back("dropping zero-strength relation '" + rec.from_role +
                                        "' -> '" + rec.to_role + "' reported by " +
                                        graph.interviewee_id);
                continue;
            }
            auto& entry = acc[{rec.from_role, rec.to_role}];
            entry.contributors.insert(graph.interviewee_id);
            if (rec.strength) entry.strengths.push_back(*rec.strength);
            if (rec.tie) entry.ties.push_back(*rec.tie);
            entry.conflict = entry.conflict || rec.conflict;
            if (!rec.frequency_label.empty() &&
                (entry.frequency.empty() || rec.frequency_label < entry.frequency))
                entry.frequency = rec.frequency_label;
        }
    }

    std::vector<RelationEdge> edges;
    for (auto& [key, entry] : acc) {
        if (static_cast<int>(entry.contributors.size()) < policy.require_corroboration)
            continue;
        const int strength = merge_strengths(entry.strengths, policy.strength_rule);
        if (strength == 0) continue;
        RelationEdge e;
        e.from = key.first;
        e.to = key.second;
        e.strength = Strength(strength);
        e.tie_type = entry.ties.empty() ? TieType::Unknown : entry.ties.front();
        for (TieType t : entry.ties)
            if (t != e.tie_type) e.tie_type = TieType::Unknown;
        e.conflict = entry.conflict;
        e.frequency_label = entry.frequency;
        e.provenance.assign(entry.contributors.begin(), entry.contributors.end());
        edges.push_back(std::move(e));
    }

    if (roles.empty()) fail(ErrorKind::EmptyInput, "interviews mention no roles");
    if (edges.empty() && warnings)
        warnings->push_back("no edges survived merging (corroboration threshold " +
                            std::to_string(policy.require_corroboration) + ")");

    std::vector<StakeholderNode> nodes;
    nodes.reserve(roles.size());
    for (const auto& role : roles) nodes.push_back({.id = role, .role_name = role});
    return build_network(std::move(nodes), std::move(edges), std::move(project_id));
}

std::vector<std::pair<std::string, int>>
tally_critical_votes(const std::vector<InterviewGraph>& graphs) {
    std::map<std::string, std::set<std::string>> voters;
    for (const auto& graph : graphs)
        for (const auto& role : graph.critical_votes)
            voters[role].insert(graph.interviewee_id);

    std::vector<std::pair<std::string, int>> tally;
    tally.reserve(voters.size());
    for (const auto& [role, ids] : voters) tally.emplace_back(role, static_cast<int>(ids.size()));
    std::sort(tally.begin(), tally.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    return tally;
}

} // namespace stakenet
