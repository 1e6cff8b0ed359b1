#include "stakenet/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "internal_util.hpp"
#include "stakenet/cohesion.hpp"
#include "stakenet/ingest.hpp"
#include "stakenet/metrics.hpp"
#include "stakenet/serialize.hpp"
#include "stakenet/synthesis.hpp"

namespace stakenet::cli {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;
using util::fixed3;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::IoError, "cannot read '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) fail(ErrorKind::IoError, "read failure on '" + path + "'");
    return buffer.str();
}

void write_output(const std::string& output_path, const std::string& text, std::ostream& out) {
    if (output_path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(output_path, std::ios::binary);
    if (!file) fail(ErrorKind::IoError, "cannot write '" + output_path + "'");
    file << text;
    if (!file) fail(ErrorKind::IoError, "write failure on '" + output_path + "'");
}

std::string file_stem(const std::string& path) {
    return std::filesystem::path(path).stem().string();
}

enum class InputKind { Interview, Network, Sociomatrix };

InputKind classify(const std::string& path, const std::string& content) {
    const std::string_view body = util::trim(content);
    if (!body.empty() && (body.front() == '{' || body.front() == '[')) {
        json doc;
        try {
            doc = json::parse(body);
        } catch (const json::exception& e) {
            fail(ErrorKind::ParseError, path + ": " + e.what());
        }
        if (doc.is_object() && doc.contains("nodes")) return InputKind::Network;
        return InputKind::Interview;
    }
    for (const auto& line : util::split_lines(body)) {
        const auto trimmed = util::trim(line);
        if (trimmed.empty() || trimmed.front() == '#') continue;
        if (util::to_lower(trimmed).starts_with("from,to,")) return InputKind::Interview;
        return InputKind::Sociomatrix;
    }
    fail(ErrorKind::ParseError, path + ": empty input");
}

StakeholderNetwork load_single_network(const std::string& path) {
    const std::string content = read_file(path);
    switch (classify(path, content)) {
    case InputKind::Network: return network_from_json(json::parse(content));
    case InputKind::Sociomatrix: return sociomatrix_from_csv(content, file_stem(path));
    case InputKind::Interview: {
        const auto graph = parse_interview_graph(content, file_stem(path));
        return merge_interviews({graph}, MergePolicy{}, file_stem(path));
    }
    }
    fail(ErrorKind::ParseError, path + ": unrecognized input");
}

struct LoadedInput {
    StakeholderNetwork network;
    std::vector<InterviewGraph> interviews; // non-empty when inputs were interviews
};

/// Multiple interview files merge into one network; any other kind must
/// come alone.
LoadedInput load_network(const std::vector<std::string>& paths) {
    std::vector<std::pair<std::string, std::string>> contents;
    contents.reserve(paths.size());
    for (const auto& path : paths) contents.emplace_back(path, read_file(path));

    const bool all_interviews =
        std::all_of(contents.begin(), contents.end(), [](const auto& item) {
            return classify(item.first, item.second) == InputKind::Interview;
        });
    if (all_interviews) {
        LoadedInput loaded;
        for (const auto& [path, content] : contents)
            loaded.interviews.push_back(parse_interview_graph(content, file_stem(path)));
        loaded.network =
            merge_interviews(loaded.interviews, MergePolicy{}, file_stem(paths.front()));
        return loaded;
    }
    if (paths.size() != 1)
        fail(ErrorKind::InvalidParameter,
             "multiple inputs are only supported for interview files");
    return {load_single_network(paths.front()), {}};
}

std::string csv_cell(const std::optional<double>& value) {
    return value ? fixed3(*value) : std::string("undefined");
}

std::string render_metrics_csv(const CentralityReport& report) {
    std::ostringstream out;
    out << "node,degree_abs,degree_rel_pct,closeness_rel_pct,betweenness_raw,"
           "betweenness_rel,degree_rank,closeness_rank,betweenness_rank\n";
    for (const auto& row : report.rows) {
        out << util::csv_escape(row.id) << ',' << row.degree_abs << ','
            << csv_cell(row.degree_rel_pct) << ',' << csv_cell(row.closeness_rel_pct) << ','
            << fixed3(row.betweenness_raw) << ',' << fixed3(row.betweenness_rel) << ','
            << row.degree_rank << ',' << row.closeness_rank << ',' << row.betweenness_rank
            << '\n';
    }
    return out.str();
}

ordered_json metrics_row_json(const NodeMetrics& row) {
    ordered_json item;
    item["node"] = row.id;
    item["degree_abs"] = row.degree_abs;
    item["degree_rel_pct"] = row.degree_rel_pct ? ordered_json(*row.degree_rel_pct)
                                                : ordered_json(nullptr);
    item["closeness_rel_pct"] = row.closeness_rel_pct ? ordered_json(*row.closeness_rel_pct)
                                                      : ordered_json(nullptr);
    item["betweenness_raw"] = row.betweenness_raw;
    item["betweenness_rel"] = row.betweenness_rel;
    item["degree_rank"] = row.degree_rank;
    item["closeness_rank"] = row.closeness_rank;
    item["betweenness_rank"] = row.betweenness_rank;
    return item;
}

std::string render_metrics_json(const CentralityReport& report, GraphMode mode) {
    ordered_json doc;
    doc["project_id"] = report.project_id;
    doc["mode"] = mode == GraphMode::Symmetrized ? "symmetrized" : "directed";
    doc["nodes"] = ordered_json::array();
    for (const auto& row : report.rows) doc["nodes"].push_back(metrics_row_json(row));
    doc["rankings"]["degree"] = report.degree_ranking;
    doc["rankings"]["closeness"] = report.closeness_ranking;
    doc["rankings"]["betweenness"] = report.betweenness_ranking;
    return doc.dump(2) + "\n";
}

std::map<std::string, int> parse_votes_csv(const std::string& content) {
    std::map<std::string, int> votes;
    const auto lines = util::split_lines(content);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const auto line = util::trim(lines[i]);
        if (line.empty() || line.front() == '#') continue;
        const auto fields = util::split_csv_line(line);
        if (fields.size() != 2)
            fail(ErrorKind::ParseError,
                 "line " + std::to_string(i + 1) + ": expected 'role,count'");
        const auto count = util::parse_int(fields[1]);
        if (!count) {
            if (i == 0) continue; // header
            fail(ErrorKind::ParseError,
                 "line " + std::to_string(i + 1) + ": count '" + fields[1] + "' is not an integer");
        }
        votes[std::string(util::trim(fields[0]))] = *count;
    }
    return votes;
}

struct CommonOptions {
    std::vector<std::string> inputs;
    std::string output;
    std::string format;
    std::string mode = "symmetrized";
};

GraphMode parse_mode(const std::string& mode) {
    if (mode == "symmetrized") return GraphMode::Symmetrized;
    if (mode == "directed") return GraphMode::Directed;
    fail(ErrorKind::InvalidParameter, "mode must be 'symmetrized' or 'directed'");
}

void require_format(const std::string& format, std::initializer_list<const char*> allowed,
                    const std::string& command) {
    for (const char* candidate : allowed)
        if (format == candidate) return;
    std::string list;
    for (const char* candidate : allowed) {
        if (!list.empty()) list += "|";
        list += candidate;
    }
    fail(ErrorKind::InvalidParameter,
         "format '" + format + "' is not valid for " + command + " (use " + list + ")");
}

int cmd_validate(const std::vector<std::string>& inputs, std::ostream& out, std::ostream& err) {
    bool domain_failure = false;
    bool io_failure = false;
    for (const auto& path : inputs) {
        try {
            load_single_network(path);
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::IoError)
                io_failure = true;
            else
                domain_failure = true;
            err << path << ": " << e.what() << '\n';
        }
    }
    (void)out;
    if (io_failure) return 2;
    return domain_failure ? 1 : 0;
}

int cmd_metrics(const CommonOptions& opt, std::ostream& out) {
    require_format(opt.format, {"csv", "json"}, "metrics");
    const auto loaded = load_network(opt.inputs);
    const auto mode = parse_mode(opt.mode);
    const auto report = centrality_report(loaded.network, mode);
    write_output(opt.output,
                 opt.format == "json" ? render_metrics_json(report, mode)
                                      : render_metrics_csv(report),
                 out);
    return 0;
}

int cmd_cliques(const CommonOptions& opt, std::ostream& out) {
    require_format(opt.format, {"csv", "json"}, "cliques");
    const auto loaded = load_network(opt.inputs);
    const auto cliques = maximal_cliques(loaded.network);

    std::string text;
    if (opt.format == "json") {
        ordered_json doc;
        doc["project_id"] = loaded.network.project_id();
        doc["count"] = cliques.cliques.size();
        doc["cliques"] = cliques.cliques;
        text = doc.dump(2) + "\n";
    } else {
        std::ostringstream buffer;
        buffer << cliques.cliques.size() << '\n';
        for (const auto& clique : cliques.cliques) {
            for (std::size_t i = 0; i < clique.size(); ++i)
                buffer << (i ? "," : "") << util::csv_escape(clique[i]);
            buffer << '\n';
        }
        text = buffer.str();
    }
    write_output(opt.output, text, out);
    return 0;
}

int cmd_bottlenecks(const CommonOptions& opt, int k, std::ostream& out) {
    require_format(opt.format, {"csv", "json"}, "bottlenecks");
    if (k < 1) fail(ErrorKind::InvalidParameter, "--k must be >= 1");
    const auto loaded = load_network(opt.inputs);
    const auto ranking = bottleneck_ranking(loaded.network, static_cast<std::size_t>(k));

    std::string text;
    if (opt.format == "json") {
        ordered_json doc = ordered_json::array();
        int rank = 1;
        for (const auto& entry : ranking) {
            ordered_json item;
            item["rank"] = rank++;
            item["node"] = entry.id;
            item["betweenness_rel"] = entry.betweenness_rel;
            item["cut"] = entry.cut;
            doc.push_back(std::move(item));
        }
        text = doc.dump(2) + "\n";
    } else {
        std::ostringstream buffer;
        buffer << "rank,node,betweenness_rel,cut\n";
        int rank = 1;
        for (const auto& entry : ranking)
            buffer << rank++ << ',' << util::csv_escape(entry.id) << ','
                   << fixed3(entry.betweenness_rel) << ',' << (entry.cut ? "true" : "false")
                   << '\n';
        text = buffer.str();
    }
    write_output(opt.output, text, out);
    return 0;
}

int cmd_fragility(const CommonOptions& opt, const std::string& node, std::ostream& out) {
    require_format(opt.format, {"csv", "json"}, "fragility");
    const auto loaded = load_network(opt.inputs);
    const auto report = fragility(loaded.network, node);

    std::string text;
    if (opt.format == "json") {
        ordered_json doc;
        doc["removed"] = report.removed;
        doc["lost_pairs"] = report.lost_pairs;
        doc["components_after"] = report.components_after;
        doc["newly_isolated"] = report.newly_isolated;
        text = doc.dump(2) + "\n";
    } else {
        std::ostringstream buffer;
        buffer << "removed,lost_pairs,components_after,newly_isolated\n";
        buffer << util::csv_escape(report.removed) << ',' << report.lost_pairs << ','
               << report.components_after << ',';
        std::string joined;
        for (const auto& id : report.newly_isolated) {
            if (!joined.empty()) joined += ";";
            joined += id;
        }
        buffer << util::csv_escape(joined) << '\n';
        text = buffer.str();
    }
    write_output(opt.output, text, out);
    return 0;
}

int cmd_aggregate(const CommonOptions& opt, int quorum, const std::string& aliases_path,
                  const std::string& external_path, const std::string& rule_name,
                  std::ostream& out) {
    if (opt.inputs.size() < 2)
        fail(ErrorKind::InvalidParameter, "aggregate needs at least 2 network inputs");
    const auto aliases =
        aliases_path.empty() ? RoleAliasTable::defaults() : RoleAliasTable::from_csv(read_file(aliases_path));

    StrengthRule rule = StrengthRule::MedianLow;
    if (rule_name == "max")
        rule = StrengthRule::Max;
    else if (rule_name != "median-low")
        fail(ErrorKind::InvalidParameter, "strength rule must be 'median-low' or 'max'");

    std::vector<StakeholderNetwork> nets;
    nets.reserve(opt.inputs.size());
    for (const auto& path : opt.inputs)
        nets.push_back(canonicalize_roles(load_single_network(path), aliases));

    std::vector<RelationEdge> external;
    if (!external_path.empty()) external = edges_from_json(read_file(external_path));

    const auto model = aggregate_generic_model(nets, quorum, rule, external);
    write_output(opt.output, generic_model_to_json(model).dump(2) + "\n", out);
    return 0;
}

int cmd_export(const CommonOptions& opt, std::ostream& out) {
    require_format(opt.format, {"dot", "graphml", "json"}, "export");
    const auto loaded = load_network(opt.inputs);

    std::string text;
    if (opt.format == "dot")
        text = to_dot(loaded.network);
    else if (opt.format == "graphml")
        text = to_graphml(loaded.network);
    else
        text = network_to_json(loaded.network).dump(2) + "\n";
    write_output(opt.output, text, out);
    return 0;
}

const char* to_string(PhaseWarning::Reason reason) {
    return reason == PhaseWarning::Reason::Absent ? "absent" : "isolated";
}

int cmd_report(const CommonOptions& opt, const std::string& votes_path,
               const std::string& phase_name, const std::string& aliases_path,
               const std::string& conflicts_path, const std::string& weights_text,
               std::ostream& out, std::ostream& err) {
    require_format(opt.format, {"csv", "json"}, "report");

    std::optional<ProjectPhase> phase;
    if (!phase_name.empty()) {
        phase = parse_phase(phase_name);
        if (!phase) {
            err << "unknown phase '" << phase_name << "'; valid phases:";
            for (const auto& name : all_phase_names()) err << ' ' << name;
            err << '\n';
            return 1;
        }
    }

    double w_quant = 0.5, w_votes = 0.5;
    {
        const auto comma = weights_text.find(',');
        if (comma == std::string::npos)
            fail(ErrorKind::InvalidParameter, "--weights expects 'Q,V'");
        try {
            w_quant = std::stod(weights_text.substr(0, comma));
            w_votes = std::stod(weights_text.substr(comma + 1));
        } catch (const std::exception&) {
            fail(ErrorKind::InvalidParameter, "--weights expects two numbers 'Q,V'");
        }
    }

    const auto aliases = aliases_path.empty() ? RoleAliasTable::defaults()
                                              : RoleAliasTable::from_csv(read_file(aliases_path));
    const auto loaded = load_network(opt.inputs);
    const auto net = canonicalize_roles(loaded.network, aliases);

    std::map<std::string, int> votes;
    if (!votes_path.empty()) {
        for (const auto& [role, count] : parse_votes_csv(read_file(votes_path)))
            votes[aliases.lookup(role).value_or(role)] += count;
    } else if (!loaded.interviews.empty()) {
        for (const auto& [role, count] : tally_critical_votes(loaded.interviews))
            votes[aliases.lookup(role).value_or(role)] += count;
    }

    const auto registry = conflicts_path.empty()
                              ? builtin_conflict_registry()
                              : parse_conflict_registry(read_file(conflicts_path));

    const auto report = centrality_report(net, parse_mode(opt.mode));
    const auto criticality = criticality_scores(report, votes, w_quant, w_votes);
    const auto conflict_result = match_conflicts(net, registry);
    std::vector<PhaseWarning> warnings;
    if (phase) warnings = phase_coverage_check(net, *phase);

    std::string text;
    if (opt.format == "json") {
        ordered_json doc;
        doc["project_id"] = net.project_id();
        doc["criticality"] = ordered_json::array();
        for (const auto& score : criticality) {
            ordered_json item;
            item["role"] = score.role;
            item["quant"] = score.quant;
            item["votes"] = score.votes;
            item["combined"] = score.combined;
            doc["criticality"].push_back(std::move(item));
        }
        doc["phase"] = phase ? ordered_json(stakenet::to_string(*phase)) : ordered_json(nullptr);
        doc["phase_warnings"] = ordered_json::array();
        for (const auto& warning : warnings) {
            ordered_json item;
            item["role"] = warning.role;
            item["reason"] = to_string(warning.reason);
            item["message"] = warning.message;
            doc["phase_warnings"].push_back(std::move(item));
        }
        doc["conflicts"] = ordered_json::array();
        for (const auto& match : conflict_result.matches) {
            ordered_json item;
            item["conflict_id"] = match.record.conflict_id;
            item["stakeholders"] = match.record.stakeholders;
            item["description"] = match.record.description;
            item["matched_edges"] = ordered_json::array();
            for (const auto& e : match.edges)
                item["matched_edges"].push_back({{"from", e.from}, {"to", e.to}});
            doc["conflicts"].push_back(std::move(item));
        }
        doc["notes"] = conflict_result.notes;
        text = doc.dump(2) + "\n";
    } else {
        std::ostringstream buffer;
        buffer << "# criticality\nrole,quant,votes,combined\n";
        for (const auto& score : criticality)
            buffer << util::csv_escape(score.role) << ',' << fixed3(score.quant) << ','
                   << score.votes << ',' << fixed3(score.combined) << '\n';
        buffer << "# phase_warnings\nrole,reason,message\n";
        for (const auto& warning : warnings)
            buffer << util::csv_escape(warning.role) << ',' << to_string(warning.reason) << ','
                   << util::csv_escape(warning.message) << '\n';
        buffer << "# conflicts\nconflict_id,stakeholders,matched_edges\n";
        for (const auto& match : conflict_result.matches) {
            std::string roles, matched;
            for (const auto& role : match.record.stakeholders) {
                if (!roles.empty()) roles += ";";
                roles += role;
            }
            for (const auto& e : match.edges) {
                if (!matched.empty()) matched += ";";
                matched += e.from + "->" + e.to;
            }
            buffer << match.record.conflict_id << ',' << util::csv_escape(roles) << ','
                   << util::csv_escape(matched) << '\n';
        }
        buffer << "# notes\n";
        for (const auto& note : conflict_result.notes)
            buffer << util::csv_escape(note) << '\n';
        text = buffer.str();
    }
    write_output(opt.output, text, out);
    return 0;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Internal stakeholder network analysis for ERP projects"};
    app.require_subcommand(1);

    CommonOptions opt;
    int k = 10;
    int quorum = 2;
    std::string node, votes_path, phase_name, aliases_path, external_path, conflicts_path;
    std::string rule_name = "median-low";
    std::string weights_text = "0.5,0.5";

    auto add_common = [&](CLI::App* sub, const char* default_format) {
        sub->add_option("inputs", opt.inputs, "input files")->required();
        sub->add_option("--output", opt.output, "output path (default stdout)");
        opt.format = default_format;
        sub->add_option("--format", opt.format, "output format");
        sub->add_option("--mode", opt.mode, "symmetrized|directed")
            ->check(CLI::IsMember({"symmetrized", "directed"}));
        return sub;
    };

    auto* validate = app.add_subcommand("validate", "parse inputs and check invariants");
    validate->add_option("inputs", opt.inputs, "input files")->required();

    auto* metrics = add_common(
        app.add_subcommand("metrics", "degree, closeness and betweenness centrality"), "csv");
    auto* cliques =
        add_common(app.add_subcommand("cliques", "maximal cliques of size >= 3"), "csv");
    auto* bottlenecks = add_common(
        app.add_subcommand("bottlenecks", "top-k nodes by relative betweenness"), "csv");
    bottlenecks->add_option("--k", k, "how many entries to report");
    auto* fragility_cmd = add_common(
        app.add_subcommand("fragility", "impact of removing one stakeholder"), "csv");
    fragility_cmd->add_option("--node", node, "node id to remove")->required();
    auto* aggregate = add_common(
        app.add_subcommand("aggregate", "combine project networks into a generic model"),
        "json");
    aggregate->add_option("--quorum", quorum, "minimum projects per edge");
    aggregate->add_option("--aliases", aliases_path, "role alias CSV (default built-in)");
    aggregate->add_option("--external", external_path, "externally validated edges JSON");
    aggregate->add_option("--strength-rule", rule_name, "median-low|max");
    auto* export_cmd =
        add_common(app.add_subcommand("export", "write the network as dot/graphml/json"), "dot");
    auto* report = add_common(
        app.add_subcommand("report", "criticality, phase coverage and conflict matches"),
        "json");
    report->add_option("--votes", votes_path, "critical-vote counts CSV");
    report->add_option("--phase", phase_name, "project phase to check");
    report->add_option("--aliases", aliases_path, "role alias CSV (default built-in)");
    report->add_option("--conflicts", conflicts_path, "conflict registry JSON (default built-in)");
    report->add_option("--weights", weights_text, "quant,votes weights (default 0.5,0.5)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    try {
        if (validate->parsed()) return cmd_validate(opt.inputs, out, err);
        if (metrics->parsed()) return cmd_metrics(opt, out);
        if (cliques->parsed()) return cmd_cliques(opt, out);
        if (bottlenecks->parsed()) return cmd_bottlenecks(opt, k, out);
        if (fragility_cmd->parsed()) return cmd_fragility(opt, node, out);
        if (aggregate->parsed())
            return cmd_aggregate(opt, quorum, aliases_path, external_path, rule_name, out);
        if (export_cmd->parsed()) return cmd_export(opt, out);
        if (report->parsed())
            return cmd_report(opt, votes_path, phase_name, aliases_path, conflicts_path,
                              weights_text, out, err);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return e.kind() == ErrorKind::IoError ? 2 : 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}

} // namespace stakenet::cli
