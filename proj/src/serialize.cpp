#include "stakenet/serialize.hpp"

#include <map>
#include <sstream>

#include "internal_util.hpp"

namespace stakenet {

using nlohmann::json;
using nlohmann::ordered_json;

nlohmann::ordered_json network_to_json(const StakeholderNetwork& net) {
    ordered_json doc;
    doc["project_id"] = net.project_id();
    doc["nodes"] = ordered_json::array();
    for (const auto& n : net.nodes()) {
        ordered_json node;
        node["id"] = n.id;
        node["role_name"] = n.role_name;
        node["org_group"] = to_string(n.org_group);
        if (n.canonical_role) node["canonical_role"] = *n.canonical_role;
        if (!n.notes.empty()) node["notes"] = n.notes;
        doc["nodes"].push_back(std::move(node));
    }
    doc["edges"] = ordered_json::array();
    for (const auto& e : net.edges()) {
        ordered_json edge;
        edge["from"] = e.from;
        edge["to"] = e.to;
        edge["strength"] = e.strength.value();
        edge["tie"] = to_string(e.tie_type);
        edge["conflict"] = e.conflict;
        if (!e.frequency_label.empty()) edge["frequency"] = e.frequency_label;
        if (!e.provenance.empty()) edge["provenance"] = e.provenance;
        doc["edges"].push_back(std::move(edge));
    }
    return doc;
}

RelationEdge edge_from_json(const json& item) {
    RelationEdge e;
    try {
        e.from = item.at("from").get<std::string>();
        e.to = item.at("to").get<std::string>();
        e.strength = Strength(item.value("strength", 1));
        if (item.contains("tie") && !item.at("tie").is_null()) {
            const auto tie = parse_tie_type(item.at("tie").get<std::string>());
            if (!tie)
                fail(ErrorKind::UnknownTieType, "tie '" + item.at("tie").get<std::string>() + "'");
            e.tie_type = *tie;
        }
        e.conflict = item.value("conflict", false);
        e.frequency_label = item.value("frequency", std::string{});
        for (const auto& id : item.value("provenance", json::array()))
            e.provenance.push_back(id.get<std::string>());
    } catch (const json::exception& err) {
        fail(ErrorKind::ParseError, err.what());
    }
    return e;
}

std::vector<RelationEdge> edges_from_json(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        fail(ErrorKind::ParseError, e.what());
    }
    if (!doc.is_array()) fail(ErrorKind::ParseError, "expected a JSON array of edges");
    std::vector<RelationEdge> edges;
    edges.reserve(doc.size());
    for (const auto& item : doc) edges.push_back(edge_from_json(item));
    return edges;
}

StakeholderNetwork network_from_json(const json& doc) {
    if (!doc.is_object() || !doc.contains("nodes") || !doc.contains("edges"))
        fail(ErrorKind::ParseError, "expected an object with 'nodes' and 'edges'");

    std::vector<StakeholderNode> nodes;
    std::vector<RelationEdge> edges;
    std::string project_id;
    try {
        project_id = doc.value("project_id", std::string{"network"});
        for (const auto& item : doc.at("nodes")) {
            StakeholderNode node;
            if (item.is_string()) {
                node.id = item.get<std::string>();
                node.role_name = node.id;
            } else {
                node.id = item.at("id").get<std::string>();
                node.role_name = item.value("role_name", node.id);
                if (item.contains("org_group")) {
                    const auto group = parse_org_group(item.at("org_group").get<std::string>());
                    if (!group)
                        fail(ErrorKind::ParseError,
                             "unknown org_group '" + item.at("org_group").get<std::string>() +
                                 "' on node '" + node.id + "'");
                    node.org_group = *group;
                }
                if (item.contains("canonical_role"))
                    node.canonical_role = item.at("canonical_role").get<std::string>();
                node.notes = item.value("notes", std::string{});
            }
            nodes.push_back(std::move(node));
        }
        for (const auto& item : doc.at("edges")) edges.push_back(edge_from_json(item));
    } catch (const json::exception& e) {
        fail(ErrorKind::ParseError, e.what());
    }
    return build_network(std::move(nodes), std::move(edges), std::move(project_id));
}

nlohmann::ordered_json generic_model_to_json(const GenericModel& model) {
    ordered_json doc = network_to_json(model.network);
    doc["quorum"] = model.quorum;
    for (std::size_t i = 0; i < model.edge_info.size(); ++i) {
        doc["edges"][i]["support"] = model.edge_info[i].support;
        doc["edges"][i]["external_validated"] = model.edge_info[i].external_validated;
    }
    return doc;
}

GenericModel generic_model_from_json(const json& doc) {
    GenericModel model;
    model.network = network_from_json(doc);
    model.quorum = doc.value("quorum", 0);
    model.edge_info.assign(model.network.edges().size(), {});
    try {
        std::map<std::pair<std::string, std::string>, GenericEdgeInfo> info;
        for (const auto& item : doc.at("edges"))
            info[{item.at("from").get<std::string>(), item.at("to").get<std::string>()}] = {
                item.value("support", 0), item.value("external_validated", false)};
        for (std::size_t i = 0; i < model.network.edges().size(); ++i) {
            const auto& e = model.network.edges()[i];
            model.edge_info[i] = info.at({e.from, e.to});
        }
    } catch (const json::exception& e) {
        fail(ErrorKind::ParseError, e.what());
    }
    return model;
}

namespace {

std::string dot_escape(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

std::string xml_escape(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

} // namespace

std::string to_dot(const StakeholderNetwork& net) {
    std::ostringstream out;
    out << "digraph \"" << dot_escape(net.project_id()) << "\" {\n";
    for (const auto& n : net.nodes()) {
        out << "  \"" << dot_escape(n.id) << "\" [label=\"" << dot_escape(n.role_name)
            << "\", org_group=\"" << to_string(n.org_group) << "\"];\n";
    }
    for (const auto& e : net.edges()) {
        out << "  \"" << dot_escape(e.from) << "\" -> \"" << dot_escape(e.to) << "\" [label=\""
            << e.strength.value() << "\", strength=" << e.strength.value() << ", tie=\""
            << to_string(e.tie_type) << "\"";
        if (e.conflict) out << ", conflict=true, color=\"red\"";
        out << "];\n";
    }
    out << "}\n";
    return out.str();
}

std::string to_graphml(const StakeholderNetwork& net) {
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
        << "  <key id=\"d0\" for=\"node\" attr.name=\"role_name\" attr.type=\"string\"/>\n"
        << "  <key id=\"d1\" for=\"node\" attr.name=\"org_group\" attr.type=\"string\"/>\n"
        << "  <key id=\"d2\" for=\"edge\" attr.name=\"strength\" attr.type=\"int\"/>\n"
        << "  <key id=\"d3\" for=\"edge\" attr.name=\"tie\" attr.type=\"string\"/>\n"
        << "  <key id=\"d4\" for=\"edge\" attr.name=\"conflict\" attr.type=\"boolean\"/>\n"
        << "  <graph id=\"" << xml_escape(net.project_id()) << "\" edgedefault=\"directed\">\n";
    for (const auto& n : net.nodes()) {
        out << "    <node id=\"" << xml_escape(n.id) << "\">\n"
            << "      <data key=\"d0\">" << xml_escape(n.role_name) << "</data>\n"
            << "      <data key=\"d1\">" << to_string(n.org_group) << "</data>\n"
            << "    </node>\n";
    }
    std::size_t edge_id = 0;
    for (const auto& e : net.edges()) {
        out << "    <edge id=\"e" << edge_id++ << "\" source=\"" << xml_escape(e.from)
            << "\" target=\"" << xml_escape(e.to) << "\">\n"
            << "      <data key=\"d2\">" << e.strength.value() << "</data>\n"
            << "      <data key=\"d3\">" << to_string(e.tie_type) << "</data>\n"
            << "      <data key=\"d4\">" << (e.conflict ? "true" : "false") << "</data>\n"
            << "    </edge>\n";
    }
    out << "  </graph>\n</graphml>\n";
    return out.str();
}

std::string sociomatrix_to_csv(const Sociomatrix& matrix) {
    std::ostringstream out;
    for (const auto& label : matrix.labels) out << ',' << util::csv_escape(label);
    out << '\n';
    for (std::size_t i = 0; i < matrix.labels.size(); ++i) {
        out << util::csv_escape(matrix.labels[i]);
        for (int cell : matrix.cells[i]) out << ',' << cell;
        out << '\n';
    }
    return out.str();
}

StakeholderNetwork sociomatrix_from_csv(std::string_view content, std::string project_id) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& line : util::split_lines(content)) {
        const auto trimmed = util::trim(line);
        if (trimmed.empty() || trimmed.front() == '#') continue;
        rows.push_back(util::split_csv_line(trimmed));
    }
    if (rows.empty()) fail(ErrorKind::EmptyInput, "empty sociomatrix");

    std::vector<std::string> labels;
    for (std::size_t j = 1; j < rows[0].size(); ++j)
        labels.push_back(std::string(util::trim(rows[0][j])));
    if (rows.size() != labels.size() + 1)
        fail(ErrorKind::NonSquareMatrix, std::to_string(rows.size() - 1) + " rows for " +
                                             std::to_string(labels.size()) + " columns");

    std::vector<std::vector<int>> matrix(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const auto& row = rows[i + 1];
        if (row.size() != labels.size() + 1)
            fail(ErrorKind::NonSquareMatrix, "row " + std::to_string(i + 2) + " has " +
                                                 std::to_string(row.size() - 1) + " cells");
        if (std::string(util::trim(row[0])) != labels[i])
            fail(ErrorKind::ParseError, "row label '" + row[0] + "' does not match column '" +
                                            labels[i] + "'");
        for (std::size_t j = 1; j < row.size(); ++j) {
            const auto value = util::parse_int(row[j]);
            if (!value)
                fail(ErrorKind::ParseError,
                     "cell (" + labels[i] + ", " + labels[j - 1] + ") is not an integer");
            matrix[i].push_back(*value);
        }
    }
    return from_sociomatrix(labels, matrix, std::move(project_id));
}

} // namespace stakenet
