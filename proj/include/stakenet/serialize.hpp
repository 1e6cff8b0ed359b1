#ifndef STAKENET_SERIALIZE_HPP
#define STAKENET_SERIALIZE_HPP

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "stakenet/network.hpp"
#include "stakenet/synthesis.hpp"

namespace stakenet {

/// Canonical network JSON: {project_id, nodes:[...], edges:[...]}.
nlohmann::ordered_json network_to_json(const StakeholderNetwork& net);
StakeholderNetwork network_from_json(const nlohmann::json& doc);

/// One relation in the network-JSON edge shape (used for external-edge files).
RelationEdge edge_from_json(const nlohmann::json& item);
std::vector<RelationEdge> edges_from_json(std::string_view json_text);

nlohmann::ordered_json generic_model_to_json(const GenericModel& model);
GenericModel generic_model_from_json(const nlohmann::json& doc);

/// GraphViz digraph; edge labels carry strengths, conflict edges are
/// marked and colored, nodes carry their organizational group.
std::string to_dot(const StakeholderNetwork& net);

/// GraphML with typed node/edge attribute keys.
std::string to_graphml(const StakeholderNetwork& net);

std::string sociomatrix_to_csv(const Sociomatrix& matrix);
/// First row and column carry node ids; cells are integers 0..3.
StakeholderNetwork sociomatrix_from_csv(std::string_view content, std::string project_id);

} // namespace stakenet

#endif
