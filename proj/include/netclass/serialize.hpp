#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "netclass/classifier.hpp"
#include "netclass/distance.hpp"
#include "netclass/features.hpp"
#include "netclass/function_predict.hpp"
#include "netclass/generators.hpp"

namespace netclass {

// Key order is kept as written so files diff cleanly.
using Json = nlohmann::ordered_json;

/// Pretty-printed with a trailing newline.
std::string dump(const Json& j);

/// Parses text, or the file's contents; syntax errors become ParseError.
Json parse_json(const std::string& text);
Json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

Json to_json(const PropertyBlock& block);
Json to_json(const FeatureSet& features);
PropertyBlock property_block_from_json(const Json& j);
FeatureSet feature_set_from_json(const Json& j);

/// {"weights": {name: w, ...}, "scales": {name: s, ...}} over kPropertyNames.
Json to_json(const EnsembleWeights& weights);
EnsembleWeights weights_from_json(const Json& j);
EnsembleWeights read_weights_file(const std::filesystem::path& path);

Json to_json(const MechanismSpec& spec);
MechanismSpec mechanism_spec_from_json(const Json& j);
/// A list of {"kind": name, "param": x} records, one per node.
Json to_json(const MixtureAssignment& assignment);
MixtureAssignment assignment_from_json(const Json& j);

Json to_json(const ClassificationReport& report);
Json to_json(const AscendencyResult& result);

Json to_json(const MechanismVector& per_mechanism);
MechanismVector mechanism_vector_from_json(const Json& j);

Json to_json(const MixturePanelEntry& entry);
MixturePanelEntry panel_entry_from_json(const Json& j);
Json panel_to_json(std::span<const MixturePanelEntry> panel);
std::vector<MixturePanelEntry> panel_from_json(const Json& j);

}  // namespace netclass
