#include "netclass/serialize.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "netclass/error.hpp"

namespace netclass {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ValidationError(std::string("missing JSON field '") + key + "'");
  return j.at(key);
}

double number(const Json& j, const char* key) {
  const auto& v = field(j, key);
  if (!v.is_number()) throw ValidationError(std::string("JSON field '") + key + "' must be a number");
  return v.get<double>();
}

std::vector<double> numbers(const Json& j, const char* key) {
  const auto& v = field(j, key);
  if (!v.is_array()) throw ValidationError(std::string("JSON field '") + key + "' must be an array");
  std::vector<double> out;
  for (const auto& x : v) {
    if (!x.is_number()) throw ValidationError(std::string("JSON field '") + key + "' must hold numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

template <std::size_t N>
Json named_counts(const std::array<std::uint64_t, N>& counts, const std::array<std::string_view, N>& names) {
  Json j = Json::object();
  for (std::size_t i = 0; i < N; ++i) j[std::string(names[i])] = counts[i];
  return j;
}

template <std::size_t N>
std::array<std::uint64_t, N> named_counts_from(const Json& j, const char* key,
                                               const std::array<std::string_view, N>& names) {
  const auto& obj = field(j, key);
  std::array<std::uint64_t, N> out{};
  for (std::size_t i = 0; i < N; ++i) {
    const std::string name(names[i]);
    const auto& v = field(obj, name.c_str());
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
      throw ValidationError("count '" + name + "' must be a nonnegative integer");
    out[i] = v.get<std::uint64_t>();
  }
  return out;
}

}  // namespace

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(0, e.what());
  }
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json(buf.str());
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw ValidationError("failed writing '" + path.string() + "'");
}

Json to_json(const PropertyBlock& b) {
  Json j;
  j["in_degrees"] = b.in_degrees;
  j["out_degrees"] = b.out_degrees;
  j["entropy_in"] = b.entropy_in;
  j["entropy_out"] = b.entropy_out;
  j["clustering"] = b.clustering;
  j["pagerank"] = b.pagerank;
  j["n_communities"] = b.n_communities;
  j["triad_census"] = named_counts(b.triad_census, kTriadNames);
  j["four_motifs"] = named_counts(b.four_motifs, kFourMotifNames);
  return j;
}

Json to_json(const FeatureSet& f) {
  Json j;
  j["direct"] = to_json(f.direct);
  j["markov5"] = to_json(f.markov5);
  return j;
}

PropertyBlock property_block_from_json(const Json& j) {
  PropertyBlock b;
  b.in_degrees = numbers(j, "in_degrees");
  b.out_degrees = numbers(j, "out_degrees");
  b.entropy_in = number(j, "entropy_in");
  b.entropy_out = number(j, "entropy_out");
  b.clustering = number(j, "clustering");
  b.pagerank = numbers(j, "pagerank");
  const auto& nc = field(j, "n_communities");
  if (!nc.is_number_unsigned()) throw ValidationError("n_communities must be a nonnegative integer");
  b.n_communities = nc.get<std::size_t>();
  b.triad_census = named_counts_from(j, "triad_census", kTriadNames);
  b.four_motifs = named_counts_from(j, "four_motifs", kFourMotifNames);
  if (b.in_degrees.empty() || b.in_degrees.size() != b.out_degrees.size() ||
      b.in_degrees.size() != b.pagerank.size())
    throw ValidationError("degree and pagerank vectors must be nonempty and equally long");
  return b;
}

FeatureSet feature_set_from_json(const Json& j) {
  return {property_block_from_json(field(j, "direct")), property_block_from_json(field(j, "markov5"))};
}

Json to_json(const EnsembleWeights& w) {
  Json weights = Json::object(), scales = Json::object();
  for (std::size_t i = 0; i < kPropertyCount; ++i) {
    weights[std::string(kPropertyNames[i])] = w.weights[i];
    scales[std::string(kPropertyNames[i])] = w.scales[i];
  }
  Json j;
  j["weights"] = weights;
  j["scales"] = scales;
  return j;
}

EnsembleWeights weights_from_json(const Json& j) {
  EnsembleWeights w;
  const auto& weights = field(j, "weights");
  const auto& scales = field(j, "scales");
  double total = 0.0;
  for (std::size_t i = 0; i < kPropertyCount; ++i) {
    const std::string name(kPropertyNames[i]);
    w.weights[i] = number(weights, name.c_str());
    w.scales[i] = number(scales, name.c_str());
    if (!(w.weights[i] >= 0.0) || !std::isfinite(w.weights[i]))
      throw ValidationError("weight '" + name + "' must be finite and nonnegative");
    if (!(w.scales[i] > 0.0) || !std::isfinite(w.scales[i]))
      throw ValidationError("scale '" + name + "' must be finite and positive");
    total += w.weights[i];
  }
  if (std::abs(total - 1.0) > 1e-9) throw ValidationError("weights must sum to 1");
  return w;
}

EnsembleWeights read_weights_file(const std::filesystem::path& path) {
  return weights_from_json(read_json_file(path));
}

Json to_json(const MechanismSpec& spec) {
  Json j;
  j["kind"] = std::string(to_string(spec.kind));
  j["param"] = spec.param;
  return j;
}

MechanismSpec mechanism_spec_from_json(const Json& j) {
  const auto& kind = field(j, "kind");
  if (!kind.is_string()) throw ValidationError("mechanism kind must be a string");
  MechanismSpec spec{parse_mechanism(kind.get<std::string>()), number(j, "param")};
  validate(spec);
  return spec;
}

Json to_json(const MixtureAssignment& assignment) {
  Json j = Json::array();
  for (const auto& spec : assignment) j.push_back(to_json(spec));
  return j;
}

MixtureAssignment assignment_from_json(const Json& j) {
  if (!j.is_array()) throw ValidationError("assignment must be a JSON array of {kind, param} records");
  MixtureAssignment out;
  for (const auto& rec : j) out.push_back(mechanism_spec_from_json(rec));
  return out;
}

Json to_json(const ClassificationReport& report) {
  Json j;
  j["alpha"] = report.alpha;
  j["tests"] = Json::array();
  for (const auto& t : report.tests) {
    Json r;
    r["mechanism"] = std::string(to_string(t.kind));
    r["best_param"] = t.best_param;
    r["ks_statistic"] = t.ks_statistic;
    r["p_value"] = t.p_value;
    r["asymptotic_p_value"] = t.asymptotic_p_value;
    r["consistent"] = t.consistent;
    j["tests"].push_back(r);
  }
  j["verdict"] = Json::array();
  for (auto kind : report.verdict) j["verdict"].push_back(std::string(to_string(kind)));
  return j;
}

Json to_json(const AscendencyResult& r) {
  Json j;
  j["ascendency"] = r.ascendency;
  j["capacity"] = r.capacity;
  j["normalized"] = r.normalized;
  return j;
}

Json to_json(const MechanismVector& v) {
  Json j;
  for (auto kind : kAllMechanisms) j[std::string(to_string(kind))] = v[mechanism_index(kind)];
  return j;
}

MechanismVector mechanism_vector_from_json(const Json& j) {
  MechanismVector v{};
  for (auto kind : kAllMechanisms) {
    const std::string name(to_string(kind));
    v[mechanism_index(kind)] = number(j, name.c_str());
  }
  return v;
}

Json to_json(const MixturePanelEntry& e) {
  Json j;
  j["id"] = e.id;
  j["proportions"] = to_json(e.proportions);
  j["params"] = to_json(e.params);
  j["normalized_ascendency"] = e.normalized_ascendency;
  j["features"] = to_json(e.features);
  return j;
}

MixturePanelEntry panel_entry_from_json(const Json& j) {
  MixturePanelEntry e;
  const auto& id = field(j, "id");
  if (!id.is_string()) throw ValidationError("panel entry id must be a string");
  e.id = id.get<std::string>();
  e.proportions = mechanism_vector_from_json(field(j, "proportions"));
  e.params = mechanism_vector_from_json(field(j, "params"));
  double total = 0.0;
  for (double p : e.proportions) {
    if (!(p >= 0.0)) throw ValidationError("proportions must be nonnegative");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9) throw ValidationError("proportions of '" + e.id + "' must sum to 1");
  e.normalized_ascendency = number(j, "normalized_ascendency");
  e.features = feature_set_from_json(field(j, "features"));
  return e;
}

Json panel_to_json(std::span<const MixturePanelEntry> panel) {
  Json j;
  j["entries"] = Json::array();
  for (const auto& e : panel) j["entries"].push_back(to_json(e));
  return j;
}

std::vector<MixturePanelEntry> panel_from_json(const Json& j) {
  const auto& entries = field(j, "entries");
  if (!entries.is_array()) throw ValidationError("panel entries must be an array");
  std::vector<MixturePanelEntry> panel;
  for (const auto& e : entries) panel.push_back(panel_entry_from_json(e));
  return panel;
}

}  // namespace netclass
