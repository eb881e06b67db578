#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "mplex/analysis.hpp"
#include "mplex/network.hpp"
#include "mplex/paths.hpp"
#include "mplex/perturbation.hpp"

namespace mplex {

/// One line `layer src dst [weight]` of an edges file, 1-based.
struct EdgeRecord {
  std::size_t layer = 1;
  std::size_t src = 1;
  std::size_t dst = 1;
  double weight = 1.0;
  std::size_t line = 0;
};

struct LoadOptions {
  bool undirected = false;              // insert both directions of every record
  bool largest_component_only = false;  // keep the largest connected component
  bool zero_based = false;              // file indices start at 0
  std::optional<std::filesystem::path> vertex_labels;
  std::optional<std::filesystem::path> layer_labels;
};

/// Reads records; `#` comments and blank lines are skipped. Throws DataError
/// with the line number on malformed lines, self-loops, nonpositive indices
/// and nonpositive weights.
std::vector<EdgeRecord> parse_edge_records(std::istream& in, bool zero_based = false);

/// `index label` per line; returns labels indexed by 0-based position.
std::vector<std::string> parse_labels(std::istream& in, bool zero_based = false);

MultiplexNetwork build_multiplex(const std::vector<EdgeRecord>& records, const LoadOptions& options,
                                 std::vector<std::string> vertex_labels = {},
                                 std::vector<std::string> layer_labels = {});

MultiplexNetwork load_multiplex(const std::filesystem::path& edges_path, const LoadOptions& options = {});

/// Largest connected component when every layer switch is allowed (any
/// gamma > 0), edge directions ignored. Vertices are renumbered in their
/// original order; labels follow them, defaulting to the original 1-based index.
MultiplexNetwork largest_component(const MultiplexNetwork& network);

/// Writes `layer src dst weight` lines, 1-based, with round-trip precision.
void write_edges(const MultiplexNetwork& network, std::ostream& out);

// JSON reports use 1-based indices and null for +inf. Every report object
// carries the keys n, l, gamma, k, efficiency, h_in, h_out, diameter,
// fixed_point_k, redundant and recommendation; the ones a command does not
// compute are null.
nlohmann::json report_skeleton(const MultiplexNetwork& network, double gamma, std::size_t k);
nlohmann::json length_to_json(double x);
nlohmann::json to_json(const Diameter& d);
nlohmann::json to_json(const LengthMatrix& p);
nlohmann::json to_json(const std::vector<RedundantEdge>& edges);
nlohmann::json to_json(const Recommendation& rec);
void fill_efficiency(nlohmann::json& report, const EfficiencyReport& eff);

}  // namespace mplex
