#include "mplex/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <tuple>

#include "mplex/types.hpp"

namespace mplex {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

bool parse_index(const std::string& tok, long long& out) {
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last;
}

bool parse_weight(const std::string& tok, double& out) {
  std::istringstream is(tok);
  is >> out;
  return !is.fail() && is.eof();
}

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw DataError("line " + std::to_string(line) + ": " + what);
}

std::size_t to_one_based(long long v, bool zero_based, std::size_t line, const char* what) {
  const long long shifted = zero_based ? v + 1 : v;
  if (shifted < 1) fail(line, std::string(what) + " index must be " + (zero_based ? ">= 0" : ">= 1"));
  return static_cast<std::size_t>(shifted);
}

std::ifstream open(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw DataError("cannot open " + p.string());
  return in;
}

}  // namespace

std::vector<EdgeRecord> parse_edge_records(std::istream& in, bool zero_based) {
  std::vector<EdgeRecord> out;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string text = trim(raw);
    if (text.empty() || text.front() == '#') continue;
    std::istringstream is(text);
    std::vector<std::string> tok;
    for (std::string t; is >> t;) tok.push_back(t);
    if (tok.size() < 3 || tok.size() > 4)
      fail(line, "expected `layer src dst [weight]`, got " + std::to_string(tok.size()) + " fields");
    long long idx[3];
    for (int f = 0; f < 3; ++f)
      if (!parse_index(tok[f], idx[f])) fail(line, "not an integer index: '" + tok[f] + "'");
    EdgeRecord r;
    r.line = line;
    r.layer = to_one_based(idx[0], zero_based, line, "layer");
    r.src = to_one_based(idx[1], zero_based, line, "vertex");
    r.dst = to_one_based(idx[2], zero_based, line, "vertex");
    if (tok.size() == 4) {
      if (!parse_weight(tok[3], r.weight)) fail(line, "not a number: '" + tok[3] + "'");
      if (!(r.weight > 0.0) || !std::isfinite(r.weight)) fail(line, "edge weight must be positive and finite");
    }
    if (r.src == r.dst) fail(line, "self-loop at vertex " + std::to_string(r.src));
    out.push_back(r);
  }
  return out;
}

std::vector<std::string> parse_labels(std::istream& in, bool zero_based) {
  std::vector<std::string> labels;
  std::string raw;
  std::size_t line = 0;
  bool first = true;
  while (std::getline(in, raw)) {
    ++line;
    const std::string text = trim(raw);
    if (text.empty() || text.front() == '#') continue;
    const auto split = text.find_first_of(" \t");
    const std::string head = text.substr(0, split);
    long long idx = 0;
    if (!parse_index(head, idx)) {
      if (first) {  // column header
        first = false;
        continue;
      }
      fail(line, "label line must start with an index");
    }
    first = false;
    const std::size_t pos = to_one_based(idx, zero_based, line, "label") - 1;
    if (labels.size() <= pos) labels.resize(pos + 1);
    labels[pos] = split == std::string::npos ? std::string{} : trim(text.substr(split));
  }
  return labels;
}

MultiplexNetwork build_multiplex(const std::vector<EdgeRecord>& records, const LoadOptions& options,
                                 std::vector<std::string> vertex_labels, std::vector<std::string> layer_labels) {
  std::size_t n = vertex_labels.size();
  std::size_t nl = layer_labels.size();
  for (const auto& r : records) {
    n = std::max({n, r.src, r.dst});
    nl = std::max(nl, r.layer);
  }
  if (n == 0 || nl == 0) throw DataError("the edges file defines no vertices or layers");
  if (!vertex_labels.empty()) vertex_labels.resize(n);
  if (!layer_labels.empty()) layer_labels.resize(nl);

  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, std::pair<double, std::size_t>> seen;
  auto insert = [&](std::size_t layer, std::size_t s, std::size_t t, const EdgeRecord& r) {
    auto [it, fresh] = seen.try_emplace({layer, s, t}, r.weight, r.line);
    if (!fresh && it->second.first != r.weight)
      fail(r.line, "edge (" + std::to_string(layer) + ", " + std::to_string(s) + ", " + std::to_string(t) +
                       ") conflicts with the weight given on line " + std::to_string(it->second.second));
  };
  for (const auto& r : records) {
    insert(r.layer, r.src, r.dst, r);
    if (options.undirected) insert(r.layer, r.dst, r.src, r);
  }

  std::vector<WeightedEdge> edges;
  edges.reserve(seen.size());
  for (const auto& [key, value] : seen) {
    const auto [layer, s, t] = key;
    edges.push_back({static_cast<LayerId>(layer - 1), static_cast<VertexId>(s - 1), static_cast<VertexId>(t - 1),
                     value.first});
  }
  MultiplexNetwork net(n, nl, edges, std::move(vertex_labels), std::move(layer_labels));
  return options.largest_component_only ? largest_component(net) : net;
}

MultiplexNetwork load_multiplex(const std::filesystem::path& edges_path, const LoadOptions& options) {
  auto in = open(edges_path);
  const auto records = parse_edge_records(in, options.zero_based);
  std::vector<std::string> vlabels, llabels;
  if (options.vertex_labels) {
    auto lin = open(*options.vertex_labels);
    vlabels = parse_labels(lin, options.zero_based);
  }
  if (options.layer_labels) {
    auto lin = open(*options.layer_labels);
    llabels = parse_labels(lin, options.zero_based);
  }
  return build_multiplex(records, options, std::move(vlabels), std::move(llabels));
}

MultiplexNetwork largest_component(const MultiplexNetwork& network) {
  const std::size_t n = network.n_vertices();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  const auto edges = network.edges();
  for (const auto& e : edges) {
    const auto a = find(e.source), b = find(e.target);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::size_t> size(n, 0);
  for (std::size_t v = 0; v < n; ++v) ++size[find(v)];
  std::size_t root = 0;
  for (std::size_t v = 0; v < n; ++v)
    if (size[v] > size[root]) root = v;

  std::vector<VertexId> remap(n, static_cast<VertexId>(-1));
  std::vector<std::string> labels;
  VertexId next = 0;
  for (std::size_t v = 0; v < n; ++v) {
    if (find(v) != root) continue;
    remap[v] = next++;
    labels.push_back(network.vertex_labels().empty() ? std::to_string(v + 1) : network.vertex_labels()[v]);
  }
  std::vector<WeightedEdge> kept;
  for (const auto& e : edges)
    if (remap[e.source] != static_cast<VertexId>(-1))
      kept.push_back({e.layer, remap[e.source], remap[e.target], e.weight});
  return MultiplexNetwork(next, network.n_layers(), kept, std::move(labels), network.layer_labels());
}

void write_edges(const MultiplexNetwork& network, std::ostream& out) {
  char buf[64];
  for (const auto& e : network.edges()) {
    std::snprintf(buf, sizeof buf, "%.17g", e.weight);
    out << e.layer + 1 << ' ' << e.source + 1 << ' ' << e.target + 1 << ' ' << buf << '\n';
  }
}

nlohmann::json length_to_json(double x) { return is_finite_length(x) ? nlohmann::json(x) : nlohmann::json(nullptr); }

nlohmann::json report_skeleton(const MultiplexNetwork& network, double gamma, std::size_t k) {
  return {{"n", network.n_vertices()},
          {"l", network.n_layers()},
          {"gamma", gamma},
          {"k", k},
          {"efficiency", nullptr},
          {"h_in", nullptr},
          {"h_out", nullptr},
          {"diameter", nullptr},
          {"fixed_point_k", nullptr},
          {"redundant", nullptr},
          {"recommendation", nullptr}};
}

nlohmann::json to_json(const Diameter& d) {
  nlohmann::json pairs = nlohmann::json::array();
  for (const auto& [i, j] : d.pairs) pairs.push_back({i + 1, j + 1});
  return {{"value", d.value}, {"pairs", pairs}, {"disconnected", d.disconnected}};
}

nlohmann::json to_json(const LengthMatrix& p) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < p.size(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (double x : p.row(i)) row.push_back(length_to_json(x));
    rows.push_back(std::move(row));
  }
  return rows;
}

nlohmann::json to_json(const std::vector<RedundantEdge>& edges) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& e : edges)
    out.push_back({{"src", e.source + 1},
                   {"dst", e.target + 1},
                   {"layer", e.layer + 1},
                   {"weight", e.weight},
                   {"bound", e.bound},
                   {"k_detected", e.k_detected},
                   {"undirected", e.undirected_pair}});
  return out;
}

nlohmann::json to_json(const Recommendation& rec) {
  nlohmann::json pairs = nlohmann::json::array();
  for (const auto& [h, k] : rec.pairs) pairs.push_back({h + 1, k + 1});
  nlohmann::json strengthened = nlohmann::json::array();
  for (const auto& s : rec.strengthened)
    strengthened.push_back({{"src", s.source + 1},
                            {"dst", s.target + 1},
                            {"layer", s.layer + 1},
                            {"old_weight", s.old_weight},
                            {"new_weight", s.new_weight}});
  nlohmann::json j = {{"method", std::string(to_string(rec.method))},
                      {"k", rec.k},
                      {"pairs", pairs},
                      {"applied", {rec.applied.first + 1, rec.applied.second + 1}},
                      {"score", rec.score},
                      {"strengthened", strengthened},
                      {"efficiency_before", rec.efficiency_before},
                      {"efficiency_after", rec.efficiency_after},
                      {"perron", nullptr}};
  if (rec.perron)
    j["perron"] = {{"rho", rec.perron->rho},
                   {"iterations", rec.perron->iterations},
                   {"residual", rec.perron->residual}};
  return j;
}

void fill_efficiency(nlohmann::json& report, const EfficiencyReport& eff) {
  report["efficiency"] = eff.efficiency;
  report["h_in"] = eff.h_in;
  report["h_out"] = eff.h_out;
  report["diameter"] = to_json(eff.diameter);
  report["fixed_point_k"] = eff.fixed_point_k;
}

}  // namespace mplex
