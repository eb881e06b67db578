#include "mplex/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "mplex/io.hpp"

namespace mplex {

namespace {

enum class Format { text, csv, json };

struct Config {
  std::string edges;
  std::vector<double> gammas{0.0};
  std::vector<std::string> ks{"max"};
  std::string method = "both";
  bool undirected = false;
  bool largest_component = false;
  bool zero_based = false;
  std::string vertex_labels;
  std::string layer_labels;
  double factor = 0.5;
  std::string format = "text";
  std::string out;
  double tol = 1e-12;
  std::size_t max_iter = 100000;
  bool sets = false;
  std::vector<std::size_t> pair;
  double oracle_tol = 1e-9;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string num(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::string layer_list(const std::vector<LayerId>& layers) {
  std::string s = "{";
  for (std::size_t i = 0; i < layers.size(); ++i) s += (i ? "," : "") + std::to_string(layers[i] + 1);
  return s + "}";
}

std::string pair_text(VertexPair p) { return "(" + std::to_string(p.first + 1) + "," + std::to_string(p.second + 1) + ")"; }

Format parse_format(const std::string& f) {
  if (f == "text") return Format::text;
  if (f == "csv") return Format::csv;
  return Format::json;
}

MultiplexNetwork load(const Config& c) {
  LoadOptions o;
  o.undirected = c.undirected;
  o.largest_component_only = c.largest_component;
  o.zero_based = c.zero_based;
  if (!c.vertex_labels.empty()) o.vertex_labels = c.vertex_labels;
  if (!c.layer_labels.empty()) o.layer_labels = c.layer_labels;
  return load_multiplex(c.edges, o);
}

// Requested budgets; 0 stands for "max" and resolves against a series.
std::vector<std::size_t> budgets(const Config& c) {
  std::vector<std::size_t> out;
  for (const auto& s : c.ks) {
    if (s == "max") {
      out.push_back(0);
      continue;
    }
    std::size_t pos = 0;
    long long v = 0;
    try {
      v = std::stoll(s, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != s.size() || v < 1) throw UsageError("--k expects positive integers or 'max', got '" + s + "'");
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

std::size_t series_cap(const MultiplexNetwork& net, const std::vector<std::size_t>& ks) {
  // The full series is always computed so the fixed point can be reported.
  std::size_t cap = net.n_vertices() > 1 ? net.n_vertices() - 1 : 1;
  for (auto k : ks) cap = std::max(cap, k);
  return cap;
}

std::size_t resolve(const PathSeries& s, std::size_t k) { return k == 0 ? s.computed() : k; }

std::vector<Method> methods(const Config& c) {
  if (c.method == "harmonic") return {Method::harmonic};
  if (c.method == "perron") return {Method::perron};
  return {Method::harmonic, Method::perron};
}

// Runs body over every (gamma, series) combination.
void for_each_gamma(const MultiplexNetwork& net, const Config& c, const std::vector<std::size_t>& ks,
                    const std::function<void(SwitchCost, const PathSeries&)>& body) {
  const PathTensor tensor(net);
  for (double g : c.gammas) {
    const SwitchCost gamma(g);
    body(gamma, k_path_series(tensor, gamma, series_cap(net, ks)));
  }
}

void cmd_info(const MultiplexNetwork& net, const Config& c, Format fmt, std::ostream& out) {
  auto label = [&](LayerId l) -> std::string {
    return net.layer_labels().empty() ? std::string{} : net.layer_labels()[l];
  };
  if (fmt == Format::json) {
    auto j = report_skeleton(net, c.gammas.front(), 1);
    j["layers"] = nlohmann::json::array();
    for (LayerId l = 0; l < net.n_layers(); ++l)
      j["layers"].push_back({{"layer", l + 1},
                             {"label", label(l)},
                             {"edges", net.edge_count(l)},
                             {"undirected", net.is_undirected(l)}});
    out << j.dump(2) << '\n';
    return;
  }
  if (fmt == Format::csv) {
    out << "layer,label,edges,undirected\n";
    for (LayerId l = 0; l < net.n_layers(); ++l)
      out << l + 1 << ',' << label(l) << ',' << net.edge_count(l) << ',' << net.is_undirected(l) << '\n';
    return;
  }
  out << "N = " << net.n_vertices() << "\nL = " << net.n_layers() << "\nedges = " << net.arc_count() << '\n';
  for (LayerId l = 0; l < net.n_layers(); ++l) {
    out << "layer " << l + 1;
    if (!label(l).empty()) out << " (" << label(l) << ")";
    out << ": " << net.edge_count(l) << " edges, " << (net.is_undirected(l) ? "undirected" : "directed") << '\n';
  }
}

void cmd_pathlen(const MultiplexNetwork& net, const Config& c, Format fmt, std::ostream& out) {
  const auto ks = budgets(c);
  const std::size_t n = net.n_vertices();
  nlohmann::json all = nlohmann::json::array();
  if (fmt == Format::csv) out << "gamma,k,src,dst,p" << (c.sets ? ",arrival,start" : "") << '\n';
  for_each_gamma(net, c, ks, [&](SwitchCost gamma, const PathSeries& series) {
    for (auto k0 : ks) {
      const std::size_t k = resolve(series, k0);
      const auto& r = series.at(k);
      if (fmt == Format::json) {
        auto j = report_skeleton(net, gamma.value(), k);
        j["fixed_point_k"] = series.fixed_point_k();
        j["p"] = to_json(r.p);
        if (c.sets) {
          nlohmann::json a = nlohmann::json::array(), s = nlohmann::json::array();
          for (std::size_t i = 0; i < n; ++i) {
            nlohmann::json ar = nlohmann::json::array(), sr = nlohmann::json::array();
            for (std::size_t jj = 0; jj < n; ++jj) {
              nlohmann::json al = nlohmann::json::array(), sl = nlohmann::json::array();
              for (auto l : r.arrival.layers(i, jj)) al.push_back(l + 1);
              for (auto l : r.start.layers(i, jj)) sl.push_back(l + 1);
              ar.push_back(al);
              sr.push_back(sl);
            }
            a.push_back(ar);
            s.push_back(sr);
          }
          j["arrival"] = a;
          j["start"] = s;
        }
        all.push_back(std::move(j));
      } else if (fmt == Format::csv) {
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t jj = 0; jj < n; ++jj) {
            out << num(gamma.value()) << ',' << k << ',' << i + 1 << ',' << jj + 1 << ',' << num(r.p(i, jj));
            if (c.sets) out << ',' << layer_list(r.arrival.layers(i, jj)) << ',' << layer_list(r.start.layers(i, jj));
            out << '\n';
          }
      } else {
        out << "gamma = " << num(gamma.value()) << ", K = " << k << ", fixed point K = " << series.fixed_point_k()
            << '\n';
        for (std::size_t i = 0; i < n; ++i) {
          for (std::size_t jj = 0; jj < n; ++jj) out << (jj ? " " : "") << num(r.p(i, jj));
          out << '\n';
        }
        if (c.sets) {
          for (std::size_t i = 0; i < n; ++i)
            for (std::size_t jj = 0; jj < n; ++jj)
              if (i != jj && is_finite_length(r.p(i, jj)))
                out << "  " << i + 1 << " -> " << jj + 1 << ": start " << layer_list(r.start.layers(i, jj))
                    << ", arrival " << layer_list(r.arrival.layers(i, jj)) << '\n';
        }
      }
    }
  });
  if (fmt == Format::json) out << all.dump(2) << '\n';
}

void cmd_efficiency(const MultiplexNetwork& net, const Config& c, Format fmt, std::ostream& out) {
  const auto ks = budgets(c);
  nlohmann::json all = nlohmann::json::array();
  if (fmt == Format::csv) out << "gamma,k,efficiency,fixed_point_k,diameter,disconnected\n";
  if (fmt == Format::text) out << "gamma K efficiency\n";
  for_each_gamma(net, c, ks, [&](SwitchCost gamma, const PathSeries& series) {
    for (auto k0 : ks) {
      const std::size_t k = resolve(series, k0);
      const auto eff = efficiency_report(series, k);
      if (fmt == Format::json) {
        auto j = report_skeleton(net, gamma.value(), k);
        fill_efficiency(j, eff);
        all.push_back(std::move(j));
      } else if (fmt == Format::csv) {
        out << num(gamma.value()) << ',' << k << ',' << num(eff.efficiency) << ',' << eff.fixed_point_k << ','
            << num(eff.diameter.value) << ',' << eff.diameter.disconnected << '\n';
      } else {
        out << num(gamma.value()) << ' ' << k << ' ' << num(eff.efficiency) << '\n';
      }
    }
  });
  if (fmt == Format::json) out << all.dump(2) << '\n';
}

void cmd_redundant(const MultiplexNetwork& net, const Config& c, Format fmt, std::ostream& out) {
  const auto ks = budgets(c);
  const PathTensor tensor(net);
  nlohmann::json all = nlohmann::json::array();
  if (fmt == Format::csv) out << "gamma,k,layer,src,dst,weight,bound,k_detected,undirected\n";
  for_each_gamma(net, c, ks, [&](SwitchCost gamma, const PathSeries& series) {
    for (auto k0 : ks) {
      const std::size_t k = resolve(series, k0);
      const auto report = earliest_redundancy(tensor, gamma, series, k);
      const auto edges = report.grouped(net);
      if (fmt == Format::json) {
        auto j = report_skeleton(net, gamma.value(), k);
        j["redundant"] = to_json(edges);
        j["conclusive"] = report.conclusive();
        all.push_back(std::move(j));
      } else if (fmt == Format::csv) {
        for (const auto& e : edges)
          out << num(gamma.value()) << ',' << k << ',' << e.layer + 1 << ',' << e.source + 1 << ',' << e.target + 1
              << ',' << num(e.weight) << ',' << num(e.bound) << ',' << e.k_detected << ',' << e.undirected_pair
              << '\n';
      } else {
        out << "gamma = " << num(gamma.value()) << ", K = " << k << ": " << edges.size() << " redundant edge"
            << (edges.size() == 1 ? "" : "s") << (report.conclusive() ? "" : " (budget below the fixed point)")
            << '\n';
        for (const auto& e : edges)
          out << "  layer " << e.layer + 1 << ' ' << e.source + 1 << (e.undirected_pair ? " -- " : " -> ")
              << e.target + 1 << ": weight " << num(e.weight) << " > " << num(e.bound) << ", from K = "
              << e.k_detected << '\n';
      }
    }
  });
  if (fmt == Format::json) out << all.dump(2) << '\n';
}

void cmd_recommend(const MultiplexNetwork& net, const Config& c, Format fmt, std::ostream& out) {
  const auto ks = budgets(c);
  EnhancementOptions opts;
  opts.strengthening.factor = c.factor;
  opts.perron.tol = c.tol;
  opts.perron.max_iter = c.max_iter;
  if (!c.pair.empty()) {
    if (c.pair.size() != 2 || c.pair[0] < 1 || c.pair[1] < 1) throw UsageError("--pair expects two 1-based indices h,k");
    opts.strengthening.pair_override = VertexPair{static_cast<VertexId>(c.pair[0] - 1), static_cast<VertexId>(c.pair[1] - 1)};
  }
  nlohmann::json all = nlohmann::json::array();
  if (fmt == Format::csv) out << "gamma,k,method,pairs,applied,score,layers,efficiency_before,efficiency_after\n";
  for_each_gamma(net, c, ks, [&](SwitchCost gamma, const PathSeries& series) {
    for (auto k0 : ks) {
      const std::size_t k = resolve(series, k0);
      for (auto m : methods(c)) {
        const auto rec = enhancement_report(net, series, k, m, opts);
        std::vector<LayerId> layers;
        for (const auto& s : rec.strengthened)
          if (layers.empty() || layers.back() != s.layer) layers.push_back(s.layer);
        std::string pairs;
        for (std::size_t i = 0; i < rec.pairs.size(); ++i) pairs += (i ? " " : "") + pair_text(rec.pairs[i]);
        if (fmt == Format::json) {
          auto j = report_skeleton(net, gamma.value(), k);
          j["recommendation"] = to_json(rec);
          all.push_back(std::move(j));
        } else if (fmt == Format::csv) {
          out << num(gamma.value()) << ',' << k << ',' << to_string(m) << ',' << pairs << ','
              << pair_text(rec.applied) << ',' << num(rec.score) << ',' << layer_list(layers) << ','
              << num(rec.efficiency_before) << ',' << num(rec.efficiency_after) << '\n';
        } else {
          out << "gamma = " << num(gamma.value()) << ", K = " << k << ", " << to_string(m) << ": " << pairs
              << "\n  strengthen " << pair_text(rec.applied) << " in layers " << layer_list(layers)
              << "\n  efficiency " << num(rec.efficiency_before) << " -> " << num(rec.efficiency_after) << '\n';
        }
      }
    }
  });
  if (fmt == Format::json) out << all.dump(2) << '\n';
}

double max_deviation(const LengthMatrix& a, const LengthMatrix& b) {
  double dev = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) {
      const double x = a(i, j), y = b(i, j);
      if (is_finite_length(x) != is_finite_length(y)) return kInfinity;
      if (is_finite_length(x)) dev = std::max(dev, std::abs(x - y));
    }
  return dev;
}

bool cmd_oracle(const MultiplexNetwork& net, const Config& c, Format fmt, std::ostream& out) {
  const PathTensor tensor(net);
  bool ok = true;
  nlohmann::json all = nlohmann::json::array();
  if (fmt == Format::csv) out << "gamma,max_deviation,pass\n";
  for (double g : c.gammas) {
    const SwitchCost gamma(g);
    const auto series = k_path_series(tensor, gamma);
    const double dev = max_deviation(series.final().p, supra_dijkstra_oracle(net, gamma));
    const bool pass = dev <= c.oracle_tol;
    ok = ok && pass;
    if (fmt == Format::json) {
      auto j = report_skeleton(net, g, series.computed());
      j["fixed_point_k"] = series.fixed_point_k();
      j["max_deviation"] = length_to_json(dev);
      j["pass"] = pass;
      all.push_back(std::move(j));
    } else if (fmt == Format::csv) {
      out << num(g) << ',' << num(dev) << ',' << pass << '\n';
    } else {
      out << "gamma = " << num(g) << ": max deviation " << num(dev) << (pass ? " ok" : " FAILED") << '\n';
    }
  }
  if (fmt == Format::json) out << all.dump(2) << '\n';
  return ok;
}

void add_common(CLI::App* sub, Config& c) {
  sub->add_option("edges", c.edges, "edges file, one `layer src dst [weight]` per line")->required();
  sub->add_flag("--undirected", c.undirected, "insert both directions of every record");
  sub->add_flag("--largest-component", c.largest_component, "keep only the largest connected component");
  sub->add_flag("--zero-based", c.zero_based, "file indices start at 0");
  sub->add_option("--vertex-labels", c.vertex_labels, "vertex label file, `index label` per line");
  sub->add_option("--layer-labels", c.layer_labels, "layer label file, `index label` per line");
  sub->add_option("--format", c.format, "output format")->check(CLI::IsMember({"text", "csv", "json"}));
  sub->add_option("--out", c.out, "write the report to this file");
}

void add_grid(CLI::App* sub, Config& c) {
  sub->add_option("--gamma", c.gammas, "switch costs, comma separated")->delimiter(',')->check(CLI::NonNegativeNumber);
  sub->add_option("--k", c.ks, "intra-layer edge budgets, comma separated, or 'max'")->delimiter(',');
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multiplex K-path lengths, redundancy, efficiency and edge strengthening"};
  app.name("mplex");
  app.require_subcommand(1);
  Config c;

  auto* info = app.add_subcommand("info", "vertex, layer and edge counts");
  add_common(info, c);
  auto* pathlen = app.add_subcommand("pathlen", "K-path length matrices");
  add_common(pathlen, c);
  add_grid(pathlen, c);
  pathlen->add_flag("--sets", c.sets, "also print start and arrival layer sets");
  auto* efficiency = app.add_subcommand("efficiency", "global K-efficiency over gamma and K grids");
  add_common(efficiency, c);
  add_grid(efficiency, c);
  auto* redundant = app.add_subcommand("redundant", "K-redundant intra-layer edges");
  add_common(redundant, c);
  add_grid(redundant, c);
  auto* recommend = app.add_subcommand("recommend", "edge to strengthen and the resulting efficiency");
  add_common(recommend, c);
  add_grid(recommend, c);
  recommend->add_option("--method", c.method, "selection rule")->check(CLI::IsMember({"harmonic", "perron", "both"}));
  recommend->add_option("--factor", c.factor, "weight multiplier for strengthened edges")
      ->check(CLI::Range(0.0, 1.0));
  recommend->add_option("--tol", c.tol, "Perron residual tolerance")->check(CLI::PositiveNumber);
  recommend->add_option("--max-iter", c.max_iter, "Perron iteration limit");
  recommend->add_option("--pair", c.pair, "strengthen this pair h,k instead of the first selected")->delimiter(',');
  auto* oracle = app.add_subcommand("oracle-check", "compare the path engine with supra-graph Dijkstra");
  add_common(oracle, c);
  oracle->add_option("--gamma", c.gammas, "switch costs, comma separated")->delimiter(',')->check(CLI::NonNegativeNumber);
  oracle->add_option("--tol", c.oracle_tol, "largest accepted deviation");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    const Format fmt = parse_format(c.format);
    if (c.factor <= 0.0 || c.factor >= 1.0) throw UsageError("--factor must lie strictly between 0 and 1");
    const auto net = load(c);

    std::ofstream file;
    if (!c.out.empty()) {
      file.open(c.out);
      if (!file) throw DataError("cannot write " + c.out);
    }
    std::ostream& dst = c.out.empty() ? out : file;

    if (info->parsed()) cmd_info(net, c, fmt, dst);
    if (pathlen->parsed()) cmd_pathlen(net, c, fmt, dst);
    if (efficiency->parsed()) cmd_efficiency(net, c, fmt, dst);
    if (redundant->parsed()) cmd_redundant(net, c, fmt, dst);
    if (recommend->parsed()) cmd_recommend(net, c, fmt, dst);
    if (oracle->parsed() && !cmd_oracle(net, c, fmt, dst)) {
      err << "mplex: path lengths deviate from the Dijkstra oracle\n";
      return 3;
    }
    return 0;
  } catch (const UsageError& e) {
    err << "mplex: " << e.what() << '\n';
    return 1;
  } catch (const NumericalError& e) {
    err << "mplex: " << e.what() << '\n';
    return 3;
  } catch (const DataError& e) {
    err << "mplex: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "mplex: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace mplex
