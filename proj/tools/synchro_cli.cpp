// synchro: command-line front end. Reports go to stdout as JSON, logs to stderr.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "synchro/catalog.hpp"
#include "synchro/io.hpp"
#include "synchro/latin.hpp"
#include "synchro/search.hpp"
#include "synchro/srg.hpp"
#include "synchro/synchro.hpp"

using json = nlohmann::ordered_json;
using namespace synchro;

namespace {

constexpr int exit_failure = 1;
constexpr int exit_usage = 2;
constexpr int exit_budget = 3;

struct Globals {
  double budget = 0.0;
  unsigned jobs = 1;
  std::uint64_t seed = 0;
  bool compact = false;
};

/// Accumulates everything that goes into the report.
class Report {
 public:
  explicit Report(std::string command) : command_(std::move(command)), start_(std::chrono::steady_clock::now()) {}

  void digest(std::string_view label, std::string_view data) {
    feed(label);
    feed("\x1f");
    feed(data);
    feed("\x1e");
  }

  json& results() { return results_; }
  void mark_partial() { partial_ = true; }
  bool partial() const { return partial_; }

  json finish(std::uint64_t seed) const {
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start_;
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(hash_));
    json out;
    out["command"] = command_;
    out["inputs_digest"] = hex;
    out["results"] = results_;
    out["status"] = partial_ ? "budget_exceeded" : "complete";
    out["timing"] = {{"seconds", elapsed.count()}};
    out["seed"] = seed;
    return out;
  }

 private:
  void feed(std::string_view s) {
    for (unsigned char c : s) {
      hash_ ^= c;
      hash_ *= 1099511628211ULL;
    }
  }

  std::string command_;
  std::chrono::steady_clock::time_point start_;
  std::uint64_t hash_ = 1469598103934665603ULL;
  json results_ = json::object();
  bool partial_ = false;
};

constexpr std::string_view catalog_prefix = "catalog:";

bool is_catalog_ref(const std::string& spec) { return spec.rfind(catalog_prefix, 0) == 0; }

std::string source_text(const std::string& spec) {
  return is_catalog_ref(spec) ? spec : io::read_file(spec);
}

PermGroup load_group(const std::string& spec, Report& r) {
  r.digest("group", source_text(spec));
  if (is_catalog_ref(spec)) return catalog::build_group(spec.substr(catalog_prefix.size()));
  return io::parse_group(io::read_file(spec));
}

Graph load_graph(const std::string& spec, Report& r) {
  r.digest("graph", source_text(spec));
  if (is_catalog_ref(spec)) return catalog::build_graph(spec.substr(catalog_prefix.size()));
  return io::parse_graph(io::read_file(spec));
}

/// A file holding an image list, or the list itself when it starts with '['.
Transformation load_map(const std::string& spec, Report& r) {
  const std::string text = !spec.empty() && spec.front() == '[' ? spec : io::read_file(spec);
  r.digest("map", text);
  return io::parse_transformation(text);
}

LatinSquare load_square(const std::string& path, Report& r) {
  const auto text = io::read_file(path);
  r.digest("square", text);
  return parse_latin_square(text);
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::BadInput, "cannot write " + path);
  out << text;
}

std::optional<std::chrono::duration<double>> budget_of(const Globals& g) {
  if (g.budget <= 0.0) return std::nullopt;
  return std::chrono::duration<double>(g.budget);
}

SearchOptions search_options(const Globals& g) {
  SearchOptions o;
  o.time_budget = budget_of(g);
  o.parallelism = std::max(1u, g.jobs);
  return o;
}

std::vector<std::size_t> one_based(std::span<const point> pts) {
  std::vector<std::size_t> out;
  for (point p : pts) out.push_back(std::size_t{p} + 1);
  return out;
}

json graph_summary(const Graph& g) {
  json j;
  j["order"] = g.order();
  j["edges"] = g.edge_count();
  if (auto k = g.valency()) j["valency"] = *k;
  else j["valency"] = nullptr;
  return j;
}

json by_rank_json(const std::map<std::size_t, std::uint64_t>& m) {
  json j = json::object();
  for (auto [r, c] : m) j[std::to_string(r)] = c;
  return j;
}

json map_summary(const Transformation& f) {
  return {{"degree", f.degree()}, {"rank", f.rank()}, {"kernel_type", kernel_type(f).to_string()}, {"uniform", is_uniform(f)}};
}

io::GraphFormat parse_format(const std::string& s) {
  if (s == "graph6") return io::GraphFormat::Graph6;
  if (s == "adjacency") return io::GraphFormat::AdjacencyList;
  throw Error(ErrorCode::BadParameter, "format must be graph6 or adjacency");
}

// ------------------------------------------------------------------- commands

void sync_check(const std::string& group, const std::string& map, Report& r) {
  const auto g = load_group(group, r);
  const auto f = load_map(map, r);
  r.results()["synchronizes"] = synchronizes(g, f);
  r.results()["map"] = map_summary(f);
}

void sync_graph(const std::string& group, const std::string& map, bool derived, const std::string& format,
                const std::string& out, Report& r) {
  const auto g = load_group(group, r);
  const auto f = load_map(map, r);
  Graph gr = graph_of(g, f);
  if (derived && !gr.is_null()) gr = derived_graph(gr);
  const auto text = io::format_graph(gr, parse_format(format));
  if (!out.empty()) write_file(out, text);
  auto& res = r.results();
  res["derived"] = derived;
  res["null"] = gr.is_null();
  res["graph"] = graph_summary(gr);
  res["graph6"] = io::to_graph6(gr);
  if (!gr.is_null() && gr.valency()) res["neighbourhood_bound"] = neighbourhood_bound_check(gr);
}

void sync_minrank(const std::string& group, const std::string& map, const Globals& gl, Report& r) {
  const auto g = load_group(group, r);
  const auto f = load_map(map, r);
  r.results()["synchronizes"] = synchronizes(g, f);
  r.results()["min_rank"] = min_rank(g, f, budget_of(gl));
}

void sync_scan(const std::string& group, const std::vector<std::size_t>& ranks, std::size_t samples, const Globals& gl,
               Report& r) {
  const auto g = load_group(group, r);
  const auto rep = synchronization_rank_scan(g, samples, std::set<std::size_t>(ranks.begin(), ranks.end()), gl.seed);
  json summary = json::object();
  for (const auto& [rank, counts] : rep.summary())
    summary[std::to_string(rank)] = {{"synchronized", counts.first}, {"total", counts.second}};
  json failures = json::array();
  for (const auto& e : rep.entries)
    if (!e.synchronized) failures.push_back(io::format_transformation(e.map));
  r.results()["samples"] = samples;
  r.results()["summary"] = summary;
  r.results()["all_synchronized"] = rep.all_synchronized();
  r.results()["unsynchronized"] = failures;
}

void graph_clique(const std::string& graph, const Globals& gl, Report& r) {
  const auto g = load_graph(graph, r);
  const auto c = clique_number(g, budget_of(gl));
  if (c.status != SearchStatus::Complete) r.mark_partial();
  r.results()["clique_number"] = c.size;
  r.results()["witness"] = one_based(c.witness);
}

void graph_chroma(const std::string& graph, const Globals& gl, Report& r) {
  const auto g = load_graph(graph, r);
  const auto c = chromatic_number(g, budget_of(gl));
  if (c.status != SearchStatus::Complete) r.mark_partial();
  r.results()["chromatic_number"] = c.colours;
  r.results()["colouring"] = c.colouring;
}

void graph_endos(const std::string& graph, bool proper, bool count_only, const std::vector<std::size_t>& ranks,
                 const std::string& out, const Globals& gl, Report& r) {
  const auto g = load_graph(graph, r);
  auto opts = search_options(gl);
  opts.proper_only = proper;
  opts.rank_filter = std::set<std::size_t>(ranks.begin(), ranks.end());
  opts.count_only = count_only && out.empty();
  std::map<std::size_t, std::map<std::string, std::uint64_t>> kernels;
  std::ofstream file;
  if (!out.empty()) {
    file.open(out, std::ios::binary);
    if (!file) throw Error(ErrorCode::BadInput, "cannot write " + out);
  }
  EnumerationResult res;
  if (opts.count_only) {
    res = enumerate_endomorphisms(g, opts);
  } else {
    std::mutex mu;
    res = enumerate_endomorphisms(g, opts, [&](std::span<const point> s) {
      const Transformation f(std::vector<point>(s.begin(), s.end()));
      const std::lock_guard lock(mu);
      if (!count_only) ++kernels[f.rank()][kernel_type(f).to_string()];
      if (file) file << io::format_transformation(f) << "\n";
      return true;
    });
  }
  if (!res.complete()) r.mark_partial();
  r.results()["total"] = res.total;
  r.results()["by_rank"] = by_rank_json(res.by_rank);
  if (!count_only) {
    json k = json::object();
    for (const auto& [rank, types] : kernels) k[std::to_string(rank)] = types;
    r.results()["kernel_types"] = k;
  }
}

void latin_rorth(const std::string& a, const std::string& b, Report& r) {
  r.results()["r"] = r_orthogonality(load_square(a, r), load_square(b, r));
}

void latin_hom(const std::string& a, const std::string& b, Report& r) {
  const auto h = superposition_hom(load_square(a, r), load_square(b, r));
  const Transformation f(h.images);
  r.results()["rank"] = h.rank();
  r.results()["kernel_type"] = kernel_type(f).to_string();
  r.results()["images"] = io::format_image_list(h.images);
}

void latin_spectrum(std::size_t k, std::size_t samples, const Globals& gl, Report& r) {
  r.digest("k", std::to_string(k));
  const auto s = r_orthogonal_spectrum(k, samples, gl.seed);
  const auto p = predicted_r_spectrum(k);
  r.results()["achievable"] = s.achievable;
  r.results()["exhaustive"] = s.exhaustive;
  r.results()["predicted"] = p;
  r.results()["matches_prediction"] = s.achievable == p;
}

void construct_boxpower(const std::string& graph, const std::string& hom, const std::vector<std::string>& squares,
                        const std::string& out, const Globals& gl, Report& r) {
  const auto x = load_graph(graph, r);
  const auto col = chromatic_number(x, budget_of(gl));
  if (col.status != SearchStatus::Complete) throw Error(ErrorCode::TimeBudgetExceeded, "colouring search");
  Homomorphism h;
  if (!squares.empty()) {
    h = superposition_hom(load_square(squares[0], r), load_square(squares[1], r));
  } else {
    const auto text = io::read_file(hom);
    r.digest("hom", text);
    for (long v : io::detail::integers_in(text.substr(text.find('[') == std::string::npos ? 0 : text.find('[')))) {
      if (v < 1 || static_cast<std::size_t>(v) > x.order()) throw Error(ErrorCode::HomomorphismInvalid, "image out of range");
      h.images.push_back(static_cast<point>(v - 1));
    }
  }
  const auto f = box_power_endomorphism(x, col.colouring, h);
  if (!out.empty()) write_file(out, io::format_transformation(f) + "\n");
  r.results()["graph"] = graph_summary(box_product(x, x));
  r.results()["colours"] = col.colours;
  r.results()["h_rank"] = h.rank();
  r.results()["endomorphism"] = map_summary(f);
}

void construct_triangular(std::size_t m, Report& r) {
  r.digest("m", std::to_string(m));
  const auto h = triangular_hom(m);
  r.results()["m"] = m;
  r.results()["rank"] = h.rank();
  r.results()["kernel_type"] = kernel_type(Transformation(h.images)).to_string();
  r.results()["images"] = io::format_image_list(h.images);
}

void construct_cayley(std::size_t p, const std::string& out, Report& r) {
  r.digest("p", std::to_string(p));
  const auto c = cayley_family(p);
  if (!out.empty()) write_file(out, io::format_transformation(c.endomorphism) + "\n");
  r.results()["prime"] = p;
  r.results()["graph"] = graph_summary(c.graph);
  r.results()["group_primitive"] = is_primitive(c.group);
  r.results()["endomorphism"] = map_summary(c.endomorphism);
  r.results()["is_endomorphism"] = is_endomorphism(c.graph, c.endomorphism);
  r.results()["synchronizes"] = synchronizes(c.group, c.endomorphism);
}

void srg_analyze(const std::string& graph, Report& r) {
  const auto g = load_graph(graph, r);
  const auto p = srg_params(g);
  auto& res = r.results();
  res["graph"] = graph_summary(g);
  res["strongly_regular"] = p.has_value();
  if (!p) return;
  res["parameters"] = {{"n", p->n}, {"k", p->k}, {"lambda", p->lambda}, {"mu", p->mu}};
  res["eigenvalues"] = {p->r_eig, p->s_eig};
  res["feasible"] = p->feasible();
  res["conference"] = is_conference(*p);
  res["non_trivial"] = p->non_trivial();
  res["theorem_defect_bound"] = srg_defect_theorem_bound(p->n);
  res["rank3_sync_threshold"] = rank3_sync_threshold(p->n);
  if (p->non_trivial()) {
    res["defect_lower_bound"] = defect_lower_bound(*p).to_string();
    res["kmu_bound"] = kmu_bound_check(*p);
    res["moore_min_valency"] = moore_min_valency_check(*p);
    res["chained_defect_bound"] = chained_defect_bound(*p);
  }
}

void catalog_list(Report& r) {
  json list = json::array();
  for (const auto& e : catalog::entries()) {
    const auto obj = e.build();
    list.push_back({{"name", e.name},
                    {"kind", std::holds_alternative<Graph>(obj) ? "graph" : "group"},
                    {"description", e.description}});
  }
  r.results()["entries"] = list;
}

void catalog_build(const std::string& name, const std::string& format, const std::string& out, Report& r) {
  r.digest("name", name);
  const auto obj = catalog::build(name);
  std::string text;
  if (const auto* g = std::get_if<Graph>(&obj)) {
    text = io::format_graph(*g, parse_format(format));
    r.results()["kind"] = "graph";
    r.results()["graph"] = graph_summary(*g);
  } else {
    const auto& grp = std::get<PermGroup>(obj);
    text = io::format_group(grp);
    r.results()["kind"] = "group";
    r.results()["degree"] = grp.degree();
    r.results()["generators"] = grp.generators().size();
  }
  if (!out.empty()) write_file(out, text);
  r.results()["text"] = text;
}

bool catalog_verify(const std::string& name, Report& r) {
  const auto names = name.empty() ? catalog::names() : std::vector<std::string>{name};
  bool all_ok = true;
  json entries = json::object();
  for (const auto& n : names) {
    r.digest("name", n);
    json checks = json::array();
    for (const auto& c : catalog::verify(n)) {
      all_ok = all_ok && c.ok();
      checks.push_back({{"property", c.property}, {"expected", c.expected}, {"actual", c.actual}, {"ok", c.ok()}});
    }
    entries[n] = checks;
  }
  r.results()["entries"] = entries;
  r.results()["all_ok"] = all_ok;
  return all_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Synchronization of transformation semigroups by permutation groups"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals gl;
  if (const char* env = std::getenv("SYNCHRO_JOBS")) {
    try {
      gl.jobs = static_cast<unsigned>(std::stoul(env));
    } catch (const std::exception&) {
      std::cerr << "ignoring malformed SYNCHRO_JOBS\n";
    }
  }
  app.add_option("--budget", gl.budget, "Time budget in seconds for searches (0 = none)")->check(CLI::NonNegativeNumber);
  app.add_option("--jobs", gl.jobs, "Worker threads for enumeration (default $SYNCHRO_JOBS or 1)")->check(CLI::PositiveNumber);
  app.add_option("--seed", gl.seed, "Seed for randomized commands");
  app.add_flag("--compact", gl.compact, "Single-line JSON");

  std::string group, map, graph, out, format = "graph6", hom, name;
  std::string square_a, square_b;
  std::vector<std::size_t> ranks;
  std::vector<std::string> squares;
  std::size_t samples = 200, k = 0, m = 0, p = 0;
  bool derived = false, proper = false, count_only = false;

  auto add_group_map = [&](CLI::App* c) {
    c->add_option("-g,--group", group, "Group file or catalog:NAME")->required();
    c->add_option("-f,--map", map, "Transformation file or inline [..] list")->required();
  };

  auto* sync = app.add_subcommand("sync", "Synchronization queries");
  sync->require_subcommand(1);
  auto* s_check = sync->add_subcommand("check", "Does <G, f> contain a constant map?");
  add_group_map(s_check);
  auto* s_graph = sync->add_subcommand("graph", "Emit Gr(S)");
  add_group_map(s_graph);
  s_graph->add_flag("--derived", derived, "Emit the derived graph Gr'(S)");
  s_graph->add_option("--format", format, "graph6 or adjacency");
  s_graph->add_option("-o,--output", out, "Write the graph here");
  auto* s_minrank = sync->add_subcommand("minrank", "Minimum rank in <G, f>");
  add_group_map(s_minrank);
  auto* s_scan = sync->add_subcommand("scan", "Random maps of given ranks against a primitive group");
  s_scan->add_option("-g,--group", group, "Group file or catalog:NAME")->required();
  s_scan->add_option("--ranks", ranks, "Ranks to test")->required()->delimiter(',');
  s_scan->add_option("--samples", samples, "Maps per rank");

  auto* gcmd = app.add_subcommand("graph", "Graph searches");
  gcmd->require_subcommand(1);
  auto* g_clique = gcmd->add_subcommand("clique", "Clique number");
  auto* g_chroma = gcmd->add_subcommand("chroma", "Chromatic number");
  auto* g_endos = gcmd->add_subcommand("endos", "Enumerate endomorphisms");
  for (auto* c : {g_clique, g_chroma, g_endos}) c->add_option("-G,--graph", graph, "Graph file or catalog:NAME")->required();
  g_endos->add_flag("--proper", proper, "Skip automorphisms");
  g_endos->add_flag("--count-only", count_only, "Only count");
  g_endos->add_option("--rank", ranks, "Keep only these ranks")->delimiter(',');
  g_endos->add_option("-o,--output", out, "Write every map here, one per line");

  auto* lcmd = app.add_subcommand("latin", "Latin-square homomorphisms");
  lcmd->require_subcommand(1);
  auto* l_rorth = lcmd->add_subcommand("rorth", "r-orthogonality of two squares");
  auto* l_hom = lcmd->add_subcommand("hom", "Superposition homomorphism");
  for (auto* c : {l_rorth, l_hom}) {
    c->add_option("a", square_a, "First square")->required();
    c->add_option("b", square_b, "Second square")->required();
  }
  auto* l_spec = lcmd->add_subcommand("spectrum", "Achievable r for order k");
  l_spec->add_option("-k", k, "Order")->required();
  l_spec->add_option("--samples", samples, "Random pairs when k is too large to exhaust");

  auto* ccmd = app.add_subcommand("construct", "Paper constructions");
  ccmd->require_subcommand(1);
  auto* c_box = ccmd->add_subcommand("boxpower", "Endomorphism of X □ X from h: K_k □ K_k -> X");
  c_box->add_option("-G,--graph", graph, "X, as a file or catalog:NAME")->required();
  auto* hom_opt = c_box->add_option("--hom", hom, "File with the image list of h (1-based)");
  auto* sq_opt = c_box->add_option("--squares", squares, "Two square files; h is their superposition")->expected(2);
  hom_opt->excludes(sq_opt);
  c_box->add_option("-o,--output", out, "Write the endomorphism here");
  auto* c_tri = ccmd->add_subcommand("triangular", "K_{m-1} □ K_{m-1} -> T(m)");
  c_tri->add_option("-m", m, "m")->required();
  auto* c_cay = ccmd->add_subcommand("cayley", "GF(2) Cayley rank-6 family");
  c_cay->add_option("-p", p, "Prime")->required();
  c_cay->add_option("-o,--output", out, "Write the endomorphism here");

  auto* srg = app.add_subcommand("srg", "Strongly regular graphs");
  srg->require_subcommand(1);
  auto* srg_an = srg->add_subcommand("analyze", "Parameters and bounds");
  srg_an->add_option("-G,--graph", graph, "Graph file or catalog:NAME")->required();

  auto* cat = app.add_subcommand("catalog", "Built-in groups and graphs");
  cat->require_subcommand(1);
  auto* cat_list = cat->add_subcommand("list", "List entries");
  auto* cat_build = cat->add_subcommand("build", "Build and print an entry");
  cat_build->add_option("name", name, "Entry")->required();
  cat_build->add_option("--format", format, "graph6 or adjacency");
  cat_build->add_option("-o,--output", out, "Write the object here");
  auto* cat_verify = cat->add_subcommand("verify", "Re-check certified properties");
  cat_verify->add_option("name", name, "Entry (default all)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_usage;
  }
  if (!squares.empty() && squares.size() != 2) {
    std::cerr << "--squares takes two files\n";
    return exit_usage;
  }
  if (c_box->parsed() && hom.empty() && squares.empty()) {
    std::cerr << "boxpower needs --hom or --squares\n";
    return exit_usage;
  }

  std::string command;
  for (int i = 1; i < argc; ++i) command += (i > 1 ? " " : "") + std::string(argv[i]);
  Report report(command);
  int code = 0;
  try {
    if (s_check->parsed()) sync_check(group, map, report);
    else if (s_graph->parsed()) sync_graph(group, map, derived, format, out, report);
    else if (s_minrank->parsed()) sync_minrank(group, map, gl, report);
    else if (s_scan->parsed()) sync_scan(group, ranks, samples, gl, report);
    else if (g_clique->parsed()) graph_clique(graph, gl, report);
    else if (g_chroma->parsed()) graph_chroma(graph, gl, report);
    else if (g_endos->parsed()) graph_endos(graph, proper, count_only, ranks, out, gl, report);
    else if (l_rorth->parsed()) latin_rorth(square_a, square_b, report);
    else if (l_hom->parsed()) latin_hom(square_a, square_b, report);
    else if (l_spec->parsed()) latin_spectrum(k, samples, gl, report);
    else if (c_box->parsed()) construct_boxpower(graph, hom, squares, out, gl, report);
    else if (c_tri->parsed()) construct_triangular(m, report);
    else if (c_cay->parsed()) construct_cayley(p, out, report);
    else if (srg_an->parsed()) srg_analyze(graph, report);
    else if (cat_list->parsed()) catalog_list(report);
    else if (cat_build->parsed()) catalog_build(name, format, out, report);
    else if (cat_verify->parsed()) code = catalog_verify(name, report) ? 0 : exit_failure;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::TimeBudgetExceeded) {
      report.mark_partial();
      std::cerr << e.what() << "\n";
    } else {
      std::cerr << "error: " << e.what() << "\n";
      const bool usage = e.code() == ErrorCode::BadInput || e.code() == ErrorCode::BadParameter;
      return usage ? exit_usage : exit_failure;
    }
  }
  if (report.partial()) code = exit_budget;
  const auto j = report.finish(gl.seed);
  std::cout << (gl.compact ? j.dump() : j.dump(2)) << "\n";
  return code;
}
