#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "braidbu/braidbu.hpp"

namespace {

using namespace braidbu;

struct Options {
  std::string format = "text";

  std::string kind = "lollipop";
  int m = 0;
  int n = 0;
  int legs = 3;
  int leg_length = 2;
  std::string graph_file;
  bool quotient = false;
  bool by_type = false;
  std::string space = "fm";
  std::string which = "iota";
  bool oracle_check = false;
  std::string target;
  std::string cls;
  std::string theta = "1";
  long k = 0;
  bool emit_witness = false;
  std::string level = "quick";
};

std::vector<long> parse_list(const std::string& text) {
  std::vector<long> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stol(item, &used));
      if (used != item.size()) throw InvalidInput("bad integer '" + item + "'");
    } catch (const std::logic_error&) {
      throw InvalidInput("bad integer list '" + text + "'");
    }
  }
  return out;
}

Graph load_graph(const Options& o) {
  if (o.graph_file.empty()) return make_lollipop(o.m);
  std::ifstream in(o.graph_file);
  if (!in) throw InvalidInput("cannot open graph file " + o.graph_file);
  return read_graph(in);
}

void add_word_table(Report& r, const std::string& prefix, const std::vector<FreeWord>& words,
                    const std::function<std::string(const FreeWord&)>& format) {
  for (std::size_t i = 0; i < words.size(); ++i) r.add(prefix + std::to_string(i + 1), format(words[i]));
}

int graph_build(const Options& o) {
  Graph g;
  if (o.kind == "lollipop") {
    g = make_lollipop(o.m);
  } else if (o.kind == "path") {
    g = make_path(o.n);
  } else if (o.kind == "cycle") {
    g = make_cycle(o.n);
  } else if (o.kind == "star") {
    g = make_star(o.legs, o.leg_length);
  } else {
    throw InvalidParameter("unknown graph kind " + o.kind);
  }
  write_graph(std::cout, g);
  return 0;
}

void graph_check(const Options& o, Report& r) {
  const Graph g = load_graph(o);
  r.add("vertices", g.num_vertices());
  r.add("edges", g.num_edges());
  r.add("chi", g.euler_characteristic());
  std::string essential;
  for (int v : g.essential_vertices()) essential += (essential.empty() ? "" : ",") + std::to_string(v);
  r.add("essential_vertices", essential.empty() ? "-" : essential);
  r.add("non_tree_edges", static_cast<long>(g.non_tree_edges().size()));
  r.check("sufficiently_subdivided.m" + std::to_string(o.m), is_sufficiently_subdivided(g, o.m),
          "graph is not " + std::to_string(o.m) + "-sufficiently subdivided");
}

void dconf_stats(const Options& o, Report& r) {
  const Graph g = load_graph(o);
  const CubeComplex c = build_dconf(g, o.m);
  for (int d = 0; d <= c.dimension(); ++d) r.add("cells." + std::to_string(d), c.count(d));
  r.add("chi", chi_oracle(c));
  r.add("components", components(c));
  if (o.quotient) {
    const QuotientComplex q = build_quotient(c);
    for (int d = 0; d <= q.dimension(); ++d) r.add("orbits." + std::to_string(d), q.count(d));
    r.add("quotient_chi", chi_oracle(q));
    r.check("free_action_divisibility", chi_oracle(c) == o.m * chi_oracle(q), "chi is not m times the quotient chi");
  }
}

void morse_critical(const Options& o, Report& r) {
  const LollipopBraids b(o.m);
  const Graph& g = b.graph();
  if (!o.quotient) {
    const auto census = critical_census(b.fm(), b.fm_field());
    for (std::size_t d = 0; d < census.by_dimension.size(); ++d) r.add("critical." + std::to_string(d), census.by_dimension[d]);
    if (o.by_type) {
      for (std::size_t t = 0; t < census.edges_by_type.size(); ++t) r.add("type." + std::to_string(t + 1), census.edges_by_type[t]);
    }
    for (int v : b.fm_field().critical(0)) r.add("vertex", b.fm().describe(0, v));
    for (const auto& x : b.fm_critical_edges()) {
      r.add("edge", format_cell(g, x.cell) + " type=" + std::to_string(x.type) + " sigma=" + x.sigma_source.to_cycle_string());
    }
    return;
  }
  const auto census = critical_census(b.fm(), b.quotient(), b.quotient_field());
  for (std::size_t d = 0; d < census.by_dimension.size(); ++d) r.add("critical." + std::to_string(d), census.by_dimension[d]);
  if (o.by_type) {
    for (std::size_t t = 0; t < census.edges_by_type.size(); ++t) r.add("type." + std::to_string(t + 1), census.edges_by_type[t]);
  }
  for (int v : b.quotient_field().critical(0)) r.add("vertex", "[" + b.fm().describe(0, b.quotient().representative(0, v)) + "]");
  for (int e : b.quotient_field().critical(1)) {
    const ConfCell& rep = b.fm().cell(1, b.quotient().representative(1, e));
    r.add("edge", "[" + format_cell(g, rep) + "] type=" + std::to_string(edge_type(g, rep)));
  }
}

void morse_target_permutations(const Options& o, Report& r) {
  const LollipopBraids b(o.m);
  const auto up = check_target_permutations(b.fm(), b.fm_field());
  const auto down = check_target_permutations(b.fm(), b.quotient(), b.quotient_field());
  r.add("critical_edges_checked", up.checked);
  r.add("orbits_checked", down.checked);
  r.check("target_permutation.fm", up.ok, up.failure);
  r.check("target_permutation.quotient", down.ok, down.failure);
}

void pi1_basis(const Options& o, Report& r) {
  if (o.space != "fm" && o.space != "quotient") throw InvalidParameter("space must be fm or quotient");
  const Space s = o.space == "fm" ? Space::fm : Space::quotient;
  const LollipopBraids b(o.m);
  r.add("rank", b.rank(s));
  r.add("selected", static_cast<long>(b.selected(s).size()));
  for (const auto& id : b.basis(s)) r.add("generator", id.label() + " " + format_cell(b.graph(), id.cell));
  const auto tree = b.maximal_tree_check(s);
  r.check("maximal_tree", tree.ok, tree.failure);
}

void pi1_map(const Options& o, Report& r) {
  const LollipopBraids b(o.m);
  if (o.which == "iota") {
    for (int g = 0; g < b.rank(Space::fm); ++g) {
      const std::string name = b.name(Space::fm, g);
      const FreeWord closed = b.iota_closed_form(g);
      r.add("iota(" + name + ")", b.format_word(Space::quotient, closed));
      if (o.oracle_check) {
        const FreeWord oracle = b.iota_oracle(g);
        r.check("iota." + name, closed == oracle, "oracle gives " + b.format_word(Space::quotient, oracle));
      }
    }
  } else if (o.which == "p1") {
    for (int g = 0; g < b.rank(Space::fm); ++g) {
      const std::string name = b.name(Space::fm, g);
      r.add("p1(" + name + ")", b.p1_closed_form(g));
      if (o.oracle_check) {
        const int oracle = b.p1_oracle(g);
        r.check("p1." + name, b.p1_closed_form(g) == oracle, "oracle gives " + std::to_string(oracle));
      }
    }
  } else if (o.which == "theta") {
    for (int g = 0; g < b.rank(Space::quotient); ++g) {
      const std::string name = b.name(Space::quotient, g);
      r.add("theta(" + name + ")", b.theta_closed_form(g));
      if (o.oracle_check) {
        const long oracle = b.theta_oracle(FreeWord::generator(g));
        r.check("theta." + name, b.theta_closed_form(g) == oracle, "oracle gives " + std::to_string(oracle));
      }
    }
  } else {
    throw InvalidParameter("--which must be iota, p1 or theta");
  }
}

void emit_witness(Report& r, const Witness& w, const TargetMaps& maps) {
  auto x_names = [](const FreeWord& word) { return word.to_string([](int i) { return "x" + std::to_string(i + 1); }); };
  add_word_table(r, "witness.psi.x", w.psi, maps.format_down);
  add_word_table(r, "witness.kernel.e", w.kernel, x_names);
  add_word_table(r, "witness.phi.e", w.phi, maps.format_up);
  for (std::size_t i = 0; i < w.alpha.size(); ++i) r.add("witness.alpha.e" + std::to_string(i + 1), w.alpha[i]);
}

void report_verdict(Report& r, const BUVerdict& v) {
  r.add("target", v.target);
  r.add("borsuk_ulam", v.holds ? "holds" : "fails");
  for (const auto& [k, val] : v.details) r.add(k, val);
}

void decide(const Options& o, Report& r) {
  if (o.target == "interval") {
    report_verdict(r, decide_interval());
    return;
  }
  if (o.target == "circle") {
    const int m = o.m;
    const BUVerdict v = decide_circle(parse_list(o.cls), o.n, m);
    report_verdict(r, v);
    if (v.witness) {
      if (o.emit_witness) emit_witness(r, *v.witness, circle_maps(o.n));
      r.check("witness", v.witness_verified, "witness fails the diagram check");
    }
    return;
  }
  const std::vector<long> theta = parse_list(o.theta);
  const ActionData action{o.n, static_cast<int>(theta.size()), theta};
  if (o.target == "wedge") {
    if (o.m != 0 && o.m != o.n) throw InvalidParameter("wedge target: --m must equal --n");
    const LollipopBraids b(o.n);
    const BUVerdict v = decide_wedge(o.k, b, action);
    report_verdict(r, v);
    if (o.emit_witness) emit_witness(r, *v.witness, wedge_maps(b));
    const auto check = verify_diagram(*v.witness, action, wedge_maps(b));
    r.check("witness", check.ok, check.face + " face fails at " + check.location);
    return;
  }
  if (o.target == "tree") {
    const TreeTarget target(make_star(o.legs, o.leg_length), o.n);
    const BUVerdict v = decide_tree(target, action);
    report_verdict(r, v);
    if (o.emit_witness) emit_witness(r, *v.witness, target.maps());
    const auto check = verify_diagram(*v.witness, action, target.maps());
    r.check("witness", check.ok, check.face + " face fails at " + check.location);
    return;
  }
  throw InvalidParameter("--target must be interval, tree, circle or wedge");
}

std::string command_line(int argc, char** argv) {
  std::string out;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--format" || arg.rfind("--format=", 0) == 0) {
      if (arg == "--format") ++i;
      continue;
    }
    out += (out.empty() ? "" : " ") + arg;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Graph braid groups of the lollipop and Borsuk-Ulam decisions"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "records"}));

  auto* graph = app.add_subcommand("graph", "Build or check graphs");
  graph->require_subcommand(1);
  auto* build = graph->add_subcommand("build", "Emit a graph in the line format");
  build->add_option("--kind", o.kind, "lollipop, path, cycle or star")->check(CLI::IsMember({"lollipop", "path", "cycle", "star"}));
  build->add_option("--m", o.m, "Lollipop size");
  build->add_option("--n", o.n, "Path or cycle vertex count");
  build->add_option("--legs", o.legs, "Star legs");
  build->add_option("--leg-length", o.leg_length, "Star leg length");
  auto* check = graph->add_subcommand("check", "Report subdivision status and Euler characteristic");
  check->add_option("--m", o.m, "Particle count")->required();
  check->add_option("--graph", o.graph_file, "Graph file (default: lollipop of size m)");

  auto* dconf = app.add_subcommand("dconf", "Discrete configuration spaces");
  dconf->require_subcommand(1);
  auto* stats = dconf->add_subcommand("stats", "Cell counts, chi, components");
  stats->add_option("--graph", o.graph_file, "Graph file (default: lollipop of size m)");
  stats->add_option("--m", o.m, "Particle count")->required();
  stats->add_flag("--quotient", o.quotient, "Also report the Z_m quotient");

  auto* morse = app.add_subcommand("morse", "Gradient field on the lollipop configuration space");
  morse->require_subcommand(1);
  auto* critical = morse->add_subcommand("critical", "Critical cells");
  critical->add_option("--m", o.m, "Particle count")->required();
  critical->add_flag("--quotient", o.quotient, "Work in the Z_m quotient");
  critical->add_flag("--by-type", o.by_type, "Count critical edges per type");
  auto* target_perm = morse->add_subcommand("verify-lemma47", "Check sigma_target = sigma_source c_b^-1 on all critical edges");
  target_perm->add_option("--m", o.m, "Particle count")->required();

  auto* pi1 = app.add_subcommand("pi1", "Fundamental groups");
  pi1->require_subcommand(1);
  auto* basis = pi1->add_subcommand("basis", "Free basis");
  basis->add_option("--space", o.space, "fm or quotient")->check(CLI::IsMember({"fm", "quotient"}));
  basis->add_option("--m", o.m, "Particle count")->required();
  auto* map = pi1->add_subcommand("map", "Evaluate iota, p1 or theta on a basis");
  map->add_option("--which", o.which, "iota, p1 or theta")->required()->check(CLI::IsMember({"iota", "p1", "theta"}));
  map->add_option("--m", o.m, "Particle count")->required();
  map->add_flag("--oracle-check", o.oracle_check, "Compare with the oracle");

  auto* dec = app.add_subcommand("decide", "Borsuk-Ulam decision");
  dec->add_option("--target", o.target, "interval, tree, circle or wedge")
      ->required()
      ->check(CLI::IsMember({"interval", "tree", "circle", "wedge"}));
  dec->add_option("--n", o.n, "Order of the free Z_n action");
  dec->add_option("--m", o.m, "Circle: chi(Gamma) = -n m; wedge: particle count (= n)");
  dec->add_option("--class", o.cls, "Circle: comma-separated class on the kernel basis");
  dec->add_option("--k", o.k, "Wedge: degree on the circle factor");
  dec->add_option("--theta", o.theta, "Classifying map values on the quotient basis");
  dec->add_option("--legs", o.legs, "Tree: star legs");
  dec->add_option("--leg-length", o.leg_length, "Tree: star leg length");
  dec->add_flag("--emit-witness", o.emit_witness, "Print the witness (phi, psi)");

  auto* suite = app.add_subcommand("suite", "Run the property suite");
  suite->add_option("--level", o.level, "quick or full")->check(CLI::IsMember({"quick", "full"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const ReportFormat format = o.format == "records" ? ReportFormat::records : ReportFormat::text;
  Report report(command_line(argc, argv));
  try {
    if (build->parsed()) return graph_build(o);
    if (check->parsed()) graph_check(o, report);
    if (stats->parsed()) dconf_stats(o, report);
    if (critical->parsed()) morse_critical(o, report);
    if (target_perm->parsed()) morse_target_permutations(o, report);
    if (basis->parsed()) pi1_basis(o, report);
    if (map->parsed()) pi1_map(o, report);
    if (dec->parsed()) decide(o, report);
    if (suite->parsed()) {
      std::string level = o.level;
      if (const char* env = std::getenv("BU_SUITE_LEVEL")) {
        level = env;
        if (level != "quick" && level != "full") throw InvalidParameter("BU_SUITE_LEVEL must be quick or full");
      }
      report = run_suite(level == "full" ? SuiteLevel::full : SuiteLevel::quick);
    }
  } catch (const StructuralError& e) {
    std::cerr << "structural error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  std::cout << report.render(format);
  return report.exit_code();
}
