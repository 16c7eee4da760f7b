// bicolor: command-line driver for the loop-model toolkit.

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bicolor/acceptance.hpp"
#include "bicolor/counting.hpp"
#include "bicolor/dynamics.hpp"
#include "bicolor/entanglement.hpp"
#include "bicolor/errors.hpp"
#include "bicolor/operators.hpp"
#include "bicolor/report.hpp"
#include "bicolor/spectra.hpp"

using namespace bicolor;

namespace {

enum Exit { kOk = 0, kUsage = 2, kBudget = 3, kVerification = 4 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  std::string model = "square-total";
  int L = 2;
  int lx = 0;
  int ly = 0;
  std::string moves;
  std::string sector = "full";
  std::string solver = "auto";
  int k = 20;
  std::string cut = "column:0:1";
  int component = -1;
  std::string family = "Ni";
  std::string l_range = "1..6";
  int l_step = 1;
  std::string s = "1";
  std::string scale = "desk";
  bool members = false;
  bool defects = false;
  bool bits = false;
  bool reproducible = false;
  std::string coo;
  std::size_t budget = 50'000'000;
  std::uint64_t seed = 20240611;
  std::string format = "json";
  std::string output;

  Json echo() const {
    Json j;
    j["command"] = command;
    if (command == "count" || command == "fit") {
      j["family"] = family;
      j["l"] = l_range;
      j["l_step"] = l_step;
      j["s"] = s;
      if (command == "fit") j["bits"] = bits;
    } else if (command == "verify-all") {
      j["scale"] = scale;
    } else {
      j["model"] = model;
      j["L"] = L;
      j["Lx"] = lx;
      j["Ly"] = ly;
      if (command == "sectors" || command == "entropy") j["moves"] = moves;
      if (command == "sectors") j["members"] = members;
      if (command == "spectrum") {
        j["sector"] = sector;
        j["solver"] = solver;
        j["k"] = k;
        j["coo"] = coo;
      }
      if (command == "towers") j["defects"] = defects;
      if (command == "entropy") {
        j["cut"] = cut;
        j["component"] = component;
        j["bits"] = bits;
      }
    }
    j["budget"] = budget;
    j["seed"] = seed;
    j["format"] = format;
    return j;
  }
};

std::pair<int, int> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      const int v = std::stoi(text);
      return {v, v};
    }
    return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
  } catch (const std::exception&) {
    throw UsageError("bad range '" + text + "' (expected N or A..B)");
  }
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, sep);) out.push_back(part);
  return out;
}

Model model_of(const RunConfig& c) {
  try {
    return parse_model(c.model);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

Geometry geometry_of(const RunConfig& c) {
  if (model_of(c) == Model::hex) {
    const int lx = c.lx > 0 ? c.lx : c.L;
    const int ly = c.ly > 0 ? c.ly : c.L;
    return build_hex_torus(lx, ly);
  }
  if (c.lx > 0 || c.ly > 0) throw UsageError("--Lx/--Ly apply to the hexagonal model; use --L");
  return build_square_torus(c.L);
}

MoveSet moves_of(const RunConfig& c) {
  if (c.moves.empty()) return model_moves(model_of(c));
  try {
    return MoveSet::parse(c.moves);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

Bipartition cut_of(const RunConfig& c, const Geometry& g) {
  const auto parts = split(c.cut, ':');
  if (parts.empty()) throw UsageError("empty --cut");
  try {
    if (parts[0] == "column" && parts.size() == 3) return column_region(g, std::stoi(parts[1]), std::stoi(parts[2]));
    if (parts[0] == "dimer" && parts.size() == 2) return dimer_region(g, std::stoi(parts[1]));
    if (parts[0] == "hexagon" && parts.size() == 2) return hexagon_region(g, std::stoi(parts[1]));
    if (parts[0] == "vertices" && parts.size() == 2) {
      std::vector<int> vs;
      for (const auto& v : split(parts[1], ',')) vs.push_back(std::stoi(v));
      return vertex_region(g, vs, c.cut);
    }
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("bad --cut: ") + e.what());
  }
  throw UsageError("bad --cut '" + c.cut + "' (column:F:N, vertices:V,..., dimer:C, hexagon:F)");
}

struct Artifact {
  Json body = Json::object();
  std::string csv;  // set when the command has a CSV form
  std::optional<std::uint64_t> geometry_hash;
  int exit = kOk;
};

double entropy_unit(const RunConfig& c) { return c.bits ? 1.0 / std::log(2.0) : 1.0; }

Artifact cmd_geometry(const RunConfig& c) {
  const auto g = geometry_of(c);
  Artifact a;
  a.geometry_hash = geometry_hash(g);
  a.body["geometry"] = to_json(g);
  Json edges = Json::array();
  for (int e = 0; e < g.num_edges(); ++e) {
    edges.push_back({{"id", e}, {"vertices", g.edge_vertices[e]}, {"faces", g.edge_faces[e]}});
  }
  a.body["edges"] = edges;
  a.body["faces"] = g.face_edges;
  a.body["cycles"] = {{"x", g.cycle(Direction::x)}, {"y", g.cycle(Direction::y)}};
  a.body["dual_cycles"] = {{"x", g.dual_cycle(Direction::x)}, {"y", g.dual_cycle(Direction::y)}};
  return a;
}

Artifact cmd_sectors(const RunConfig& c) {
  const auto g = geometry_of(c);
  const auto set = moves_of(c);
  if (!set.fits(g)) throw UsageError("move set " + set.to_string() + " does not act on " + g.dims_string());
  Artifact a;
  a.geometry_hash = geometry_hash(g);
  const auto s = krylov_components(g, set, c.budget);
  a.body["model"] = c.model;
  a.body["sectors"] = to_json(s, c.members);
  return a;
}

Artifact cmd_spectrum(const RunConfig& c) {
  const auto m = model_of(c);
  const auto g = geometry_of(c);
  if (!model_fits(m, g)) throw UsageError("model does not fit the geometry");
  if (c.k < 1) throw UsageError("--k must be positive");
  BasisPtr basis;
  if (c.sector == "full") {
    basis = Basis::full(g.num_edges());
  } else if (c.sector == "closed") {
    basis = Basis::of(g.num_edges(), enumerate_closed_loop_configs(g, c.budget), "closed");
  } else {
    throw UsageError("--sector must be full or closed");
  }
  if (basis->size() > c.budget) throw BudgetExceeded("basis size", static_cast<double>(basis->size()));
  SolverOptions opt;
  opt.seed = c.seed;
  if (c.solver == "dense") opt.method = SolverOptions::Method::dense;
  else if (c.solver == "lanczos") opt.method = SolverOptions::Method::lanczos;
  else if (c.solver != "auto") throw UsageError("--solver must be auto, dense or lanczos");

  const auto H = assemble_hamiltonian(m, g, basis);
  if (!c.coo.empty()) {
    std::ofstream os(c.coo);
    if (!os) throw UsageError("cannot write " + c.coo);
    write_coo(os, H, {model_name(m), g.dims_string(), geometry_hash(g)});
  }
  const auto r = ground_space(H, c.k, opt);
  Artifact a;
  a.geometry_hash = geometry_hash(g);
  a.body["model"] = model_name(m);
  a.body["dims"] = g.dims_string();
  a.body["spectrum"] = to_json(r);
  a.body["frustration_free_bound"] = frustration_free_bound(m, g);
  return a;
}

Artifact cmd_towers(const RunConfig& c) {
  const auto m = model_of(c);
  const auto g = geometry_of(c);
  if (!model_fits(m, g)) throw UsageError("model does not fit the geometry");
  Artifact a;
  a.geometry_hash = geometry_hash(g);
  a.body["model"] = model_name(m);
  if (g.kind == LatticeKind::square) a.body["tower"] = to_json(tower_scan(m, g));
  if (c.defects) {
    const auto basis = Basis::full(g.num_edges());
    const double e0 = ground_space(assemble_hamiltonian(m, g, basis), 1).ground();
    Json arr = Json::array();
    for (const auto& f : defect_tower_scan(m, g, e0, c.budget)) arr.push_back(to_json(f));
    a.body["ground_energy"] = e0;
    a.body["defect_findings"] = arr;
  }
  return a;
}

Artifact cmd_wilson(const RunConfig& c) {
  const auto g = geometry_of(c);
  if (g.kind != LatticeKind::square) throw UsageError("Wilson loops are defined on the square torus");
  Artifact a;
  a.geometry_hash = geometry_hash(g);
  Json rel = Json::array();
  for (const auto& w : wilson_relations(g)) rel.push_back({{"relation", w.name}, {"holds", w.holds}, {"deviation", w.deviation}});
  a.body["relations"] = rel;
  Json comm = Json::array();
  for (const auto& k : commutator_checks(g)) comm.push_back({{"name", k.name}, {"norm", k.norm}, {"expect_zero", k.expect_zero}});
  a.body["commutators"] = comm;
  Json leaks = Json::array();
  for (const auto& l : wilson_leaks(g, c.budget)) leaks.push_back({{"operator", l.op}, {"ground_state", l.ground_state}, {"leak", l.leak}, {"image_norm", l.image_norm}});
  a.body["leaks"] = leaks;
  return a;
}

Artifact cmd_entropy(const RunConfig& c) {
  const auto g = geometry_of(c);
  const auto part = cut_of(c, g);
  const auto set = moves_of(c);
  const auto s = krylov_components(g, set, c.budget);
  const double unit = entropy_unit(c);
  const auto admissible = admissible_boundary_strings(g, part, c.budget).size();

  Artifact a;
  a.geometry_hash = geometry_hash(g);
  a.body["cut"] = {{"description", part.description}, {"region", part.region}, {"cut_edges", part.cut},
                   {"boundaries", part.boundaries.size()}, {"admissible_strings", admissible},
                   {"entropy_cap", std::log(static_cast<double>(admissible)) * unit}};
  a.body["unit"] = c.bits ? "bits" : "nats";
  Json spectra = Json::array();
  std::ostringstream csv;
  csv << "component,sigma,N_A,N_B,p\n";
  for (std::size_t i = 0; i < s.components.size(); ++i) {
    if (c.component >= 0 && static_cast<std::size_t>(c.component) != i) continue;
    const auto sp = schmidt_spectrum_by_counting(s.components[i].members, part);
    Json j = to_json(sp);
    j["entropy"] = sp.entropy * unit;
    j["component"] = i;
    if (s.labelled) j["label"] = to_json(*s.components[i].labels.begin());
    spectra.push_back(std::move(j));
    for (const auto& e : sp.entries) {
      csv << i << ',' << e.sigma << ',' << e.n_a << ',' << e.n_b << ',';
      if (e.exact) csv << to_string(e.p);
      else csv << std::setprecision(17) << e.p_value;
      csv << '\n';
    }
  }
  if (c.component >= 0 && spectra.empty()) throw UsageError("--component out of range");
  a.body["spectra"] = spectra;
  a.csv = csv.str();
  return a;
}

Artifact cmd_count(const RunConfig& c) {
  const auto [lo, hi] = parse_range(c.l_range);
  if (lo < 1 || hi < lo || c.l_step < 1) throw UsageError("bad --l range");
  Artifact a;
  std::vector<CountResult> rows;
  Json arr = Json::array();
  for (int l = lo; l <= hi; l += c.l_step) {
    if (c.family == "Ni") {
      rows.push_back(count_intersecting_boundary(l));
    } else if (c.family == "FPL") {
      rows.push_back(count_fpl_boundary(l));
    } else if (c.family == "BLC") {
      int s = 0;
      try {
        s = std::stoi(c.s);
      } catch (const std::exception&) {
        throw UsageError("--s must be a positive integer for BLC rows");
      }
      if (s < 1) throw UsageError("--s must be positive");
      rows.push_back(count_blc_result(l, s));
      auto j = to_json(rows.back());
      j["asymptotic_detail"] = to_json(blc_asymptotic(l, s));
      arr.push_back(std::move(j));
      continue;
    } else if (c.family == "Tn") {
      const auto t = transfer_count(l);
      auto j = to_json(t);
      if (2 * l <= 16) {
        j["oracle_line"] = to_string(nonintersecting_string_oracle(l, Topology::line));
        j["oracle_circle"] = to_string(nonintersecting_string_oracle(l, Topology::circle));
      }
      arr.push_back(std::move(j));
      CountResult row;
      row.model = "Nn";
      row.l = l;
      row.exact = t.entry;
      row.closed_form = t.power_sum;
      rows.push_back(row);
      continue;
    } else {
      throw UsageError("--family must be Ni, Tn, FPL or BLC");
    }
    arr.push_back(to_json(rows.back()));
  }
  a.body["family"] = c.family;
  a.body["rows"] = arr;
  if (c.family == "Tn") {
    Json ev = Json::array();
    for (double v : transfer_eigenvalues()) ev.push_back(v);
    a.body["transfer_eigenvalues"] = ev;
  }
  std::ostringstream csv;
  write_count_csv(csv, rows);
  a.csv = csv.str();
  return a;
}

Artifact cmd_fit(const RunConfig& c) {
  BoundModel m;
  try {
    m = parse_bound_model(c.family);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const auto [lo, hi] = parse_range(c.l_range);
  if (lo < 1 || hi < lo || c.l_step < 1) throw UsageError("bad --l range");
  double s = 1.0;
  try {
    s = std::stod(c.s);
  } catch (const std::exception&) {
    throw UsageError("bad --s");
  }
  const double unit = entropy_unit(c);
  std::vector<std::pair<double, double>> closed, exact;
  Json pts = Json::array();
  std::ostringstream csv;
  csv << "l,bound,log_count\n" << std::setprecision(17);
  for (int l = lo; l <= hi; l += c.l_step) {
    const auto b = entropy_bound(m, l, s);
    closed.emplace_back(l, b.bound);
    exact.emplace_back(l, b.log_count);
    pts.push_back(to_json(b));
    csv << l << ',' << b.bound * unit << ',' << b.log_count * unit << '\n';
  }
  if (closed.size() < 4) throw UsageError("a fit needs at least 4 values of l");
  Artifact a;
  a.body["family"] = bound_model_name(m);
  a.body["fit_closed_form"] = to_json(fit_area_law(closed));
  a.body["fit_exact_count"] = to_json(fit_area_law(exact));
  a.body["points"] = pts;
  a.csv = csv.str();
  return a;
}

Artifact cmd_verify(const RunConfig& c) {
  AcceptanceOptions opt;
  try {
    opt.scale = parse_scale(c.scale);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  opt.seed = c.seed;
  opt.budget = c.budget;
  Artifact a;
  Json crit = Json::array();
  std::ostringstream csv;
  csv << "criterion,passed,title\n";
  bool all = true;
  run_acceptance(opt, [&](const CriterionResult& r) {
    print_checks(std::cerr, r);
    std::cerr << summary_line(r) << "\n\n";
    crit.push_back(to_json(r));
    csv << r.id << ',' << (r.passed ? "pass" : "fail") << ',' << r.title << '\n';
    all = all && r.passed;
  });
  a.body["criteria"] = crit;
  a.body["all_passed"] = all;
  a.csv = csv.str();
  a.exit = all ? kOk : kVerification;
  return a;
}

Json meta(const RunConfig& c, const Artifact& a, double wall) {
  Json m;
  m["toolkit"] = "bicolor";
  m["version"] = kToolkitVersion;
  m["config"] = c.echo();
  m["seed"] = c.seed;
  m["geometry_hash"] = a.geometry_hash ? Json(hex_hash(*a.geometry_hash)) : Json(nullptr);
  m["wall_time_seconds"] = c.reproducible ? 0.0 : wall;
  return m;
}

int emit(const RunConfig& c, const Artifact& a, double wall) {
  std::ostringstream out;
  const Json m = meta(c, a, wall);
  if (c.format == "csv") {
    if (a.csv.empty()) throw UsageError("command '" + c.command + "' has no CSV form");
    for (const auto& line : split(m.dump(), '\n')) out << "# " << line << '\n';
    out << a.csv;
  } else {
    Json doc;
    doc["meta"] = m;
    for (auto it = a.body.begin(); it != a.body.end(); ++it) doc[it.key()] = it.value();
    out << doc.dump(2) << '\n';
  }
  if (c.output.empty()) {
    std::cout << out.str();
  } else {
    std::ofstream f(c.output, std::ios::binary);
    if (!f) throw UsageError("cannot write " + c.output);
    f << out.str();
  }
  return a.exit;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"Bicolor loop models: geometry, sectors, spectra, entanglement and counting"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolkitVersion);

  auto common = [&](CLI::App* sub) {
    sub->add_option("--budget", cfg.budget, "Largest basis / BFS state count")->check(CLI::PositiveNumber);
    sub->add_option("--seed", cfg.seed, "Seed for randomized stages");
    sub->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--output,-o", cfg.output, "Write the artifact to a file");
    sub->add_flag("--reproducible", cfg.reproducible, "Record wall time as 0 for byte-identical reruns");
  };
  auto lattice = [&](CLI::App* sub) {
    sub->add_option("--model", cfg.model, "square-inter, square-total or hex");
    sub->add_option("--L", cfg.L, "Linear size")->check(CLI::Range(2, 64));
    sub->add_option("--Lx", cfg.lx, "Hexagonal cells along x")->check(CLI::Range(2, 64));
    sub->add_option("--Ly", cfg.ly, "Hexagonal cells along y")->check(CLI::Range(2, 64));
  };

  auto* geometry = app.add_subcommand("geometry", "Edge, face and cycle tables of a torus");
  lattice(geometry);
  common(geometry);

  auto* sectors = app.add_subcommand("sectors", "Krylov components of the closed-loop move graph");
  lattice(sectors);
  common(sectors);
  sectors->add_option("--moves", cfg.moves, "B, C, B,C or B'");
  sectors->add_flag("--members", cfg.members, "List every configuration of each component");

  auto* spectrum = app.add_subcommand("spectrum", "Lowest eigenvalues of a Hamiltonian");
  lattice(spectrum);
  common(spectrum);
  spectrum->add_option("--k", cfg.k, "Number of eigenvalues");
  spectrum->add_option("--sector", cfg.sector, "full or closed");
  spectrum->add_option("--solver", cfg.solver, "auto, dense or lanczos");
  spectrum->add_option("--coo", cfg.coo, "Also write the Hamiltonian in coordinate format");

  auto* towers = app.add_subcommand("towers", "H_v / H_f tower structure and defect-pair states");
  lattice(towers);
  common(towers);
  towers->add_flag("--defects", cfg.defects, "Scan uniform defect-pair superpositions");

  auto* wilson = app.add_subcommand("wilson", "Wilson loop relations, commutators and ground-space leakage");
  lattice(wilson);
  common(wilson);

  auto* entropy = app.add_subcommand("entropy", "Schmidt spectra of ground-state components across a cut");
  lattice(entropy);
  common(entropy);
  entropy->add_option("--moves", cfg.moves, "Move set defining the components");
  entropy->add_option("--cut", cfg.cut, "column:F:N, vertices:V,..., dimer:C or hexagon:F");
  entropy->add_option("--component", cfg.component, "Only this component");
  entropy->add_flag("--bits", cfg.bits, "Report entropies in bits");

  auto* count = app.add_subcommand("count", "Boundary-string counts");
  common(count);
  count->add_option("--family", cfg.family, "Ni, Tn, FPL or BLC");
  count->add_option("--l", cfg.l_range, "l or a range A..B");
  count->add_option("--step", cfg.l_step, "Step through the range");
  count->add_option("--s", cfg.s, "BLC color count");

  auto* fit = app.add_subcommand("fit", "Fit S = alpha 2l - beta ln 2l - gamma to an entropy sequence");
  common(fit);
  fit->add_option("--family", cfg.family, "Si, Sn, SFPL or SBLC");
  fit->add_option("--l", cfg.l_range, "Range A..B");
  fit->add_option("--step", cfg.l_step, "Step through the range");
  fit->add_option("--s", cfg.s, "BLC color count");
  fit->add_flag("--bits", cfg.bits, "Report entropies in bits");

  auto* verify = app.add_subcommand("verify-all", "Run the acceptance suite");
  common(verify);
  verify->add_option("--scale", cfg.scale, "smoke, desk or extended");

  fit->callback([&] {
    if (fit->count("--l") == 0) cfg.l_range = "50..500";
    if (fit->count("--family") == 0) cfg.family = "Si";
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  cfg.command = app.get_subcommands().front()->get_name();
  const auto t0 = std::chrono::steady_clock::now();
  try {
    Artifact a;
    if (cfg.command == "geometry") a = cmd_geometry(cfg);
    else if (cfg.command == "sectors") a = cmd_sectors(cfg);
    else if (cfg.command == "spectrum") a = cmd_spectrum(cfg);
    else if (cfg.command == "towers") a = cmd_towers(cfg);
    else if (cfg.command == "wilson") a = cmd_wilson(cfg);
    else if (cfg.command == "entropy") a = cmd_entropy(cfg);
    else if (cfg.command == "count") a = cmd_count(cfg);
    else if (cfg.command == "fit") a = cmd_fit(cfg);
    else a = cmd_verify(cfg);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return emit(cfg, a, wall);
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const UsageError& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
