#include "bicolor/report.hpp"

#include <cstdio>
#include <sstream>

namespace bicolor {

std::string to_string(const BigInt& n) { return n.str(); }

std::string to_string(const BigRational& q) {
  std::ostringstream os;
  os << q;
  return os.str();
}

std::string hex_hash(std::uint64_t h) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Json to_json(const Geometry& g) {
  Json j;
  j["kind"] = g.kind == LatticeKind::square ? "square-torus" : "hex-torus";
  j["dims"] = g.dims_string();
  j["edges"] = g.num_edges();
  j["vertices"] = g.num_vertices();
  j["faces"] = g.num_faces();
  j["face_pairs"] = g.face_pairs.size();
  j["degenerate_pairs"] = g.degenerate_pairs;
  j["hash"] = hex_hash(geometry_hash(g));
  return j;
}

Json to_json(const WindingLabel& label) {
  Json j;
  j["x"] = word_display(label.along(Direction::x));
  j["y"] = word_display(label.along(Direction::y));
  return j;
}

Json to_json(const MoveGraphSummary& s, bool with_members) {
  Json j;
  j["dims"] = s.dims;
  j["move_set"] = s.move_set;
  j["configurations"] = s.configs.size();
  j["component_count"] = s.components.size();
  if (s.labelled) j["label_count"] = s.num_labels();
  j["frozen_count"] = s.frozen_count;
  Json comps = Json::array();
  for (const auto& c : s.components) {
    Json cj;
    cj["size"] = c.size();
    cj["representative"] = c.representative();
    if (s.labelled) {
      Json labels = Json::array();
      for (const auto& l : c.labels) labels.push_back(to_json(l));
      cj["label"] = labels.size() == 1 ? labels[0] : labels;
    }
    if (with_members) cj["members"] = c.members;
    comps.push_back(std::move(cj));
  }
  j["components"] = std::move(comps);
  return j;
}

Json to_json(const EigenReport& r) {
  Json j;
  j["basis"] = r.basis;
  j["dim"] = r.dim;
  j["solver"] = r.solver;
  j["iterations"] = r.iterations;
  j["converged"] = r.converged;
  j["eigenvalues"] = r.values;
  Json levels = Json::array(), mult = Json::array();
  for (const auto& l : r.levels) {
    levels.push_back(l.value);
    mult.push_back(l.multiplicity);
  }
  j["levels"] = levels;
  j["multiplicities"] = mult;
  j["residuals"] = r.residuals;
  return j;
}

Json to_json(const SchmidtSpectrum& s) {
  Json j;
  j["total"] = s.total;
  j["rank"] = s.rank;
  j["distinct_sigma"] = s.distinct_sigma;
  j["entropy"] = s.entropy;
  j["exact"] = s.exact;
  j["sum_is_one"] = s.sum_is_one;
  j["count_consistent"] = s.count_consistent;
  Json per = Json::array();
  for (const auto& b : s.boundary_strings) per.push_back(b.size());
  j["strings_per_boundary"] = per;
  Json entries = Json::array();
  for (const auto& e : s.entries) {
    Json ej;
    ej["sigma"] = e.sigma;
    ej["N_A"] = e.n_a;
    ej["N_B"] = e.n_b;
    ej["p"] = e.exact ? Json(to_string(e.p)) : Json(e.p_value);
    entries.push_back(std::move(ej));
  }
  j["entries"] = std::move(entries);
  return j;
}

Json to_json(const ScalingFit& f) {
  Json j;
  j["alpha"] = f.alpha;
  j["beta"] = f.beta;
  j["gamma"] = f.gamma;
  j["rms_residual"] = f.residual;
  j["points"] = f.points;
  return j;
}

Json to_json(const CountResult& r) {
  Json j;
  j["model"] = r.model;
  j["l"] = r.l;
  if (!r.s.empty()) j["s"] = r.s;
  j["exact"] = to_string(r.exact);
  if (r.closed_form) j["closed_form"] = to_string(*r.closed_form);
  if (r.oracle) j["oracle"] = to_string(*r.oracle);
  if (r.asymptotic) j["asymptotic"] = *r.asymptotic;
  if (r.ratio) j["ratio"] = *r.ratio;
  j["consistent"] = r.consistent();
  return j;
}

Json to_json(const TransferCount& t) {
  Json j;
  j["l"] = t.l;
  j["entry_count"] = to_string(t.entry);
  j["trace_count"] = to_string(t.trace);
  j["power_sum"] = to_string(t.power_sum);
  j["discrepancy"] = to_string(BigInt(t.power_sum - t.entry));
  return j;
}

Json to_json(const EntropyBound& b) {
  Json j;
  j["model"] = bound_model_name(b.model);
  j["l"] = b.l;
  if (b.model == BoundModel::SBLC) j["s"] = b.s;
  j["bound"] = b.bound;
  j["log_count"] = b.log_count;
  if (b.model == BoundModel::Sn) j["log_trace"] = b.log_trace;
  return j;
}

Json to_json(const HypergeometricCheck& h) {
  Json j;
  j["l"] = h.l;
  j["s"] = to_string(h.s);
  j["count_blc"] = to_string(h.blc);
  j["series_at_4s"] = to_string(h.series);
  j["series_at_8"] = to_string(h.series_at_8);
  j["match_at_4s"] = h.match;
  j["match_at_8"] = h.match_at_8;
  return j;
}

Json to_json(const BlcAsymptotic& a) {
  Json j;
  j["saddle_point"] = a.value;
  j["corrected"] = a.corrected;
  j["sigma"] = a.sigma;
  j["half_sigma"] = a.half_sigma;
  j["sqrt_sigma_times_1_minus_sigma"] = a.identity_sigma;
  j["sqrt_s_times_1_minus_sigma"] = a.identity_s;
  j["sigma_identity_holds"] = a.sigma_identity_holds;
  j["s_identity_holds"] = a.s_identity_holds;
  return j;
}

Json to_json(const TowerScan& t) {
  Json j;
  j["dim"] = t.dim;
  j["max_deviation"] = t.max_deviation;
  j["multiset_equal"] = t.multiset_equal;
  j["hv_integer"] = t.hv_integer;
  j["hv_levels"] = t.hv_levels;
  j["hv_closed_value"] = t.hv_closed_value;
  j["hv_hf_commutator"] = t.commutator;
  return j;
}

Json to_json(const DefectFinding& f) {
  Json j;
  j["vertices"] = {f.defect.v1, f.defect.v2};
  j["color"] = std::string(1, color_char(f.defect.color));
  j["sector_size"] = f.sector_size;
  j["component"] = f.component;
  j["component_size"] = f.component_size;
  j["energy"] = f.energy;
  j["offset"] = f.offset;
  j["residual"] = f.residual;
  j["exact_eigenstate"] = f.exact;
  j["integer_offset"] = f.integer_offset;
  return j;
}

Json to_json(const SwapCheck& s) {
  Json j;
  j["start"] = s.start.packed();
  j["target"] = s.target.packed();
  j["reachable"] = s.reachable;
  j["path_length"] = s.path_length;
  j["replay_ok"] = s.replay_ok;
  return j;
}

}  // namespace bicolor
