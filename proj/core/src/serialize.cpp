#include "locuslab/serialize.hpp"

#include <json.hpp>

namespace locuslab {

namespace {

// Keys keep insertion order so equal inputs give byte-identical files.
using Json = nlohmann::ordered_json;

Json point(PlanePoint p) { return Json{{"x", p.x}, {"y", p.y}}; }

Json params_json(const Params& p) { return Json{{"gamma", p.gamma()}, {"lambda", p.lambda()}}; }

Json zero_json(const ZeroReport& z) {
  return Json{{"location", z.location},         {"order_estimate", z.order_estimate},
              {"is_sign_change", z.is_sign_change}, {"bracket", {z.bracket_lo, z.bracket_hi}},
              {"signs", {z.sign_lo, z.sign_hi}},  {"residual", z.residual}};
}

Json witness_json(const TrapWitness& w) {
  return Json{{"label", w.label},
              {"x", w.point.x},
              {"y", w.point.y},
              {"address", w.address.to_string()},
              {"margin", w.margin},
              {"normalized_margin", w.normalized_margin}};
}

Json certificate_json(const TrapCertificate& c) {
  Json j;
  j["params_solved"] = params_json(c.params_solved);
  j["u"] = c.u.to_string();
  j["v"] = c.v.to_string();
  j["order_m"] = c.order_m;
  j["w"] = point(c.w);
  j["disk_eps"] = c.disk_eps;
  Json ws = Json::array();
  for (const auto& w : c.witnesses) ws.push_back(witness_json(w));
  j["witnesses"] = ws;
  j["gap_upper"] = c.gap_upper;
  j["containment_margin"] = c.containment_margin;
  j["boundary_runs"] = c.boundary_runs;
  j["tolerances"] = Json{{"eps", c.tolerances.eps},
                         {"grid", c.tolerances.grid},
                         {"margin_tol", c.tolerances.margin_tol},
                         {"cover_radius", c.tolerances.cover_radius},
                         {"slack", c.tolerances.slack},
                         {"gap_depth", c.tolerances.gap_depth}};
  j["rigorous"] = c.rigorous;
  if (c.solve) {
    j["solve"] = Json{{"params_start", params_json(c.solve->params_start)},
                      {"params_solved", params_json(c.solve->params_solved)},
                      {"M", c.solve->M},
                      {"residual_gamma", c.solve->residual_gamma},
                      {"residual_lambda", c.solve->residual_lambda}};
  } else {
    j["solve"] = nullptr;
  }
  return j;
}

}  // namespace

std::string attractor_json(const Params& params, const AttractorSample& sample) {
  Json pts = Json::array();
  for (const auto& p : sample.points) pts.push_back({p.x, p.y});
  Json j{{"params", params_json(params)},
         {"depth", sample.depth},
         {"hausdorff_bound", sample.hausdorff_bound},
         {"points", pts}};
  return j.dump(1) + "\n";
}

std::string hull_json(const Params& params, const HullVertexList& hull) {
  Json vs = Json::array();
  for (const auto& v : hull.vertices) {
    vs.push_back(Json{{"address", v.address.to_string()}, {"x", v.point.x}, {"y", v.point.y}});
  }
  Json j{{"params", params_json(params)}, {"method", "analytic"}, {"k_max", hull.k_max}, {"vertices", vs}};
  return j.dump(1) + "\n";
}

std::string hull_json(const Params& params, const std::vector<PlanePoint>& numeric) {
  Json vs = Json::array();
  for (const auto& v : numeric) vs.push_back(Json{{"address", nullptr}, {"x", v.x}, {"y", v.y}});
  Json j{{"params", params_json(params)}, {"method", "numeric"}, {"vertices", vs}};
  return j.dump(1) + "\n";
}

std::string certify_json(const Params& params0, const CertifyResult& result) {
  Json cs = Json::array();
  for (const auto& c : result.certificates) cs.push_back(certificate_json(c));
  Json j{{"params", params_json(params0)}, {"certificates", cs}, {"trace", result.trace}};
  return j.dump(1) + "\n";
}

std::string screen_json(int m_max, Tail tail, const std::vector<OutlierCandidate>& candidates,
                        const std::vector<ConstraintVerdict>& verdicts) {
  Json cs = Json::array();
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const auto& c = candidates[i];
    Json e;
    e["params"] = params_json(c.params);
    e["series"] = c.series.to_string();
    e["simple_zero"] = zero_json(c.simple_zero);
    e["even_zero"] = zero_json(c.even_zero);
    e["tail_case"] = std::string(to_string(c.tail_case));
    e["defining_polynomial"] = c.defining_polynomial;
    e["series_residual"] = {c.series_residual_gamma, c.series_residual_lambda};
    e["polynomial_residual"] = {c.poly_residual_gamma, c.poly_residual_lambda};
    e["order_uncertain"] = c.order_uncertain;
    if (i < verdicts.size()) {
      e["kept"] = verdicts[i].kept;
      e["reason"] = verdicts[i].reason;
    }
    cs.push_back(e);
  }
  Json j{{"m_max", m_max}, {"tail", std::string(to_string(tail))}, {"candidates", cs}};
  return j.dump(1) + "\n";
}

}  // namespace locuslab
