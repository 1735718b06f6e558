#pragma once

// JSON and CSV encodings shared by every module and by the CLI.
//
// CSV numbers use '.' as decimal separator and 17 significant digits so a
// double round-trips exactly; JSON numbers use nlohmann's shortest
// round-trip form.

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "majolab/cft_spectrum.hpp"
#include "majolab/chain_spectra.hpp"
#include "majolab/distribution.hpp"
#include "majolab/flow_report.hpp"
#include "majolab/majorization.hpp"

namespace majolab {

using json = nlohmann::json;

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// --- Distribution ----------------------------------------------------------

inline json to_json(const Distribution& d) {
  return json(std::vector<double>(d.weights().begin(), d.weights().end()));
}

inline Distribution distribution_from_json(const json& j, double tol = kDefaultTol) {
  if (!j.is_array()) throw Error(ErrorCode::EmptyInput, "distribution JSON must be an array");
  return canonicalize(j.get<std::vector<double>>(), tol);
}

inline void write_csv(std::ostream& os, const Distribution& d) {
  for (double w : d.weights()) os << format_double(w) << '\n';
}

inline Distribution distribution_from_csv(std::istream& is, double tol = kDefaultTol) {
  std::vector<double> w;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    try {
      std::size_t used = 0;
      w.push_back(std::stod(line, &used));
    } catch (const std::exception&) {
      if (w.empty()) continue;  // header row
      throw Error(ErrorCode::IoError, "malformed CSV row: " + line);
    }
  }
  return canonicalize(w, tol);
}

// --- Reports ---------------------------------------------------------------

inline json to_json(const MajorizationReport& r) {
  json gaps = json::array();
  for (const auto& g : r.cumulant_gaps) gaps.push_back({g.k, g.gap});
  json j;
  j["verdict"] = std::string(to_string(r.verdict));
  j["cumulant_gaps"] = std::move(gaps);
  j["first_violation"] = r.first_violation ? json(*r.first_violation) : json(nullptr);
  j["tol"] = r.tol;
  return j;
}

inline json to_json(const FlowReport& r) {
  json j;
  j["direction"] = std::string(to_string(r.direction));
  j["points"] = r.points;
  j["entropies"] = r.entropies;
  j["largest"] = r.largest;
  j["levels"] = {{"global", r.levels.global},
                 {"monotonous", r.levels.monotonous},
                 {"fine_grained", r.levels.fine_grained}};
  j["all_pairs_hold"] = r.all_pairs_hold;
  j["entropy_ties"] = r.entropy_ties;
  j["tol"] = r.tol;
  j["entropy_tol"] = r.entropy_tol;
  json pairs = json::array();
  for (const auto& p : r.pairwise) {
    json e = to_json(p.report);
    e["disordered"] = r.points[p.disordered];
    e["ordered"] = r.points[p.ordered];
    pairs.push_back(std::move(e));
  }
  j["pairwise"] = std::move(pairs);
  return j;
}

/// One row per point: param, entropy, largest eigenvalue and the verdict of
/// the comparison with the previous point (empty on the first row).
inline void write_flow_csv(std::ostream& os, const FlowReport& r) {
  os << "param,entropy,largest,verdict\n";
  for (std::size_t i = 0; i < r.points.size(); ++i) {
    std::string verdict;
    for (const auto& p : r.pairwise) {
      const bool adjacent = (p.disordered == i && p.ordered + 1 == i) ||
                            (p.ordered == i && p.disordered + 1 == i);
      if (adjacent) verdict = p.holds() ? "HOLDS" : std::string("FAILS:") + std::string(to_string(p.report.verdict));
    }
    os << format_double(r.points[i]) << ',' << format_double(r.entropies[i]) << ','
       << format_double(r.largest[i]) << ',' << verdict << '\n';
  }
}

/// Long-format spectra: param, eigenvalue index, weight.
inline void write_spectra_csv(std::ostream& os, const std::vector<FlowPoint>& pts) {
  os << "param,index,weight\n";
  for (const auto& p : pts)
    for (std::size_t i = 0; i < p.dist.size(); ++i)
      os << format_double(p.param) << ',' << i << ',' << format_double(p.dist[i]) << '\n';
}

// --- Chain models ----------------------------------------------------------

inline json to_json(const ChainModel& m) {
  return std::visit(
      [](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, XXChain>)
          return {{"name", "xx"}, {"L", v.L}};
        else if constexpr (std::is_same_v<T, HeisenbergChain>)
          return {{"name", "heisenberg"}, {"delta", v.delta}};
        else
          return {{"name", "xy"}, {"lambda", v.lambda}, {"gamma", v.gamma}};
      },
      m);
}

inline json to_json(const AssembledSpectrum& s) {
  json j;
  j["model"] = to_json(s.model);
  j["M"] = s.modes;
  j["tail_bound"] = s.tail_bound;
  j["critical"] = s.critical;
  j["weights"] = to_json(s.dist);
  return j;
}

inline json to_json(const ChainFlow& f) {
  json j;
  j["direction"] = std::string(to_string(f.direction));
  json pts = json::array();
  for (const auto& p : f.points) {
    json e = to_json(p.spectrum);
    e["param"] = p.param;
    pts.push_back(std::move(e));
  }
  j["points"] = std::move(pts);
  json steps = json::array();
  for (const auto& s : f.steps) {
    json modes = json::array();
    for (const auto& m : s.modes)
      modes.push_back({{"alpha", m.alpha},
                       {"top_disordered", m.top_disordered},
                       {"top_ordered", m.top_ordered},
                       {"padded", m.padded},
                       {"holds", m.holds}});
    steps.push_back({{"disordered", f.points[s.disordered].param},
                     {"ordered", f.points[s.ordered].param},
                     {"modes", std::move(modes)}});
  }
  j["mode_steps"] = std::move(steps);
  return j;
}

// --- CFT inputs ------------------------------------------------------------

struct CFTSpecDocument {
  ScalingSpectrum spectrum;
  CFTFlowParams params;
};

/// {"exponents": [...], "degeneracies": [...], "kappa": k, "uv_cutoff": e, "b": optional}
inline CFTSpecDocument cft_spec_from_json(const json& j) {
  try {
    std::optional<double> b;
    if (j.contains("b") && !j.at("b").is_null()) b = j.at("b").get<double>();
    CFTSpecDocument doc{
        ScalingSpectrum(j.at("exponents").get<std::vector<double>>(),
                        j.at("degeneracies").get<std::vector<unsigned>>(), b),
        CFTFlowParams{j.value("kappa", 1.0), j.value("uv_cutoff", 1.0)}};
    doc.params.validate();
    return doc;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidSpectrum, std::string("malformed spectrum document: ") + e.what());
  }
}

inline json to_json(const ScalingSpectrum& s, const CFTFlowParams& p) {
  json j;
  j["exponents"] = s.exponents();
  j["degeneracies"] = s.degeneracies();
  j["kappa"] = p.kappa;
  j["uv_cutoff"] = p.uv_cutoff;
  if (s.b()) j["b"] = *s.b();
  return j;
}

/// Two columns g,q; an optional header row and '#' comments are skipped.
inline QFlow qflow_from_csv(std::istream& is) {
  QFlow f;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string a, b;
    if (!std::getline(ls, a, ',') || !std::getline(ls, b, ','))
      throw Error(ErrorCode::IoError, "q-flow row needs two columns: " + line);
    try {
      f.samples.emplace_back(std::stod(a), std::stod(b));
    } catch (const std::exception&) {
      if (!f.samples.empty()) throw Error(ErrorCode::IoError, "malformed q-flow row: " + line);
    }
  }
  return f;
}

}  // namespace majolab
