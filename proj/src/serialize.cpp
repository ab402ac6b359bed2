#include "ks8/serialize.hpp"

#include <sstream>
#include <stdexcept>

namespace ks8 {

namespace {

std::string kind_name(BasisKind k) { return k == BasisKind::Pure ? "pure" : "hybrid"; }

BasisKind kind_from_name(const std::string& s) {
  if (s == "pure") return BasisKind::Pure;
  if (s == "hybrid") return BasisKind::Hybrid;
  throw std::invalid_argument("basis kind must be \"pure\" or \"hybrid\", got \"" + s + "\"");
}

json basis_to_json(const Basis& b) {
  json projectors = json::array();
  for (const auto& p : b.projectors) projectors.push_back(p.ray_indices());
  return {{"index", b.index}, {"kind", kind_name(b.kind)}, {"projectors", projectors}};
}

Basis basis_from_json(const json& j, const Catalog& catalog) {
  Basis b;
  b.index = j.at("index").get<int>();
  b.kind = j.contains("kind") ? kind_from_name(j.at("kind").get<std::string>())
                              : kind_for_index(b.index);
  for (const auto& pj : j.at("projectors")) {
    std::vector<Ray> rays;
    for (const auto& r : pj) rays.push_back(catalog.ray(r.get<int>()));
    b.projectors.emplace_back(std::move(rays));
  }
  return b;
}

std::string projector_text(const Projector& p) {
  const auto ids = p.ray_indices();
  if (ids.size() == 1) return std::to_string(ids[0]);
  std::string s = "(";
  for (std::size_t i = 0; i < ids.size(); ++i) s += (i ? "," : "") + std::to_string(ids[i]);
  return s + ")";
}

} // namespace

json ks_set_to_json(const KSSet& set) {
  json bases = json::array();
  for (const auto& b : set.bases) bases.push_back(basis_to_json(b));
  return {{"bases", bases}, {"profile", set.profile}, {"parity_proof", has_parity_proof(set).proof}};
}

KSSet ks_set_from_json(const json& j, const Catalog& catalog) {
  std::vector<Basis> bases;
  for (const auto& bj : j.at("bases")) bases.push_back(basis_from_json(bj, catalog));
  return make_ks_set(std::move(bases));
}

json catalog_to_json(const Catalog& catalog) {
  json rays = json::array();
  for (const auto& r : catalog.rays())
    rays.push_back({{"index", r.index().value_or(0)}, {"coords", format_ray_text(r.coords())}});
  json bases = json::array();
  for (const auto& b : catalog.bases()) bases.push_back(basis_to_json(b));
  return {{"rays", rays}, {"bases", bases}};
}

Catalog catalog_from_json(const json& j) {
  std::vector<Ray> rays;
  for (const auto& rj : j.at("rays")) {
    const int idx = rj.at("index").get<int>();
    if (idx != static_cast<int>(rays.size()) + 1)
      throw std::invalid_argument("catalog rays must be listed in index order from 1");
    rays.push_back(canonicalize_ray(parse_ray_text(rj.at("coords").get<std::string>()), idx));
  }
  std::vector<std::vector<int>> basis_rays;
  for (const auto& bj : j.at("bases")) {
    if (bj.at("index").get<int>() != static_cast<int>(basis_rays.size()) + 1)
      throw std::invalid_argument("catalog bases must be listed in index order from 1");
    std::vector<int> ids;
    for (const auto& pj : bj.at("projectors"))
      for (const auto& r : pj) ids.push_back(r.get<int>());
    basis_rays.push_back(std::move(ids));
  }
  return Catalog(std::move(rays), basis_rays);
}

KSSet parse_ks_set_text(std::string_view text, const Catalog& catalog) {
  std::vector<Basis> bases;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto colon = line.find(':');
    if (colon == std::string::npos)
      throw std::invalid_argument("basis line missing ':': '" + line + "'");
    Basis b;
    try {
      b.index = std::stoi(line.substr(0, colon));
    } catch (const std::exception&) {
      throw std::invalid_argument("malformed basis index in '" + line + "'");
    }
    b.kind = kind_for_index(b.index);
    std::string rest = line.substr(colon + 1);
    for (char& c : rest)
      if (c == '(' || c == ')') c = c == '(' ? '[' : ']';
    std::istringstream items(rest);
    std::string tok;
    while (items >> tok) {
      // a pair may be written "(a, b)" with a space after the comma
      while (tok.front() == '[' && tok.back() != ']') {
        std::string more;
        if (!(items >> more)) throw std::invalid_argument("unterminated pair in '" + line + "'");
        tok += more;
      }
      std::vector<Ray> rays;
      std::string body = tok;
      if (body.front() == '[') body = body.substr(1, body.size() - 2);
      std::istringstream parts(body);
      std::string part;
      while (std::getline(parts, part, ',')) {
        try {
          rays.push_back(catalog.ray(std::stoi(part)));
        } catch (const std::out_of_range& e) {
          throw std::invalid_argument(e.what());
        } catch (const std::exception&) {
          throw std::invalid_argument("malformed projector '" + tok + "'");
        }
      }
      b.projectors.emplace_back(std::move(rays));
    }
    bases.push_back(std::move(b));
  }
  if (bases.empty()) throw std::invalid_argument("no bases in input");
  return make_ks_set(std::move(bases));
}

std::string format_ks_set_text(const KSSet& set) {
  std::string out;
  for (const auto& b : set.bases) {
    out += std::to_string(b.index) + ":";
    for (const auto& p : b.projectors) out += " " + projector_text(p);
    out += "\n";
  }
  return out;
}

json choice_to_json(const StepChoice& c) {
  json match = json::array();
  for (const auto& p : c.matching) match.push_back({p.first, p.second});
  json j = {{"step", c.step_index}, {"match", match}, {"r3", c.apply_r3}};
  if (c.r3_pairs) {
    json pairs = json::array();
    for (const auto& p : *c.r3_pairs) pairs.push_back({p.first, p.second});
    j["r3_pairs"] = pairs;
  }
  return j;
}

json report_to_json(const VerificationReport& rep) {
  json hist = json::object();
  for (const auto& [count, n] : rep.census_histogram) hist[std::to_string(count)] = n;
  json j = {{"structure_ok", rep.structure_ok},
            {"structure_issues", rep.structure_issues},
            {"parity_proof", rep.parity_proof},
            {"basis_count", rep.basis_count},
            {"profile", rep.profile},
            {"census", hist},
            {"colorable", rep.colorable},
            {"witness", nullptr}};
  if (rep.witness) {
    // projectors valued 1 under the witness coloring
    json ones = json::array();
    for (const auto& [key, v] : rep.witness->value)
      if (v) {
        json rows = json::array();
        for (int i = 0; i < key.dim; ++i) rows.push_back(format_ray_text(key.rows[i]));
        ones.push_back(rows);
      }
    j["witness"] = ones;
  }
  if (!rep.gamma_matchings.empty()) {
    json gm = json::array();
    for (const auto& g : rep.gamma_matchings)
      gm.push_back({{"step", g.step_index},
                    {"pure_basis", g.pure_index},
                    {"matchings", g.matchings},
                    {"r3_compatible", g.r3_compatible}});
    j["gamma_matchings"] = gm;
  }
  return j;
}

std::string report_to_text(const VerificationReport& rep) {
  std::ostringstream out;
  out << "bases: " << rep.basis_count << "\n";
  out << "profile: " << rep.profile << "\n";
  out << "structure: " << (rep.structure_ok ? "ok" : "FAILED") << "\n";
  for (const auto& issue : rep.structure_issues) out << "  " << issue << "\n";
  out << "census:";
  for (const auto& [count, n] : rep.census_histogram) out << " " << n << " x" << count;
  out << "\n";
  out << "parity proof: " << (rep.parity_proof ? "yes" : "no") << "\n";
  out << "colorable: " << (rep.colorable ? "yes" : "no") << "\n";
  for (const auto& g : rep.gamma_matchings)
    out << "step " << g.step_index << " (pure basis " << g.pure_index << "): " << g.matchings
        << " matchings, " << g.r3_compatible << " rule-3 compatible\n";
  std::string verdict = rep.parity_proof ? "parity proof" : "not a parity proof";
  if (!rep.structure_ok)
    verdict = "structurally invalid";
  else
    verdict += rep.colorable ? "; colorable" : "; not colorable";
  out << "verdict: " << verdict << "\n";
  return out.str();
}

} // namespace ks8
