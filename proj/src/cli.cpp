#include "ks8/cli.hpp"

#include "ks8/seeker.hpp"
#include "ks8/serialize.hpp"
#include "ks8/verifier.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace ks8::cli {

namespace {

// Input problems that map to exit code 2.
class InputError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int parse_int(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size())
    throw std::invalid_argument("malformed " + what + ": '" + s + "'");
  return v;
}

std::vector<std::string> split(std::string_view s, std::string_view seps) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (seps.find(c) != std::string_view::npos) {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

Catalog load_catalog(const RunConfig& cfg) {
  if (!cfg.rays_file && !cfg.bases_file) return kp_catalog();
  try {
    std::vector<Ray> rays = cfg.rays_file ? parse_ray_list(read_file(*cfg.rays_file)) : kp_rays();
    std::vector<std::vector<int>> bases;
    if (cfg.bases_file) {
      bases = parse_basis_list(read_file(*cfg.bases_file));
    } else {
      for (const auto& b : kp_bases()) bases.push_back(b.ray_set());
    }
    return Catalog(std::move(rays), bases);
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("malformed catalog file: ") + e.what());
  } catch (const std::out_of_range& e) {
    throw InputError(std::string("malformed catalog file: ") + e.what());
  }
}

using SeedSource = std::function<const std::vector<KSSet>&()>;

KSSet select_seed(const RunConfig& cfg, const Catalog& catalog, const SeedSource& all_seeds) {
  if (cfg.seed_index) {
    const int i = *cfg.seed_index;
    const auto& seeds = all_seeds();
    if (i < 1 || i > static_cast<int>(seeds.size()))
      throw InputError("unknown seed index " + std::to_string(i) + " (valid: 1.." +
                       std::to_string(seeds.size()) + ")");
    return seeds[static_cast<std::size_t>(i - 1)];
  }
  if (cfg.seed_bases) {
    KSSet s;
    try {
      s = ks_set_from_indices(catalog, *cfg.seed_bases);
      gammas(s);
    } catch (const std::exception& e) {
      throw InputError(std::string("seed bases do not form a 20_2 20_4 - 15_8 seed: ") + e.what());
    }
    if (s.profile != "20_2 20_4 - 15_8")
      throw InputError("seed bases have profile " + s.profile + ", expected 20_2 20_4 - 15_8");
    return s;
  }
  throw InputError("no seed selected (use --seed or --seed-bases)");
}

void require_format(const RunConfig& cfg, std::initializer_list<Format> allowed) {
  for (auto f : allowed)
    if (cfg.format == f) return;
  throw InputError("output format not supported by this command");
}

void write_seek(const RunConfig& cfg, const std::vector<KSSet>& seeds, std::ostream& out) {
  require_format(cfg, {Format::Text, Format::Json, Format::Jsonl});
  if (cfg.format == Format::Json) {
    json arr = json::array();
    for (const auto& s : seeds) arr.push_back(ks_set_to_json(s));
    out << arr.dump(2) << "\n";
    return;
  }
  int n = 0;
  for (const auto& s : seeds) {
    if (cfg.format == Format::Jsonl) {
      out << ks_set_to_json(s).dump() << "\n";
      continue;
    }
    out << ++n << ":";
    for (int k : basis_indices(s)) out << " " << k;
    out << "  [" << s.profile << "]\n";
  }
}

std::vector<StepChoice> choices_for(const RunConfig& cfg) {
  if (!cfg.choice_spec) throw InputError("transform needs --choices");
  std::vector<StepChoice> choices;
  try {
    choices = parse_choice_spec(*cfg.choice_spec);
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("malformed choice spec: ") + e.what());
  }
  for (const auto& c : choices)
    if (cfg.skip_pattern.contains(c.step_index) && c.apply_r3)
      throw InputError("choice spec applies rule 3 at step " + std::to_string(c.step_index) +
                       ", which the skip pattern excludes");
  return choices;
}

int cmd_transform(const RunConfig& cfg, const KSSet& seed, std::ostream& out) {
  require_format(cfg, {Format::Text, Format::Json});
  const auto choices = choices_for(cfg);
  KSSet result;
  try {
    result = transform(seed, choices);
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("invalid choices: ") + e.what());
  }
  if (cfg.format == Format::Json)
    out << ks_set_to_json(result).dump(2) << "\n";
  else
    out << format_ks_set_text(result) << "profile: " << result.profile << "\n";
  return has_parity_proof(result).proof ? kExitOk : kExitVerificationFailed;
}

int cmd_matchings(const RunConfig& cfg, const KSSet& seed, std::ostream& out) {
  require_format(cfg, {Format::Text, Format::Json});
  const int step = *cfg.matchings_step;
  if (step < 1 || step > 5) throw InputError("--matchings step must be 1..5");
  const auto g = gammas(seed)[static_cast<std::size_t>(step - 1)];
  const auto ms = enumerate_matchings(seed, g);
  if (cfg.format == Format::Json) {
    json arr = json::array();
    for (const auto& m : ms)
      arr.push_back(choice_to_json({step, m.matching, m.r3_compatible, m.r3_pairs}));
    out << arr.dump(2) << "\n";
    return kExitOk;
  }
  for (const auto& m : ms) {
    for (const auto& p : m.matching) out << "(" << p.first << "," << p.second << ") ";
    out << (m.r3_compatible ? "r3:yes" : "r3:no");
    if (m.r3_pairs)
      for (const auto& p : *m.r3_pairs) out << " (" << p.first << "," << p.second << ")";
    out << "\n";
  }
  return kExitOk;
}

int cmd_enumerate(const RunConfig& cfg, const KSSet& seed, std::ostream& out) {
  if (cfg.matchings_step) return cmd_matchings(cfg, seed, out);
  require_format(cfg, {Format::Text, Format::Jsonl});
  EnumerateOptions opts{cfg.skip_pattern, cfg.allow_step1_skip, cfg.include_unapplied, cfg.workers};
  bool all_proofs = true;
  TransformCensus census;
  try {
    census = enumerate_transforms(seed, opts, [&](const KSSet& s, const auto&) {
      const bool proof = has_parity_proof(s).proof;
      all_proofs = all_proofs && proof;
      if (cfg.format == Format::Jsonl) out << ks_set_to_json(s).dump() << "\n";
    });
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  if (cfg.format == Format::Text)
    out << "N_R3 " << census.n_r3_skipped << "\nN_KS " << census.n_ks << "\nN_2 "
        << census.n_rank2 << "\nN_1 " << census.n_rank1 << "\n"
        << "parity proofs: " << (all_proofs ? "all" : "NOT all") << "\n";
  return all_proofs ? kExitOk : kExitVerificationFailed;
}

int cmd_verify(const RunConfig& cfg, const Catalog& catalog, const SeedSource& seeds,
               std::ostream& out) {
  require_format(cfg, {Format::Text, Format::Json});
  KSSet set;
  bool is_seed = false;
  if (cfg.input_file) {
    const auto text = read_file(*cfg.input_file);
    const auto first = text.find_first_not_of(" \t\r\n");
    try {
      if (first != std::string::npos && text[first] == '{')
        set = ks_set_from_json(json::parse(text), catalog);
      else
        set = parse_ks_set_text(text, catalog);
    } catch (const json::exception& e) {
      throw InputError(std::string("malformed JSON input: ") + e.what());
    } catch (const std::invalid_argument& e) {
      throw InputError(std::string("malformed KS set input: ") + e.what());
    } catch (const std::out_of_range& e) {
      throw InputError(std::string("malformed KS set input: ") + e.what());
    }
  } else {
    set = select_seed(cfg, catalog, seeds);
    is_seed = true;
  }
  const auto rep = is_seed ? verify_seed(set) : verify_set(set);
  if (cfg.format == Format::Json)
    out << report_to_json(rep).dump(2) << "\n";
  else
    out << report_to_text(rep);
  return rep.is_ks_set() ? kExitOk : kExitVerificationFailed;
}

int cmd_catalog_check(const CatalogReport& rep, std::ostream& out) {
  if (rep.ok) {
    out << "catalog: ok (every basis orthogonal and complete; every ray once in pure, "
           "four times in hybrid bases)\n";
    return kExitOk;
  }
  out << "catalog: FAILED\n";
  for (const auto& p : rep.problems) out << "  " << p << "\n";
  return kExitVerificationFailed;
}

int dispatch(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Catalog catalog = load_catalog(cfg);
  const auto report = validate_catalog(catalog);
  const bool checking_catalog = cfg.command == Command::Verify && !cfg.input_file &&
                                !cfg.seed_index && !cfg.seed_bases;
  if (checking_catalog) return cmd_catalog_check(report, out);
  if (!report.ok) {
    cmd_catalog_check(report, err);
    return kExitVerificationFailed;
  }

  switch (cfg.command) {
  case Command::Rays:
    require_format(cfg, {Format::Text, Format::Json});
    if (cfg.format == Format::Json)
      out << catalog_to_json(catalog)["rays"].dump(2) << "\n";
    else
      out << format_ray_list(catalog.rays());
    return kExitOk;
  case Command::Bases:
    require_format(cfg, {Format::Text, Format::Json});
    if (cfg.format == Format::Json)
      out << catalog_to_json(catalog)["bases"].dump(2) << "\n";
    else
      out << format_basis_list(catalog.bases());
    return kExitOk;
  case Command::Export:
    require_format(cfg, {Format::Dot, Format::Json});
    if (cfg.format == Format::Json)
      out << catalog_to_json(catalog).dump(2) << "\n";
    else
      out << export_orthogonality_graph(catalog);
    return kExitOk;
  default:
    break;
  }

  std::vector<KSSet> found;
  bool searched = false;
  SeedSource seeds = [&]() -> const std::vector<KSSet>& {
    if (!cfg.rays_file && !cfg.bases_file && cfg.command != Command::Seek) return kp_seed_sets();
    if (!searched) {
      SeedSearchOptions opts;
      opts.workers = cfg.workers;
      found = find_seed_sets(catalog, opts);
      searched = true;
    }
    return found;
  };

  switch (cfg.command) {
  case Command::Seek:
    write_seek(cfg, seeds(), out);
    return kExitOk;
  case Command::Transform:
    return cmd_transform(cfg, select_seed(cfg, catalog, seeds), out);
  case Command::Enumerate:
    return cmd_enumerate(cfg, select_seed(cfg, catalog, seeds), out);
  case Command::Verify:
    return cmd_verify(cfg, catalog, seeds, out);
  default:
    break;
  }
  err << "unhandled command\n";
  return kExitInvalidInput;
}

} // namespace

std::vector<StepChoice> parse_choice_spec(std::string_view spec) {
  std::vector<StepChoice> out;
  std::vector<std::array<bool, 2>> seen; // match, r3
  for (const auto& tok : split(spec, "; \t\r\n")) {
    const auto colon = tok.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("expected key:value, got '" + tok + "'");
    const std::string key = tok.substr(0, colon), val = tok.substr(colon + 1);
    if (key == "step") {
      StepChoice c;
      c.step_index = parse_int(val, "step index");
      if (c.step_index < 1 || c.step_index > 5)
        throw std::invalid_argument("step index must be 1..5, got " + val);
      for (const auto& prev : out)
        if (prev.step_index == c.step_index)
          throw std::invalid_argument("step " + val + " given twice");
      out.push_back(c);
      seen.push_back({false, false});
      continue;
    }
    if (out.empty()) throw std::invalid_argument("'" + tok + "' before any step:");
    auto& c = out.back();
    if (key == "match") {
      const auto pairs = split(val, ",");
      if (pairs.size() != 4)
        throw std::invalid_argument("match needs 4 couplings, got " + std::to_string(pairs.size()));
      for (std::size_t i = 0; i < 4; ++i) {
        const auto gt = pairs[i].find('>');
        if (gt == std::string::npos) throw std::invalid_argument("coupling must be g>p: '" + pairs[i] + "'");
        c.matching[i] = {parse_int(pairs[i].substr(0, gt), "ray index"),
                         parse_int(pairs[i].substr(gt + 1), "ray index")};
      }
      seen.back()[0] = true;
    } else if (key == "r3") {
      if (val != "yes" && val != "no") throw std::invalid_argument("r3 must be yes or no, got '" + val + "'");
      c.apply_r3 = val == "yes";
      seen.back()[1] = true;
    } else {
      throw std::invalid_argument("unknown key '" + key + "'");
    }
  }
  if (out.size() != 5) throw std::invalid_argument("need 5 steps, got " + std::to_string(out.size()));
  for (std::size_t i = 0; i < out.size(); ++i)
    if (!seen[i][0] || !seen[i][1])
      throw std::invalid_argument("step " + std::to_string(out[i].step_index) + " lacks match: or r3:");
  return out;
}

std::string format_choice_spec(const std::vector<StepChoice>& choices) {
  std::string s;
  for (const auto& c : choices) {
    if (!s.empty()) s += ' ';
    s += "step:" + std::to_string(c.step_index) + ";match:";
    for (std::size_t i = 0; i < 4; ++i)
      s += (i ? "," : "") + std::to_string(c.matching[i].first) + ">" +
           std::to_string(c.matching[i].second);
    s += std::string(";r3:") + (c.apply_r3 ? "yes" : "no");
  }
  return s;
}

std::string export_orthogonality_graph(const Catalog& catalog) {
  const auto& rays = catalog.rays();
  std::string out = "graph orthogonality {\n";
  for (const auto& r : rays) out += "  " + std::to_string(*r.index()) + ";\n";
  for (std::size_t i = 0; i < rays.size(); ++i)
    for (std::size_t j = i + 1; j < rays.size(); ++j)
      if (dot(rays[i], rays[j]) == 0)
        out += "  " + std::to_string(i + 1) + " -- " + std::to_string(j + 1) + ";\n";
  return out + "}\n";
}

ParseOutcome parse_args(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Kochen-Specker sets of the three-qubit Kernaghan-Peres rays"};
  app.require_subcommand(1);
  RunConfig cfg;

  int default_workers = 1;
  if (const char* env = std::getenv("KS8_WORKERS")) {
    try {
      default_workers = parse_int(env, "KS8_WORKERS");
    } catch (const std::invalid_argument& e) {
      err << e.what() << "\n";
      return {std::nullopt, kExitInvalidInput};
    }
  }
  cfg.workers = default_workers;

  std::string format;
  bool json_flag = false;
  std::string seed_bases, skip;
  std::optional<std::string> rays_file, bases_file;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", format, "text | json | jsonl | dot");
    sub->add_flag("--json", json_flag, "same as --format json");
    sub->add_option("--workers", cfg.workers, "worker threads (default $KS8_WORKERS or 1)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--rays-file", rays_file, "ray list replacing the embedded rays");
    sub->add_option("--bases-file", bases_file, "basis list replacing the embedded bases");
  };
  auto seed_opts = [&](CLI::App* sub) {
    sub->add_option("--seed", cfg.seed_index, "seed number 1..64 (order of `seek`)");
    sub->add_option("--seed-bases", seed_bases, "comma-separated basis indices of the seed");
  };

  auto* rays = app.add_subcommand("rays", "print the 40 rays");
  auto* bases = app.add_subcommand("bases", "print the 25 bases");
  auto* seek = app.add_subcommand("seek", "search the 15-basis parity-proof seeds");
  auto* tr = app.add_subcommand("transform", "turn a seed into a rank-2 / mixed KS set");
  auto* en = app.add_subcommand("enumerate", "enumerate every transform of a seed");
  auto* ver = app.add_subcommand("verify", "verify a KS set file, a seed, or the catalog");
  auto* exp = app.add_subcommand("export", "export the orthogonality graph (dot) or catalog (json)");
  for (auto* s : {rays, bases, seek, tr, en, ver, exp}) common(s);
  for (auto* s : {tr, en, ver}) seed_opts(s);
  for (auto* s : {tr, en}) {
    s->add_option("--skip", skip, "steps (2..5) where rule 3 is not applied, comma-separated");
    s->add_flag("--allow-step1-skip", cfg.allow_step1_skip, "permit skipping rule 3 at step 1");
  }
  std::string choices;
  tr->add_option("--choices", choices, "step:i;match:g>p,...;r3:yes|no for each of steps 1..5")
      ->required();
  en->add_flag("--include-unapplied", cfg.include_unapplied,
               "skipped steps also use rule-3 compatible couplings");
  en->add_option("--matchings", cfg.matchings_step, "list the couplings of one step instead");
  ver->add_option("file", cfg.input_file, "KS set as JSON or basis text");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return {std::nullopt, code == 0 ? kExitOk : kExitInvalidInput};
  }

  if (rays->parsed()) cfg.command = Command::Rays;
  if (bases->parsed()) cfg.command = Command::Bases;
  if (seek->parsed()) cfg.command = Command::Seek;
  if (tr->parsed()) cfg.command = Command::Transform;
  if (en->parsed()) cfg.command = Command::Enumerate;
  if (ver->parsed()) cfg.command = Command::Verify;
  if (exp->parsed()) cfg.command = Command::Export;

  try {
    if (json_flag && !format.empty() && format != "json")
      throw std::invalid_argument("--json conflicts with --format " + format);
    if (json_flag) format = "json";
    if (format.empty()) format = cfg.command == Command::Export ? "dot" : "text";
    if (format == "text") cfg.format = Format::Text;
    else if (format == "json") cfg.format = Format::Json;
    else if (format == "jsonl") cfg.format = Format::Jsonl;
    else if (format == "dot") cfg.format = Format::Dot;
    else throw std::invalid_argument("unknown format '" + format + "'");

    if (!seed_bases.empty()) {
      std::vector<int> ids;
      for (const auto& t : split(seed_bases, ", ")) ids.push_back(parse_int(t, "basis index"));
      cfg.seed_bases = ids;
    }
    if (cfg.seed_index && cfg.seed_bases)
      throw std::invalid_argument("--seed and --seed-bases are mutually exclusive");
    for (const auto& t : split(skip, ", ")) {
      const int s = parse_int(t, "skip step");
      if (s < 1 || s > 5) throw std::invalid_argument("skip steps must be 2..5");
      if (s == 1 && !cfg.allow_step1_skip)
        throw std::invalid_argument("step 1 always applies rule 3 (see --allow-step1-skip)");
      cfg.skip_pattern.insert(s);
    }
    if (!choices.empty()) cfg.choice_spec = choices;
    cfg.rays_file = rays_file;
    cfg.bases_file = bases_file;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return {std::nullopt, kExitInvalidInput};
  }
  return {cfg, kExitOk};
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    return dispatch(config, out, err);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitVerificationFailed;
  }
}

} // namespace ks8::cli
