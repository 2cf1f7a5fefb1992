#include "intentic/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "intentic/frames.hpp"
#include "intentic/io.hpp"
#include "intentic/pasearch.hpp"
#include "intentic/transform.hpp"

namespace intentic::cli {

namespace {

using io::json;

// Bad flag values and unusable configuration files.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Env {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
  std::string sig_file;
  std::vector<std::string> constants;
  std::string registry_file;
  Signature sig;
  WitnessRegistry reg;
  bool registry_loaded = false;

  io::Context ctx() { return {sig, reg}; }
};

std::string slurp(Env& env, const std::string& path) {
  if (path == "-") {
    std::stringstream ss;
    ss << env.in.rdbuf();
    return ss.str();
  }
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot read " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

json read_json(Env& env, const std::string& path) {
  try {
    return json::parse(slurp(env, path));
  } catch (const json::parse_error& e) {
    throw io::FormatError(path + ": " + e.what());
  }
}

void setup(Env& env, Signature base) {
  env.sig = std::move(base);
  if (!env.sig_file.empty()) {
    json j = read_json(env, env.sig_file);
    env.sig = io::signature_from_json(io::payload(j, "signature"));
  }
  for (const auto& c : env.constants) {
    if (!env.sig.has_constant(c)) env.sig.add_constant(c);
  }
  if (!env.registry_file.empty()) {
    env.reg = WitnessRegistry::from_tsv(slurp(env, env.registry_file), env.sig);
    env.registry_loaded = true;
  }
}

Signature default_signature() {
  Signature sig;
  sig.set_open(true);
  sig.add_constant("0");
  return sig;
}

// Documents may carry the registry their witness constants refer to.
void adopt_registry(Env& env, const json& doc) {
  if (env.registry_loaded || !doc.is_object() || !doc.contains("registry")) return;
  if (!doc["registry"].is_string()) throw io::FormatError("registry must be a TSV string");
  env.reg = WitnessRegistry::from_tsv(doc["registry"].get<std::string>(), env.sig);
  env.registry_loaded = true;
}

void emit(Env& env, json doc) {
  if (env.reg.size() > 0) doc["registry"] = env.reg.to_tsv();
  env.out << doc.dump(2) << "\n";
}

int rejected(Env& env, const Rejected& r) {
  json j;
  j["format_version"] = io::kFormatVersion;
  j["valid"] = false;
  j["path"] = r.path();
  j["reason"] = r.reason();
  env.out << j.dump(2) << "\n";
  env.err << "rejected at " << r.path() << ": " << r.reason() << "\n";
  return kInvalid;
}

json formulas(const std::vector<Formula>& fs) {
  json a = json::array();
  for (const auto& f : fs) a.push_back(to_string(f));
  return a;
}

// ---------------------------------------------------------------------------

int cmd_parse(Env& env, const std::vector<std::string>& inputs) {
  setup(env, default_signature());
  std::vector<std::string> texts = inputs;
  if (texts.empty() || (texts.size() == 1 && texts[0] == "-")) {
    texts.clear();
    std::string line;
    while (std::getline(env.in, line))
      if (!line.empty()) texts.push_back(line);
  }
  for (const auto& t : texts) env.out << to_string(parse_formula(t, env.sig, env.reg)) << "\n";
  return kOk;
}

int cmd_check(Env& env, const std::string& file, const std::string& logic, bool pa_axiomatic) {
  if (logic != "classical" && logic != "nh") throw ConfigError("--logic must be classical or nh");
  setup(env, pa_axiomatic ? Signature::relational_pa() : default_signature());
  json doc = read_json(env, file);
  adopt_registry(env, doc);
  Proof p = io::proof_from_json(io::payload(doc, "proof"), env.ctx());
  Logic lg = logic == "nh" ? Logic::NonHypothetical : Logic::Classical;
  Judgment jd;
  try {
    jd = check_proof(p, lg, env.reg);
    if (pa_axiomatic) {
      AxiomBase base = AxiomBase::relational_pa();
      for (const auto& a : jd.open_assumptions)
        if (!base.is_axiom(a)) throw Rejected("root", "open assumption " + to_string(a) + " is not a PA axiom");
    }
  } catch (const Rejected& r) {
    return rejected(env, r);
  }
  json j;
  j["format_version"] = io::kFormatVersion;
  j["valid"] = true;
  j["logic"] = logic;
  j["conclusion"] = to_string(jd.conclusion);
  j["open_assumptions"] = formulas(jd.open_assumptions);
  j["size"] = p.size();
  j["height"] = p.height();
  env.out << j.dump(2) << "\n";
  return kOk;
}

int cmd_state_check(Env& env, const std::string& file, const std::string& ext_file, const std::string& cert_file) {
  setup(env, default_signature());
  json doc = read_json(env, file);
  adopt_registry(env, doc);
  StatePtr u = io::state_from_json(io::payload(doc, "state"), env.ctx());
  StatePtr v;
  if (!ext_file.empty()) {
    json vdoc = read_json(env, ext_file);
    adopt_registry(env, vdoc);
    v = io::state_from_json(io::payload(vdoc, "state"), env.ctx());
  } else if (!cert_file.empty()) {
    throw ConfigError("--cert requires --fine-ext");
  }
  json j;
  j["format_version"] = io::kFormatVersion;
  try {
    validate(*u, env.reg);
    if (v) {
      validate(*v, env.reg);
      FineCert cert;
      if (!cert_file.empty()) {
        cert = io::cert_from_json(io::payload(read_json(env, cert_file), "fine_cert"));
        verify_fine_cert(*u, *v, cert);
      } else {
        cert = check_fine_ext(*u, *v);
      }
      j["fine_cert"] = io::to_json(cert);
    }
  } catch (const Rejected& r) {
    return rejected(env, r);
  }
  j["valid"] = true;
  j["nodes"] = u->node_count();
  j["depth"] = u->depth();
  env.out << j.dump(2) << "\n";
  return kOk;
}

int cmd_mt_check(Env& env, const std::string& file, const std::string& witness_file, const std::string& formula) {
  setup(env, default_signature());
  json doc = read_json(env, file);
  adopt_registry(env, doc);
  json state_json, witness_json;
  if (witness_file.empty()) {
    // A bundle holding both, such as translate output.
    if (!doc.is_object() || !doc.contains("state") || !doc.contains("witness"))
      throw io::FormatError("expected a witness file or a bundle with state and witness");
    state_json = doc["state"];
    witness_json = doc["witness"];
  } else {
    state_json = io::payload(doc, "state");
    json wdoc = read_json(env, witness_file);
    adopt_registry(env, wdoc);
    witness_json = io::payload(wdoc, "witness");
  }
  StatePtr u = io::state_from_json(state_json, env.ctx());
  MTWitness w = io::witness_from_json(witness_json, env.ctx());
  Formula phi = formula.empty() ? w.formula() : parse_formula(formula, env.sig, env.reg);
  try {
    validate(*u, env.reg);
    check_mt_witness(*u, phi, w, env.reg);
  } catch (const Rejected& r) {
    return rejected(env, r);
  }
  json j;
  j["format_version"] = io::kFormatVersion;
  j["valid"] = true;
  j["formula"] = to_string(phi);
  j["witness_size"] = witness_size(w);
  env.out << j.dump(2) << "\n";
  return kOk;
}

int cmd_translate(Env& env, const std::string& file) {
  setup(env, default_signature());
  json doc = read_json(env, file);
  adopt_registry(env, doc);
  const json& b = io::payload(doc, "bundle");
  Proof p = io::proof_from_json(b.at("proof"), env.ctx());
  std::vector<Formula> gamma;
  if (b.contains("gamma"))
    for (const auto& g : b["gamma"]) gamma.push_back(parse_formula(g.get<std::string>(), env.sig, env.reg));
  json j;
  j["format_version"] = io::kFormatVersion;
  try {
    if (!b.contains("state")) {
      Entailment e = entail(gamma, p, env.reg);
      j["formula"] = to_string(e.result.witness.formula());
      j["gamma"] = formulas(e.gamma);
      j["root"] = io::to_json(*e.root);
      j["state"] = io::to_json(*e.result.state);
      j["fine_cert"] = io::to_json(e.result.fine_cert);
      j["witness"] = io::to_json(e.result.witness);
    } else {
      StatePtr u = io::state_from_json(b["state"], env.ctx());
      WitnessMap wm;
      for (const auto& x : b.value("witnesses", json::array()))
        wm.emplace(parse_formula(x.at("formula").get<std::string>(), env.sig, env.reg),
                   io::witness_from_json(x.at("witness"), env.ctx()));
      TranslationResult r = translate(p, u, wm, env.reg);
      j["formula"] = to_string(r.witness.formula());
      j["root"] = io::to_json(*u);
      j["state"] = io::to_json(*r.state);
      j["fine_cert"] = io::to_json(r.fine_cert);
      j["witness"] = io::to_json(r.witness);
    }
  } catch (const Rejected& r) {
    return rejected(env, r);
  } catch (const TranslateError& e) {
    return rejected(env, Rejected(e.path(), e.reason()));
  }
  emit(env, std::move(j));
  return kOk;
}

int cmd_extract(Env& env, const std::string& file, const std::string& witness_file) {
  setup(env, default_signature());
  json doc = read_json(env, file);
  adopt_registry(env, doc);
  json state_json, witness_json;
  if (witness_file.empty()) {
    if (!doc.is_object() || !doc.contains("state") || !doc.contains("witness"))
      throw io::FormatError("expected a witness file or a bundle with state and witness");
    state_json = doc["state"];
    witness_json = doc["witness"];
  } else {
    state_json = io::payload(doc, "state");
    json wdoc = read_json(env, witness_file);
    adopt_registry(env, wdoc);
    witness_json = io::payload(wdoc, "witness");
  }
  StatePtr u = io::state_from_json(state_json, env.ctx());
  MTWitness w = io::witness_from_json(witness_json, env.ctx());
  Proof p;
  try {
    p = extract(*u, w, env.reg);
  } catch (const Rejected& r) {
    return rejected(env, r);
  }
  emit(env, io::document("proof", io::to_json(p)));
  return kOk;
}

int cmd_pa_prove(Env& env, const std::string& goal_text, int depth, const std::string& extra, bool efq, bool trace) {
  if (depth < 0) throw ConfigError("--depth must be non-negative");
  AxiomBase base = AxiomBase::relational_pa();
  setup(env, base.signature());
  for (const auto& c : env.constants) base.add_constant(c);
  if (!extra.empty()) {
    try {
      base.load_extras(slurp(env, extra));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(extra + ": " + e.what());
    }
  }
  Formula goal = parse_formula(goal_text, base.signature(), env.reg);
  SearchConfig cfg;
  cfg.depth = depth;
  cfg.allow_efq = efq;
  cfg.trace = trace;
  SearchResult r = prove(goal, base, cfg, env.reg);
  for (const auto& line : r.trace) env.err << line << "\n";
  json j;
  j["format_version"] = io::kFormatVersion;
  j["goal"] = to_string(goal);
  j["nodes"] = r.nodes;
  if (r.verdict == SearchResult::Verdict::Proved) {
    j["verdict"] = "proved";
    j["proof"] = io::to_json(*r.proof);
    emit(env, std::move(j));
    return kOk;
  }
  j["verdict"] = "exhausted";
  j["depth_limited"] = r.depth_limited;
  env.out << j.dump(2) << "\n";
  return kExhausted;
}

int cmd_frames_fuzz(Env& env, std::uint64_t seed, std::size_t count, int depth, int branch) {
  if (depth < 0 || branch < 0) throw ConfigError("--depth and --branch must be non-negative");
  GenParams params;
  params.seed = seed;
  params.max_depth = depth;
  params.max_branching = branch;
  WitnessRegistry reg;
  FuzzSummary s = fuzz_frames(seed, count, params, reg);
  env.out << s.line() << "\n";
  if (s.fail == 0) return kOk;
  for (const auto& f : s.failures) env.err << f << "\n";
  // Re-run the first failing trial to recover its triple.
  std::uint64_t bad = std::stoull(s.failures.front());
  TrialReport r = (bad - seed) % 2 == 0 ? frame_trial(bad, params, reg) : chain_trial(bad, params, reg);
  json j;
  j["format_version"] = io::kFormatVersion;
  j["seed"] = bad;
  j["failure"] = r.failure;
  j["u"] = r.u ? io::to_json(*r.u) : json();
  j["v"] = r.v ? io::to_json(*r.v) : json();
  j["w"] = r.w ? io::to_json(*r.w) : json();
  env.out << j.dump(2) << "\n";
  return kInvalid;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  Env env{in, out, err, {}, {}, {}, {}, {}};
  CLI::App app{"Non-hypothetical logic toolkit: proof checking, intentic states, truthmaking and PA search."};
  app.name("intentic");
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();
  app.add_option("--sig", env.sig_file, "Signature JSON file (relations, constants, open)");
  app.add_option("--const", env.constants, "Declare a base constant (repeatable)");
  app.add_option("--registry", env.registry_file, "Witness registry TSV file");

  std::function<int()> action;

  std::vector<std::string> parse_inputs;
  auto* parse = app.add_subcommand("parse", "Parse formulas and print them canonically (stdin when none given)");
  parse->add_option("formulas", parse_inputs, "Formula texts");
  parse->callback([&] { action = [&] { return cmd_parse(env, parse_inputs); }; });

  std::string check_file, logic = "classical";
  bool pa_axiomatic = false;
  auto* check = app.add_subcommand("check", "Check a proof file");
  check->add_option("proof", check_file, "Proof JSON file, - for stdin")->required();
  check->add_option("--logic", logic, "classical or nh")->check(CLI::IsMember({"classical", "nh"}));
  check->add_flag("--pa-axiomatic", pa_axiomatic, "Also require every open assumption to be a PA axiom");
  check->callback([&] { action = [&] { return cmd_check(env, check_file, logic, pa_axiomatic); }; });

  std::string state_file, ext_file, cert_file;
  auto* sc = app.add_subcommand("state-check", "Validate a state, optionally a fine extension of it");
  sc->add_option("state", state_file, "State JSON file")->required();
  sc->add_option("--fine-ext", ext_file, "State that should finely extend the first");
  sc->add_option("--cert", cert_file, "Fine-extension certificate to verify instead of searching");
  sc->callback([&] { action = [&] { return cmd_state_check(env, state_file, ext_file, cert_file); }; });

  std::string mt_state, mt_witness, mt_formula;
  auto* mt = app.add_subcommand("mt-check", "Check a truthmaking witness against a state");
  mt->add_option("state", mt_state, "State JSON file, or a bundle with state and witness")->required();
  mt->add_option("witness", mt_witness, "Witness JSON file");
  mt->add_option("--formula", mt_formula, "Formula the witness must establish");
  mt->callback([&] { action = [&] { return cmd_mt_check(env, mt_state, mt_witness, mt_formula); }; });

  std::string tr_file;
  auto* tr = app.add_subcommand("translate", "Translate a classical proof into a state and witness");
  tr->add_option("bundle", tr_file, "JSON with proof, gamma and optionally state and witnesses")->required();
  tr->callback([&] { action = [&] { return cmd_translate(env, tr_file); }; });

  std::string ex_state, ex_witness;
  auto* ex = app.add_subcommand("extract", "Extract a classical proof from a state and witness");
  ex->add_option("state", ex_state, "State JSON file, or translate output")->required();
  ex->add_option("witness", ex_witness, "Witness JSON file");
  ex->callback([&] { action = [&] { return cmd_extract(env, ex_state, ex_witness); }; });

  auto* pa = app.add_subcommand("pa", "Relational PA");
  pa->require_subcommand(1);
  std::string goal, extra;
  int depth = 12;
  bool efq = false, trace = false;
  auto* prove_cmd = pa->add_subcommand("prove", "Search for a non-hypothetical proof");
  prove_cmd->add_option("goal", goal, "Goal formula")->required();
  prove_cmd->add_option("--depth", depth, "Depth bound");
  prove_cmd->add_option("--extra", extra, "Extra axioms file");
  prove_cmd->add_flag("--efq", efq, "Allow ex falso");
  prove_cmd->add_flag("--trace", trace, "Trace search nodes on stderr");
  prove_cmd->callback([&] { action = [&] { return cmd_pa_prove(env, goal, depth, extra, efq, trace); }; });

  auto* frames = app.add_subcommand("frames", "Frame-theorem fuzzing");
  frames->require_subcommand(1);
  std::uint64_t seed = 0;
  std::size_t count = 100;
  int fdepth = 3, branch = 3;
  auto* fuzz = frames->add_subcommand("fuzz", "Run seeded frame and chain trials");
  fuzz->add_option("--seed", seed, "First seed")->required();
  fuzz->add_option("--count", count, "Number of trials")->required();
  fuzz->add_option("--depth", fdepth, "Maximum state depth");
  fuzz->add_option("--branch", branch, "Maximum branching");
  fuzz->callback([&] { action = [&] { return cmd_frames_fuzz(env, seed, count, fdepth, branch); }; });

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kConfigError;
  }

  try {
    return action();
  } catch (const ParseError& e) {
    err << e.what() << "\n";
    return kParseError;
  } catch (const io::FormatError& e) {
    err << "format error: " << e.what() << "\n";
    return kParseError;
  } catch (const json::exception& e) {
    err << "format error: " << e.what() << "\n";
    return kParseError;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const Rejected& r) {
    return rejected(env, r);
  }
}

}  // namespace intentic::cli
