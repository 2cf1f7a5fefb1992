#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "intentic/cli.hpp"
#include "intentic/frames.hpp"
#include "intentic/io.hpp"
#include "intentic/pasearch.hpp"
#include "intentic/transform.hpp"

namespace py = pybind11;
using namespace intentic;

namespace {

Signature open_signature(const std::vector<std::string>& constants) {
  Signature sig;
  sig.set_open(true);
  sig.add_constant("0");
  for (const auto& c : constants)
    if (!sig.has_constant(c)) sig.add_constant(c);
  return sig;
}

Logic logic_of(const std::string& name) {
  if (name == "classical") return Logic::Classical;
  if (name == "nh") return Logic::NonHypothetical;
  throw std::invalid_argument("logic must be classical or nh");
}

std::vector<std::string> strings(const std::vector<Formula>& fs) {
  std::vector<std::string> out;
  for (const auto& f : fs) out.push_back(to_string(f));
  return out;
}

py::tuple run(const std::vector<std::string>& args, const std::string& input) {
  std::istringstream in(input);
  std::ostringstream out, err;
  int code = cli::run(args, in, out, err);
  return py::make_tuple(code, out.str(), err.str());
}

std::string parse(const std::string& text, const std::vector<std::string>& constants) {
  Signature sig = open_signature(constants);
  WitnessRegistry reg;
  return to_string(parse_formula(text, sig, reg));
}

py::dict check(const std::string& proof_json, const std::string& logic, const std::vector<std::string>& constants) {
  Signature sig = open_signature(constants);
  WitnessRegistry reg;
  io::Context ctx{sig, reg};
  Proof p = io::proof_from_json(io::payload(io::json::parse(proof_json), "proof"), ctx);
  Judgment j = check_proof(p, logic_of(logic), reg);
  py::dict d;
  d["conclusion"] = to_string(j.conclusion);
  d["open_assumptions"] = strings(j.open_assumptions);
  return d;
}

// Translate then extract; returns the JSON of state, witness and extracted proof.
std::string entail_json(const std::vector<std::string>& gamma, const std::string& proof_json,
                        const std::vector<std::string>& constants) {
  Signature sig = open_signature(constants);
  WitnessRegistry reg;
  io::Context ctx{sig, reg};
  Proof p = io::proof_from_json(io::payload(io::json::parse(proof_json), "proof"), ctx);
  std::vector<Formula> g;
  for (const auto& t : gamma) g.push_back(parse_formula(t, sig, reg));
  Entailment e = entail(g, p, reg);
  io::json j;
  j["format_version"] = io::kFormatVersion;
  j["state"] = io::to_json(*e.result.state);
  j["fine_cert"] = io::to_json(e.result.fine_cert);
  j["witness"] = io::to_json(e.result.witness);
  j["extracted"] = io::to_json(extract(*e.result.state, e.result.witness, reg));
  if (reg.size() > 0) j["registry"] = reg.to_tsv();
  return j.dump();
}

py::dict pa_prove(const std::string& goal, int depth, bool efq, const std::vector<std::string>& extras) {
  AxiomBase base = AxiomBase::relational_pa();
  for (const auto& line : extras) base.load_extras(line);
  WitnessRegistry reg;
  SearchConfig cfg;
  cfg.depth = depth;
  cfg.allow_efq = efq;
  SearchResult r = prove(parse_formula(goal, base.signature(), reg), base, cfg, reg);
  py::dict d;
  d["proved"] = r.verdict == SearchResult::Verdict::Proved;
  d["nodes"] = r.nodes;
  d["proof"] = r.proof ? py::object(py::str(io::document("proof", io::to_json(*r.proof)).dump())) : py::object(py::none());
  return d;
}

py::dict frames_fuzz(std::uint64_t seed, std::size_t count, int depth, int branch) {
  GenParams params;
  params.max_depth = depth;
  params.max_branching = branch;
  WitnessRegistry reg;
  FuzzSummary s = fuzz_frames(seed, count, params, reg);
  py::dict d;
  d["trials"] = s.trials;
  d["pass"] = s.pass;
  d["fail"] = s.fail;
  d["failures"] = s.failures;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Intentic truthmaking toolkit";

  static py::exception<Rejected> rejected(m, "Rejected");
  static py::exception<ParseError> parse_error(m, "ParseError", PyExc_ValueError);
  static py::exception<TranslateError> translate_error(m, "TranslateError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Rejected& e) {
      py::set_error(rejected, e.what());
    } catch (const ParseError& e) {
      py::set_error(parse_error, e.what());
    } catch (const TranslateError& e) {
      py::set_error(translate_error, e.what());
    } catch (const io::FormatError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  m.def("run", &run, py::arg("args"), py::arg("stdin") = "", "Run the command-line front end; returns (code, stdout, stderr).");
  m.def("parse", &parse, py::arg("text"), py::arg("constants") = std::vector<std::string>{},
        "Parse a formula and print it canonically.");
  m.def("check", &check, py::arg("proof_json"), py::arg("logic") = "classical",
        py::arg("constants") = std::vector<std::string>{}, "Kernel-check a proof; returns its judgment.");
  m.def("entail", &entail_json, py::arg("gamma"), py::arg("proof_json"), py::arg("constants") = std::vector<std::string>{},
        "Translate a classical proof into a state and witness, and extract a proof back.");
  m.def("pa_prove", &pa_prove, py::arg("goal"), py::arg("depth") = 12, py::arg("efq") = false,
        py::arg("extras") = std::vector<std::string>{}, "Bounded non-hypothetical proof search over relational PA.");
  m.def("frames_fuzz", &frames_fuzz, py::arg("seed"), py::arg("count"), py::arg("depth") = 3, py::arg("branch") = 3,
        "Run seeded frame and chain trials.");
}
