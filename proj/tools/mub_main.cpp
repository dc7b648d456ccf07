// Command-line front end: constructions, verification, classification,
// subset extraction, grouping checks, equivalence tests, entanglement
// audits, numerical searches, and the product-set bound.
//
// Exit codes: 0 = pass/success, 1 = a checked property fails, 2 = usage or
// file error. Reports go to stdout, diagnostics to stderr.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "mub/constructions.hpp"
#include "mub/entanglement.hpp"
#include "mub/equivalence.hpp"
#include "mub/io.hpp"
#include "mub/mucheck.hpp"
#include "mub/search.hpp"
#include "mub/structure.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace mub;

struct CommonOptions {
  double tol = kDefaultTol;
  std::uint64_t seed = 0;
  int restarts = 200;
  std::string format = "text";
  bool normalize = false;
};

void add_common(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_option("--tol", opt.tol, "tolerance for pass/fail predicates");
  cmd->add_option("--seed", opt.seed, "seed for randomized procedures");
  cmd->add_option("--restarts", opt.restarts, "restart budget for searches");
  cmd->add_option("--format", opt.format, "report format: text|structured")
      ->check(CLI::IsMember({"text", "structured"}));
  cmd->add_flag("--normalize", opt.normalize,
                "renormalize input factors instead of rejecting them");
}

json report_header(const std::string& command, const CommonOptions& opt) {
  json doc;
  doc["tool"] = kToolName;
  doc["version"] = kToolVersion;
  doc["command"] = command;
  doc["tolerance"] = opt.tol;
  doc["seed"] = opt.seed;
  return doc;
}

void print_header(const std::string& command, const CommonOptions& opt) {
  // structured output must stay a single JSON document
  if (opt.format == "text")
    std::cout << kToolName << " " << kToolVersion << " | " << command
              << " | tol=" << opt.tol << " seed=" << opt.seed << "\n";
}

void emit(const json& doc, const CommonOptions& opt,
          const std::string& text_body) {
  if (opt.format == "structured")
    std::cout << doc.dump(2) << "\n";
  else
    std::cout << text_body;
}

DimensionSignature parse_signature(const std::string& text) {
  std::vector<int> dims;
  std::string cur;
  for (char c : text + ",") {
    if (c == ',') {
      if (cur.empty()) throw std::invalid_argument("empty entry in signature");
      dims.push_back(std::stoi(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  return DimensionSignature(dims);
}

MubSet construct_family(const std::string& family, int n,
                        const std::string& signature) {
  if (family == "qubit-triple") return canonical_qubit_triple(n);
  if (family == "qutrit-quadruple") return canonical_qutrit_quadruple(n);
  if (family == "pauli-triple") return as_unipartite_set(pauli_triple(), "pauli triple");
  if (family == "weyl-d3")
    return as_unipartite_set(weyl_quadruple_d3(), "weyl quadruple d=3");
  if (family == "d5-complete")
    return as_unipartite_set(complete_set_prime(5), "complete MU set d=5");
  if (family == "two-five-direct") return two_five_triple_direct();
  if (family == "two-five-indirect") return two_five_triple_indirect();
  if (family == "two-three-direct") return direct_triple_2x3();
  if (family == "indirect-d4") {
    MubSet s;
    s.sig = DimensionSignature({2, 2});
    s.bases = {indirect_d4_basis()};
    s.provenance = "indirect product basis in 2x2";
    return s;
  }
  if (family == "domino") {
    MubSet s;
    s.sig = DimensionSignature({3, 3});
    s.bases = {domino_basis_3x3()};
    s.provenance = "domino basis in 3x3";
    return s;
  }
  if (family == "standard") {
    const DimensionSignature sig = parse_signature(signature);
    MubSet s;
    s.sig = sig;
    s.bases = {standard_product_basis(sig)};
    s.provenance = "standard basis " + sig.to_string();
    return s;
  }
  throw std::invalid_argument("unknown family: " + family);
}

int run_construct(const std::string& family, int n, const std::string& signature,
                  const std::string& out_path, const CommonOptions& opt) {
  MubSet s = construct_family(family, n, signature);
  s.tol = opt.tol;
  s.seed = opt.seed;
  if (s.provenance.empty()) s.provenance = "construct --family " + family;

  double worst = 0.0;
  for (int a = 0; a < s.size(); ++a)
    for (int b = a + 1; b < s.size(); ++b)
      worst = std::max(worst,
                       are_bases_mu(s.bases[static_cast<std::size_t>(a)],
                                    s.bases[static_cast<std::size_t>(b)], opt.tol)
                           .max_deviation);
  save_mubset(s, out_path);

  json doc = report_header("construct", opt);
  doc["family"] = family;
  doc["signature"] = s.sig.dims;
  doc["bases"] = s.size();
  doc["max_mu_deviation"] = worst;
  doc["out"] = out_path;
  std::string text;
  {
    std::ostringstream os;
    os << "wrote " << out_path << ": " << s.size() << " bases, signature "
       << s.sig.to_string() << ", max MU deviation " << worst << "\n";
    text = os.str();
  }
  print_header("construct", opt);
  emit(doc, opt, text);
  return 0;
}

int run_verify(const std::string& path, const CommonOptions& opt) {
  const MubSet s = load_mubset(path, {.normalize = opt.normalize});
  print_header("verify", opt);

  bool pass = true;
  double worst_orth = 0.0, worst_mu = 0.0;
  std::ostringstream os;
  for (int b = 0; b < s.size(); ++b) {
    std::vector<Ket> flat;
    for (const ProductKet& v : s.bases[static_cast<std::size_t>(b)].vectors)
      flat.push_back(flatten(v));
    const ValidationReport rep = validate_orthonormal(flat, opt.tol);
    worst_orth = std::max(worst_orth, rep.max_deviation);
    os << "basis " << b << ": orthonormality deviation " << rep.max_deviation
       << (rep.pass ? " (ok)" : " (FAIL)") << "\n";
    pass = pass && rep.pass;
  }
  std::pair<int, int> worst_pair{-1, -1};
  for (int a = 0; a < s.size(); ++a)
    for (int b = a + 1; b < s.size(); ++b) {
      const MuReport rep = are_bases_mu(s.bases[static_cast<std::size_t>(a)],
                                        s.bases[static_cast<std::size_t>(b)], opt.tol);
      if (rep.max_deviation > worst_mu) {
        worst_mu = rep.max_deviation;
        worst_pair = {a, b};
      }
      os << "bases " << a << "," << b << ": MU deviation " << rep.max_deviation
         << (rep.pass ? " (ok)" : " (FAIL)") << "\n";
      pass = pass && rep.pass;
    }
  os << (pass ? "PASS" : "FAIL") << ": max orthonormality deviation "
     << worst_orth << ", max MU deviation " << worst_mu;
  if (worst_pair.first >= 0)
    os << " (worst pair " << worst_pair.first << "," << worst_pair.second << ")";
  os << "\n";

  json doc = report_header("verify", opt);
  doc["file"] = path;
  doc["pass"] = pass;
  doc["max_orthonormality_deviation"] = worst_orth;
  doc["max_mu_deviation"] = worst_mu;
  emit(doc, opt, os.str());
  return pass ? 0 : 1;
}

int run_classify(const std::string& path, const CommonOptions& opt) {
  const MubSet s = load_mubset(path, {.normalize = opt.normalize});
  print_header("classify", opt);
  json doc = report_header("classify", opt);
  json entries = json::array();
  std::ostringstream os;
  for (int b = 0; b < s.size(); ++b) {
    const BasisClass cls = classify(s.bases[static_cast<std::size_t>(b)], opt.tol);
    os << "basis " << b << ": "
       << (cls.kind == BasisKind::Direct ? "direct" : "indirect") << " (";
    for (std::size_t r = 0; r < cls.per_subsystem_basis_count.size(); ++r)
      os << (r ? "," : "") << cls.per_subsystem_basis_count[r];
    os << " bases per subsystem)\n";
    json e;
    e["basis"] = b;
    e["kind"] = cls.kind == BasisKind::Direct ? "direct" : "indirect";
    e["per_subsystem_basis_count"] = cls.per_subsystem_basis_count;
    entries.push_back(std::move(e));
  }
  doc["bases"] = std::move(entries);
  emit(doc, opt, os.str());
  return 0;
}

int run_extract(const std::string& path, int subsystem, int anchor,
                const CommonOptions& opt) {
  const MubSet s = load_mubset(path, {.normalize = opt.normalize});
  print_header("extract-ortho", opt);
  json doc = report_header("extract-ortho", opt);
  json results = json::array();
  std::ostringstream os;
  bool ok = true;
  for (int b = 0; b < s.size(); ++b) {
    const ProductBasis& basis = s.bases[static_cast<std::size_t>(b)];
    for (int r = 0; r < basis.sig.n(); ++r) {
      const int dr = basis.sig.dims[static_cast<std::size_t>(r)];
      if (subsystem >= 0 && r != subsystem) continue;
      if (dr != 2 && dr != 3) continue;
      for (int kappa = 0; kappa < basis.dim(); ++kappa) {
        if (anchor >= 0 && kappa != anchor) continue;
        try {
          const OrthoSubset sub = extract_ortho_subset(basis, r, kappa, opt.tol);
          os << "basis " << b << " subsystem " << r << " anchor " << kappa
             << ": indices";
          for (int i : sub.indices) os << " " << i;
          os << "\n";
          json e;
          e["basis"] = b;
          e["subsystem"] = r;
          e["anchor"] = kappa;
          e["indices"] = sub.indices;
          results.push_back(std::move(e));
        } catch (const StructuralViolation& e) {
          os << "basis " << b << " subsystem " << r << " anchor " << kappa
             << ": FAILED (" << e.what() << ")\n";
          ok = false;
        }
      }
    }
  }
  doc["extractions"] = std::move(results);
  doc["pass"] = ok;
  emit(doc, opt, os.str());
  return ok ? 0 : 1;
}

int run_group(const std::string& path, const std::string& witness_out,
              const CommonOptions& opt) {
  const MubSet s = load_mubset(path, {.normalize = opt.normalize});
  if (s.sig.n() != 2) {
    std::cerr << "group: bipartite signature required, got "
              << s.sig.to_string() << "\n";
    return 2;
  }
  print_header("group", opt);
  json doc = report_header("group", opt);
  json entries = json::array();
  std::ostringstream os;
  bool pass = true;
  for (int b = 0; b < s.size(); ++b) {
    const GroupingResult res =
        conjecture2_grouping(s.bases[static_cast<std::size_t>(b)], opt.tol);
    os << "basis " << b << ": "
       << (res.pass ? "grouping found" : "NO GROUPING (counterexample)") << "\n";
    if (res.pass) {
      os << "  first factors:";
      for (const auto& g : res.groups_first) {
        os << " {";
        for (std::size_t i = 0; i < g.size(); ++i) os << (i ? "," : "") << g[i];
        os << "}";
      }
      os << "\n  second factors:";
      for (const auto& g : res.groups_second) {
        os << " {";
        for (std::size_t i = 0; i < g.size(); ++i) os << (i ? "," : "") << g[i];
        os << "}";
      }
      os << "\n";
    }
    json e;
    e["basis"] = b;
    e["pass"] = res.pass;
    e["groups_first"] = res.groups_first;
    e["groups_second"] = res.groups_second;
    entries.push_back(std::move(e));
    if (!res.pass) {
      pass = false;
      MubSet witness;
      witness.sig = s.sig;
      witness.bases = {s.bases[static_cast<std::size_t>(b)]};
      witness.provenance = "grouping counterexample from " + path;
      save_mubset(witness, witness_out);
      os << "  counterexample persisted to " << witness_out << "\n";
    }
  }
  doc["bases"] = std::move(entries);
  doc["pass"] = pass;
  emit(doc, opt, os.str());
  return pass ? 0 : 1;
}

int run_equiv(const std::string& path_a, const std::string& path_b, long budget,
              const std::string& witness_out, const CommonOptions& opt) {
  const MubSet a = load_mubset(path_a, {.normalize = opt.normalize});
  const MubSet b = load_mubset(path_b, {.normalize = opt.normalize});
  print_header("equiv", opt);
  const Verdict v = equivalent(a, b, {.max_trials = budget, .seed = opt.seed});

  json doc = report_header("equiv", opt);
  doc["trials"] = v.trials_used;
  std::ostringstream os;
  switch (v.kind) {
    case VerdictKind::Equivalent: {
      doc["verdict"] = "equivalent";
      os << "EQUIVALENT (witness with " << v.witness.size() << " moves, "
         << v.trials_used << " trials)\n";
      if (!witness_out.empty()) {
        std::ofstream out(witness_out);
        out << moves_to_json_text(v.witness);
        os << "witness written to " << witness_out << "\n";
      }
      break;
    }
    case VerdictKind::Inequivalent:
      doc["verdict"] = "inequivalent";
      doc["separating_invariant"] = v.separating_invariant;
      os << "INEQUIVALENT: " << v.separating_invariant << "\n";
      break;
    case VerdictKind::Unknown:
      doc["verdict"] = "unknown";
      os << "UNKNOWN after " << v.trials_used << " trials\n";
      break;
  }
  emit(doc, opt, os.str());
  return v.kind == VerdictKind::Equivalent ? 0 : 1;
}

int run_entangle(const std::string& path, const CommonOptions& opt) {
  const MubSet s = load_mubset(path, {.normalize = opt.normalize});
  print_header("entangle", opt);
  const MuVectorSearchResult res =
      find_mu_vectors(s, opt.restarts, opt.tol, opt.seed);

  json doc = report_header("entangle", opt);
  doc["restarts"] = res.restarts;
  doc["found"] = static_cast<int>(res.vectors.size());
  doc["best_residual"] = res.best_residual;
  std::ostringstream os;
  os << "found " << res.vectors.size() << " MU vector(s), best residual "
     << res.best_residual << " over " << res.restarts << " restarts\n";

  bool pass = true;
  json audits = json::array();
  for (std::size_t i = 0; i < res.vectors.size(); ++i) {
    const auto per_cut = audit_mu_vector(res.vectors[i], s, opt.tol);
    for (const EntanglementAudit& audit : per_cut) {
      os << "vector " << i << " subsystem " << audit.subsystem
         << ": ||rho - I/d||_F = " << audit.mixedness_deviation
         << (audit.hypothesis_ok ? "" : " (hypothesis unchecked)") << "\n";
      json ja;
      ja["vector"] = i;
      ja["subsystem"] = audit.subsystem;
      ja["mixedness_deviation"] = audit.mixedness_deviation;
      ja["hypothesis_ok"] = audit.hypothesis_ok;
      audits.push_back(std::move(ja));
      if (audit.hypothesis_ok && !audit.maximally_mixed) pass = false;
    }
  }
  doc["audits"] = std::move(audits);
  doc["pass"] = pass;
  emit(doc, opt, os.str());
  return pass ? 0 : 1;
}

int run_search(const std::string& mode, const std::string& in_path,
               const std::string& signature, const std::string& out_path,
               const CommonOptions& opt) {
  print_header("search", opt);
  SearchReport report;
  if (mode == "extend") {
    if (in_path.empty()) {
      std::cerr << "search: --in required for --mode extend\n";
      return 2;
    }
    const MubSet s = load_mubset(in_path, {.normalize = opt.normalize});
    report = extend_set(s, opt.restarts, opt.tol, opt.seed);
  } else if (mode == "conjecture1") {
    if (signature.empty()) {
      std::cerr << "search: --signature required for --mode conjecture1\n";
      return 2;
    }
    report = conjecture1_probe(parse_signature(signature), opt.restarts, opt.tol,
                               opt.seed);
  } else {
    std::cerr << "search: unknown mode " << mode << "\n";
    return 2;
  }

  json doc = report_header("search", opt);
  doc["target"] = report.target;
  doc["signature"] = report.signature.dims;
  doc["restarts"] = report.restarts;
  doc["best_objective"] = report.best_objective;
  doc["best_residual"] = report.best_residual;
  doc["found"] = static_cast<int>(report.found.size());
  doc["conjecture_violation"] = report.conjecture_violation;
  doc["wall_time_s"] = report.wall_time_s;
  std::ostringstream os;
  os << report.target << " on " << report.signature.to_string() << ": "
     << report.found.size() << " set(s) found, best objective "
     << report.best_objective << " (residual " << report.best_residual
     << ") in " << report.wall_time_s << " s\n";
  if (report.conjecture_violation)
    os << "CONJECTURE-VIOLATION: witness data persisted\n";

  for (std::size_t i = 0; i < report.found.size(); ++i) {
    const std::string path =
        out_path.empty()
            ? ("search-found-" + std::to_string(i) + ".mub.json")
            : (report.found.size() == 1
                   ? out_path
                   : out_path + "." + std::to_string(i));
    save_mubset(report.found[i], path);
    os << "found set written to " << path << "\n";
  }
  emit(doc, opt, os.str());
  return 0;
}

int run_bound(const std::string& signature, const CommonOptions& opt) {
  const DimensionSignature sig = parse_signature(signature);
  const BoundResult res = mu_product_bound(sig);
  print_header("bound", opt);
  json doc = report_header("bound", opt);
  doc["signature"] = sig.dims;
  doc["bound"] = res.bound;
  doc["status"] = res.status == BoundStatus::Proven ? "proven" : "conjectured";
  doc["assumed_mu_basis_counts"] = res.assumed_counts;
  doc["counts_exact"] = res.count_exact;
  doc["limiting_subsystem"] = res.limiting_subsystem;
  std::ostringstream os;
  os << "at most " << res.bound << " MU product bases ("
     << (res.status == BoundStatus::Proven ? "Proven" : "Conjectured")
     << "); assumed N(d_r) =";
  for (std::size_t r = 0; r < res.assumed_counts.size(); ++r)
    os << " " << res.assumed_counts[r]
       << (res.count_exact[r] ? "" : "(lower bound)");
  os << "\n";
  emit(doc, opt, os.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mutually unbiased product bases: construct, verify, classify, search"};
  app.require_subcommand(1);

  CommonOptions opt;

  // construct
  auto* construct = app.add_subcommand("construct", "build a canonical basis set");
  std::string family, signature, out_path = "out.mub.json";
  int n = 1;
  construct->add_option("--family", family, "construction family")->required();
  construct->add_option("--n", n, "number of subsystems for tensor-power families");
  construct->add_option("--signature", signature, "signature for --family standard");
  construct->add_option("--out", out_path, "output file");
  add_common(construct, opt);

  // verify
  auto* verify = app.add_subcommand("verify", "check orthonormality and pairwise MU");
  std::string verify_path;
  verify->add_option("file", verify_path, "basis-set file")->required();
  add_common(verify, opt);

  // classify
  auto* classify_cmd = app.add_subcommand("classify", "direct/indirect structure");
  std::string classify_path;
  classify_cmd->add_option("file", classify_path, "basis-set file")->required();
  add_common(classify_cmd, opt);

  // extract-ortho
  auto* extract = app.add_subcommand("extract-ortho",
                                     "orthonormal factor subsets per anchor");
  std::string extract_path;
  int subsystem = -1, anchor = -1;
  extract->add_option("file", extract_path, "basis-set file")->required();
  extract->add_option("--subsystem", subsystem, "restrict to one subsystem");
  extract->add_option("--anchor", anchor, "restrict to one anchor index");
  add_common(extract, opt);

  // group
  auto* group = app.add_subcommand("group", "bipartite factor grouping check");
  std::string group_path, witness_out = "conjecture2_counterexample.mub.json";
  group->add_option("file", group_path, "basis-set file")->required();
  group->add_option("--witness-out", witness_out, "counterexample output path");
  add_common(group, opt);

  // equiv
  auto* equiv = app.add_subcommand("equiv", "equivalence of two basis-set files");
  std::string equiv_a, equiv_b, equiv_witness;
  long budget = 200000;
  equiv->add_option("fileA", equiv_a, "first basis-set file")->required();
  equiv->add_option("fileB", equiv_b, "second basis-set file")->required();
  equiv->add_option("--budget", budget, "alignment trial budget");
  equiv->add_option("--witness-out", equiv_witness, "write the witness move list");
  add_common(equiv, opt);

  // entangle
  auto* entangle = app.add_subcommand("entangle",
                                      "search MU vectors and audit entanglement");
  std::string entangle_path;
  entangle->add_option("file", entangle_path, "basis-set file")->required();
  add_common(entangle, opt);

  // search
  auto* search = app.add_subcommand("search", "numerical extension experiments");
  std::string mode = "extend", search_in, search_sig, search_out;
  search->add_option("--mode", mode, "extend|conjecture1");
  search->add_option("--in", search_in, "input set for --mode extend");
  search->add_option("--signature", search_sig, "signature for --mode conjecture1");
  search->add_option("--out", search_out, "output path for found sets");
  add_common(search, opt);

  // bound
  auto* bound = app.add_subcommand("bound", "product-set bound for a signature");
  std::string bound_sig;
  bound->add_option("--signature", bound_sig, "comma-separated dimensions")->required();
  add_common(bound, opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (construct->parsed()) return run_construct(family, n, signature, out_path, opt);
    if (verify->parsed()) return run_verify(verify_path, opt);
    if (classify_cmd->parsed()) return run_classify(classify_path, opt);
    if (extract->parsed()) return run_extract(extract_path, subsystem, anchor, opt);
    if (group->parsed()) return run_group(group_path, witness_out, opt);
    if (equiv->parsed()) return run_equiv(equiv_a, equiv_b, budget, equiv_witness, opt);
    if (entangle->parsed()) return run_entangle(entangle_path, opt);
    if (search->parsed()) return run_search(mode, search_in, search_sig, search_out, opt);
    if (bound->parsed()) return run_bound(bound_sig, opt);
  } catch (const FileFormatError& e) {
    std::cerr << "file error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const StructuralViolation& e) {
    std::cerr << "structural violation: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
