// Command-line front end: laurentia <command> <input.toml> [--window N] [--field P] [--class C] [--json PATH]
#include "laurentia/input.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>

using namespace laurentia;
using json = nlohmann::ordered_json;

namespace {

struct Options {
  std::string path;
  std::optional<int> window;
  std::optional<int> field;
  std::optional<std::string> cls;
  std::string json_path;
};

/// Exit status 2: input or precondition problems.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json horizon_json(int h) { return is_unbounded(h) ? json(nullptr) : json(h); }

json matrix_json(const std::vector<std::vector<LaurentPoly>>& m) {
  json out = json::array();
  for (const auto& row : m) {
    json r = json::array();
    for (const auto& p : row) r.push_back(p.str());
    out.push_back(r);
  }
  return out;
}

json empty_report(const std::string& command, const Problem& p, const Built& b) {
  json j;
  j["command"] = command;
  j["verdict"] = "";
  j["horizon"] = nullptr;
  j["labels"] = b.order.labels();
  j["class"] = p.cls;
  j["per_pi"] = json::object();
  j["decomposition"] = json::array();
  j["p_delta"] = json::array();
  j["bgg"] = nullptr;
  j["chain"] = json::array();
  j["details"] = json::object();
  j["witnesses"] = json::array();
  return j;
}

void fill_per_pi(json& j, const Stratification& s, const std::string& cls) {
  for (int pi = 0; pi < s.size(); ++pi) {
    const StandardData& d = s.at(pi);
    ClassReport cr = class_membership(d.B, cls);
    j["per_pi"][s.order().label(pi)] = {{"dim_q_delta", d.delta.dim_q().str()},
                                        {"dim_q_bar_delta", d.bar_delta.dim_q().str()},
                                        {"dim_q_B", d.B.dim_q().str()},
                                        {"class", cr.verdict.pass ? "pass" : "fail: " + cr.verdict.witness}};
  }
}

json chain_json(const HeredityChain& c) {
  json out = json::array();
  for (const auto& l : c.layers) {
    auto v = [](const Verdict& x) { return x.pass ? std::string("pass") : "fail: " + x.witness; };
    out.push_back({{"label", l.label},
                   {"dim_q_J", l.dim_J.str()},
                   {"multiplicity", l.multiplicity.str()},
                   {"order", v(l.order)},
                   {"SI1", v(l.si1)},
                   {"SI2", v(l.si2)},
                   {"idempotent", v(l.idempotent)},
                   {"class", v(l.cls)},
                   {"freeness", v(l.freeness)}});
  }
  return out;
}

std::pair<json, bool> run(const std::string& command, const Problem& p) {
  Built b = build(p);
  json j = empty_report(command, p, b);
  const std::string& cls = p.cls;
  bool pass = true;
  auto horizon = [&](int h) { j["horizon"] = horizon_json(h); };

  if (command == "inspect") {
    const GradedAlgebra& A = *b.algebra;
    RadicalReport rr = check_radical(A);
    j["verdict"] = "algebra verified within the window";
    horizon(A.complete_to());
    auto& d = j["details"];
    d["mode"] = A.mode();
    d["field"] = A.field().characteristic();
    d["window"] = {A.w_lo(), A.w_hi()};
    d["dim_q_H"] = dim_q(A).str();
    d["classes"] = A.classes();
    d["cartan"] = matrix_json(peirce_dims(A));
    json simples = json::object();
    for (size_t c = 0; c < A.classes().size(); ++c) simples[A.classes()[c]] = rr.simple_dims[c].str();
    d["dim_q_L"] = simples;
    d["radical_min_degrees"] = rr.power_min_degrees;
    return {j, pass};
  }

  if (command == "chain") {
    HeredityChain c = heredity_chain(b.algebra, b.order, cls);
    j["chain"] = chain_json(c);
    int h = kUnbounded;
    for (const auto& l : c.layers) h = std::min(h, l.complete);
    horizon(h);
    pass = c.pass;
    j["verdict"] = c.pass ? "heredity chain verified (" + std::to_string(c.layers.size()) + " layers)" : "heredity chain fails";
    if (!c.pass) j["witnesses"].push_back(c.witness);
    json ext = json::array();
    for (int k : c.extension) ext.push_back(b.order.label(k));
    j["details"]["linear_extension"] = ext;
    return {j, pass};
  }

  if (command == "cellularize") {
    if (!b.tau) throw UsageError("cellularize needs an [involution] section");
    HeredityChain c = heredity_chain(b.algebra, b.order, cls);
    j["chain"] = chain_json(c);
    if (!c.pass) {
      j["verdict"] = "heredity chain fails";
      j["witnesses"].push_back(c.witness);
      return {j, false};
    }
    CellReport cr;
    try {
      cr = cellularize(c, b.order, *b.tau);
    } catch (const CellError& e) {
      throw UsageError(e.what());
    }
    json layers = json::array();
    int h = kUnbounded;
    for (const auto& l : cr.layers) {
      h = std::min(h, l.reconcile.horizon);
      layers.push_back({{"label", l.label},
                        {"dim_q_V", l.dim_V.str()},
                        {"dim_q_B", l.dim_B.str()},
                        {"rank_q_He", l.rank_left.str()},
                        {"rank_q_eH", l.rank_right.str()},
                        {"dim_q_J", l.dim_J.str()},
                        {"reconcile", l.reconcile.pass},
                        {"tau_invariant", l.tau_invariant.pass}});
    }
    j["details"]["cells"] = layers;
    horizon(h);
    pass = cr.pass;
    j["verdict"] = pass ? "cell structure verified (" + std::to_string(cr.layers.size()) + " layers)" : "cell structure fails";
    if (!pass) j["witnesses"].push_back(cr.witness);
    return {j, pass};
  }

  Stratification s(b.algebra, b.order);
  fill_per_pi(j, s, cls);
  const OrderSpec& order = s.order();

  if (command == "standardize") {
    json tables = json::object();
    int h = kUnbounded;
    for (int pi = 0; pi < s.size(); ++pi) {
      const StandardData& d = s.at(pi);
      h = std::min(h, d.delta.complete_to());
      json delta = json::object(), bar = json::object();
      for (int sg = 0; sg < s.size(); ++sg) {
        delta[order.label(sg)] = graded_multiplicity(d.delta, sg).str();
        bar[order.label(sg)] = graded_multiplicity(d.bar_delta, sg).str();
      }
      ClassReport poly = class_membership(d.B, "polynomial");
      json bdeg = json::array();
      for (int t : d.B.degrees) bdeg.push_back(t);
      tables[order.label(pi)] = {{"delta_factors", delta},
                                 {"bar_delta_factors", bar},
                                 {"bar_delta_finite", d.bar_finite},
                                 {"B_degrees", bdeg},
                                 {"B_connected", d.B.connected},
                                 {"B_polynomial_generators", poly.verdict.pass ? json(poly.generator_degrees) : json(nullptr)}};
    }
    j["details"]["standard"] = tables;
    j["decomposition"] = matrix_json(check_axioms(s, "any").decomposition);
    horizon(h);
    j["verdict"] = "standard modules computed";
    return {j, pass};
  }

  if (command == "check") {
    StratReport r = check_axioms(s, cls);
    j["verdict"] = r.verdict;
    horizon(r.horizon);
    j["decomposition"] = matrix_json(r.decomposition);
    j["p_delta"] = matrix_json(r.p_delta);
    for (const auto& w : r.witnesses) j["witnesses"].push_back(w);
    json ranks = json::object();
    for (int pi = 0; pi < s.size(); ++pi) {
      json row = json::object();
      for (int sg = 0; sg < s.size(); ++sg) row[order.label(sg)] = r.per_pi[static_cast<size_t>(pi)].rank[static_cast<size_t>(sg)].str();
      ranks[order.label(pi)] = row;
    }
    j["details"]["rank_q_hom"] = ranks;
    return {j, r.pass};
  }

  if (command == "bgg") {
    const Involution* tau = b.tau ? &*b.tau : nullptr;
    BggReport r = bgg_check(s, tau);
    j["bgg"] = r.pass;
    horizon(r.horizon);
    j["p_delta"] = matrix_json(r.left);
    j["details"]["nabla_bar_multiplicities"] = matrix_json(r.right);
    if (r.tau_checked) j["details"]["bar_delta_multiplicities"] = matrix_json(r.right_tau);
    j["details"]["involution"] = r.tau_checked;
    for (const auto& w : r.witnesses) j["witnesses"].push_back(w);
    j["verdict"] = r.pass ? "BGG reciprocity holds" : "BGG reciprocity fails";
    return {j, r.pass};
  }

  if (command == "resolve") {
    ResolutionReport r = resolution_checks(s, cls);
    json pd = json::object();
    for (int pi = 0; pi < s.size(); ++pi) {
      const Verdict& k = r.koszul[static_cast<size_t>(pi)];
      pd[order.label(pi)] = {{"pd_delta", r.pd[static_cast<size_t>(pi)]},
                             {"bound", r.pd_bound[static_cast<size_t>(pi)]},
                             {"koszul", k.pass ? std::string("pass") : "fail: " + k.witness}};
    }
    j["details"]["resolutions"] = pd;
    j["details"]["gldim_bound"] = r.gldim_bound;
    j["details"]["ext_vanishing"] = r.ext_vanishing.pass ? (r.ext_vanishing.witness.empty() ? "pass" : r.ext_vanishing.witness)
                                                          : "fail: " + r.ext_vanishing.witness;
    for (const auto& w : r.witnesses) j["witnesses"].push_back(w);
    horizon(b.algebra->complete_to());
    j["verdict"] = r.pass ? "resolution bounds hold" : "resolution bounds fail";
    return {j, r.pass};
  }
  throw UsageError("unknown command '" + command + "'");
}

void print_value(std::ostream& os, const json& v, const std::string& indent) {
  if (v.is_object()) {
    for (const auto& [k, x] : v.items()) {
      if (x.is_object() || (x.is_array() && !x.empty() && x.front().is_object())) {
        os << indent << k << ":\n";
        print_value(os, x, indent + "  ");
      } else {
        os << indent << k << ": " << (x.is_string() ? x.get<std::string>() : x.dump()) << "\n";
      }
    }
  } else if (v.is_array()) {
    for (const auto& x : v) {
      if (x.is_object()) {
        os << indent << "-\n";
        print_value(os, x, indent + "  ");
      } else {
        os << indent << "- " << (x.is_string() ? x.get<std::string>() : x.dump()) << "\n";
      }
    }
  } else {
    os << indent << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
  }
}

void print_matrix(std::ostream& os, const std::string& title, const json& m, const json& labels) {
  if (m.empty()) return;
  os << title << "\n";
  for (size_t r = 0; r < m.size(); ++r) {
    os << "  " << labels[r].get<std::string>() << ": [";
    for (size_t c = 0; c < m[r].size(); ++c) os << (c ? ", " : "") << m[r][c].get<std::string>();
    os << "]\n";
  }
}

void print_text(std::ostream& os, const json& j) {
  os << "verdict: " << j["verdict"].get<std::string>() << "\n";
  os << "horizon: " << (j["horizon"].is_null() ? std::string("exact") : std::to_string(j["horizon"].get<int>())) << "\n";
  os << "labels: ";
  for (size_t k = 0; k < j["labels"].size(); ++k) os << (k ? ", " : "") << j["labels"][k].get<std::string>();
  os << "\n";
  if (!j["per_pi"].empty()) {
    os << "per label:\n";
    print_value(os, j["per_pi"], "  ");
  }
  print_matrix(os, "decomposition [Δ(π):L(σ)] (rows π, columns σ):", j["decomposition"], j["labels"]);
  print_matrix(os, "(P(π):Δ(σ)) (rows π, columns σ):", j["p_delta"], j["labels"]);
  if (!j["bgg"].is_null()) os << "bgg: " << (j["bgg"].get<bool>() ? "pass" : "fail") << "\n";
  if (!j["chain"].empty()) {
    os << "chain:\n";
    print_value(os, j["chain"], "  ");
  }
  if (!j["details"].empty()) {
    os << "details:\n";
    print_value(os, j["details"], "  ");
  }
  if (!j["witnesses"].empty()) {
    os << "witnesses:\n";
    print_value(os, j["witnesses"], "  ");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graded stratification checks for finite and locally finite graded algebras"};
  app.require_subcommand(1);
  Options opt;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"inspect", "algebra data: graded dimension, Cartan matrix, simples"},
      {"standardize", "standard and proper standard modules and B_pi"},
      {"check", "stratification axioms and the class verdict"},
      {"bgg", "BGG reciprocity (with the involution when given)"},
      {"chain", "heredity chain of idempotent ideals"},
      {"resolve", "projective dimensions, Koszul resolutions, Ext vanishing"},
      {"cellularize", "cell data from the heredity chain and the involution"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("input", opt.path, "input file (TOML)")->required();
    sub->add_option("--window", opt.window, "top degree of the computation window");
    sub->add_option("--field", opt.field, "characteristic: 0 or a prime");
    sub->add_option("--class", opt.cls, "class of B_pi: F, connected, polynomial or any")
        ->check(CLI::IsMember({"F", "connected", "polynomial", "any"}));
    sub->add_option("--json", opt.json_path, "write the JSON report to this path ('-' for stdout)");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }
  const std::string command = app.get_subcommands().front()->get_name();
  try {
    Problem p = load_problem(opt.path);
    if (opt.window) p.window = *opt.window;
    if (opt.field) {
      if (*opt.field != 0 && !is_prime(*opt.field)) throw UsageError("--field must be 0 or a prime");
      p.characteristic = *opt.field;
    }
    if (opt.cls) p.cls = *opt.cls;
    auto [report, pass] = run(command, p);
    if (opt.json_path == "-") {
      std::cout << report.dump(2) << "\n";
    } else {
      print_text(std::cout, report);
      if (!opt.json_path.empty()) {
        std::ofstream out(opt.json_path);
        if (!out) throw UsageError("cannot write '" + opt.json_path + "'");
        out << report.dump(2) << "\n";
      }
    }
    return pass ? 0 : 1;
  } catch (const InputError& e) {
    std::cerr << opt.path << (e.line ? ":" : ": ") << e.what() << "\n";
  } catch (const AlgebraError& e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (const OrderError& e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (const HorizonTooLow& e) {
    std::cerr << "error: window too small; degree " << e.needed_degree << " is needed (raise --window)\n";
  }
  return 2;
}
