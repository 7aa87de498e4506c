// rmlab: batch front end.  Flags override the matching fields of --config.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "rmlab/io/commands.hpp"

using namespace rmlab;
using io::json;

namespace {

struct Flags {
  std::string config_path, out, format = "json";
  std::optional<long> prec, D, max_n, twist, modulus_int;
  std::optional<std::string> err, v, beta, gamma, L, l0, m0, eta, modulus, variant, tol;
  std::optional<std::string> theta1, theta2, l1, l2, lattice_type, kind, t, lambda0, mu0;
};

// Applies the command-line flags for `cmd` on top of the config document.
io::RunConfig merge(const std::string& cmd, const Flags& f) {
  json doc = json::object();
  if (!f.config_path.empty()) {
    std::ifstream in(f.config_path);
    if (!in) throw InvalidInput("cannot read config " + f.config_path);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
      doc = json::parse(ss.str());
    } catch (const json::parse_error& e) {
      throw InvalidInput(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw InvalidInput("config must be a JSON object");
  }
  if (f.prec) doc["precision_bits"] = *f.prec;
  if (f.err) doc["target_abs_err"] = *f.err;
  if (f.D) doc["field"] = json{{"D", *f.D}};
  const long D = doc.contains("field") ? io::field_D(doc["field"]) : 5;
  auto block = [&](const char* name) -> json& {
    if (!doc.contains(name)) doc[name] = json::object();
    return doc[name];
  };
  auto elem = [&](const std::string& s) { return io::emit_elem(io::parse_elem_flag(s, D)); };
  auto ideal = [&](const std::string& s) { return io::emit_ideal(io::parse_ideal_flag(s, QuadField(D))); };

  if (cmd == "stark compute") {
    json& b = block("stark");
    if (f.L) b["L"] = ideal(*f.L);
    if (f.l0) b["l0"] = elem(*f.l0);
    if (f.tol) b["tol"] = *f.tol;
  } else if (cmd == "stark conjecture") {
    json& b = block("conjecture");
    if (f.modulus) b["modulus"] = ideal(*f.modulus);
    if (f.variant) b["variant"] = *f.variant;
    if (f.tol) b["tol"] = *f.tol;
  } else if (cmd == "theta check-fe" || cmd == "theta check-average") {
    json& b = block("theta");
    if (f.v) b["v"] = *f.v;
    if (f.modulus_int) b["modulus"] = *f.modulus_int;
    if (f.l0) b["l0"] = elem(*f.l0);
    if (f.m0) b["m0"] = elem(*f.m0);
    if (f.eta) b["eta"] = *f.eta;
    if (f.tol) b["tol"] = *f.tol;
  } else if (cmd == "theta check-poisson") {
    json& b = block("poisson");
    if (f.lattice_type) b["lattice_type"] = *f.lattice_type;
    if (f.kind) b["kind"] = *f.kind;
    if (f.t) b["t"] = *f.t;
    if (f.v) b["v"] = *f.v;
    if (f.eta) b["eta"] = *f.eta;
    if (f.lambda0) b["lambda0"] = *f.lambda0;
    if (f.mu0) b["mu0"] = *f.mu0;
    if (f.tol) b["tol"] = *f.tol;
  } else if (cmd == "lattice classify") {
    json& b = block("lattice");
    // theta -> Z + Z theta
    auto k0 = [&](const std::string& s) { return json{{"D", D}, {"l1", json::array({"1", "0"})}, {"l2", elem(s)}}; };
    if (f.theta1) b["L1"] = k0(*f.theta1);
    if (f.theta2) b["L2"] = k0(*f.theta2);
  } else if (cmd == "lattice dual") {
    json& b = block("lattice");
    if (f.l1 || f.l2) {
      if (!f.l1 || !f.l2) throw InvalidInput("lattice dual needs both --l1 and --l2");
      b["lattice"] = json{{"D", D}, {"l1", elem(*f.l1)}, {"l2", elem(*f.l2)}};
    }
  } else if (cmd == "cyclotomic table") {
    json& b = block("cyclotomic");
    if (f.max_n) b["max_n"] = *f.max_n;
    if (f.tol) b["tol"] = *f.tol;
  } else if (cmd == "bc kms") {
    json& b = block("bc");
    if (f.beta) b["beta"] = *f.beta;
    if (f.gamma) b["gamma"] = *f.gamma;
    if (f.twist) b["twist"] = *f.twist;
  }
  return io::parse_config(doc);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rmlab: real multiplication, Stark numbers and theta identities"};
  app.require_subcommand(1);
  Flags f;
  app.add_option("--config", f.config_path, "JSON run configuration");
  app.add_option("--prec", f.prec, "working precision in bits");
  app.add_option("--err", f.err, "absolute error target, decimal");
  app.add_option("--out", f.out, "output directory (stdout when absent)");
  app.add_option("--format", f.format, "json, csv or both")->check(CLI::IsMember({"json", "csv", "both"}));
  app.add_option("--D", f.D, "squarefree D of the field Q(sqrt D)");
  app.add_option("--tol", f.tol, "residual tolerance for the exit status");

  std::string chosen;
  auto group = [&](const std::string& name, const std::string& help) {
    CLI::App* g = app.add_subcommand(name, help);
    g->require_subcommand(1);
    g->fallthrough();
    return g;
  };
  auto leaf = [&](CLI::App* g, const std::string& name, const std::string& help) {
    CLI::App* s = g->add_subcommand(name, help);
    s->fallthrough();
    s->callback([&chosen, g, name]() { chosen = g->get_name() + " " + name; });
    return s;
  };

  CLI::App* stark = group("stark", "partial zeta values and Stark numbers");
  CLI::App* sc = leaf(stark, "compute", "zeta'(0) and S0 for a pair (L, l0)");
  sc->add_option("--L", f.L, "ideal L as A,B,C (HNF) or n for (n)");
  sc->add_option("--l0", f.l0, "l0 as x,y meaning x + y sqrt D");
  CLI::App* sj = leaf(stark, "conjecture", "Stark numbers of all ray classes modulo f");
  sj->add_option("--modulus", f.modulus, "modulus f as A,B,C or n");
  sj->add_option("--variant", f.variant, "narrow or wide")->check(CLI::IsMember({"narrow", "wide"}));

  CLI::App* theta = group("theta", "theta function identities");
  for (const char* name : {"check-fe", "check-average"}) {
    CLI::App* s = leaf(theta, name, std::string("theta ") + name);
    s->add_option("--v", f.v, "v in the upper half plane, e.g. i, 2i, 1/2+i");
    s->add_option("--modulus", f.modulus_int, "L = modulus * O_K");
    s->add_option("--l0", f.l0, "shift l0 as x,y");
    s->add_option("--m0", f.m0, "character m0 as x,y");
    s->add_option("--eta", f.eta, "eta as a complex literal");
  }
  CLI::App* tp = leaf(theta, "check-poisson", "Poisson summation for the Gaussian family");
  tp->add_option("--lattice", f.lattice_type, "z2 or hecke")->check(CLI::IsMember({"z2", "hecke"}));
  tp->add_option("--kind", f.kind, "linear or plain")->check(CLI::IsMember({"linear", "plain"}));
  tp->add_option("--t", f.t, "geodesic parameter t");
  tp->add_option("--v", f.v, "v in the upper half plane");
  tp->add_option("--eta", f.eta, "eta as a complex literal");
  tp->add_option("--lambda0", f.lambda0, "shift lambda0 as a complex literal");
  tp->add_option("--mu0", f.mu0, "character mu0 as a complex literal");

  CLI::App* lattice = group("lattice", "pseudolattices");
  CLI::App* lc = leaf(lattice, "classify", "isomorphism test for Z + Z theta1 and Z + Z theta2");
  lc->add_option("--theta1", f.theta1, "theta1 as x,y");
  lc->add_option("--theta2", f.theta2, "theta2 as x,y");
  CLI::App* ld = leaf(lattice, "dual", "trace dual and conductor");
  ld->add_option("--l1", f.l1, "generator l1 as x,y");
  ld->add_option("--l2", f.l2, "generator l2 as x,y");

  CLI::App* cyc = group("cyclotomic", "congruence class zeta functions");
  leaf(cyc, "table", "exp(-2 zeta'(0)) against 4 sin^2 for m < n <= max-n")
      ->add_option("--max-n", f.max_n, "largest n");

  CLI::App* bc = group("bc", "Bost-Connes system");
  CLI::App* kms = leaf(bc, "kms", "Gibbs state on e(gamma)");
  kms->add_option("--beta", f.beta, "inverse temperature > 1");
  kms->add_option("--gamma", f.gamma, "gamma in Q/Z, e.g. 1/2");
  kms->add_option("--twist", f.twist, "Galois twist residue");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return io::invalid_input;
  }
  io::RunConfig cfg;
  try {
    cfg = merge(chosen, f);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return io::invalid_input;
  }
  return io::run_command(chosen, cfg, f.out, f.format, std::cout, std::cerr);
}
