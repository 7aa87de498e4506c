#pragma once

// The batch subcommands, each taking a parsed RunConfig and returning a Report.

#include <functional>
#include <map>

#include "rmlab/bc/bc.hpp"
#include "rmlab/cyclotomic/cyclotomic.hpp"
#include "rmlab/io/report.hpp"
#include "rmlab/stark/stark.hpp"
#include "rmlab/theta/theta.hpp"

namespace rmlab::io {

namespace detail {

inline const json& block_or_empty(const RunConfig& c, const std::string& name) {
  static const json empty = json::object();
  const json* b = c.block(name);
  return b ? *b : empty;
}

inline QuadField field_of(const RunConfig& c, long fallback = 5) { return QuadField(c.D.value_or(fallback)); }

inline std::string str_or(const json& b, const char* key, const std::string& dflt) {
  if (!b.contains(key)) return dflt;
  if (b[key].is_string()) return b[key].get<std::string>();
  if (b[key].is_number()) return b[key].dump();
  throw InvalidInput(std::string(key) + " must be a string");
}

inline double tol_of(const json& b, double dflt) {
  if (!b.contains("tol")) return dflt;
  return parse_exact(str_or(b, "tol", "")).get_d();
}

inline json stark_json(const StarkResult& r) {
  return json{{"zeta_prime_0", dec(r.zeta_prime_0)},
              {"s0", dec(r.s0)},
              {"zeta_0", dec(r.zeta_0)},
              {"route_gap", sci(r.route_gap.to_double())},
              {"zeta_prime_0_numeric", dec(r.zeta_prime_0_numeric)}};
}

// L = f O_K with l0, m0, eta and the least admissible unit.
inline RMThetaSpec theta_spec(const RunConfig& c, const json& b, const hp::Complex& v) {
  const QuadField K = field_of(c);
  const long D = K.D();
  Pseudolattice L = b.contains("lattice") ? parse_pseudolattice(b["lattice"])
                                          : Pseudolattice(K, QuadElem(K, 1), QuadElem::omega(K));
  if (b.contains("modulus")) {
    if (!b["modulus"].is_number_integer()) throw InvalidInput("theta modulus must be an integer");
    L = L.scaled(QuadElem(K, b["modulus"].get<long>()));
  }
  const QuadElem l0 = b.contains("l0") ? parse_elem(b["l0"], D) : QuadElem(K, 1);
  const QuadElem m0 = b.contains("m0") ? parse_elem(b["m0"], D) : QuadElem(K, 0);
  const hp::Complex eta = parse_complex(str_or(b, "eta", "1"), v.bits());
  return {L, l0, m0, eta, find_theta_unit(L, l0, m0), v};
}

inline json spec_json(const RMThetaSpec& s) {
  return json{{"lattice", emit_pseudolattice(s.L)}, {"l0", emit_elem(s.l0)}, {"m0", emit_elem(s.m0)},
              {"eps", emit_elem(s.eps)},           {"eta", dec(s.eta)},      {"v", dec(s.v)}};
}

inline std::vector<std::string> v_list(const json& b) {
  if (!b.contains("v")) return {"i"};
  if (b["v"].is_array()) {
    std::vector<std::string> out;
    for (const auto& x : b["v"]) out.push_back(x.get<std::string>());
    return out;
  }
  return {b["v"].get<std::string>()};
}

}  // namespace detail

inline Report stark_compute(const RunConfig& c) {
  const PrecisionCtx ctx = c.ctx();
  const json& b = detail::block_or_empty(c, "stark");
  const QuadField K = detail::field_of(c);
  const QuadIdeal L = b.contains("L") ? parse_ideal(b["L"], K) : QuadIdeal::principal(QuadElem(K, 4));
  const QuadElem l0 = b.contains("l0") ? parse_elem(b["l0"], K.D()) : QuadElem(K, 1);
  const double tol = detail::tol_of(b, 1e-8);
  Report r{"stark compute"};
  StarkInput in = validate_pair(L, l0);
  StarkResult s = stark_number(in, ctx);
  r.doc = detail::stark_json(s);
  r.doc["L"] = emit_ideal(L);
  r.doc["l0"] = emit_elem(l0);
  r.doc["b"] = emit_ideal(in.b);
  r.doc["a0"] = emit_ideal(in.a0);
  r.doc["f"] = emit_ideal(in.f);
  r.doc["eps_plus"] = emit_elem(in.eps_plus);
  r.doc["index"] = in.index;
  r.csv_header = {"D", "L", "l0", "zeta_prime_0", "s0", "zeta_0", "route_gap"};
  r.csv_rows.push_back({std::to_string(K.D()), L.to_string(), l0.to_string(), rounded(s.zeta_prime_0.to_double()),
                        rounded(s.s0.to_double()), rounded(s.zeta_0.to_double()), sci(s.route_gap.to_double())});
  r.fail_if(!(s.route_gap.to_double() < tol) || !(hp::abs(s.zeta_0).to_double() < tol));
  return r;
}

inline Report stark_conjecture(const RunConfig& c) {
  const PrecisionCtx ctx = c.ctx();
  const json& b = detail::block_or_empty(c, "conjecture");
  const QuadField K = detail::field_of(c);
  const QuadIdeal f = b.contains("modulus") ? parse_ideal(b["modulus"], K) : QuadIdeal::principal(QuadElem(K, 4));
  ConjectureOptions opt;
  const std::string variant = detail::str_or(b, "variant", "narrow");
  if (variant != "narrow" && variant != "wide") throw InvalidInput("variant must be narrow or wide");
  opt.variant = variant == "wide" ? RayVariant::wide : RayVariant::narrow;
  if (b.contains("search_norm")) opt.search_norm = b["search_norm"].get<long>();
  const double tol = detail::tol_of(b, 1e-8);
  Report r{"stark conjecture"};
  ConjectureReport rep = conjecture_check(K, f, ctx, opt);
  r.doc["modulus"] = emit_ideal(f);
  r.doc["variant"] = to_string(rep.variant);
  r.csv_header = {"class", "representative", "zeta_prime_0", "s0", "route_gap"};
  json classes = json::array();
  for (const ClassStark& cs : rep.classes) {
    json j = detail::stark_json(cs.stark);
    j["class"] = cs.index;
    j["representative"] = emit_ideal(cs.representative);
    classes.push_back(j);
    r.csv_rows.push_back({std::to_string(cs.index), cs.representative.to_string(),
                          rounded(cs.stark.zeta_prime_0.to_double()), rounded(cs.stark.s0.to_double()),
                          sci(cs.stark.route_gap.to_double())});
  }
  r.doc["classes"] = classes;
  json coeffs = json::array();
  for (const CoefficientReport& cr : rep.coefficients) {
    json j{{"degree", cr.degree}, {"value", dec(cr.value)}};
    if (cr.recognized) {
      j["recognized"] = {{"a", cr.recognized->a.get_str()},
                         {"b", cr.recognized->b.get_str()},
                         {"c", cr.recognized->c.get_str()},
                         {"residual", sci(cr.recognized->residual)}};
    } else {
      j["recognized"] = nullptr;
      j["recognition_failed"] = true;
    }
    coeffs.push_back(j);
  }
  r.doc["polynomial"] = coeffs;
  r.doc["invariance"] = {{"class", rep.invariance_class},
                         {"second_representative", emit_ideal(rep.second_representative)},
                         {"second_s0", dec(rep.second_s0)},
                         {"gap", sci(rep.invariance_gap.to_double())}};
  r.doc["unit_norm"] = rep.unit_norm ? json(*rep.unit_norm) : json(nullptr);
  r.fail_if(!(rep.invariance_gap.to_double() < tol));
  return r;
}

inline Report theta_check_fe(const RunConfig& c) {
  const PrecisionCtx ctx = c.ctx();
  const json& b = detail::block_or_empty(c, "theta");
  const double tol = detail::tol_of(b, 1e-10);
  Report r{"theta check-fe"};
  r.csv_header = {"v", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "residual"};
  json cases = json::array();
  for (const std::string& vs : detail::v_list(b)) {
    RMThetaSpec s = detail::theta_spec(c, b, parse_complex(vs, ctx.bits()));
    IdentityCheck k = functional_equation_Theta(s, ctx);
    json j = detail::spec_json(s);
    j["lhs"] = dec(k.lhs);
    j["rhs"] = dec(k.rhs);
    j["residual"] = sci(k.residual.to_double());
    cases.push_back(j);
    r.csv_rows.push_back({vs, rounded(k.lhs.re.to_double()), rounded(k.lhs.im.to_double()),
                          rounded(k.rhs.re.to_double()), rounded(k.rhs.im.to_double()), sci(k.residual.to_double())});
    r.fail_if(!(k.residual.to_double() < tol));
  }
  r.doc["cases"] = cases;
  return r;
}

inline Report theta_check_average(const RunConfig& c) {
  const PrecisionCtx ctx = c.ctx();
  const json& b = detail::block_or_empty(c, "theta");
  const double tol = detail::tol_of(b, 1e-8);
  Report r{"theta check-average"};
  r.csv_header = {"v", "direct_re", "direct_im", "averaged_re", "averaged_im", "residual", "nodes"};
  json cases = json::array();
  for (const std::string& vs : detail::v_list(b)) {
    RMThetaSpec s = detail::theta_spec(c, b, parse_complex(vs, ctx.bits()));
    HeckeAverage h = hecke_average_check(s, ctx);
    json j = detail::spec_json(s);
    j["direct"] = dec(h.direct);
    j["averaged"] = dec(h.averaged);
    j["residual"] = sci(h.residual.to_double());
    j["nodes"] = h.nodes;
    cases.push_back(j);
    r.csv_rows.push_back({vs, rounded(h.direct.re.to_double()), rounded(h.direct.im.to_double()),
                          rounded(h.averaged.re.to_double()), rounded(h.averaged.im.to_double()),
                          sci(h.residual.to_double()), std::to_string(h.nodes)});
    r.fail_if(!(h.residual.to_double() < tol));
  }
  r.doc["cases"] = cases;
  return r;
}

inline Report theta_check_poisson(const RunConfig& c) {
  const PrecisionCtx ctx = c.ctx();
  const hp::Bits bits = ctx.bits();
  const json& b = detail::block_or_empty(c, "poisson");
  const double tol = detail::tol_of(b, 1e-12);
  const std::string which = detail::str_or(b, "lattice_type", "hecke");
  const std::string kind_s = detail::str_or(b, "kind", "linear");
  if (kind_s != "linear" && kind_s != "plain") throw InvalidInput("kind must be linear or plain");
  const GaussianKind kind = kind_s == "linear" ? GaussianKind::linear : GaussianKind::plain;
  const hp::Complex v = parse_complex(detail::str_or(b, "v", "i"), bits);
  const hp::Complex eta = parse_complex(detail::str_or(b, "eta", "1"), bits);
  const hp::Complex l0 = parse_complex(detail::str_or(b, "lambda0", "0"), bits);
  const hp::Complex m0 = parse_complex(detail::str_or(b, "mu0", "0"), bits);
  ComplexLattice G;
  if (which == "z2") {
    G = {hp::Complex(Real(1, bits)), hp::I(bits)};
  } else if (which == "hecke") {
    const QuadField K = detail::field_of(c);
    const Real t = parse_real(detail::str_or(b, "t", "0"), bits);
    G = hecke_lattice(Pseudolattice(K, QuadElem(K, 1), QuadElem::omega(K)), t, bits).lattice();
  } else {
    throw InvalidInput("lattice_type must be z2 or hecke");
  }
  IdentityCheck k = poisson_check(G, kind, eta, v, l0, m0, ctx);
  Report r{"theta check-poisson"};
  r.doc = {{"lattice_type", which}, {"kind", kind_s}, {"lhs", dec(k.lhs)}, {"rhs", dec(k.rhs)},
           {"residual", sci(k.residual.to_double())}};
  r.csv_header = {"lattice_type", "kind", "lhs_re", "lhs_im", "residual"};
  r.csv_rows.push_back({which, kind_s, rounded(k.lhs.re.to_double()), rounded(k.lhs.im.to_double()),
                        sci(k.residual.to_double())});
  r.fail_if(!(k.residual.to_double() < tol));
  return r;
}

inline Report lattice_classify(const RunConfig& c) {
  const json& b = detail::block_or_empty(c, "lattice");
  if (!b.contains("L1") || !b.contains("L2")) throw InvalidInput("lattice classify needs L1 and L2");
  const Pseudolattice L1 = parse_pseudolattice(b["L1"]), L2 = parse_pseudolattice(b["L2"]);
  const bool oriented = !b.contains("oriented") || b["oriented"].get<bool>();
  IsoResult iso = is_isomorphic(L1, L2, oriented);
  Report r{"lattice classify"};
  r.doc["isomorphic"] = iso.isomorphic;
  if (iso.witness) {
    const IntMat2& g = *iso.witness;
    r.doc["witness"] = json::array({g.a.get_str(), g.b.get_str(), g.c.get_str(), g.d.get_str()});
  }
  const OrderData o1 = endomorphism_ring(L1), o2 = endomorphism_ring(L2);
  r.doc["conductor_L1"] = o1.conductor.get_str();
  r.doc["conductor_L2"] = o2.conductor.get_str();
  r.doc["theta_L1"] = emit_elem(L1.theta());
  r.doc["theta_L2"] = emit_elem(L2.theta());
  r.csv_header = {"isomorphic", "conductor_L1", "conductor_L2"};
  r.csv_rows.push_back({iso.isomorphic ? "true" : "false", o1.conductor.get_str(), o2.conductor.get_str()});
  return r;
}

inline Report lattice_dual(const RunConfig& c) {
  const json& b = detail::block_or_empty(c, "lattice");
  if (!b.contains("lattice")) throw InvalidInput("lattice dual needs a lattice");
  const Pseudolattice L = parse_pseudolattice(b["lattice"]);
  const Pseudolattice M = dual(L);
  const OrderData o = endomorphism_ring(L);
  Report r{"lattice dual"};
  r.doc["lattice"] = emit_pseudolattice(L);
  r.doc["dual"] = emit_pseudolattice(M);
  r.doc["conductor"] = o.conductor.get_str();
  r.doc["delta"] = dec(delta(L, c.ctx().bits()));
  r.csv_header = {"l1", "l2", "dual_l1", "dual_l2", "conductor"};
  r.csv_rows.push_back({L.l1().to_string(), L.l2().to_string(), M.l1().to_string(), M.l2().to_string(),
                        o.conductor.get_str()});
  return r;
}

inline Report cyclotomic_table(const RunConfig& c) {
  const PrecisionCtx ctx = c.ctx();
  const json& b = detail::block_or_empty(c, "cyclotomic");
  const long max_n = b.value("max_n", 20L);
  if (max_n < 2) throw InvalidInput("max_n must be at least 2");
  const double tol = detail::tol_of(b, 1e-20);
  Report r{"cyclotomic table"};
  r.csv_header = {"m", "n", "lhs", "rhs", "abs_err"};
  json rows = json::array();
  double worst = 0;
  for (long n = 2; n <= max_n; ++n)
    for (long m = 1; m < n; ++m) {
      StarkQ q = stark_q({m, n}, ctx);
      const double e = hp::abs(q.lhs - q.rhs).to_double();
      worst = std::max(worst, e);
      rows.push_back({{"m", m}, {"n", n}, {"lhs", dec(q.lhs)}, {"rhs", dec(q.rhs)}, {"abs_err", sci(e)}});
      r.csv_rows.push_back({std::to_string(m), std::to_string(n), rounded(q.lhs.to_double()),
                            rounded(q.rhs.to_double()), sci(e)});
    }
  r.doc["rows"] = rows;
  r.doc["max_abs_err"] = sci(worst);
  r.fail_if(!(worst < tol));
  return r;
}

inline Report bc_kms(const RunConfig& c) {
  const PrecisionCtx ctx = c.ctx();
  const json& b = detail::block_or_empty(c, "bc");
  const Real beta = parse_real(detail::str_or(b, "beta", "2"), ctx.bits());
  const Rational gamma = parse_exact(detail::str_or(b, "gamma", "1/2"));
  const long twist = b.value("twist", 1L);
  KMSValue k = kms_state(beta, gamma, twist, ctx);
  Report r{"bc kms"};
  r.doc = {{"beta", dec(beta)},
           {"gamma", to_string(gamma)},
           {"twist", twist},
           {"value_re", dec(k.value.re)},
           {"value_im", dec(k.value.im)},
           {"tail_bound", sci(k.tail_bound)}};
  r.csv_header = {"beta", "gamma", "twist", "value_re", "value_im", "tail_bound"};
  r.csv_rows.push_back({rounded(beta.to_double()), to_string(gamma), std::to_string(twist),
                        rounded(k.value.re.to_double()), rounded(k.value.im.to_double()), sci(k.tail_bound)});
  return r;
}

using Command = std::function<Report(const RunConfig&)>;

inline const std::map<std::string, Command>& commands() {
  static const std::map<std::string, Command> table = {
      {"stark compute", stark_compute},       {"stark conjecture", stark_conjecture},
      {"theta check-fe", theta_check_fe},     {"theta check-average", theta_check_average},
      {"theta check-poisson", theta_check_poisson}, {"lattice classify", lattice_classify},
      {"lattice dual", lattice_dual},         {"cyclotomic table", cyclotomic_table},
      {"bc kms", bc_kms},
  };
  return table;
}

/// Runs a command, mapping failures onto the exit-code contract.
inline int run_command(const std::string& name, const RunConfig& c, const std::string& out, const std::string& format,
                       std::ostream& os, std::ostream& err) {
  auto it = commands().find(name);
  if (it == commands().end()) {
    err << "unknown command: " << name << "\n";
    return invalid_input;
  }
  try {
    Report r = it->second(c);
    write_report(r, c, out, format, os);
    return r.exit_code;
  } catch (const RouteDisagreement& e) {
    err << "error: " << e.what() << "\n";
    return residual_violation;
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << "\n";
    return convergence_failure;
  } catch (const TruncationOverflow& e) {
    err << "error: " << e.what() << "\n";
    return convergence_failure;
  } catch (const BoundExceeded& e) {
    err << "error: " << e.what() << "\n";
    return convergence_failure;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return invalid_input;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << "\n";
    return invalid_input;
  }
}

}  // namespace rmlab::io
