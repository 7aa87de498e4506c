#pragma once

// Run configuration documents and the literal formats used on the command
// line and in config files.  Needs the single-header nlohmann json.

#include "json.hpp"

#include <map>
#include <optional>
#include <string>

#include "rmlab/pseudolattice/pseudolattice.hpp"

namespace rmlab::io {

using json = nlohmann::json;

inline std::string trim(std::string s) {
  const auto a = s.find_first_not_of(" \t\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\n");
  return s.substr(a, b - a + 1);
}

/// "p/q" or a decimal.  Decimals are converted exactly (1.25 -> 5/4).
inline Rational parse_exact(const std::string& raw) {
  const std::string s = trim(raw);
  if (s.empty()) throw InvalidInput("empty number");
  if (s.find('/') != std::string::npos) return parse_rational(s);
  const auto e = s.find_first_of("eE");
  std::string mant = s.substr(0, e);
  long exp10 = 0;
  if (e != std::string::npos) {
    try {
      std::size_t used = 0;
      exp10 = std::stol(s.substr(e + 1), &used);
      if (used != s.size() - e - 1) throw InvalidInput("bad exponent: " + s);
    } catch (const std::logic_error&) {
      throw InvalidInput("bad exponent: " + s);
    }
  }
  const auto dot = mant.find('.');
  if (dot != std::string::npos) {
    exp10 -= static_cast<long>(mant.size() - dot - 1);
    mant.erase(dot, 1);
  }
  if (mant.empty() || mant == "-" || mant == "+") throw InvalidInput("not a number: " + s);
  if (mant[0] == '+') mant.erase(0, 1);
  Integer num;
  if (num.set_str(mant, 10) != 0) throw InvalidInput("not a number: " + s);
  Integer p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exp10)));
  return exp10 >= 0 ? Rational(num * p) : frac(num, p);
}

inline hp::Real parse_real(const std::string& s, hp::Bits b) {
  const std::string t = trim(s);
  if (t.find('/') != std::string::npos) return hp::Real(parse_rational(t), b);
  return hp::Real::from_string(t, b);
}

/// "i", "2i", "1/2+i", "0.5 - 1.5i", "3".
inline hp::Complex parse_complex(const std::string& raw, hp::Bits b) {
  std::string s;
  for (char c : raw)
    if (c != ' ') s += c;
  if (s.empty()) throw InvalidInput("empty complex literal");
  hp::Complex z(b);
  if (s.back() != 'i') {
    z.re = parse_real(s, b);
    return z;
  }
  s.pop_back();
  // Split at the last sign that is not an exponent sign or the leading one.
  std::size_t cut = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      cut = k;
      break;
    }
  }
  std::string re = cut == std::string::npos ? "" : s.substr(0, cut);
  std::string im = cut == std::string::npos ? s : s.substr(cut);
  if (im.empty() || im == "+") im = "1";
  if (im == "-") im = "-1";
  if (im[0] == '+') im.erase(0, 1);
  if (!re.empty()) z.re = parse_real(re, b);
  z.im = parse_real(im, b);
  return z;
}

inline long field_D(const json& j) {
  if (!j.is_object() || !j.contains("D") || !j["D"].is_number_integer())
    throw InvalidInput("field literal needs an integer D");
  return j["D"].get<long>();
}

/// [x, y] -> x + y sqrt D, entries as strings or integers.
inline QuadElem parse_elem(const json& j, long D) {
  auto num = [](const json& x) {
    if (x.is_string()) return parse_exact(x.get<std::string>());
    if (x.is_number_integer()) return Rational(x.get<long>());
    throw InvalidInput("element entries must be strings or integers");
  };
  if (!j.is_array() || j.size() != 2) throw InvalidInput("element literal must be [x, y]");
  return QuadElem(D, num(j[0]), num(j[1]));
}

inline json emit_elem(const QuadElem& x) { return json::array({to_string(x.x()), to_string(x.y())}); }

/// "x,y" on the command line.
inline QuadElem parse_elem_flag(const std::string& s, long D) {
  const auto c = s.find(',');
  if (c == std::string::npos) return QuadElem(D, parse_exact(s));
  return QuadElem(D, parse_exact(s.substr(0, c)), parse_exact(s.substr(c + 1)));
}

/// {"D": 5, "ideal": [A, B, C]}, or [A, B, C] inside a field context.
inline QuadIdeal parse_ideal(const json& j, const QuadField& K) {
  const json& t = j.is_object() ? j.at("ideal") : j;
  if (!t.is_array() || t.size() != 3) throw InvalidInput("ideal literal must be an HNF triple [A, B, C]");
  for (const auto& x : t)
    if (!x.is_number_integer()) throw InvalidInput("HNF entries must be integers");
  return QuadIdeal(K, t[0].get<long>(), t[1].get<long>(), t[2].get<long>());
}

inline json emit_ideal(const QuadIdeal& I) {
  return json::array({I.A().get_si(), I.B().get_si(), I.C().get_si()});
}

/// "A,B,C" or a single integer n for (n).
inline QuadIdeal parse_ideal_flag(const std::string& s, const QuadField& K) {
  std::vector<long> v;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    auto c = s.find(',', pos);
    std::string part = trim(s.substr(pos, c == std::string::npos ? std::string::npos : c - pos));
    try {
      std::size_t used = 0;
      v.push_back(std::stol(part, &used));
      if (used != part.size()) throw InvalidInput("bad ideal literal: " + s);
    } catch (const std::logic_error&) {
      throw InvalidInput("bad ideal literal: " + s);
    }
    if (c == std::string::npos) break;
    pos = c + 1;
  }
  if (v.size() == 1) return QuadIdeal::principal(QuadElem(K, v[0]));
  if (v.size() != 3) throw InvalidInput("ideal literal needs 1 or 3 integers: " + s);
  return QuadIdeal(K, v[0], v[1], v[2]);
}

/// {"D": 5, "l1": [x, y], "l2": [x, y]}.
inline Pseudolattice parse_pseudolattice(const json& j) {
  const long D = field_D(j);
  const QuadField K(D);
  if (!j.contains("l1") || !j.contains("l2")) throw InvalidInput("pseudolattice literal needs l1 and l2");
  int orientation = j.value("orientation", 1);
  return Pseudolattice(K, parse_elem(j["l1"], D), parse_elem(j["l2"], D), orientation);
}

inline json emit_pseudolattice(const Pseudolattice& L) {
  json j;
  j["D"] = L.field().D();
  j["l1"] = emit_elem(L.l1());
  j["l2"] = emit_elem(L.l2());
  j["orientation"] = L.orientation();
  return j;
}

/// The whole declarative document.  Unknown task blocks are kept verbatim.
struct RunConfig {
  long precision_bits = 128;
  std::string target_abs_err = "1e-30";
  std::optional<long> D;
  json blocks = json::object();  // task-specific blocks by name

  PrecisionCtx ctx() const {
    double e = 0;
    try {
      std::size_t used = 0;
      e = std::stod(target_abs_err, &used);
      if (used != target_abs_err.size()) throw InvalidInput("bad target_abs_err: " + target_abs_err);
    } catch (const std::logic_error&) {
      throw InvalidInput("bad target_abs_err: " + target_abs_err);
    }
    return PrecisionCtx(precision_bits, e);
  }
  const json* block(const std::string& name) const {
    auto it = blocks.find(name);
    return it == blocks.end() ? nullptr : &*it;
  }
};

/// Canonical form of a task block: exact literals rewritten in lowest terms.
inline json normalize_block(const std::string& name, const json& b, std::optional<long> D) {
  if (!b.is_object()) throw InvalidInput("block " + name + " must be an object");
  json out = b;
  auto need_D = [&]() {
    if (!D) throw InvalidInput("block " + name + " needs a field");
    return *D;
  };
  for (auto it = out.begin(); it != out.end(); ++it) {
    const std::string& k = it.key();
    if ((k == "l0" || k == "m0") && it->is_array()) *it = emit_elem(parse_elem(*it, need_D()));
    if ((k == "L" || k == "modulus") && it->is_array()) *it = emit_ideal(parse_ideal(*it, QuadField(need_D())));
    if ((k == "lattice" || k == "L1" || k == "L2") && it->is_object()) *it = emit_pseudolattice(parse_pseudolattice(*it));
    if ((k == "gamma") && it->is_string()) *it = to_string(parse_exact(it->get<std::string>()));
  }
  return out;
}

inline RunConfig parse_config(const json& j) {
  if (!j.is_object()) throw InvalidInput("config must be a JSON object");
  RunConfig c;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& k = it.key();
    if (k == "precision_bits") {
      if (!it->is_number_integer()) throw InvalidInput("precision_bits must be an integer");
      c.precision_bits = it->get<long>();
    } else if (k == "target_abs_err") {
      c.target_abs_err = it->is_string() ? it->get<std::string>() : it->dump();
    } else if (k == "field") {
      c.D = field_D(*it);
      QuadField check(*c.D);
      (void)check;
    }
  }
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& k = it.key();
    if (k == "precision_bits" || k == "target_abs_err" || k == "field") continue;
    c.blocks[k] = normalize_block(k, *it, c.D);
  }
  c.ctx();
  return c;
}

inline RunConfig parse_config_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidInput(std::string("config is not valid JSON: ") + e.what());
  }
  return parse_config(j);
}

inline json emit_config(const RunConfig& c) {
  json j = c.blocks;
  j["precision_bits"] = c.precision_bits;
  j["target_abs_err"] = c.target_abs_err;
  if (c.D) j["field"] = json{{"D", *c.D}};
  return j;
}

}  // namespace rmlab::io
