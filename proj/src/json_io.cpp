#include "hermiwitt/json_io.hpp"

#include "hermiwitt/errors.hpp"

namespace hermiwitt {

namespace {

[[noreturn]] void malformed(const std::string& what) { throw MalformedInput(what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) malformed(std::string("missing key '") + key + "'");
  return j.at(key);
}

int int_of(const json& j, const char* what) {
  if (j.is_number_integer()) return j.get<int>();
  if (j.is_string()) {
    try {
      std::size_t pos = 0;
      int v = std::stoi(j.get<std::string>(), &pos);
      if (pos == j.get<std::string>().size()) return v;
    } catch (const std::exception&) {
    }
  }
  malformed(std::string(what) + " must be an integer");
}

mpz_class mpz_of(const std::string& s) {
  mpz_class z;
  if (s.empty() || z.set_str(s, 10) != 0) malformed("not an integer: '" + s + "'");
  return z;
}

}  // namespace

Padic padic_from_json(const FieldContext& ctx, const json& j) {
  if (j.is_number_integer()) return Padic(ctx, j.get<long>());
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    auto slash = s.find('/');
    if (slash == std::string::npos) return Padic(ctx, mpz_of(s));
    mpz_class den = mpz_of(s.substr(slash + 1));
    if (den == 0) malformed("zero denominator");
    return Padic::rational(ctx, mpz_of(s.substr(0, slash)), den);
  }
  if (j.is_object()) {
    if (j.contains("base") && j.at("base") != "F") malformed("expected an F-value");
    const int val = int_of(field(j, "val"), "val");
    const json& ds = field(j, "digits");
    if (!ds.is_array()) malformed("digits must be an array");
    mpz_class unit = 0, pk = 1;
    for (const auto& d : ds) {
      int di = int_of(d, "digit");
      if (di < 0 || di >= ctx.prime()) malformed("digit out of range");
      unit += pk * di;
      pk *= ctx.prime();
    }
    const int abs = val + static_cast<int>(ds.size());
    if (ds.empty()) return Padic::zero(ctx, val);
    if (unit % ctx.prime() == 0) malformed("leading digit of the unit part is zero");
    return Padic::from_scaled(ctx, unit, val, std::min(abs, ctx.precision()));
  }
  malformed("bad F-value");
}

json to_json(const Padic& x) {
  json ds = json::array();
  if (x.is_zero()) return json{{"base", "F"}, {"val", x.precision()}, {"digits", ds}};
  for (long d : x.digits()) ds.push_back(d);
  return json{{"base", "F"}, {"val", x.valuation()}, {"digits", ds}};
}

QuadElem l_from_json(const FieldContext& ctx, const json& j) {
  if (!j.is_object()) return QuadElem::from_base(ctx.unramified(), padic_from_json(ctx, j));
  if (j.contains("base") && j.at("base") == "F") return QuadElem::from_base(ctx.unramified(), padic_from_json(ctx, j));
  return QuadElem(ctx.unramified(), padic_from_json(ctx, field(j, "a")), padic_from_json(ctx, field(j, "b")));
}

json to_json(const QuadElem& x) { return json{{"base", "L"}, {"a", to_json(x.a())}, {"b", to_json(x.b())}}; }

Quat quat_from_json(const FieldContext& ctx, const json& j) {
  if (!j.is_object() || j.contains("base")) return Quat::from_L(l_from_json(ctx, j));
  return Quat(l_from_json(ctx, field(j, "a")), l_from_json(ctx, field(j, "b")));
}

json to_json(const Quat& x) { return json{{"a", to_json(x.a())}, {"b", to_json(x.b())}}; }

DMatrix dmatrix_from_json(const FieldContext& ctx, const json& j) {
  const json& rows = j.is_object() ? field(j, "matrix") : j;
  if (!rows.is_array() || rows.empty()) malformed("matrix must be a nonempty array of rows");
  const std::size_t n = rows.size(), m = rows[0].is_array() ? rows[0].size() : 0;
  if (m == 0) malformed("matrix rows must be nonempty arrays");
  DMatrix out(n, m, Quat::zero(ctx));
  for (std::size_t i = 0; i < n; ++i) {
    if (!rows[i].is_array() || rows[i].size() != m) malformed("ragged matrix");
    for (std::size_t k = 0; k < m; ++k) out(i, k) = quat_from_json(ctx, rows[i][k]);
  }
  return out;
}

json to_json(const DMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(to_json(m(i, k)));
    rows.push_back(row);
  }
  return rows;
}

HermitianForm form_from_json(const FieldContext& ctx, const json& j) {
  int eps = int_of(field(j, "epsilon"), "epsilon");
  if (eps != 1 && eps != -1) malformed("epsilon must be +1 or -1");
  DMatrix g = dmatrix_from_json(ctx, field(j, "gram"));
  if (g.rows() != g.cols()) malformed("gram matrix must be square");
  return make_form(eps, g);
}

json to_json(const HermitianForm& h) { return json{{"epsilon", h.epsilon}, {"gram", to_json(h.gram)}}; }

json to_json(const WittClassD& c) { return c.names(); }

WittClassD witt_class_from_json(int epsilon, const json& j) {
  if (!j.is_array()) malformed("a Witt class is an array of generator names");
  std::vector<std::string> names;
  for (const auto& n : j) {
    if (!n.is_string()) malformed("generator names are strings");
    names.push_back(n.get<std::string>());
  }
  return WittClassD::from_names(epsilon, names);
}

json to_json(const WittClassE& c) {
  return json{{"epsilon", c.epsilon},
              {"dim_parity", c.odd ? "odd" : "even"},
              {"discriminant", c.nonnorm ? "nonnorm" : "norm"},
              {"hyperbolic", c.is_hyperbolic()},
              {"anisotropic_dim", c.anisotropic_dim()}};
}

namespace {

int epsilon_of(const json& j) {
  int eps = int_of(field(j, "epsilon"), "epsilon");
  if (eps != 1 && eps != -1) malformed("epsilon must be +1 or -1");
  return eps;
}

EndoClassToken token_from_json(const json& j) {
  EndoClassToken t;
  const json& id = field(j, "id");
  t.id = id.is_string() ? id.get<std::string>() : id.dump();
  if (!field(j, "kind").is_string()) malformed("kind must be a string");
  t.kind = token_kind_from_string(j.at("kind").get<std::string>());
  t.degree = j.contains("degree") ? int_of(j.at("degree"), "degree") : 1;
  if (j.contains("e_parity")) t.e_parity = int_of(j.at("e_parity"), "e_parity");
  if (j.contains("f_parity")) t.f_parity = int_of(j.at("f_parity"), "f_parity");
  if (j.contains("min_tr")) t.min_tr = j.at("min_tr").is_string() ? j.at("min_tr").get<std::string>() : j.at("min_tr").dump();
  if (j.contains("odd_trace")) {
    for (const auto& n : j.at("odd_trace")) {
      if (!n.is_string()) malformed("odd_trace holds generator names");
      t.odd_trace.push_back(n.get<std::string>());
    }
  }
  return t;
}

void token_to_json(const EndoClassToken& t, json& j) {
  j["id"] = t.id;
  j["kind"] = to_string(t.kind);
  j["degree"] = t.degree;
  if (t.kind == TokenKind::simple_nonnull) {
    j["e_parity"] = t.e_parity;
    j["f_parity"] = t.f_parity;
    j["min_tr"] = t.min_tr;
    j["odd_trace"] = t.odd_trace;
  }
}

Tower tower_from_json(const json& j, int epsilon) {
  if (j.is_string()) {
    if (j.get<std::string>() != "HYP") malformed("tower must be \"HYP\" or an object");
    return Tower::hyp();
  }
  if (!j.is_object()) malformed("bad tower");
  if (j.contains("class")) return Tower::null(witt_class_from_json(epsilon, j.at("class")));
  int d = int_of(field(j, "diman"), "diman"), s = int_of(field(j, "selector"), "selector");
  if (d < 0 || d > 2) malformed("diman must be 0, 1 or 2");
  if (d == 0) return Tower::hyp();
  return Tower::simple(d, s);
}

json tower_to_json(const Tower& t) {
  if (t.hyperbolic) return "HYP";
  if (t.null_class) return json{{"class", to_json(*t.null_class)}};
  return json{{"diman", t.diman}, {"selector", t.selector}};
}

}  // namespace

EndoParameter endo_parameter_from_json(const json& j) {
  EndoParameter fm;
  fm.epsilon = epsilon_of(j);
  const json& amb = field(j, "ambient");
  fm.m = int_of(field(amb, "m"), "m");
  fm.h_class = witt_class_from_json(fm.epsilon, field(amb, "h_class"));
  const json& sup = field(j, "support");
  if (!sup.is_array()) malformed("support must be an array");
  for (const auto& e : sup) {
    SupportEntry s;
    s.token = token_from_json(e);
    s.f1 = int_of(field(e, "f1"), "f1");
    const json& f2 = field(e, "f2");
    const json& beta = field(f2, "beta");
    if (!beta.is_string()) malformed("beta must be \"ZERO\" or a token reference");
    if (beta.get<std::string>() != "ZERO") s.f2.beta = beta.get<std::string>() == "token" ? s.token.id : beta.get<std::string>();
    s.f2.tower = tower_from_json(field(f2, "tower"), fm.epsilon);
    fm.support.push_back(std::move(s));
  }
  return fm;
}

json to_json(const EndoParameter& fm) {
  json sup = json::array();
  for (const auto& s : fm.support) {
    json e;
    token_to_json(s.token, e);
    e["f1"] = s.f1;
    e["f2"] = json{{"beta", s.f2.beta ? *s.f2.beta : std::string("ZERO")}, {"tower", tower_to_json(s.f2.tower)}};
    sup.push_back(e);
  }
  return json{{"epsilon", fm.epsilon}, {"ambient", {{"m", fm.m}, {"h_class", to_json(fm.h_class)}}}, {"support", sup}};
}

LiftInput lift_input_from_json(const json& j) {
  LiftInput in;
  in.epsilon = epsilon_of(j);
  const json& amb = field(j, "ambient");
  in.m = int_of(field(amb, "m"), "m");
  in.h_class = witt_class_from_json(in.epsilon, field(amb, "h_class"));
  const json& lift = field(j, "lift");
  if (!lift.is_array()) malformed("lift must be an array");
  for (const auto& e : lift) in.entries.push_back(LiftEntry{token_from_json(e), int_of(field(e, "f"), "f")});
  return in;
}

}  // namespace hermiwitt
