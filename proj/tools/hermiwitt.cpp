// hermiwitt: JSON in, JSON out. Exit codes: 0 ok, 1 malformed input,
// 2 validation failure, 3 inconclusive (precision / oracle budget).

#include <CLI11.hpp>

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "hermiwitt/endo.hpp"
#include "hermiwitt/errors.hpp"
#include "hermiwitt/json_io.hpp"
#include "hermiwitt/morita.hpp"
#include "hermiwitt/selftest.hpp"
#include "hermiwitt/wittclass.hpp"

using namespace hermiwitt;

namespace {

enum Exit { kOk = 0, kMalformed = 1, kValidation = 2, kInconclusive = 3 };

struct Config {
  long prime = 5;
  int precision = 32;
  std::uint64_t seed = 1;
  int epsilon = 0;  // 0: not given
  std::string element, form, beta, input;
  int jobs = 1;
};

// a flag value is a file path when such a file exists, inline JSON otherwise
json load(const std::string& arg, const char* flag) {
  if (arg.empty()) throw MalformedInput(std::string("missing --") + flag);
  std::string text = arg;
  std::error_code ec;
  if (std::filesystem::is_regular_file(arg, ec)) {
    std::ifstream in(arg);
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw MalformedInput(std::string("--") + flag + ": " + e.what());
  }
}

const FieldContext& field(const Config& cfg) {
  if (cfg.precision < 8) throw InvalidParameter("precision must be at least 8, got " + std::to_string(cfg.precision));
  return FieldContext::get(cfg.prime, cfg.precision);
}

HermitianForm load_form(const FieldContext& c, const json& j) {
  HermitianForm h = form_from_json(c, j);
  if (j.contains("rank") && (!j.at("rank").is_number_integer() || j.at("rank").get<std::size_t>() != h.rank()))
    throw MalformedInput("rank does not match the gram matrix");
  if (!validate(h)) throw WrongSymmetryType("gram matrix is not " + std::string(h.epsilon == 1 ? "" : "skew-") + "hermitian");
  return h;
}

json class_result(const FieldContext& c, const WittClassD& w) {
  return json{{"class", to_json(w)}, {"anisotropic_dim", anisotropic_dim(c, w)}};
}

// one classify item: {"epsilon", "element"} or a form document
json classify_item(const FieldContext& c, const json& item, int epsilon) {
  if (item.is_object() && item.contains("gram")) {
    HermitianForm h = load_form(c, item);
    if (epsilon != 0 && epsilon != h.epsilon) throw EpsilonMismatch("--epsilon disagrees with the form document");
    return class_result(c, class_of_form(h));
  }
  json el = item;
  if (item.is_object() && item.contains("element")) {
    if (item.contains("epsilon")) {
      if (!item.at("epsilon").is_number_integer()) throw MalformedInput("epsilon must be +1 or -1");
      epsilon = item.at("epsilon").get<int>();
    }
    el = item.at("element");
  }
  if (epsilon != 1 && epsilon != -1) throw MalformedInput("classify --element needs --epsilon 1 or -1");
  return class_result(c, classify_line(quat_from_json(c, el), epsilon));
}

int exit_of(const std::exception& e) {
  if (auto* err = dynamic_cast<const Error*>(&e)) return err->severity() == Severity::inconclusive ? kInconclusive : kValidation;
  return kMalformed;
}

int classify_batch(const Config& cfg, const FieldContext& c, json& out) {
  json items = load(cfg.input, "input");
  if (!items.is_array()) throw MalformedInput("--input must hold a JSON array");
  const std::size_t n = items.size();
  std::vector<json> results(n);
  std::vector<int> codes(n, kOk);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < n;) {
      try {
        results[i] = classify_item(c, items[i], cfg.epsilon);
      } catch (const std::exception& e) {
        codes[i] = exit_of(e);
        results[i] = json{{"error", e.what()}, {"exit", codes[i]}};
      }
    }
  };
  const int jobs = std::max(1, std::min<int>(cfg.jobs, static_cast<int>(std::max<std::size_t>(n, 1))));
  std::vector<std::thread> pool;
  for (int k = 1; k < jobs; ++k) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  out = json{{"results", results}};
  int code = kOk;
  for (int k : codes) code = std::max(code, k);
  return code;
}

int cmd_classify(const Config& cfg, json& out) {
  const FieldContext& c = field(cfg);
  if (!cfg.input.empty()) return classify_batch(cfg, c, out);
  if (!cfg.form.empty()) {
    out = classify_item(c, load(cfg.form, "form"), cfg.epsilon);
  } else {
    if (cfg.epsilon == 0) throw MalformedInput("classify --element needs --epsilon 1 or -1");
    out = class_result(c, classify_line(quat_from_json(c, load(cfg.element, "element")), cfg.epsilon));
  }
  return kOk;
}

int cmd_decompose(const Config& cfg, json& out) {
  const FieldContext& c = field(cfg);
  HermitianForm h = load_form(c, load(cfg.form, "form"));
  WittDecomposition d = witt_decompose(h);
  json an = json::array();
  for (const auto& x : d.anisotropic.entries) an.push_back(to_json(x));
  out = json{{"witt_index", d.witt_index}, {"anisotropic", an}, {"witt_class", to_json(class_of_diagonal(d.anisotropic))}};
  return kOk;
}

EDForm load_pair(const Config& cfg, const FieldContext& c) {
  HermitianForm h = load_form(c, load(cfg.form, "form"));
  DMatrix beta = dmatrix_from_json(c, load(cfg.beta, "beta"));
  return compute_htilde_beta(h, beta);
}

int cmd_tower(const Config& cfg, json& out) {
  const FieldContext& c = field(cfg);
  WittTower tw = witt_tower_of(load_pair(cfg, c));
  HermitianForm tr = trace_transfer(tw.form, lambda_beta(c));
  out = json{{"E", json{{"c", to_json(tw.form.E->c())}, {"ramified", tw.form.E->ramified()}}},
             {"tower_class", to_json(tw.at_e)},
             {"trace_class", to_json(class_of_form(tr))}};
  return kOk;
}

int cmd_transfer(const Config& cfg, json& out) {
  const FieldContext& c = field(cfg);
  EDForm f = load_pair(cfg, c);
  HermitianForm tr = trace_transfer(f, lambda_beta(c));
  out = to_json(tr);
  out["witt_class"] = to_json(class_of_form(tr));
  return kOk;
}

int cmd_endo(const std::string& action, const Config& cfg, json& out) {
  json doc = load(cfg.input, "input");
  if (action == "validate") {
    EndoParameter fm = endo_parameter_from_json(doc);
    Verdict v = validate(fm);
    out = json{{"valid", v.ok}, {"diagnostics", v.diagnostics}};
    if (v.ok) {
      out["degree"] = degree(fm);
      out["lift"] = lift(fm);
    }
    return v.ok ? kOk : kValidation;
  }
  LiftInput in = lift_input_from_json(doc);
  if (action == "enumerate") {
    auto all = enumerate(in);
    json ps = json::array();
    for (const auto& fm : all) ps.push_back(to_json(fm));
    out = json{{"count", all.size()}, {"parameters", ps}};
    return kOk;
  }
  out = json{{"count", count(in)}};
  return kOk;
}

int cmd_selftest(const Config& cfg, json& out) {
  field(cfg);
  SelftestReport r = run_selftest(cfg.prime, cfg.precision, cfg.seed);
  json suites = json::array();
  for (const auto& s : r.suites) {
    json j{{"module", s.module}, {"suite", s.suite}, {"passed", s.passed}, {"failed", s.failed},
           {"inconclusive", s.inconclusive}, {"total", s.total()}};
    if (s.failed) j["first_failure"] = s.first_failure;
    suites.push_back(j);
  }
  out = json{{"prime", r.prime}, {"precision", r.precision}, {"seed", std::to_string(r.seed)}, {"suites", suites}, {"ok", r.ok()}};
  return r.ok() ? kOk : kValidation;
}

}  // namespace

int main(int argc, char** argv) {
  Config cfg;
  if (const char* env = std::getenv("HERMIWITT_PRECISION")) {
    try {
      cfg.precision = std::stoi(env);
    } catch (const std::exception&) {
      std::cerr << "hermiwitt: HERMIWITT_PRECISION is not an integer\n";
      return kMalformed;
    }
  }

  CLI::App app{"Witt groups and hermitian forms over the p-adic quaternion division algebra"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--prime", cfg.prime, "odd prime p")->capture_default_str();
  app.add_option("--precision", cfg.precision, "absolute p-adic precision N (env HERMIWITT_PRECISION)")->capture_default_str();
  app.add_option("--seed", cfg.seed, "seed for randomized suites")->capture_default_str();

  auto* classify = app.add_subcommand("classify", "Witt class of a line <d> or of a form");
  classify->add_option("--epsilon", cfg.epsilon, "+1 or -1")->check(CLI::IsMember({1, -1}));
  classify->add_option("--element", cfg.element, "D-element (file or inline JSON)");
  classify->add_option("--form", cfg.form, "form document (file or inline JSON)");
  classify->add_option("--input", cfg.input, "batch: array of elements / forms");
  classify->add_option("--jobs", cfg.jobs, "batch worker threads")->check(CLI::PositiveNumber);

  auto* decompose = app.add_subcommand("decompose", "Witt decomposition of a form");
  decompose->add_option("--form", cfg.form)->required();

  auto* tower = app.add_subcommand("tower", "Witt tower of (h, beta) and its trace class");
  auto* transfer = app.add_subcommand("transfer", "trace transfer of the lift of (h, beta)");
  for (auto* sc : {tower, transfer}) {
    sc->add_option("--form", cfg.form)->required();
    sc->add_option("--beta", cfg.beta, "skew-adjoint quadratic D-matrix")->required();
  }

  std::string endo_action;
  auto* endo = app.add_subcommand("endo", "endo-parameters: validate | enumerate | count");
  endo->add_option("action", endo_action)->required()->check(CLI::IsMember({"validate", "enumerate", "count"}));
  endo->add_option("--input", cfg.input)->required();
  std::map<CLI::App*, std::string> endo_aliases;
  for (const char* a : {"validate", "enumerate", "count"}) {
    auto* sc = app.add_subcommand(std::string("endo-") + a, std::string("same as endo ") + a);
    sc->add_option("--input", cfg.input)->required();
    endo_aliases[sc] = a;
  }

  auto* selftest = app.add_subcommand("selftest", "run every invariant suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "hermiwitt: " << e.what() << "\n";
    return kMalformed;
  }

  json out;
  int code = kOk;
  try {
    if (classify->parsed()) {
      if (cfg.element.empty() + cfg.form.empty() + cfg.input.empty() != 2)
        throw MalformedInput("classify takes exactly one of --element, --form, --input");
      code = cmd_classify(cfg, out);
    } else if (decompose->parsed()) {
      code = cmd_decompose(cfg, out);
    } else if (tower->parsed()) {
      code = cmd_tower(cfg, out);
    } else if (transfer->parsed()) {
      code = cmd_transfer(cfg, out);
    } else if (endo->parsed()) {
      code = cmd_endo(endo_action, cfg, out);
    } else if (selftest->parsed()) {
      code = cmd_selftest(cfg, out);
    } else {
      for (const auto& [sc, a] : endo_aliases)
        if (sc->parsed()) code = cmd_endo(a, cfg, out);
    }
  } catch (const json::exception& e) {
    std::cerr << "hermiwitt: malformed input: " << e.what() << "\n";
    return kMalformed;
  } catch (const std::exception& e) {
    std::cerr << "hermiwitt: " << e.what() << "\n";
    return exit_of(e);
  }
  std::cout << out.dump() << "\n";
  if (code != kOk && out.contains("diagnostics")) {
    for (const auto& d : out.at("diagnostics")) std::cerr << "hermiwitt: " << d.get<std::string>() << "\n";
  }
  return code;
}
