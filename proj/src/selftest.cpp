#include "hermiwitt/selftest.hpp"

#include <functional>
#include <set>

#include "hermiwitt/endo.hpp"
#include "hermiwitt/errors.hpp"
#include "hermiwitt/morita.hpp"
#include "hermiwitt/sampling.hpp"
#include "hermiwitt/wittclass.hpp"

namespace hermiwitt {

bool SelftestReport::ok() const {
  for (const auto& s : suites)
    if (s.failed) return false;
  return true;
}

bool SelftestReport::any_inconclusive() const {
  for (const auto& s : suites)
    if (s.inconclusive) return true;
  return false;
}

namespace {

// Case bodies return "" on success, otherwise what broke.
using Case = std::function<std::string(int)>;

struct Runner {
  SelftestReport& report;

  void run(const std::string& module, const std::string& suite, int cases, const Case& body) {
    SuiteResult r;
    r.module = module;
    r.suite = suite;
    for (int i = 0; i < cases; ++i) {
      std::string why;
      try {
        why = body(i);
      } catch (const Error& e) {
        if (e.severity() == Severity::inconclusive) {
          ++r.inconclusive;
          continue;
        }
        why = e.what();
      } catch (const std::exception& e) {
        why = e.what();
      }
      if (why.empty()) {
        ++r.passed;
      } else {
        if (!r.failed) r.first_failure = "case " + std::to_string(i) + ": " + why;
        ++r.failed;
      }
    }
    report.suites.push_back(std::move(r));
  }
};

#define CHECK(cond) \
  if (!(cond)) return std::string(#cond)

std::uint64_t mix(std::uint64_t seed, std::uint64_t salt) { return seed * 0x9E3779B97F4A7C15ULL + salt; }

void padic_suites(Runner& run, const FieldContext& c, std::uint64_t seed) {
  Sampler s(c, mix(seed, 1));
  run.run("padic", "valuation_additive", 200, [&](int) {
    Padic x = s.element(-3, 3), y = s.element(-3, 3);
    CHECK((x * y).valuation() == x.valuation() + y.valuation());
    Padic z = x + y;
    if (!z.is_zero()) {
      CHECK(z.valuation() >= std::min(x.valuation(), y.valuation()));
      if (x.valuation() != y.valuation()) CHECK(z.valuation() == std::min(x.valuation(), y.valuation()));
    }
    return std::string();
  });
  run.run("padic", "square_roots", 100, [&](int) {
    Padic x = s.element(-2, 2), x2 = x * x;
    CHECK(is_square(x2));
    CHECK(sqrt(x2) * sqrt(x2) == x2);
    QuadElem l = s.l_element(-2, 2), l2 = l * l;
    CHECK(is_square(l2));
    CHECK(sqrt(l2) * sqrt(l2) == l2);
    Padic a = s.unit(), b = s.unit();
    CHECK(is_square(a * b) == (is_square(a) == is_square(b)));
    return std::string();
  });
  const long p = c.prime(), r = c.nonresidue();
  std::vector<QuadFieldPtr> fields;
  for (long v : {r, p, r * p}) fields.push_back(std::make_shared<const QuadField>(Padic(c, v), "E"));
  run.run("padic", "norm_equations", 60, [&](int i) {
    const auto& E = fields[static_cast<std::size_t>(i) % fields.size()];
    QuadElem x(E, s.maybe_zero(-2, 2), s.element(-2, 2));
    Padic t = x.norm();
    CHECK(is_norm(t, *E));
    CHECK(solve_norm_equation(E, t).norm() == t);
    return std::string();
  });
}

void quaternion_suites(Runner& run, const FieldContext& c, std::uint64_t seed) {
  Sampler s(c, mix(seed, 2));
  run.run("quaternion", "rho_and_norms", 200, [&](int) {
    Quat x = s.quat(-2, 3), y = s.quat(-2, 3);
    CHECK((x * y).rho() == y.rho() * x.rho());
    CHECK(x.rho().rho() == x);
    CHECK((x * y).nrd() == x.nrd() * y.nrd());
    CHECK(x.trd() == x.rho().trd());
    CHECK(x.nu_D() == x.nrd().valuation());
    CHECK(x * x.inverse() == Quat::one(c));
    CHECK(x * x.conj() == Quat::from_F(x.nrd()));
    return std::string();
  });
  run.run("quaternion", "associativity", 100, [&](int) {
    Quat x = s.quat(0, 2), y = s.quat(0, 2), z = s.quat(0, 2);
    CHECK((x * y) * z == x * (y * z));
    return std::string();
  });
  const Padic half = Padic::rational(c, 1, 2);
  run.run("quaternion", "symmetric_skew_split", 100, [&](int) {
    Quat x = s.quat(-1, 2);
    Quat sym = (x + x.rho()) * half, sk = (x - x.rho()) * half;
    CHECK(sym + sk == x);
    if (!sym.is_zero()) CHECK(symmetry_type(sym) == SymmetryType::symmetric);
    if (!sk.is_zero()) CHECK(symmetry_type(sk) == SymmetryType::skew);
    return std::string();
  });
}

void hermitian_suites(Runner& run, const FieldContext& c, std::uint64_t seed) {
  Sampler s(c, mix(seed, 3));
  auto rank = [&] { return static_cast<std::size_t>(s.uniform(1, 3)); };
  run.run("hermitian", "diagonalize_certifies_congruence", 30, [&](int i) {
    HermitianForm h = s.form(i % 2 ? 1 : -1, rank());
    Diagonalization d = diagonalize(h);
    CHECK(congruence(h, d.transform).gram == d.reduced);
    return std::string();
  });
  run.run("hermitian", "trace_lift", 20, [&](int i) {
    HermitianForm h = s.form(i % 2 ? 1 : -1, rank());
    LMatrix hl = trace_lift_hL(h);
    for (int k = 0; k < 5; ++k) {
      DMatrix v = s.vector(h.rank(), -1, 2), w = s.vector(h.rank(), -1, 2);
      CHECK(l_bilinear(hl, l_coordinates(v), l_coordinates(w)).trace() == evaluate(h, v, w).trd());
    }
    return std::string();
  });
  run.run("hermitian", "cayley_reduced_norm_one", 30, [&](int i) {
    HermitianForm h = s.form(i % 2 ? 1 : -1, static_cast<std::size_t>(1 + i % 3));
    DMatrix g = cayley_isometry(s.skew_adjoint(h), h);
    CHECK(is_isometry(g, h));
    Padic nrd = reduced_norm(g);
    CHECK(nrd == Padic(c, 1));
    CHECK(nrd.precision() >= c.precision() - 8);
    return std::string();
  });
  run.run("hermitian", "witt_decompose_invariance", 20, [&](int i) {
    int eps = i % 2 ? 1 : -1;
    HermitianForm h = s.form(eps, rank());
    auto a = witt_decompose(h);
    auto b = witt_decompose(congruence(h, s.invertible(h.rank())));
    CHECK(a.witt_index == b.witt_index);
    CHECK(class_of_diagonal(a.anisotropic) == class_of_diagonal(b.anisotropic));
    auto h2 = witt_decompose(orthogonal_sum(h, hyperbolic_plane(c, eps)));
    CHECK(h2.witt_index == a.witt_index + 1);
    return std::string();
  });
}

void wittclass_suites(Runner& run, const FieldContext& c, std::uint64_t seed) {
  Sampler s(c, mix(seed, 4));
  run.run("wittclass", "group_orders", 1, [&](int) {
    std::set<WittClassD> sym, skew;
    for (int i = 0; i < 300; ++i) {
      sym.insert(classify_line(s.symmetric(-3, 3), 1));
      skew.insert(classify_line(s.skew(-3, 3), -1));
    }
    CHECK(sym.size() == 3);
    std::set<WittClassD> group{WittClassD::hyperbolic(1)};
    for (bool grew = true; grew;) {
      grew = false;
      for (const auto& a : std::set<WittClassD>(group))
        for (const auto& b : sym) grew |= group.insert(a + b).second;
    }
    CHECK(group.size() == 8);
    skew.insert(WittClassD::hyperbolic(-1));
    CHECK(skew.size() == 2);
    return std::string();
  });
  run.run("wittclass", "scaling_invariance", 200, [&](int i) {
    int eps = i % 2 ? 1 : -1;
    Quat d = s.line(eps, -2, 3);
    CHECK(classify_line(d, eps) == classify_line(d * s.element(-3, 3), eps));
    return std::string();
  });
  run.run("wittclass", "congruence_invariance", 100, [&](int) {
    Quat d = s.symmetric(-2, 3);
    Quat t = s.symmetric(0, 2).shift((d.nu_D() + 2) / 2 + 1);
    Quat d2 = d + t;
    CHECK((d.inverse() * t).nu_D() >= 1);
    CHECK(congruent_mod_nuD(d, d2));
    CHECK(classify_line(d, 1) == classify_line(d2, 1));
    return std::string();
  });
  run.run("wittclass", "oracle_concordance", 100, [&](int) {
    Quat d = s.symmetric(-2, 2), d2 = s.symmetric(-2, 2);
    bool same = classify_line(d, 1) == classify_line(d2, 1);
    CHECK(same == is_isotropic(DiagonalForm{1, {d, -d2}}));
    if (equivalence_oracle(d, d2)) CHECK(same);
    return std::string();
  });
  run.run("wittclass", "class_of_form_congruence", 20, [&](int i) {
    HermitianForm h = s.form(i % 2 ? 1 : -1, static_cast<std::size_t>(s.uniform(1, 3)));
    CHECK(class_of_form(h) == class_of_form(congruence(h, s.invertible(h.rank()))));
    return std::string();
  });
}

void morita_suites(Runner& run, const FieldContext& c, std::uint64_t seed) {
  Sampler s(c, mix(seed, 5));
  // E = L and E = F[pi_D]
  std::vector<QuadFieldPtr> fields{std::make_shared<const QuadField>(Padic(c, c.nonresidue()), "L"),
                                   std::make_shared<const QuadField>(Padic(c, c.prime()), "F[pi_D]")};
  std::vector<SplitData> splits{SplitData(fields[0]), SplitData(fields[1])};
  auto pick = [&](int i) -> const SplitData& { return splits[static_cast<std::size_t>(i) % 2]; };
  auto rank = [&] { return static_cast<std::size_t>(s.uniform(1, 3)); };
  run.run("morita", "splitting_relations", 8, [&](int i) {
    SplitData sd(fields[static_cast<std::size_t>(i) % 2], i / 2);
    CHECK(sd.check_relations() == 0);
    return std::string();
  });
  run.run("morita", "roundtrip", 20, [&](int i) {
    const SplitData& sd = pick(i);
    EForm hE = s.e_form(sd.field(), (i / 2) % 2 ? 1 : -1, rank());
    EDForm g = functor_Ge(hE, sd);
    CHECK(validate(g.h));
    FunctorResult back = functor_Fe(g, sd.idempotent(0));
    CHECK(back.form.rank() == hE.rank());
    CHECK(e_class(back.form) == e_class(hE));
    return std::string();
  });
  run.run("morita", "scaling_law", 10, [&](int i) {
    const SplitData& sd = pick(i);
    EDForm g = functor_Ge(s.e_form(sd.field(), (i / 2) % 2 ? 1 : -1, rank()), sd);
    EDElem e = sd.idempotent_for_line(s.e_line(sd)), f = sd.idempotent_for_line(s.e_line(sd));
    Similitude sim = similitude_scale(sd, e, f);
    CHECK(sim.g * sim.g.involution() == EDElem::scalar(QuadElem::from_base(sd.field(), sim.s), c));
    CHECK(sim.g * e == f * sim.g);
    WittClassE at_f = e_class(functor_Fe(g, f).form);
    CHECK(at_f == e_scale_class(*sd.field(), e_class(functor_Fe(g, e).form), sim.s.inverse()));
    return std::string();
  });
  run.run("morita", "splitting_independence", 10, [&](int i) {
    const SplitData& sd = pick(i);
    SplitData other(sd.field(), 1);
    EDForm g = functor_Ge(s.e_form(sd.field(), (i / 2) % 2 ? 1 : -1, rank()), sd);
    WittTower t0 = witt_tower_of(g, 0), t1 = witt_tower_of(g, 1);
    CHECK(t0.at(other.idempotent(0)) == t1.at_e);
    CHECK(t0.anisotropic_dim() == t1.anisotropic_dim());
    return std::string();
  });
  run.run("morita", "trace_transfer_collapse", 10, [&](int i) {
    const SplitData& sd = pick(i);
    const int eps = (i / 2) % 2 ? 1 : -1;
    const Lambda lam = lambda_beta(c);
    auto traced = [&](const EForm& h) { return class_of_form(trace_transfer(functor_Ge(h, sd), lam)); };
    EForm plane = e_representative(sd.field(), WittClassE{eps, false, true});
    EForm hE = s.e_form(sd.field(), eps, rank());
    CHECK(traced(plane).is_hyperbolic());
    CHECK(traced(hE) == traced(e_orthogonal_sum(hE, plane)));
    return std::string();
  });
}

void endo_suites(Runner& run, std::uint64_t seed) {
  std::mt19937_64 rng(mix(seed, 6));
  run.run("endo", "count_closed_form", 100, [&](int i) {
    EndoParameter fm = random_parameter(rng, i % 3 ? 1 : -1);
    LiftInput in = lift_input_of(fm);
    auto all = enumerate(in);
    CHECK(static_cast<long>(all.size()) == count_closed_form(in));
    CHECK(count(in) == count_closed_form(in));
    for (const auto& g : all) {
      CHECK(validate(g).ok);
      CHECK(lift(g) == lift(fm));
    }
    return std::string();
  });
  run.run("endo", "selector_flip", 100, [&](int i) {
    EndoParameter fm = random_parameter(rng, i % 3 ? 1 : -1);
    CHECK(validate(fm).ok);
    for (std::size_t k = 0; k < fm.support.size(); ++k) {
      const auto& t = fm.support[k].f2.tower;
      if (fm.support[k].token.kind != TokenKind::simple_nonnull || t.hyperbolic || t.diman != 1) continue;
      EndoParameter g = fm;
      g.support[k].f2.tower.selector ^= 1;
      CHECK(validate(g).ok);
    }
    return std::string();
  });
  auto uni = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  std::vector<EndoClassToken> toks(3);
  for (int k = 0; k < 3; ++k) {
    toks[static_cast<std::size_t>(k)].id = std::string(1, static_cast<char>('a' + k));
    toks[static_cast<std::size_t>(k)].degree = k == 2 ? 4 : 2;
    toks[static_cast<std::size_t>(k)].min_tr = "m0";
    toks[static_cast<std::size_t>(k)].odd_trace = {k == 2 ? "galpha" : "g1"};
  }
  auto draw = [&]() -> WittTypeRef {
    int v = uni(0, 4);
    if (v == 4) return {std::nullopt, Tower::null(WittClassD(1, WittClassD::kPi))};
    Tower tw = v == 0 ? Tower::hyp() : v == 1 ? Tower::simple(2, 1) : Tower::simple(1, v - 2);
    return {toks[static_cast<std::size_t>(uni(0, 2))], tw};
  };
  run.run("endo", "witt_type_equivalence", 100, [&](int) {
    WittTypeRef x = draw(), y = draw(), z = draw();
    CHECK(witt_type_equiv(x, x, 1));
    CHECK(witt_type_equiv(x, y, 1) == witt_type_equiv(y, x, 1));
    if (witt_type_equiv(x, y, 1) && witt_type_equiv(y, z, 1)) CHECK(witt_type_equiv(x, z, 1));
    return std::string();
  });
}

#undef CHECK

}  // namespace

SelftestReport run_selftest(long prime, int precision, std::uint64_t seed) {
  const FieldContext& c = FieldContext::get(prime, precision);
  SelftestReport report{prime, precision, seed, {}};
  Runner run{report};
  padic_suites(run, c, seed);
  quaternion_suites(run, c, seed);
  hermitian_suites(run, c, seed);
  wittclass_suites(run, c, seed);
  morita_suites(run, c, seed);
  endo_suites(run, seed);
  return report;
}

}  // namespace hermiwitt
