#pragma once

// Full per-group analysis and its canonical JSON report.
//
// The report object has sorted keys and contains nothing run-dependent;
// timing is returned next to it so that two runs can be diffed directly.

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"
#include "soclelab/group_io.hpp"
#include "soclelab/structure.hpp"

namespace soclelab {

inline constexpr int kSchemaVersion = 1;

enum class TheoremMode { all, none, automatic };

inline TheoremMode parse_theorem_mode(const std::string& s) {
  if (s == "all") return TheoremMode::all;
  if (s == "none") return TheoremMode::none;
  if (s == "auto") return TheoremMode::automatic;
  throw invalid_input("theorem mode must be all, none or auto");
}

/// Smallest prime dividing |G'|, or |G| when G is abelian.
inline std::uint32_t default_prime(const FiniteGroup& g) {
  Subgroup d = derived_subgroup(g);
  const std::size_t n = d.order() > 1 ? d.order() : g.order();
  if (n == 1) throw unsupported_input("the trivial group has no natural prime");
  return prime_divisors(n).front();
}

struct Analysis {
  nlohmann::json report;
  double millis = 0;
  std::size_t consistency_failures = 0;
  bool ideal = false;
  bool standing_form = false;
  std::optional<bool> theorem_c_applicable;
  bool witness_computed = false;
};

namespace detail {

inline nlohmann::json to_json(const CheckList& cl) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : cl.items()) {
    nlohmann::json j{{"name", c.name}, {"passed", c.passed}, {"asserted", c.asserted}};
    if (!c.detail.empty()) j["detail"] = c.detail;
    arr.push_back(std::move(j));
  }
  return arr;
}

inline nlohmann::json rows_json(const Subspace& s) {
  nlohmann::json arr = nlohmann::json::array();
  for (std::size_t r = 0; r < s.dim(); ++r) arr.push_back(s.basis().row_vec(r));
  return arr;
}

inline std::optional<nlohmann::json> opt_elem(const std::optional<Elem>& e) {
  if (!e) return std::nullopt;
  return nlohmann::json(*e);
}

/// Checks on the algebra side that only need the standing form.
inline CheckList algebra_checks(const GroupContext& ctx) {
  CheckList out;
  const GroupAlgebra& A = ctx.algebra;
  const StandingForm& sf = ctx.sf;
  const FiniteGroup& g = ctx.group();
  const bool standing = sf.holds();
  const bool ideal = ctx.ideal_setting();

  out.add("ideal_test_matches_containment_criterion", ctx.ideal.direct == ctx.ideal.criterion, true);
  Subspace lemma = Subspace::span(A.p(), A.class_count(), jrad_basis_lemma25(A));
  out.add("radical_basis_spans_nilradical", lemma == ctx.jacobson.space, standing,
          "dim " + std::to_string(lemma.dim()) + " vs " + std::to_string(ctx.jacobson.dim()));
  out.add("socle_is_ideal_of_center", is_ideal_of_center(A, ctx.socle.space), true);

  if (!standing) return out;
  const Subspace soc_fg = expand_subspace(A, ctx.socle.space);
  out.add("socle_equals_gprime_plus_fg", soc_fg == gprime_plus_fg(A), ideal,
          "dim soc " + std::to_string(ctx.socle.dim()) + ", [G:G'] " +
              std::to_string(g.order() / sf.derived.order()));
  out.add("frattini_of_gprime_central_in_gprime",
          frattini_of_p_group(g, sf.derived, sf.p).subset_of(sf.center_of_derived), ideal);
  bool constant = true;
  for (std::size_t r = 0; r < soc_fg.dim(); ++r)
    for (Elem z : sf.center_of_derived.elements())
      if (soc_fg.basis().at(r, z) != soc_fg.basis().at(r, 0)) constant = false;
  out.add("socle_constant_on_Z(G')", constant, ideal);

  const Subgroup& H = *sf.hall;
  out.add("C_G(G')_equals_Z(G')", centralizer(g, sf.derived, whole_group(g)) == sf.center_of_derived, ideal);
  out.add("C_G'(H)_equals_Z(G)", centralizer(g, H, sf.derived) == center(g), ideal);
  QuotientMap pi = quotient(g, sf.second_derived);
  Subgroup dprime = pi.image(sf.derived);
  Subgroup hbar = pi.image(H);
  out.add("C_D'(H)_trivial", centralizer(pi.target, hbar, dprime).is_trivial(), ideal);
  out.add("C_H(D')_trivial", centralizer(pi.target, dprime, hbar).is_trivial(), ideal);

  if (is_frobenius_with_kernel(g, sf.sylow)) {
    // Frobenius with kernel the Sylow subgroup.
    const bool abelian_kernel = as_group(g, sf.derived).group.is_abelian();
    if (ctx.ideal.direct) out.add("frobenius_ideal_implies_abelian_kernel", abelian_kernel, true);
    if (abelian_kernel) out.add("frobenius_abelian_kernel_implies_ideal", ctx.ideal.direct, true);
  }
  return out;
}

}  // namespace detail

/// Runs every computation and check that applies to (G, p) under `mode`.
inline Analysis analyze(const GroupSource& src, std::uint32_t p, TheoremMode mode = TheoremMode::automatic) {
  using nlohmann::json;
  const auto t0 = std::chrono::steady_clock::now();
  check_modulus(p);
  const FiniteGroup& g = src.group;
  Analysis out;
  json& r = out.report;
  CheckList checks;
  r["schema_version"] = kSchemaVersion;
  r["p"] = p;

  GroupContext ctx = [&] {
    try {
      return GroupContext::build(g, p);
    } catch (const consistency_failure& e) {
      // The verdicts disagreed; recompute without the agreement guard.
      checks.add("ideal_test_matches_containment_criterion", false, true, e.what());
      GroupAlgebra A(g, p);
      CentralSubspace jac = nilradical_center(A);
      CentralSubspace soc = socle_center(A, jac);
      Subspace fg = expand_subspace(A, soc.space);
      IdealVerdict v{is_ideal_in_fg(A, fg), gprime_plus_fg(A).contains(fg)};
      return GroupContext{check_standing_form(g, p), std::move(A), std::move(jac), std::move(soc), v};
    }
  }();
  const StandingForm& sf = ctx.sf;
  out.ideal = ctx.ideal.direct;
  out.standing_form = sf.holds();

  r["group"] = {{"descriptor", src.descriptor},
                {"order", g.order()},
                {"abelian", g.is_abelian()},
                {"derived_order", sf.derived.order()},
                {"second_derived_order", sf.second_derived.order()},
                {"center_order", center(g).order()},
                {"center_of_derived_order", sf.center_of_derived.order()}};
  r["algebra"] = {{"class_count", ctx.algebra.class_count()},
                  {"class_sizes", [&] {
                     json a = json::array();
                     for (const auto& c : ctx.algebra.classes()) a.push_back(c.size());
                     return a;
                   }()},
                  {"dim_center", ctx.algebra.class_count()},
                  {"dim_jacobson", ctx.jacobson.dim()},
                  {"dim_socle", ctx.socle.dim()},
                  {"socle_basis", detail::rows_json(ctx.socle.space)}};
  r["ideal"] = {{"direct", ctx.ideal.direct}, {"criterion", ctx.ideal.criterion}};
  r["standing_form"] = {{"holds", sf.holds()},
                        {"gprime_is_sylow", sf.gprime_is_sylow},
                        {"hall_complement", sf.hall.has_value()},
                        {"h_abelian", sf.h_abelian},
                        {"op_prime_trivial", sf.op_prime_trivial},
                        {"z_gprime_equals_gsecond", sf.z_gprime_equals_gsecond}};
  r["theorem_mode"] = mode == TheoremMode::all ? "all" : mode == TheoremMode::none ? "none" : "auto";

  auto guarded = [&](const char* section, auto&& fn) {
    try {
      fn();
    } catch (const unsupported_input& e) {
      r["skipped"][section] = e.what();
    } catch (const consistency_failure& e) {
      checks.add(std::string(section) + "_internal", false, true, e.what());
    }
  };

  if (mode != TheoremMode::none) {
    checks.append(detail::algebra_checks(ctx));

    // Central and direct products with known factors.
    if (src.central_product && !src.factors.empty()) {
      bool all = true;
      json fv = json::array();
      for (const auto& f : src.factors) {
        const bool v = socle_is_ideal(f.group, p);
        all = all && v;
        fv.push_back({{"descriptor", f.descriptor}, {"ideal", v}});
      }
      r["factors"] = fv;
      checks.add("central_product_verdict_is_conjunction", all == ctx.ideal.direct, true);
    }

    guarded("reduction", [&] {
      ReductionResult red = reduction_pipeline(g, p);
      json steps = json::array();
      for (const auto& s : red.steps)
        steps.push_back({{"step", s.name},
                         {"order_before", s.order_before},
                         {"order_after", s.order_after},
                         {"ideal_before", s.ideal_before},
                         {"ideal_after", s.ideal_after}});
      r["reduction"] = {{"steps", steps}, {"reduced_order", red.reduced.order()}, {"split_holds", red.split_holds}};
      checks.append(red.checks);
    });

    if (sf.holds()) {
      if (sf.hall && sf.sylow.is_normal()) {
        CosetDecomposition cd = socle_coset_decomposition(ctx.algebra, ctx.socle, sf.sylow, *sf.hall);
        r["coset_decomposition"] = {{"representatives", cd.coset_representatives},
                                    {"dims", cd.dims},
                                    {"direct_sum", cd.direct_sum}};
        checks.add("socle_is_sum_over_cosets", cd.direct_sum, ctx.ideal_setting());
      }
      const bool run_a = ctx.ideal.direct || mode == TheoremMode::all;
      if (run_a) {
        guarded("theorem_a", [&] {
          DDecomposition dd = decompose_D(ctx);
          json factors = json::array();
          for (std::size_t i = 0; i < dd.n(); ++i)
            factors.push_back({{"order", dd.factors[i].order()},
                               {"e", detail::opt_elem(dd.e[i]).value_or(json())},
                               {"s", dd.s[i]},
                               {"h", detail::opt_elem(dd.h[i]).value_or(json())},
                               {"m_order", dd.m[i].order()}});
          r["theorem_a"] = {{"n", dd.n()},
                            {"d_order", dd.pi.target.order()},
                            {"d_prime_order", dd.d_prime.order()},
                            {"t_order", dd.t.order()},
                            {"z_d_order", dd.z_d.order()},
                            {"factors", factors}};
          checks.append(check_theorem_A(ctx, dd));
          checks.append(verify_annihilator_lemmas(ctx, dd));
          if (sf.z_gprime_equals_gsecond) {
            CentralProductSplit split = split_central_product(ctx, dd);
            json comps = json::array();
            for (std::size_t i = 0; i < split.components.size(); ++i)
              comps.push_back({{"g", split.g[i]},
                               {"order", split.components[i].order()},
                               {"socle_ideal", static_cast<bool>(split.component_ideal[i])}});
            r["theorem_b"] = {{"components", comps}};
            checks.append(split.checks);
          }
        });
      }
      guarded("theorem_c", [&] {
        TheoremCReport c = check_theorem_C(ctx);
        out.theorem_c_applicable = c.applicable;
        json jc = {{"applicable", c.applicable}};
        if (!c.applicable) jc["reason"] = c.reason;
        if (c.applicable) {
          jc["agl"] = c.cond_agl;
          jc["agl_by_fingerprint"] = c.agl_by_fingerprint;
          jc["centralizer_of_gsecond_nontrivial"] = c.cond_chg;
          jc["camina"] = c.cond_camina;
          jc["predicted"] = c.predicted;
          jc["direct"] = c.direct;
        }
        if (c.witness) {
          const WitnessReport& w = *c.witness;
          out.witness_computed = w.computed;
          json jw = {{"computed", w.computed}, {"g1", w.g1}, {"c_order", w.c_order},
                     {"gsecond_order", w.second_derived_order}};
          if (!w.computed) jw["reason"] = w.reason;
          if (w.h1) jw["h1"] = *w.h1;
          if (w.computed) {
            jw["paper_setting"] = w.paper_setting;
            jw["alpha"] = w.alpha;
            jw["nonzero_coefficients"] = w.nonzero_coefficients;
            jw["well_defined"] = w.well_defined;
            jw["central"] = w.central;
            jw["annihilates_radical_basis"] = w.annihilates_radical_basis;
            jw["in_socle"] = w.in_socle;
            jw["outside_gprime_fg"] = w.outside_gprime_fg;
          }
          jc["witness"] = jw;
        }
        r["theorem_c"] = jc;
        checks.append(c.checks);
      });
    }
  }

  out.consistency_failures = checks.failures();
  r["checks"] = detail::to_json(checks);
  r["consistency_failures"] = out.consistency_failures;
  out.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

}  // namespace soclelab
