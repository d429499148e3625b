// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "soclelab/catalog.hpp"
#include "soclelab/report.hpp"

using namespace soclelab;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<GroupSource> load_catalog(const std::vector<CatalogEntry>& entries) {
  std::vector<GroupSource> out;
  for (const auto& e : entries) out.push_back(parse_group_spec(e.spec));
  return out;
}

std::uint32_t derived_prime(const FiniteGroup& g) { return default_prime(g); }

Outcome criterion1() {
  const auto t0 = std::chrono::steady_clock::now();
  const FiniteGroup g = sl2_group(3);
  GroupContext ctx = GroupContext::build(g, 2);
  CosetDecomposition cd = socle_coset_decomposition(ctx.algebra, ctx.socle, ctx.sf.sylow, *ctx.sf.hall);
  TheoremCReport c = check_theorem_C(ctx);
  const bool chg_is_h =
      centralizer(g, subgroup_generators(g, ctx.sf.second_derived), *ctx.sf.hall) == *ctx.sf.hall;
  const double secs = seconds_since(t0);
  Outcome o;
  o.pass = ctx.ideal.direct && ctx.ideal.criterion && ctx.socle.dim() == 3 &&
           cd.dims == std::vector<std::size_t>{1, 1, 1} && c.applicable && c.cond_agl && c.cond_chg && chg_is_h &&
           c.cond_camina && c.predicted && c.direct && secs < 1.0;
  std::ostringstream d;
  d << "dims (" << ctx.algebra.class_count() << ", " << ctx.jacobson.dim() << ", " << ctx.socle.dim()
    << "), coset dims (" << cd.dims[0] << "," << cd.dims[1] << "," << cd.dims[2] << "), " << secs << " s";
  o.detail = d.str();
  return o;
}

Outcome criterion2() {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  for (std::uint64_t q : {3u, 4u, 5u, 7u, 8u, 9u}) {
    const FiniteGroup g = agl1_group(q);
    GroupAlgebra A(g, prime_power(q)->first);
    CentralSubspace soc = socle_center(A);
    const bool ideal = is_socle_ideal(A, soc).direct;
    const bool frob = is_frobenius_with_kernel(g, derived_subgroup(g));
    if (!ideal || soc.dim() != q - 1 || !frob) {
      o.pass = false;
      o.detail += "q=" + std::to_string(q) + " failed; ";
    }
  }
  const double secs = seconds_since(t0);
  if (secs >= 5.0) o.pass = false;
  o.detail += "q in {3,4,5,7,8,9}, " + std::to_string(secs) + " s";
  return o;
}

Outcome criterion3(const std::vector<GroupSource>& cat) {
  Outcome o;
  std::size_t pairs = 0, agree = 0, max_order = 0;
  for (const auto& s : cat) {
    max_order = std::max(max_order, s.group.order());
    for (std::uint32_t p : prime_divisors(s.group.order())) {
      ++pairs;
      try {
        GroupAlgebra A(s.group, p);
        IdealVerdict v = is_socle_ideal(A);
        agree += v.direct == v.criterion;
      } catch (const consistency_failure&) {
      }
    }
  }
  o.pass = agree == pairs && cat.size() >= 30 && max_order <= 288;
  o.detail = std::to_string(agree) + "/" + std::to_string(pairs) + " (group, prime) pairs agree over " +
             std::to_string(cat.size()) + " groups, max order " + std::to_string(max_order);
  return o;
}

Outcome criterion4(const std::vector<GroupSource>& cat) {
  Outcome o;
  std::size_t checked = 0, equal = 0;
  for (const auto& s : cat)
    for (std::uint32_t p : prime_divisors(s.group.order())) {
      if (!check_standing_form(s.group, p).holds()) continue;
      GroupAlgebra A(s.group, p);
      ++checked;
      equal += Subspace::span(p, A.class_count(), jrad_basis_lemma25(A)) == nilradical_center(A).space;
    }
  o.pass = checked > 0 && equal == checked;
  o.detail = std::to_string(equal) + "/" + std::to_string(checked) + " standing-form cases";
  return o;
}

Outcome criterion5() {
  Outcome o;
  std::size_t cases = 0;
  for (const FiniteGroup& g0 : {sl2_group(3), agl1_group(4)}) {
    const bool base = socle_is_ideal(g0, 2);
    for (std::size_t m : {3u, 5u, 7u}) {
      ++cases;
      if (socle_is_ideal(direct_product({g0, cyclic_group(m)}), 2) != base) o.pass = false;
    }
  }
  o.detail = std::to_string(cases) + " products G0 x C_m at p = 2";
  return o;
}

Outcome criterion6() {
  Outcome o;
  std::size_t cases = 0;
  for (const char* spec : {"central(SL2(3),SL2(3))", "central(Q8,Q8)", "central(SL2(3),Q8)", "central(Q8,D8)",
                           "central(SL2(3),C4)", "central(Q8,C4)", "central(Q16,Q8)"}) {
    GroupSource s = parse_group_spec(spec);
    for (std::uint32_t p : prime_divisors(s.group.order())) {
      ++cases;
      bool conj = true;
      for (const auto& f : s.factors) conj = conj && socle_is_ideal(f.group, p);
      if (conj != socle_is_ideal(s.group, p)) {
        o.pass = false;
        o.detail += std::string(spec) + " p=" + std::to_string(p) + " differs; ";
      }
    }
  }
  o.detail += std::to_string(cases) + " (central product, prime) cases";
  return o;
}

Outcome criterion7(const std::vector<GroupSource>& cat) {
  Outcome o;
  std::size_t groups = 0, patterns = 0;
  for (const auto& s : cat)
    for (std::uint32_t p : prime_divisors(s.group.order())) {
      GroupContext ctx = GroupContext::build(s.group, p);
      if (!ctx.ideal_setting()) continue;
      ++groups;
      DDecomposition dd = decompose_D(ctx);
      CheckList cl = check_theorem_A(ctx, dd);
      if (cl.failures()) {
        o.pass = false;
        o.detail += s.descriptor + " failed; ";
      }
      if (dd.t.order() <= 256) {
        const Check* c = cl.find("support_pattern_conjugacy_in_T");
        if (!c || !c->passed) o.pass = false;
        ++patterns;
      }
    }
  o.detail += std::to_string(groups) + " ideal standing-form cases, " + std::to_string(patterns) +
              " exhaustive support-pattern checks";
  return o;
}

Outcome criterion8() {
  GroupContext ctx = GroupContext::build(central_product_of_centers(sl2_group(3), sl2_group(3)), 2);
  DDecomposition dd = decompose_D(ctx);
  CentralProductSplit split = split_central_product(ctx, dd);
  Outcome o;
  o.pass = split.components.size() == 2 && split.checks.failures() == 0 &&
           std::all_of(split.component_ideal.begin(), split.component_ideal.end(), [](bool b) { return b; });
  for (const char* name : {"component_socle_ideal", "component_derived_sylow_and_Z_equals_second_derived",
                           "component_derived_quotient_minimal_normal", "components_generate_G",
                           "components_pairwise_commute"}) {
    const Check* c = split.checks.find(name);
    if (!c || !c->passed) o.pass = false;
  }
  o.detail = std::to_string(split.components.size()) + " components of SL2(3)*SL2(3)";
  return o;
}

struct TheoremCStats {
  std::size_t applicable = 0, agree = 0, odd = 0, odd_ok = 0;
  std::size_t witnesses = 0, witnesses_ok = 0, paper_setting = 0;
  std::vector<std::string> witness_groups;
};

TheoremCStats theorem_c_stats(const std::vector<GroupSource>& groups) {
  TheoremCStats st;
  for (const auto& s : groups)
    for (std::uint32_t p : prime_divisors(s.group.order())) {
      GroupContext ctx = GroupContext::build(s.group, p);
      TheoremCReport c = check_theorem_C(ctx);
      if (!c.applicable) continue;
      ++st.applicable;
      st.agree += c.predicted == c.direct;
      if (p % 2 == 1) {
        ++st.odd;
        st.odd_ok += !(c.cond_agl && c.cond_camina) || c.cond_chg;
      }
      if (c.witness && c.witness->computed) {
        const WitnessReport& w = *c.witness;
        ++st.witnesses;
        st.paper_setting += w.paper_setting;
        st.witnesses_ok += w.annihilates_radical_basis && w.outside_gprime_fg && w.central;
        st.witness_groups.push_back(s.descriptor + " p=" + std::to_string(p) +
                                    (w.paper_setting ? "" : " (exploratory)"));
      }
    }
  return st;
}

Outcome criterion9(const TheoremCStats& st) {
  Outcome o;
  o.pass = st.applicable > 0 && st.agree == st.applicable && st.odd_ok == st.odd;
  o.detail = "predicted = direct on " + std::to_string(st.agree) + "/" + std::to_string(st.applicable) +
             " applicable cases; odd-p implication on " + std::to_string(st.odd_ok) + "/" + std::to_string(st.odd);
  return o;
}

Outcome criterion10(const TheoremCStats& st) {
  Outcome o;
  o.pass = st.witnesses_ok == st.witnesses;
  std::ostringstream d;
  if (st.paper_setting == 0)
    d << "no group meeting all witness hypotheses exists at the tested orders; ";
  d << st.witnesses_ok << "/" << st.witnesses << " produced witnesses sound";
  for (const auto& g : st.witness_groups) d << "; " << g;
  o.detail = d.str();
  return o;
}

Outcome criterion11(const std::vector<GroupSource>& groups) {
  Outcome o;
  std::size_t failures = 0, rows = 0;
  for (const auto& s : groups)
    for (std::uint32_t p : prime_divisors(s.group.order())) {
      ++rows;
      Analysis a = analyze(s, p, TheoremMode::all);
      failures += a.consistency_failures;
      if (a.consistency_failures) o.detail += s.descriptor + " p=" + std::to_string(p) + "; ";
    }
  o.pass = failures == 0;
  o.detail += std::to_string(failures) + " consistency failures over " + std::to_string(rows) + " rows";
  return o;
}

Outcome criterion12() {
  Outcome o;
  const fs::path dir = fs::temp_directory_path() / "soclelab_acceptance_orders";
  fs::remove_all(dir);
  fs::create_directories(dir);
  for (const auto& [name, spec] : std::vector<std::pair<std::string, std::string>>{
           {"order112.txt", "direct(AGL(1,8),C2)"},
           {"order216.txt", "fpf(He3,8)"},
           {"order224.txt", "direct(AGL(1,8),C4)"}}) {
    std::ofstream f(dir / name);
    write_cayley(f, parse_group_spec(spec).group);
  }
  const std::string cmd = std::string("'") + SOCLELAB_CLI + "' scan --primes natural --format json '" +
                          dir.string() + "' '" + SOCLELAB_STANDIN_DIR + "'";
  FILE* pipe = popen(cmd.c_str(), "r");
  std::string out;
  char buf[4096];
  std::size_t n;
  while (pipe && (n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  const int status = pipe ? pclose(pipe) : -1;
  const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::size_t verdicts = 0, errors = 0;
  std::ostringstream d;
  try {
    auto j = nlohmann::json::parse(out);
    for (const auto& row : j["rows"]) {
      if (row.contains("report")) {
        ++verdicts;
        const auto& r = row["report"];
        const std::size_t order = r["group"]["order"];
        if (order == 112 || order == 216 || order == 224)
          d << order << ": " << (r["standing_form"]["holds"] ? (r["ideal"]["direct"] ? "ideal" : "not ideal")
                                                             : "standing hypotheses not satisfied")
            << "; ";
      } else {
        ++errors;
      }
    }
  } catch (const std::exception& e) {
    o.pass = false;
    d << "unparsable scan output: " << e.what() << "; ";
  }
  o.pass = o.pass && code == 0 && verdicts >= 5 && errors == 1;
  d << verdicts << " verdict rows, " << errors << " row-level error (malformed stand-in file); "
    << "real groups of these orders require user-supplied data";
  o.detail = d.str();
  return o;
}

}  // namespace

int main() {
  const std::vector<GroupSource> cat = load_catalog(default_catalog());
  std::vector<GroupSource> wide = cat;
  for (auto& s : load_catalog(extended_catalog())) wide.push_back(std::move(s));

  const TheoremCStats st = theorem_c_stats(wide);
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"SL2(3) worked example", criterion1},
      {"AGL(1,q) family", criterion2},
      {"ideal test vs containment criterion", [&] { return criterion3(cat); }},
      {"radical basis vs nilradical", [&] { return criterion4(cat); }},
      {"coprime direct factor invariance", criterion5},
      {"central product conjunction", criterion6},
      {"decomposition of G/G''", [&] { return criterion7(cat); }},
      {"central product splitting", criterion8},
      {"affine/Camina criterion", [&] { return criterion9(st); }},
      {"witness soundness", [&] { return criterion10(st); }},
      {"zero consistency failures in scan", [&] { return criterion11(wide); }},
      {"user-supplied orders 112/216/224", criterion12},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::cout << "criterion " << (i + 1) << ": " << (o.pass ? "PASS" : "FAIL") << " - " << criteria[i].first
              << " (" << o.detail << ")\n";
  }
  (void)derived_prime;
  return failed ? 1 : 0;
}
