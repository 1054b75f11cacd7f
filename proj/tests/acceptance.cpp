// Acceptance driver: one PASS/FAIL line per criterion.

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>

#include "dispcat/corpus.hpp"
#include "dispcat/mutations.hpp"
#include "oracles.hpp"

using namespace dispcat;
namespace fx = dispcat::fixtures;

namespace {

/// Collects failures for one criterion.
struct Check {
  std::vector<std::string> failures;
  std::map<std::string, std::size_t> counts;

  void expect(bool ok, const std::string& what) {
    if (!ok && failures.size() < 5) failures.push_back(what);
    if (!ok) ++counts["failures"];
  }
};

std::vector<std::pair<std::string, Graph>> shapes() {
  return {{"empty", empty_shape()}, {"single", single_node_shape()}, {"discrete2", discrete_two_shape()},
          {"cospan", cospan_shape()}};
}

std::vector<DispCat> random_corpus() {
  random::Rng rng(2024);
  std::vector<DispCat> out;
  for (int i = 0; i < 1000; ++i) out.push_back(random::random_display(rng));
  return out;
}

std::vector<std::pair<std::string, DispCat>> constructions() {
  std::vector<std::pair<std::string, DispCat>> out;
  for (const auto& [name, c] : fx::categories()) {
    out.emplace_back("slice " + name, slice_display(c));
    out.emplace_back("coslice " + name, coslice_display(c));
    out.emplace_back("slicesigma " + name, slice_via_sigma(c));
    out.emplace_back("coslicesigma " + name, coslice_via_sigma(c));
    out.emplace_back("arrow " + name, arrow_display(c));
    out.emplace_back("const " + name, constant_display(c, fx::two()));
    out.emplace_back("fullsub " + name, full_sub_display(c, std::vector<bool>(c.num_objects(), true)));
  }
  for (const auto& [name, d] : fx::displays()) {
    out.emplace_back("op " + name, op_display(d));
    if (d.base() == fx::div12()) out.emplace_back("reindex " + name, reindex(d, fx::lcm3()));
  }
  for (const FunctorData& F : {fx::gcd6(), fx::lcm2(), fx::lcm3()}) {
    out.emplace_back("falg", endofunctor_algebra_display(F));
  }
  out.emplace_back("malg", monad_algebra_display(fx::lcm2_monad()));
  for (const auto& [name, p] : fx::presheaves()) out.emplace_back("elements " + name, presheaf_to_discrete_fibration(p));
  out.emplace_back("sip", sip_to_display(fx::ord2_magmas()));
  DispCat cc = constant_display(fx::two(), fx::two());
  FinCat tc = total_category(cc).cat;
  out.emplace_back("sigma", sigma_display(cc, slice_display(tc)));
  return out;
}

Check criterion1() {
  Check c;
  for (const auto& [name, cat] : fx::categories()) {
    c.expect(check_category_laws(cat).passed() && oracle::is_category(cat), "category " + name);
    MutationSurvey s = survey_mutations(cat);
    c.counts["category mutants"] += s.mutants;
    if (s.composable_pairs >= 3) c.expect(s.all_rejected(), "mutant of " + name + " accepted");
  }
  for (const auto& [name, d] : fx::displays()) {
    c.expect(check_displayed_laws(d).passed(), "display " + name);
    MutationSurvey s = survey_mutations(d);
    c.counts["display mutants"] += s.mutants;
    if (s.composable_pairs >= 3) c.expect(s.all_rejected(), "mutant of " + name + " accepted");
  }
  for (const auto& [name, d] : constructions()) {
    c.expect(check_displayed_laws(d).passed(), "construction " + name);
    c.expect(check_category_laws(total_category(d).cat).passed(), "total of " + name);
    ++c.counts["constructions"];
  }
  return c;
}

Check criterion2() {
  Check c;
  for (const auto& [n1, a] : fx::categories()) {
    for (const auto& [n2, b] : fx::categories()) {
      DispCat dc = constant_display(a, b);
      FunctorData F = constant_product_comparison(a, b, dc, total_category(dc), product(a, b));
      c.expect(check_equivalence(F).passed() && oracle::is_equivalence(F), "const " + n1 + " " + n2);
      ++c.counts["constant"];
    }
  }
  for (const auto& [name, d] : fx::displays()) {
    FinCat t = total_category(d).cat;
    std::vector<DispCat> families{full_sub_display(t, std::vector<bool>(t.num_objects(), true)),
                                  constant_display(t, fx::two())};
    // The slice of a large total category exceeds desk-scale memory.
    if (t.num_morphisms() <= 200) families.push_back(slice_display(t));
    for (const DispCat& e : families) {
      FunctorData F = sigma_comparison(d, e, sigma_display(d, e));
      c.expect(check_equivalence(F).passed() && oracle::is_equivalence(F), "sigma " + name);
      ++c.counts["sigma"];
    }
  }
  for (const auto& [name, cat] : fx::categories()) {
    for (bool co : {false, true}) {
      DispCat direct = co ? coslice_display(cat) : slice_display(cat);
      DispCat via = co ? coslice_via_sigma(cat) : slice_via_sigma(cat);
      FunctorData F = total_functor(slice_comparison(cat, via, direct, co));
      c.expect(check_equivalence(F).passed() && oracle::is_equivalence(F), "slice " + name);
      ++c.counts["slice"];
    }
  }
  return c;
}

Check criterion3() {
  Check c;
  for (const FinCat& cat : {fx::div12(), fx::two()}) {
    DispCat s = slice_display(cat);
    for (DMorIx m = 0; m < s.num_dmors(); ++m) {
      Report r = cartesian_iff_pullback(cat, s, m);
      Square sq = slice_square(cat, s, m);
      const bool cart = oracle::is_cartesian(s, m);
      c.expect(r.passed() && r.flag("cartesian") == cart &&
                   r.flag("pullback") == oracle::is_pullback(cat, sq.f, sq.g, sq.p, sq.q) && cart == r.flag("pullback"),
               s.dmor_label(m));
      if (cat == fx::div12()) ++c.counts[cart ? "div12 cartesian" : "div12 non-cartesian"];
    }
  }
  c.expect(c.counts["div12 cartesian"] > 0 && c.counts["div12 non-cartesian"] > 0, "both verdicts occur in Div12");
  return c;
}

Check criterion4() {
  Check c;
  for (const auto& [name, p] : fx::presheaves()) {
    DispCat d = presheaf_to_discrete_fibration(p);
    Report r = is_discrete_fibration(d);
    c.expect(discrete_fibration_to_presheaf(d) == p, "presheaf round trip " + name);
    c.expect(r.passed() && r.flag("split") && oracle::is_discrete_fibration(d), "elements of " + name);
    c.expect(oracle::display_shape(d) == oracle::elements_shape(p), "elements shape of " + name);
    ++c.counts["presheaves"];
  }
  for (const auto& [name, d] : fx::displays()) {
    if (!oracle::is_discrete_fibration(d)) continue;
    c.expect(presheaf_to_discrete_fibration(discrete_fibration_to_presheaf(d)) == d, "display round trip " + name);
    ++c.counts["discrete displays"];
  }
  c.expect(c.counts["discrete displays"] >= 3, "at least three discrete corpus displays");
  return c;
}

Check criterion5() {
  Check c;
  const std::vector<FunctorData> fs{fx::gcd6(), fx::lcm2(), fx::lcm3()};
  c.expect(fs[0].on_obj != fs[1].on_obj && fs[1].on_obj != fs[2].on_obj && fs[0].on_obj != fs[2].on_obj,
           "endofunctors distinct");
  for (const FunctorData& F : fs) {
    c.expect(oracle::is_functor(F) && F.dom == fx::div12(), "endofunctor on Div12");
    DispCat d = endofunctor_algebra_display(F);
    TotalCategory t = total_category(d);
    for (const auto& [sname, g] : shapes()) {
      c.expect(creates_limits_of_shape(d, g).passed(), "creates " + sname);
      for (const Diagram& dg : enumerate_diagrams(t.cat, g)) {
        ++c.counts["diagrams"];
        for (const Cone& lambda : oracle::limits(project_diagram(d, t, dg))) {
          std::optional<DispCone> w;
          const bool ok = creates_limit(d, t, dg, lambda, &w).passed() && w;
          c.expect(ok && oracle::creates(d, t, dg, lambda), "created limit over " + sname);
          if (!ok) continue;
          Cone k = total_limit_from_creation(d, t, dg, lambda, *w);
          Cone projected{t.projection.on_obj[k.vertex], {}};
          for (MorIx m : k.legs) projected.legs.push_back(t.projection.on_mor[m]);
          c.expect(projected == lambda && oracle::is_limit(dg, k), "projection of created limit over " + sname);
          ++c.counts["created limits"];
        }
      }
    }
  }
  return c;
}

Check criterion6(const std::vector<DispCat>& corpus) {
  Check c;
  auto one = [&](const DispCat& d) {
    Report r = total_univalence_check(d);
    const bool premise = oracle::is_gaunt(d.base()) && oracle::is_univalent_display(d);
    c.expect(r.passed() && r.flag("vacuous") == !premise, "implication check");
    c.expect(!premise || oracle::total_is_gaunt(d), "oracle implication");
    ++c.counts[premise ? "non-vacuous" : "vacuous"];
  };
  for (const DispCat& d : corpus) {
    c.expect(d.base().num_objects() <= 4 && d.base().num_morphisms() <= 10, "random base size");
    for (ObjIx o = 0; o < d.base().num_objects(); ++o) c.expect(d.fibre(o).size() <= 3, "random fibre size");
    one(d);
  }
  for (const auto& [name, d] : fx::displays()) one(d);
  c.expect(c.counts["vacuous"] > 0 && c.counts["non-vacuous"] > 0, "both vacuous and non-vacuous instances");
  return c;
}

Check criterion7() {
  Check c;
  for (const auto& [name, d] : fx::displays()) {
    if (!oracle::is_univalent_display(d)) continue;
    ++c.counts["univalent"];
    const FinCat& C = d.base();
    for (MorIx f = 0; f < C.num_morphisms(); ++f) {
      for (DObjIx x : d.fibre(C.dst(f))) c.expect(cartesian_lifts(d, f, x).size() <= 1, "unique lift in " + name);
    }
    if (oracle::is_weak_fibration(d)) {
      ++c.counts["univalent weak fibrations"];
      c.expect(enumerate_cleavings(d).size() == 1, "one cleaving for " + name);
    }
  }
  c.expect(c.counts["univalent weak fibrations"] > 0, "some univalent weak fibration");
  return c;
}

Check criterion8() {
  Check c;
  StandardStructure magmas = fx::ord2_magmas();
  c.expect(oracle::is_gaunt(magmas.base), "Ord2 gaunt");
  c.expect(magmas.base.objects() == fx::finset2().objects(), "Ord2 has the objects of FinSet2");
  DispCat d = sip_to_display(magmas);
  c.expect(sip_univalence_check(magmas).passed(), "sip check on magmas");
  c.expect(oracle::is_univalent_display(d), "magma display univalent");
  c.expect(oracle::total_is_gaunt(d), "magma total univalent");
  StandardStructure ind = fx::indiscrete_pair();
  Report st = check_standard_structure(ind);
  c.expect(!st.passed() && st.findings.size() == 1 && st.findings.front().code == "not_antisymmetric",
           "indiscrete rejected at antisymmetry");
  c.expect(ind.P.front().size() == 2, "indiscrete P has two elements");
  c.expect(!is_univalent_display(sip_to_display(ind)).passed() && !oracle::is_univalent_display(sip_to_display(ind)),
           "indiscrete display not univalent");
  return c;
}

Check criterion9(const std::vector<DispCat>& corpus) {
  Check c;
  auto one = [&](const DispCat& d, const std::string& name) {
    Report r = amnestic_iff_univalent_check(d);
    const bool amn = oracle::is_amnestic(total_category(d).projection);
    c.expect(r.passed() && r.flag("projection_amnestic") == amn && amn == oracle::is_univalent_display(d),
             "amnestic vs univalent " + name);
    ++c.counts["displays"];
  };
  for (const auto& [name, d] : fx::displays()) one(d, name);
  for (const DispCat& d : corpus) one(d, "random");
  c.expect(!is_amnestic(fx::wiso_to_one()).passed() && !oracle::is_amnestic(fx::wiso_to_one()), "WIso -> One");
  return c;
}

Check criterion10() {
  Check c;
  CwA w = fx::div12_cwa();
  c.expect(check_cwa(w).passed(), "Div12 CwA laws");
  ComprehensionCat cc = compcat_from_cwa(w);
  Report r = check_comprehension_cat(cc);
  c.expect(r.passed() && r.flag("strict_triangle"), "comprehension category");
  for (DMorIx m = 0; m < cc.types.num_dmors(); ++m) {
    if (oracle::is_cartesian(cc.types, m)) {
      c.expect(oracle::is_cartesian(cc.slice, cc.chi.on_dmor[m]), "cartesian preserved");
      ++c.counts["cartesian"];
    }
  }
  Report bad = check_cwa(fx::non_pullback_cwa());
  c.expect(!bad.passed() && bad.findings.back().code == "square_pullback", "non-pullback CwA rejected");
  c.expect(!check_comprehension_cat(compcat_from_cwa(fx::non_pullback_cwa(), false)).passed(),
           "unvalidated non-pullback construction fails");
  return c;
}

struct Invocation {
  int status = -1;
  std::string out;
};

Invocation invoke(const std::string& args) {
  std::string cmd = std::string(DISPCAT_CLI) + " " + args + " 2>/dev/null";
  Invocation inv;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return inv;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) inv.out.append(buf.data(), n);
  int st = pclose(p);
  inv.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return inv;
}

Check criterion11() {
  Check c;
  std::vector<std::string> files;
  for (const auto& e : std::filesystem::directory_iterator(DISPCAT_FIXTURES)) {
    if (e.path().extension() == ".dcat") files.push_back(e.path().string());
  }
  std::sort(files.begin(), files.end());
  std::string fs;
  for (const auto& f : files) fs += " " + f;
  const std::vector<std::pair<std::string, int>> runs{
      {"check --mutations", 0},
      {"equivalences --category Div12 --with Two", 0},
      {"sigma --display ConstTwoTwo --family SliceTotalConst", 0},
      {"cartesian-pullback --category Div12", 0},
      {"cartesian-pullback --category Two", 0},
      {"to-presheaf --display ElemsDivisors", 0},
      {"from-presheaf --presheaf Divisors", 0},
      {"creates --display FAlgGcd6 --shape Cospan", 0},
      {"creates --display FAlgLcm2 --shape Discrete2", 0},
      {"creates --display FAlgLcm3 --shape Empty", 0},
      {"creates --display FAlgGcd6 --diagram AlgCospan", 0},
      {"univalence --random 1000 --seed 7", 0},
      {"univalence", 0},
      {"sip --structure Magmas", 0},
      {"sip --structure Indiscrete", 1},
      {"amnestic", 0},
      {"amnestic --functor WIsoToOne", 1},
      {"compcat --cwa DivCwA", 0},
      {"compcat --cwa NonPullbackCwA", 1},
      {"limits --diagram Div12Cospan --cone UnitCone", 1},
      {"total --display NoSuchDisplay", 2},
  };
  for (const auto& [cmd, code] : runs) {
    const auto sp = cmd.find(' ');
    const std::string args = cmd.substr(0, sp) + fs + (sp == std::string::npos ? "" : cmd.substr(sp)) + " --json";
    Invocation a = invoke(args), b = invoke(args);
    c.expect(a.status == code && b.status == code, cmd + " exit " + std::to_string(a.status));
    try {
      auto ja = nlohmann::json::parse(a.out), jb = nlohmann::json::parse(b.out);
      c.expect(ja.contains("timing_ms") && ja["schema"] == 1, cmd + " schema");
      ja.erase("timing_ms");
      jb.erase("timing_ms");
      c.expect(ja.dump() == jb.dump(), cmd + " unstable");
    } catch (const std::exception&) {
      c.expect(false, cmd + " output is not JSON");
    }
    ++c.counts["commands"];
  }
  return c;
}

}  // namespace

int main() {
  const std::vector<DispCat> corpus = random_corpus();
  struct Criterion {
    int n;
    std::string title;
    std::function<Check()> run;
    double limit_ms;
  };
  const std::vector<Criterion> criteria{
      {1, "law checkers and mutation rejection", criterion1, 5000},
      {2, "canonical comparison functors are equivalences", criterion2, 0},
      {3, "cartesian iff pullback in slice displays", criterion3, 10000},
      {4, "presheaves and discrete fibrations round trip", criterion4, 0},
      {5, "algebra displays create limits", criterion5, 60000},
      {6, "univalent display over gaunt base has gaunt total", [&] { return criterion6(corpus); }, 0},
      {7, "univalent displays have unique lifts", criterion7, 0},
      {8, "structure identity principle", criterion8, 0},
      {9, "amnestic iff univalent", [&] { return criterion9(corpus); }, 0},
      {10, "categories with attributes give comprehension categories", criterion10, 0},
      {11, "CLI reports and exit codes", criterion11, 0},
  };
  int failed = 0;
  for (const auto& cr : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Check c;
    try {
      c = cr.run();
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    if (cr.limit_ms > 0 && ms > cr.limit_ms) c.expect(false, "over time limit");
    const bool ok = c.failures.empty();
    failed += !ok;
    std::ostringstream line;
    line << (ok ? "PASS" : "FAIL") << " criterion " << cr.n << ": " << cr.title << " (";
    bool first = true;
    for (const auto& [k, v] : c.counts) {
      line << (first ? "" : ", ") << k << " " << v;
      first = false;
    }
    line << (first ? "" : ", ") << static_cast<long>(ms) << " ms)";
    for (const auto& f : c.failures) line << "\n  " << f;
    std::cout << line.str() << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
