#pragma once

#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "dispcat/dsl.hpp"
#include "dispcat/gaunt.hpp"
#include "dispcat/mutations.hpp"
#include "dispcat/random.hpp"

namespace dispcat::cli {

struct Options {
  std::string command;
  std::vector<std::string> files;
  std::map<std::string, std::string> named;  // --display, --at, --along, ...
  bool mutations = false;
  bool json = false;
  std::size_t bound = kDefaultBound;
  std::optional<std::string> emit;

  std::optional<std::string> get(const std::string& key) const {
    auto it = named.find(key);
    if (it == named.end()) return std::nullopt;
    return it->second;
  }
};

/// Default resource bound, overridable through DISPCAT_BOUND.
inline std::size_t default_bound() {
  if (const char* env = std::getenv("DISPCAT_BOUND")) {
    try {
      return static_cast<std::size_t>(std::stoull(env));
    } catch (const std::exception&) {
    }
  }
  return kDefaultBound;
}

inline const std::vector<std::string>& commands() {
  static const std::vector<std::string> names{
      "check",       "total",    "fibre",   "reindex",     "sigma",   "fibration",    "isofibration",
      "discrete",    "to-presheaf", "from-presheaf", "limits", "creates", "univalence", "sip",
      "amnestic",    "compcat",  "equivalences", "cartesian-pullback", "lifts"};
  return names;
}

inline int exit_code(const Report& r) {
  switch (r.verdict) {
    case Verdict::pass: return 0;
    case Verdict::fail: return 1;
    case Verdict::error: return 2;
  }
  return 2;
}

namespace detail {

class Runner {
 public:
  Runner(const Options& o, const dsl::Workspace& ws, Report& r, std::string& emitted)
      : o_(o), ws_(ws), r_(r), emitted_(emitted) {}

  void run() {
    static const std::map<std::string, void (Runner::*)()> table{
        {"check", &Runner::check},
        {"total", &Runner::total},
        {"fibre", &Runner::fibre},
        {"reindex", &Runner::reindex_cmd},
        {"sigma", &Runner::sigma},
        {"fibration", &Runner::fibration},
        {"isofibration", &Runner::isofibration},
        {"discrete", &Runner::discrete},
        {"to-presheaf", &Runner::to_presheaf},
        {"from-presheaf", &Runner::from_presheaf},
        {"limits", &Runner::limits},
        {"creates", &Runner::creates},
        {"univalence", &Runner::univalence},
        {"sip", &Runner::sip},
        {"amnestic", &Runner::amnestic},
        {"compcat", &Runner::compcat},
        {"equivalences", &Runner::equivalences},
        {"cartesian-pullback", &Runner::cartesian_pullback},
        {"lifts", &Runner::lifts},
    };
    auto it = table.find(o_.command);
    if (it == table.end()) throw Error(ErrorCode::UnknownCommand, "'" + o_.command + "'");
    if (o_.command != "check") require_valid();
    (this->*(it->second))();
  }

 private:
  // -- lookup --------------------------------------------------------------

  std::string need(const std::string& key) const {
    auto v = o_.get(key);
    if (!v) throw Error(ErrorCode::UnknownTarget, o_.command + " needs --" + key);
    return *v;
  }

  template <class T>
  const T& find(const std::map<std::string, dsl::Entry<T>>& m, const std::string& name, const char* kind) {
    auto it = m.find(name);
    if (it == m.end()) throw Error(ErrorCode::UnknownTarget, std::string("no ") + kind + " named '" + name + "'");
    target(name);
    return it->second.value;
  }

  void target(const std::string& name) {
    if (std::find(r_.targets.begin(), r_.targets.end(), name) == r_.targets.end()) r_.targets.push_back(name);
  }

  const DispCat& display(const std::string& key = "display") { return find(ws_.displays, need(key), "display"); }
  const FinCat& category(const std::string& key = "category") { return find(ws_.categories, need(key), "category"); }

  void require_valid() {
    for (const auto& [kind, name] : ws_.order) {
      const Report& laws = ws_.laws_of(kind, name);
      if (laws.passed()) continue;
      const std::string msg = laws.findings.empty() ? "law check fails" : laws.findings.front().message;
      r_.error("invalid_declaration", kind + " " + name + ": " + msg, {name});
      r_.findings.back().span = span_of(kind, name);
    }
    if (r_.verdict == Verdict::error) throw Abort{};
  }

  SourceSpan span_of(const std::string& kind, const std::string& name) const {
    if (kind == "category") return ws_.categories.at(name).span;
    if (kind == "display") return ws_.displays.at(name).span;
    if (kind == "functor") return ws_.functors.at(name).span;
    if (kind == "nattrans") return ws_.nattrans.at(name).span;
    if (kind == "monad") return ws_.monads.at(name).span;
    if (kind == "presheaf") return ws_.presheaves.at(name).span;
    if (kind == "graph") return ws_.graphs.at(name).span;
    if (kind == "diagram") return ws_.diagrams.at(name).span;
    if (kind == "cone") return ws_.cones.at(name).span;
    if (kind == "structure") return ws_.structures.at(name).span;
    return ws_.cwas.at(name).span;
  }

  /// Name under which `c` can be referenced in emitted text, emitting it first if needed.
  std::string base_name(const FinCat& c, const std::string& fallback) {
    if (auto n = ws_.category_name(c)) return *n;
    emitted_ += dsl::emit_category(fallback, c) + "\n";
    return fallback;
  }

  void emit(const std::string& text) { emitted_ += text; }

  // -- commands ------------------------------------------------------------

  void check() {
    std::size_t n = 0;
    for (const auto& [kind, name] : ws_.order) {
      ++n;
      const Report& laws = ws_.laws_of(kind, name);
      for (Finding f : laws.findings) {
        f.code = kind + "." + f.code;
        f.message = kind + " " + name + ": " + f.message;
        if (!f.span) f.span = span_of(kind, name);
        r_.findings.push_back(std::move(f));
      }
      if (!laws.passed() && r_.verdict == Verdict::pass) r_.verdict = Verdict::fail;
    }
    r_.set("declarations", n);
    if (!o_.mutations) return;
    nlohmann::json cats = nlohmann::json::object(), disps = nlohmann::json::object();
    auto summarize = [&](const std::string& name, const MutationSurvey& s) {
      nlohmann::json j{{"composable_pairs", s.composable_pairs}, {"entries", s.entries}, {"mutants", s.mutants},
                       {"rejected", s.rejected}, {"accepted", s.accepted}};
      const bool required = s.composable_pairs >= 3;
      j["required"] = required;
      if (required && !s.all_rejected()) {
        r_.fail("mutation_accepted", name + " accepts " + std::to_string(s.accepted.size()) + " mutant(s)", s.accepted);
      }
      return j;
    };
    for (const auto& [kind, name] : ws_.order) {
      if (kind == "category" && ws_.categories.at(name).laws.passed()) {
        cats[name] = summarize(name, survey_mutations(ws_.categories.at(name).value));
      }
    }
    for (const auto& [kind, name] : ws_.order) {
      if (kind != "display" || !ws_.displays.at(name).laws.passed()) continue;
      const DispCat& d = ws_.displays.at(name).value;
      disps[name] = summarize(name, survey_mutations(d));
    }
    r_.set("category_mutations", cats);
    r_.set("display_mutations", disps);
  }

  void total() {
    const std::string name = need("display");
    const DispCat& d = display();
    TotalCategory t = total_category(d);
    r_.absorb(check_category_laws(t.cat), "total");
    Report proj = projection_properties(d);
    r_.absorb(proj, "projection");
    r_.set("objects", t.cat.num_objects());
    r_.set("morphisms", t.cat.num_morphisms());
    r_.set("projection", proj.details);
    emit(dsl::emit_category("Total_" + name, t.cat));
  }

  void fibre() {
    const std::string name = need("display");
    const DispCat& d = display();
    const std::string at = need("at");
    auto c = d.base().find_object(at);
    if (!c) throw Error(ErrorCode::UnknownTarget, "no base object '" + at + "'");
    FinCat f = fibre_category(d, *c);
    r_.absorb(check_category_laws(f), "fibre");
    r_.set("objects", f.num_objects());
    r_.set("morphisms", f.num_morphisms());
    r_.set("univalent", is_univalent_category(f).passed());
    emit(dsl::emit_category("Fibre_" + name + "_" + at, f));
  }

  void reindex_cmd() {
    const std::string name = need("display");
    const DispCat& d = display();
    const FunctorData& F = find(ws_.functors, need("along"), "functor");
    DispCat out = reindex(d, F);
    r_.absorb(check_displayed_laws(out), "reindexed");
    r_.absorb(check_disp_functor(reindex_functor(d, F, out)), "comparison");
    r_.set("displayed_objects", out.num_dobjs());
    r_.set("displayed_morphisms", out.num_dmors());
    std::string base = base_name(out.base(), "Base_" + name);
    emit(dsl::emit_display("Reindex_" + name, base, out));
  }

  void sigma() {
    const std::string name = need("display");
    const DispCat& d = display();
    const DispCat& e = display("family");
    DispCat s = sigma_display(d, e);
    r_.absorb(check_displayed_laws(s), "sigma");
    FunctorData cmp = sigma_comparison(d, e, s);
    Report eq = check_equivalence(cmp);
    r_.absorb(eq, "comparison");
    r_.set("comparison", eq.details);
    r_.set("comparison_isomorphism", is_isomorphism_of_categories(cmp));
    r_.set("displayed_objects", s.num_dobjs());
    r_.set("displayed_morphisms", s.num_dmors());
    std::string base = base_name(s.base(), "Base_" + name);
    emit(dsl::emit_display("Sigma_" + name, base, s));
  }

  void fibration() {
    Report c = classify_fibration(display(), o_.bound);
    r_.absorb(c);
    r_.details = c.details;
  }

  void isofibration() {
    const DispCat& d = display();
    IsoCleavingResult res = find_iso_cleaving(d);
    const bool base_univalent = is_univalent_category(d.base()).passed();
    r_.set("base_univalent", base_univalent);
    r_.set("iso_fibration", !res.missing.has_value());
    if (res.missing) {
      const auto& [f, x] = *res.missing;
      r_.fail("missing_iso_lift", "no displayed iso over " + d.base().morphism_id(f) + " into " + d.dobj_label(x),
              {d.base().morphism_id(f), d.dobj_label(x)});
    } else {
      r_.set("lifts", res.cleaving->lifts.size());
    }
    if (base_univalent) {
      Cleaving cl = iso_cleaving_from_gaunt_base(d);
      r_.set("gaunt_base_lifts", cl.lifts.size());
    }
  }

  void discrete() {
    Report rep = is_discrete_fibration(display());
    r_.absorb(rep);
    r_.details = rep.details;
  }

  void to_presheaf() {
    const std::string name = need("display");
    const DispCat& d = display();
    Report disc = is_discrete_fibration(d);
    r_.set("discrete", disc.passed());
    if (!disc.passed()) {
      r_.absorb(disc, "discrete");
      return;
    }
    Presheaf p = discrete_fibration_to_presheaf(d);
    r_.absorb(check_presheaf_laws(p), "presheaf");
    const bool same = presheaf_to_discrete_fibration(p) == d;
    r_.set("roundtrip_identical", same);
    if (!same) r_.fail("roundtrip", "display -> presheaf -> display is not identical");
    std::string base = base_name(p.base, "Base_" + name);
    emit(dsl::emit_presheaf("Presheaf_" + name, base, p));
  }

  void from_presheaf() {
    const std::string name = need("presheaf");
    const Presheaf& p = find(ws_.presheaves, name, "presheaf");
    DispCat d = presheaf_to_discrete_fibration(p);
    r_.absorb(check_displayed_laws(d), "display");
    Report disc = is_discrete_fibration(d);
    r_.absorb(disc, "discrete");
    r_.set("discrete", disc.passed());
    r_.set("split", disc.flag("split"));
    const bool same = discrete_fibration_to_presheaf(d) == p;
    r_.set("roundtrip_identical", same);
    if (!same) r_.fail("roundtrip", "presheaf -> display -> presheaf is not identical");
    std::string base = base_name(d.base(), "Base_" + name);
    emit(dsl::emit_display("Elements_" + name, base, d));
  }

  void limits() {
    const Diagram& dg = find(ws_.diagrams, need("diagram"), "diagram");
    const FinCat& C = dg.target;
    auto all = limiting_cones(dg, o_.bound);
    r_.set("limiting_cones", all.size());
    if (!all.empty()) r_.set("limit", dispcat::detail::cone_label(C, all.front()));
    if (auto k = o_.get("cone")) {
      const auto& nc = find(ws_.cones, *k, "cone");
      if (nc.diagram != need("diagram")) throw Error(ErrorCode::BaseMismatch, "cone '" + *k + "' is over another diagram");
      Report lim = is_limiting(C, dg, nc.cone);
      r_.absorb(lim);
      r_.set("cone_limiting", lim.passed());
      return;
    }
    if (all.empty()) r_.fail("no_limit", "the diagram has no limit");
  }

  static Graph builtin_shape(const std::string& s) {
    if (s == "empty") return empty_shape();
    if (s == "single") return single_node_shape();
    if (s == "discrete2") return discrete_two_shape();
    if (s == "cospan") return cospan_shape();
    throw Error(ErrorCode::UnknownTarget, "no graph named '" + s + "'");
  }

  void creates() {
    const DispCat& d = display();
    if (auto s = o_.get("shape")) {
      Graph g = ws_.graphs.count(*s) ? find(ws_.graphs, *s, "graph") : builtin_shape(*s);
      Report rep = creates_limits_of_shape(d, g, o_.bound);
      r_.absorb(rep);
      r_.details = rep.details;
      return;
    }
    const Diagram& dg = find(ws_.diagrams, need("diagram"), "diagram");
    TotalCategory t = total_category(d);
    if (!(dg.target == t.cat)) {
      throw Error(ErrorCode::BaseMismatch, "diagram '" + need("diagram") + "' is not in the total category of the display");
    }
    Diagram base = project_diagram(d, t, dg);
    auto lambdas = limiting_cones(base, o_.bound);
    r_.set("base_limits", lambdas.size());
    std::size_t created = 0;
    nlohmann::json cones = nlohmann::json::array();
    for (const Cone& lambda : lambdas) {
      std::optional<DispCone> witness;
      Report rep = creates_limit(d, t, dg, lambda, &witness);
      r_.absorb(rep, dispcat::detail::cone_label(d.base(), lambda));
      if (rep.passed() && witness) {
        ++created;
        Cone total = total_limit_from_creation(d, t, dg, lambda, *witness);
        const bool exact = project_cone(d, t, total) == lambda;
        if (!exact) r_.fail("projection", "created limit does not project to " + dispcat::detail::cone_label(d.base(), lambda));
        cones.push_back(nlohmann::json{{"base", dispcat::detail::cone_label(d.base(), lambda)}, {"created", disp_cone_label(d, *witness)},
                         {"projects_exactly", exact}});
      }
    }
    r_.set("created", created);
    r_.set("cones", cones);
    if (lambdas.empty()) r_.note("the base diagram has no limit; creation holds vacuously");
  }

  static Cone project_cone(const DispCat&, const TotalCategory& t, const Cone& k) {
    Cone out{t.projection.on_obj[k.vertex], {}};
    for (MorIx m : k.legs) out.legs.push_back(t.projection.on_mor[m]);
    return out;
  }

  void random_corpus(const std::function<void(const DispCat&, std::size_t)>& each) {
    const std::size_t n = std::stoull(need("random"));
    const std::uint64_t seed = std::stoull(o_.get("seed").value_or("1"));
    random::Rng rng(seed);
    for (std::size_t i = 0; i < n; ++i) each(random::random_display(rng), i);
    r_.set("random", n);
    r_.set("seed", seed);
  }

  void univalence() {
    if (o_.get("category")) {
      Report rep = is_univalent_category(category());
      r_.absorb(rep);
      r_.details = rep.details;
      return;
    }
    if (o_.get("display")) {
      const DispCat& d = display();
      Report u = is_univalent_display(d);
      r_.absorb(u);
      r_.set("display_univalent", u.passed());
      Report tot = total_univalence_check(d);
      if (tot.verdict == Verdict::error) r_.absorb(tot, "implication");
      r_.set("implication", tot.details);
      if (u.passed()) {
        Report lifts = unique_cartesian_lifts_check(d, o_.bound);
        r_.absorb(lifts, "unique_lifts");
        r_.set("unique_lifts", lifts.details);
      }
      return;
    }
    std::size_t vacuous = 0, nonvacuous = 0, univalent = 0, violations = 0;
    auto one = [&](const DispCat& d, const std::string& label, bool lifts) {
      Report tot = total_univalence_check(d);
      if (tot.verdict == Verdict::error) {
        ++violations;
        r_.absorb(tot, label);
      }
      (tot.flag("vacuous") ? vacuous : nonvacuous) += 1;
      if (lifts && tot.flag("display_univalent")) {
        ++univalent;
        r_.absorb(unique_cartesian_lifts_check(d, o_.bound), label + ".unique_lifts");
      }
    };
    if (o_.get("random")) {
      random_corpus([&](const DispCat& d, std::size_t i) { one(d, "random" + std::to_string(i), false); });
    } else {
      for (const auto& [kind, name] : ws_.order) {
        if (kind == "display") one(ws_.displays.at(name).value, name, true);
      }
      r_.set("univalent_displays", univalent);
    }
    r_.set("vacuous", vacuous);
    r_.set("non_vacuous", nonvacuous);
    r_.set("violations", violations);
  }

  void sip() {
    Report rep = sip_univalence_check(find(ws_.structures, need("structure"), "structure"));
    r_.absorb(rep);
    r_.details = rep.details;
  }

  void amnestic() {
    if (o_.get("functor")) {
      Report rep = is_amnestic(find(ws_.functors, need("functor"), "functor"));
      r_.absorb(rep);
      r_.details = rep.details;
      return;
    }
    if (o_.get("display")) {
      Report rep = amnestic_iff_univalent_check(display());
      r_.absorb(rep);
      r_.details = rep.details;
      return;
    }
    std::size_t checked = 0, amnestic_count = 0;
    auto one = [&](const DispCat& d, const std::string& label) {
      Report rep = amnestic_iff_univalent_check(d);
      ++checked;
      amnestic_count += rep.flag("projection_amnestic");
      if (!rep.passed()) r_.absorb(rep, label);
    };
    if (o_.get("random")) {
      random_corpus([&](const DispCat& d, std::size_t i) { one(d, "random" + std::to_string(i)); });
    } else {
      for (const auto& [kind, name] : ws_.order) {
        if (kind == "display") one(ws_.displays.at(name).value, name);
      }
    }
    r_.set("checked", checked);
    r_.set("amnestic", amnestic_count);
  }

  void compcat() {
    const CwA& w = find(ws_.cwas, need("cwa"), "cwa");
    Report laws = check_cwa(w);
    r_.absorb(laws, "cwa");
    r_.set("cwa_laws", laws.passed());
    if (laws.passed()) {
      ComprehensionCat cc = compcat_from_cwa(w);
      Report rep = check_comprehension_cat(cc);
      r_.absorb(rep, "compcat");
      r_.set("comprehension", rep.details);
      return;
    }
    try {
      Report rep = check_comprehension_cat(compcat_from_cwa(w, false));
      r_.set("unvalidated_comprehension", rep.passed());
      for (const Finding& f : rep.findings) r_.note("unvalidated construction: " + f.message);
    } catch (const Error& e) {
      r_.note(std::string("unvalidated construction: ") + e.what());
    }
  }

  /// Absorbs a sub-report only when it does not pass, keeping witness noise out.
  void absorb_failure(const Report& sub, const std::string& prefix) {
    if (!sub.passed()) r_.absorb(sub, prefix);
  }

  void equivalences() {
    const FinCat& c = category();
    const FinCat& c2 = o_.get("with") ? category("with") : c;
    {
      DispCat dc = constant_display(c, c2);
      TotalCategory t = total_category(dc);
      FinCat prod = product(c, c2);
      Report eq = check_equivalence(constant_product_comparison(c, c2, dc, t, prod));
      absorb_failure(eq, "constant");
      r_.set("constant", eq.passed());
    }
    for (bool co : {false, true}) {
      const std::string key = co ? "coslice" : "slice";
      DispCat direct = co ? coslice_display(c) : slice_display(c);
      DispCat via = co ? coslice_via_sigma(c) : slice_via_sigma(c);
      DispFunctor G = slice_comparison(c, via, direct, co);
      Report fr = check_disp_functor(G);
      absorb_failure(fr, key + "_functor");
      Report eq = check_equivalence(total_functor(G));
      absorb_failure(eq, key);
      r_.set(key, fr.passed() && eq.passed());
    }
    {
      DispCat arr = arrow_display(c);
      TotalCategory t = total_category(arr);
      Report eq = check_equivalence(arrow_comparison(c, arr, t, arrow_category(c)));
      absorb_failure(eq, "arrow");
      r_.set("arrow", eq.passed());
    }
  }

  void cartesian_pullback() {
    const FinCat& c = category();
    DispCat slice = slice_display(c);
    std::size_t cart = 0, noncart = 0;
    for (DMorIx m = 0; m < slice.num_dmors(); ++m) {
      Report rep = cartesian_iff_pullback(c, slice, m);
      if (rep.verdict != Verdict::pass) r_.absorb(rep, slice.dmor_label(m));
      (rep.flag("cartesian") ? cart : noncart) += 1;
    }
    r_.set("cartesian", cart);
    r_.set("non_cartesian", noncart);
    r_.set("checked", slice.num_dmors());
  }

  void lifts() {
    const DispCat& d = display();
    const std::string f = need("morphism");
    auto fm = d.base().find_morphism(f);
    if (!fm) throw Error(ErrorCode::UnknownTarget, "no base morphism '" + f + "'");
    auto [c, x] = dsl::split_ref(need("target"));
    auto co = d.base().find_object(c);
    if (!co || *co != d.base().dst(*fm)) throw Error(ErrorCode::UnknownTarget, "target must be <dst>/<object>");
    auto xo = d.find_dobj(*co, x);
    if (!xo) throw Error(ErrorCode::UnknownTarget, "no displayed object '" + need("target") + "'");
    auto ls = cartesian_lifts(d, *fm, *xo);
    nlohmann::json arr = nlohmann::json::array();
    for (const Lift& l : ls) arr.push_back(d.dmor_label(l.fbar));
    r_.set("lifts", arr);
    r_.set("count", ls.size());
    if (ls.empty()) r_.fail("no_lift", "no cartesian lift of " + f + " into " + need("target"));
  }

  const Options& o_;
  const dsl::Workspace& ws_;
  Report& r_;
  std::string& emitted_;

 public:
  struct Abort {};
};

inline void record_error(Report& r, const std::exception& e) {
  if (const auto* de = dynamic_cast<const dsl::DslError*>(&e)) {
    r.error(std::string(to_string(de->code())), de->detail());
    r.findings.back().span = de->span();
  } else if (const auto* le = dynamic_cast<const Error*>(&e)) {
    r.error(std::string(to_string(le->code())), le->what());
    if (le->code() == ErrorCode::ResourceLimit) r.note("raise --bound or DISPCAT_BOUND to search further");
  } else {
    r.error("internal", e.what());
  }
}

}  // namespace detail

/// Runs a command on an elaborated workspace. Constructed objects are
/// written as DSL text to `emitted` when it is non-null.
inline Report run(const Options& o, const dsl::Workspace& ws, std::string* emitted = nullptr) {
  Report r(o.command);
  ReportTimer timer(r);
  std::string text;
  try {
    detail::Runner(o, ws, r, text).run();
  } catch (const detail::Runner::Abort&) {
  } catch (const std::exception& e) {
    detail::record_error(r, e);
  }
  if (r.verdict != Verdict::error && o.bound != kDefaultBound) r.note("bound " + std::to_string(o.bound));
  if (emitted) *emitted = r.verdict == Verdict::error ? std::string() : text;
  return r;
}

/// Parses the input files and runs the command.
inline Report run(const Options& o, std::string* emitted = nullptr) {
  dsl::Workspace ws;
  try {
    if (std::find(commands().begin(), commands().end(), o.command) == commands().end()) {
      throw Error(ErrorCode::UnknownCommand, "'" + o.command + "'");
    }
    for (const auto& f : o.files) ws.load_file(f);
  } catch (const std::exception& e) {
    Report r(o.command);
    detail::record_error(r, e);
    if (emitted) emitted->clear();
    return r;
  }
  return run(o, ws, emitted);
}

/// Human-readable rendering.
inline std::string render_text(const Report& r) {
  std::ostringstream o;
  o << r.command;
  for (const auto& t : r.targets) o << " " << t;
  o << ": " << to_string(r.verdict) << "\n";
  for (const auto& [k, v] : r.details.items()) o << "  " << k << ": " << v.dump() << "\n";
  for (const auto& f : r.findings) {
    o << "  [" << f.code << "] " << f.message;
    if (!f.witnesses.empty()) o << " (" << dsl::join(f.witnesses, ", ") << ")";
    if (f.span) o << " at " << f.span->file << ":" << f.span->line << ":" << f.span->column;
    o << "\n";
  }
  for (const auto& n : r.notes) o << "  note: " << n << "\n";
  return o.str();
}

}  // namespace dispcat::cli
