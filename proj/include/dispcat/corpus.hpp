#pragma once

#include <string>
#include <utility>
#include <vector>

#include "dispcat/dsl.hpp"
#include "dispcat/fixtures.hpp"

namespace dispcat::fixtures {

/// A display in the shipped corpus: its fixture value and the derived
/// declaration that rebuilds it, or an empty string for explicit emission.
struct CorpusDisplay {
  std::string name;
  std::string base;
  std::string derived;
};

inline std::vector<CorpusDisplay> corpus_displays() {
  return {
      {"FullSubDiv12", "Div12", ""},
      {"FullSubAllDiv12", "Div12", "fullsub Div12 : 1 2 3 4 6 12"},
      {"ConstTwoTwo", "Two", "const Two Two"},
      {"ConstWIso", "Div12", "const Div12 WIso"},
      {"ConstBZ2", "One", "const One BZ2"},
      {"ConstOverWIso", "WIso", "const WIso Two"},
      {"ArrowTwo", "", "arrow Two"},
      {"ArrowDiv12", "", "arrow Div12"},
      {"Slice_Two", "Two", "slice Two"},
      {"Slice_Div12", "Div12", "slice Div12"},
      {"Slice_BZ2", "BZ2", "slice BZ2"},
      {"Coslice_Div12", "Div12", "coslice Div12"},
      {"SigmaSlice_Div12", "", "slicesigma Div12"},
      {"FAlgGcd6", "Div12", "falg Gcd6"},
      {"FAlgLcm2", "Div12", "falg Lcm2"},
      {"FAlgLcm3", "Div12", "falg Lcm3"},
      {"FAlgWIso", "WIso", "falg IdWIso"},
      {"MAlgLcm2", "Div12", "malg Lcm2Monad"},
      {"ElemsYonTwoB", "Two", "elements YonTwoB"},
      {"ElemsSwapBZ2", "BZ2", "elements SwapBZ2"},
      {"ElemsDivisors", "Div12", "elements Divisors"},
      {"MagmaOrd2", "Ord2", "sip Magmas"},
      {"IndiscretePair", "One", "sip Indiscrete"},
      {"Idempotent", "Two", ""},
  };
}

/// The cospan 4 -> 12 <- 6 in Div12.
inline Diagram div12_cospan() {
  FinCat c = div12();
  return {cospan_shape(), c, {c.object("4"), c.object("12"), c.object("6")}, {div_mor(c, 4, 12), div_mor(c, 6, 12)}};
}

/// The same cospan lifted to gcd(-, 6)-algebras: the unique algebra over
/// each object and the unique total morphisms between them.
inline Diagram gcd6_algebra_cospan() {
  DispCat d = endofunctor_algebra_display(gcd6());
  TotalCategory t = total_category(d);
  Diagram base = div12_cospan();
  Diagram dg{cospan_shape(), t.cat, {}, {}};
  for (ObjIx c : base.on_node) dg.on_node.push_back(t.obj_of_dobj[d.fibre(c).front()]);
  for (std::size_t e = 0; e < base.on_edge.size(); ++e) {
    const GraphEdge& ge = dg.shape.edges[e];
    dg.on_edge.push_back(t.cat.hom(dg.on_node[ge.src], dg.on_node[ge.dst]).front());
  }
  return dg;
}

/// Shipped fixture files, in load order.
inline std::vector<std::pair<std::string, std::string>> corpus_files() {
  using namespace dsl;
  std::vector<std::pair<std::string, std::string>> files;
  const std::string header = "# Generated by gen_fixtures. Edit the generator, not this file.\n";

  std::string cats = header;
  for (const auto& [name, c] : categories()) cats += "\n" + emit_category(name, c);
  files.emplace_back("01_categories.dcat", cats);

  FinCat d12 = div12();
  Monad m = lcm2_monad();
  std::string fun = header;
  fun += "\n" + emit_functor("Gcd6", "Div12", "Div12", gcd6());
  fun += "\n" + emit_functor("Lcm2", "Div12", "Div12", lcm2());
  fun += "\n" + emit_functor("Lcm3", "Div12", "Div12", lcm3());
  fun += "\nfunctor IdDiv12 = identity Div12\n";
  fun += "functor Lcm2Twice = compose Lcm2 Lcm2\n";
  fun += "\n" + emit_nattrans("Lcm2Mult", "Lcm2Twice", "Lcm2", m.mu);
  fun += "\n" + emit_nattrans("Lcm2Unit", "IdDiv12", "Lcm2", m.eta);
  fun += "\nmonad Lcm2Monad = Lcm2 Lcm2Mult Lcm2Unit\n";
  fun += "\nfunctor IdWIso = identity WIso\n";
  fun += "functor WIsoToOne = terminal WIso One\n";
  files.emplace_back("02_functors.dcat", fun);

  std::string psh = header;
  for (const auto& [name, p] : presheaves()) {
    std::string base = p.base == d12 ? "Div12" : p.base == two() ? "Two" : "BZ2";
    psh += "\n" + emit_presheaf(name, base, p);
  }
  files.emplace_back("03_presheaves.dcat", psh);

  std::string st = header;
  st += "\n" + emit_structure("Magmas", "Ord2", ord2_magmas());
  st += "\n" + emit_structure("Indiscrete", "One", indiscrete_pair());
  st += "\nstructure Gcd6Algebras = falg Gcd6\n";
  st += "structure Lcm2MonadAlgebras = monad Lcm2Monad\n";
  files.emplace_back("04_structures.dcat", st);

  std::string cw = header;
  for (const auto& [name, w] : cwas()) {
    std::string ty = w.ty == div12_divisors() ? "Divisors" : "TermDiv12";
    cw += "\n" + emit_cwa(name, "Div12", ty, w);
  }
  files.emplace_back("05_cwas.dcat", cw);

  std::string ds = header + "\n";
  auto values = displays();
  auto specs = corpus_displays();
  for (std::size_t i = 0; i < specs.size(); ++i) {
    if (specs[i].derived.empty()) {
      ds += emit_display(specs[i].name, specs[i].base, values[i].second) + "\n";
    } else {
      ds += "display " + specs[i].name + " = " + specs[i].derived + "\n";
    }
  }
  ds += "display ReindexSliceDiv12 = reindex Slice_Div12 Lcm2\n";
  ds += "\ncategory TotalConstTwoTwo = total ConstTwoTwo\n";
  ds += "display DiagonalConst = fullsub TotalConstTwoTwo : a|a b|b\n";
  ds += "display SliceTotalConst = slice TotalConstTwoTwo\n";
  ds += "display SigmaDiagonal = sigma ConstTwoTwo DiagonalConst\n";
  ds += "display SigmaSliceConst = sigma ConstTwoTwo SliceTotalConst\n";
  files.emplace_back("06_displays.dcat", ds);

  std::string lim = header;
  lim += "\ngraph Empty = empty\ngraph Single = single\ngraph Discrete2 = discrete2\ngraph Cospan = cospan\n";
  Diagram dg = div12_cospan();
  lim += "\n" + emit_diagram("Div12Cospan", "Cospan", "Div12", dg);
  lim += "\n" + emit_cone("GcdCone", "Div12Cospan", dg, Cone{d12.object("2"), {div_mor(d12, 2, 4), div_mor(d12, 2, 12), div_mor(d12, 2, 6)}});
  lim += "\n" + emit_cone("UnitCone", "Div12Cospan", dg, Cone{d12.object("1"), {div_mor(d12, 1, 4), div_mor(d12, 1, 12), div_mor(d12, 1, 6)}});
  lim += "\ncategory TotalFAlgGcd6 = total FAlgGcd6\n";
  lim += "\n" + emit_diagram("AlgCospan", "Cospan", "TotalFAlgGcd6", gcd6_algebra_cospan());
  files.emplace_back("07_limits.dcat", lim);
  return files;
}

}  // namespace dispcat::fixtures
