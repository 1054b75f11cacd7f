#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "dispcat/cli.hpp"

int main(int argc, char** argv) {
  using namespace dispcat;
  CLI::App app{"Checker for finite categories and displayed categories"};
  app.require_subcommand(1);
  cli::Options o;
  o.bound = cli::default_bound();
  std::string emit;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("files", o.files, "DSL input files, loaded in order")->required()->check(CLI::ExistingFile);
    sub->add_flag("--json", o.json, "print the report as JSON");
    sub->add_option("--bound", o.bound, "resource bound for enumerations");
    sub->add_option("--emit", emit, "write constructed objects to this file in the DSL");
  };
  auto named = [&](CLI::App* sub, const std::string& key, const std::string& help) {
    sub->add_option_function<std::string>(
        "--" + key, [&o, key](const std::string& v) { o.named[key] = v; }, help);
  };

  struct Spec {
    const char* name;
    const char* help;
    std::vector<std::pair<const char*, const char*>> opts;
  };
  const std::vector<Spec> specs{
      {"check", "law-check every declaration", {}},
      {"total", "total category of a display", {{"display", "display name"}}},
      {"fibre", "fibre of a display over an object", {{"display", "display name"}, {"at", "base object"}}},
      {"reindex", "reindex a display along a functor", {{"display", "display name"}, {"along", "functor name"}}},
      {"sigma", "sigma of a display and a display over its total category",
       {{"display", "display name"}, {"family", "display over the total category"}}},
      {"fibration", "classify fibration properties", {{"display", "display name"}}},
      {"isofibration", "search for an iso-cleaving", {{"display", "display name"}}},
      {"discrete", "discrete fibration check", {{"display", "display name"}}},
      {"to-presheaf", "discrete fibration to presheaf", {{"display", "display name"}}},
      {"from-presheaf", "presheaf to discrete fibration", {{"presheaf", "presheaf name"}}},
      {"limits", "limits of a diagram", {{"diagram", "diagram name"}, {"cone", "cone to test"}}},
      {"creates", "creation of limits by a display",
       {{"display", "display name"}, {"diagram", "diagram in the total category"}, {"shape", "graph name or builtin shape"}}},
      {"univalence", "univalence checks",
       {{"display", "display name"}, {"category", "category name"}, {"random", "number of random displays"},
        {"seed", "random seed"}}},
      {"sip", "structure identity principle", {{"structure", "structure name"}}},
      {"amnestic", "amnestic functors",
       {{"functor", "functor name"}, {"display", "display name"}, {"random", "number of random displays"},
        {"seed", "random seed"}}},
      {"compcat", "comprehension category from a CwA", {{"cwa", "CwA name"}}},
      {"equivalences", "canonical comparison functors", {{"category", "category name"}, {"with", "second category"}}},
      {"cartesian-pullback", "cartesian versus pullback in the slice display", {{"category", "category name"}}},
      {"lifts", "cartesian lifts", {{"display", "display name"}, {"morphism", "base morphism"}, {"target", "c/x"}}},
  };
  for (const Spec& s : specs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    add_common(sub);
    for (const auto& [k, h] : s.opts) named(sub, k, h);
    if (std::string(s.name) == "check") sub->add_flag("--mutations", o.mutations, "also survey single-entry mutations");
    sub->callback([&o, name = std::string(s.name)] { o.command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  std::string emitted;
  Report r = cli::run(o, emit.empty() ? nullptr : &emitted);
  if (!emit.empty()) {
    if (emitted.empty()) {
      r.note("nothing to emit");
    } else {
      std::ofstream out(emit, std::ios::binary);
      out << emitted;
      if (!out) r.error("emit", "cannot write " + emit);
    }
  }
  if (o.json) {
    std::cout << nlohmann::json(r).dump(2) << "\n";
  } else {
    std::cout << cli::render_text(r);
  }
  return cli::exit_code(r);
}
