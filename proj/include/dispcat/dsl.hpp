#pragma once

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "dispcat/compcat.hpp"
#include "dispcat/constructions.hpp"
#include "dispcat/fibrations.hpp"
#include "dispcat/limits.hpp"
#include "dispcat/univalence.hpp"

namespace dispcat::dsl {

/// An error raised while reading DSL text, located at a source position.
class DslError : public Error {
 public:
  DslError(ErrorCode code, SourceSpan span, const std::string& message)
      : Error(code, span.file + ":" + std::to_string(span.line) + ":" + std::to_string(span.column) + ": " + message),
        span_(std::move(span)),
        detail_(message) {}

  const SourceSpan& span() const noexcept { return span_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  SourceSpan span_;
  std::string detail_;
};

// ---------------------------------------------------------------------------
// Lexer

struct Token {
  std::string text;
  SourceSpan span;
  bool punct = false;
};

struct Line {
  std::vector<Token> toks;
  SourceSpan span;
};

inline bool is_id_char(char ch) {
  return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '|' || ch == '.';
}

/// Splits text into non-empty lines of tokens. Identifiers may carry one
/// `/` as a qualifier; punctuation is `:`, `=`, `->` and `=>`.
inline std::vector<Line> lex(std::string_view text, const std::string& file) {
  std::vector<Line> out;
  int lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view raw = text.substr(pos, eol - pos);
    ++lineno;
    Line line;
    line.span = {file, lineno, 1};
    std::size_t i = 0;
    while (i < raw.size()) {
      const char ch = raw[i];
      const int col = static_cast<int>(i) + 1;
      if (ch == '#') break;
      if (ch == ' ' || ch == '\t' || ch == '\r') {
        ++i;
        continue;
      }
      if (is_id_char(ch) || ch == '/') {
        std::size_t j = i;
        while (j < raw.size() && (is_id_char(raw[j]) || raw[j] == '/')) ++j;
        line.toks.push_back({std::string(raw.substr(i, j - i)), {file, lineno, col}, false});
        i = j;
        continue;
      }
      if (ch == '-' && i + 1 < raw.size() && raw[i + 1] == '>') {
        line.toks.push_back({"->", {file, lineno, col}, true});
        i += 2;
        continue;
      }
      if (ch == '=' && i + 1 < raw.size() && raw[i + 1] == '>') {
        line.toks.push_back({"=>", {file, lineno, col}, true});
        i += 2;
        continue;
      }
      if (ch == ':' || ch == '=') {
        line.toks.push_back({std::string(1, ch), {file, lineno, col}, true});
        ++i;
        continue;
      }
      throw DslError(ErrorCode::ParseError, {file, lineno, col}, std::string("unexpected character '") + ch + "'");
    }
    if (!line.toks.empty()) {
      line.span = line.toks.front().span;
      out.push_back(std::move(line));
    }
    pos = eol + 1;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Parser

/// A top-level declaration: either a block (`kind name ... end`) or a
/// derived one-liner (`kind name = ctor args`).
struct Decl {
  std::string kind;
  Token name;
  Line header;
  std::vector<Line> body;
  bool derived = false;
};

inline const std::set<std::string>& decl_kinds() {
  static const std::set<std::string> kinds{"category", "display", "functor",   "nattrans", "monad", "presheaf",
                                           "graph",    "diagram", "structure", "cwa",      "cone"};
  return kinds;
}

inline void check_plain_id(const Token& t) {
  if (t.punct || t.text.find('/') != std::string::npos) {
    throw DslError(ErrorCode::ParseError, t.span, "expected an identifier, found '" + t.text + "'");
  }
}

inline std::vector<Decl> parse(std::string_view text, const std::string& file) {
  std::vector<Line> lines = lex(text, file);
  std::vector<Decl> out;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const Line& l = lines[i];
    const Token& kw = l.toks.front();
    if (kw.punct || !decl_kinds().count(kw.text)) {
      throw DslError(ErrorCode::ParseError, kw.span, "expected a declaration, found '" + kw.text + "'");
    }
    if (l.toks.size() < 2) throw DslError(ErrorCode::ParseError, kw.span, "declaration without a name");
    check_plain_id(l.toks[1]);
    Decl d{kw.text, l.toks[1], l, {}, false};
    if (l.toks.size() >= 3 && l.toks[2].text == "=" && l.toks[2].punct) {
      d.derived = true;
      out.push_back(std::move(d));
      continue;
    }
    if (kw.text == "monad") throw DslError(ErrorCode::ParseError, kw.span, "expected 'monad <N> = <T> <mu> <eta>'");
    bool closed = false;
    for (++i; i < lines.size(); ++i) {
      const Token& t = lines[i].toks.front();
      if (!t.punct && t.text == "end") {
        if (lines[i].toks.size() != 1) {
          throw DslError(ErrorCode::ParseError, lines[i].toks[1].span, "unexpected token after 'end'");
        }
        closed = true;
        break;
      }
      if (!t.punct && decl_kinds().count(t.text)) {
        throw DslError(ErrorCode::ParseError, t.span, "missing 'end' for " + d.kind + " " + d.name.text);
      }
      d.body.push_back(lines[i]);
    }
    if (!closed) throw DslError(ErrorCode::ParseError, kw.span, "missing 'end' for " + d.kind + " " + d.name.text);
    out.push_back(std::move(d));
  }
  return out;
}

/// Walks the tokens of one line.
class Cursor {
 public:
  explicit Cursor(const Line& l, std::size_t start = 0) : l_(l), i_(start) {}

  bool at_end() const { return i_ >= l_.toks.size(); }

  const Token& next(const std::string& what) {
    if (at_end()) throw DslError(ErrorCode::ParseError, end_span(), "expected " + what);
    return l_.toks[i_++];
  }

  /// A declared identifier (no qualifier).
  const Token& id(const std::string& what) {
    const Token& t = next(what);
    check_plain_id(t);
    return t;
  }

  /// A reference, possibly qualified as `outer/inner`.
  const Token& ref(const std::string& what) {
    const Token& t = next(what);
    if (t.punct || std::count(t.text.begin(), t.text.end(), '/') > 1 || t.text.front() == '/' ||
        t.text.back() == '/') {
      throw DslError(ErrorCode::ParseError, t.span, "expected " + what + ", found '" + t.text + "'");
    }
    return t;
  }

  void expect(const std::string& p) {
    const Token& t = next("'" + p + "'");
    if (!t.punct || t.text != p) throw DslError(ErrorCode::ParseError, t.span, "expected '" + p + "', found '" + t.text + "'");
  }

  void expect_word(const std::string& w) {
    const Token& t = next("'" + w + "'");
    if (t.punct || t.text != w) throw DslError(ErrorCode::ParseError, t.span, "expected '" + w + "', found '" + t.text + "'");
  }

  bool peek(const std::string& p) const { return !at_end() && l_.toks[i_].text == p; }

  /// Identifiers up to the end of the line.
  std::vector<Token> rest_ids() {
    std::vector<Token> out;
    while (!at_end()) out.push_back(id("an identifier"));
    return out;
  }

  void done() {
    if (!at_end()) throw DslError(ErrorCode::ParseError, l_.toks[i_].span, "unexpected token '" + l_.toks[i_].text + "'");
  }

 private:
  SourceSpan end_span() const {
    if (l_.toks.empty()) return l_.span;
    SourceSpan s = l_.toks.back().span;
    s.column += static_cast<int>(l_.toks.back().text.size());
    return s;
  }

  const Line& l_;
  std::size_t i_;
};

inline std::pair<std::string, std::string> split_ref(const std::string& s) {
  auto p = s.find('/');
  if (p == std::string::npos) return {"", s};
  return {s.substr(0, p), s.substr(p + 1)};
}

// ---------------------------------------------------------------------------
// Workspace

/// A named declaration with its source position, the names it refers to,
/// and the outcome of its law check.
template <class T>
struct Entry {
  T value;
  SourceSpan span;
  std::vector<std::string> refs;
  Report laws;
};

struct NamedCone {
  Cone cone;
  std::string diagram;
};

class Workspace {
 public:
  std::map<std::string, Entry<FinCat>> categories;
  std::map<std::string, Entry<DispCat>> displays;
  std::map<std::string, Entry<FunctorData>> functors;
  std::map<std::string, Entry<NatTransData>> nattrans;
  std::map<std::string, Entry<Monad>> monads;
  std::map<std::string, Entry<Presheaf>> presheaves;
  std::map<std::string, Entry<Graph>> graphs;
  std::map<std::string, Entry<Diagram>> diagrams;
  std::map<std::string, Entry<NamedCone>> cones;
  std::map<std::string, Entry<StandardStructure>> structures;
  std::map<std::string, Entry<CwA>> cwas;
  std::vector<std::pair<std::string, std::string>> order;  // (kind, name) in declaration order

  void load_string(std::string_view text, const std::string& file = "<input>") {
    for (const Decl& d : parse(text, file)) elaborate(d);
  }

  void load_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DslError(ErrorCode::ParseError, {path, 0, 0}, "cannot read file");
    std::stringstream ss;
    ss << in.rdbuf();
    load_string(ss.str(), path);
  }

  /// Law-check reports of every declaration, in declaration order.
  std::vector<std::pair<std::string, const Report*>> law_reports() const {
    std::vector<std::pair<std::string, const Report*>> out;
    for (const auto& [kind, name] : order) out.emplace_back(kind + " " + name, &laws_of(kind, name));
    return out;
  }

  bool all_valid() const {
    for (const auto& [label, r] : law_reports()) {
      if (!r->passed()) return false;
    }
    return true;
  }

  const Report& laws_of(const std::string& kind, const std::string& name) const {
    if (kind == "category") return categories.at(name).laws;
    if (kind == "display") return displays.at(name).laws;
    if (kind == "functor") return functors.at(name).laws;
    if (kind == "nattrans") return nattrans.at(name).laws;
    if (kind == "monad") return monads.at(name).laws;
    if (kind == "presheaf") return presheaves.at(name).laws;
    if (kind == "graph") return graphs.at(name).laws;
    if (kind == "diagram") return diagrams.at(name).laws;
    if (kind == "cone") return cones.at(name).laws;
    if (kind == "structure") return structures.at(name).laws;
    return cwas.at(name).laws;
  }

  /// Name of a declared category equal to `c`, if any.
  std::optional<std::string> category_name(const FinCat& c) const {
    for (const auto& [kind, name] : order) {
      if (kind == "category" && categories.at(name).value == c) return name;
    }
    return std::nullopt;
  }

  std::optional<std::string> presheaf_name(const Presheaf& p) const {
    for (const auto& [kind, name] : order) {
      if (kind == "presheaf" && presheaves.at(name).value == p) return name;
    }
    return std::nullopt;
  }

 private:
  template <class T>
  static const Entry<T>& lookup(const std::map<std::string, Entry<T>>& m, const Token& t, const char* kind) {
    auto it = m.find(t.text);
    if (it == m.end()) throw DslError(ErrorCode::UnresolvedReference, t.span, std::string("unknown ") + kind + " '" + t.text + "'");
    if (!it->second.laws.passed()) {
      throw DslError(ErrorCode::MalformedInput, t.span, std::string(kind) + " '" + t.text + "' fails its law check");
    }
    return it->second;
  }

  const FinCat& cat(const Token& t) const { return lookup(categories, t, "category").value; }
  const DispCat& disp(const Token& t) const { return lookup(displays, t, "display").value; }
  const FunctorData& functor(const Token& t) const { return lookup(functors, t, "functor").value; }
  const NatTransData& nat(const Token& t) const { return lookup(nattrans, t, "natural transformation").value; }
  const Monad& monad(const Token& t) const { return lookup(monads, t, "monad").value; }
  const Presheaf& presheaf(const Token& t) const { return lookup(presheaves, t, "presheaf").value; }
  const Graph& graph(const Token& t) const { return lookup(graphs, t, "graph").value; }
  const Diagram& diagram(const Token& t) const { return lookup(diagrams, t, "diagram").value; }
  const StandardStructure& structure(const Token& t) const { return lookup(structures, t, "structure").value; }

  static ObjIx obj(const FinCat& c, const Token& t) {
    if (auto x = c.find_object(t.text)) return *x;
    throw DslError(ErrorCode::UnresolvedReference, t.span, "unknown object '" + t.text + "'");
  }
  static MorIx mor(const FinCat& c, const Token& t) {
    if (auto x = c.find_morphism(t.text)) return *x;
    throw DslError(ErrorCode::UnresolvedReference, t.span, "unknown morphism '" + t.text + "'");
  }
  static std::uint32_t element(const std::vector<std::string>& set, const Token& t, const std::string& where) {
    for (std::uint32_t i = 0; i < set.size(); ++i) {
      if (set[i] == t.text) return i;
    }
    throw DslError(ErrorCode::UnresolvedReference, t.span, "unknown element '" + t.text + "' over " + where);
  }

  template <class T>
  void add(std::map<std::string, Entry<T>>& m, const Decl& d, T value, std::vector<std::string> refs, Report laws) {
    laws.command = "laws";
    laws.targets = {d.name.text};
    m.emplace(d.name.text, Entry<T>{std::move(value), d.name.span, std::move(refs), std::move(laws)});
    order.emplace_back(d.kind, d.name.text);
  }

  template <class T>
  void check_fresh(const std::map<std::string, Entry<T>>& m, const Decl& d) const {
    if (m.count(d.name.text)) {
      throw DslError(ErrorCode::DuplicateName, d.name.span, "duplicate " + d.kind + " '" + d.name.text + "'");
    }
  }

  void elaborate(const Decl& d) {
    try {
      if (d.kind == "category") return category_decl(d);
      if (d.kind == "display") return display_decl(d);
      if (d.kind == "functor") return functor_decl(d);
      if (d.kind == "nattrans") return nattrans_decl(d);
      if (d.kind == "monad") return monad_decl(d);
      if (d.kind == "presheaf") return presheaf_decl(d);
      if (d.kind == "graph") return graph_decl(d);
      if (d.kind == "diagram") return diagram_decl(d);
      if (d.kind == "cone") return cone_decl(d);
      if (d.kind == "structure") return structure_decl(d);
      return cwa_decl(d);
    } catch (const DslError&) {
      throw;
    } catch (const Error& e) {
      std::string msg = e.what();
      const std::string prefix = std::string(to_string(e.code())) + ": ";
      if (msg.rfind(prefix, 0) == 0) msg = msg.substr(prefix.size());
      throw DslError(e.code(), d.name.span, msg);
    }
  }

  static const std::vector<Line>& no_body(const Decl& d) {
    if (!d.body.empty()) throw DslError(ErrorCode::ParseError, d.body.front().span, "unexpected body");
    return d.body;
  }

  static void unknown_line(const Line& l, const Decl& d) {
    throw DslError(ErrorCode::ParseError, l.span, "unknown line '" + l.toks.front().text + "' in " + d.kind + " block");
  }

  // -- categories ----------------------------------------------------------

  void category_decl(const Decl& d) {
    check_fresh(categories, d);
    Cursor h(d.header, 2);
    if (d.derived) {
      h.expect("=");
      const Token& ctor = h.id("a constructor");
      const std::string& k = ctor.text;
      FinCat c;
      std::vector<std::string> refs;
      if (k == "total") {
        const Token& a = h.id("a display");
        c = total_category(disp(a)).cat;
        refs = {a.text};
      } else if (k == "fibre") {
        const Token& a = h.id("a display");
        const Token& x = h.id("an object");
        c = fibre_category(disp(a), obj(disp(a).base(), x));
        refs = {a.text, x.text};
      } else if (k == "product") {
        const Token& a = h.id("a category");
        const Token& b = h.id("a category");
        c = product(cat(a), cat(b));
        refs = {a.text, b.text};
      } else if (k == "opposite") {
        const Token& a = h.id("a category");
        c = opposite(cat(a));
        refs = {a.text};
      } else if (k == "arrows") {
        const Token& a = h.id("a category");
        c = arrow_category(cat(a));
        refs = {a.text};
      } else if (k == "functors") {
        const Token& a = h.id("a category");
        const Token& b = h.id("a category");
        c = functor_category(cat(a), cat(b)).cat;
        refs = {a.text, b.text};
      } else if (k == "fullsub") {
        const Token& a = h.id("a category");
        h.expect(":");
        std::vector<bool> sel(cat(a).num_objects(), false);
        for (const Token& t : h.rest_ids()) sel[obj(cat(a), t)] = true;
        c = full_subcategory(cat(a), sel);
        refs = {a.text};
      } else {
        throw DslError(ErrorCode::ParseError, ctor.span, "unknown category constructor '" + k + "'");
      }
      h.done();
      no_body(d);
      add(categories, d, c, refs, check_category_laws(c));
      return;
    }
    h.done();
    CategoryBuilder b;
    std::map<std::string, MorIx> names;
    std::map<std::string, SourceSpan> idn;
    for (const Line& l : d.body) {
      if (l.toks.front().text != "obj") continue;
      Cursor cur(l, 1);
      for (const Token& t : cur.rest_ids()) {
        if (b.num_objects() > 0 && has_object(b, t.text)) {
          throw DslError(ErrorCode::DuplicateName, t.span, "duplicate object '" + t.text + "'");
        }
        b.add_object(t.text);
      }
    }
    std::set<ObjIx> renamed;
    for (const Line& l : d.body) {
      if (l.toks.front().text != "idn") continue;
      Cursor cur(l, 1);
      const Token& x = cur.id("an object");
      cur.expect("=");
      const Token& n = cur.id("an identity name");
      cur.done();
      ObjIx c = builder_obj(b, x);
      if (!renamed.insert(c).second) throw DslError(ErrorCode::DuplicateName, x.span, "identity of '" + x.text + "' named twice");
      b.set_identity_name(c, n.text);
    }
    for (ObjIx c = 0; c < b.num_objects(); ++c) {
      const std::string label = b.identity_label_of(c);
      if (!names.emplace(label, b.identity_ref(c)).second) {
        throw DslError(ErrorCode::DuplicateName, d.name.span, "duplicate morphism '" + label + "'");
      }
    }
    for (const Line& l : d.body) {
      const std::string& kw = l.toks.front().text;
      if (kw == "obj" || kw == "idn" || kw == "comp") continue;
      if (kw != "mor") unknown_line(l, d);
      Cursor cur(l, 1);
      std::vector<Token> ids;
      while (!cur.peek(":")) ids.push_back(cur.id("a morphism name"));
      if (ids.empty()) throw DslError(ErrorCode::ParseError, l.span, "expected a morphism name");
      cur.expect(":");
      const Token& s = cur.id("a source object");
      cur.expect("->");
      const Token& t = cur.id("a target object");
      cur.done();
      for (const Token& f : ids) {
        if (names.count(f.text)) throw DslError(ErrorCode::DuplicateName, f.span, "duplicate morphism '" + f.text + "'");
        names.emplace(f.text, b.add_morphism(f.text, builder_obj(b, s), builder_obj(b, t)));
      }
    }
    std::set<std::pair<MorIx, MorIx>> seen;
    for (const Line& l : d.body) {
      if (l.toks.front().text != "comp") continue;
      Cursor cur(l, 1);
      const Token& f = cur.id("a morphism");
      const Token& g = cur.id("a morphism");
      cur.expect("=");
      const Token& h2 = cur.id("a morphism");
      cur.done();
      auto ref = [&](const Token& t) {
        auto it = names.find(t.text);
        if (it == names.end()) throw DslError(ErrorCode::UnresolvedReference, t.span, "unknown morphism '" + t.text + "'");
        return it->second;
      };
      MorIx ff = ref(f), gg = ref(g), hh = ref(h2);
      if (!seen.emplace(ff, gg).second) {
        throw DslError(ErrorCode::DuplicateName, f.span, "duplicate comp entry for (" + f.text + ", " + g.text + ")");
      }
      b.set_composite(ff, gg, hh);
    }
    FinCat c = b.build();
    add(categories, d, c, {}, check_category_laws(c));
  }

  static bool has_object(const CategoryBuilder& b, const std::string& id) {
    try {
      b.object_ref(id);
      return true;
    } catch (const Error&) {
      return false;
    }
  }

  static ObjIx builder_obj(const CategoryBuilder& b, const Token& t) {
    try {
      return b.object_ref(t.text);
    } catch (const Error&) {
      throw DslError(ErrorCode::UnresolvedReference, t.span, "unknown object '" + t.text + "'");
    }
  }

  // -- displays ------------------------------------------------------------

  void display_decl(const Decl& d) {
    check_fresh(displays, d);
    Cursor h(d.header, 2);
    if (d.derived) {
      h.expect("=");
      const Token& ctor = h.id("a constructor");
      const std::string& k = ctor.text;
      DispCat out;
      std::vector<std::string> refs;
      auto one_cat = [&](auto&& f) {
        const Token& a = h.id("a category");
        out = f(cat(a));
        refs = {a.text};
      };
      if (k == "slice") {
        one_cat([](const FinCat& c) { return slice_display(c); });
      } else if (k == "coslice") {
        one_cat([](const FinCat& c) { return coslice_display(c); });
      } else if (k == "slicesigma") {
        one_cat([](const FinCat& c) { return slice_via_sigma(c); });
      } else if (k == "coslicesigma") {
        one_cat([](const FinCat& c) { return coslice_via_sigma(c); });
      } else if (k == "arrow") {
        one_cat([](const FinCat& c) { return arrow_display(c); });
      } else if (k == "const") {
        const Token& a = h.id("a category");
        const Token& b = h.id("a category");
        out = constant_display(cat(a), cat(b));
        refs = {a.text, b.text};
      } else if (k == "fullsub") {
        const Token& a = h.id("a category");
        h.expect(":");
        std::vector<bool> sel(cat(a).num_objects(), false);
        for (const Token& t : h.rest_ids()) sel[obj(cat(a), t)] = true;
        out = full_sub_display(cat(a), sel);
        refs = {a.text};
      } else if (k == "falg") {
        const Token& a = h.id("a functor");
        out = endofunctor_algebra_display(functor(a));
        refs = {a.text};
      } else if (k == "malg") {
        const Token& a = h.id("a monad");
        out = monad_algebra_display(monad(a));
        refs = {a.text};
      } else if (k == "elements") {
        const Token& a = h.id("a presheaf");
        out = presheaf_to_discrete_fibration(presheaf(a));
        refs = {a.text};
      } else if (k == "sip") {
        const Token& a = h.id("a structure");
        out = sip_to_display(structure(a));
        refs = {a.text};
      } else if (k == "reindex") {
        const Token& a = h.id("a display");
        const Token& f = h.id("a functor");
        out = reindex(disp(a), functor(f));
        refs = {a.text, f.text};
      } else if (k == "sigma") {
        const Token& a = h.id("a display");
        const Token& b = h.id("a display");
        out = sigma_display(disp(a), disp(b));
        refs = {a.text, b.text};
      } else if (k == "op") {
        const Token& a = h.id("a display");
        out = op_display(disp(a));
        refs = {a.text};
      } else if (k == "dfunctors") {
        const Token& a = h.id("a display");
        const Token& b = h.id("a display");
        out = disp_functor_category(disp(a), disp(b)).disp;
        refs = {a.text, b.text};
      } else {
        throw DslError(ErrorCode::ParseError, ctor.span, "unknown display constructor '" + k + "'");
      }
      h.done();
      no_body(d);
      add(displays, d, out, refs, check_displayed_laws(out));
      return;
    }
    h.expect_word("over");
    const Token& base_tok = h.id("a base category");
    h.done();
    const FinCat& C = cat(base_tok);
    DispBuilder b(C);
    for (const Line& l : d.body) {
      if (l.toks.front().text != "dobj") continue;
      Cursor cur(l, 1);
      const Token& c = cur.id("a base object");
      cur.expect(":");
      const ObjIx ci = obj(C, c);
      for (const Token& x : cur.rest_ids()) {
        if (b.find_dobj(ci, x.text)) {
          throw DslError(ErrorCode::DuplicateName, x.span, "duplicate displayed object '" + x.text + "' over " + c.text);
        }
        b.add_dobj(ci, x.text);
      }
    }
    auto dobj_ref = [&](const Token& t, std::optional<ObjIx> over) -> DObjIx {
      auto [q, id] = split_ref(t.text);
      if (!q.empty()) {
        ObjIx c = obj(C, Token{q, t.span, false});
        if (over && *over != c) {
          throw DslError(ErrorCode::UnresolvedReference, t.span, "'" + t.text + "' does not lie over " + C.object_id(*over));
        }
        over = c;
      }
      if (over) {
        if (auto x = b.find_dobj(*over, id)) return *x;
        throw DslError(ErrorCode::UnresolvedReference, t.span, "unknown displayed object '" + id + "' over " + C.object_id(*over));
      }
      std::vector<DObjIx> hits;
      for (ObjIx c = 0; c < C.num_objects(); ++c) {
        if (auto x = b.find_dobj(c, id)) hits.push_back(*x);
      }
      if (hits.size() == 1) return hits.front();
      if (hits.empty()) throw DslError(ErrorCode::UnresolvedReference, t.span, "unknown displayed object '" + id + "'");
      throw DslError(ErrorCode::UnresolvedReference, t.span, "ambiguous displayed object '" + id + "'; qualify it as c/" + id);
    };
    auto dmor_ref = [&](const Token& t, std::optional<MorIx> over) -> DMorIx {
      auto [q, id] = split_ref(t.text);
      if (!q.empty()) over = mor(C, Token{q, t.span, false});
      if (over) {
        if (auto m = b.find_dmor(*over, id)) return *m;
        throw DslError(ErrorCode::UnresolvedReference, t.span,
                       "unknown displayed morphism '" + id + "' over " + C.morphism_id(*over));
      }
      std::vector<DMorIx> hits;
      for (MorIx f = 0; f < C.num_morphisms(); ++f) {
        if (auto m = b.find_dmor(f, id)) hits.push_back(*m);
      }
      if (hits.size() == 1) return hits.front();
      if (hits.empty()) throw DslError(ErrorCode::UnresolvedReference, t.span, "unknown displayed morphism '" + id + "'");
      throw DslError(ErrorCode::UnresolvedReference, t.span, "ambiguous displayed morphism '" + id + "'; qualify it as f/" + id);
    };
    for (const Line& l : d.body) {
      const std::string& kw = l.toks.front().text;
      if (kw == "dobj" || kw == "dcomp" || kw == "did") continue;
      if (kw != "dmor") unknown_line(l, d);
      Cursor cur(l, 1);
      const Token& id = cur.id("a displayed morphism name");
      cur.expect(":");
      const Token& x = cur.ref("a source");
      cur.expect("->");
      const Token& y = cur.ref("a target");
      cur.expect_word("over");
      const Token& f = cur.id("a base morphism");
      cur.done();
      const MorIx fi = mor(C, f);
      if (b.find_dmor(fi, id.text)) {
        throw DslError(ErrorCode::DuplicateName, id.span, "duplicate displayed morphism '" + id.text + "' over " + f.text);
      }
      b.add_dmor(fi, dobj_ref(x, C.src(fi)), dobj_ref(y, C.dst(fi)), id.text);
    }
    std::set<DObjIx> with_did;
    std::set<std::pair<DMorIx, DMorIx>> seen;
    for (const Line& l : d.body) {
      const std::string& kw = l.toks.front().text;
      Cursor cur(l, 1);
      if (kw == "did") {
        const Token& x = cur.ref("a displayed object");
        cur.expect("=");
        const Token& i = cur.ref("a displayed morphism");
        cur.done();
        DObjIx xi = dobj_ref(x, std::nullopt);
        if (!with_did.insert(xi).second) throw DslError(ErrorCode::DuplicateName, x.span, "duplicate did for '" + x.text + "'");
        b.set_did(xi, dmor_ref(i, C.identity(b.dobj(xi).over)));
      } else if (kw == "dcomp") {
        const Token& f = cur.ref("a displayed morphism");
        const Token& g = cur.ref("a displayed morphism");
        cur.expect("=");
        const Token& hh = cur.ref("a displayed morphism");
        cur.done();
        DMorIx fi = dmor_ref(f, std::nullopt), gi = dmor_ref(g, std::nullopt);
        DMorIx hi = dmor_ref(hh, std::nullopt);
        if (!seen.emplace(fi, gi).second) {
          throw DslError(ErrorCode::DuplicateName, f.span, "duplicate dcomp entry for (" + f.text + ", " + g.text + ")");
        }
        b.set_dcomp(fi, gi, hi);
      }
    }
    DispCat out = b.build();
    add(displays, d, out, {base_tok.text}, check_displayed_laws(out));
  }

  // -- functors, transformations, monads ------------------------------------

  void functor_decl(const Decl& d) {
    check_fresh(functors, d);
    Cursor h(d.header, 2);
    if (d.derived) {
      h.expect("=");
      const Token& ctor = h.id("a constructor");
      const std::string& k = ctor.text;
      FunctorData F;
      std::vector<std::string> refs;
      if (k == "identity") {
        const Token& a = h.id("a category");
        F = identity_functor(cat(a));
        refs = {a.text};
      } else if (k == "terminal") {
        const Token& a = h.id("a category");
        const Token& b = h.id("a one-object category");
        F = terminal_functor(cat(a), cat(b));
        refs = {a.text, b.text};
      } else if (k == "compose") {
        const Token& a = h.id("a functor");
        const Token& b = h.id("a functor");
        F = compose_functors(functor(a), functor(b));
        refs = {a.text, b.text};
      } else if (k == "projection") {
        const Token& a = h.id("a display");
        F = total_category(disp(a)).projection;
        refs = {a.text};
      } else {
        throw DslError(ErrorCode::ParseError, ctor.span, "unknown functor constructor '" + k + "'");
      }
      h.done();
      no_body(d);
      add(functors, d, F, refs, check_functor_laws(F));
      return;
    }
    h.expect(":");
    const Token& a = h.id("a domain category");
    h.expect("->");
    const Token& b = h.id("a codomain category");
    h.done();
    const FinCat &C = cat(a), &D = cat(b);
    FunctorData F{C, D, std::vector<ObjIx>(C.num_objects(), kNone), std::vector<MorIx>(C.num_morphisms(), kNone)};
    for (const Line& l : d.body) {
      const std::string& kw = l.toks.front().text;
      Cursor cur(l, 1);
      if (kw == "fobj") {
        const Token& x = cur.id("an object");
        cur.expect("=");
        const Token& y = cur.id("an object");
        cur.done();
        ObjIx xi = obj(C, x);
        if (F.on_obj[xi] != kNone) throw DslError(ErrorCode::DuplicateName, x.span, "object '" + x.text + "' mapped twice");
        F.on_obj[xi] = obj(D, y);
      } else if (kw == "fmor") {
        const Token& x = cur.id("a morphism");
        cur.expect("=");
        const Token& y = cur.id("a morphism");
        cur.done();
        MorIx xi = mor(C, x);
        if (F.on_mor[xi] != kNone) throw DslError(ErrorCode::DuplicateName, x.span, "morphism '" + x.text + "' mapped twice");
        F.on_mor[xi] = mor(D, y);
      } else {
        unknown_line(l, d);
      }
    }
    for (ObjIx c = 0; c < C.num_objects(); ++c) {
      MorIx id = C.identity(c);
      if (F.on_mor[id] == kNone && F.on_obj[c] != kNone) F.on_mor[id] = D.identity(F.on_obj[c]);
    }
    add(functors, d, F, {a.text, b.text}, check_functor_laws(F));
  }

  void nattrans_decl(const Decl& d) {
    check_fresh(nattrans, d);
    if (d.derived) throw DslError(ErrorCode::ParseError, d.header.span, "natural transformations are declared as blocks");
    Cursor h(d.header, 2);
    h.expect(":");
    const Token& a = h.id("a functor");
    h.expect("=>");
    const Token& b = h.id("a functor");
    h.done();
    const FunctorData &F = functor(a), &G = functor(b);
    if (!(F.dom == G.dom) || !(F.cod == G.cod)) {
      throw DslError(ErrorCode::BaseMismatch, b.span, "'" + a.text + "' and '" + b.text + "' are not parallel");
    }
    NatTransData t{F, G, std::vector<MorIx>(F.dom.num_objects(), kNone)};
    for (const Line& l : d.body) {
      if (l.toks.front().text != "at") unknown_line(l, d);
      Cursor cur(l, 1);
      const Token& x = cur.id("an object");
      cur.expect("=");
      const Token& m = cur.id("a morphism");
      cur.done();
      ObjIx xi = obj(F.dom, x);
      if (t.components[xi] != kNone) throw DslError(ErrorCode::DuplicateName, x.span, "component at '" + x.text + "' given twice");
      t.components[xi] = mor(F.cod, m);
    }
    for (ObjIx x = 0; x < t.components.size(); ++x) {
      if (t.components[x] == kNone) {
        throw DslError(ErrorCode::MalformedInput, d.name.span, "no component at '" + F.dom.object_id(x) + "'");
      }
    }
    add(nattrans, d, t, {a.text, b.text}, check_nat_trans(t));
  }

  void monad_decl(const Decl& d) {
    check_fresh(monads, d);
    Cursor h(d.header, 2);
    h.expect("=");
    const Token& t = h.id("an endofunctor");
    const Token& mu = h.id("a multiplication");
    const Token& eta = h.id("a unit");
    h.done();
    Monad m{functor(t), nat(mu), nat(eta)};
    add(monads, d, m, {t.text, mu.text, eta.text}, check_monad(m));
  }

  // -- presheaves ----------------------------------------------------------

  void presheaf_decl(const Decl& d) {
    check_fresh(presheaves, d);
    Cursor h(d.header, 2);
    if (d.derived) {
      h.expect("=");
      const Token& ctor = h.id("a constructor");
      const std::string& k = ctor.text;
      Presheaf p;
      std::vector<std::string> refs;
      if (k == "representable") {
        const Token& a = h.id("a category");
        const Token& x = h.id("an object");
        p = representable_presheaf(cat(a), obj(cat(a), x));
        refs = {a.text, x.text};
      } else if (k == "terminal") {
        const Token& a = h.id("a category");
        p = terminal_presheaf(cat(a));
        refs = {a.text};
      } else if (k == "of") {
        const Token& a = h.id("a display");
        p = discrete_fibration_to_presheaf(disp(a));
        refs = {a.text};
      } else {
        throw DslError(ErrorCode::ParseError, ctor.span, "unknown presheaf constructor '" + k + "'");
      }
      h.done();
      no_body(d);
      add(presheaves, d, p, refs, check_presheaf_laws(p));
      return;
    }
    h.expect_word("on");
    const Token& a = h.id("a base category");
    h.done();
    const FinCat& C = cat(a);
    Presheaf p{C, std::vector<std::vector<std::string>>(C.num_objects()), {}};
    for (const Line& l : d.body) {
      if (l.toks.front().text != "pobj") continue;
      Cursor cur(l, 1);
      const Token& c = cur.id("an object");
      cur.expect(":");
      auto& set = p.sets[obj(C, c)];
      for (const Token& e : cur.rest_ids()) {
        if (std::find(set.begin(), set.end(), e.text) != set.end()) {
          throw DslError(ErrorCode::DuplicateName, e.span, "duplicate element '" + e.text + "' over " + c.text);
        }
        set.push_back(e.text);
      }
    }
    for (auto& s : p.sets) std::sort(s.begin(), s.end());
    p.restrict.resize(C.num_morphisms());
    for (MorIx f = 0; f < C.num_morphisms(); ++f) p.restrict[f].assign(p.sets[C.dst(f)].size(), kNone);
    for (const Line& l : d.body) {
      const std::string& kw = l.toks.front().text;
      if (kw == "pobj") continue;
      if (kw != "pmor") unknown_line(l, d);
      Cursor cur(l, 1);
      const Token& f = cur.id("a morphism");
      cur.expect(":");
      const Token& e = cur.id("an element");
      cur.expect("->");
      const Token& e2 = cur.id("an element");
      cur.done();
      MorIx fi = mor(C, f);
      std::uint32_t from = element(p.sets[C.dst(fi)], e, C.object_id(C.dst(fi)));
      std::uint32_t to = element(p.sets[C.src(fi)], e2, C.object_id(C.src(fi)));
      if (p.restrict[fi][from] != kNone) {
        throw DslError(ErrorCode::DuplicateName, e.span, "action of '" + f.text + "' on '" + e.text + "' given twice");
      }
      p.restrict[fi][from] = to;
    }
    for (ObjIx c = 0; c < C.num_objects(); ++c) {
      auto& r = p.restrict[C.identity(c)];
      for (std::uint32_t i = 0; i < r.size(); ++i) {
        if (r[i] == kNone) r[i] = i;
      }
    }
    add(presheaves, d, p, {a.text}, check_presheaf_laws(p));
  }

  // -- graphs, diagrams, cones ---------------------------------------------

  void graph_decl(const Decl& d) {
    check_fresh(graphs, d);
    Cursor h(d.header, 2);
    Graph g;
    if (d.derived) {
      h.expect("=");
      const Token& ctor = h.id("a shape");
      if (ctor.text == "empty") {
        g = empty_shape();
      } else if (ctor.text == "single") {
        g = single_node_shape();
      } else if (ctor.text == "discrete2") {
        g = discrete_two_shape();
      } else if (ctor.text == "cospan") {
        g = cospan_shape();
      } else {
        throw DslError(ErrorCode::ParseError, ctor.span, "unknown shape '" + ctor.text + "'");
      }
      h.done();
      no_body(d);
      add(graphs, d, g, {}, Report("laws"));
      return;
    }
    h.done();
    auto node = [&](const Token& t) -> std::uint32_t {
      for (std::uint32_t j = 0; j < g.nodes.size(); ++j) {
        if (g.nodes[j] == t.text) return j;
      }
      throw DslError(ErrorCode::UnresolvedReference, t.span, "unknown node '" + t.text + "'");
    };
    for (const Line& l : d.body) {
      if (l.toks.front().text != "node") continue;
      Cursor cur(l, 1);
      for (const Token& t : cur.rest_ids()) {
        if (std::find(g.nodes.begin(), g.nodes.end(), t.text) != g.nodes.end()) {
          throw DslError(ErrorCode::DuplicateName, t.span, "duplicate node '" + t.text + "'");
        }
        g.nodes.push_back(t.text);
      }
    }
    for (const Line& l : d.body) {
      const std::string& kw = l.toks.front().text;
      if (kw == "node") continue;
      if (kw != "edge") unknown_line(l, d);
      Cursor cur(l, 1);
      const Token& e = cur.id("an edge name");
      cur.expect(":");
      const Token& s = cur.id("a node");
      cur.expect("->");
      const Token& t = cur.id("a node");
      cur.done();
      for (const auto& ge : g.edges) {
        if (ge.id == e.text) throw DslError(ErrorCode::DuplicateName, e.span, "duplicate edge '" + e.text + "'");
      }
      g.edges.push_back({e.text, node(s), node(t)});
    }
    add(graphs, d, g, {}, Report("laws"));
  }

  void diagram_decl(const Decl& d) {
    check_fresh(diagrams, d);
    if (d.derived) throw DslError(ErrorCode::ParseError, d.header.span, "diagrams are declared as blocks");
    Cursor h(d.header, 2);
    h.expect(":");
    const Token& gt = h.id("a graph");
    h.expect_word("in");
    const Token& ct = h.id("a category");
    h.done();
    const Graph& g = graph(gt);
    const FinCat& C = cat(ct);
    Diagram dg{g, C, std::vector<ObjIx>(g.nodes.size(), kNone), std::vector<MorIx>(g.edges.size(), kNone)};
    for (const Line& l : d.body) {
      const std::string& kw = l.toks.front().text;
      Cursor cur(l, 1);
      if (kw == "onode") {
        const Token& j = cur.id("a node");
        cur.expect("=");
        const Token& c = cur.id("an object");
        cur.done();
        auto it = std::find(g.nodes.begin(), g.nodes.end(), j.text);
        if (it == g.nodes.end()) throw DslError(ErrorCode::UnresolvedReference, j.span, "unknown node '" + j.text + "'");
        auto& slot = dg.on_node[static_cast<std::size_t>(it - g.nodes.begin())];
        if (slot != kNone) throw DslError(ErrorCode::DuplicateName, j.span, "node '" + j.text + "' mapped twice");
        slot = obj(C, c);
      } else if (kw == "oedge") {
        const Token& e = cur.id("an edge");
        cur.expect("=");
        const Token& f = cur.id("a morphism");
        cur.done();
        auto it = std::find_if(g.edges.begin(), g.edges.end(), [&](const GraphEdge& ge) { return ge.id == e.text; });
        if (it == g.edges.end()) throw DslError(ErrorCode::UnresolvedReference, e.span, "unknown edge '" + e.text + "'");
        auto& slot = dg.on_edge[static_cast<std::size_t>(it - g.edges.begin())];
        if (slot != kNone) throw DslError(ErrorCode::DuplicateName, e.span, "edge '" + e.text + "' mapped twice");
        slot = mor(C, f);
      } else {
        unknown_line(l, d);
      }
    }
    Report laws("laws");
    for (std::size_t j = 0; j < g.nodes.size(); ++j) {
      if (dg.on_node[j] == kNone) laws.fail("incomplete", "node '" + g.nodes[j] + "' is not mapped", {g.nodes[j]});
    }
    if (laws.passed()) laws.absorb(check_diagram(dg));
    add(diagrams, d, dg, {gt.text, ct.text}, laws);
  }

  void cone_decl(const Decl& d) {
    check_fresh(cones, d);
    if (d.derived) throw DslError(ErrorCode::ParseError, d.header.span, "cones are declared as blocks");
    Cursor h(d.header, 2);
    h.expect(":");
    const Token& dt = h.id("a diagram");
    h.done();
    const Diagram& dg = diagram(dt);
    const FinCat& C = dg.target;
    Cone k{kNone, std::vector<MorIx>(dg.shape.nodes.size(), kNone)};
    for (const Line& l : d.body) {
      const std::string& kw = l.toks.front().text;
      Cursor cur(l, 1);
      if (kw == "vertex") {
        const Token& v = cur.id("an object");
        cur.done();
        if (k.vertex != kNone) throw DslError(ErrorCode::DuplicateName, v.span, "vertex given twice");
        k.vertex = obj(C, v);
      } else if (kw == "leg") {
        const Token& j = cur.id("a node");
        cur.expect("=");
        const Token& f = cur.id("a morphism");
        cur.done();
        auto it = std::find(dg.shape.nodes.begin(), dg.shape.nodes.end(), j.text);
        if (it == dg.shape.nodes.end()) throw DslError(ErrorCode::UnresolvedReference, j.span, "unknown node '" + j.text + "'");
        auto& slot = k.legs[static_cast<std::size_t>(it - dg.shape.nodes.begin())];
        if (slot != kNone) throw DslError(ErrorCode::DuplicateName, j.span, "leg at '" + j.text + "' given twice");
        slot = mor(C, f);
      } else {
        unknown_line(l, d);
      }
    }
    Report laws("laws");
    if (k.vertex == kNone) {
      laws.fail("incomplete", "cone has no vertex");
    } else if (std::count(k.legs.begin(), k.legs.end(), kNone) > 0) {
      laws.fail("incomplete", "cone is missing a leg");
    } else if (!is_cone(dg, k)) {
      laws.fail("not_a_cone", "legs do not form a cone over " + dt.text);
    }
    add(cones, d, NamedCone{k, dt.text}, {dt.text}, laws);
  }

  // -- structures and CwAs -------------------------------------------------

  static Report structure_laws(const StandardStructure& s) {
    Report full = check_standard_structure(s);
    Report r("laws");
    for (const Finding& f : full.findings) {
      if (f.code == "identity_closure" || f.code == "composition_closure") r.fail(f.code, f.message, f.witnesses);
    }
    return r;
  }

  void structure_decl(const Decl& d) {
    check_fresh(structures, d);
    Cursor h(d.header, 2);
    if (d.derived) {
      h.expect("=");
      const Token& ctor = h.id("a constructor");
      const Token& a = h.id(ctor.text == "falg" ? "a functor" : "a monad");
      h.done();
      no_body(d);
      StandardStructure s;
      if (ctor.text == "falg") {
        s = falg_structure(functor(a));
      } else if (ctor.text == "monad") {
        s = monad_structure(monad(a));
      } else {
        throw DslError(ErrorCode::ParseError, ctor.span, "unknown structure constructor '" + ctor.text + "'");
      }
      add(structures, d, s, {a.text}, structure_laws(s));
      return;
    }
    h.expect_word("on");
    const Token& a = h.id("a base category");
    h.done();
    const FinCat& C = cat(a);
    StandardStructure s{C, std::vector<std::vector<std::string>>(C.num_objects()), {}};
    for (const Line& l : d.body) {
      if (l.toks.front().text != "sobj") continue;
      Cursor cur(l, 1);
      const Token& c = cur.id("an object");
      cur.expect(":");
      auto& set = s.P[obj(C, c)];
      for (const Token& e : cur.rest_ids()) {
        if (std::find(set.begin(), set.end(), e.text) != set.end()) {
          throw DslError(ErrorCode::DuplicateName, e.span, "duplicate structure '" + e.text + "' on " + c.text);
        }
        set.push_back(e.text);
      }
    }
    for (const Line& l : d.body) {
      const std::string& kw = l.toks.front().text;
      if (kw == "sobj") continue;
      if (kw != "shom") unknown_line(l, d);
      Cursor cur(l, 1);
      const Token& f = cur.id("a morphism");
      cur.expect(":");
      const Token& x = cur.id("a structure");
      cur.expect("->");
      const Token& y = cur.id("a structure");
      cur.done();
      MorIx fi = mor(C, f);
      s.H.emplace(fi, element(s.P[C.src(fi)], x, C.object_id(C.src(fi))),
                  element(s.P[C.dst(fi)], y, C.object_id(C.dst(fi))));
    }
    add(structures, d, s, {a.text}, structure_laws(s));
  }

  void cwa_decl(const Decl& d) {
    check_fresh(cwas, d);
    if (d.derived) throw DslError(ErrorCode::ParseError, d.header.span, "CwAs are declared as blocks");
    Cursor h(d.header, 2);
    h.expect_word("on");
    const Token& a = h.id("a base category");
    h.expect_word("with");
    const Token& pt = h.id("a types presheaf");
    h.done();
    const FinCat& C = cat(a);
    const Presheaf& T = presheaf(pt);
    if (!(T.base == C)) throw DslError(ErrorCode::BaseMismatch, pt.span, "'" + pt.text + "' is not a presheaf on " + a.text);
    CwA w{C, T, {}, {}, {}};
    for (ObjIx g = 0; g < C.num_objects(); ++g) {
      w.ext.emplace_back(T.sets[g].size(), kNone);
      w.proj.emplace_back(T.sets[g].size(), kNone);
    }
    for (MorIx f = 0; f < C.num_morphisms(); ++f) w.q.emplace_back(T.sets[C.dst(f)].size(), kNone);
    for (const Line& l : d.body) {
      const std::string& kw = l.toks.front().text;
      Cursor cur(l, 1);
      if (kw == "ext" || kw == "proj") {
        const Token& g = cur.id("an object");
        const Token& ty = cur.id("a type");
        cur.expect("=");
        const Token& v = cur.id(kw == "ext" ? "an object" : "a morphism");
        cur.done();
        ObjIx gi = obj(C, g);
        std::uint32_t ai = element(T.sets[gi], ty, g.text);
        auto& slot = kw == "ext" ? w.ext[gi][ai] : w.proj[gi][ai];
        if (slot != kNone) throw DslError(ErrorCode::DuplicateName, g.span, kw + " for " + g.text + "." + ty.text + " given twice");
        slot = kw == "ext" ? obj(C, v) : mor(C, v);
      } else if (kw == "q") {
        const Token& f = cur.id("a morphism");
        const Token& ty = cur.id("a type");
        cur.expect("=");
        const Token& v = cur.id("a morphism");
        cur.done();
        MorIx fi = mor(C, f);
        std::uint32_t ai = element(T.sets[C.dst(fi)], ty, C.object_id(C.dst(fi)));
        if (w.q[fi][ai] != kNone) throw DslError(ErrorCode::DuplicateName, f.span, "q for " + f.text + "." + ty.text + " given twice");
        w.q[fi][ai] = mor(C, v);
      } else {
        unknown_line(l, d);
      }
    }
    for (ObjIx g = 0; g < C.num_objects(); ++g) {
      for (std::uint32_t i = 0; i < T.sets[g].size(); ++i) {
        if (w.ext[g][i] == kNone || w.proj[g][i] == kNone) {
          throw DslError(ErrorCode::MalformedInput, d.name.span,
                         "no ext/proj for " + C.object_id(g) + "." + T.sets[g][i]);
        }
      }
    }
    for (MorIx f = 0; f < C.num_morphisms(); ++f) {
      for (std::uint32_t i = 0; i < w.q[f].size(); ++i) {
        if (w.q[f][i] != kNone) continue;
        if (C.is_identity(f)) {
          w.q[f][i] = C.identity(w.ext[C.dst(f)][i]);
        } else {
          throw DslError(ErrorCode::MalformedInput, d.name.span,
                         "no q for " + C.morphism_id(f) + "." + T.sets[C.dst(f)][i]);
        }
      }
    }
    add(cwas, d, w, {a.text, pt.text}, check_cwa_typing(w));
  }
};

// ---------------------------------------------------------------------------
// Emitter

inline std::string join(const std::vector<std::string>& v, const std::string& sep = " ") {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += sep;
    s += v[i];
  }
  return s;
}

inline std::string emit_category(const std::string& name, const FinCat& c) {
  std::ostringstream o;
  o << "category " << name << "\n";
  if (c.num_objects()) o << "  obj " << join(c.objects()) << "\n";
  for (ObjIx a = 0; a < c.num_objects(); ++a) {
    if (c.morphism_id(c.identity(a)) != identity_name(c.object_id(a))) {
      o << "  idn " << c.object_id(a) << " = " << c.morphism_id(c.identity(a)) << "\n";
    }
  }
  for (MorIx f = 0; f < c.num_morphisms(); ++f) {
    if (c.is_identity(f)) continue;
    o << "  mor " << c.morphism_id(f) << " : " << c.object_id(c.src(f)) << " -> " << c.object_id(c.dst(f)) << "\n";
  }
  for (const auto& [f, g, h] : c.composition_entries()) {
    if (c.is_identity(f) && c.src(g) == c.src(f) && h == g) continue;
    if (c.is_identity(g) && c.dst(f) == c.src(g) && h == f) continue;
    o << "  comp " << c.morphism_id(f) << " " << c.morphism_id(g) << " = " << c.morphism_id(h) << "\n";
  }
  o << "end\n";
  return o.str();
}

inline std::string emit_display(const std::string& name, const std::string& base, const DispCat& d) {
  const FinCat& C = d.base();
  std::map<std::string, std::size_t> mor_uses, obj_uses;
  for (const DMor& m : d.dmors()) ++mor_uses[m.id];
  for (const DObj& x : d.dobjs()) ++obj_uses[x.id];
  auto mref = [&](DMorIx m) { return mor_uses[d.dmor(m).id] > 1 ? d.dmor_label(m) : d.dmor(m).id; };
  auto oref = [&](DObjIx x) { return obj_uses[d.dobj(x).id] > 1 ? d.dobj_label(x) : d.dobj(x).id; };
  std::ostringstream o;
  o << "display " << name << " over " << base << "\n";
  for (ObjIx c = 0; c < C.num_objects(); ++c) {
    auto fib = d.fibre(c);
    if (fib.empty()) continue;
    o << "  dobj " << C.object_id(c) << " :";
    for (DObjIx x : fib) o << " " << d.dobj(x).id;
    o << "\n";
  }
  for (DMorIx m = 0; m < d.num_dmors(); ++m) {
    const DMor& mm = d.dmor(m);
    o << "  dmor " << mm.id << " : " << d.dobj(mm.src).id << " -> " << d.dobj(mm.dst).id << " over "
      << C.morphism_id(mm.over) << "\n";
  }
  std::vector<bool> is_did(d.num_dmors(), false);
  for (DObjIx x = 0; x < d.num_dobjs(); ++x) {
    is_did[d.did(x)] = true;
    if (d.family(C.identity(d.dobj(x).over), x, x).size() != 1) {
      o << "  did " << oref(x) << " = " << d.dmor(d.did(x)).id << "\n";
    }
  }
  for (const auto& [a, b, h] : d.composition_entries()) {
    if (is_did[a] && d.did(d.dmor(b).src) == a && h == b) continue;
    if (is_did[b] && d.did(d.dmor(a).dst) == b && h == a) continue;
    o << "  dcomp " << mref(a) << " " << mref(b) << " = " << mref(h) << "\n";
  }
  o << "end\n";
  return o.str();
}

inline std::string emit_functor(const std::string& name, const std::string& dom, const std::string& cod,
                                const FunctorData& F) {
  std::ostringstream o;
  o << "functor " << name << " : " << dom << " -> " << cod << "\n";
  for (ObjIx x = 0; x < F.dom.num_objects(); ++x) {
    o << "  fobj " << F.dom.object_id(x) << " = " << F.cod.object_id(F.on_obj[x]) << "\n";
  }
  for (MorIx f = 0; f < F.dom.num_morphisms(); ++f) {
    if (F.dom.is_identity(f) && F.on_mor[f] == F.cod.identity(F.on_obj[F.dom.src(f)])) continue;
    o << "  fmor " << F.dom.morphism_id(f) << " = " << F.cod.morphism_id(F.on_mor[f]) << "\n";
  }
  o << "end\n";
  return o.str();
}

inline std::string emit_nattrans(const std::string& name, const std::string& dom, const std::string& cod,
                                 const NatTransData& t) {
  std::ostringstream o;
  o << "nattrans " << name << " : " << dom << " => " << cod << "\n";
  for (ObjIx x = 0; x < t.components.size(); ++x) {
    o << "  at " << t.dom.dom.object_id(x) << " = " << t.dom.cod.morphism_id(t.components[x]) << "\n";
  }
  o << "end\n";
  return o.str();
}

inline std::string emit_presheaf(const std::string& name, const std::string& base, const Presheaf& p) {
  const FinCat& C = p.base;
  std::ostringstream o;
  o << "presheaf " << name << " on " << base << "\n";
  for (ObjIx c = 0; c < C.num_objects(); ++c) {
    o << "  pobj " << C.object_id(c) << " :";
    for (const auto& e : p.sets[c]) o << " " << e;
    o << "\n";
  }
  for (MorIx f = 0; f < C.num_morphisms(); ++f) {
    for (std::uint32_t e = 0; e < p.restrict[f].size(); ++e) {
      if (C.is_identity(f) && p.restrict[f][e] == e) continue;
      o << "  pmor " << C.morphism_id(f) << " : " << p.sets[C.dst(f)][e] << " -> " << p.sets[C.src(f)][p.restrict[f][e]]
        << "\n";
    }
  }
  o << "end\n";
  return o.str();
}

inline std::string emit_graph(const std::string& name, const Graph& g) {
  std::ostringstream o;
  o << "graph " << name << "\n";
  if (!g.nodes.empty()) o << "  node " << join(g.nodes) << "\n";
  for (const auto& e : g.edges) o << "  edge " << e.id << " : " << g.nodes[e.src] << " -> " << g.nodes[e.dst] << "\n";
  o << "end\n";
  return o.str();
}

inline std::string emit_diagram(const std::string& name, const std::string& graph, const std::string& cat,
                                const Diagram& dg) {
  std::ostringstream o;
  o << "diagram " << name << " : " << graph << " in " << cat << "\n";
  for (std::size_t j = 0; j < dg.shape.nodes.size(); ++j) {
    o << "  onode " << dg.shape.nodes[j] << " = " << dg.target.object_id(dg.on_node[j]) << "\n";
  }
  for (std::size_t e = 0; e < dg.shape.edges.size(); ++e) {
    o << "  oedge " << dg.shape.edges[e].id << " = " << dg.target.morphism_id(dg.on_edge[e]) << "\n";
  }
  o << "end\n";
  return o.str();
}

inline std::string emit_cone(const std::string& name, const std::string& diagram, const Diagram& dg, const Cone& k) {
  std::ostringstream o;
  o << "cone " << name << " : " << diagram << "\n";
  o << "  vertex " << dg.target.object_id(k.vertex) << "\n";
  for (std::size_t j = 0; j < k.legs.size(); ++j) {
    o << "  leg " << dg.shape.nodes[j] << " = " << dg.target.morphism_id(k.legs[j]) << "\n";
  }
  o << "end\n";
  return o.str();
}

inline std::string emit_structure(const std::string& name, const std::string& base, const StandardStructure& s) {
  const FinCat& C = s.base;
  std::ostringstream o;
  o << "structure " << name << " on " << base << "\n";
  for (ObjIx c = 0; c < C.num_objects(); ++c) {
    o << "  sobj " << C.object_id(c) << " :";
    for (const auto& e : s.P[c]) o << " " << e;
    o << "\n";
  }
  for (const auto& [f, a, b] : s.H) {
    o << "  shom " << C.morphism_id(f) << " : " << s.P[C.src(f)][a] << " -> " << s.P[C.dst(f)][b] << "\n";
  }
  o << "end\n";
  return o.str();
}

inline std::string emit_cwa(const std::string& name, const std::string& base, const std::string& ty, const CwA& w) {
  const FinCat& C = w.base;
  const Presheaf& T = w.ty;
  std::ostringstream o;
  o << "cwa " << name << " on " << base << " with " << ty << "\n";
  for (ObjIx g = 0; g < C.num_objects(); ++g) {
    for (std::uint32_t a = 0; a < T.sets[g].size(); ++a) {
      o << "  ext " << C.object_id(g) << " " << T.sets[g][a] << " = " << C.object_id(w.ext[g][a]) << "\n";
      o << "  proj " << C.object_id(g) << " " << T.sets[g][a] << " = " << C.morphism_id(w.proj[g][a]) << "\n";
    }
  }
  for (MorIx f = 0; f < C.num_morphisms(); ++f) {
    for (std::uint32_t a = 0; a < w.q[f].size(); ++a) {
      if (C.is_identity(f) && w.q[f][a] == C.identity(w.ext[C.dst(f)][a])) continue;
      o << "  q " << C.morphism_id(f) << " " << T.sets[C.dst(f)][a] << " = " << C.morphism_id(w.q[f][a]) << "\n";
    }
  }
  o << "end\n";
  return o.str();
}

}  // namespace dispcat::dsl
