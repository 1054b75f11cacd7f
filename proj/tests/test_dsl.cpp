#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "dispcat/corpus.hpp"

using namespace dispcat;
namespace fx = dispcat::fixtures;

namespace {

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

dsl::Workspace corpus_workspace() {
  dsl::Workspace ws;
  for (const auto& [name, text] : fx::corpus_files()) ws.load_string(text, name);
  return ws;
}

/// Runs `text` through a fresh workspace and returns the raised error.
dsl::DslError error_of(const std::string& text) {
  dsl::Workspace ws;
  try {
    ws.load_string(text, "t.dcat");
  } catch (const dsl::DslError& e) {
    return e;
  }
  ADD_FAILURE() << "no error for:\n" << text;
  return dsl::DslError(ErrorCode::ParseError, {}, "");
}

std::optional<std::string> category_name(const FinCat& c) {
  for (const auto& [name, v] : fx::categories()) {
    if (v == c) return name;
  }
  return std::nullopt;
}

}  // namespace

TEST(Lexer, TokensCarryPositions) {
  auto lines = dsl::lex("category Two\n  mor f : a -> b\n", "x");
  ASSERT_EQ(lines.size(), 2u);
  ASSERT_EQ(lines[1].toks.size(), 6u);
  EXPECT_EQ(lines[1].toks[0].span.line, 2);
  EXPECT_EQ(lines[1].toks[0].span.column, 3);
  EXPECT_EQ(lines[1].toks[2].text, ":");
  EXPECT_TRUE(lines[1].toks[2].punct);
  EXPECT_EQ(lines[1].toks[4].text, "->");
  EXPECT_EQ(lines[1].toks[5].span.column, 16);
}

TEST(Lexer, CommentsAndBlankLinesAreSkipped) {
  auto lines = dsl::lex("# header\n\n   \ncategory One # trailing\n  obj pt\nend\n", "x");
  ASSERT_EQ(lines.size(), 3u);
  EXPECT_EQ(lines[0].span.line, 4);
  EXPECT_EQ(lines[0].toks.size(), 2u);
}

TEST(Errors, UnresolvedReferenceIsLocated) {
  auto e = error_of("category C\n  obj a\n  mor f : a -> b\nend\n");
  EXPECT_EQ(e.code(), ErrorCode::UnresolvedReference);
  EXPECT_EQ(e.span().file, "t.dcat");
  EXPECT_EQ(e.span().line, 3);
  EXPECT_EQ(e.span().column, 16);
}

TEST(Errors, DuplicateNames) {
  auto e = error_of("category C\n  obj a\nend\ncategory C\n  obj b\nend\n");
  EXPECT_EQ(e.code(), ErrorCode::DuplicateName);
  EXPECT_EQ(e.span().line, 4);
  auto o = error_of("category C\n  obj a a\nend\n");
  EXPECT_EQ(o.code(), ErrorCode::DuplicateName);
  EXPECT_EQ(o.span().line, 2);
  EXPECT_EQ(o.span().column, 9);
}

TEST(Errors, MissingEnd) {
  auto e = error_of("category C\n  obj a\ncategory D\n  obj b\nend\n");
  EXPECT_EQ(e.code(), ErrorCode::ParseError);
  EXPECT_EQ(e.span().line, 3);
  EXPECT_NE(e.detail().find("missing 'end'"), std::string::npos);
  auto eof = error_of("category C\n  obj a\n");
  EXPECT_EQ(eof.code(), ErrorCode::ParseError);
  EXPECT_EQ(eof.span().line, 1);
}

TEST(Errors, UnknownKeywordsAndLines) {
  auto e = error_of("categroy C\n  obj a\nend\n");
  EXPECT_EQ(e.code(), ErrorCode::ParseError);
  EXPECT_EQ(e.span().line, 1);
  EXPECT_EQ(e.span().column, 1);
  auto l = error_of("category C\n  obj a\n  arrow f : a -> a\nend\n");
  EXPECT_EQ(l.code(), ErrorCode::ParseError);
  EXPECT_EQ(l.span().line, 3);
  auto c = error_of("category C = frobnicate One\n");
  EXPECT_EQ(c.code(), ErrorCode::ParseError);
  EXPECT_EQ(c.span().column, 14);
}

TEST(Errors, MessageStartsWithFileLineColumn) {
  auto e = error_of("category C\n  obj a\n  mor f : a -> b\nend\n");
  EXPECT_NE(std::string(e.what()).find("t.dcat:3:16:"), std::string::npos);
}

TEST(Errors, LawFailuresAreRecordedNotThrown) {
  dsl::Workspace ws;
  ws.load_string("category C\n  obj a\n  mor e : a -> a\nend\n", "t.dcat");
  EXPECT_FALSE(ws.all_valid());
  const Report& r = ws.categories.at("C").laws;
  ASSERT_FALSE(r.passed());
  EXPECT_EQ(r.findings.front().code, "missing_composite");
  try {
    ws.load_string("display D = slice C\n", "u.dcat");
    ADD_FAILURE() << "reference to a lawless category accepted";
  } catch (const dsl::DslError& e) {
    EXPECT_EQ(e.code(), ErrorCode::MalformedInput);
    EXPECT_EQ(e.span().file, "u.dcat");
  }
}

TEST(Fixtures, ShippedFilesMatchGenerator) {
  const std::filesystem::path dir = DISPCAT_FIXTURES;
  std::size_t n = 0;
  for (const auto& [name, text] : fx::corpus_files()) {
    EXPECT_EQ(read_file(dir / name), text) << name;
    ++n;
  }
  std::size_t on_disk = 0;
  for (const auto& e : std::filesystem::directory_iterator(dir)) on_disk += e.path().extension() == ".dcat";
  EXPECT_EQ(on_disk, n);
}

TEST(Fixtures, CorpusLoadsAndIsValid) {
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(DISPCAT_FIXTURES)) files.push_back(e.path());
  std::sort(files.begin(), files.end());
  dsl::Workspace ws;
  for (const auto& f : files) ws.load_file(f.string());
  for (const auto& [label, r] : ws.law_reports()) EXPECT_TRUE(r->passed()) << label;
}

TEST(Fixtures, ElaborationMatchesLibraryValues) {
  dsl::Workspace ws = corpus_workspace();
  for (const auto& [name, c] : fx::categories()) EXPECT_EQ(ws.categories.at(name).value, c) << name;
  auto values = fx::displays();
  auto specs = fx::corpus_displays();
  ASSERT_EQ(values.size(), specs.size());
  for (std::size_t i = 0; i < specs.size(); ++i) {
    EXPECT_EQ(values[i].first, specs[i].name);
    EXPECT_EQ(ws.displays.at(specs[i].name).value, values[i].second) << specs[i].name;
  }
  for (const auto& [name, p] : fx::presheaves()) EXPECT_EQ(ws.presheaves.at(name).value, p) << name;
  for (const auto& [name, w] : fx::cwas()) EXPECT_EQ(ws.cwas.at(name).value, w) << name;
  EXPECT_EQ(ws.functors.at("Gcd6").value, fx::gcd6());
  EXPECT_EQ(ws.functors.at("Lcm2").value, fx::lcm2());
  EXPECT_EQ(ws.functors.at("Lcm3").value, fx::lcm3());
  EXPECT_EQ(ws.functors.at("WIsoToOne").value, fx::wiso_to_one());
  EXPECT_EQ(ws.monads.at("Lcm2Monad").value, fx::lcm2_monad());
  EXPECT_EQ(ws.structures.at("Magmas").value, fx::ord2_magmas());
  EXPECT_EQ(ws.structures.at("Indiscrete").value, fx::indiscrete_pair());
  EXPECT_EQ(ws.diagrams.at("Div12Cospan").value, fx::div12_cospan());
  EXPECT_EQ(ws.diagrams.at("AlgCospan").value, fx::gcd6_algebra_cospan());
  EXPECT_EQ(ws.displays.at("ReindexSliceDiv12").value, reindex(slice_display(fx::div12()), fx::lcm2()));
}

TEST(Emit, CategoriesRoundTrip) {
  for (const auto& [name, c] : fx::categories()) {
    dsl::Workspace ws;
    ws.load_string(dsl::emit_category(name, c));
    EXPECT_EQ(ws.categories.at(name).value, c) << name;
  }
}

TEST(Emit, DisplaysRoundTrip) {
  std::size_t n = 0;
  for (const auto& [name, d] : fx::displays()) {
    auto base = category_name(d.base());
    if (!base) continue;
    dsl::Workspace ws;
    ws.load_string(dsl::emit_category(*base, d.base()));
    ws.load_string(dsl::emit_display(name, *base, d));
    EXPECT_EQ(ws.displays.at(name).value, d) << name;
    EXPECT_TRUE(ws.displays.at(name).laws.passed()) << name;
    ++n;
  }
  EXPECT_GT(n, 15u);
}

TEST(Emit, PresheavesCwAsAndStructuresRoundTrip) {
  for (const auto& [name, p] : fx::presheaves()) {
    dsl::Workspace ws;
    auto cname = category_name(p.base);
    ASSERT_TRUE(cname);
    ws.load_string(dsl::emit_category(*cname, p.base));
    ws.load_string(dsl::emit_presheaf(name, *cname, p));
    EXPECT_EQ(ws.presheaves.at(name).value, p) << name;
  }
  {
    dsl::Workspace ws;
    ws.load_string(dsl::emit_category("Div12", fx::div12()));
    ws.load_string(dsl::emit_presheaf("Divisors", "Div12", fx::div12_divisors()));
    ws.load_string(dsl::emit_cwa("W", "Div12", "Divisors", fx::div12_cwa()));
    EXPECT_EQ(ws.cwas.at("W").value, fx::div12_cwa());
  }
  {
    dsl::Workspace ws;
    ws.load_string(dsl::emit_category("Ord2", fx::ord2()));
    ws.load_string(dsl::emit_structure("S", "Ord2", fx::ord2_magmas()));
    EXPECT_EQ(ws.structures.at("S").value, fx::ord2_magmas());
  }
}

TEST(Emit, DeclarationsAreRecordedInOrder) {
  dsl::Workspace ws = corpus_workspace();
  ASSERT_FALSE(ws.order.empty());
  EXPECT_EQ(ws.order.front(), (std::pair<std::string, std::string>{"category", "One"}));
  std::set<std::pair<std::string, std::string>> seen(ws.order.begin(), ws.order.end());
  EXPECT_EQ(seen.size(), ws.order.size());
}
