#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace dispcat {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kReportSchema = 1;

enum class Verdict { pass, fail, error };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::error: return "error";
  }
  return "error";
}

struct SourceSpan {
  std::string file;
  int line = 0;
  int column = 0;

  friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

struct Finding {
  std::string code;
  std::string message;
  std::vector<std::string> witnesses;
  std::optional<SourceSpan> span;

  friend bool operator==(const Finding&, const Finding&) = default;
};

/// Structured result of a check or classification.
///
/// `details` holds named verdicts and counts (a JSON object, so keys are
/// kept sorted and serialization is deterministic). Equality ignores the
/// timing field.
struct Report {
  std::string command;
  std::vector<std::string> targets;
  Verdict verdict = Verdict::pass;
  nlohmann::json details = nlohmann::json::object();
  std::vector<Finding> findings;
  std::vector<std::string> notes;
  double elapsed_ms = 0.0;
  std::string version = kToolVersion;

  Report() = default;
  explicit Report(std::string cmd, std::vector<std::string> tgts = {})
      : command(std::move(cmd)), targets(std::move(tgts)) {}

  bool passed() const { return verdict == Verdict::pass; }

  void fail(std::string code, std::string message, std::vector<std::string> witnesses = {}) {
    if (verdict != Verdict::error) verdict = Verdict::fail;
    findings.push_back({std::move(code), std::move(message), std::move(witnesses), std::nullopt});
  }

  void error(std::string code, std::string message, std::vector<std::string> witnesses = {}) {
    verdict = Verdict::error;
    findings.push_back({std::move(code), std::move(message), std::move(witnesses), std::nullopt});
  }

  // A finding that does not affect the verdict (witnesses on success, etc).
  void info(std::string code, std::string message, std::vector<std::string> witnesses = {}) {
    findings.push_back({std::move(code), std::move(message), std::move(witnesses), std::nullopt});
  }

  void note(std::string text) { notes.push_back(std::move(text)); }

  void set(const std::string& key, nlohmann::json value) { details[key] = std::move(value); }

  bool flag(const std::string& key) const {
    auto it = details.find(key);
    return it != details.end() && it->is_boolean() && it->get<bool>();
  }

  /// Copies the findings of `sub` under a prefix, failing if `sub` failed.
  void absorb(const Report& sub, const std::string& prefix = {}) {
    for (Finding f : sub.findings) {
      if (!prefix.empty()) f.code = prefix + "." + f.code;
      findings.push_back(std::move(f));
    }
    if (sub.verdict == Verdict::error) {
      verdict = Verdict::error;
    } else if (sub.verdict == Verdict::fail && verdict == Verdict::pass) {
      verdict = Verdict::fail;
    }
  }

  friend bool operator==(const Report& a, const Report& b) {
    return a.command == b.command && a.targets == b.targets && a.verdict == b.verdict &&
           a.details == b.details && a.findings == b.findings && a.notes == b.notes &&
           a.version == b.version;
  }
};

/// Measures wall time into `Report::elapsed_ms` on destruction.
class ReportTimer {
 public:
  explicit ReportTimer(Report& r) : report_(r), start_(std::chrono::steady_clock::now()) {}
  ~ReportTimer() {
    auto dt = std::chrono::steady_clock::now() - start_;
    report_.elapsed_ms = std::chrono::duration<double, std::milli>(dt).count();
  }
  ReportTimer(const ReportTimer&) = delete;
  ReportTimer& operator=(const ReportTimer&) = delete;

 private:
  Report& report_;
  std::chrono::steady_clock::time_point start_;
};

inline void to_json(nlohmann::json& j, const SourceSpan& s) {
  j = nlohmann::json{{"file", s.file}, {"line", s.line}, {"column", s.column}};
}

inline void from_json(const nlohmann::json& j, SourceSpan& s) {
  j.at("file").get_to(s.file);
  j.at("line").get_to(s.line);
  j.at("column").get_to(s.column);
}

inline void to_json(nlohmann::json& j, const Finding& f) {
  j = nlohmann::json{{"code", f.code}, {"message", f.message}, {"witnesses", f.witnesses}};
  if (f.span) j["span"] = *f.span;
}

inline void from_json(const nlohmann::json& j, Finding& f) {
  j.at("code").get_to(f.code);
  j.at("message").get_to(f.message);
  j.at("witnesses").get_to(f.witnesses);
  if (j.contains("span")) {
    f.span = j.at("span").get<SourceSpan>();
  } else {
    f.span.reset();
  }
}

inline Verdict verdict_from_string(const std::string& s) {
  if (s == "pass") return Verdict::pass;
  if (s == "fail") return Verdict::fail;
  return Verdict::error;
}

inline void to_json(nlohmann::json& j, const Report& r) {
  j = nlohmann::json{{"schema", kReportSchema},
                     {"tool", "dispcat"},
                     {"version", r.version},
                     {"command", r.command},
                     {"targets", r.targets},
                     {"verdict", to_string(r.verdict)},
                     {"details", r.details},
                     {"findings", r.findings},
                     {"notes", r.notes},
                     {"timing_ms", r.elapsed_ms}};
}

inline void from_json(const nlohmann::json& j, Report& r) {
  if (j.at("schema").get<int>() != kReportSchema) {
    throw nlohmann::json::other_error::create(501, "unsupported report schema", &j);
  }
  j.at("version").get_to(r.version);
  j.at("command").get_to(r.command);
  j.at("targets").get_to(r.targets);
  r.verdict = verdict_from_string(j.at("verdict").get<std::string>());
  r.details = j.at("details");
  j.at("findings").get_to(r.findings);
  j.at("notes").get_to(r.notes);
  j.at("timing_ms").get_to(r.elapsed_ms);
}

}  // namespace dispcat
