#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

namespace braidbu {

enum class ReportFormat { text, records };

struct Verdict {
  std::string id;
  bool pass = true;
  std::string detail;
};

/// Command results plus pass/fail verdicts. Rendering is deterministic:
/// results keep insertion order, verdicts are sorted by id.
///
/// The records format has one `key<TAB>value` line per entry; verdicts
/// appear as `check:<id>` with value `pass` or `fail: <detail>`.
class Report {
 public:
  explicit Report(std::string command = {}) : command_(std::move(command)) {}

  void add(std::string key, std::string value) { results_.emplace_back(std::move(key), std::move(value)); }
  void add(std::string key, long value) { add(std::move(key), std::to_string(value)); }

  void check(std::string id, bool pass, std::string detail = {}) {
    verdicts_.push_back({std::move(id), pass, std::move(detail)});
  }
  void check(const Verdict& v) { verdicts_.push_back(v); }

  const std::vector<std::pair<std::string, std::string>>& results() const { return results_; }

  std::vector<Verdict> verdicts() const {
    std::vector<Verdict> out = verdicts_;
    std::stable_sort(out.begin(), out.end(), [](const Verdict& a, const Verdict& b) { return a.id < b.id; });
    return out;
  }

  bool all_pass() const {
    return std::all_of(verdicts_.begin(), verdicts_.end(), [](const Verdict& v) { return v.pass; });
  }

  int failures() const {
    return static_cast<int>(std::count_if(verdicts_.begin(), verdicts_.end(), [](const Verdict& v) { return !v.pass; }));
  }

  int exit_code() const { return all_pass() ? 0 : 1; }

  std::string render(ReportFormat format) const {
    std::string out;
    if (format == ReportFormat::records) {
      if (!command_.empty()) out += "command\t" + clean(command_) + "\n";
      for (const auto& [k, v] : results_) out += clean(k) + "\t" + clean(v) + "\n";
      for (const auto& v : verdicts()) {
        out += "check:" + clean(v.id) + "\t" + (v.pass ? std::string("pass") : "fail: " + clean(v.detail)) + "\n";
      }
      if (!verdicts_.empty()) out += "status\t" + std::string(all_pass() ? "pass" : "fail") + "\n";
      return out;
    }
    if (!command_.empty()) out += "# " + command_ + "\n";
    std::size_t width = 0;
    for (const auto& kv : results_) width = std::max(width, kv.first.size());
    for (const auto& [k, v] : results_) out += k + std::string(width - k.size() + 2, ' ') + v + "\n";
    for (const auto& v : verdicts()) {
      out += (v.pass ? "[PASS] " : "[FAIL] ") + v.id;
      if (!v.pass && !v.detail.empty()) out += ": " + v.detail;
      out += "\n";
    }
    if (!verdicts_.empty()) {
      out += std::to_string(verdicts_.size() - static_cast<std::size_t>(failures())) + "/" +
             std::to_string(verdicts_.size()) + " checks passed\n";
    }
    return out;
  }

 private:
  static std::string clean(std::string s) {
    std::replace(s.begin(), s.end(), '\t', ' ');
    std::replace(s.begin(), s.end(), '\n', ' ');
    return s;
  }

  std::string command_;
  std::vector<std::pair<std::string, std::string>> results_;
  std::vector<Verdict> verdicts_;
};

}  // namespace braidbu
