#pragma once

// Report files: free text for people followed by a structured block
//
//   BEGIN minvec-report
//   key = value
//   END minvec-report
//
// which is what golden tests compare.

#include <string>
#include <utility>
#include <vector>

namespace minvec::cli {

enum class Status { pass, fail, skipped };
std::string to_string(Status s);

class Report {
 public:
  Report(std::string command, std::string subject);

  void line(const std::string& text);
  void field(const std::string& key, const std::string& value);
  /// "[PASS] name: detail" plus the structured field check.name.
  void check(const std::string& name, Status s, const std::string& detail);
  void section(const std::string& title);

  bool failed() const noexcept { return failed_; }
  std::string str() const;
  /// The text between the BEGIN/END markers of a report.
  static std::string structured(const std::string& report);

 private:
  std::string command_;
  std::string subject_;
  std::vector<std::string> lines_;
  std::vector<std::pair<std::string, std::string>> fields_;
  bool failed_ = false;
};

}  // namespace minvec::cli
