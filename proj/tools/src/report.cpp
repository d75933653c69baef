#include "minvec_cli/report.hpp"

#include <sstream>

namespace minvec::cli {

std::string to_string(Status s) {
  switch (s) {
    case Status::pass:
      return "PASS";
    case Status::fail:
      return "FAIL";
    default:
      return "SKIPPED";
  }
}

Report::Report(std::string command, std::string subject) : command_(std::move(command)), subject_(std::move(subject)) {
  fields_.emplace_back("command", command_);
  fields_.emplace_back("subject", subject_);
}

void Report::line(const std::string& text) { lines_.push_back(text); }

void Report::field(const std::string& key, const std::string& value) { fields_.emplace_back(key, value); }

void Report::check(const std::string& name, Status s, const std::string& detail) {
  if (s == Status::fail) failed_ = true;
  lines_.push_back("[" + to_string(s) + "] " + name + (detail.empty() ? "" : ": " + detail));
  fields_.emplace_back("check." + name, to_string(s));
}

void Report::section(const std::string& title) {
  lines_.push_back("");
  lines_.push_back("== " + title);
}

std::string Report::str() const {
  std::ostringstream os;
  os << "# minvec " << command_ << " report: " << subject_ << "\n";
  for (const auto& l : lines_) os << l << "\n";
  os << "\nBEGIN minvec-report\n";
  for (const auto& [k, v] : fields_) os << k << " = " << v << "\n";
  os << "verdict = " << (failed_ ? "FAIL" : "PASS") << "\n";
  os << "END minvec-report\n";
  return os.str();
}

std::string Report::structured(const std::string& report) {
  const std::string begin = "BEGIN minvec-report\n";
  const auto b = report.find(begin);
  const auto e = report.find("END minvec-report");
  if (b == std::string::npos || e == std::string::npos || e < b) return "";
  return report.substr(b + begin.size(), e - b - begin.size());
}

}  // namespace minvec::cli
