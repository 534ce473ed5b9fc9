#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace dtop::cli {

inline constexpr const char* report_header = "dtop report v1";

/// Text report: a header, the command name, free-form lines and a
/// `machine:` trailer of `key: value` pairs in insertion order.
class Report {
 public:
  explicit Report(std::string command) : command_(std::move(command)) {}

  void line(std::string text) { lines_.push_back(std::move(text)); }
  void field(std::string key, std::string value);
  const std::vector<std::pair<std::string, std::string>>& fields() const { return fields_; }
  std::string render(bool machine_only) const;

 private:
  std::string command_;
  std::vector<std::string> lines_;
  std::vector<std::pair<std::string, std::string>> fields_;
};

// Key-value pairs after the `machine:` line of a rendered report.
std::vector<std::pair<std::string, std::string>> parse_machine(const std::string& text);

// Exit codes.
inline constexpr int exit_ok = 0;
inline constexpr int exit_internal = 1;
inline constexpr int exit_invalid = 2;
inline constexpr int exit_budget = 3;

// Runs one command line (without the program name). Relative file
// arguments are resolved against `base`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const std::filesystem::path& base = {});

// Splits a line into arguments; double quotes group words.
std::vector<std::string> split_command_line(const std::string& line);

}  // namespace dtop::cli
