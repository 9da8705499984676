#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace ua::cli {

enum class OutputFormat { Text, Json };

/// Exit status contract.
enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kParseError = 2,
  kPreconditionFailed = 3,
};

struct AnalysisRequest {
  std::string command;
  std::vector<std::string> inputs;
  OutputFormat format = OutputFormat::Text;
  std::size_t max_size = 12;      // congruence-lattice enumerations
  std::size_t max_iso_size = 8;   // isomorphism searches on products
  bool oracle = false;
  bool lex = false;
  std::string formula;            // inline formula text, or
  std::string formula_file;
  std::vector<std::string> generators;  // "c,d" pairs
  std::vector<std::string> pairs;       // "a,b" pairs
  std::string e;                        // tuple "e1,...,ek"
  std::string f;
  std::string constant_algebra;         // sheaf --constant
  std::string pierce_algebra;           // sheaf --pierce
};

struct Record {
  std::string name;
  bool passed = true;
  std::string witness;
};

struct Report {
  std::string command;
  std::vector<std::string> inputs;
  std::vector<Record> checks;
  /// Command-specific payload, keys in insertion order.
  nlohmann::ordered_json data = nlohmann::ordered_json::object();
  int exit_status = kOk;
  std::string error;

  void check(std::string name, bool passed, std::string witness = {}) {
    checks.push_back({std::move(name), passed, std::move(witness)});
  }
  bool all_passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }

  nlohmann::ordered_json to_json() const;
  std::string to_text() const;
};

const std::vector<std::string>& commands();

/// Dispatches a request; never throws. Parse errors, precondition failures and
/// failed checks are reflected in `exit_status`.
Report run(const AnalysisRequest& request);

}  // namespace ua::cli
