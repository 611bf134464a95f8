#pragma once

#include <json.hpp>

#include "qgt/degeneration.hpp"
#include "qgt/specfile.hpp"

namespace qgt {

using Json = nlohmann::ordered_json;

struct Check {
  std::string name;
  bool pass = false;
  std::string details;
};

struct Report {
  Json body;
  std::vector<Check> checks;

  bool all_pass() const;
  void check(const std::string& name, bool pass, const std::string& details = "");
  std::string to_json() const;  // stable key order, deterministic
  std::string to_text() const;  // human-readable summary
};

enum class Suite { Analyze, Wsa, Hat, Period, Degenerate, All };

Suite parse_suite(const std::string& name);

Report run_suite(const SpecFile& spec, Suite suite, bool emit_relations = false);

}  // namespace qgt
