#pragma once

#include <optional>
#include <string>
#include <vector>

#include "prolim/certificate.hpp"

namespace prolim::cli {

/// A pro-object as emitted: its truncation to the run depth and, when it
/// came from a spec rule, that rule.
struct SerializedObject {
  std::string name;
  std::string index;
  std::string rule;
  std::vector<std::pair<std::string, std::string>> levels;
};

struct Report {
  std::string command;
  std::string digest;
  std::string base;
  int depth = 0;
  int search_depth = 0;
  std::vector<Certificate> checks;
  std::vector<SerializedObject> objects;
  std::vector<std::pair<std::string, std::string>> facts;
  std::optional<double> wall_ms;

  Verdict verdict() const { return worst(checks); }
  std::string text() const;
  std::string json() const;
};

/// 0 certified, 2 refuted, 3 undetermined or exhausted.
int exit_code(Verdict v);

std::string sha256_hex(const std::string& bytes);

}  // namespace prolim::cli
