#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "expr.hpp"

namespace prolim::cli {

/// Load or validation problem, located in the spec file.
class SpecError : public std::runtime_error {
 public:
  SpecError(const std::string& file, int line, const std::string& what)
      : std::runtime_error(file + (line > 0 ? ":" + std::to_string(line) : std::string()) + ": " + what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

inline constexpr int kSpecVersion = 1;

struct IndexSpec {
  enum class Kind { nat, point, grid, poset };
  Kind kind = Kind::nat;
  int k = 1;
  int size = 0;
  std::vector<std::pair<int, int>> hasse;

  /// Equal keys share one index object, so maps between them are levelwise.
  std::string key() const;
};

/// Levels and structure maps of one pro-object.
struct ObjectSpec {
  std::string name;
  int line = 0;
  IndexSpec index;
  /// FinSet: one size; FinAb: cyclic orders; FreeAb: first and last label.
  std::vector<Expr> level;
  /// FinSet towers only: explicit sizes, constant past the end.
  std::vector<int> sizes;
  /// A named rule, or empty when `steps` is given.
  std::string rule;
  /// FinSet towers only: image arrays of X_{n+1} -> X_n.
  std::vector<std::vector<int>> steps;

  std::string describe() const;
};

struct MapSpec {
  std::string name;
  int line = 0;
  std::string from, to;
  std::string rule;
  int delay = 0;
};

struct ArrowSpec {
  int from = 0, to = 0;
  std::string map;
  int line = 0;
};

/// A finite (or sequential) shape with objects and generating arrows.
struct DiagramSpec {
  bool present = false;
  int line = 0;
  std::string shape;
  int size = 0;
  std::vector<std::pair<int, int>> hasse;
  std::vector<std::string> objects;
  std::vector<ArrowSpec> arrows;
  /// Sequences: maps[n] goes objects[n] -> objects[n+1].
  std::vector<std::string> maps;
};

/// A tower ... -> X^1 -> X^0 of pro-objects; maps[b]: X^{b+1} -> X^b.
struct TowerSpec {
  bool present = false;
  int line = 0;
  std::vector<std::string> objects;
  std::vector<std::string> maps;
};

struct SpecFile {
  std::string path;
  std::string bytes;
  int version = kSpecVersion;
  std::string base;
  std::optional<int> depth;
  std::optional<int> search;
  std::map<std::string, ObjectSpec> objects;
  std::map<std::string, MapSpec> maps;
  DiagramSpec diagram;
  TowerSpec tower;
  /// X^{a,b}_s = T^b_{a+s} over the listed finite shape.
  DiagramSpec commute;

  const ObjectSpec& object(const std::string& name, int line) const;
  const MapSpec& map(const std::string& name, int line) const;
  [[noreturn]] void fail(int line, const std::string& what) const;
};

SpecFile load_spec(const std::string& path);
SpecFile parse_spec(const std::string& text, const std::string& path);

}  // namespace prolim::cli
