#include "spec.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

namespace prolim::cli {

std::string IndexSpec::key() const {
  switch (kind) {
    case Kind::nat: return "nat";
    case Kind::point: return "point";
    case Kind::grid: return "grid" + std::to_string(k);
    case Kind::poset: {
      std::string s = "poset" + std::to_string(size);
      for (auto [lo, hi] : hasse) s += ":" + std::to_string(lo) + "<" + std::to_string(hi);
      return s;
    }
  }
  return "?";
}

std::string ObjectSpec::describe() const {
  std::string s = index.key() + " level ";
  if (!sizes.empty()) {
    s += "[";
    for (std::size_t i = 0; i < sizes.size(); ++i) s += (i ? "," : "") + std::to_string(sizes[i]);
    s += "]";
  } else {
    for (std::size_t i = 0; i < level.size(); ++i) s += (i ? " ; " : "") + level[i].text();
  }
  if (index.kind != IndexSpec::Kind::point) s += steps.empty() ? " step " + rule : " explicit steps";
  return s;
}

const ObjectSpec& SpecFile::object(const std::string& name, int line) const {
  auto it = objects.find(name);
  if (it == objects.end()) fail(line, "unknown object '" + name + "'");
  return it->second;
}

const MapSpec& SpecFile::map(const std::string& name, int line) const {
  auto it = maps.find(name);
  if (it == maps.end()) fail(line, "unknown map '" + name + "'");
  return it->second;
}

void SpecFile::fail(int line, const std::string& what) const { throw SpecError(path, line, what); }

namespace {

int line_of(const YAML::Node& n) { return n.Mark().line + 1; }

class Reader {
 public:
  Reader(SpecFile& out) : out_(out) {}

  [[noreturn]] void fail(const YAML::Node& n, const std::string& what) const {
    out_.fail(line_of(n), what);
  }

  void keys(const YAML::Node& n, std::initializer_list<const char*> allowed, const std::string& where) {
    if (!n.IsMap()) fail(n, where + " must be a mapping");
    const std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& kv : n) {
      const auto k = kv.first.as<std::string>();
      if (!ok.count(k)) fail(kv.first, "unknown key '" + k + "' in " + where);
    }
  }

  std::string str(const YAML::Node& n, const std::string& what) {
    if (!n.IsScalar()) fail(n, what + " must be a scalar");
    return n.as<std::string>();
  }

  int integer(const YAML::Node& n, const std::string& what) {
    if (!n.IsScalar()) fail(n, what + " must be an integer");
    try {
      return n.as<int>();
    } catch (const YAML::Exception&) {
      fail(n, what + " must be an integer, got '" + n.as<std::string>() + "'");
    }
  }

  Expr expr(const YAML::Node& n, const std::string& what) {
    const auto text = str(n, what);
    try {
      return Expr::parse(text);
    } catch (const std::exception& e) {
      fail(n, e.what());
    }
  }

  std::vector<std::string> names(const YAML::Node& n, const std::string& what) {
    if (!n.IsSequence()) fail(n, what + " must be a list");
    std::vector<std::string> out;
    for (const auto& e : n) out.push_back(str(e, what));
    return out;
  }

  std::vector<std::pair<int, int>> pairs(const YAML::Node& n, const std::string& what) {
    if (!n.IsSequence()) fail(n, what + " must be a list of pairs");
    std::vector<std::pair<int, int>> out;
    for (const auto& p : n) {
      if (!p.IsSequence() || p.size() != 2) fail(p, what + " entries must be [lo, hi]");
      out.emplace_back(integer(p[0], what), integer(p[1], what));
    }
    return out;
  }

  IndexSpec index(const YAML::Node& n) {
    IndexSpec s;
    if (n.IsScalar()) {
      const auto k = n.as<std::string>();
      if (k == "nat") s.kind = IndexSpec::Kind::nat;
      else if (k == "point") s.kind = IndexSpec::Kind::point;
      else fail(n, "index must be nat, point, {grid: k} or {poset: ...}");
      return s;
    }
    keys(n, {"grid", "poset"}, "index");
    if (n["grid"]) {
      s.kind = IndexSpec::Kind::grid;
      s.k = integer(n["grid"], "grid dimension");
      if (s.k < 1 || s.k > 4) fail(n["grid"], "grid dimension must be in 1..4");
    } else if (n["poset"]) {
      const auto p = n["poset"];
      keys(p, {"size", "hasse"}, "poset");
      s.kind = IndexSpec::Kind::poset;
      if (!p["size"]) fail(p, "poset needs a size");
      s.size = integer(p["size"], "poset size");
      if (s.size < 1) fail(p["size"], "poset size must be positive");
      if (p["hasse"]) s.hasse = pairs(p["hasse"], "hasse");
    } else {
      fail(n, "index must be nat, point, {grid: k} or {poset: ...}");
    }
    return s;
  }

  void object(const std::string& name, const YAML::Node& n) {
    keys(n, {"index", "level", "step"}, "object " + name);
    ObjectSpec o;
    o.name = name;
    o.line = line_of(n);
    if (n["index"]) o.index = index(n["index"]);
    const auto level = n["level"];
    if (!level) fail(n, "object " + name + " needs a level rule");
    const auto& base = out_.base;
    if (base == "finset") {
      if (level.IsSequence()) {
        if (o.index.kind != IndexSpec::Kind::nat) fail(level, "explicit sizes need a nat index");
        for (const auto& v : level) o.sizes.push_back(integer(v, "size"));
        if (o.sizes.empty()) fail(level, "explicit sizes must not be empty");
      } else {
        o.level.push_back(expr(level, "level"));
      }
    } else if (base == "finab") {
      if (level.IsSequence()) {
        for (const auto& v : level) o.level.push_back(expr(v, "cyclic order"));
      } else {
        o.level.push_back(expr(level, "cyclic order"));
      }
    } else {
      if (level.IsMap()) {
        keys(level, {"from", "to"}, "level");
        o.level.push_back(level["from"] ? expr(level["from"], "first label") : Expr::constant(0));
        if (!level["to"]) fail(level, "level needs 'to'");
        o.level.push_back(expr(level["to"], "last label"));
      } else {
        o.level.push_back(Expr::constant(0));
        o.level.push_back(expr(level, "last label"));
      }
    }
    const auto step = n["step"];
    if (step && step.IsSequence()) {
      if (base != "finset" || o.index.kind != IndexSpec::Kind::nat)
        fail(step, "explicit steps need base finset and a nat index");
      for (const auto& arr : step) {
        if (!arr.IsSequence()) fail(arr, "a step is a list of images");
        std::vector<int> images;
        for (const auto& v : arr) images.push_back(integer(v, "image"));
        o.steps.push_back(std::move(images));
      }
    } else {
      o.rule = step ? str(step, "step") : default_rule();
      check_rule(step ? step : n, o.rule, false);
    }
    out_.objects.emplace(name, std::move(o));
  }

  std::string default_rule() const {
    if (out_.base == "finset") return "clamp";
    if (out_.base == "finab") return "reduce";
    return "labels";
  }

  void check_rule(const YAML::Node& at, const std::string& rule, bool map) {
    std::set<std::string> ok;
    if (out_.base == "finset") ok = {"clamp", "mod", "zero"};
    else if (out_.base == "finab") ok = {"reduce", "zero"};
    else ok = {"labels"};
    if (map) {
      ok.insert("identity");
      if (out_.base == "freeab") ok.insert("zero");
    }
    if (!ok.count(rule)) {
      std::string list;
      for (const auto& r : ok) list += (list.empty() ? "" : ", ") + r;
      fail(at, "rule '" + rule + "' is not one of " + list + " for " + out_.base);
    }
  }

  void map(const std::string& name, const YAML::Node& n) {
    keys(n, {"from", "to", "rule", "delay"}, "map " + name);
    MapSpec m;
    m.name = name;
    m.line = line_of(n);
    if (!n["from"] || !n["to"]) fail(n, "map " + name + " needs from and to");
    m.from = str(n["from"], "from");
    m.to = str(n["to"], "to");
    m.rule = n["rule"] ? str(n["rule"], "rule") : default_rule();
    check_rule(n["rule"] ? n["rule"] : n, m.rule, true);
    if (n["delay"]) {
      m.delay = integer(n["delay"], "delay");
      if (m.delay < 0) fail(n["delay"], "delay must be >= 0");
    }
    out_.maps.emplace(name, std::move(m));
  }

  DiagramSpec diagram(const YAML::Node& n, const std::string& what) {
    keys(n, {"shape", "size", "hasse", "objects", "arrows", "maps"}, what);
    DiagramSpec d;
    d.present = true;
    d.line = line_of(n);
    if (!n["shape"]) fail(n, what + " needs a shape");
    d.shape = str(n["shape"], "shape");
    if (n["size"]) d.size = integer(n["size"], "size");
    if (n["hasse"]) d.hasse = pairs(n["hasse"], "hasse");
    if (!n["objects"]) fail(n, what + " needs objects");
    d.objects = names(n["objects"], "objects");
    if (n["maps"]) d.maps = names(n["maps"], "maps");
    if (n["arrows"]) {
      if (!n["arrows"].IsSequence()) fail(n["arrows"], "arrows must be a list");
      for (const auto& a : n["arrows"]) {
        keys(a, {"from", "to", "map"}, "arrow");
        if (!a["from"] || !a["to"] || !a["map"]) fail(a, "an arrow needs from, to and map");
        d.arrows.push_back({integer(a["from"], "from"), integer(a["to"], "to"),
                            str(a["map"], "map"), line_of(a)});
      }
    }
    return d;
  }

  void run(const YAML::Node& root) {
    if (!root || !root.IsMap()) out_.fail(1, "spec must be a mapping");
    keys(root, {"prolim", "base", "budget", "objects", "maps", "diagram", "tower", "commute"}, "spec");
    if (!root["prolim"]) out_.fail(1, "missing version header 'prolim: " + std::to_string(kSpecVersion) + "'");
    out_.version = integer(root["prolim"], "version");
    if (out_.version != kSpecVersion)
      fail(root["prolim"], "unsupported spec version " + std::to_string(out_.version));
    if (!root["base"]) out_.fail(1, "missing 'base'");
    out_.base = str(root["base"], "base");
    if (out_.base != "finset" && out_.base != "finab" && out_.base != "freeab")
      fail(root["base"], "base must be finset, finab or freeab");
    if (const auto b = root["budget"]) {
      keys(b, {"depth", "search"}, "budget");
      if (b["depth"]) out_.depth = integer(b["depth"], "depth");
      if (b["search"]) out_.search = integer(b["search"], "search");
    }
    if (const auto objs = root["objects"]) {
      if (!objs.IsMap()) fail(objs, "objects must be a mapping");
      for (const auto& kv : objs) object(kv.first.as<std::string>(), kv.second);
    }
    if (const auto maps = root["maps"]) {
      if (!maps.IsMap()) fail(maps, "maps must be a mapping");
      for (const auto& kv : maps) map(kv.first.as<std::string>(), kv.second);
    }
    if (root["diagram"]) out_.diagram = diagram(root["diagram"], "diagram");
    if (root["commute"]) out_.commute = diagram(root["commute"], "commute");
    if (const auto t = root["tower"]) {
      keys(t, {"objects", "maps"}, "tower");
      out_.tower.present = true;
      out_.tower.line = line_of(t);
      if (!t["objects"]) fail(t, "tower needs objects");
      out_.tower.objects = names(t["objects"], "objects");
      if (t["maps"]) out_.tower.maps = names(t["maps"], "maps");
    }
    resolve();
  }

  void resolve() {
    for (const auto& [name, m] : out_.maps) {
      out_.object(m.from, m.line);
      out_.object(m.to, m.line);
    }
    auto check = [&](const DiagramSpec& d) {
      if (!d.present) return;
      for (const auto& o : d.objects) out_.object(o, d.line);
      for (const auto& m : d.maps) out_.map(m, d.line);
      for (const auto& a : d.arrows) out_.map(a.map, a.line);
    };
    check(out_.diagram);
    check(out_.commute);
    if (out_.tower.present) {
      for (const auto& o : out_.tower.objects) out_.object(o, out_.tower.line);
      for (const auto& m : out_.tower.maps) out_.map(m, out_.tower.line);
    }
  }

 private:
  SpecFile& out_;
};

}  // namespace

SpecFile parse_spec(const std::string& text, const std::string& path) {
  SpecFile out;
  out.path = path;
  out.bytes = text;
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw SpecError(path, e.mark.line + 1, e.msg);
  }
  try {
    Reader(out).run(root);
  } catch (const YAML::Exception& e) {
    throw SpecError(path, e.mark.line + 1, e.msg);
  }
  return out;
}

SpecFile load_spec(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SpecError(path, 0, "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_spec(ss.str(), path);
}

}  // namespace prolim::cli
