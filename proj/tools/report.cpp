#include "report.hpp"

#include <cstdio>
#include <sstream>

#include <openssl/evp.h>

#include "json.hpp"

namespace prolim::cli {

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr);
  std::string out;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    out += buf;
  }
  return out;
}

int exit_code(Verdict v) {
  switch (v) {
    case Verdict::certified: return 0;
    case Verdict::refuted: return 2;
    case Verdict::undetermined:
    case Verdict::exhausted: return 3;
  }
  return 3;
}

std::string Report::text() const {
  std::ostringstream o;
  o << "command: " << command << "\n";
  o << "input: sha256:" << digest << "\n";
  if (!base.empty()) o << "base: " << base << "\n";
  o << "depth: " << depth << " (search " << search_depth << ")\n";
  for (const auto& [k, v] : facts) o << k << ": " << v << "\n";
  for (const auto& obj : objects) {
    o << "\nobject " << obj.name << " over " << obj.index;
    if (!obj.rule.empty()) o << " [" << obj.rule << "]";
    o << "\n";
    for (const auto& [s, x] : obj.levels) o << "  " << s << ": " << x << "\n";
  }
  for (const auto& c : checks) {
    o << "\n[" << to_string(c.verdict) << "] " << c.check << " (depth " << c.depth << ")\n";
    for (const auto& w : c.witnesses) o << "  - " << w << "\n";
    if (!c.detail.empty()) o << "  detail: " << c.detail << "\n";
  }
  o << "\nverdict: " << to_string(verdict()) << "\n";
  if (wall_ms) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f", *wall_ms);
    o << "wall-time: " << buf << " ms\n";
  }
  return o.str();
}

std::string Report::json() const {
  using nlohmann::ordered_json;
  ordered_json j;
  j["command"] = command;
  j["input_digest"] = "sha256:" + digest;
  if (!base.empty()) j["base"] = base;
  j["depth"] = depth;
  j["search_depth"] = search_depth;
  ordered_json facts_j = ordered_json::object();
  for (const auto& [k, v] : facts) facts_j[k] = v;
  j["facts"] = facts_j;
  j["objects"] = ordered_json::array();
  for (const auto& obj : objects) {
    ordered_json levels = ordered_json::array();
    for (const auto& [s, x] : obj.levels) levels.push_back({{"index", s}, {"object", x}});
    j["objects"].push_back(
        {{"name", obj.name}, {"index", obj.index}, {"rule", obj.rule}, {"levels", levels}});
  }
  j["checks"] = ordered_json::array();
  for (const auto& c : checks)
    j["checks"].push_back({{"check", c.check},
                           {"verdict", std::string(to_string(c.verdict))},
                           {"depth", c.depth},
                           {"witnesses", c.witnesses},
                           {"detail", c.detail}});
  j["verdict"] = std::string(to_string(verdict()));
  if (wall_ms) j["wall_time_ms"] = *wall_ms;
  return j.dump(2) + "\n";
}

}  // namespace prolim::cli
