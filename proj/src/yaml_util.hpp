#pragma once

#include <initializer_list>
#include <string>

#include <yaml-cpp/yaml.h>

#include "hemsim/errors.hpp"

namespace hemsim::detail {

inline int line_of(const YAML::Node& node) { return node.Mark().line >= 0 ? node.Mark().line + 1 : 0; }

class YamlContext {
 public:
  explicit YamlContext(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void fail(const YAML::Node& node, const std::string& reason) const {
    throw ParseError(source_, line_of(node), reason);
  }

  YAML::Node load(const std::string& text) const {
    try {
      YAML::Node root = YAML::Load(text);
      if (!root.IsMap()) throw ParseError(source_, line_of(root), "top level must be a mapping");
      return root;
    } catch (const YAML::ParserException& e) {
      throw ParseError(source_, e.mark.line + 1, e.msg);
    }
  }

  void require_keys(const YAML::Node& map, std::initializer_list<const char*> allowed) const {
    if (!map.IsMap()) fail(map, "expected a mapping");
    for (const auto& kv : map) {
      const std::string key = kv.first.as<std::string>();
      bool known = false;
      for (const char* a : allowed) known = known || key == a;
      if (!known) fail(kv.first, "unknown key '" + key + "'");
    }
  }

  YAML::Node field(const YAML::Node& map, const char* key) const {
    YAML::Node node = map[key];
    if (!node) fail(map, std::string("missing key '") + key + "'");
    return node;
  }

  std::string scalar(const YAML::Node& node, const std::string& what) const {
    if (!node.IsScalar()) fail(node, what + " must be a scalar");
    return node.Scalar();
  }

  template <typename F>
  auto guarded(const YAML::Node& node, F&& f) const -> decltype(f()) {
    try {
      return f();
    } catch (const ParseError&) {
      throw;
    } catch (const InvalidInput& e) {
      fail(node, e.what());
    } catch (const Error& e) {
      fail(node, e.what());
    }
  }

  const std::string& source() const { return source_; }

 private:
  std::string source_;
};

}  // namespace hemsim::detail
