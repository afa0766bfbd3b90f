#pragma once

// Strict reader over a yaml-cpp mapping: every key must be consumed, every
// physical quantity carries a unit, and errors name the full field path.

#include <set>
#include <string>

#include <yaml-cpp/yaml.h>

#include "smaneck/errors.hpp"
#include "smaneck/units.hpp"

namespace smaneck::detail {

class MapReader {
public:
  MapReader(const YAML::Node& node, std::string path)
      : node_(node), path_(std::move(path)) {
    if (!node_.IsMap()) {
      throw ValidationError(path_.empty() ? "<root>" : path_,
                            "expected a mapping");
    }
  }

  std::string child_path(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  bool has(const std::string& key) const { return bool(node_[key]); }

  YAML::Node node(const std::string& key) {
    const YAML::Node n = node_[key];
    if (!n) throw ValidationError(child_path(key), "missing required field");
    seen_.insert(key);
    return n;
  }

  MapReader map(const std::string& key) { return MapReader(node(key), child_path(key)); }

  double quantity(const std::string& key, Dimension dimension) {
    return quantity_of(node(key), dimension, child_path(key));
  }

  double quantity_or(const std::string& key, Dimension dimension,
                     double fallback) {
    return has(key) ? quantity(key, dimension) : fallback;
  }

  double number(const std::string& key) {
    return scalar_as<double>(node(key), child_path(key), "a number");
  }

  int integer(const std::string& key) {
    return scalar_as<int>(node(key), child_path(key), "an integer");
  }

  bool boolean(const std::string& key) {
    return scalar_as<bool>(node(key), child_path(key), "true or false");
  }

  std::string text(const std::string& key) {
    return scalar_as<std::string>(node(key), child_path(key), "a string");
  }

  // Rejects keys that were never read.
  void finish() const {
    for (const auto& kv : node_) {
      const auto key = kv.first.as<std::string>();
      if (!seen_.count(key)) {
        throw ValidationError(child_path(key), "unknown key");
      }
    }
  }

  static double quantity_of(const YAML::Node& n, Dimension dimension,
                            const std::string& path) {
    if (!n.IsScalar()) {
      throw ParseError(path + ": expected '<number> <unit>'");
    }
    return parse_quantity(n.Scalar(), dimension, path);
  }

  template <typename T>
  static T scalar_as(const YAML::Node& n, const std::string& path,
                     const char* expected) {
    if (!n.IsScalar()) throw ValidationError(path, std::string("expected ") + expected);
    try {
      return n.as<T>();
    } catch (const YAML::Exception&) {
      throw ValidationError(path, std::string("expected ") + expected +
                                      ", got '" + n.Scalar() + "'");
    }
  }

private:
  YAML::Node node_;
  std::string path_;
  std::set<std::string> seen_;
};

inline YAML::Node parse_document(std::string_view text) {
  try {
    return YAML::Load(std::string(text));
  } catch (const YAML::Exception& e) {
    throw ParseError(std::string("malformed document: ") + e.what());
  }
}

}  // namespace smaneck::detail
