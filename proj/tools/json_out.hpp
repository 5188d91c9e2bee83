#pragma once

#include <string>
#include <vector>

#include "cga/text_format.hpp"

// Minimal JSON emission with caller-controlled key order and 17-significant
// digit numbers, so identical inputs give byte-identical output.
namespace jout {

inline std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out;
}

inline std::string str(const std::string& s) { return "\"" + escape(s) + "\""; }

inline std::string num(double v) { return cga::format_double(v); }

inline std::string num(int v) { return std::to_string(v); }

inline std::string boolean(bool b) { return b ? "true" : "false"; }

inline std::string array_of_numbers(const std::vector<double>& v) {
  std::string out = "[";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += num(v[i]);
  }
  return out + "]";
}

inline std::string array_of_ints(const std::vector<int>& v) {
  std::string out = "[";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(v[i]);
  }
  return out + "]";
}

class Object {
public:
  Object& field(const std::string& name, const std::string& rendered_value) {
    if (!body_.empty()) body_ += ",";
    body_ += str(name) + ":" + rendered_value;
    return *this;
  }
  std::string render() const { return "{" + body_ + "}"; }

private:
  std::string body_;
};

}  // namespace jout
