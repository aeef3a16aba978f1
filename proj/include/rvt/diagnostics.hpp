#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace rvt {

struct Span {
  int pos = -1;  // byte offset into the constraint source, -1 if unknown
  int len = 0;
};

struct Diagnostic {
  std::string where;  // requirement id, "signature", attribute path, ...
  Span span;
  std::string message;

  std::string str() const {
    std::string s = where;
    if (span.pos >= 0) s += ":" + std::to_string(span.pos);
    if (!s.empty()) s += ": ";
    return s + message;
  }
};

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& m) : std::runtime_error(m) {}
  Error(const std::string& m, Span sp) : std::runtime_error(m), span(sp) {}
  Span span;
};

}  // namespace rvt
