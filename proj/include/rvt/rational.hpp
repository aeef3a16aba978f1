// Exact rational arithmetic, plus parsing/printing in the formats the tool
// exchanges ("p/q" strings in files, decimals in the surface language).
#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

namespace rvt {

using Rat = mpq_class;

inline std::string rat_to_string(const Rat& q) {
  Rat c = q;
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

// accepts "p", "-p", "p/q" and decimal literals like "3.25"
std::optional<Rat> rat_parse(const std::string& s);

}  // namespace rvt
