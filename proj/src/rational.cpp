#include "rvt/rational.hpp"

namespace rvt {

std::optional<Rat> rat_parse(const std::string& s) {
  if (s.empty()) return std::nullopt;
  std::string t = s;
  bool neg = false;
  if (t[0] == '-' || t[0] == '+') {
    neg = t[0] == '-';
    t = t.substr(1);
  }
  if (t.empty()) return std::nullopt;
  auto all_digits = [](const std::string& d) {
    if (d.empty()) return false;
    for (char c : d)
      if (c < '0' || c > '9') return false;
    return true;
  };
  Rat q;
  auto slash = t.find('/');
  auto dot = t.find('.');
  if (slash != std::string::npos) {
    std::string num = t.substr(0, slash), den = t.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den) || den == "0") return std::nullopt;
    q = Rat(mpz_class(num), mpz_class(den));
  } else if (dot != std::string::npos) {
    std::string ip = t.substr(0, dot), fp = t.substr(dot + 1);
    if (ip.empty()) ip = "0";
    if (!all_digits(ip) || (!fp.empty() && !all_digits(fp))) return std::nullopt;
    mpz_class den(1);
    for (size_t i = 0; i < fp.size(); ++i) den *= 10;
    q = Rat(mpz_class(ip + fp), den);
  } else {
    if (!all_digits(t)) return std::nullopt;
    q = Rat(mpz_class(t));
  }
  q.canonicalize();
  if (neg) q = -q;
  return q;
}

}  // namespace rvt
