#include "bordqft/rational.hpp"

#include <cctype>

namespace bordqft {

Rat rat_parse(const std::string& s) {
  if (s.empty()) throw ValidationError("rat_parse: empty string");
  auto slash = s.find('/');
  auto is_int = [](const std::string& t) {
    if (t.empty()) return false;
    size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
  };
  mpz_class num, den(1);
  if (slash == std::string::npos) {
    if (!is_int(s)) throw ValidationError("rat_parse: malformed rational '" + s + "'");
    num = mpz_class(s);
  } else {
    std::string ns = s.substr(0, slash), ds = s.substr(slash + 1);
    if (!is_int(ns) || !is_int(ds))
      throw ValidationError("rat_parse: malformed rational '" + s + "'");
    num = mpz_class(ns);
    den = mpz_class(ds);
    if (den == 0) throw ValidationError("rat_parse: zero denominator in '" + s + "'");
  }
  Rat r(num, den);
  r.canonicalize();
  return r;
}

std::string rat_str(const Rat& r) { return r.get_str(); }

std::string gauss_str(const GaussRat& z) {
  return "(" + rat_str(z.re) + "+" + rat_str(z.im) + "i)";
}

}  // namespace bordqft
