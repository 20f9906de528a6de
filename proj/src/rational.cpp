#include "ellgen/rational.hpp"

#include <cmath>
#include <cstdio>

namespace ellgen {

std::string to_text(const Rat& x) {
  const BigInt n = numerator_of(x);
  const BigInt d = denominator_of(x);
  if (d == 1) return n.str();
  return n.str() + "/" + d.str();
}

std::string to_text(const Complex& x) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "(%.17g%+.17gi)", x.real(), x.imag());
  return buf;
}

Rat parse_rat(const std::string& raw) {
  std::string s;
  for (char c : raw)
    if (c != ' ' && c != '\t') s.push_back(c);
  if (s.empty()) throw DomainError("empty rational literal");
  bool neg = false;
  std::size_t pos = 0;
  if (s[0] == '+' || s[0] == '-') {
    neg = s[0] == '-';
    pos = 1;
  }
  const std::string body = s.substr(pos);
  auto digits_only = [](const std::string& t) {
    if (t.empty()) return false;
    for (char c : t)
      if (c < '0' || c > '9') return false;
    return true;
  };
  Rat value;
  if (auto slash = body.find('/'); slash != std::string::npos) {
    const std::string a = body.substr(0, slash), b = body.substr(slash + 1);
    if (!digits_only(a) || !digits_only(b)) throw DomainError("bad rational literal '" + raw + "'");
    BigInt den(b);
    if (den == 0) throw DomainError("zero denominator in '" + raw + "'");
    value = Rat(BigInt(a), den);
  } else if (auto dot = body.find('.'); dot != std::string::npos) {
    const std::string a = body.substr(0, dot), b = body.substr(dot + 1);
    if ((!a.empty() && !digits_only(a)) || (!b.empty() && !digits_only(b)) || (a.empty() && b.empty()))
      throw DomainError("bad rational literal '" + raw + "'");
    BigInt den = 1;
    for (std::size_t i = 0; i < b.size(); ++i) den *= 10;
    value = Rat(BigInt(a.empty() ? "0" : a) * den + BigInt(b.empty() ? "0" : b), den);
  } else {
    if (!digits_only(body)) throw DomainError("bad rational literal '" + raw + "'");
    value = Rat(BigInt(body));
  }
  return neg ? Rat(-value) : value;
}

}  // namespace ellgen
