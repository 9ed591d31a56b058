#include "demres/rational.hpp"

#include "demres/errors.hpp"

namespace demres {

Rational make_rational(long num, long den) {
  if (den == 0) throw Error("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  Rational q;
  if (s.empty() || q.set_str(s, 10) != 0) {
    throw ValidationError("not a rational number: '" + s + "'");
  }
  if (q.get_den() == 0) throw ValidationError("zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

}  // namespace demres
