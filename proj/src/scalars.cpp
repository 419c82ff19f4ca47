#include "kc/scalars.hpp"

#include <ostream>

#include "kc/error.hpp"

namespace kc {

std::ostream& operator<<(std::ostream& os, const Int& x) { return os << x.raw(); }

std::ostream& operator<<(std::ostream& os, const Rat& x) { return os << x.str(); }

Int gcd(const Int& a, const Int& b) { return Int(mp::gcd(a.raw(), b.raw())); }

Int lcm(const Int& a, const Int& b) { return Int(mp::lcm(a.raw(), b.raw())); }

Int pow(const Int& base, unsigned long exp) { return Int(mp::pow(base.raw(), exp)); }

Int div_floor(const Int& a, const Int& b) {
  if (b.is_zero()) throw InputError("division by zero");
  BigInt q = a.raw() / b.raw();
  BigInt r = a.raw() % b.raw();
  if (!r.is_zero() && ((r < 0) != (b.raw() < 0))) q -= 1;
  return Int(q);
}

Int mod_floor(const Int& a, const Int& b) { return a - div_floor(a, b) * b; }

Int ext_gcd(const Int& a, const Int& b, Int& x, Int& y) {
  // Iterative extended Euclid; result gcd is non-negative.
  Int old_r = a, r = b;
  Int old_s = 1, s = 0;
  Int old_t = 0, t = 1;
  while (!r.is_zero()) {
    Int q = old_r / r;
    Int tmp = old_r - q * r; old_r = r; r = tmp;
    tmp = old_s - q * s; old_s = s; s = tmp;
    tmp = old_t - q * t; old_t = t; t = tmp;
  }
  if (old_r < Int(0)) { old_r = -old_r; old_s = -old_s; old_t = -old_t; }
  x = old_s;
  y = old_t;
  return old_r;
}

Int mod_inverse(const Int& a, const Int& m) {
  Int x, y;
  Int g = ext_gcd(mod_floor(a, m), m, x, y);
  if (!(g == Int(1))) throw InputError("element not invertible modulo " + m.str());
  return mod_floor(x, m);
}

Rat::Rat(const Int& num, const Int& den) {
  if (den.is_zero()) throw InputError("rational with zero denominator");
  v_ = BigRat(num.raw(), den.raw());
}

std::string Rat::str() const {
  if (mp::denominator(v_) == 1) return mp::numerator(v_).str();
  return mp::numerator(v_).str() + "/" + mp::denominator(v_).str();
}

Int floor(const Rat& x) { return div_floor(x.num(), x.den()); }

Rat mod1(const Rat& x) { return x - Rat(floor(x)); }

}  // namespace kc
