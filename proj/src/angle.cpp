#include "cubics/angle.hpp"

#include <ostream>
#include <sstream>
#include <stdexcept>

namespace cubics {

Angle::Angle(BigInt num, BigInt den) {
  if (den <= 0) throw std::invalid_argument("Angle: denominator must be positive");
  num %= den;
  if (num < 0) num += den;
  BigInt g = gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

Angle Angle::parse(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Angle(BigInt(text), BigInt(1));
    return Angle(BigInt(text.substr(0, slash)), BigInt(text.substr(slash + 1)));
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("Angle: cannot parse \"" + text + "\"");
  }
}

double Angle::to_double() const {
  return num_.convert_to<double>() / den_.convert_to<double>();
}

std::string Angle::str() const {
  std::ostringstream os;
  os << num_ << '/' << den_;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Angle& a) { return os << a.str(); }

Angle Angle::operator+(const Angle& o) const {
  return Angle(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

Angle Angle::operator-(const Angle& o) const {
  return Angle(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

Angle triple(const Angle& t) { return Angle(3 * t.num(), t.den()); }

AngleClass classify(const Angle& t) {
  AngleClass c;
  BigInt d = t.den();
  while (d % 3 == 0) {
    d /= 3;
    ++c.preperiod;
  }
  // multiplicative order of 3 mod d (d coprime to 3; d = 1 gives period 1)
  c.period = 1;
  BigInt pow = 3 % d;
  while (pow != 1 % d) {
    pow = (pow * 3) % d;
    ++c.period;
  }
  return c;
}

std::pair<Angle, Angle> alpha_beta(long ell) {
  if (ell < 2) throw std::domain_error("alpha_beta: ell must be >= 2");
  BigInt q = pow(BigInt(3), static_cast<unsigned>(ell)) - 1;
  Angle third(1, 3);
  Angle alpha = third - Angle(BigInt(1), q);
  Angle beta = third - Angle(BigInt(1), 3 * q);
  return {alpha, beta};
}

bool cyclic_member(const Angle& x, const Angle& a, const Angle& b, IntervalKind kind) {
  const bool left_closed =
      kind == IntervalKind::closed_open || kind == IntervalKind::closed_closed;
  const bool right_closed =
      kind == IntervalKind::open_closed || kind == IntervalKind::closed_closed;
  if (a == b) return left_closed && right_closed && x == a;
  if (x == a) return left_closed;
  if (x == b) return right_closed;
  // strict interior; representatives are all in [0,1)
  if (a < b) return a < x && x < b;
  return a < x || x < b;  // interval wraps through 0
}

bool ThetaPartition::in_zero(const Angle& t) const {
  Angle third(1, 3);
  Angle lo = theta - third;
  Angle hi = theta + third;
  IntervalKind kind =
      side == PartitionSide::plus ? IntervalKind::closed_open : IntervalKind::open_closed;
  return cyclic_member(t, lo, hi, kind);
}

std::string itinerary(const Angle& theta, const Angle& t, PartitionSide side, long n) {
  if (n < 1) throw std::domain_error("itinerary: n must be >= 1");
  ThetaPartition part{theta, side};
  std::string word;
  word.reserve(static_cast<size_t>(n));
  Angle cur = t;
  for (long k = 0; k < n; ++k) {
    word.push_back(part.in_zero(cur) ? '0' : '1');
    cur = triple(cur);
  }
  return word;
}

}  // namespace cubics
