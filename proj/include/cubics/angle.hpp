#pragma once

// Exact rational angles in R/Z and the tripling map m3(t) = 3t mod 1.
// This module is pure integer arithmetic; it serves as the combinatorial
// oracle for the floating-point dynamics code, so no tolerances appear here.

#include <cstdint>
#include <iosfwd>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace cubics {

using BigInt = boost::multiprecision::cpp_int;

// A point of R/Z stored as a reduced fraction num/den with 0 <= num < den.
class Angle {
 public:
  Angle() : num_(0), den_(1) {}
  Angle(BigInt num, BigInt den);
  Angle(long num, long den) : Angle(BigInt(num), BigInt(den)) {}

  static Angle parse(const std::string& text);

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }

  double to_double() const;
  std::string str() const;

  bool operator==(const Angle& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const Angle& o) const { return !(*this == o); }
  // Order as representatives in [0,1); use cyclic_member for circle order.
  bool operator<(const Angle& o) const { return num_ * o.den_ < o.num_ * den_; }

  Angle operator+(const Angle& o) const;
  Angle operator-(const Angle& o) const;

 private:
  BigInt num_, den_;  // reduced, den_ > 0, 0 <= num_ < den_
};

std::ostream& operator<<(std::ostream& os, const Angle& a);

// (preperiod, period) of an angle under m3.  preperiod = 0 iff the reduced
// denominator is coprime to 3; period = multiplicative order of 3 modulo the
// 3-free part of the denominator.
struct AngleClass {
  long preperiod = 0;
  long period = 1;
  bool operator==(const AngleClass& o) const {
    return preperiod == o.preperiod && period == o.period;
  }
};

enum class IntervalKind { closed_open, open_closed, open_open, closed_closed };

enum class PartitionSide { plus, minus };

// The circle partition {I0(theta), I1(theta)} with endpoints theta -+ 1/3.
// side = plus:  I0 = [theta-1/3, theta+1/3[ ,  I1 = [theta+1/3, theta-1/3[
// side = minus: I0 = ]theta-1/3, theta+1/3] ,  I1 = ]theta+1/3, theta-1/3]
struct ThetaPartition {
  Angle theta;
  PartitionSide side = PartitionSide::plus;

  // true iff t lies in I0.
  bool in_zero(const Angle& t) const;
};

Angle triple(const Angle& t);
AngleClass classify(const Angle& t);

// The interval endpoints alpha_ell = 1/3 - 1/(3^ell - 1) and
// beta_ell = 1/3 - 1/(3 (3^ell - 1)); requires ell >= 2.
std::pair<Angle, Angle> alpha_beta(long ell);

// Binary itinerary of t under m3 relative to the theta partition:
// word[k] = 0 iff m3^k(t) lies in I0, for k = 0..n-1.  Requires n >= 1.
std::string itinerary(const Angle& theta, const Angle& t, PartitionSide side, long n);

// Membership of x in the cyclic interval from a to b (counterclockwise),
// wrap-around handled; endpoint inclusion per kind.  An interval with a == b
// is empty except closed_closed, which is the single point {a}.
bool cyclic_member(const Angle& x, const Angle& a, const Angle& b, IntervalKind kind);

}  // namespace cubics
