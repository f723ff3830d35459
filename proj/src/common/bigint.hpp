#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace fqp {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt big_pow(const BigInt& base, unsigned e) {
  return boost::multiprecision::pow(base, e);
}

}  // namespace fqp
