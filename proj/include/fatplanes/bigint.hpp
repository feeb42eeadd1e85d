#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace fatplanes {

using Bigint = boost::multiprecision::cpp_int;

// ceil(a / b) for b > 0, exact over arbitrary-size integers
inline Bigint ceil_div(const Bigint& a, const Bigint& b) {
  Bigint q = a / b;
  if (a % b != 0 && a > 0) ++q;
  return q;
}

}  // namespace fatplanes
