#pragma once

#include <cmath>
#include <complex>
#include <random>

#include <doctest.h>

namespace testing {

inline void check_close(double got, double want, double tol) {
  INFO("got " << got << ", want " << want << ", tol " << tol);
  CHECK(std::abs(got - want) <= tol);
}

inline void check_rel(double got, double want, double rel) {
  INFO("got " << got << ", want " << want << ", rel " << rel);
  CHECK(std::abs(got - want) <= rel * std::abs(want));
}

inline void check_close(std::complex<double> got, std::complex<double> want, double tol) {
  INFO("got " << got << ", want " << want << ", tol " << tol);
  CHECK(std::abs(got - want) <= tol);
}

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline double uniform(std::mt19937_64& g, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(g);
}

}  // namespace testing
