#pragma once

#include <cmath>
#include <random>

#include "wwlab/paradiff.hpp"

namespace wwlab::testing {

// Zero-mean random real field with Gaussian spectral envelope of width cut.
inline Field random_field(const Grid& g, std::mt19937& rng, double cut = 4.0) {
  std::normal_distribution<double> n;
  Field f(g);
  for (int k = 1; k <= g.band(); ++k) {
    double x = g.xi(k);
    f.c[k] = cplx(n(rng), n(rng)) * std::exp(-x * x / (2.0 * cut * cut));
  }
  return f;
}

inline FieldPair random_pair(const Grid& g, std::mt19937& rng, double cut = 4.0) {
  Field a = random_field(g, rng, cut);
  Field b = random_field(g, rng, cut);
  return {a, b};
}

inline Field cosine(const Grid& g, int k) {
  return Field::from_function(g, [&](double x) { return std::cos(g.xi(k) * x); });
}

inline Field sine(const Grid& g, int k) {
  return Field::from_function(g, [&](double x) { return std::sin(g.xi(k) * x); });
}

}  // namespace wwlab::testing
