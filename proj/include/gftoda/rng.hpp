#pragma once

// Deterministic splitmix64-based sampler.  Used wherever a suite draws
// random points or coefficients, so reports are reproducible bit for bit
// from the seed alone (no library distribution involved).

#include <complex>
#include <cstdint>

namespace gftoda {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  double uniform() { return double(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  std::complex<double> box(double radius) {
    return {uniform(-radius, radius), uniform(-radius, radius)};
  }

  // Nonzero-ish complex value in an annulus, for invertible leading terms.
  std::complex<double> annulus(double rmin, double rmax) {
    double r = uniform(rmin, rmax);
    double phi = uniform(0.0, 6.283185307179586);
    return {r * std::cos(phi), r * std::sin(phi)};
  }

 private:
  std::uint64_t state_;
};

}  // namespace gftoda
