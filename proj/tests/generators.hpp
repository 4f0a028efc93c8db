#pragma once

// Random instance generators shared by the property suites.

#include <cartan/form.hpp>
#include <cartan/poly.hpp>

#include <algorithm>
#include <random>
#include <vector>

namespace cartan::testgen {

class Gen {
 public:
  explicit Gen(std::uint32_t seed) : rng_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin() { return uniform(0, 1) == 1; }

  /// Small nonzero-or-zero rational num/den with |num| <= 5, den in 1..4.
  GaussRat rational() { return GaussRat::fraction(uniform(-5, 5), uniform(1, 4)); }
  GaussRat nonzero_rational() {
    GaussRat r;
    do r = rational();
    while (r.is_zero());
    return r;
  }
  GaussRat gauss() { return GaussRat(rational().re(), rational().re()); }

  Poly poly(const std::vector<Symbol>& symbols, int max_terms = 3, int max_degree = 2) {
    Poly p;
    int terms = uniform(0, max_terms);
    for (int t = 0; t < terms; ++t) {
      Poly m(gauss());
      int deg = uniform(0, max_degree);
      for (int d = 0; d < deg && !symbols.empty(); ++d) m = m * Poly(symbols[uniform(0, static_cast<int>(symbols.size()) - 1)]);
      p += m;
    }
    return p;
  }

  /// Random monomial of the given degree over generators 1..n (degree <= n).
  Monomial monomial(int n, int deg) {
    std::vector<Generator> all;
    for (int i = 1; i <= n; ++i) all.push_back(static_cast<Generator>(i));
    std::shuffle(all.begin(), all.end(), rng_);
    all.resize(deg);
    std::sort(all.begin(), all.end());
    return Monomial::from_sorted(all);
  }

  /// Homogeneous form of degree `deg` with rational coefficients.
  Form form(int n, int deg, int max_terms = 4) {
    Form f;
    int terms = uniform(0, max_terms);
    for (int t = 0; t < terms; ++t) f.add_term(monomial(n, deg), Poly(rational()));
    return f;
  }

  /// Homogeneous form whose coefficients are polynomials in `symbols`.
  Form symbolic_form(int n, int deg, const std::vector<Symbol>& symbols, int max_terms = 3) {
    Form f;
    int terms = uniform(0, max_terms);
    for (int t = 0; t < terms; ++t) f.add_term(monomial(n, deg), poly(symbols, 2, 1));
    return f;
  }

  std::mt19937& engine() { return rng_; }

 private:
  std::mt19937 rng_;
};

}  // namespace cartan::testgen
