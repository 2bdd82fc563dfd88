#pragma once

#include <vector>

#include "orbitforge/bigcomplex.hpp"

namespace orbitforge {

/// Dense polynomial with BigComplex coefficients, ascending powers.
/// Coefficient vectors are never empty; the zero polynomial is {0}.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<BigComplex> coeffs);
  static Polynomial zero(Precision prec);
  static Polynomial constant(const BigComplex& c);

  const std::vector<BigComplex>& coefficients() const { return coeffs_; }
  std::size_t degree() const;  // degree of the trimmed form; 0 for constants

  BigComplex eval(const BigComplex& z) const;  // Horner

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const BigComplex& s, const Polynomial& p);

  /// Drops exactly-zero leading coefficients (never rounds).
  Polynomial trimmed() const;

  /// prod (z - roots[i]), optionally skipping one index.
  static Polynomial from_roots(const std::vector<BigComplex>& roots,
                               Precision prec,
                               std::size_t skip = static_cast<std::size_t>(-1));

 private:
  std::vector<BigComplex> coeffs_;
};

}  // namespace orbitforge
