#include "orbitforge/polynomial.hpp"

#include <algorithm>

#include "orbitforge/error.hpp"

namespace orbitforge {

Polynomial::Polynomial(std::vector<BigComplex> coeffs)
    : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) fail(Errc::internal, "empty coefficient vector");
}

Polynomial Polynomial::zero(Precision prec) {
  return Polynomial({BigComplex::zero(prec)});
}

Polynomial Polynomial::constant(const BigComplex& c) { return Polynomial({c}); }

std::size_t Polynomial::degree() const {
  std::size_t d = coeffs_.size() - 1;
  while (d > 0 && coeffs_[d].is_zero()) --d;
  return d;
}

BigComplex Polynomial::eval(const BigComplex& z) const {
  BigComplex acc = coeffs_.back();
  for (std::size_t i = coeffs_.size(); i-- > 1;) {
    acc = acc * z + coeffs_[i - 1];
  }
  return acc;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  const auto& x = a.coeffs_;
  const auto& y = b.coeffs_;
  std::vector<BigComplex> out(std::max(x.size(), y.size()));
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (i < x.size() && i < y.size()) out[i] = x[i] + y[i];
    else if (i < x.size()) out[i] = x[i];
    else out[i] = y[i];
  }
  return Polynomial(std::move(out));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  const auto& x = a.coeffs_;
  const auto& y = b.coeffs_;
  std::vector<BigComplex> out(std::max(x.size(), y.size()));
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (i < x.size() && i < y.size()) out[i] = x[i] - y[i];
    else if (i < x.size()) out[i] = x[i];
    else out[i] = -y[i];
  }
  return Polynomial(std::move(out));
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  const auto& x = a.coeffs_;
  const auto& y = b.coeffs_;
  Precision prec = std::max(x[0].precision(), y[0].precision());
  std::vector<BigComplex> out(x.size() + y.size() - 1, BigComplex::zero(prec));
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < y.size(); ++j) {
      out[i + j] = out[i + j] + x[i] * y[j];
    }
  }
  return Polynomial(std::move(out));
}

Polynomial operator*(const BigComplex& s, const Polynomial& p) {
  std::vector<BigComplex> out;
  out.reserve(p.coeffs_.size());
  for (const auto& c : p.coeffs_) out.push_back(s * c);
  return Polynomial(std::move(out));
}

Polynomial Polynomial::trimmed() const {
  std::size_t d = degree();
  return Polynomial(std::vector<BigComplex>(coeffs_.begin(),
                                            coeffs_.begin() + d + 1));
}

Polynomial Polynomial::from_roots(const std::vector<BigComplex>& roots,
                                  Precision prec, std::size_t skip) {
  Polynomial acc({BigComplex(1.0, 0.0, prec)});
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (i == skip) continue;
    acc = acc * Polynomial({-roots[i], BigComplex(1.0, 0.0, prec)});
  }
  return acc;
}

}  // namespace orbitforge
