#pragma once

#include <utility>
#include <vector>

#include "polydescent/complex_scalar.hpp"

namespace polydescent {

/// Complex polynomial a_0 + a_1 z + ... + a_n z^n stored as its coefficient
/// sequence in ascending degree order.
///
/// Construction trims trailing coefficients whose squared magnitude is at
/// most `zero_threshold_sq` (default 0, so only exact zeros are dropped) and
/// rejects non-finite coefficients and the all-zero sequence. After
/// construction the value is immutable and the leading coefficient is
/// nonzero, so instances are safe to share across threads.
class Polynomial {
  public:
    explicit Polynomial(std::vector<ComplexScalar> coefficients,
                        double zero_threshold_sq = 0.0);

    /// Degree n; always >= 0.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

    const std::vector<ComplexScalar>& coeffs() const { return coeffs_; }

    /// Coefficient a_j, zero for j beyond the degree.
    ComplexScalar coeff(int j) const {
        return (j >= 0 && j <= degree()) ? coeffs_[static_cast<size_t>(j)]
                                         : ComplexScalar{};
    }

    ComplexScalar leading() const { return coeffs_.back(); }

  private:
    std::vector<ComplexScalar> coeffs_;
};

/// Horner evaluation of p at z. Throws std::domain_error if z is not finite.
ComplexScalar evaluate(const Polynomial& p, ComplexScalar z);

/// Coefficients c_0..c_n of h -> p(z0 + h), computed by n rounds of synthetic
/// division (O(n^2)). The degree is preserved and c_0 = p(z0).
Polynomial taylor_shift(const Polynomial& p, ComplexScalar z0);

/// Real polynomial b_0 + b_1 t + ... + b_{2n} t^{2n} in a real variable t.
struct RealCurve {
    std::vector<double> coeffs;

    double evaluate(double t) const;
};

/// The real curve t -> |p_shifted(t h)|^2, i.e. with u_j = c_j h^j the
/// coefficients b_j = sum_{p+q=j} u_p conj(u_q).
///
/// Each b_j is real up to rounding; the imaginary residue of the convolution
/// is checked against kCurveImagTol * sum |u_p|^2 and discarded. A residue
/// above that bound means the inputs were inconsistent and raises
/// std::runtime_error. b_0 is anchored to |c_0|^2 directly.
RealCurve magnitude_curve(const Polynomial& shifted, ComplexScalar h);

/// Tolerance for the (analytically zero) imaginary residue in
/// magnitude_curve, relative to sum_p |u_p|^2.
inline constexpr double kCurveImagTol = 1e-10;

/// Synthetic division of p by (z - r): returns (q, rem) with
/// p(z) = (z - r) q(z) + rem and rem = p(r). Requires degree >= 1.
std::pair<Polynomial, ComplexScalar> deflate(const Polynomial& p, ComplexScalar r);

}  // namespace polydescent
