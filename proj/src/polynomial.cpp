#include "polydescent/polynomial.hpp"

#include <cmath>
#include <stdexcept>

namespace polydescent {

Polynomial::Polynomial(std::vector<ComplexScalar> coefficients,
                       double zero_threshold_sq)
    : coeffs_(std::move(coefficients)) {
    if (coeffs_.empty())
        throw std::domain_error("polynomial needs at least one coefficient");
    for (const ComplexScalar& c : coeffs_) {
        if (!is_finite(c))
            throw std::domain_error("polynomial coefficient is not finite");
    }
    while (!coeffs_.empty() && abs_sq(coeffs_.back()) <= zero_threshold_sq)
        coeffs_.pop_back();
    if (coeffs_.empty())
        throw std::domain_error(
            "zero polynomial has every point as root -- rejected");
}

ComplexScalar evaluate(const Polynomial& p, ComplexScalar z) {
    if (!is_finite(z))
        throw std::domain_error("evaluation point is not finite");
    const auto& a = p.coeffs();
    ComplexScalar acc = a.back();
    for (size_t j = a.size() - 1; j-- > 0;) acc = acc * z + a[j];
    return acc;
}

Polynomial taylor_shift(const Polynomial& p, ComplexScalar z0) {
    if (!is_finite(z0))
        throw std::domain_error("shift point is not finite");
    std::vector<ComplexScalar> c = p.coeffs();
    const size_t n = c.size() - 1;
    // After round j, c[j] holds the coefficient of h^j in p(z0 + h).
    for (size_t j = 0; j < n; ++j)
        for (size_t i = n; i-- > j;) c[i] = c[i] + z0 * c[i + 1];
    return Polynomial(std::move(c));
}

double RealCurve::evaluate(double t) const {
    double acc = coeffs.back();
    for (size_t j = coeffs.size() - 1; j-- > 0;) acc = acc * t + coeffs[j];
    return acc;
}

RealCurve magnitude_curve(const Polynomial& shifted, ComplexScalar h) {
    if (!is_finite(h))
        throw std::domain_error("direction is not finite");
    const auto& c = shifted.coeffs();
    const size_t n = c.size() - 1;

    std::vector<ComplexScalar> u(n + 1);
    ComplexScalar hp{1.0, 0.0};
    double u_scale = 0.0;  // sum |u_p|^2, the natural size of the b_j
    for (size_t j = 0; j <= n; ++j) {
        u[j] = c[j] * hp;
        hp = hp * h;
        u_scale += abs_sq(u[j]);
    }

    RealCurve curve;
    curve.coeffs.resize(2 * n + 1);
    curve.coeffs[0] = abs_sq(u[0]);
    for (size_t j = 1; j <= 2 * n; ++j) {
        ComplexScalar b{};
        const size_t lo = j > n ? j - n : 0;
        const size_t hi = j < n ? j : n;
        for (size_t p = lo; p <= hi; ++p) b = b + u[p] * conj(u[j - p]);
        if (std::fabs(b.im) > kCurveImagTol * u_scale)
            throw std::runtime_error(
                "magnitude curve: imaginary residue exceeds tolerance");
        curve.coeffs[j] = b.re;
    }
    return curve;
}

std::pair<Polynomial, ComplexScalar> deflate(const Polynomial& p, ComplexScalar r) {
    if (p.degree() < 1)
        throw std::domain_error("cannot deflate a degree-0 polynomial");
    if (!is_finite(r))
        throw std::domain_error("deflation root is not finite");
    const auto& a = p.coeffs();
    const size_t n = a.size() - 1;
    std::vector<ComplexScalar> q(n);
    q[n - 1] = a[n];
    for (size_t j = n - 1; j > 0; --j) q[j - 1] = a[j] + r * q[j];
    const ComplexScalar rem = a[0] + r * q[0];
    // Quotient keeps p's leading coefficient, so no trimming can occur.
    return {Polynomial(std::move(q)), rem};
}

}  // namespace polydescent
