#pragma once

#include <cmath>

namespace polydescent {

/// Complex value kept as an explicit (re, im) pair. Magnitudes are always
/// consumed as the square re^2 + im^2; nothing in the library takes a square
/// root of a complex magnitude.
struct ComplexScalar {
    double re = 0.0;
    double im = 0.0;

    constexpr ComplexScalar() = default;
    constexpr ComplexScalar(double real, double imag = 0.0) : re(real), im(imag) {}
};

constexpr ComplexScalar operator+(ComplexScalar a, ComplexScalar b) {
    return {a.re + b.re, a.im + b.im};
}

constexpr ComplexScalar operator-(ComplexScalar a, ComplexScalar b) {
    return {a.re - b.re, a.im - b.im};
}

constexpr ComplexScalar operator-(ComplexScalar a) { return {-a.re, -a.im}; }

constexpr ComplexScalar operator*(ComplexScalar a, ComplexScalar b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

constexpr ComplexScalar operator*(double s, ComplexScalar a) { return {s * a.re, s * a.im}; }
constexpr ComplexScalar operator*(ComplexScalar a, double s) { return s * a; }

constexpr ComplexScalar conj(ComplexScalar a) { return {a.re, -a.im}; }

/// Squared magnitude re^2 + im^2.
constexpr double abs_sq(ComplexScalar a) { return a.re * a.re + a.im * a.im; }

/// a / b computed as a * conj(b) / |b|^2.
constexpr ComplexScalar operator/(ComplexScalar a, ComplexScalar b) {
    const double d = abs_sq(b);
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}

constexpr ComplexScalar operator/(ComplexScalar a, double s) { return {a.re / s, a.im / s}; }

constexpr bool operator==(ComplexScalar a, ComplexScalar b) {
    return a.re == b.re && a.im == b.im;
}

constexpr bool operator!=(ComplexScalar a, ComplexScalar b) { return !(a == b); }

inline bool is_finite(ComplexScalar a) { return std::isfinite(a.re) && std::isfinite(a.im); }

/// z^e by binary exponentiation. Exact repeated multiplication, no polar form.
constexpr ComplexScalar pow_int(ComplexScalar z, unsigned e) {
    ComplexScalar result{1.0, 0.0};
    ComplexScalar base = z;
    while (e != 0) {
        if (e & 1u) result = result * base;
        base = base * base;
        e >>= 1u;
    }
    return result;
}

}  // namespace polydescent
