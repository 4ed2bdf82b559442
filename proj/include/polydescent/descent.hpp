#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "polydescent/polynomial.hpp"

namespace polydescent {

struct DescentConfig {
    /// Stop once |p(z)|^2 falls to or below this.
    double residual_target = 1e-20;
    int max_iterations = 512;
    /// Step safety factor in (0,1): the step is theta * t_max, strictly
    /// inside the certified interval.
    double theta = 0.5;
    /// Relative threshold for detecting the order k of the local expansion.
    double k_detect_rel = 1e-9;
    /// Number of doublings t0 * 2^i tried by the finite line search
    /// (candidates capped at t <= 1); 0 disables the search.
    int line_search_doublings = 20;
};

/// Local expansion p(z + h) = a + h^k Q(h) around a point z:
/// a = p(z), k is the order of the first non-negligible coefficient past
/// the constant term, b = Q(0) = c_k, and `shifted` holds all c_0..c_n.
struct LocalExpansion {
    ComplexScalar a;
    int k = 0;
    ComplexScalar b;
    Polynomial shifted;
};

/// Proof that one descent step strictly decreased |p|^2.
///
/// Validity means: b_k < 0, slack = b_k + t * sum_{j>k} |b_j| < 0, t <= 1,
/// after < before, and after - before <= t^k * slack. The last inequality has
/// its left side measured by two polynomial evaluations and its right side
/// predicted from the real curve, so the two sides are independent.
struct StepCertificate {
    int k = 0;
    ComplexScalar h;
    double t = 0.0;
    double b_k = 0.0;
    double slack = 0.0;
    double before = 0.0;
    double after = 0.0;
};

struct RootReport {
    ComplexScalar root;
    /// |p(root)|^2; in find_all_roots this is measured against the original
    /// polynomial, never a deflated one.
    double residual_sq = 0.0;
    int iterations = 0;
    int certificates_checked = 0;
};

/// A step whose certificate could not be established; carries the offending
/// certificate for diagnosis.
struct StepFailure : std::runtime_error {
    StepCertificate certificate;
    StepFailure(const std::string& what, StepCertificate cert)
        : std::runtime_error(what), certificate(cert) {}
};

/// Raised when max_iterations pass without reaching the residual target;
/// carries the best iterate seen (the descent is monotone, so the last one).
struct StallError : std::runtime_error {
    RootReport best;
    StallError(const std::string& what, RootReport best_so_far)
        : std::runtime_error(what), best(best_so_far) {}
};

/// Which rule of the direction chooser produced h.
enum class DirectionRule { kOrderOne, kNegativeReal, kPositiveReal, kZeroReal };

struct DirectionChoice {
    ComplexScalar h;
    DirectionRule rule = DirectionRule::kOrderOne;
};

/// Squared radius R^2 such that |z|^2 > R^2 implies |p(z)|^2 > level:
///   R^2 = max(1, 2(n+1) sum_{k<n} |a_k|^2 / |a_n|^2,
///             (2(n+1) level / |a_n|^2)^(1/n)).
/// Requires degree >= 1.
double search_radius_sq(const Polynomial& p, double level);

/// Shift p to z and locate the order k: the least j >= 1 whose coefficient
/// satisfies |c_j|^2 > (k_detect_rel * max_{j>=1} |c_j|)^2. Requires
/// degree >= 1; throws std::domain_error if every c_j (j >= 1) vanishes,
/// which a nonzero leading coefficient makes analytically impossible.
LocalExpansion local_expansion(const Polynomial& p, ComplexScalar z,
                               const DescentConfig& cfg);

/// The seed 1 + (3/k) i, whose k-th power has negative real part for every
/// k >= 2. Square-root-free and trig-free by construction.
ComplexScalar direction_seed(int k);

/// A direction h with Re(h^k c) < 0 for c != 0, chosen by cases on
/// alpha = Re(c), beta = Im(c):
///   k = 1       -> h = -conj(c);
///   alpha < 0   -> h = 1;
///   alpha > 0   -> h = z_k or conj(z_k), whichever gives beta Im(h^k) >= 0;
///   alpha = 0   -> h = z_2k or conj(z_2k), whichever gives beta Im(h^k) > 0.
/// The sign branch uses the exact sign of the computed alpha; if the chosen h
/// fails the Re(h^k c) < 0 post-check (possible only at the edge of floating
/// point), the alpha = 0 rule is retried before giving up.
ComplexScalar choose_direction(ComplexScalar c, int k);

/// choose_direction plus the rule that produced the direction.
DirectionChoice choose_direction_detailed(ComplexScalar c, int k);

/// Largest certified step: t_max = min(1, -b_k / sum_{j>k} |b_j|), with
/// t_max = 1 when the tail sum is empty or zero. Any t with 0 < t < t_max
/// strictly decreases the curve. Requires curve.coeffs[k] < 0.
double step_bound(const RealCurve& curve, int k);

/// One certified descent step from z. Returns the new point and a
/// certificate satisfying every StepCertificate invariant. The finite line
/// search measures |p(z + t h)|^2 at t0 * 2^i (t <= 1) and keeps the best
/// candidate whose certificate holds; t0 = theta * t_max is always among the
/// candidates. Throws StepFailure if not even t0 certifies.
std::pair<ComplexScalar, StepCertificate> descent_step(const Polynomial& p,
                                                       ComplexScalar z,
                                                       const DescentConfig& cfg);

/// Called after each accepted step with the polynomial being descended, the
/// point stepped from, the new point, and the step's certificate.
using StepObserver = std::function<void(const Polynomial& p, ComplexScalar z_before,
                                        ComplexScalar z_after,
                                        const StepCertificate& cert)>;

/// Iterate descent_step from z0 until |p(z)|^2 <= cfg.residual_target.
/// The residual sequence is strictly decreasing and every iterate stays
/// within the search radius for level |p(z0)|^2 (asserted, not enforced).
/// Throws StallError when max_iterations run out.
RootReport find_root(const Polynomial& p, ComplexScalar z0, const DescentConfig& cfg,
                     const StepObserver& observe = {});

/// All n roots by find-and-deflate: each root is located on the current
/// deflated polynomial starting from z0, then polished by a find_root run
/// against the original polynomial. Residuals in the reports are measured
/// against the original. A deflation remainder above the residual target is
/// appended to `log` (when given) but does not abort.
std::vector<RootReport> find_all_roots(const Polynomial& p, const DescentConfig& cfg,
                                       ComplexScalar z0 = {},
                                       std::vector<std::string>* log = nullptr,
                                       const StepObserver& observe = {});

}  // namespace polydescent
