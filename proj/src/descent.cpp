#include "polydescent/descent.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <sstream>

namespace polydescent {

namespace {

void validate(const DescentConfig& cfg) {
    const bool ok = cfg.residual_target > 0.0 && cfg.max_iterations > 0 &&
                    cfg.theta > 0.0 && cfg.theta < 1.0 && cfg.k_detect_rel > 0.0 &&
                    cfg.line_search_doublings >= 0;
    if (!ok) throw std::domain_error("invalid descent configuration");
}

/// Seed or its conjugate so that beta * Im(seed^k) clears zero the right way.
ComplexScalar pick_conjugate(ComplexScalar seed, int k, double beta, bool strict) {
    const ComplexScalar w = pow_int(seed, static_cast<unsigned>(k));
    // Im(conj(seed)^k) = -Im(seed^k), so flipping the seed flips the sign.
    const double s = beta * w.im;
    if (strict ? s > 0.0 : s >= 0.0) return seed;
    return conj(seed);
}

double real_part_of_product(ComplexScalar w, ComplexScalar c) {
    return w.re * c.re - w.im * c.im;
}

}  // namespace

double search_radius_sq(const Polynomial& p, double level) {
    const int n = p.degree();
    if (n < 1) throw std::domain_error("search radius needs degree >= 1");
    if (!(level >= 0.0)) throw std::domain_error("level must be nonnegative");
    const double lead_sq = abs_sq(p.leading());
    double lower_sum = 0.0;
    for (int j = 0; j < n; ++j) lower_sum += abs_sq(p.coeff(j));
    const double coeff_term = 2.0 * (n + 1) * lower_sum / lead_sq;
    const double level_term = std::pow(2.0 * (n + 1) * level / lead_sq, 1.0 / n);
    return std::max({1.0, coeff_term, level_term});
}

LocalExpansion local_expansion(const Polynomial& p, ComplexScalar z,
                               const DescentConfig& cfg) {
    validate(cfg);
    if (p.degree() < 1)
        throw std::domain_error("local expansion needs degree >= 1");
    Polynomial shifted = taylor_shift(p, z);
    const auto& c = shifted.coeffs();
    double max_sq = 0.0;
    for (size_t j = 1; j < c.size(); ++j) max_sq = std::max(max_sq, abs_sq(c[j]));
    const double threshold_sq = cfg.k_detect_rel * cfg.k_detect_rel * max_sq;
    for (size_t j = 1; j < c.size(); ++j) {
        if (abs_sq(c[j]) > threshold_sq)
            return LocalExpansion{c[0], static_cast<int>(j), c[j], std::move(shifted)};
    }
    throw std::domain_error(
        "locally constant: polynomial is effectively degree 0 here");
}

ComplexScalar direction_seed(int k) {
    if (k < 2) throw std::domain_error("direction seed requires k >= 2");
    return {1.0, 3.0 / static_cast<double>(k)};
}

DirectionChoice choose_direction_detailed(ComplexScalar c, int k) {
    if (k < 1) throw std::domain_error("order k must be >= 1");
    if (!is_finite(c)) throw std::domain_error("direction input is not finite");
    if (abs_sq(c) == 0.0)
        throw std::domain_error(
            "direction undefined for c = 0 (signals k-detection failure upstream)");

    const double alpha = c.re;
    const double beta = c.im;

    DirectionChoice choice;
    if (k == 1) {
        choice = {-conj(c), DirectionRule::kOrderOne};
    } else if (alpha < 0.0) {
        choice = {{1.0, 0.0}, DirectionRule::kNegativeReal};
    } else if (alpha > 0.0) {
        choice = {pick_conjugate(direction_seed(k), k, beta, /*strict=*/false),
                  DirectionRule::kPositiveReal};
    } else {
        choice = {pick_conjugate(direction_seed(2 * k), k, beta, /*strict=*/true),
                  DirectionRule::kZeroReal};
    }

    const auto decreases = [&](ComplexScalar h) {
        return real_part_of_product(pow_int(h, static_cast<unsigned>(k)), c) < 0.0;
    };
    if (decreases(choice.h)) return choice;

    // The sign branch ran on the exact floating-point sign of alpha; at the
    // very edge of the format that can mis-serve a near-zero alpha. Retry
    // with the alpha = 0 rule before giving up.
    if (k >= 1) {
        const ComplexScalar retry =
            pick_conjugate(direction_seed(2 * k), k, beta, /*strict=*/true);
        if (decreases(retry)) return {retry, DirectionRule::kZeroReal};
    }
    throw std::runtime_error("direction selection failed: Re(h^k c) not negative");
}

ComplexScalar choose_direction(ComplexScalar c, int k) {
    return choose_direction_detailed(c, k).h;
}

double step_bound(const RealCurve& curve, int k) {
    if (k < 1 || static_cast<size_t>(k) >= curve.coeffs.size())
        throw std::domain_error("order k out of range for curve");
    const double b_k = curve.coeffs[static_cast<size_t>(k)];
    if (!(b_k < 0.0))
        throw std::domain_error(
            "step bound requires b_k < 0 (direction chooser contract violated)");
    double tail = 0.0;
    for (size_t j = static_cast<size_t>(k) + 1; j < curve.coeffs.size(); ++j)
        tail += std::fabs(curve.coeffs[j]);
    if (tail == 0.0) return 1.0;
    return std::min(1.0, -b_k / tail);
}

std::pair<ComplexScalar, StepCertificate> descent_step(const Polynomial& p,
                                                       ComplexScalar z,
                                                       const DescentConfig& cfg) {
    validate(cfg);
    const LocalExpansion le = local_expansion(p, z, cfg);
    const ComplexScalar c = le.b * conj(le.a);
    const ComplexScalar h = choose_direction(c, le.k);
    const RealCurve curve = magnitude_curve(le.shifted, h);

    const double b_k = curve.coeffs[static_cast<size_t>(le.k)];
    double tail = 0.0;
    for (size_t j = static_cast<size_t>(le.k) + 1; j < curve.coeffs.size(); ++j)
        tail += std::fabs(curve.coeffs[j]);

    StepCertificate base;
    base.k = le.k;
    base.h = h;
    base.b_k = b_k;
    base.before = abs_sq(evaluate(p, z));

    if (!(b_k < 0.0))
        throw StepFailure("numerical step failure: b_k not negative", base);

    const double t_max = tail == 0.0 ? 1.0 : std::min(1.0, -b_k / tail);
    const double t0 = cfg.theta * t_max;

    // Measures the candidate and decides whether its certificate holds.
    const auto measure = [&](double t, StepCertificate& cert) {
        cert = base;
        cert.t = t;
        cert.slack = b_k + t * tail;
        const ComplexScalar z_next = z + t * h;
        cert.after = abs_sq(evaluate(p, z_next));
        const bool certified = t > 0.0 && t <= 1.0 && cert.slack < 0.0 &&
                               cert.after < cert.before &&
                               cert.after - cert.before <=
                                   std::pow(t, cert.k) * cert.slack;
        return std::make_pair(certified, z_next);
    };

    StepCertificate best;
    auto [certified0, first_next] = measure(t0, best);
    if (!certified0)
        throw StepFailure("numerical step failure: certificate does not hold at t0",
                          best);
    ComplexScalar z_best = first_next;

    // Finite line search over t0 * 2^i, capped at t <= 1. Only candidates
    // whose own certificate holds are eligible, so the accepted step always
    // carries a valid decrease proof.
    double t = t0;
    for (int i = 0; i < cfg.line_search_doublings; ++i) {
        const double t_next = std::min(t * 2.0, 1.0);
        if (t_next <= t) break;
        t = t_next;
        StepCertificate cand;
        auto [certified, z_next] = measure(t, cand);
        if (certified && cand.after < best.after) {
            best = cand;
            z_best = z_next;
        }
    }
    return {z_best, best};
}

RootReport find_root(const Polynomial& p, ComplexScalar z0, const DescentConfig& cfg,
                     const StepObserver& observe) {
    validate(cfg);
    if (p.degree() < 1) throw std::domain_error("root finding needs degree >= 1");
    if (!is_finite(z0)) throw std::domain_error("start point is not finite");

    RootReport report;
    report.root = z0;
    report.residual_sq = abs_sq(evaluate(p, z0));
#ifndef NDEBUG
    const double radius_sq = search_radius_sq(p, report.residual_sq);
#endif
    while (report.residual_sq > cfg.residual_target) {
        if (report.iterations >= cfg.max_iterations) {
            std::ostringstream msg;
            msg << "progress stalled at residual " << report.residual_sq;
            throw StallError(msg.str(), report);
        }
        const auto [z_next, cert] = descent_step(p, report.root, cfg);
        ++report.iterations;
        ++report.certificates_checked;
        if (observe) observe(p, report.root, z_next, cert);
        report.root = z_next;
        report.residual_sq = cert.after;
        assert(abs_sq(report.root) <= radius_sq &&
               "iterate escaped the level-set radius");
    }
    return report;
}

std::vector<RootReport> find_all_roots(const Polynomial& p, const DescentConfig& cfg,
                                       ComplexScalar z0, std::vector<std::string>* log,
                                       const StepObserver& observe) {
    validate(cfg);
    const int n = p.degree();
    if (n < 1) throw std::domain_error("root finding needs degree >= 1");

    std::vector<RootReport> reports;
    reports.reserve(static_cast<size_t>(n));
    Polynomial work = p;
    for (int i = 0; i < n; ++i) {
        const RootReport found = find_root(work, z0, cfg, observe);
        // Polish against the original polynomial to wash out deflation drift.
        RootReport polished = find_root(p, found.root, cfg, observe);
        polished.iterations += found.iterations;
        polished.certificates_checked += found.certificates_checked;
        reports.push_back(polished);

        if (i + 1 < n) {
            auto [quotient, rem] = deflate(work, found.root);
            if (abs_sq(rem) > cfg.residual_target && log) {
                std::ostringstream msg;
                msg << "deflation " << i << ": |remainder|^2 " << abs_sq(rem)
                    << " exceeds residual target " << cfg.residual_target;
                log->push_back(msg.str());
            }
            work = std::move(quotient);
        }
    }
    return reports;
}

}  // namespace polydescent
