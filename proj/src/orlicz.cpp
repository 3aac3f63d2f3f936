#include "oplab/orlicz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace oplab {

namespace {

double check_custom_value(const std::function<double(double)>& eval, double t) {
    const double v = eval(std::abs(t));
    if (std::isnan(v) || v < 0.0) {
        throw InvalidOrliczFunction("custom evaluator returned negative or NaN at t = " +
                                    std::to_string(t));
    }
    return v;
}

void validate_custom(const std::function<double(double)>& eval, int depth) {
    if (check_custom_value(eval, 0.0) != 0.0) {
        throw InvalidOrliczFunction("custom phi(0) != 0");
    }
    // Positivity away from zero and the two N-function limits, sampled at
    // powers of two. A semi-decision: passing does not prove the limits.
    const double r1 = check_custom_value(eval, 1.0);
    for (int k = 1; k <= depth; ++k) {
        const double lo = std::ldexp(1.0, -k);
        const double hi = std::ldexp(1.0, k);
        if (check_custom_value(eval, lo) <= 0.0 || check_custom_value(eval, hi) <= 0.0) {
            throw InvalidOrliczFunction("custom phi not positive at t > 0");
        }
    }
    const double t_lo = std::ldexp(1.0, -depth);
    const double t_hi = std::ldexp(1.0, depth);
    if (!(check_custom_value(eval, t_lo) / t_lo < r1)) {
        throw InvalidOrliczFunction("custom phi(t)/t does not decrease toward 0");
    }
    if (!(std::isinf(check_custom_value(eval, t_hi)) ||
          check_custom_value(eval, t_hi) / t_hi > r1)) {
        throw InvalidOrliczFunction("custom phi(t)/t does not grow at infinity");
    }
    // Midpoint convexity on a sample grid.
    const int grid = 33;
    const double span = 8.0;
    for (int i = 0; i < grid; ++i) {
        for (int j = i + 1; j < grid; ++j) {
            const double a = span * i / (grid - 1);
            const double b = span * j / (grid - 1);
            const double mid = check_custom_value(eval, 0.5 * (a + b));
            const double avg = 0.5 * (check_custom_value(eval, a) + check_custom_value(eval, b));
            if (mid > avg * (1.0 + 1e-12) + 1e-12) {
                throw InvalidOrliczFunction("custom phi fails midpoint convexity at (" +
                                            std::to_string(a) + ", " + std::to_string(b) + ")");
            }
        }
    }
}

}  // namespace

OrliczFunction OrliczFunction::power(double p, std::string label) {
    if (!(p > 1.0)) {
        throw InvalidOrliczFunction("Power family requires p > 1");
    }
    OrliczFunction phi;
    phi.family_ = OrliczFamily::Power;
    phi.p_ = p;
    phi.label_ = label.empty() ? "|t|^" + std::to_string(p) : std::move(label);
    return phi;
}

OrliczFunction OrliczFunction::power_log(double p, std::string label) {
    if (!(p >= 1.0)) {
        throw InvalidOrliczFunction("PowerLog family requires p >= 1");
    }
    OrliczFunction phi;
    phi.family_ = OrliczFamily::PowerLog;
    phi.p_ = p;
    phi.label_ = label.empty() ? "|t|^" + std::to_string(p) + " log(1+|t|)" : std::move(label);
    return phi;
}

OrliczFunction OrliczFunction::exp_minus(std::string label) {
    OrliczFunction phi;
    phi.family_ = OrliczFamily::ExpMinus;
    phi.label_ = label.empty() ? "e^|t| - |t| - 1" : std::move(label);
    return phi;
}

OrliczFunction OrliczFunction::custom(std::function<double(double)> eval, bool declared_convex,
                                      std::string label, int check_depth) {
    if (!declared_convex) {
        throw InvalidOrliczFunction("custom Orlicz function must be declared convex");
    }
    validate_custom(eval, check_depth);
    OrliczFunction phi;
    phi.family_ = OrliczFamily::Custom;
    phi.eval_ = std::move(eval);
    phi.label_ = std::move(label);
    return phi;
}

double OrliczFunction::operator()(double t) const {
    const double u = std::abs(t);
    switch (family_) {
        case OrliczFamily::Power:
            return std::pow(u, p_);
        case OrliczFamily::PowerLog:
            return std::pow(u, p_) * std::log1p(u);
        case OrliczFamily::ExpMinus:
            // expm1 keeps precision near 0 where e^u - u - 1 ~ u^2/2.
            return std::expm1(u) - u;
        case OrliczFamily::Custom:
            return check_custom_value(eval_, u);
    }
    return 0.0;
}

bool Modular::finite() const {
    return std::isfinite(value);
}

Modular modular(const OrliczFunction& phi, std::span<const double> values,
                std::span<const double> weights) {
    if (values.size() != weights.size()) {
        throw CarrierMismatch("modular: values/weights length mismatch");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (weights[i] > 0.0) {
            sum += phi(values[i]) * weights[i];
        }
    }
    return Modular{sum};
}

double luxemburg_norm(const OrliczFunction& phi, std::span<const double> values,
                      std::span<const double> weights, double tol) {
    if (values.size() != weights.size()) {
        throw CarrierMismatch("luxemburg_norm: values/weights length mismatch");
    }
    if (!(tol > 0.0)) {
        throw ValidationError("luxemburg_norm: tol must be positive");
    }
    double max_abs = 0.0;
    double total_mass = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i])) {
            throw NonFiniteFunction("luxemburg_norm: non-finite sample");
        }
        if (weights[i] > 0.0) {
            max_abs = std::max(max_abs, std::abs(values[i]));
            total_mass += weights[i];
        }
    }
    if (max_abs == 0.0) {
        return 0.0;  // zero a.e., exact
    }

    std::vector<double> scaled(values.size());
    const auto modular_at = [&](double k) {
        for (std::size_t i = 0; i < values.size(); ++i) {
            scaled[i] = values[i] / k;
        }
        return modular(phi, scaled, weights).value;
    };

    // Bracket: grow hi until the modular drops to <= 1, shrink lo until it
    // exceeds 1. Both terminate on finite carriers with nonzero f.
    double hi = max_abs * std::max(1.0, total_mass);
    while (modular_at(hi) > 1.0) {
        hi *= 2.0;
    }
    double lo = hi;
    while (modular_at(lo) <= 1.0 && lo > max_abs * 1e-300) {
        lo *= 0.5;
    }

    while (hi - lo > tol * hi) {
        const double mid = 0.5 * (lo + hi);
        if (modular_at(mid) <= 1.0) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return hi;  // modular_at(hi) <= 1 is maintained throughout
}

bool orlicz_class_member(const OrliczFunction& phi, std::span<const double> values,
                         std::span<const double> weights) {
    return modular(phi, values, weights).finite();
}

Delta2Report delta2_check(const OrliczFunction& phi, double u_lo, double u_hi,
                          std::size_t samples) {
    if (!(u_lo > 0.0) || u_lo >= u_hi) {
        throw DegenerateRange("delta2_check: need 0 < u_lo < u_hi");
    }
    if (samples < 2) {
        throw ValidationError("delta2_check: need at least 2 samples");
    }

    Delta2Report report;
    const double log_lo = std::log(u_lo);
    const double log_hi = std::log(u_hi);
    std::size_t argmax = 0;
    for (std::size_t i = 0; i < samples; ++i) {
        const double u = std::exp(log_lo + (log_hi - log_lo) * static_cast<double>(i) /
                                               static_cast<double>(samples - 1));
        const double ratio = phi(2.0 * u) / phi(u);
        report.u_samples.push_back(u);
        report.ratio_samples.push_back(ratio);
        if (ratio >= report.max_ratio || i == 0) {
            report.max_ratio = ratio;
            report.witness_u = u;
            argmax = i;
        }
    }

    switch (phi.family()) {
        case OrliczFamily::Power:
        case OrliczFamily::PowerLog:
            report.satisfied_on_sample = true;
            report.analytic_override = true;
            break;
        case OrliczFamily::ExpMinus:
            report.satisfied_on_sample = false;
            report.analytic_override = true;
            break;
        case OrliczFamily::Custom: {
            // Heuristic: a maximum attained at the right endpoint with the
            // ratio still climbing there reads as unbounded growth.
            const bool climbing_at_end =
                argmax + 1 == samples &&
                report.ratio_samples[samples - 1] > report.ratio_samples[samples - 2] * (1.0 + 1e-9);
            report.satisfied_on_sample = std::isfinite(report.max_ratio) && !climbing_at_end;
            break;
        }
    }
    return report;
}

}  // namespace oplab
