#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "oplab/errors.hpp"

namespace oplab {

enum class OrliczFamily { Power, PowerLog, ExpMinus, Custom };

// An Orlicz (N-)function: even, convex, continuous, vanishing only at zero,
// with phi(t)/t -> 0 at 0 and -> infinity at infinity. Builtin families are
// exact formulas; Custom evaluators are vetted by sampling at construction,
// which is a semi-decision, not a proof.
class OrliczFunction {
public:
    static OrliczFunction power(double p, std::string label = {});
    static OrliczFunction power_log(double p, std::string label = {});
    static OrliczFunction exp_minus(std::string label = {});
    static OrliczFunction custom(std::function<double(double)> eval, bool declared_convex,
                                 std::string label = "custom", int check_depth = 20);

    // phi(|t|); evenness is enforced by evaluating at |t| only.
    double operator()(double t) const;

    OrliczFamily family() const { return family_; }
    double exponent() const { return p_; }
    const std::string& label() const { return label_; }

private:
    OrliczFunction() = default;

    OrliczFamily family_ = OrliczFamily::Power;
    double p_ = 2.0;
    std::function<double(double)> eval_;
    std::string label_;
};

// Extended nonnegative real: the value of int phi(|f|) dmu, possibly +inf.
struct Modular {
    double value = 0.0;

    bool finite() const;
};

// Weighted point samples shared by both carrier models: atomic spaces supply
// (value at atom, atom weight) pairs, grid domains supply (value at cell
// center, cell volume) pairs.
Modular modular(const OrliczFunction& phi, std::span<const double> values,
                std::span<const double> weights);

// inf{k > 0 : modular(phi, f/k) <= 1}, by bisection on the monotone map
// k |-> modular(f/k). Returns exact 0 for f = 0 a.e.
double luxemburg_norm(const OrliczFunction& phi, std::span<const double> values,
                      std::span<const double> weights, double tol = 1e-12);

// Finite modular at alpha = 1. Always true for finite-valued f on finite
// carriers; kept to document the Orlicz class vs Orlicz space distinction.
bool orlicz_class_member(const OrliczFunction& phi, std::span<const double> values,
                         std::span<const double> weights);

struct Delta2Report {
    bool satisfied_on_sample = false;
    double max_ratio = 0.0;
    double witness_u = 0.0;
    // r(u) = phi(2u)/phi(u) along the geometric grid, left to right.
    std::vector<double> ratio_samples;
    std::vector<double> u_samples;
    // True when the verdict comes from the family formula rather than the
    // sample heuristic (Power/PowerLog satisfy, ExpMinus does not).
    bool analytic_override = false;
};

// Samples r(u) = phi(2u)/phi(u) on a geometric grid in [u_lo, u_hi]. The
// left endpoint u_lo plays the role of the threshold u0 in the Delta_2
// definition. For Custom functions the verdict is sample-based only.
Delta2Report delta2_check(const OrliczFunction& phi, double u_lo, double u_hi,
                          std::size_t samples);

}  // namespace oplab
