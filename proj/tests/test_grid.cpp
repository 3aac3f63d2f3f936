#include <doctest.h>

#include <cmath>
#include <random>

#include "oplab/errors.hpp"
#include "oplab/grid.hpp"

using namespace oplab;

namespace {

AffineMap reflection_1d() {
    AffineMap t;
    t.n = 1;
    t.A[0][0] = -1.0;
    t.b[0] = 1.0;
    return t;
}

AffineMap contraction_1d() {
    AffineMap t;
    t.n = 1;
    t.A[0][0] = 0.5;
    return t;
}

AffineMap swap_2d() {
    AffineMap t;
    t.n = 2;
    t.A = {{{0.0, 1.0}, {1.0, 0.0}}};
    return t;
}

double max_abs_diff(const GridFunction& f, const GridFunction& g) {
    double m = 0.0;
    for (std::size_t i = 0; i < f.samples.size(); ++i) {
        m = std::max(m, std::abs(f.samples[i] - g.samples[i]));
    }
    return m;
}

}  // namespace

TEST_CASE("weak derivative exactness on low-degree polynomials") {
    const auto domain = GridDomain::line(0.0, 1.0, 64);

    const auto linear = sample(domain, [](std::array<double, 2> p) { return p[0]; });
    const auto d_linear = weak_derivative(linear, domain, 0);
    for (double v : d_linear.samples) {
        CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
    }

    const auto constant = sample(domain, [](std::array<double, 2>) { return 4.0; });
    for (double v : weak_derivative(constant, domain, 0).samples) {
        CHECK(std::abs(v) <= 1e-12);
    }

    // Central and one-sided second-order stencils are exact on quadratics.
    const auto quad = sample(domain, [](std::array<double, 2> p) { return p[0] * p[0]; });
    const auto d_quad = weak_derivative(quad, domain, 0);
    for (std::size_t i = 0; i < d_quad.samples.size(); ++i) {
        const double x = domain.center(i)[0];
        CHECK(d_quad.samples[i] == doctest::Approx(2.0 * x).epsilon(1e-11));
    }
}

TEST_CASE("weak derivative along both axes in 2d") {
    const auto domain = GridDomain::box({0.0, 0.0}, {1.0, 1.0}, {32, 32});
    const auto f = sample(domain, [](std::array<double, 2> p) { return p[0] * p[1]; });
    const auto dx = weak_derivative(f, domain, 0);
    const auto dy = weak_derivative(f, domain, 1);
    for (std::size_t cell = 0; cell < f.samples.size(); ++cell) {
        const auto c = domain.center(cell);
        CHECK(dx.samples[cell] == doctest::Approx(c[1]).epsilon(1e-11));
        CHECK(dy.samples[cell] == doctest::Approx(c[0]).epsilon(1e-11));
    }
}

TEST_CASE("sobolev norm values") {
    const auto phi = OrliczFunction::power(2.0);
    const auto domain = GridDomain::line(0.0, 1.0, 256);

    const auto zero = sample(domain, [](std::array<double, 2>) { return 0.0; });
    CHECK(sobolev_norm(phi, zero, domain) == 0.0);

    // constant c on measure-V domain: c V^{1/p} + 0
    const auto constant = sample(domain, [](std::array<double, 2>) { return 3.0; });
    CHECK(sobolev_norm(phi, constant, domain) == doctest::Approx(3.0).epsilon(1e-10));

    // f(x) = x: ||x||_2 + ||1||_2 = sqrt(1/3) + 1, up to O(h^2) quadrature
    const auto linear = sample(domain, [](std::array<double, 2> p) { return p[0]; });
    CHECK(sobolev_norm(phi, linear, domain) ==
          doctest::Approx(std::sqrt(1.0 / 3.0) + 1.0).epsilon(1e-5));
}

TEST_CASE("compose examples") {
    const auto domain = GridDomain::line(0.0, 1.0, 64);
    const auto f = sample(domain, [](std::array<double, 2> p) { return p[0]; });

    AffineMap identity;
    identity.n = 1;
    CHECK(max_abs_diff(compose(f, identity, domain), f) == 0.0);

    const auto reflected = compose(f, reflection_1d(), domain);
    for (std::size_t i = 0; i < reflected.samples.size(); ++i) {
        CHECK(reflected.samples[i] ==
              doctest::Approx(1.0 - domain.center(i)[0]).epsilon(1e-12));
    }

    const auto quad = sample(domain, [](std::array<double, 2> p) { return p[0] * p[0]; });
    const auto contracted = compose(quad, contraction_1d(), domain);
    const double h = domain.spacing(0);
    for (std::size_t i = 0; i < contracted.samples.size(); ++i) {
        const double x = domain.center(i)[0];
        CHECK(std::abs(contracted.samples[i] - x * x / 4.0) <= h * h);
    }

    AffineMap escape;
    escape.n = 1;
    escape.b[0] = 0.5;
    CHECK_THROWS_AS(compose(f, escape, domain), MapEscapesDomain);
}

TEST_CASE("affine rn derivative") {
    const auto domain = GridDomain::line(0.0, 1.0, 64);

    AffineMap identity;
    identity.n = 1;
    for (double v : affine_rn_derivative(identity, domain).samples) {
        CHECK(v == 1.0);
    }

    const auto f_half = affine_rn_derivative(contraction_1d(), domain);
    for (std::size_t i = 0; i < f_half.samples.size(); ++i) {
        const double x = domain.center(i)[0];
        CHECK(f_half.samples[i] == (x < 0.5 ? 2.0 : 0.0));
    }

    for (double v : affine_rn_derivative(reflection_1d(), domain).samples) {
        CHECK(v == 1.0);
    }

    AffineMap singular;
    singular.n = 1;
    singular.A[0][0] = 0.0;
    CHECK_THROWS_AS(affine_rn_derivative(singular, domain), SingularMatrix);
}

TEST_CASE("chain rule residuals") {
    // Affine data: residual at rounding level.
    {
        const auto domain = GridDomain::line(0.0, 1.0, 64);
        const auto f = sample(domain, [](std::array<double, 2> p) { return 2.0 * p[0] + 1.0; });
        CHECK(verify_chain_rule(f, reflection_1d(), domain).max_abs_residual <= 1e-10);
        CHECK(verify_chain_rule(f, contraction_1d(), domain).max_abs_residual <= 1e-10);
    }

    // Swap in 2d on a product function: all stencils exact.
    {
        const auto domain = GridDomain::box({0.0, 0.0}, {1.0, 1.0}, {32, 32});
        const auto f = sample(domain, [](std::array<double, 2> p) { return p[0] * p[1]; });
        CHECK(verify_chain_rule(f, swap_2d(), domain).max_abs_residual <= 1e-10);
    }

    // Cubic under contraction: genuine O(h^2) convergence, slope >= 1.9.
    {
        double prev = 0.0;
        std::vector<double> residuals;
        for (std::size_t m : {32, 64, 128}) {
            const auto domain = GridDomain::line(0.0, 1.0, m);
            const auto f =
                sample(domain, [](std::array<double, 2> p) { return p[0] * p[0] * p[0]; });
            residuals.push_back(verify_chain_rule(f, contraction_1d(), domain).max_abs_residual);
        }
        for (std::size_t i = 1; i < residuals.size(); ++i) {
            CHECK(residuals[i] > 0.0);
            const double order = std::log2(residuals[i - 1] / residuals[i]);
            CHECK(order >= 1.9);
        }
        prev = residuals[0];
        CHECK(prev < 1e-2);
    }
}

TEST_CASE("boundedness reports") {
    const auto phi = OrliczFunction::power(2.0);
    const auto domain = GridDomain::line(0.0, 1.0, 128);
    const auto f = sample(domain, [](std::array<double, 2> p) { return p[0]; });

    AffineMap identity;
    identity.n = 1;
    const auto id_report = verify_boundedness(phi, f, identity, domain);
    CHECK(id_report.holds);
    CHECK(id_report.rn_sup == 1.0);

    const auto contraction_report = verify_boundedness(phi, f, contraction_1d(), domain);
    CHECK(contraction_report.holds);
    CHECK(contraction_report.rn_sup == 2.0);
    // lhs ~ ||x/2||_2 + ||1/2||_2, rhs = 2 * 1.5 * (sqrt(1/3) + 1)
    CHECK(contraction_report.lhs ==
          doctest::Approx(0.5 * std::sqrt(1.0 / 3.0) + 0.5).epsilon(1e-2));
    CHECK(contraction_report.rhs ==
          doctest::Approx(3.0 * (std::sqrt(1.0 / 3.0) + 1.0)).epsilon(1e-4));

    const auto quad = sample(domain, [](std::array<double, 2> p) { return p[0] * p[0]; });
    CHECK(verify_boundedness(phi, quad, reflection_1d(), domain).holds);
}

TEST_CASE("kernel derivative vanishing") {
    const auto domain = GridDomain::line(0.0, 1.0, 64);
    const std::size_t m = domain.cells(0);

    std::vector<bool> left_half(m, false);
    for (std::size_t i = 0; i < m / 2; ++i) {
        left_half[i] = true;
    }

    // f == 0
    {
        const auto zero = sample(domain, [](std::array<double, 2>) { return 0.0; });
        CHECK(verify_kernel_derivative_vanishing(zero, left_half, domain).max_outside == 0.0);
    }

    // bump strictly inside the left half
    {
        const auto bump = sample(domain, [](std::array<double, 2> p) {
            const double s = (p[0] - 0.25) / 0.15;
            return std::abs(s) < 1.0 ? std::exp(-1.0 / (1.0 - s * s)) : 0.0;
        });
        CHECK(verify_kernel_derivative_vanishing(bump, left_half, domain).max_outside == 0.0);
    }

    // hat peaking at 0.25, vanishing at 0.5: nonzero only inside the band
    {
        const auto hat = sample(domain, [](std::array<double, 2> p) {
            return std::max(0.0, 1.0 - std::abs(p[0] - 0.25) / 0.25);
        });
        const auto report = verify_kernel_derivative_vanishing(hat, left_half, domain);
        CHECK(report.max_outside == 0.0);
        CHECK(report.max_in_band > 0.0);
    }

    // nonzero outside the mask is a precondition failure
    {
        const auto ones = sample(domain, [](std::array<double, 2>) { return 1.0; });
        CHECK_THROWS_AS(verify_kernel_derivative_vanishing(ones, left_half, domain),
                        PreconditionViolated);
    }
}

TEST_CASE("composition and norm invariance properties") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    const auto domain = GridDomain::line(0.0, 1.0, 64);

    // Interpolation/differencing exact on random affine data under affine maps.
    for (int trial = 0; trial < 10; ++trial) {
        const double a = coef(rng);
        const double b = coef(rng);
        const auto f = sample(domain, [&](std::array<double, 2> p) { return a * p[0] + b; });
        AffineMap t;
        t.n = 1;
        t.A[0][0] = 0.25 + 0.5 * std::abs(coef(rng));
        t.b[0] = 0.1 * std::abs(coef(rng));
        REQUIRE(t.is_self_map(domain));
        CHECK(verify_chain_rule(f, t, domain).max_abs_residual <= 1e-10);
    }

    // compose(compose(f,T),S) ~ compose(f, T.S)
    {
        const auto f = sample(domain, [](std::array<double, 2> p) {
            return std::sin(3.0 * p[0]);
        });
        const auto T = contraction_1d();
        auto S = reflection_1d();
        const auto two_step = compose(compose(f, T, domain), S, domain);
        const auto one_step = compose(f, T.after(S), domain);
        const double h = domain.spacing(0);
        CHECK(max_abs_diff(two_step, one_step) <= 20.0 * h * h);
    }

    // Measure-preserving reflection leaves the Luxemburg norm invariant up
    // to quadrature error.
    {
        const auto phi = OrliczFunction::power(3.0);
        const auto f = sample(domain, [](std::array<double, 2> p) {
            return std::cos(2.0 * p[0]) + 0.5;
        });
        const double direct = grid_luxemburg_norm(phi, f, domain);
        const double reflected = grid_luxemburg_norm(phi, compose(f, reflection_1d(), domain),
                                                     domain);
        CHECK(reflected == doctest::Approx(direct).epsilon(1e-6));
    }
}

TEST_CASE("domain validation") {
    CHECK_THROWS_AS(GridDomain::line(1.0, 0.0, 16), ValidationError);
    CHECK_THROWS_AS(GridDomain::line(0.0, 1.0, 3), ValidationError);
    CHECK_THROWS_AS(GridDomain(3, {0, 0}, {1, 1}, {8, 8}), ValidationError);
}
