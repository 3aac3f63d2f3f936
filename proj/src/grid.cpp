#include "oplab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "oplab/errors.hpp"

namespace oplab {

GridDomain::GridDomain(int n, std::array<double, 2> lo, std::array<double, 2> hi,
                       std::array<std::size_t, 2> cells)
    : n_(n), lo_(lo), hi_(hi), m_(cells) {
    if (n != 1 && n != 2) {
        throw ValidationError("grid dimension must be 1 or 2");
    }
    for (int axis = 0; axis < n_; ++axis) {
        if (!(lo_[axis] < hi_[axis])) {
            throw ValidationError("grid bounds must satisfy lo < hi");
        }
        if (m_[axis] < 4) {
            throw ValidationError("grid needs at least 4 cells per axis");
        }
    }
    if (n_ == 1) {
        lo_[1] = 0.0;
        hi_[1] = 1.0;
        m_[1] = 1;
    }
}

GridDomain GridDomain::line(double lo, double hi, std::size_t cells) {
    return GridDomain(1, {lo, 0.0}, {hi, 1.0}, {cells, 1});
}

GridDomain GridDomain::box(std::array<double, 2> lo, std::array<double, 2> hi,
                           std::array<std::size_t, 2> cells) {
    return GridDomain(2, lo, hi, cells);
}

double GridDomain::max_spacing() const {
    double h = spacing(0);
    if (n_ == 2) {
        h = std::max(h, spacing(1));
    }
    return h;
}

double GridDomain::cell_volume() const {
    double v = spacing(0);
    if (n_ == 2) {
        v *= spacing(1);
    }
    return v;
}

std::size_t GridDomain::cell_count() const {
    return m_[0] * m_[1];
}

std::array<double, 2> GridDomain::center(std::size_t cell) const {
    const std::size_t ix = cell % m_[0];
    const std::size_t iy = cell / m_[0];
    std::array<double, 2> c{lo_[0] + (static_cast<double>(ix) + 0.5) * spacing(0), 0.0};
    if (n_ == 2) {
        c[1] = lo_[1] + (static_cast<double>(iy) + 0.5) * spacing(1);
    }
    return c;
}

GridFunction sample(const GridDomain& domain,
                    const std::function<double(std::array<double, 2>)>& f) {
    GridFunction g;
    g.samples.resize(domain.cell_count());
    for (std::size_t cell = 0; cell < g.samples.size(); ++cell) {
        g.samples[cell] = f(domain.center(cell));
    }
    return g;
}

std::array<double, 2> AffineMap::apply(std::array<double, 2> x) const {
    std::array<double, 2> y{0.0, 0.0};
    for (int k = 0; k < n; ++k) {
        y[k] = b[k];
        for (int i = 0; i < n; ++i) {
            y[k] += A[k][i] * x[i];
        }
    }
    return y;
}

double AffineMap::entry_bound() const {
    double m = 0.0;
    for (int k = 0; k < n; ++k) {
        for (int i = 0; i < n; ++i) {
            m = std::max(m, std::abs(A[k][i]));
        }
    }
    return m;
}

double AffineMap::det() const {
    if (n == 1) {
        return A[0][0];
    }
    return A[0][0] * A[1][1] - A[0][1] * A[1][0];
}

AffineMap AffineMap::inverse() const {
    const double d = det();
    if (std::abs(d) < 1e-14) {
        throw SingularMatrix("affine map is singular (|det| < 1e-14)");
    }
    AffineMap inv;
    inv.n = n;
    if (n == 1) {
        inv.A[0][0] = 1.0 / d;
        inv.b[0] = -b[0] / d;
    } else {
        inv.A[0][0] = A[1][1] / d;
        inv.A[0][1] = -A[0][1] / d;
        inv.A[1][0] = -A[1][0] / d;
        inv.A[1][1] = A[0][0] / d;
        inv.b[0] = -(inv.A[0][0] * b[0] + inv.A[0][1] * b[1]);
        inv.b[1] = -(inv.A[1][0] * b[0] + inv.A[1][1] * b[1]);
    }
    return inv;
}

AffineMap AffineMap::after(const AffineMap& s) const {
    AffineMap c;
    c.n = n;
    c.b = apply(s.b);
    for (int k = 0; k < n; ++k) {
        for (int i = 0; i < n; ++i) {
            c.A[k][i] = 0.0;
            for (int j = 0; j < n; ++j) {
                c.A[k][i] += A[k][j] * s.A[j][i];
            }
        }
    }
    return c;
}

bool AffineMap::is_self_map(const GridDomain& domain, double tol) const {
    const int corners = 1 << domain.dim();
    for (int mask = 0; mask < corners; ++mask) {
        std::array<double, 2> corner{0.0, 0.0};
        for (int axis = 0; axis < domain.dim(); ++axis) {
            corner[axis] = (mask >> axis) & 1 ? domain.hi(axis) : domain.lo(axis);
        }
        const auto image = apply(corner);
        for (int axis = 0; axis < domain.dim(); ++axis) {
            if (image[axis] < domain.lo(axis) - tol || image[axis] > domain.hi(axis) + tol) {
                return false;
            }
        }
    }
    return true;
}

namespace {

// Second-order one-sided difference at the boundary, central elsewhere.
double difference_1d(const std::vector<double>& line, std::size_t j, double h) {
    const std::size_t m = line.size();
    if (j == 0) {
        return (-3.0 * line[0] + 4.0 * line[1] - line[2]) / (2.0 * h);
    }
    if (j + 1 == m) {
        return (3.0 * line[m - 1] - 4.0 * line[m - 2] + line[m - 3]) / (2.0 * h);
    }
    return (line[j + 1] - line[j - 1]) / (2.0 * h);
}

// Interpolates cell-center samples at an arbitrary point. Points in the
// half-cell collar beyond the outermost centers extrapolate linearly from
// the nearest stencil (exact on affine data).
double interpolate(const GridFunction& f, const GridDomain& domain, std::array<double, 2> p) {
    std::array<std::size_t, 2> i0{0, 0};
    std::array<double, 2> frac{0.0, 0.0};
    for (int axis = 0; axis < domain.dim(); ++axis) {
        const double h = domain.spacing(axis);
        const double u = (p[axis] - domain.lo(axis)) / h - 0.5;
        const double base = std::floor(u);
        double lo_cell = base;
        const double last = static_cast<double>(domain.cells(axis)) - 2.0;
        lo_cell = std::clamp(lo_cell, 0.0, last);
        i0[axis] = static_cast<std::size_t>(lo_cell);
        frac[axis] = u - lo_cell;
    }
    if (domain.dim() == 1) {
        const double a = f.samples[domain.index(i0[0])];
        const double b = f.samples[domain.index(i0[0] + 1)];
        return a + frac[0] * (b - a);
    }
    const double f00 = f.samples[domain.index(i0[0], i0[1])];
    const double f10 = f.samples[domain.index(i0[0] + 1, i0[1])];
    const double f01 = f.samples[domain.index(i0[0], i0[1] + 1)];
    const double f11 = f.samples[domain.index(i0[0] + 1, i0[1] + 1)];
    const double fx0 = f00 + frac[0] * (f10 - f00);
    const double fx1 = f01 + frac[0] * (f11 - f01);
    return fx0 + frac[1] * (fx1 - fx0);
}

void require_matching(const GridFunction& f, const GridDomain& domain, const char* op) {
    if (f.samples.size() != domain.cell_count()) {
        throw CarrierMismatch(std::string(op) + ": sample count does not match the grid");
    }
}

}  // namespace

GridFunction weak_derivative(const GridFunction& f, const GridDomain& domain, int axis) {
    require_matching(f, domain, "weak_derivative");
    if (axis < 0 || axis >= domain.dim()) {
        throw ValidationError("weak_derivative: axis out of range");
    }
    const double h = domain.spacing(axis);
    GridFunction d;
    d.samples.resize(domain.cell_count());

    const std::size_t mx = domain.cells(0);
    const std::size_t my = domain.dim() == 2 ? domain.cells(1) : 1;
    if (axis == 0) {
        std::vector<double> line(mx);
        for (std::size_t iy = 0; iy < my; ++iy) {
            for (std::size_t ix = 0; ix < mx; ++ix) {
                line[ix] = f.samples[domain.index(ix, iy)];
            }
            for (std::size_t ix = 0; ix < mx; ++ix) {
                d.samples[domain.index(ix, iy)] = difference_1d(line, ix, h);
            }
        }
    } else {
        std::vector<double> line(my);
        for (std::size_t ix = 0; ix < mx; ++ix) {
            for (std::size_t iy = 0; iy < my; ++iy) {
                line[iy] = f.samples[domain.index(ix, iy)];
            }
            for (std::size_t iy = 0; iy < my; ++iy) {
                d.samples[domain.index(ix, iy)] = difference_1d(line, iy, h);
            }
        }
    }
    return d;
}

double grid_luxemburg_norm(const OrliczFunction& phi, const GridFunction& f,
                           const GridDomain& domain, double tol) {
    require_matching(f, domain, "grid_luxemburg_norm");
    const std::vector<double> weights(domain.cell_count(), domain.cell_volume());
    return luxemburg_norm(phi, f.samples, weights, tol);
}

double sobolev_norm(const OrliczFunction& phi, const GridFunction& f, const GridDomain& domain,
                    double tol) {
    double norm = grid_luxemburg_norm(phi, f, domain, tol);
    for (int axis = 0; axis < domain.dim(); ++axis) {
        norm += grid_luxemburg_norm(phi, weak_derivative(f, domain, axis), domain, tol);
    }
    return norm;
}

GridFunction compose(const GridFunction& f, const AffineMap& T, const GridDomain& domain) {
    require_matching(f, domain, "compose");
    if (T.n != domain.dim()) {
        throw CarrierMismatch("compose: map dimension does not match the grid");
    }
    if (!T.is_self_map(domain)) {
        throw MapEscapesDomain("compose: T does not map the box into its closure");
    }
    GridFunction g;
    g.samples.resize(domain.cell_count());
    for (std::size_t cell = 0; cell < g.samples.size(); ++cell) {
        const auto p = T.apply(domain.center(cell));
        for (int axis = 0; axis < domain.dim(); ++axis) {
            if (p[axis] < domain.lo(axis) - 1e-12 || p[axis] > domain.hi(axis) + 1e-12) {
                throw MapEscapesDomain("compose: mapped cell center leaves the domain");
            }
        }
        g.samples[cell] = interpolate(f, domain, p);
    }
    return g;
}

std::vector<bool> compose_clamped_cells(const AffineMap& T, const GridDomain& domain) {
    std::vector<bool> clamped(domain.cell_count(), false);
    for (std::size_t cell = 0; cell < clamped.size(); ++cell) {
        const auto p = T.apply(domain.center(cell));
        for (int axis = 0; axis < domain.dim(); ++axis) {
            const double h = domain.spacing(axis);
            const double first = domain.lo(axis) + 0.5 * h;
            const double last = domain.hi(axis) - 0.5 * h;
            if (p[axis] < first || p[axis] > last) {
                clamped[cell] = true;
            }
        }
    }
    return clamped;
}

GridFunction affine_rn_derivative(const AffineMap& T, const GridDomain& domain) {
    if (T.n != domain.dim()) {
        throw CarrierMismatch("affine_rn_derivative: map dimension mismatch");
    }
    const AffineMap inv = T.inverse();
    const double density = 1.0 / std::abs(T.det());
    GridFunction f;
    f.samples.resize(domain.cell_count());
    for (std::size_t cell = 0; cell < f.samples.size(); ++cell) {
        const auto y = inv.apply(domain.center(cell));
        bool inside = true;
        for (int axis = 0; axis < domain.dim(); ++axis) {
            if (y[axis] < domain.lo(axis) - 1e-12 || y[axis] > domain.hi(axis) + 1e-12) {
                inside = false;
            }
        }
        f.samples[cell] = inside ? density : 0.0;
    }
    return f;
}

ChainRuleReport verify_chain_rule(const GridFunction& f, const AffineMap& T,
                                  const GridDomain& domain) {
    require_matching(f, domain, "verify_chain_rule");
    const GridFunction composed = compose(f, T, domain);
    const std::vector<bool> clamped = compose_clamped_cells(T, domain);

    std::vector<GridFunction> df_composed;
    for (int axis = 0; axis < domain.dim(); ++axis) {
        df_composed.push_back(compose(weak_derivative(f, domain, axis), T, domain));
    }

    const std::size_t mx = domain.cells(0);
    const std::size_t my = domain.dim() == 2 ? domain.cells(1) : 1;
    const auto stencil_clean = [&](std::size_t ix, std::size_t iy, int axis) {
        // Central stencil along `axis` must not touch a clamped cell.
        for (int off = -1; off <= 1; ++off) {
            const std::size_t jx = axis == 0 ? ix + static_cast<std::size_t>(off) : ix;
            const std::size_t jy = axis == 1 ? iy + static_cast<std::size_t>(off) : iy;
            if (clamped[domain.index(jx, jy)]) {
                return false;
            }
        }
        return true;
    };

    ChainRuleReport report;
    report.grid_h = domain.max_spacing();
    for (int axis = 0; axis < domain.dim(); ++axis) {
        const GridFunction lhs = weak_derivative(composed, domain, axis);
        for (std::size_t iy = (domain.dim() == 2 ? 1 : 0); iy + (domain.dim() == 2 ? 1 : 0) < my;
             ++iy) {
            for (std::size_t ix = 1; ix + 1 < mx; ++ix) {
                if (!stencil_clean(ix, iy, axis)) {
                    continue;
                }
                const std::size_t cell = domain.index(ix, iy);
                double rhs = 0.0;
                for (int k = 0; k < domain.dim(); ++k) {
                    rhs += df_composed[static_cast<std::size_t>(k)].samples[cell] * T.A[k][axis];
                }
                report.max_abs_residual =
                    std::max(report.max_abs_residual, std::abs(lhs.samples[cell] - rhs));
            }
        }
    }
    return report;
}

BoundReport verify_boundedness(const OrliczFunction& phi, const GridFunction& f,
                               const AffineMap& T, const GridDomain& domain, double tol) {
    BoundReport report;
    const GridFunction rn = affine_rn_derivative(T, domain);
    report.rn_sup = *std::max_element(rn.samples.begin(), rn.samples.end());
    report.entry_bound = T.entry_bound();
    report.lhs = sobolev_norm(phi, compose(f, T, domain), domain, tol);
    report.rhs = report.rn_sup * (1.0 + domain.dim() * report.entry_bound) *
                 sobolev_norm(phi, f, domain, tol);
    report.slack = domain.max_spacing();
    report.holds = report.lhs <= report.rhs * (1.0 + 1e-6) + report.slack;
    return report;
}

VanishingReport verify_kernel_derivative_vanishing(const GridFunction& f,
                                                   const std::vector<bool>& omega0_mask,
                                                   const GridDomain& domain) {
    require_matching(f, domain, "verify_kernel_derivative_vanishing");
    if (omega0_mask.size() != domain.cell_count()) {
        throw CarrierMismatch("verify_kernel_derivative_vanishing: mask size mismatch");
    }
    for (std::size_t cell = 0; cell < omega0_mask.size(); ++cell) {
        if (!omega0_mask[cell] && f.samples[cell] != 0.0) {
            throw PreconditionViolated("function is nonzero outside the mask");
        }
    }

    const std::size_t mx = domain.cells(0);
    const std::size_t my = domain.dim() == 2 ? domain.cells(1) : 1;
    // 1-cell band around the mask (Chebyshev distance 1).
    std::vector<bool> band(omega0_mask.size(), false);
    for (std::size_t iy = 0; iy < my; ++iy) {
        for (std::size_t ix = 0; ix < mx; ++ix) {
            if (omega0_mask[domain.index(ix, iy)]) {
                continue;
            }
            for (std::ptrdiff_t dy = -1; dy <= 1; ++dy) {
                for (std::ptrdiff_t dx = -1; dx <= 1; ++dx) {
                    const std::ptrdiff_t jx = static_cast<std::ptrdiff_t>(ix) + dx;
                    const std::ptrdiff_t jy = static_cast<std::ptrdiff_t>(iy) + dy;
                    if (jx < 0 || jy < 0 || jx >= static_cast<std::ptrdiff_t>(mx) ||
                        jy >= static_cast<std::ptrdiff_t>(my)) {
                        continue;
                    }
                    if (omega0_mask[domain.index(static_cast<std::size_t>(jx),
                                                 static_cast<std::size_t>(jy))]) {
                        band[domain.index(ix, iy)] = true;
                    }
                }
            }
        }
    }

    VanishingReport report;
    for (int axis = 0; axis < domain.dim(); ++axis) {
        const GridFunction d = weak_derivative(f, domain, axis);
        for (std::size_t cell = 0; cell < d.samples.size(); ++cell) {
            if (omega0_mask[cell]) {
                continue;
            }
            const double v = std::abs(d.samples[cell]);
            if (band[cell]) {
                report.max_in_band = std::max(report.max_in_band, v);
            } else {
                report.max_outside = std::max(report.max_outside, v);
            }
        }
    }
    return report;
}

}  // namespace oplab
