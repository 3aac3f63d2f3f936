#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <vector>

#include "oplab/orlicz.hpp"

namespace oplab {

// Rectangular box in R^n (n = 1 or 2) split into axis-aligned cells.
// Lebesgue measure is approximated by cell volumes; functions live as
// samples at cell centers.
class GridDomain {
public:
    GridDomain(int n, std::array<double, 2> lo, std::array<double, 2> hi,
               std::array<std::size_t, 2> cells);

    static GridDomain line(double lo, double hi, std::size_t cells);
    static GridDomain box(std::array<double, 2> lo, std::array<double, 2> hi,
                          std::array<std::size_t, 2> cells);

    int dim() const { return n_; }
    double lo(int axis) const { return lo_[axis]; }
    double hi(int axis) const { return hi_[axis]; }
    std::size_t cells(int axis) const { return m_[axis]; }
    double spacing(int axis) const { return (hi_[axis] - lo_[axis]) / static_cast<double>(m_[axis]); }
    double max_spacing() const;
    double cell_volume() const;
    std::size_t cell_count() const;

    // Row-major, axis 0 fastest.
    std::size_t index(std::size_t ix, std::size_t iy = 0) const { return iy * m_[0] + ix; }
    std::array<double, 2> center(std::size_t cell) const;

private:
    int n_;
    std::array<double, 2> lo_;
    std::array<double, 2> hi_;
    std::array<std::size_t, 2> m_;
};

struct GridFunction {
    std::vector<double> samples;
};

GridFunction sample(const GridDomain& domain,
                    const std::function<double(std::array<double, 2>)>& f);

// x |-> A x + b with A recorded entrywise; the Jacobian entries are the
// constants dT_k/dx_i = A[k][i].
struct AffineMap {
    int n = 1;
    std::array<std::array<double, 2>, 2> A{{{1.0, 0.0}, {0.0, 1.0}}};
    std::array<double, 2> b{0.0, 0.0};

    std::array<double, 2> apply(std::array<double, 2> x) const;
    // max_{k,i} |A[k][i]|, the M of the derivative bound.
    double entry_bound() const;
    double det() const;
    AffineMap inverse() const;          // throws SingularMatrix below 1e-14
    AffineMap after(const AffineMap& s) const;  // this . s

    // T(Omega) inside closure(Omega), decided on the box corners.
    bool is_self_map(const GridDomain& domain, double tol = 1e-12) const;
};

// Finite-difference stand-in for the weak derivative: central differences at
// interior cells, second-order one-sided differences at boundary cells.
GridFunction weak_derivative(const GridFunction& f, const GridDomain& domain, int axis);

// Luxemburg norm over the grid carrier (cell-volume weights).
double grid_luxemburg_norm(const OrliczFunction& phi, const GridFunction& f,
                           const GridDomain& domain, double tol = 1e-12);

// ||f||_phi + sum_i ||df/dx_i||_phi.
double sobolev_norm(const OrliczFunction& phi, const GridFunction& f, const GridDomain& domain,
                    double tol = 1e-12);

// Samples f(T(center)) by multilinear interpolation of cell-center samples;
// points in the half-cell boundary collar clamp to the nearest stencil.
// Throws MapEscapesDomain if a mapped point leaves closure(Omega) by more
// than 1e-12.
GridFunction compose(const GridFunction& f, const AffineMap& T, const GridDomain& domain);

// Cells whose mapped point fell outside the valid interpolation range on
// some axis (the clamped collar). Differencing across these cells mixes
// extrapolated samples, so verifiers exclude their neighborhoods.
std::vector<bool> compose_clamped_cells(const AffineMap& T, const GridDomain& domain);

// f_T = |det A|^{-1} on T(Omega), 0 elsewhere, for Lebesgue measure and
// invertible affine T; membership tested through T^{-1}.
GridFunction affine_rn_derivative(const AffineMap& T, const GridDomain& domain);

struct ChainRuleReport {
    double max_abs_residual = 0.0;
    double grid_h = 0.0;
};

// Residual of d_i(f.T) = sum_k (d_k f).T * A[k][i], maximized over interior
// cells (away from the clamped collar) and axes.
ChainRuleReport verify_chain_rule(const GridFunction& f, const AffineMap& T,
                                  const GridDomain& domain);

struct BoundReport {
    double lhs = 0.0;
    double rhs = 0.0;
    double rn_sup = 0.0;       // ||f_T||_inf over samples
    double entry_bound = 0.0;  // M
    double slack = 0.0;        // discretization slack (one grid spacing)
    bool holds = false;
};

// ||C_T f||_{1,phi} <= ||f_T||_inf (1 + n M) ||f||_{1,phi}, with one grid
// spacing of slack for quadrature error.
BoundReport verify_boundedness(const OrliczFunction& phi, const GridFunction& f,
                               const AffineMap& T, const GridDomain& domain, double tol = 1e-12);

struct VanishingReport {
    double max_outside = 0.0;
    double max_in_band = 0.0;
    int boundary_band_width = 1;
};

// For f supported on the mask, checks that weak-derivative samples vanish
// outside the mask and its 1-cell band. Throws PreconditionViolated if f is
// nonzero outside the mask.
VanishingReport verify_kernel_derivative_vanishing(const GridFunction& f,
                                                   const std::vector<bool>& omega0_mask,
                                                   const GridDomain& domain);

}  // namespace oplab
