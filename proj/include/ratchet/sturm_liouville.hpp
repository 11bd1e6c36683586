#pragma once

#include "ratchet/grid.hpp"
#include "ratchet/tridiag.hpp"

namespace ratchet {

/// The operator  u  ->  phi*u - varsigma*u_xx  on phi's grid, with
/// homogeneous Neumann ends.  phi must be strictly positive.
struct SLOperator {
    GridFn phi;
    double varsigma = 1.0;

    const Grid& grid() const { return *phi.grid; }
};

SLOperator make_sl_operator(GridFn phi, double varsigma);

/// Finite-volume discretization of the operator (mirror-ghost Neumann
/// closure, trapezoid-consistent control volumes).  rhs may be empty.
TridiagonalSystem assemble_sl(const SLOperator& op, const std::vector<double>& rhs = {});

/// Solves  phi*u - varsigma*u_xx = rhs  with Neumann ends.  The discrete
/// residual is verified to 1e-12 relative; violation throws.
GridFn solve_sl_neumann(const SLOperator& op, const GridFn& rhs);

/// Green's function column G(., y) for the node index iy: the solve with a
/// discrete delta at that node (unit mass against the trapezoid weights).
/// The result is strictly positive and satisfies  integral(phi*G) = 1.
GridFn green_function(const SLOperator& op, int iy);

/// Same, for a position y that must coincide with a grid node (1e-12).
GridFn green_function_at(const SLOperator& op, double y);

}  // namespace ratchet
