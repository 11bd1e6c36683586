#pragma once

#include <vector>

namespace ratchet {

/// Tridiagonal system A x = rhs.  sub/super have length n-1, diag/rhs length n.
struct TridiagonalSystem {
    std::vector<double> sub;
    std::vector<double> diag;
    std::vector<double> super;
    std::vector<double> rhs;

    int size() const { return static_cast<int>(diag.size()); }
};

/// Indices of rows that are not (weakly) diagonally dominant.  The solvers in
/// this project assemble M-matrices, so a non-empty result flags an assembly
/// bug; the check is diagnostic and not run on the hot path.
std::vector<int> non_diagonally_dominant_rows(const TridiagonalSystem& sys);

/// Thomas elimination without pivoting.  Throws std::runtime_error when a
/// pivot degenerates (cannot happen for the M-matrix systems assembled here).
std::vector<double> solve_tridiagonal(const TridiagonalSystem& sys);

/// Factorized tridiagonal operator for repeated solves with the same matrix.
class TridiagonalFactor {
public:
    explicit TridiagonalFactor(const TridiagonalSystem& sys);

    void solve_in_place(std::vector<double>& rhs) const;

private:
    std::vector<double> lower_;   // multipliers
    std::vector<double> pivot_;   // eliminated diagonal
    std::vector<double> upper_;   // unchanged super-diagonal
};

}  // namespace ratchet
