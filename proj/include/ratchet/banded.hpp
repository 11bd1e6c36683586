#pragma once

#include <array>
#include <vector>

namespace ratchet {

/// Pentadiagonal matrix (bandwidth 2), the shape the coupled two-density
/// systems take once p and P unknowns are interleaved per node.
/// band[d] holds the diagonal at offset d-2, so band[2][i] = A(i,i),
/// band[4][i] = A(i,i+2); entries outside the matrix are kept at zero.
struct PentaMatrix {
    int n = 0;
    std::array<std::vector<double>, 5> band;

    explicit PentaMatrix(int size);
    double& at(int row, int col);            // |row-col| <= 2 required
    double get(int row, int col) const;
    std::vector<double> multiply(const std::vector<double>& x) const;
};

/// LU factorization of a pentadiagonal matrix without pivoting, reusable for
/// many right-hand sides (implicit time stepping).
class PentaFactor {
public:
    explicit PentaFactor(const PentaMatrix& A);

    void solve_in_place(std::vector<double>& rhs) const;

private:
    int n_;
    std::vector<double> l1_, l2_;        // multipliers at offsets -1, -2
    std::vector<double> u0_, u1_, u2_;   // eliminated upper band
};

/// Solves the bordered system in which the last row of A is replaced by a
/// dense row (the normalization constraint of the stationary problem).  The
/// banded part is eliminated without pivoting while the dense row accumulates
/// the corresponding updates, which keeps the cost linear in n.
std::vector<double> solve_penta_bordered(const PentaMatrix& A,
                                         const std::vector<double>& dense_last_row,
                                         const std::vector<double>& rhs);

}  // namespace ratchet
