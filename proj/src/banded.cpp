#include "ratchet/banded.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ratchet {

namespace {

void check_pivot(double pivot, int row) {
    if (!(std::abs(pivot) > 1e-300))
        throw std::runtime_error("banded factorization degenerated at row " + std::to_string(row));
}

}  // namespace

PentaMatrix::PentaMatrix(int size) : n(size) {
    if (size < 3) throw std::invalid_argument("penta matrix: size must be >= 3");
    for (auto& d : band) d.assign(static_cast<std::size_t>(size), 0.0);
}

double& PentaMatrix::at(int row, int col) {
    const int d = col - row + 2;
    if (d < 0 || d > 4 || row < 0 || row >= n || col < 0 || col >= n)
        throw std::out_of_range("penta matrix: entry outside bandwidth");
    return band[static_cast<std::size_t>(d)][static_cast<std::size_t>(row)];
}

double PentaMatrix::get(int row, int col) const {
    const int d = col - row + 2;
    if (d < 0 || d > 4 || col < 0 || col >= n) return 0.0;
    return band[static_cast<std::size_t>(d)][static_cast<std::size_t>(row)];
}

std::vector<double> PentaMatrix::multiply(const std::vector<double>& x) const {
    std::vector<double> y(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int d = 0; d < 5; ++d) {
            const int j = i + d - 2;
            if (j >= 0 && j < n) acc += band[static_cast<std::size_t>(d)][static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(j)];
        }
        y[static_cast<std::size_t>(i)] = acc;
    }
    return y;
}

PentaFactor::PentaFactor(const PentaMatrix& A) : n_(A.n) {
    const std::size_t n = static_cast<std::size_t>(n_);
    std::vector<double> b0 = A.band[0], b1 = A.band[1];
    u0_ = A.band[2];
    u1_ = A.band[3];
    u2_ = A.band[4];
    l1_.assign(n, 0.0);
    l2_.assign(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        check_pivot(u0_[j], static_cast<int>(j));
        if (j + 1 < n) {
            const double f = b1[j + 1] / u0_[j];
            l1_[j] = f;
            u0_[j + 1] -= f * u1_[j];
            u1_[j + 1] -= f * u2_[j];
        }
        if (j + 2 < n) {
            const double f = b0[j + 2] / u0_[j];
            l2_[j] = f;
            b1[j + 2] -= f * u1_[j];
            u0_[j + 2] -= f * u2_[j];
        }
    }
}

void PentaFactor::solve_in_place(std::vector<double>& rhs) const {
    const std::size_t n = static_cast<std::size_t>(n_);
    if (rhs.size() != n) throw std::invalid_argument("banded solve: rhs length mismatch");
    for (std::size_t j = 0; j < n; ++j) {
        if (j + 1 < n) rhs[j + 1] -= l1_[j] * rhs[j];
        if (j + 2 < n) rhs[j + 2] -= l2_[j] * rhs[j];
    }
    for (std::size_t j = n; j-- > 0;) {
        double v = rhs[j];
        if (j + 1 < n) v -= u1_[j] * rhs[j + 1];
        if (j + 2 < n) v -= u2_[j] * rhs[j + 2];
        rhs[j] = v / u0_[j];
    }
}

std::vector<double> solve_penta_bordered(const PentaMatrix& A,
                                         const std::vector<double>& dense_last_row,
                                         const std::vector<double>& rhs) {
    const int n = A.n;
    if (static_cast<int>(dense_last_row.size()) != n || static_cast<int>(rhs.size()) != n)
        throw std::invalid_argument("bordered solve: size mismatch");

    std::vector<double> b0 = A.band[0], b1 = A.band[1], b2 = A.band[2], b3 = A.band[3],
                        b4 = A.band[4];
    std::vector<double> dense = dense_last_row;
    std::vector<double> r = rhs;
    const std::size_t last = static_cast<std::size_t>(n - 1);

    // Forward elimination over the banded rows 0..n-2; the dense row receives
    // the same updates column by column.
    for (std::size_t j = 0; j + 1 < static_cast<std::size_t>(n); ++j) {
        check_pivot(b2[j], static_cast<int>(j));
        if (j + 1 < last) {
            const double f = b1[j + 1] / b2[j];
            b2[j + 1] -= f * b3[j];
            b3[j + 1] -= f * b4[j];
            r[j + 1] -= f * r[j];
        }
        if (j + 2 < last) {
            const double f = b0[j + 2] / b2[j];
            b1[j + 2] -= f * b3[j];
            b2[j + 2] -= f * b4[j];
            r[j + 2] -= f * r[j];
        }
        const double fd = dense[j] / b2[j];
        dense[j] = 0.0;
        if (j + 1 < static_cast<std::size_t>(n)) dense[j + 1] -= fd * b3[j];
        if (j + 2 < static_cast<std::size_t>(n)) dense[j + 2] -= fd * b4[j];
        r[last] -= fd * r[j];
    }

    check_pivot(dense[last], n - 1);
    std::vector<double> x(static_cast<std::size_t>(n), 0.0);
    x[last] = r[last] / dense[last];
    for (std::size_t j = last; j-- > 0;) {
        double v = r[j];
        if (j + 1 < static_cast<std::size_t>(n)) v -= b3[j] * x[j + 1];
        if (j + 2 < static_cast<std::size_t>(n)) v -= b4[j] * x[j + 2];
        x[j] = v / b2[j];
    }
    return x;
}

}  // namespace ratchet
