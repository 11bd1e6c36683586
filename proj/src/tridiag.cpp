#include "ratchet/tridiag.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace ratchet {

namespace {

void check_shape(const TridiagonalSystem& sys) {
    const auto n = sys.diag.size();
    if (n < 2 || sys.sub.size() != n - 1 || sys.super.size() != n - 1 || sys.rhs.size() != n)
        throw std::invalid_argument("tridiagonal system: inconsistent lengths");
}

}  // namespace

std::vector<int> non_diagonally_dominant_rows(const TridiagonalSystem& sys) {
    check_shape(sys);
    std::vector<int> rows;
    const int n = sys.size();
    for (int i = 0; i < n; ++i) {
        double off = 0.0;
        if (i > 0) off += std::abs(sys.sub[static_cast<std::size_t>(i - 1)]);
        if (i < n - 1) off += std::abs(sys.super[static_cast<std::size_t>(i)]);
        if (std::abs(sys.diag[static_cast<std::size_t>(i)]) < off * (1.0 - 1e-14)) rows.push_back(i);
    }
    return rows;
}

std::vector<double> solve_tridiagonal(const TridiagonalSystem& sys) {
    check_shape(sys);
    TridiagonalFactor factor(sys);
    std::vector<double> x = sys.rhs;
    factor.solve_in_place(x);
    return x;
}

TridiagonalFactor::TridiagonalFactor(const TridiagonalSystem& sys) {
    check_shape(sys);
    const std::size_t n = sys.diag.size();
    pivot_ = sys.diag;
    upper_ = sys.super;
    lower_.assign(n - 1, 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (pivot_[i] == 0.0 || std::abs(pivot_[i]) < 1e-300)
            throw std::runtime_error("tridiagonal factorization degenerated at row " +
                                     std::to_string(i));
        lower_[i] = sys.sub[i] / pivot_[i];
        pivot_[i + 1] -= lower_[i] * upper_[i];
    }
    if (std::abs(pivot_[n - 1]) < 1e-300)
        throw std::runtime_error("tridiagonal factorization degenerated at the last row");
}

void TridiagonalFactor::solve_in_place(std::vector<double>& rhs) const {
    const std::size_t n = pivot_.size();
    if (rhs.size() != n) throw std::invalid_argument("tridiagonal solve: rhs length mismatch");
    for (std::size_t i = 0; i + 1 < n; ++i) rhs[i + 1] -= lower_[i] * rhs[i];
    rhs[n - 1] /= pivot_[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) rhs[i] = (rhs[i] - upper_[i] * rhs[i + 1]) / pivot_[i];
}

}  // namespace ratchet
