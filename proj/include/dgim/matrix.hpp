#pragma once

#include "dgim/poly.hpp"

#include <cassert>
#include <vector>

namespace dgim {

// Small dense integer matrices (incidence matrices, transfer-power matrices).
struct IMat {
    std::vector<std::vector<Int>> a;

    IMat() = default;
    IMat(size_t rows, size_t cols) : a(rows, std::vector<Int>(cols, Int(0))) {}

    size_t rows() const { return a.size(); }
    size_t cols() const { return a.empty() ? 0 : a[0].size(); }
    std::vector<Int>& operator[](size_t i) { return a[i]; }
    const std::vector<Int>& operator[](size_t i) const { return a[i]; }
    bool operator==(const IMat& o) const { return a == o.a; }

    static IMat identity(size_t n) {
        IMat m(n, n);
        for (size_t i = 0; i < n; ++i) m[i][i] = 1;
        return m;
    }

    IMat operator*(const IMat& o) const {
        assert(cols() == o.rows());
        IMat r(rows(), o.cols());
        for (size_t i = 0; i < rows(); ++i)
            for (size_t k = 0; k < cols(); ++k) {
                if (a[i][k] == 0) continue;
                for (size_t j = 0; j < o.cols(); ++j) r[i][j] += a[i][k] * o[k][j];
            }
        return r;
    }

    IMat pow(unsigned e) const {
        IMat r = identity(rows()), b = *this;
        while (e) {
            if (e & 1) r = r * b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }

    IMat transpose() const {
        IMat r(cols(), rows());
        for (size_t i = 0; i < rows(); ++i)
            for (size_t j = 0; j < cols(); ++j) r[j][i] = a[i][j];
        return r;
    }

    bool is_zero() const {
        for (const auto& row : a)
            for (const Int& v : row)
                if (v != 0) return false;
        return true;
    }
};

inline std::vector<Int> row_times_mat(const std::vector<Int>& v, const IMat& m) {
    assert(v.size() == m.rows());
    std::vector<Int> r(m.cols(), Int(0));
    for (size_t i = 0; i < v.size(); ++i) {
        if (v[i] == 0) continue;
        for (size_t j = 0; j < m.cols(); ++j) r[j] += v[i] * m[i][j];
    }
    return r;
}

// Characteristic polynomial det(tI - A) by Faddeev-LeVerrier; exact, monic.
inline IntPoly charpoly(const IMat& A) {
    size_t n = A.rows();
    assert(n == A.cols());
    std::vector<Rat> coef(n + 1, Rat(0));
    coef[n] = 1;
    // M_0 = I, c_k = -tr(A M_{k-1})/k, M_k = A M_{k-1} + c_k I
    std::vector<std::vector<Rat>> M(n, std::vector<Rat>(n, Rat(0)));
    for (size_t i = 0; i < n; ++i) M[i][i] = 1;
    for (size_t k = 1; k <= n; ++k) {
        std::vector<std::vector<Rat>> AM(n, std::vector<Rat>(n, Rat(0)));
        for (size_t i = 0; i < n; ++i)
            for (size_t l = 0; l < n; ++l) {
                if (A[i][l] == 0) continue;
                Rat f(A[i][l]);
                for (size_t j = 0; j < n; ++j) AM[i][j] += f * M[l][j];
            }
        Rat tr(0);
        for (size_t i = 0; i < n; ++i) tr += AM[i][i];
        Rat ck = -tr / Rat(static_cast<long>(k));
        coef[n - k] = ck;
        for (size_t i = 0; i < n; ++i) AM[i][i] += ck;
        M = std::move(AM);
    }
    std::vector<Int> out(n + 1);
    for (size_t i = 0; i <= n; ++i) {
        assert(coef[i].get_den() == 1);
        out[i] = coef[i].get_num();
    }
    return IntPoly(std::move(out));
}

// Evaluate an integer polynomial at a matrix (Cayley-Hamilton checks).
inline IMat eval_poly_at(const IntPoly& p, const IMat& A) {
    size_t n = A.rows();
    IMat r(n, n);
    for (int i = p.degree(); i >= 0; --i) {
        r = r * A;
        for (size_t d = 0; d < n; ++d) r[d][d] += p.coeff(i);
    }
    return r;
}

}  // namespace dgim
