#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace ascan {

using cxd = std::complex<double>;
using CVec = std::vector<cxd>;

// Dense row-major complex matrix. Everything this project touches is <= 64
// on a side, so there is no sparse or blocked path.
class CMat {
public:
    CMat() = default;
    CMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

    static CMat identity(std::size_t n) {
        CMat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return a_.size(); }

    cxd& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    const cxd& operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

    cxd* data() { return a_.data(); }
    const cxd* data() const { return a_.data(); }
    cxd* row(std::size_t r) { return a_.data() + r * cols_; }
    const cxd* row(std::size_t r) const { return a_.data() + r * cols_; }

    bool finite() const {
        for (const cxd& z : a_)
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
        return true;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<cxd> a_;
};

inline bool finite(const CVec& v) {
    for (const cxd& z : v)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

inline CMat hermitian(const CMat& m) {
    CMat h(m.cols(), m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) h(c, r) = std::conj(m(r, c));
    return h;
}

inline CMat matmul(const CMat& a, const CMat& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matmul: dimension mismatch");
    CMat out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const cxd aik = a(i, k);
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
        }
    return out;
}

inline CVec matvec(const CMat& a, const CVec& x) {
    if (a.cols() != x.size()) throw std::invalid_argument("matvec: dimension mismatch");
    CVec y(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        cxd acc = 0.0;
        const cxd* row = a.row(i);
        for (std::size_t k = 0; k < x.size(); ++k) acc += row[k] * x[k];
        y[i] = acc;
    }
    return y;
}

// Left Kronecker product: entry q*len(u)+p carries u[p]*v[q]. This index
// convention is what lets a chain of per-factor phase vectors reassemble a
// full steering vector (the factors advance in stride order).
inline CVec kron_left(const CVec& u, const CVec& v) {
    if (u.empty() || v.empty()) throw std::invalid_argument("kron_left: empty operand");
    CVec out(u.size() * v.size());
    for (std::size_t q = 0; q < v.size(); ++q)
        for (std::size_t p = 0; p < u.size(); ++p) out[q * u.size() + p] = u[p] * v[q];
    return out;
}

inline CMat from_rows(const std::vector<CVec>& rows) {
    if (rows.empty()) throw std::invalid_argument("from_rows: no rows");
    CMat m(rows.size(), rows[0].size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != m.cols()) throw std::invalid_argument("from_rows: ragged rows");
        for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = rows[r][c];
    }
    return m;
}

// Row Gram matrix G[i][j] = sum_k rows_i[k] * conj(rows_j[k]).
inline CMat row_gram(const CMat& m) {
    CMat g(m.rows(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.rows(); ++j) {
            cxd acc = 0.0;
            for (std::size_t k = 0; k < m.cols(); ++k) acc += m(i, k) * std::conj(m(j, k));
            g(i, j) = acc;
        }
    return g;
}

inline cxd dot_unconj(const CVec& a, const CVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
    cxd acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

inline cxd dot_conj(const CVec& a, const CVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
    cxd acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
    return acc;
}

inline double max_abs(const CVec& v) {
    double m = 0.0;
    for (const cxd& z : v) m = std::max(m, std::abs(z));
    return m;
}

}  // namespace ascan
