#include "ascan/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ascan {

namespace {

// One-sided Jacobi on the columns of a tall matrix: rotate column pairs until
// all are mutually orthogonal, then the singular values are the column norms.
std::vector<double> jacobi_column_svd(CMat w) {
    const std::size_t m = w.rows(), n = w.cols();
    const double eps = 1e-15;
    const int max_sweeps = 64;

    std::vector<double> sq(n);  // squared column norms, kept current
    for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < m; ++i) s += std::norm(w(i, j));
        sq[j] = s;
    }

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                cxd b = 0.0;
                for (std::size_t i = 0; i < m; ++i) b += std::conj(w(i, p)) * w(i, q);
                const double app = sq[p], aqq = sq[q];
                const double abs_b = std::abs(b);
                if (abs_b <= eps * std::sqrt(app * aqq) || abs_b == 0.0) continue;
                rotated = true;

                // De-phase so the 2x2 Gram block is real, then a classical
                // real Jacobi rotation annihilates the off-diagonal.
                const cxd phase = b / abs_b;
                const double zeta = (aqq - app) / (2.0 * abs_b);
                const double t = (zeta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;

                for (std::size_t i = 0; i < m; ++i) {
                    const cxd up = w(i, p);
                    const cxd vq = std::conj(phase) * w(i, q);
                    w(i, p) = c * up - s * vq;
                    w(i, q) = s * up + c * vq;
                }
                sq[p] = 0.0;
                sq[q] = 0.0;
                for (std::size_t i = 0; i < m; ++i) {
                    sq[p] += std::norm(w(i, p));
                    sq[q] += std::norm(w(i, q));
                }
            }
        }
        if (!rotated) break;
    }

    std::vector<double> sv(n);
    for (std::size_t j = 0; j < n; ++j) sv[j] = std::sqrt(sq[j]);
    std::sort(sv.begin(), sv.end(), std::greater<double>());
    return sv;
}

}  // namespace

std::vector<double> singular_values(const CMat& m) {
    if (m.rows() == 0 || m.cols() == 0) throw std::invalid_argument("singular_values: empty matrix");
    if (!m.finite()) throw std::invalid_argument("singular_values: non-finite entries");
    // Work on the tall orientation; singular values are shared with the adjoint.
    return m.rows() >= m.cols() ? jacobi_column_svd(m) : jacobi_column_svd(hermitian(m));
}

SpectralMetrics spectral_metrics(const CMat& m, double tol) {
    if (!(tol > 0.0 && tol < 1.0)) throw std::invalid_argument("spectral_metrics: tol must be in (0,1)");
    const std::vector<double> sv = singular_values(m);
    SpectralMetrics out;
    out.sigma_max = sv.front();
    out.sigma_min = sv.back();
    out.numeric_rank = 0;
    for (double s : sv)
        if (s > tol * out.sigma_max) ++out.numeric_rank;
    out.condition_number = out.sigma_min > 0.0
                               ? out.sigma_max / out.sigma_min
                               : std::numeric_limits<double>::infinity();
    return out;
}

std::vector<double> hermitian_eigenvalues(const CMat& g) {
    if (g.rows() != g.cols() || g.rows() == 0)
        throw std::invalid_argument("hermitian_eigenvalues: square matrix required");
    CMat a = g;
    const std::size_t n = a.rows();
    const double eps = 1e-15;
    const int max_sweeps = 64;

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0, diag = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            diag += std::abs(a(i, i));
            for (std::size_t j = i + 1; j < n; ++j) off += std::abs(a(i, j));
        }
        if (off <= eps * (diag + off)) break;

        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cxd apq = a(p, q);
                const double abs_apq = std::abs(apq);
                const double app = a(p, p).real(), aqq = a(q, q).real();
                if (abs_apq <= eps * (std::abs(app) + std::abs(aqq)) || abs_apq == 0.0) continue;

                const cxd phase = apq / abs_apq;
                const double zeta = (aqq - app) / (2.0 * abs_apq);
                const double t = (zeta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;

                // A <- J^H A J with J = [[c, s*phase], [-s*conj(phase), c]]
                // on the (p, q) plane; this zeroes the (p, q) entry.
                for (std::size_t i = 0; i < n; ++i) {
                    const cxd aip = a(i, p);
                    const cxd aiq = a(i, q);
                    a(i, p) = c * aip - s * std::conj(phase) * aiq;
                    a(i, q) = s * phase * aip + c * aiq;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const cxd api = a(p, i);
                    const cxd aqi = a(q, i);
                    a(p, i) = c * api - s * phase * aqi;
                    a(q, i) = s * std::conj(phase) * api + c * aqi;
                }
            }
        }
    }

    std::vector<double> ev(n);
    for (std::size_t i = 0; i < n; ++i) ev[i] = a(i, i).real();
    std::sort(ev.begin(), ev.end(), std::greater<double>());
    return ev;
}

SpectralMetrics metrics_from_row_gram(const CMat& gram, double tol) {
    if (!(tol > 0.0 && tol < 1.0)) throw std::invalid_argument("metrics_from_row_gram: tol in (0,1)");
    std::vector<double> ev = hermitian_eigenvalues(gram);
    SpectralMetrics out;
    out.sigma_max = std::sqrt(std::max(ev.front(), 0.0));
    out.sigma_min = std::sqrt(std::max(ev.back(), 0.0));
    out.numeric_rank = 0;
    for (double l : ev)
        if (std::sqrt(std::max(l, 0.0)) > tol * out.sigma_max) ++out.numeric_rank;
    out.condition_number = out.sigma_min > 0.0
                               ? out.sigma_max / out.sigma_min
                               : std::numeric_limits<double>::infinity();
    return out;
}

CMat zf_pseudo_inverse(const CMat& h) {
    const std::size_t m = h.rows(), n = h.cols();
    if (m < n) throw std::invalid_argument("zf_pseudo_inverse: needs rows >= cols");

    // Normal equations A = H^H H (n x n), rhs B = H^H (n x m); solve A W = B.
    CMat hh = hermitian(h);
    CMat a = matmul(hh, h);
    CMat b = hh;

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        double best = std::abs(a(col, col));
        for (std::size_t r = col + 1; r < n; ++r) {
            const double v = std::abs(a(r, col));
            if (v > best) {
                best = v;
                piv = r;
            }
        }
        if (best == 0.0) throw std::invalid_argument("zf_pseudo_inverse: singular normal equations");
        if (piv != col) {
            for (std::size_t c = 0; c < n; ++c) std::swap(a(col, c), a(piv, c));
            for (std::size_t c = 0; c < m; ++c) std::swap(b(col, c), b(piv, c));
        }
        const cxd inv_p = 1.0 / a(col, col);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const cxd f = a(r, col) * inv_p;
            if (f == 0.0) continue;
            for (std::size_t c = col; c < n; ++c) a(r, c) -= f * a(col, c);
            for (std::size_t c = 0; c < m; ++c) b(r, c) -= f * b(col, c);
        }
        for (std::size_t c = col; c < n; ++c) a(col, c) *= inv_p;
        for (std::size_t c = 0; c < m; ++c) b(col, c) *= inv_p;
    }
    return b;
}

CMat orthonormal_columns(const CMat& cols, double tol) {
    const std::size_t m = cols.rows(), n = cols.cols();
    std::vector<CVec> q;
    for (std::size_t j = 0; j < n; ++j) {
        CVec v(m);
        for (std::size_t i = 0; i < m; ++i) v[i] = cols(i, j);
        double norm0 = 0.0;
        for (const cxd& z : v) norm0 += std::norm(z);
        norm0 = std::sqrt(norm0);
        for (int pass = 0; pass < 2; ++pass) {
            for (const CVec& u : q) {
                cxd proj = 0.0;
                for (std::size_t i = 0; i < m; ++i) proj += std::conj(u[i]) * v[i];
                for (std::size_t i = 0; i < m; ++i) v[i] -= proj * u[i];
            }
        }
        double norm = 0.0;
        for (const cxd& z : v) norm += std::norm(z);
        norm = std::sqrt(norm);
        if (norm <= tol * std::max(norm0, 1.0)) continue;  // dependent column
        for (cxd& z : v) z /= norm;
        q.push_back(std::move(v));
    }
    CMat out(m, q.size());
    for (std::size_t j = 0; j < q.size(); ++j)
        for (std::size_t i = 0; i < m; ++i) out(i, j) = q[j][i];
    return out;
}

CMat complement_projector(const CMat& cols) {
    const CMat q = orthonormal_columns(cols);
    CMat p = CMat::identity(cols.rows());
    for (std::size_t i = 0; i < p.rows(); ++i)
        for (std::size_t j = 0; j < p.cols(); ++j) {
            cxd acc = 0.0;
            for (std::size_t k = 0; k < q.cols(); ++k) acc += q(i, k) * std::conj(q(j, k));
            p(i, j) -= acc;
        }
    return p;
}

}  // namespace ascan
