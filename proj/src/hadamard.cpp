#include "ascan/hadamard.hpp"

#include <cstdint>
#include <stdexcept>

namespace ascan {

namespace {

bool prime_power(std::size_t q, std::size_t& p, std::size_t& k) {
    if (q < 2) return false;
    for (std::size_t d = 2; d * d <= q; ++d) {
        if (q % d) continue;
        std::size_t m = q, e = 0;
        while (m % d == 0) {
            m /= d;
            ++e;
        }
        if (m != 1) return false;
        p = d;
        k = e;
        return true;
    }
    p = q;
    k = 1;
    return true;
}

// GF(p^k) with elements encoded as base-p digit strings packed into an
// integer in [0, p^k). Only tiny fields show up here (q <= 63, k <= 3).
class SmallField {
public:
    SmallField(std::size_t p, std::size_t k) : p_(p), k_(k) {
        q_ = 1;
        for (std::size_t i = 0; i < k; ++i) q_ *= p;
        if (k_ > 1) find_irreducible();
        build_square_table();
    }

    std::size_t size() const { return q_; }

    std::size_t sub(std::size_t a, std::size_t b) const {
        std::size_t out = 0, mul = 1;
        for (std::size_t i = 0; i < k_; ++i) {
            const std::size_t da = a % p_, db = b % p_;
            out += ((da + p_ - db) % p_) * mul;
            a /= p_;
            b /= p_;
            mul *= p_;
        }
        return out;
    }

    // Quadratic character: +1 for nonzero squares, -1 for non-squares, 0 at 0.
    int chi(std::size_t z) const {
        if (z == 0) return 0;
        return is_square_[z] ? 1 : -1;
    }

private:
    std::vector<std::size_t> to_poly(std::size_t a) const {
        std::vector<std::size_t> c(k_);
        for (std::size_t i = 0; i < k_; ++i) {
            c[i] = a % p_;
            a /= p_;
        }
        return c;
    }

    std::size_t from_poly(const std::vector<std::size_t>& c) const {
        std::size_t a = 0, mul = 1;
        for (std::size_t i = 0; i < k_; ++i) {
            a += (c[i] % p_) * mul;
            mul *= p_;
        }
        return a;
    }

    std::size_t mul(std::size_t a, std::size_t b) const {
        if (k_ == 1) return (a * b) % p_;
        const auto ca = to_poly(a), cb = to_poly(b);
        std::vector<std::size_t> prod(2 * k_ - 1, 0);
        for (std::size_t i = 0; i < k_; ++i)
            for (std::size_t j = 0; j < k_; ++j) prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % p_;
        // Reduce modulo the monic irreducible: x^k = -(lower terms).
        for (std::size_t d = 2 * k_ - 2; d >= k_; --d) {
            const std::size_t coef = prod[d];
            if (coef) {
                for (std::size_t i = 0; i < k_; ++i) {
                    const std::size_t red = (coef * (p_ - irred_[i])) % p_;
                    prod[d - k_ + i] = (prod[d - k_ + i] + red) % p_;
                }
                prod[d] = 0;
            }
            if (d == k_) break;
        }
        prod.resize(k_);
        return from_poly(prod);
    }

    void find_irreducible() {
        // Monic degree-k polynomial with no roots in GF(p); for k <= 3 that
        // is equivalent to irreducibility.
        if (k_ > 3) throw std::invalid_argument("hadamard: field degree beyond construction set");
        std::size_t count = 1;
        for (std::size_t i = 0; i < k_; ++i) count *= p_;
        for (std::size_t c = 0; c < count; ++c) {
            irred_ = to_poly(c);
            bool has_root = false;
            for (std::size_t x = 0; x < p_ && !has_root; ++x) {
                std::size_t val = 1;  // monic leading term x^k
                for (std::size_t i = 0; i < k_; ++i) val = (val * x) % p_;
                std::size_t xi = 1;
                for (std::size_t i = 0; i < k_; ++i) {
                    val = (val + irred_[i] * xi) % p_;
                    xi = (xi * x) % p_;
                }
                if (val == 0) has_root = true;
            }
            if (!has_root) return;
        }
        throw std::logic_error("hadamard: no irreducible polynomial found");
    }

    void build_square_table() {
        is_square_.assign(q_, false);
        for (std::size_t z = 1; z < q_; ++z) is_square_[mul(z, z)] = true;
    }

    std::size_t p_, k_, q_;
    std::vector<std::size_t> irred_;  // low-order coefficients of the monic irreducible
    std::vector<bool> is_square_;
};

bool paley_order(std::size_t n) {
    if (n < 4 || n % 4 != 0) return false;
    std::size_t p = 0, k = 0;
    return prime_power(n - 1, p, k) && (n - 1) % 4 == 3 && k <= 3;
}

std::vector<int> paley_matrix(std::size_t n) {
    const std::size_t q = n - 1;
    std::size_t p = 0, k = 0;
    prime_power(q, p, k);
    SmallField f(p, k);

    // H = I + S with S = [[0, 1^T], [-1, Q]] and Q the Jacobsthal matrix
    // Q[a][b] = chi(a - b); rows are orthogonal when q = 3 (mod 4).
    std::vector<int> h(n * n, 0);
    for (std::size_t j = 1; j < n; ++j) h[j] = 1;
    for (std::size_t i = 1; i < n; ++i) h[i * n] = -1;
    for (std::size_t i = 1; i < n; ++i)
        for (std::size_t j = 1; j < n; ++j) h[i * n + j] = f.chi(f.sub(i - 1, j - 1));
    for (std::size_t i = 0; i < n; ++i) h[i * n + i] += 1;
    return h;
}

std::vector<int> doubled(const std::vector<int>& hm, std::size_t m) {
    // H_{2m} = H_2 (x) H_m keeps the all-one first row.
    const std::size_t n = 2 * m;
    std::vector<int> h(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const int sign = (i >= m && j >= m) ? -1 : 1;
            h[i * n + j] = sign * hm[(i % m) * m + (j % m)];
        }
    return h;
}

bool is_pow2(std::size_t n) { return n && (n & (n - 1)) == 0; }

}  // namespace

bool hadamard_supported(std::size_t n) {
    if (n == 1 || n == 2) return true;
    if (n % 4 != 0) return false;
    if (is_pow2(n)) return true;
    if (paley_order(n)) return true;
    return n % 2 == 0 && hadamard_supported(n / 2);
}

std::vector<int> hadamard_matrix(std::size_t n) {
    if (n == 1) return {1};
    if (n == 2) return {1, 1, 1, -1};
    if (n % 4 != 0)
        throw std::invalid_argument("no Hadamard construction: order must be 2 or a multiple of 4");
    if (is_pow2(n) || (n % 2 == 0 && hadamard_supported(n / 2) && !paley_order(n)))
        return doubled(hadamard_matrix(n / 2), n / 2);
    if (paley_order(n)) return paley_matrix(n);
    if (n % 2 == 0 && hadamard_supported(n / 2)) return doubled(hadamard_matrix(n / 2), n / 2);
    throw std::invalid_argument("no Hadamard construction for this order");
}

}  // namespace ascan
