#include "mcf/gfp.hpp"

#include <numeric>

namespace mcf {

namespace {

int norm(long long v, int p) {
    long long r = v % p;
    return static_cast<int>(r < 0 ? r + p : r);
}

} // namespace

GFpMatrix::GFpMatrix(int p_, std::size_t rows_, std::size_t cols_)
    : p(p_), rows(rows_), cols(cols_), a(rows_ * cols_, 0) {
    if (p_ < 2) throw InputError("matrix modulus must be at least 2");
}

GFpMatrix GFpMatrix::identity(int p, std::size_t n) {
    GFpMatrix m(p, n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

GFpMatrix GFpMatrix::mul(const GFpMatrix& rhs) const {
    if (p != rhs.p || cols != rhs.rows)
        throw InputError("matrix product shape/modulus mismatch");
    GFpMatrix out(p, rows, rhs.cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t k = 0; k < cols; ++k) {
            int v = at(i, k);
            if (v == 0) continue;
            for (std::size_t j = 0; j < rhs.cols; ++j)
                out.at(i, j) = norm(out.at(i, j) +
                                    static_cast<long long>(v) * rhs.at(k, j),
                                    p);
        }
    return out;
}

GFpMatrix GFpMatrix::add(const GFpMatrix& rhs) const {
    if (p != rhs.p || rows != rhs.rows || cols != rhs.cols)
        throw InputError("matrix sum shape/modulus mismatch");
    GFpMatrix out = *this;
    for (std::size_t i = 0; i < a.size(); ++i)
        out.a[i] = norm(out.a[i] + rhs.a[i], p);
    return out;
}

GFpMatrix GFpMatrix::sub(const GFpMatrix& rhs) const {
    return add(rhs.scaled(p - 1));
}

GFpMatrix GFpMatrix::scaled(int c) const {
    GFpMatrix out = *this;
    for (int& v : out.a) v = norm(static_cast<long long>(v) * c, p);
    return out;
}

GFpMatrix GFpMatrix::pow(std::uint64_t k) const {
    if (rows != cols) throw InputError("power of a non-square matrix");
    GFpMatrix acc = identity(p, rows);
    GFpMatrix base = *this;
    while (k) {
        if (k & 1) acc = acc.mul(base);
        k >>= 1;
        if (k) base = base.mul(base);
    }
    return acc;
}

GFpMatrix GFpMatrix::transpose() const {
    GFpMatrix out(p, cols, rows);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) out.at(j, i) = at(i, j);
    return out;
}

bool GFpMatrix::is_zero() const {
    for (int v : a)
        if (v != 0) return false;
    return true;
}

bool GFpMatrix::is_identity() const {
    if (rows != cols) return false;
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            if (at(i, j) != (i == j ? 1 : 0)) return false;
    return true;
}

GFpMatrix gfp_kron(const GFpMatrix& A, const GFpMatrix& B) {
    if (A.p != B.p) throw InputError("kron modulus mismatch");
    GFpMatrix out(A.p, A.rows * B.rows, A.cols * B.cols);
    for (std::size_t i = 0; i < A.rows; ++i)
        for (std::size_t j = 0; j < A.cols; ++j) {
            int v = A.at(i, j);
            if (v == 0) continue;
            for (std::size_t k = 0; k < B.rows; ++k)
                for (std::size_t l = 0; l < B.cols; ++l)
                    out.at(i * B.rows + k, j * B.cols + l) =
                        norm(static_cast<long long>(v) * B.at(k, l), A.p);
        }
    return out;
}

namespace {

// In-place row echelon; returns the pivot column of each eliminated row.
std::vector<std::size_t> echelon(GFpMatrix& m) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols && row < m.rows; ++col) {
        std::size_t piv = row;
        while (piv < m.rows && m.at(piv, col) == 0) ++piv;
        if (piv == m.rows) continue;
        for (std::size_t j = 0; j < m.cols; ++j)
            std::swap(m.at(row, j), m.at(piv, j));
        int inv = inv_mod(m.at(row, col), m.p);
        for (std::size_t j = col; j < m.cols; ++j)
            m.at(row, j) = norm(static_cast<long long>(m.at(row, j)) * inv,
                                m.p);
        for (std::size_t i = 0; i < m.rows; ++i) {
            if (i == row) continue;
            int f = m.at(i, col);
            if (f == 0) continue;
            for (std::size_t j = col; j < m.cols; ++j)
                m.at(i, j) = norm(m.at(i, j) -
                                  static_cast<long long>(f) * m.at(row, j),
                                  m.p);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

} // namespace

std::size_t gfp_rank(GFpMatrix m) { return echelon(m).size(); }

GFpMatrix gfp_kernel(const GFpMatrix& m) {
    // Left kernel of m = right kernel of m^T, found from the reduced row
    // echelon form of m^T by reading off the free columns.
    GFpMatrix t = m.transpose();
    std::vector<std::size_t> pivots = echelon(t);
    std::vector<bool> is_pivot(t.cols, false);
    for (std::size_t c : pivots) is_pivot[c] = true;
    GFpMatrix out(m.p, t.cols - pivots.size(), t.cols);
    std::size_t r = 0;
    for (std::size_t free = 0; free < t.cols; ++free) {
        if (is_pivot[free]) continue;
        out.at(r, free) = 1;
        for (std::size_t k = 0; k < pivots.size(); ++k)
            out.at(r, pivots[k]) = norm(-t.at(k, free), m.p);
        ++r;
    }
    return out;
}

GFpMatrix gfp_stack(const GFpMatrix& top, const GFpMatrix& bottom) {
    if (top.p != bottom.p || top.cols != bottom.cols)
        throw InputError("stack shape/modulus mismatch");
    GFpMatrix out(top.p, top.rows + bottom.rows, top.cols);
    std::copy(top.a.begin(), top.a.end(), out.a.begin());
    std::copy(bottom.a.begin(), bottom.a.end(),
              out.a.begin() + static_cast<std::ptrdiff_t>(top.a.size()));
    return out;
}

int inv_mod(int a, int p) {
    a = norm(a, p);
    if (a == 0) throw InputError("inverse of zero mod " + std::to_string(p));
    return pow_mod(a, static_cast<std::uint64_t>(p) - 2, p);
}

int pow_mod(int a, std::uint64_t k, int p) {
    long long acc = 1, base = norm(a, p);
    while (k) {
        if (k & 1) acc = acc * base % p;
        base = base * base % p;
        k >>= 1;
    }
    return static_cast<int>(acc);
}

int primitive_root(int p) {
    if (p == 2) return 1;
    std::vector<int> prime_factors;
    int m = p - 1;
    for (int q = 2; q * q <= m; ++q)
        while (m % q == 0) {
            if (prime_factors.empty() || prime_factors.back() != q)
                prime_factors.push_back(q);
            m /= q;
        }
    if (m > 1) prime_factors.push_back(m);
    for (int g = 2; g < p; ++g) {
        bool ok = true;
        for (int q : prime_factors)
            if (pow_mod(g, static_cast<std::uint64_t>((p - 1) / q), p) == 1) {
                ok = false;
                break;
            }
        if (ok) return g;
    }
    throw VerifyError("no primitive root mod " + std::to_string(p));
}

int binom_mod_p(std::uint64_t n, std::uint64_t k, int p) {
    if (k > n) return 0;
    long long result = 1;
    while (n || k) {
        std::uint64_t nd = n % static_cast<std::uint64_t>(p);
        std::uint64_t kd = k % static_cast<std::uint64_t>(p);
        if (kd > nd) return 0;
        // binom(nd, kd) for digits below p, multiplicatively.
        long long digit = 1;
        for (std::uint64_t i = 0; i < kd; ++i) {
            digit = digit * static_cast<long long>((nd - i) % p) % p;
            digit = digit * inv_mod(static_cast<int>(i + 1), p) % p;
        }
        result = result * digit % p;
        n /= static_cast<std::uint64_t>(p);
        k /= static_cast<std::uint64_t>(p);
    }
    return static_cast<int>(result);
}

} // namespace mcf
