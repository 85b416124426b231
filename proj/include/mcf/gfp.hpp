#pragma once

#include "mcf/caps.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace mcf {

// Dense matrix over GF(p), entries stored as residues in [0, p). Vectors are
// rows acting on the right, so a module element v maps to v * M.
struct GFpMatrix {
    int p = 2;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<int> a;  // row-major

    GFpMatrix() = default;
    GFpMatrix(int p, std::size_t rows, std::size_t cols);
    static GFpMatrix identity(int p, std::size_t n);

    int& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    int at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    GFpMatrix mul(const GFpMatrix& rhs) const;
    GFpMatrix add(const GFpMatrix& rhs) const;
    GFpMatrix sub(const GFpMatrix& rhs) const;
    GFpMatrix scaled(int c) const;
    GFpMatrix pow(std::uint64_t k) const;
    GFpMatrix transpose() const;
    bool is_zero() const;
    bool is_identity() const;

    friend bool operator==(const GFpMatrix& x, const GFpMatrix& y) {
        return x.p == y.p && x.rows == y.rows && x.cols == y.cols &&
               x.a == y.a;
    }
};

// Kronecker product with pair index (i, j) -> i * B.rows + j on rows and
// likewise on columns, matching the tensor basis order used by repsl2.
GFpMatrix gfp_kron(const GFpMatrix& A, const GFpMatrix& B);

std::size_t gfp_rank(GFpMatrix m);

// Basis of the left kernel {v : v * M = 0}, one row per basis vector.
GFpMatrix gfp_kernel(const GFpMatrix& m);

// Rows of `top` stacked over rows of `bottom` (same column count).
GFpMatrix gfp_stack(const GFpMatrix& top, const GFpMatrix& bottom);

int inv_mod(int a, int p);
int pow_mod(int a, std::uint64_t k, int p);

// A generator of the multiplicative group of GF(p).
int primitive_root(int p);

// Binomial coefficient mod a prime, by Lucas' theorem.
int binom_mod_p(std::uint64_t n, std::uint64_t k, int p);

} // namespace mcf
