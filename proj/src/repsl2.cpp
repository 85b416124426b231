#include "mcf/repsl2.hpp"

#include <algorithm>

namespace mcf {

namespace {

void check_prime(int p) {
    if (p < 2) throw InputError("not a prime: " + std::to_string(p));
    for (int q = 2; q * q <= p; ++q)
        if (p % q == 0) throw InputError("not a prime: " + std::to_string(p));
}

int norm(long long v, int p) {
    long long r = v % p;
    return static_cast<int>(r < 0 ? r + p : r);
}

void check_degree(int p, int d, const char* what) {
    if (d < 0 || d > p - 1)
        throw InputError(std::string(what) + " degree " + std::to_string(d) +
                         " outside [0, p-1] for p = " + std::to_string(p));
}

// Equivariance of a projection T : V_d (x) V_e -> V_m under unimodular C:
// (C_d kron C_e) T = T C_m.
void check_equivariant(int p, int d, int e, int m, const GFpMatrix& T) {
    struct Mat2 { int a, b, c, d; };
    int lam = primitive_root(p);
    for (Mat2 C : {Mat2{1, 1, 0, 1}, Mat2{lam, 0, 0, inv_mod(lam, p)}}) {
        GFpMatrix lhs = gfp_kron(ve_action(p, d, C.a, C.b, C.c, C.d),
                                 ve_action(p, e, C.a, C.b, C.c, C.d)).mul(T);
        GFpMatrix rhs = T.mul(ve_action(p, m, C.a, C.b, C.c, C.d));
        if (!(lhs == rhs))
            throw VerifyError("transvectant is not equivariant");
    }
}

} // namespace

GFpMatrix ve_action(int p, int e, int alpha, int beta, int gamma, int delta) {
    check_prime(p);
    check_degree(p, e, "module");
    alpha = norm(alpha, p);
    beta = norm(beta, p);
    gamma = norm(gamma, p);
    delta = norm(delta, p);
    if (norm(static_cast<long long>(alpha) * delta -
             static_cast<long long>(beta) * gamma, p) == 0)
        throw InputError("singular matrix does not act on the module");
    std::size_t n = static_cast<std::size_t>(e) + 1;
    GFpMatrix out(p, n, n);
    // Row i: (alpha x + beta y)^{e-i} (gamma x + delta y)^i, expanded by the
    // binomial theorem. Exponents stay below p, so the Lucas reduction of the
    // binomial coefficients is exact.
    for (int i = 0; i <= e; ++i) {
        int a = e - i, b = i;
        for (int s = 0; s <= a; ++s)
            for (int t = 0; t <= b; ++t) {
                long long coef = binom_mod_p(a, s, p);
                coef = coef * binom_mod_p(b, t, p) % p;
                coef = coef * pow_mod(alpha, static_cast<std::uint64_t>(s), p)
                       % p;
                coef = coef *
                       pow_mod(beta, static_cast<std::uint64_t>(a - s), p) % p;
                coef = coef * pow_mod(gamma, static_cast<std::uint64_t>(t), p)
                       % p;
                coef = coef *
                       pow_mod(delta, static_cast<std::uint64_t>(b - t), p) %
                       p;
                // Contributes to x^{s+t} y^{e-s-t}, i.e. column e - s - t.
                int col = e - s - t;
                out.at(static_cast<std::size_t>(i),
                       static_cast<std::size_t>(col)) =
                    norm(out.at(static_cast<std::size_t>(i),
                                static_cast<std::size_t>(col)) + coef, p);
            }
    }
    return out;
}

PolyModule build_Ve(int p, int e) {
    check_prime(p);
    check_degree(p, e, "module");
    PolyModule v;
    v.p = p;
    v.e = e;
    v.lambda = primitive_root(p);
    v.unipotent = ve_action(p, e, 1, 1, 0, 1);
    v.torus = ve_action(p, e, v.lambda, 0, 0, inv_mod(v.lambda, p));
    return v;
}

GFpMatrix omega_matrix(int p, int d, int e) {
    check_prime(p);
    check_degree(p, d, "left tensor factor");
    check_degree(p, e, "right tensor factor");
    if (d == 0 || e == 0)
        return GFpMatrix(p, static_cast<std::size_t>(d + 1) *
                                static_cast<std::size_t>(e + 1),
                         0);
    std::size_t out_cols =
        static_cast<std::size_t>(d) * static_cast<std::size_t>(e);
    GFpMatrix out(p, static_cast<std::size_t>(d + 1) *
                         static_cast<std::size_t>(e + 1),
                  out_cols);
    for (int i = 0; i <= d; ++i)
        for (int j = 0; j <= e; ++j) {
            // x^a y^b (x) x^c y^f with a = d - i, b = i, c = e - j, f = j.
            std::size_t row = static_cast<std::size_t>(i) *
                                  static_cast<std::size_t>(e + 1) +
                              static_cast<std::size_t>(j);
            int a = d - i, b = i, c = e - j, f = j;
            // d/dx (x) d/dy: a f x^{a-1} y^b (x) x^c y^{f-1}.
            if (a > 0 && f > 0) {
                std::size_t col = static_cast<std::size_t>(i) *
                                      static_cast<std::size_t>(e) +
                                  static_cast<std::size_t>(j - 1);
                out.at(row, col) = norm(out.at(row, col) +
                                        static_cast<long long>(a) * f, p);
            }
            // minus d/dy (x) d/dx: b c x^a y^{b-1} (x) x^{c-1} y^f.
            if (b > 0 && c > 0) {
                std::size_t col = static_cast<std::size_t>(i - 1) *
                                      static_cast<std::size_t>(e) +
                                  static_cast<std::size_t>(j);
                out.at(row, col) = norm(out.at(row, col) -
                                        static_cast<long long>(b) * c, p);
            }
        }
    return out;
}

GFpMatrix transvectant_matrix(int p, int d, int e, int r) {
    check_prime(p);
    check_degree(p, d, "left tensor factor");
    check_degree(p, e, "right tensor factor");
    if (r < 0 || r > std::min(d, e))
        throw InputError("transvectant order " + std::to_string(r) +
                         " exceeds min(" + std::to_string(d) + ", " +
                         std::to_string(e) + ")");
    GFpMatrix acc = GFpMatrix::identity(p, static_cast<std::size_t>(d + 1) *
                                               static_cast<std::size_t>(e + 1));
    for (int k = 0; k < r; ++k) acc = acc.mul(omega_matrix(p, d - k, e - k));
    // Multiplication map in bidegree (d - r, e - r): x^a y^b (x) x^c y^f
    // lands at y-degree b + f.
    int dd = d - r, ee = e - r;
    GFpMatrix mu(p, static_cast<std::size_t>(dd + 1) *
                        static_cast<std::size_t>(ee + 1),
                 static_cast<std::size_t>(dd + ee) + 1);
    for (int i = 0; i <= dd; ++i)
        for (int j = 0; j <= ee; ++j)
            mu.at(static_cast<std::size_t>(i) *
                      static_cast<std::size_t>(ee + 1) +
                  static_cast<std::size_t>(j),
                  static_cast<std::size_t>(i + j)) = 1;
    return acc.mul(mu);
}

std::vector<int> transvectant(int p, int d, int e, int r,
                              const std::vector<int>& tensor) {
    GFpMatrix T = transvectant_matrix(p, d, e, r);
    if (tensor.size() != T.rows)
        throw InputError("tensor has dimension " +
                         std::to_string(tensor.size()) + ", expected " +
                         std::to_string(T.rows));
    std::vector<int> out(T.cols, 0);
    for (std::size_t i = 0; i < T.rows; ++i) {
        if (tensor[i] % p == 0) continue;
        for (std::size_t j = 0; j < T.cols; ++j)
            out[j] = norm(out[j] +
                          static_cast<long long>(tensor[i]) * T.at(i, j), p);
    }
    return out;
}

GFpMatrix swap_matrix(int p, int d) {
    std::size_t n = static_cast<std::size_t>(d) + 1;
    GFpMatrix out(p, n * n, n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out.at(i * n + j, j * n + i) = 1;
    return out;
}

Decomposition clebsch_gordan_decompose(int p, int d, int e) {
    check_prime(p);
    if (e < 0 || d < e) throw InputError("require d >= e >= 0");
    if (d + e > p - 1)
        throw InputError("d + e = " + std::to_string(d + e) +
                         " exceeds p - 1; decomposition not guaranteed");
    std::size_t total = static_cast<std::size_t>(d + 1) *
                        static_cast<std::size_t>(e + 1);
    Decomposition out;
    GFpMatrix joint(p, total, 0);
    std::size_t dim_sum = 0;
    for (int r = 0; r <= e; ++r) {
        int m = d + e - 2 * r;
        GFpMatrix T = transvectant_matrix(p, d, e, r);
        check_equivariant(p, d, e, m, T);
        if (gfp_rank(T) != static_cast<std::size_t>(m) + 1)
            throw VerifyError("transvectant projection onto degree " +
                              std::to_string(m) + " is not surjective");
        dim_sum += static_cast<std::size_t>(m) + 1;
        // Concatenate columns to witness that the kernels meet trivially.
        GFpMatrix next(p, total, joint.cols + T.cols);
        for (std::size_t i = 0; i < total; ++i) {
            for (std::size_t j = 0; j < joint.cols; ++j)
                next.at(i, j) = joint.at(i, j);
            for (std::size_t j = 0; j < T.cols; ++j)
                next.at(i, joint.cols + j) = T.at(i, j);
        }
        joint = std::move(next);
        out.degrees.push_back(m);
        out.projections.push_back(std::move(T));
    }
    if (dim_sum != total)
        throw VerifyError("summand dimensions do not account for the tensor");
    if (gfp_rank(joint) != total)
        throw VerifyError("projections share a common kernel vector");
    return out;
}

SymAltDecomposition lambda2_s2_decompose(int p, int d) {
    check_prime(p);
    if (d < 0) throw InputError("negative degree");
    if (2 * d > p - 1)
        throw InputError("2d = " + std::to_string(2 * d) +
                         " exceeds p - 1; decomposition not guaranteed");
    if (p == 2) throw InputError("odd characteristic required");
    std::size_t n = static_cast<std::size_t>(d) + 1;
    GFpMatrix iota = swap_matrix(p, d);
    SymAltDecomposition out;
    // Eigenspace bases of the swap: symmetric rows e_ij + e_ji (and e_ii),
    // antisymmetric rows e_ij - e_ji.
    out.s2_basis = GFpMatrix(p, n * (n + 1) / 2, n * n);
    out.lambda2_basis = GFpMatrix(p, n * (n - 1) / 2, n * n);
    std::size_t rs = 0, rl = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            if (i == j) {
                out.s2_basis.at(rs++, i * n + i) = 1;
            } else {
                out.s2_basis.at(rs, i * n + j) = 1;
                out.s2_basis.at(rs++, j * n + i) = 1;
                out.lambda2_basis.at(rl, i * n + j) = 1;
                out.lambda2_basis.at(rl++, j * n + i) = p - 1;
            }
        }
    for (int r = 0; r <= d; ++r) {
        int m = 2 * d - 2 * r;
        GFpMatrix T = transvectant_matrix(p, d, d, r);
        check_equivariant(p, d, d, m, T);
        GFpMatrix sign = (r % 2 == 0) ? T : T.scaled(p - 1);
        if (!(iota.mul(T) == sign))
            throw VerifyError("swap does not act as (-1)^r on transvectant " +
                              std::to_string(r));
        if (r % 2 == 0) {
            out.s2_degrees.push_back(m);
            out.s2_projections.push_back(out.s2_basis.mul(T));
        } else {
            out.lambda2_degrees.push_back(m);
            out.lambda2_projections.push_back(out.lambda2_basis.mul(T));
        }
    }
    // Certify both halves: surjective summand projections with jointly
    // trivial kernel, and dimensions matching the eigenspace.
    auto certify = [&](const std::vector<int>& degrees,
                       const std::vector<GFpMatrix>& projections,
                       std::size_t space_dim, const char* what) {
        std::size_t dim_sum = 0;
        GFpMatrix joint(p, space_dim, 0);
        for (std::size_t k = 0; k < degrees.size(); ++k) {
            const GFpMatrix& T = projections[k];
            if (gfp_rank(T) != static_cast<std::size_t>(degrees[k]) + 1)
                throw VerifyError(std::string(what) +
                                  " projection not surjective onto degree " +
                                  std::to_string(degrees[k]));
            dim_sum += static_cast<std::size_t>(degrees[k]) + 1;
            GFpMatrix next(p, space_dim, joint.cols + T.cols);
            for (std::size_t i = 0; i < space_dim; ++i) {
                for (std::size_t j = 0; j < joint.cols; ++j)
                    next.at(i, j) = joint.at(i, j);
                for (std::size_t j = 0; j < T.cols; ++j)
                    next.at(i, joint.cols + j) = T.at(i, j);
            }
            joint = std::move(next);
        }
        if (dim_sum != space_dim || gfp_rank(joint) != space_dim)
            throw VerifyError(std::string(what) +
                              " summands do not decompose the square");
    };
    certify(out.s2_degrees, out.s2_projections, n * (n + 1) / 2,
            "symmetric square");
    certify(out.lambda2_degrees, out.lambda2_projections, n * (n - 1) / 2,
            "exterior square");
    return out;
}

JordanReport jordan_block_analysis(const GFpMatrix& u) {
    if (u.rows != u.cols) throw InputError("action matrix must be square");
    std::size_t n = u.rows;
    GFpMatrix nil = u.sub(GFpMatrix::identity(u.p, n));
    // Unipotent iff u - 1 is nilpotent; the index bounds the p-power order.
    std::vector<std::size_t> ranks{n};
    GFpMatrix pw = GFpMatrix::identity(u.p, n);
    int index = 0;
    while (!pw.is_zero()) {
        if (index > static_cast<int>(n))
            throw InputError("matrix is not unipotent mod " +
                             std::to_string(u.p));
        pw = pw.mul(nil);
        ranks.push_back(gfp_rank(pw));
        ++index;
    }
    JordanReport rep;
    rep.min_poly_degree = index;
    for (int k = 1; k <= index; ++k) {
        // Number of blocks of size >= k, minus those of size >= k + 1.
        std::size_t ge_k = ranks[static_cast<std::size_t>(k) - 1] -
                           ranks[static_cast<std::size_t>(k)];
        std::size_t ge_k1 = (static_cast<std::size_t>(k) < ranks.size() - 1)
                                ? ranks[static_cast<std::size_t>(k)] -
                                      ranks[static_cast<std::size_t>(k) + 1]
                                : 0;
        for (std::size_t t = ge_k1; t < ge_k; ++t) rep.blocks.push_back(k);
    }
    std::sort(rep.blocks.rbegin(), rep.blocks.rend());
    int big = 0;
    for (int b : rep.blocks)
        if (b > 1) ++big;
    rep.minimally_active = (big == 1);
    return rep;
}

TorusFixedReport torus_fixed_points(const PolyModule& v) {
    TorusFixedReport rep;
    // The torus acts diagonally on monomials: x^{e-k} y^k scales by
    // lambda^{e-2k}, fixed iff (p - 1) divides e - 2k.
    for (int k = 0; k <= v.e; ++k)
        if (v.torus.at(static_cast<std::size_t>(k),
                       static_cast<std::size_t>(k)) == 1 &&
            ((v.e - 2 * k) % (v.p - 1) == 0))
            rep.positions.push_back(k);
    GFpMatrix fixed =
        gfp_kernel(v.torus.sub(GFpMatrix::identity(v.p, v.dim())));
    rep.dim = static_cast<int>(fixed.rows);
    if (rep.dim != static_cast<int>(rep.positions.size()))
        throw VerifyError("torus fixed space is not spanned by monomials");
    return rep;
}

HeartModules permutation_module_heart(int p) {
    check_prime(p);
    if (p < 3) throw InputError("odd prime required");
    std::size_t n = static_cast<std::size_t>(p) - 1;
    HeartModules h;
    h.p = p;
    // Augmentation kernel basis e_i = v_i - v_p, i = 1..p-1.
    // (1 2): e_1 <-> e_2, others fixed.
    h.s_transposition = GFpMatrix::identity(p, n);
    h.s_transposition.at(0, 0) = 0;
    h.s_transposition.at(0, 1) = 1;
    h.s_transposition.at(1, 1) = 0;
    h.s_transposition.at(1, 0) = 1;
    // (1 2 ... p): e_i -> e_{i+1} - e_1 for i < p-1, e_{p-1} -> -e_1.
    h.s_cycle = GFpMatrix(p, n, n);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        h.s_cycle.at(i, i + 1) = 1;
        h.s_cycle.at(i, 0) = norm(h.s_cycle.at(i, 0) - 1, p);
    }
    h.s_cycle.at(n - 1, 0) = norm(h.s_cycle.at(n - 1, 0) - 1, p);
    // Quotient by the all-ones vector sum e_i: basis the images of
    // e_1..e_{p-2}, with e_{p-1} rewritten as minus their sum.
    auto quotient = [&](const GFpMatrix& m) {
        GFpMatrix out(p, n - 1, n - 1);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            int tail = m.at(i, n - 1);
            for (std::size_t j = 0; j + 1 < n; ++j)
                out.at(i, j) = norm(m.at(i, j) - tail, p);
        }
        return out;
    };
    h.d_transposition = quotient(h.s_transposition);
    h.d_cycle = quotient(h.s_cycle);
    return h;
}

FeitVerdict feit_bound_check(int p, int d, bool group_is_l2p_type) {
    check_prime(p);
    if (d < 1 || d > p)
        throw InputError("dimension " + std::to_string(d) +
                         " outside [1, p]");
    FeitVerdict v;
    v.bound = (2 * (p - 1) + 2) / 3;
    v.impossible = !group_is_l2p_type && d < v.bound;
    return v;
}

} // namespace mcf
