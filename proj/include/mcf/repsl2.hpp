#pragma once

#include "mcf/gfp.hpp"

namespace mcf {

// The (e+1)-dimensional module of degree-e homogeneous polynomials in x, y
// over GF(p), basis x^e, x^{e-1}y, ..., y^e, with the right action
// x^a y^b * [[alpha, beta], [gamma, delta]] = (alpha x + beta y)^a
// (gamma x + delta y)^b. Generator matrices are recorded for the standard
// unipotent [[1,1],[0,1]] and the torus diag(lambda, lambda^{-1}) with
// lambda a primitive root mod p.
struct PolyModule {
    int p = 0;
    int e = 0;
    int lambda = 0;
    GFpMatrix unipotent;
    GFpMatrix torus;
    std::size_t dim() const { return static_cast<std::size_t>(e) + 1; }
};

PolyModule build_Ve(int p, int e);

// Action matrix of [[alpha, beta], [gamma, delta]] on degree-e polynomials.
GFpMatrix ve_action(int p, int e, int alpha, int beta, int gamma, int delta);

// The operator f (x) g -> df/dx (x) dg/dy - df/dy (x) dg/dx restricted to
// bidegree (d, e), as a (d+1)(e+1) x (d e) matrix. Tensor basis index
// i * (e + 1) + j stands for x^{d-i} y^i (x) x^{e-j} y^j.
GFpMatrix omega_matrix(int p, int d, int e);

// The r-transvectant: r applications of omega followed by multiplication,
// landing in degree d + e - 2r. Requires r <= min(d, e).
GFpMatrix transvectant_matrix(int p, int d, int e, int r);
std::vector<int> transvectant(int p, int d, int e, int r,
                              const std::vector<int>& tensor);

// The swap f (x) g -> g (x) f on V_d (x) V_d.
GFpMatrix swap_matrix(int p, int d);

struct Decomposition {
    std::vector<int> degrees;          // descending
    std::vector<GFpMatrix> projections;
};

// Splits V_d (x) V_e (d >= e, d + e <= p - 1) into V_{d+e}, V_{d+e-2}, ...,
// V_{d-e}, certifying each transvectant projection surjective and the joint
// kernel trivial.
Decomposition clebsch_gordan_decompose(int p, int d, int e);

struct SymAltDecomposition {
    std::vector<int> s2_degrees;
    std::vector<int> lambda2_degrees;
    // Projections restricted to the eigenspace bases of the swap involution.
    std::vector<GFpMatrix> s2_projections;
    std::vector<GFpMatrix> lambda2_projections;
    GFpMatrix s2_basis;        // rows span the fixed space of the swap
    GFpMatrix lambda2_basis;   // rows span the negated space
};

// Splits the symmetric and exterior squares of V_d (2d <= p - 1) via the
// eigenspaces of the swap involution and the even/odd transvectants.
SymAltDecomposition lambda2_s2_decompose(int p, int d);

struct JordanReport {
    std::vector<int> blocks;    // descending; sizes of the blocks of u - 1
    int min_poly_degree = 0;    // nilpotency index of u - 1
    bool minimally_active = false;  // exactly one block of size > 1
};

JordanReport jordan_block_analysis(const GFpMatrix& u);

struct TorusFixedReport {
    int dim = 0;
    std::vector<int> positions;  // filtration indices k of fixed x^{e-k} y^k
};

TorusFixedReport torus_fixed_points(const PolyModule& v);

// The heart of the natural permutation module of Sym(p) over GF(p): the
// augmentation kernel of dimension p - 1 and its quotient by the all-ones
// vector of dimension p - 2, with the actions of (1 2) and (1 2 ... p).
struct HeartModules {
    int p = 0;
    GFpMatrix s_transposition;  // on the augmentation kernel, dim p - 1
    GFpMatrix s_cycle;
    GFpMatrix d_transposition;  // on the quotient, dim p - 2
    GFpMatrix d_cycle;
};

HeartModules permutation_module_heart(int p);

struct FeitVerdict {
    bool impossible = false;
    int bound = 0;  // ceil(2(p-1)/3)
};

// A faithful indecomposable module of dimension d < ceil(2(p-1)/3) forces
// every composition factor of the group to be a p-group, a p'-group or
// PSL_2(p); flag the contrary combination.
FeitVerdict feit_bound_check(int p, int d, bool group_is_l2p_type);

} // namespace mcf
