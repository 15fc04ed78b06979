#ifndef SEGRE_STRASSEN_HPP
#define SEGRE_STRASSEN_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "segre/error.hpp"
#include "segre/flattening.hpp"
#include "segre/matrix.hpp"
#include "segre/tensor.hpp"

namespace segre {

// Distinguished pair of modes; every other mode is grouped into the C block.
struct Tripartition {
    std::size_t a_mode;
    std::size_t b_mode;

    Tripartition(std::size_t a, std::size_t b, std::size_t order) : a_mode(a), b_mode(b) {
        if (a >= order || b >= order) throw shape_error("tripartition: mode out of range");
        if (a == b) throw shape_error("tripartition: a and b must differ");
    }

    std::vector<std::size_t> rest_modes(std::size_t order) const {
        std::vector<std::size_t> rest;
        for (std::size_t m = 0; m < order; ++m)
            if (m != a_mode && m != b_mode) rest.push_back(m);
        return rest;
    }
};

// Linear map from the B-mode space into the A-mode space: dim A rows,
// dim B columns.
struct PairMap {
    Matrix matrix;
};

namespace detail {
// Index of the pair (p, q), p < q, in lexicographic pair order over dim d.
inline std::size_t wedge_pair_index(std::size_t p, std::size_t q, std::size_t d) {
    return p * d - p * (p + 1) / 2 + (q - p - 1);
}
} // namespace detail

// Matrix of the map A (x) B* -> Wedge^2 A (x) C sending a_l (x) b^j to
// sum_{i,k} t[i,j,k] (a_l ^ a_i) (x) c_k, where t[i,j,k] has A-index i,
// B-index j and grouped rest index k (rest modes ascending, last fastest).
// Rows are ordered by ((p<q) lex, C-index) with u ^ v carrying +1 on (p,q);
// columns by (A-index, B-index).
inline Matrix exterior_flattening(const Tensor& t, const Tripartition& tp) {
    const std::size_t n = t.order();
    Tripartition p(tp.a_mode, tp.b_mode, n);  // revalidate against this tensor
    const std::size_t da = t.dim(p.a_mode), db = t.dim(p.b_mode);
    if (da < 2) throw unsupported_error("exterior flattening: a-mode dimension below 2");
    const auto rest = p.rest_modes(n);
    std::size_t dc = 1;
    for (std::size_t m : rest) dc *= t.dim(m);
    const std::size_t pairs = da * (da - 1) / 2;
    Matrix out(pairs * dc, da * db);
    for (std::size_t off = 0; off < t.size(); ++off) {
        const Rational& v = t[off];
        if (v.is_zero()) continue;
        const auto idx = unflatten(t.shape(), off);
        const std::size_t i = idx[p.a_mode], j = idx[p.b_mode];
        std::size_t k = 0;
        for (std::size_t m : rest) k = k * t.dim(m) + idx[m];
        for (std::size_t l = 0; l < da; ++l) {
            if (l == i) continue;
            const std::size_t col = l * db + j;
            if (l < i)
                out(detail::wedge_pair_index(l, i, da) * dc + k, col) += v;
            else
                out(detail::wedge_pair_index(i, l, da) * dc + k, col) -= v;
        }
    }
    return out;
}

struct StrassenReport {
    bool ok;
    std::size_t rank;
    std::size_t bound;
    std::size_t dim_a;  // concise dimension of the a-mode
};

// Rank bound on the exterior flattening of the concise core: membership in
// the r-th secant of the Segre product forces rank <= r * (dim A - 1). A
// concise a-mode of dimension 1 wedges to zero and passes vacuously.
inline StrassenReport strassen_ok(const Tensor& t, const Tripartition& tp, std::size_t r) {
    Tripartition p(tp.a_mode, tp.b_mode, t.order());
    if (t.is_zero()) return {true, 0, 0, 0};
    ConciseCore cc = concise_core(t);
    const std::size_t da = cc.core.dim(p.a_mode);
    if (da < 2) return {true, 0, 0, da};
    const std::size_t rk = rank(exterior_flattening(cc.core, p));
    const std::size_t bound = r * (da - 1);
    return {rk <= bound, rk, bound, da};
}

// Strassen's degree-4 commutation test for 3x3x3 tensors, with slices
// t_s = t(s, :, :) along mode 0:  t_1 adj(t_0) t_2 - t_2 adj(t_0) t_1.
inline Matrix strassen_commutator(const Tensor& t) {
    if (t.order() != 3 || t.dim(0) != 3 || t.dim(1) != 3 || t.dim(2) != 3)
        throw shape_error("commutator: tensor must be 3x3x3");
    Matrix slice[3] = {Matrix(3, 3), Matrix(3, 3), Matrix(3, 3)};
    for (std::size_t s = 0; s < 3; ++s)
        for (std::size_t j = 0; j < 3; ++j)
            for (std::size_t k = 0; k < 3; ++k) slice[s](j, k) = t.at({s, j, k});
    Matrix adj0 = det3_adjugate(slice[0]).second;
    return slice[1] * adj0 * slice[2] - slice[2] * adj0 * slice[1];
}

inline std::vector<Rational> pair_map_vector(const PairMap& phi) {
    std::vector<Rational> v;
    v.reserve(phi.matrix.rows() * phi.matrix.cols());
    for (std::size_t l = 0; l < phi.matrix.rows(); ++l)
        for (std::size_t j = 0; j < phi.matrix.cols(); ++j) v.push_back(phi.matrix(l, j));
    return v;
}

// Search the kernel of the exterior flattening for an invertible map B -> A
// when both paired modes have dimension 2. The determinant is a quadratic
// form on the kernel, so in characteristic zero it vanishes identically iff
// it vanishes on every kernel basis vector and every pairwise sum; those
// candidates are scanned in order and the first invertible one is returned.
inline std::optional<PairMap> kernel_full_rank_element(const Tensor& t,
                                                       const Tripartition& tp) {
    Tripartition p(tp.a_mode, tp.b_mode, t.order());
    if (t.dim(p.a_mode) != 2 || t.dim(p.b_mode) != 2)
        throw contract_error("kernel element: paired modes must have dimension 2");
    Matrix m = exterior_flattening(t, p);
    auto basis = kernel_basis(m);
    auto as_map = [](const std::vector<Rational>& v) {
        Matrix phi(2, 2);
        phi(0, 0) = v[0]; phi(0, 1) = v[1]; phi(1, 0) = v[2]; phi(1, 1) = v[3];
        return phi;
    };
    auto det2 = [](const Matrix& phi) {
        return phi(0, 0) * phi(1, 1) - phi(0, 1) * phi(1, 0);
    };
    for (const auto& v : basis) {
        Matrix phi = as_map(v);
        if (!det2(phi).is_zero()) return PairMap{phi};
    }
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i + 1; j < basis.size(); ++j) {
            std::vector<Rational> v(4);
            for (std::size_t k = 0; k < 4; ++k) v[k] = basis[i][k] + basis[j][k];
            Matrix phi = as_map(v);
            if (!det2(phi).is_zero()) return PairMap{phi};
        }
    return std::nullopt;
}

// Replace the B-mode of t by its image under an invertible kernel element.
// The result is symmetric under exchanging a_mode and b_mode.
inline Tensor symmetrize_pair(const Tensor& t, const Tripartition& tp, const PairMap& phi) {
    Tripartition p(tp.a_mode, tp.b_mode, t.order());
    const std::size_t da = t.dim(p.a_mode), db = t.dim(p.b_mode);
    if (da != db) throw contract_error("symmetrize: paired modes differ in dimension");
    if (phi.matrix.rows() != da || phi.matrix.cols() != db)
        throw contract_error("symmetrize: map shape mismatch");
    if (det(phi.matrix).is_zero()) throw contract_error("symmetrize: map is singular");
    Matrix m = exterior_flattening(t, p);
    for (const auto& x : m * pair_map_vector(phi))
        if (!x.is_zero()) throw contract_error("symmetrize: map is not in the kernel");
    return apply_mode_map(t, p.b_mode, phi.matrix);
}

} // namespace segre

#endif
