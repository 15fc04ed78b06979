#ifndef SEGRE_FLATTENING_HPP
#define SEGRE_FLATTENING_HPP

#include <algorithm>
#include <cstddef>
#include <vector>

#include "segre/error.hpp"
#include "segre/matrix.hpp"
#include "segre/tensor.hpp"

namespace segre {

// Proper two-block partition of the mode set. Both blocks are kept sorted;
// rows of the flattening run over `left`, columns over `right`.
struct Bipartition {
    std::vector<std::size_t> left;
    std::vector<std::size_t> right;

    Bipartition(std::vector<std::size_t> left_modes, std::size_t order) {
        left = std::move(left_modes);
        std::sort(left.begin(), left.end());
        if (left.empty()) throw shape_error("bipartition: empty block");
        if (std::adjacent_find(left.begin(), left.end()) != left.end())
            throw shape_error("bipartition: repeated mode");
        if (left.back() >= order) throw shape_error("bipartition: mode out of range");
        for (std::size_t m = 0; m < order; ++m)
            if (!std::binary_search(left.begin(), left.end(), m)) right.push_back(m);
        if (right.empty()) throw shape_error("bipartition: empty block");
    }

    Bipartition complement() const {
        return Bipartition(right, left.size() + right.size());
    }
};

// Matricization: rows indexed by multi-indices over the left block (modes in
// increasing order, last listed fastest), columns likewise over the right.
inline Matrix flatten(const Tensor& t, const Bipartition& p) {
    if (p.left.size() + p.right.size() != t.order())
        throw shape_error("flatten: partition order mismatch");
    std::size_t nrows = 1, ncols = 1;
    for (std::size_t m : p.left) nrows *= t.dim(m);
    for (std::size_t m : p.right) ncols *= t.dim(m);
    Matrix out(nrows, ncols);
    for (std::size_t off = 0; off < t.size(); ++off) {
        if (t[off].is_zero()) continue;
        auto idx = unflatten(t.shape(), off);
        std::size_t r = 0, c = 0;
        for (std::size_t m : p.left) r = r * t.dim(m) + idx[m];
        for (std::size_t m : p.right) c = c * t.dim(m) + idx[m];
        out(r, c) = t[off];
    }
    return out;
}

inline Matrix flatten(const Tensor& t, std::vector<std::size_t> left_modes) {
    return flatten(t, Bipartition(std::move(left_modes), t.order()));
}

inline std::size_t flattening_rank(const Tensor& t, const Bipartition& p) {
    return rank(flatten(t, p));
}

inline std::size_t flattening_rank(const Tensor& t, std::vector<std::size_t> left_modes) {
    return rank(flatten(t, std::move(left_modes)));
}

// All proper bipartitions up to complementation, as left blocks containing
// mode 0, in lexicographic order of the sorted mode lists. 2^(n-1)-1 many.
inline std::vector<Bipartition> canonical_bipartitions(std::size_t order) {
    if (order < 2) throw shape_error("bipartitions: order must be at least 2");
    std::vector<std::vector<std::size_t>> lefts;
    for (std::size_t mask = 1; mask < (std::size_t(1) << order); mask += 2) {
        if (mask == (std::size_t(1) << order) - 1) continue;  // complement empty
        std::vector<std::size_t> left;
        for (std::size_t m = 0; m < order; ++m)
            if (mask & (std::size_t(1) << m)) left.push_back(m);
        lefts.push_back(std::move(left));
    }
    std::sort(lefts.begin(), lefts.end());
    std::vector<Bipartition> out;
    out.reserve(lefts.size());
    for (auto& l : lefts) out.emplace_back(std::move(l), order);
    return out;
}

// Concise presentation: per-mode full-column-rank embeddings e_m and a core
// with (e_0 x ... x e_{n-1}) core = t. The embedding columns are the first
// linearly independent columns of the single-mode matricization, so the
// result is a deterministic function of the entries.
struct ConciseCore {
    Tensor core;
    std::vector<Matrix> embeddings;
};

inline ConciseCore concise_core(const Tensor& t) {
    if (t.is_zero()) throw degenerate_error("concise core: zero tensor");
    std::vector<Matrix> embeddings;
    std::vector<Matrix> inverses;
    embeddings.reserve(t.order());
    for (std::size_t m = 0; m < t.order(); ++m) {
        Matrix flat = flatten(t, {m});
        std::vector<std::size_t> piv;
        rref(flat, &piv);
        Matrix e(t.dim(m), piv.size());
        for (std::size_t k = 0; k < piv.size(); ++k)
            for (std::size_t r = 0; r < t.dim(m); ++r) e(r, k) = flat(r, piv[k]);
        inverses.push_back(left_inverse(e));
        embeddings.push_back(std::move(e));
    }
    Tensor core = t;
    for (std::size_t m = 0; m < t.order(); ++m)
        core = apply_mode_map(core, m, inverses[m]);
    return ConciseCore{std::move(core), std::move(embeddings)};
}

inline std::vector<std::size_t> mode_ranks(const Tensor& t) {
    std::vector<std::size_t> out(t.order());
    for (std::size_t m = 0; m < t.order(); ++m) out[m] = flattening_rank(t, {m});
    return out;
}

} // namespace segre

#endif
