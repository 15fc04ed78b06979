#ifndef SEGRE_SYMMETRIC_HPP
#define SEGRE_SYMMETRIC_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "segre/certificate.hpp"
#include "segre/error.hpp"
#include "segre/flattening.hpp"
#include "segre/matrix.hpp"
#include "segre/strassen.hpp"
#include "segre/tensor.hpp"

namespace segre {

// Dense order-d tensor with all mode dimensions equal that is invariant
// under every slot permutation. Stored dense rather than as a coefficient
// vector so no multinomial normalization ever enters the arithmetic.
// Degree >= 2 because the underlying tensor type is.
class SymTensor {
public:
    explicit SymTensor(Tensor t) : t_(std::move(t)) {
        for (std::size_t m = 1; m < t_.order(); ++m)
            if (t_.dim(m) != t_.dim(0))
                throw shape_error("symmetric tensor: mode dimensions must agree");
        // adjacent transpositions generate the full symmetric group
        std::vector<std::size_t> perm(t_.order());
        for (std::size_t m = 0; m + 1 < t_.order(); ++m) {
            for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
            std::swap(perm[m], perm[m + 1]);
            if (!(permute_modes(t_, perm) == t_))
                throw contract_error("symmetric tensor: entries not slot-invariant");
        }
    }

    std::size_t degree() const { return t_.order(); }
    std::size_t dim() const { return t_.dim(0); }
    const Tensor& tensor() const { return t_; }

    // Entry at the monomial with the given exponent vector (one exponent per
    // variable, summing to the degree); well defined by slot invariance.
    const Rational& entry(const std::vector<std::size_t>& exponents) const {
        if (exponents.size() != dim())
            throw shape_error("symmetric tensor entry: one exponent per variable");
        std::vector<std::size_t> idx;
        idx.reserve(degree());
        for (std::size_t v = 0; v < exponents.size(); ++v)
            for (std::size_t r = 0; r < exponents[v]; ++r) idx.push_back(v);
        if (idx.size() != degree())
            throw shape_error("symmetric tensor entry: exponents must sum to the degree");
        return t_.at(idx);
    }

private:
    Tensor t_;
};

// l (x) l (x) ... (x) l, the degree-d power of a single vector.
inline SymTensor power_form(const std::vector<Rational>& l, std::size_t degree) {
    std::vector<std::vector<Rational>> factors(degree, l);
    return SymTensor(simple_tensor(factors));
}

// Binary form given by its dense entries: the tensor entry at any index with
// k ones is entries[k]; degree = entries.size() - 1.
inline SymTensor binary_form_from_entries(const std::vector<Rational>& entries) {
    if (entries.size() < 3)
        throw shape_error("binary form: need degree >= 2, so at least 3 entries");
    const std::size_t d = entries.size() - 1;
    Tensor t{Shape(std::vector<std::size_t>(d, 2))};
    for (std::size_t off = 0; off < t.size(); ++off) {
        const auto idx = unflatten(t.shape(), off);
        std::size_t ones = 0;
        for (std::size_t x : idx) ones += x;
        t[off] = entries[ones];
    }
    return SymTensor(std::move(t));
}

// Substitute variables by the invertible map g acting on every slot.
inline SymTensor substitute(const SymTensor& f, const Matrix& g) {
    Tensor t = f.tensor();
    for (std::size_t m = 0; m < t.order(); ++m) t = apply_mode_map(t, m, g);
    return SymTensor(std::move(t));
}

// Exponent vectors of all degree-`deg` monomials in `vars` variables, in
// ascending lexicographic order.
inline std::vector<std::vector<std::size_t>> monomial_exponents(std::size_t vars,
                                                                std::size_t deg) {
    if (vars == 0) throw shape_error("monomials: need at least one variable");
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur(vars, 0);
    auto rec = [&](auto&& self, std::size_t pos, std::size_t remaining) -> void {
        if (pos + 1 == vars) {
            cur[pos] = remaining;
            out.push_back(cur);
            return;
        }
        for (std::size_t e = 0; e <= remaining; ++e) {
            cur[pos] = e;
            self(self, pos + 1, remaining - e);
        }
    };
    rec(rec, 0, deg);
    return out;
}

// Matrix of the (a, d-a)-polarization: rows indexed by degree d-a monomials,
// columns by degree a monomials, both in ascending lexicographic order; the
// entry at (alpha, beta) is the tensor entry at any slot assignment
// realizing alpha + beta.
inline Matrix catalecticant(const SymTensor& f, std::size_t a) {
    const std::size_t d = f.degree();
    if (a == 0 || a >= d) throw contract_error("catalecticant: need 0 < a < degree");
    const auto rows = monomial_exponents(f.dim(), d - a);
    const auto cols = monomial_exponents(f.dim(), a);
    Matrix m(rows.size(), cols.size());
    std::vector<std::size_t> e(f.dim());
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < cols.size(); ++c) {
            for (std::size_t v = 0; v < e.size(); ++v) e[v] = rows[r][v] + cols[c][v];
            m(r, c) = f.entry(e);
        }
    return m;
}

// Decides membership of a binary form in the third secant of its rational
// normal curve. Degree <= 5: the secant fills the ambient space. Degree >= 6:
// member iff the middle catalecticant has rank <= 3.
inline Certificate binary_sigma3(const SymTensor& f) {
    if (f.dim() != 2) throw unsupported_error("binary_sigma3: form must be binary");
    const std::size_t d = f.degree();
    Certificate cert;
    if (d <= 5) {
        cert.trace.push_back({"fills", PartitionRef::none(), 0, 0, true});
        cert.verdict = Verdict::Member;
        return cert;
    }
    const std::size_t a = d / 2;
    const std::size_t r = rank(catalecticant(f, a));
    TraceEntry entry{"catalecticant", PartitionRef::pair(a, d - a), r, 3, r <= 3};
    cert.trace.push_back(entry);
    cert.verdict = entry.ok ? Verdict::Member : Verdict::NonMember;
    if (!entry.ok) cert.witness = entry;
    return cert;
}

struct PipelineStep {
    std::size_t mode;
    PairMap map;  // the kernel element chosen for this step
};

// Success: `form` holds the fully slot-symmetric result on the pivot space.
// Failure: `blocking_mode` is the first mode whose exterior-flattening kernel
// has no full-rank element.
struct PipelineReport {
    bool ok = false;
    std::optional<SymTensor> form;
    std::size_t blocking_mode = 0;
    std::vector<PipelineStep> steps;
};

// Iterated symmetrization onto the pivot mode: for each mode j != pivot in
// increasing order, pick a full-rank exterior-flattening kernel element and
// replace mode j by its image in the pivot space. Each successful step makes
// the tensor symmetric in (pivot, j) while invertibility preserves border
// rank, so a full run turns sigma_3 membership into a binary-form question.
// Runs directly when every ambient dimension is 2; otherwise the concise
// core must have all dimensions 2.
inline PipelineReport symmetrization_pipeline(const Tensor& t, std::size_t pivot) {
    if (pivot >= t.order()) throw shape_error("pipeline: pivot mode out of range");
    Tensor cur = t;
    bool binary = true;
    for (std::size_t m = 0; m < cur.order(); ++m)
        if (cur.dim(m) != 2) binary = false;
    if (!binary) {
        if (cur.is_zero())
            throw unsupported_error("pipeline: zero tensor without binary modes");
        ConciseCore cc = concise_core(cur);
        for (std::size_t m = 0; m < cc.core.order(); ++m)
            if (cc.core.dim(m) != 2)
                throw unsupported_error("pipeline: concise mode dimensions must all be 2");
        cur = cc.core;
    }
    PipelineReport rep;
    for (std::size_t j = 0; j < cur.order(); ++j) {
        if (j == pivot) continue;
        Tripartition tp(pivot, j, cur.order());
        auto phi = kernel_full_rank_element(cur, tp);
        if (!phi.has_value()) {
            rep.ok = false;
            rep.blocking_mode = j;
            return rep;
        }
        cur = symmetrize_pair(cur, tp, *phi);
        rep.steps.push_back({j, *phi});
    }
    rep.ok = true;
    rep.form = SymTensor(std::move(cur));
    return rep;
}

} // namespace segre

#endif
