#ifndef SEGRE_NORMAL_FORMS_HPP
#define SEGRE_NORMAL_FORMS_HPP

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "segre/error.hpp"
#include "segre/matrix.hpp"
#include "segre/tensor.hpp"

namespace segre {

// The certified small-border-rank test corpus. Sigma2_* are the three
// border-rank-2 forms (point, sum of two points, tangent vector); Sigma3_*
// are the four border-rank-3 forms (three points; tangent plus point; second
// derivative of a curve; two tangents at collinear points); Case3_* are the
// two span forms on binary modes; GenericRank is a sum of r independent
// random simple tensors (not certified to lie in any secant).
enum class Family {
    Sigma2_Point,
    Sigma2_RankTwo,
    Sigma2_Tangent,
    Sigma3_Type1,
    Sigma3_Type2,
    Sigma3_Type3,
    Sigma3_Type4,
    Case3_Type1,
    Case3_Type2,
    GenericRank,
};

inline std::string family_name(Family f, std::size_t rank = 0) {
    switch (f) {
        case Family::Sigma2_Point: return "sigma2-point";
        case Family::Sigma2_RankTwo: return "sigma2-rank2";
        case Family::Sigma2_Tangent: return "sigma2-tangent";
        case Family::Sigma3_Type1: return "sigma3-type1";
        case Family::Sigma3_Type2: return "sigma3-type2";
        case Family::Sigma3_Type3: return "sigma3-type3";
        case Family::Sigma3_Type4: return "sigma3-type4";
        case Family::Case3_Type1: return "case3-type1";
        case Family::Case3_Type2: return "case3-type2";
        case Family::GenericRank: return "generic-rank" + std::to_string(rank);
    }
    throw contract_error("family_name: unknown family");
}

// Inverse of family_name; the returned size_t is the rank for generic-rank<r>
// and 0 otherwise.
inline std::pair<Family, std::size_t> parse_family(const std::string& s) {
    static const std::pair<const char*, Family> plain[] = {
        {"sigma2-point", Family::Sigma2_Point},   {"sigma2-rank2", Family::Sigma2_RankTwo},
        {"sigma2-tangent", Family::Sigma2_Tangent}, {"sigma3-type1", Family::Sigma3_Type1},
        {"sigma3-type2", Family::Sigma3_Type2},   {"sigma3-type3", Family::Sigma3_Type3},
        {"sigma3-type4", Family::Sigma3_Type4},   {"case3-type1", Family::Case3_Type1},
        {"case3-type2", Family::Case3_Type2},
    };
    for (const auto& [name, fam] : plain)
        if (s == name) return {fam, 0};
    const std::string prefix = "generic-rank";
    if (s.size() > prefix.size() && s.compare(0, prefix.size(), prefix) == 0) {
        std::size_t r = 0;
        for (std::size_t i = prefix.size(); i < s.size(); ++i) {
            if (s[i] < '0' || s[i] > '9') throw parse_error("family: bad rank in '" + s + "'");
            r = r * 10 + std::size_t(s[i] - '0');
        }
        if (r == 0) throw parse_error("family: rank must be positive in '" + s + "'");
        return {Family::GenericRank, r};
    }
    throw parse_error("family: unknown name '" + s + "'");
}

// `fixed` pins the vector parameter with index j on the given mode instead of
// drawing it, to force the coincidences the degenerate strata live at.
struct NormalFormSpec {
    Family family = Family::GenericRank;
    std::vector<std::size_t> dims;
    std::uint64_t seed = 0;
    std::size_t rank = 0;  // GenericRank only
    std::map<std::pair<std::size_t, std::size_t>, std::vector<Rational>> fixed;
};

namespace detail {

class DrawCtx {
public:
    explicit DrawCtx(std::uint64_t seed) : g_(seed) {}

    long ival(long lo = -9, long hi = 9) {
        return std::uniform_int_distribution<long>(lo, hi)(g_);
    }

    std::vector<Rational> raw_vec(std::size_t d) {
        std::vector<Rational> v(d);
        for (auto& x : v) x = Rational(ival());
        return v;
    }

    std::vector<Rational> nonzero_vec(std::size_t d) {
        for (;;) {
            auto v = raw_vec(d);
            for (const auto& x : v)
                if (!x.is_zero()) return v;
        }
    }

    // Nonzero, never proportional to an earlier parameter, and extending the
    // span of the earlier ones whenever the dimension still allows it.
    std::vector<Rational> fresh_vec(std::size_t d,
                                    const std::vector<std::vector<Rational>>& prior) {
        Matrix pm(prior.size(), d);
        for (std::size_t r = 0; r < prior.size(); ++r)
            for (std::size_t c = 0; c < d; ++c) pm(r, c) = prior[r][c];
        const std::size_t base = prior.empty() ? 0 : rank(pm);
        for (;;) {
            auto v = nonzero_vec(d);
            if (d >= 2) {
                bool prop = false;
                for (const auto& p : prior) {
                    Matrix two(2, d);
                    for (std::size_t c = 0; c < d; ++c) {
                        two(0, c) = p[c];
                        two(1, c) = v[c];
                    }
                    if (rank(two) <= 1) prop = true;
                }
                if (prop) continue;
            }
            if (base < d) {
                Matrix ext(prior.size() + 1, d);
                for (std::size_t r = 0; r < prior.size(); ++r)
                    for (std::size_t c = 0; c < d; ++c) ext(r, c) = prior[r][c];
                for (std::size_t c = 0; c < d; ++c) ext(prior.size(), c) = v[c];
                if (rank(ext) != base + 1) continue;
            }
            return v;
        }
    }

private:
    std::mt19937_64 g_;
};

// Per-mode parameter table a^m_j, honoring `fixed` overrides. Drawn
// mode-major: for each mode in order, indices j = 0..count-1.
inline std::vector<std::vector<std::vector<Rational>>> draw_params(
    const NormalFormSpec& spec, DrawCtx& ctx, std::size_t per_mode) {
    std::vector<std::vector<std::vector<Rational>>> a(spec.dims.size());
    for (std::size_t m = 0; m < spec.dims.size(); ++m) {
        for (std::size_t j = 0; j < per_mode; ++j) {
            auto it = spec.fixed.find({m, j});
            if (it != spec.fixed.end()) {
                if (it->second.size() != spec.dims[m])
                    throw shape_error("generate: fixed vector length does not match mode");
                a[m].push_back(it->second);
            } else {
                a[m].push_back(ctx.fresh_vec(spec.dims[m], a[m]));
            }
        }
    }
    return a;
}

// Simple tensor whose factor on mode i comes from column pick[i] of the
// parameter table.
inline Tensor pick_term(const std::vector<std::vector<std::vector<Rational>>>& a,
                        const std::vector<std::size_t>& pick) {
    std::vector<std::vector<Rational>> f(a.size());
    for (std::size_t m = 0; m < a.size(); ++m) f[m] = a[m][pick[m]];
    return simple_tensor(f);
}

} // namespace detail

// Deterministic generator: identical spec (family, dims, seed, rank, fixed)
// gives an identical tensor. Coordinates are drawn uniformly from {-9..9};
// degenerate draws are rejected and redrawn, so every family lands in its
// intended stratum.
inline Tensor generate(const NormalFormSpec& spec) {
    const std::size_t n = spec.dims.size();
    if (n < 2) throw shape_error("generate: need at least 2 modes");
    for (std::size_t d : spec.dims)
        if (d == 0) throw shape_error("generate: zero mode dimension");
    detail::DrawCtx ctx(spec.seed);
    const Shape sh(spec.dims);

    auto tangent_sum = [&](const std::vector<std::vector<std::vector<Rational>>>& a,
                           std::size_t base, std::size_t dir) {
        Tensor t{sh};
        std::vector<std::size_t> pick(n, base);
        for (std::size_t i = 0; i < n; ++i) {
            pick[i] = dir;
            t = add(t, detail::pick_term(a, pick));
            pick[i] = base;
        }
        return t;
    };

    switch (spec.family) {
        case Family::Sigma2_Point: {
            auto a = detail::draw_params(spec, ctx, 1);
            return detail::pick_term(a, std::vector<std::size_t>(n, 0));
        }
        case Family::Sigma2_RankTwo: {
            auto a = detail::draw_params(spec, ctx, 2);
            return add(detail::pick_term(a, std::vector<std::size_t>(n, 0)),
                       detail::pick_term(a, std::vector<std::size_t>(n, 1)));
        }
        case Family::Sigma2_Tangent: {
            auto a = detail::draw_params(spec, ctx, 2);
            return tangent_sum(a, 0, 1);
        }
        case Family::Sigma3_Type1: {
            auto a = detail::draw_params(spec, ctx, 3);
            Tensor t{sh};
            for (std::size_t j = 0; j < 3; ++j)
                t = add(t, detail::pick_term(a, std::vector<std::size_t>(n, j)));
            return t;
        }
        case Family::Sigma3_Type2: {
            auto a = detail::draw_params(spec, ctx, 3);
            return add(tangent_sum(a, 0, 1),
                       detail::pick_term(a, std::vector<std::size_t>(n, 2)));
        }
        case Family::Sigma3_Type3: {
            auto a = detail::draw_params(spec, ctx, 3);
            Tensor t{sh};
            std::vector<std::size_t> pick(n, 0);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i + 1; j < n; ++j) {
                    pick[i] = 1;
                    pick[j] = 1;
                    t = add(t, detail::pick_term(a, pick));
                    pick[i] = 0;
                    pick[j] = 0;
                }
            return add(t, tangent_sum(a, 0, 2));
        }
        case Family::Sigma3_Type4: {
            auto a = detail::draw_params(spec, ctx, 3);
            Tensor t{sh};
            std::vector<std::size_t> pick(n, 0);
            pick[0] = 1;
            for (std::size_t s = 1; s < n; ++s) {
                pick[s] = 1;
                t = add(t, detail::pick_term(a, pick));
                pick[s] = 0;
            }
            return add(t, tangent_sum(a, 0, 2));
        }
        case Family::Case3_Type1:
        case Family::Case3_Type2: {
            if (n < 3) throw shape_error("case3 forms: need at least 3 modes");
            for (std::size_t d : spec.dims)
                if (d != 2) throw shape_error("case3 forms: every mode dimension must be 2");
            const std::size_t rest_dim = std::size_t{1} << (n - 2);
            if (spec.family == Family::Case3_Type2 && rest_dim < 3)
                throw shape_error("case3 degenerate form: rest space must have dimension >= 3");
            // independent basis pairs on the two distinguished modes
            std::vector<std::vector<std::vector<Rational>>> pair(2);
            for (std::size_t m = 0; m < 2; ++m)
                for (std::size_t j = 0; j < 2; ++j) {
                    auto it = spec.fixed.find({m, j});
                    if (it != spec.fixed.end()) {
                        if (it->second.size() != 2)
                            throw shape_error("generate: fixed vector length does not match mode");
                        pair[m].push_back(it->second);
                    } else {
                        pair[m].push_back(ctx.fresh_vec(2, pair[m]));
                    }
                }
            // three distinct projective points, used by the full-rank form
            std::vector<std::pair<long, long>> pts;
            if (spec.family == Family::Case3_Type1)
                while (pts.size() < 3) {
                    long s = ctx.ival(), t = ctx.ival();
                    if (s == 0 && t == 0) continue;
                    bool distinct = true;
                    for (auto [s2, t2] : pts)
                        if (s * t2 == t * s2) distinct = false;
                    if (distinct) pts.emplace_back(s, t);
                }
            // simple carriers W_j on the rest modes, redrawn until they span
            // as much of the rest space as three vectors can, so the form
            // sits in its intended stratum
            std::vector<std::vector<std::vector<Rational>>> w;
            for (int attempt = 0;; ++attempt) {
                if (attempt >= 512)
                    throw degenerate_error("case3 forms: could not draw spanning carriers");
                w.assign(3, {});
                bool drew = false;
                Matrix b(3, rest_dim);
                for (std::size_t j = 0; j < 3; ++j) {
                    for (std::size_t m = 2; m < n; ++m) {
                        auto it = spec.fixed.find({m, j});
                        if (it != spec.fixed.end()) {
                            if (it->second.size() != 2)
                                throw shape_error(
                                    "generate: fixed vector length does not match mode");
                            w[j].push_back(it->second);
                        } else {
                            w[j].push_back(ctx.nonzero_vec(2));
                            drew = true;
                        }
                    }
                    std::vector<Rational> carrier{Rational(1)};
                    for (const auto& factor : w[j]) {
                        std::vector<Rational> next(carrier.size() * factor.size());
                        for (std::size_t i = 0; i < carrier.size(); ++i)
                            for (std::size_t c = 0; c < factor.size(); ++c)
                                next[i * factor.size() + c] = carrier[i] * factor[c];
                        carrier = std::move(next);
                    }
                    for (std::size_t k = 0; k < rest_dim; ++k) b(j, k) = carrier[k];
                }
                bool pairwise = true;
                if (spec.family == Family::Case3_Type1) {
                    // the span form needs its three components pairwise
                    // independent in every rest mode: each symmetrization
                    // step then has an invertible kernel element (a Mobius
                    // map onto three distinct target points)
                    for (std::size_t m = 2; m < n && pairwise; ++m)
                        for (std::size_t i = 0; i < 3 && pairwise; ++i)
                            for (std::size_t j = i + 1; j < 3; ++j)
                                if ((w[i][m - 2][0] * w[j][m - 2][1] -
                                     w[i][m - 2][1] * w[j][m - 2][0])
                                        .is_zero())
                                    pairwise = false;
                } else {
                    for (std::size_t i = 0; i < 3 && pairwise; ++i)
                        for (std::size_t j = i + 1; j < 3; ++j) {
                            Matrix two(2, rest_dim);
                            for (std::size_t k = 0; k < rest_dim; ++k) {
                                two(0, k) = b(i, k);
                                two(1, k) = b(j, k);
                            }
                            if (rank(two) <= 1) pairwise = false;
                        }
                }
                if (pairwise && rank(b) == std::min<std::size_t>(3, rest_dim)) break;
                if (!drew)
                    throw degenerate_error("case3 forms: fixed carriers are degenerate");
            }
            Tensor out{sh};
            if (spec.family == Family::Case3_Type1) {
                // (s a0 + t a1) (x) (t b0 + s b1) (x) W_j sums to the span
                // form {a0 (x) b0 + a1 (x) b1, a0 (x) b1, a1 (x) b0}, a sum
                // of three simple tensors
                for (std::size_t j = 0; j < 3; ++j) {
                    auto [s, t] = pts[j];
                    std::vector<std::vector<Rational>> f(n);
                    for (std::size_t c = 0; c < 2; ++c) {
                        f[0].push_back(Rational(s) * pair[0][0][c] +
                                       Rational(t) * pair[0][1][c]);
                        f[1].push_back(Rational(t) * pair[1][0][c] +
                                       Rational(s) * pair[1][1][c]);
                    }
                    for (std::size_t m = 2; m < n; ++m) f[m] = w[j][m - 2];
                    out = add(out, simple_tensor(f));
                }
                return out;
            }
            static const std::size_t slots[3][2] = {{0, 0}, {0, 1}, {1, 0}};
            for (std::size_t j = 0; j < 3; ++j) {
                std::vector<std::vector<Rational>> f(n);
                f[0] = pair[0][slots[j][0]];
                f[1] = pair[1][slots[j][1]];
                for (std::size_t m = 2; m < n; ++m) f[m] = w[j][m - 2];
                out = add(out, simple_tensor(f));
            }
            return out;
        }
        case Family::GenericRank: {
            if (spec.rank == 0) throw contract_error("generic rank: rank must be positive");
            if (spec.rank > sh.size())
                throw shape_error("generic rank: rank exceeds the ambient dimension");
            for (int attempt = 0; attempt < 512; ++attempt) {
                std::vector<Tensor> terms;
                Matrix m(spec.rank, sh.size());
                for (std::size_t r = 0; r < spec.rank; ++r) {
                    std::vector<std::vector<Rational>> f(n);
                    for (std::size_t q = 0; q < n; ++q) f[q] = ctx.nonzero_vec(spec.dims[q]);
                    terms.push_back(simple_tensor(f));
                    for (std::size_t k = 0; k < sh.size(); ++k) m(r, k) = terms.back()[k];
                }
                if (rank(m) != spec.rank) continue;
                Tensor t{sh};
                for (const auto& term : terms) t = add(t, term);
                return t;
            }
            throw degenerate_error("generic rank: could not draw independent terms");
        }
    }
    throw contract_error("generate: unknown family");
}

// Degree-2 vector curve x(t) = c0 + t c1 + t^2 c2; empty c1/c2 mean zero.
struct VectorCurve {
    std::vector<Rational> c0, c1, c2;
};

// Degree-`order` Taylor coefficient at t = 0 of the product curve
// (x)_i x_i(t), i.e. the order-th derivative divided by order!. Order 1 is
// the Leibniz sum; order 2 gives the pair sum plus the second-order terms,
// which is exactly the shape of the second-derivative normal form.
inline Tensor derivative_oracle(const std::vector<VectorCurve>& curves, std::size_t order) {
    if (order < 1 || order > 2)
        throw unsupported_error("derivative oracle: order must be 1 or 2");
    if (curves.size() < 2) throw shape_error("derivative oracle: need at least 2 modes");
    std::vector<std::size_t> dims;
    for (const auto& c : curves) {
        if (c.c0.empty()) throw shape_error("derivative oracle: empty base coefficient");
        dims.push_back(c.c0.size());
    }
    auto coeff = [&](std::size_t mode, std::size_t k) -> std::vector<Rational> {
        const auto& c = curves[mode];
        const auto& v = k == 0 ? c.c0 : (k == 1 ? c.c1 : c.c2);
        if (v.empty()) return std::vector<Rational>(dims[mode]);
        if (v.size() != dims[mode])
            throw shape_error("derivative oracle: coefficient length mismatch");
        return v;
    };
    const std::size_t n = curves.size();
    Tensor out{Shape(dims)};
    auto term = [&](const std::vector<std::size_t>& degs) {
        std::vector<std::vector<Rational>> f(n);
        for (std::size_t m = 0; m < n; ++m) f[m] = coeff(m, degs[m]);
        out = add(out, simple_tensor(f));
    };
    std::vector<std::size_t> degs(n, 0);
    if (order == 1) {
        for (std::size_t i = 0; i < n; ++i) {
            degs[i] = 1;
            term(degs);
            degs[i] = 0;
        }
    } else {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                degs[i] = 1;
                degs[j] = 1;
                term(degs);
                degs[i] = 0;
                degs[j] = 0;
            }
        for (std::size_t i = 0; i < n; ++i) {
            degs[i] = 2;
            term(degs);
            degs[i] = 0;
        }
    }
    return out;
}

} // namespace segre

#endif
