#include <catch2/catch_amalgamated.hpp>

#include "segre/normal_forms.hpp"
#include "segre/flattening.hpp"
#include "segre/strassen.hpp"
#include "segre/symmetric.hpp"
#include "helpers.hpp"

using segre::Family;
using segre::NormalFormSpec;
using segre::Rational;
using segre::Shape;
using segre::Tensor;
using segre::VectorCurve;

namespace {
Rational R(long n) { return Rational(n); }

NormalFormSpec mk(Family f, std::vector<std::size_t> dims, std::uint64_t seed,
                  std::size_t rank = 0) {
    NormalFormSpec s;
    s.family = f;
    s.dims = std::move(dims);
    s.seed = seed;
    s.rank = rank;
    return s;
}

bool passes_rank3_gates(const Tensor& t) {
    for (std::size_t m = 0; m < t.order(); ++m)
        if (segre::flattening_rank(t, segre::Bipartition({m}, t.order())) > 3) return false;
    for (const auto& p : segre::canonical_bipartitions(t.order()))
        if (segre::flattening_rank(t, p) > 3) return false;
    for (std::size_t i = 0; i < t.order(); ++i)
        for (std::size_t j = 0; j < t.order(); ++j) {
            if (i == j) continue;
            if (!segre::strassen_ok(t, segre::Tripartition(i, j, t.order()), 3).ok)
                return false;
        }
    return true;
}

bool sigma2_flats_ok(const Tensor& t) {
    for (const auto& p : segre::canonical_bipartitions(t.order()))
        if (segre::flattening_rank(t, p) > 2) return false;
    return true;
}
}

TEST_CASE("family names round-trip") {
    using P = std::pair<Family, std::size_t>;
    for (auto [f, r] : {P{Family::Sigma2_Point, 0}, P{Family::Sigma2_RankTwo, 0},
                        P{Family::Sigma2_Tangent, 0}, P{Family::Sigma3_Type1, 0},
                        P{Family::Sigma3_Type2, 0}, P{Family::Sigma3_Type3, 0},
                        P{Family::Sigma3_Type4, 0}, P{Family::Case3_Type1, 0},
                        P{Family::Case3_Type2, 0}, P{Family::GenericRank, 7}}) {
        auto [pf, pr] = segre::parse_family(segre::family_name(f, r));
        CHECK(pf == f);
        CHECK(pr == r);
    }
    CHECK_THROWS_AS(segre::parse_family("bogus"), segre::parse_error);
    CHECK_THROWS_AS(segre::parse_family("generic-rank"), segre::parse_error);
    CHECK_THROWS_AS(segre::parse_family("generic-rank0"), segre::parse_error);
    CHECK_THROWS_AS(segre::parse_family("generic-rankx"), segre::parse_error);
}

TEST_CASE("generation is deterministic in the seed") {
    for (Family f : {Family::Sigma2_Tangent, Family::Sigma3_Type3, Family::Case3_Type1}) {
        std::vector<std::size_t> dims =
            f == Family::Case3_Type1 ? std::vector<std::size_t>{2, 2, 2, 2}
                                     : std::vector<std::size_t>{3, 2, 3};
        CHECK(segre::generate(mk(f, dims, 99)) == segre::generate(mk(f, dims, 99)));
    }
    Tensor a = segre::generate(mk(Family::GenericRank, {3, 3, 3}, 1, 2));
    Tensor b = segre::generate(mk(Family::GenericRank, {3, 3, 3}, 2, 2));
    CHECK_FALSE(a == b);
}

TEST_CASE("border-rank-2 forms satisfy every rank-2 flattening bound") {
    for (Family f : {Family::Sigma2_Point, Family::Sigma2_RankTwo, Family::Sigma2_Tangent})
        for (std::uint64_t seed = 0; seed < 8; ++seed)
            for (auto dims : {std::vector<std::size_t>{3, 3, 3},
                              std::vector<std::size_t>{2, 2, 2, 2},
                              std::vector<std::size_t>{3, 2, 4}}) {
                Tensor t = segre::generate(mk(f, dims, seed));
                CHECK(sigma2_flats_ok(t));
                CHECK(passes_rank3_gates(t));
            }
}

TEST_CASE("point and generic rank-1 are simple tensors") {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        for (Family f : {Family::Sigma2_Point, Family::GenericRank}) {
            Tensor t = segre::generate(mk(f, {3, 2, 4}, seed, 1));
            CHECK(segre::mode_ranks(t) == std::vector<std::size_t>{1, 1, 1});
        }
    }
}

TEST_CASE("tangent and rank-two forms genuinely use two directions") {
    Tensor t = segre::generate(mk(Family::Sigma2_Tangent, {3, 3, 3}, 5));
    CHECK(segre::mode_ranks(t) == std::vector<std::size_t>{2, 2, 2});
    Tensor s = segre::generate(mk(Family::Sigma2_RankTwo, {3, 3, 3}, 5));
    CHECK(segre::mode_ranks(s) == std::vector<std::size_t>{2, 2, 2});
}

TEST_CASE("border-rank-3 forms satisfy every rank-3 bound") {
    for (Family f : {Family::Sigma3_Type1, Family::Sigma3_Type2, Family::Sigma3_Type3,
                     Family::Sigma3_Type4})
        for (std::uint64_t seed = 0; seed < 6; ++seed)
            for (auto dims : {std::vector<std::size_t>{3, 3, 3},
                              std::vector<std::size_t>{2, 2, 2, 2},
                              std::vector<std::size_t>{3, 2, 4}}) {
                Tensor t = segre::generate(mk(f, dims, seed));
                CHECK_FALSE(t.is_zero());
                CHECK(passes_rank3_gates(t));
            }
}

TEST_CASE("second-derivative form with pinned basis vectors is the indicator of weights 1 and 2") {
    NormalFormSpec spec = mk(Family::Sigma3_Type3, {2, 2, 2, 2}, 0);
    for (std::size_t m = 0; m < 4; ++m) {
        spec.fixed[{m, 0}] = {R(1), R(0)};
        spec.fixed[{m, 1}] = {R(0), R(1)};
        spec.fixed[{m, 2}] = {R(0), R(1)};
    }
    Tensor t = segre::generate(spec);
    Tensor expect{Shape({2, 2, 2, 2})};
    for (std::size_t off = 0; off < 16; ++off) {
        auto idx = segre::unflatten(expect.shape(), off);
        std::size_t weight = idx[0] + idx[1] + idx[2] + idx[3];
        if (weight == 1 || weight == 2) expect[off] = R(1);
    }
    CHECK(t == expect);
}

TEST_CASE("derivative oracle: first order is the Leibniz sum") {
    std::vector<VectorCurve> constant{{{R(1), R(2)}, {}, {}}, {{R(3), R(4)}, {}, {}}};
    CHECK(segre::derivative_oracle(constant, 1).is_zero());

    std::vector<VectorCurve> linear{{{R(1), R(2)}, {R(3), R(4)}, {}},
                                    {{R(5), R(6)}, {R(7), R(8)}, {}}};
    Tensor expect = segre::add(segre::simple_tensor({{R(3), R(4)}, {R(5), R(6)}}),
                               segre::simple_tensor({{R(1), R(2)}, {R(7), R(8)}}));
    CHECK(segre::derivative_oracle(linear, 1) == expect);

    CHECK_THROWS_AS(segre::derivative_oracle(linear, 0), segre::unsupported_error);
    CHECK_THROWS_AS(segre::derivative_oracle(linear, 3), segre::unsupported_error);
    CHECK_THROWS_AS(segre::derivative_oracle({linear[0]}, 1), segre::shape_error);
}

TEST_CASE("second-derivative form equals the curve oracle on matched parameters") {
    std::mt19937_64 g(606060);
    for (int it = 0; it < 4; ++it) {
        std::vector<std::size_t> dims{3, 2, 4, 2};
        NormalFormSpec spec = mk(Family::Sigma3_Type3, dims, 0);
        std::vector<VectorCurve> curves;
        for (std::size_t m = 0; m < dims.size(); ++m) {
            VectorCurve c;
            c.c0 = th::rnd_vector(g, dims[m]);
            c.c1 = th::rnd_vector(g, dims[m]);
            c.c2 = th::rnd_vector(g, dims[m]);
            spec.fixed[{m, 0}] = c.c0;
            spec.fixed[{m, 1}] = c.c1;
            spec.fixed[{m, 2}] = c.c2;
            curves.push_back(c);
        }
        CHECK(segre::generate(spec) == segre::derivative_oracle(curves, 2));
    }
}

TEST_CASE("tangent-plus-point form decomposes through the curve oracle") {
    std::mt19937_64 g(616161);
    std::vector<std::size_t> dims{2, 3, 2};
    NormalFormSpec spec = mk(Family::Sigma3_Type2, dims, 0);
    std::vector<VectorCurve> curves;
    std::vector<std::vector<Rational>> third;
    for (std::size_t m = 0; m < dims.size(); ++m) {
        VectorCurve c;
        c.c0 = th::rnd_vector(g, dims[m]);
        c.c1 = th::rnd_vector(g, dims[m]);
        spec.fixed[{m, 0}] = c.c0;
        spec.fixed[{m, 1}] = c.c1;
        third.push_back(th::rnd_vector(g, dims[m]));
        spec.fixed[{m, 2}] = third.back();
        curves.push_back(c);
    }
    Tensor expect = segre::add(segre::derivative_oracle(curves, 1), segre::simple_tensor(third));
    CHECK(segre::generate(spec) == expect);
}

TEST_CASE("two-tangent form decomposes through the curve oracle") {
    std::mt19937_64 g(626263);
    std::vector<std::size_t> dims{3, 2, 2};
    NormalFormSpec spec = mk(Family::Sigma3_Type4, dims, 0);
    std::vector<VectorCurve> at_x, at_y;
    for (std::size_t m = 0; m < dims.size(); ++m) {
        auto a0 = th::rnd_vector(g, dims[m]);
        auto a1 = th::rnd_vector(g, dims[m]);
        auto a2 = th::rnd_vector(g, dims[m]);
        spec.fixed[{m, 0}] = a0;
        spec.fixed[{m, 1}] = a1;
        spec.fixed[{m, 2}] = a2;
        at_x.push_back({a0, a2, {}});
        // the second tangent sits at the collinear point: first slot moved to
        // a1, direction zero there and a1 elsewhere
        VectorCurve cy;
        cy.c0 = m == 0 ? a1 : a0;
        cy.c1 = m == 0 ? std::vector<Rational>(dims[m]) : a1;
        at_y.push_back(cy);
    }
    Tensor expect = segre::add(segre::derivative_oracle(at_x, 1),
                               segre::derivative_oracle(at_y, 1));
    CHECK(segre::generate(spec) == expect);
}

TEST_CASE("full-rank span form: shared diagonal slice, spanning carriers") {
    NormalFormSpec spec = mk(Family::Case3_Type1, {2, 2, 2, 2}, 17);
    spec.fixed[{0, 0}] = {R(1), R(0)};
    spec.fixed[{0, 1}] = {R(0), R(1)};
    spec.fixed[{1, 0}] = {R(1), R(0)};
    spec.fixed[{1, 1}] = {R(0), R(1)};
    Tensor t = segre::generate(spec);
    segre::Matrix m = segre::flatten(t, segre::Bipartition({0, 1}, 4));
    REQUIRE(m.rows() == 4);
    for (std::size_t k = 0; k < m.cols(); ++k) CHECK(m(0, k) == m(3, k));
    CHECK(segre::rank(m) == 3);
    CHECK(passes_rank3_gates(t));

    auto phi = segre::kernel_full_rank_element(t, segre::Tripartition(0, 1, 4));
    REQUIRE(phi.has_value());
    CHECK(segre::det(phi->matrix) != R(0));
    auto rep = segre::symmetrization_pipeline(t, 0);
    CHECK(rep.ok);
}

TEST_CASE("degenerate span form: vanishing corner slice, independent carriers, blocked pipeline") {
    NormalFormSpec spec = mk(Family::Case3_Type2, {2, 2, 2, 2}, 23);
    spec.fixed[{0, 0}] = {R(1), R(0)};
    spec.fixed[{0, 1}] = {R(0), R(1)};
    spec.fixed[{1, 0}] = {R(1), R(0)};
    spec.fixed[{1, 1}] = {R(0), R(1)};
    Tensor t = segre::generate(spec);
    segre::Matrix m = segre::flatten(t, segre::Bipartition({0, 1}, 4));
    for (std::size_t k = 0; k < m.cols(); ++k) CHECK(m(3, k).is_zero());
    CHECK(segre::rank(m) == 3);
    CHECK(passes_rank3_gates(t));

    CHECK_FALSE(segre::kernel_full_rank_element(t, segre::Tripartition(0, 1, 4)).has_value());
    auto rep = segre::symmetrization_pipeline(t, 0);
    CHECK_FALSE(rep.ok);
    CHECK(rep.blocking_mode == 1);
}

TEST_CASE("span forms validate their shapes") {
    CHECK_THROWS_AS(segre::generate(mk(Family::Case3_Type1, {3, 2, 2}, 0)),
                    segre::shape_error);
    CHECK_THROWS_AS(segre::generate(mk(Family::Case3_Type1, {2, 2}, 0)), segre::shape_error);
    CHECK_THROWS_AS(segre::generate(mk(Family::Case3_Type2, {2, 2, 2}, 0)),
                    segre::shape_error);
    CHECK_NOTHROW(segre::generate(mk(Family::Case3_Type1, {2, 2, 2}, 0)));
}

TEST_CASE("generic small-rank sums") {
    Tensor t3 = segre::generate(mk(Family::GenericRank, {3, 3, 3}, 40, 3));
    CHECK(segre::mode_ranks(t3) == std::vector<std::size_t>{3, 3, 3});
    CHECK(passes_rank3_gates(t3));

    Tensor t4 = segre::generate(mk(Family::GenericRank, {3, 3, 3}, 41, 4));
    CHECK_FALSE(segre::strassen_ok(t4, segre::Tripartition(0, 1, 3), 3).ok);

    CHECK_THROWS_AS(segre::generate(mk(Family::GenericRank, {2, 2}, 0, 0)),
                    segre::contract_error);
    CHECK_THROWS_AS(segre::generate(mk(Family::GenericRank, {2, 2}, 0, 5)),
                    segre::shape_error);
}

TEST_CASE("generator rejects malformed specs") {
    CHECK_THROWS_AS(segre::generate(mk(Family::Sigma3_Type1, {3}, 0)), segre::shape_error);
    CHECK_THROWS_AS(segre::generate(mk(Family::Sigma3_Type1, {3, 0}, 0)), segre::shape_error);
    NormalFormSpec bad = mk(Family::Sigma2_Point, {2, 2}, 0);
    bad.fixed[{0, 0}] = {R(1), R(2), R(3)};
    CHECK_THROWS_AS(segre::generate(bad), segre::shape_error);
    NormalFormSpec badc = mk(Family::Case3_Type2, {2, 2, 2, 2}, 0);
    for (std::size_t j = 0; j < 3; ++j) {
        badc.fixed[{2, j}] = {R(1), R(0)};
        badc.fixed[{3, j}] = {R(1), R(0)};
    }
    CHECK_THROWS_AS(segre::generate(badc), segre::degenerate_error);
}
