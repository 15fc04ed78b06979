#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "segre/io.hpp"
#include "segre/membership.hpp"
#include "segre/normal_forms.hpp"
#include "segre/symmetric.hpp"

using nlohmann::ordered_json;
using segre::Rational;
using segre::Shape;
using segre::Tensor;

namespace {
Tensor sample_tensor() {
    segre::NormalFormSpec s;
    s.family = segre::Family::Sigma3_Type3;
    s.dims = {3, 2, 4};
    s.seed = 99;
    return segre::generate(s);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

struct TempFile {
    std::string path;
    explicit TempFile(const char* name) {
        path = (std::filesystem::temp_directory_path() / name).string();
    }
    ~TempFile() { std::remove(path.c_str()); }
};
}

TEST_CASE("dense round-trip is byte exact") {
    Tensor t = sample_tensor();
    TempFile f("segre_io_dense.json");
    segre::write_tensor(f.path, t);
    Tensor back = segre::read_tensor(f.path);
    CHECK(back == t);

    TempFile g("segre_io_dense2.json");
    segre::write_tensor(g.path, back);
    CHECK(slurp(f.path) == slurp(g.path));
}

TEST_CASE("sparse round-trip matches dense and skips zeros") {
    Tensor t = sample_tensor();
    TempFile f("segre_io_sparse.json");
    segre::write_tensor(f.path, t, true);
    CHECK(segre::read_tensor(f.path) == t);

    std::size_t nonzero = 0;
    for (std::size_t k = 0; k < t.size(); ++k)
        if (!t[k].is_zero()) ++nonzero;
    ordered_json j = segre::read_json_file(f.path);
    CHECK(j["entries"].size() == nonzero);

    Tensor z{Shape({2, 2, 2})};
    ordered_json jz = segre::tensor_to_json(z, true);
    CHECK(jz["entries"].empty());
    CHECK(segre::tensor_from_json(jz) == z);
}

TEST_CASE("rationals are re-canonicalized on read") {
    ordered_json j;
    j["shape"] = {2, 2};
    j["entries"] = {"2/4", "-0", "007", "-10/5"};
    Tensor t = segre::tensor_from_json(j);
    CHECK(t[0] == Rational(1, 2));
    CHECK(t[1] == Rational(0));
    CHECK(t[2] == Rational(7));
    CHECK(t[3] == Rational(-2));
}

TEST_CASE("malformed tensor files give field diagnostics") {
    auto reject = [](const ordered_json& j, const std::string& needle) {
        try {
            segre::tensor_from_json(j);
            FAIL("expected parse_error for " + j.dump());
        } catch (const segre::parse_error& e) {
            INFO(e.what());
            CHECK(std::string(e.what()).find(needle) != std::string::npos);
        }
    };

    reject(ordered_json::array(), "top level");
    reject({{"entries", ordered_json::array()}}, "missing field 'shape'");
    reject({{"shape", {2, 2}}}, "missing field 'entries'");
    reject({{"shape", {2, 2}}, {"entries", ordered_json::array()}, {"extra", 1}}, "unknown field");
    reject({{"shape", 4}, {"entries", ordered_json::array()}}, "shape: expected an array");
    reject({{"shape", {4}}, {"entries", ordered_json::array()}}, "at least 2 modes");
    reject({{"shape", {2, 0}}, {"entries", ordered_json::array()}}, "shape[1]");
    reject({{"shape", {2, -3}}, {"entries", ordered_json::array()}}, "nonnegative");
    reject({{"shape", {1 << 15, 1 << 15}}, {"entries", ordered_json::array({"1"})}}, "too large");
    reject({{"shape", {2, 2}}, {"entries", {"1", "2"}}}, "dense array has 2 values");
    reject({{"shape", {2, 2}}, {"entries", {"1", "2", "x", "4"}}}, "entries[2]");
    reject({{"shape", {2, 2}}, {"entries", {"1", "2", "1/0", "4"}}}, "denominator");
    reject({{"shape", {2, 2}}, {"entries", {"1", "2", 3, "4"}}}, "entries[2]");

    ordered_json rec;
    rec["index"] = {0, 1};
    rec["value"] = "5";
    auto sp = [&](ordered_json r) {
        return ordered_json{{"shape", {2, 2}}, {"entries", ordered_json::array({r})}};
    };
    reject(sp(42), "expected an object");
    ordered_json bad = rec;
    bad.erase("value");
    reject(sp(bad), "missing field 'value'");
    bad = rec;
    bad["note"] = "hi";
    reject(sp(bad), "unknown field 'note'");
    bad = rec;
    bad["index"] = {0, 1, 0};
    reject(sp(bad), "expected 2 coordinates");
    bad = rec;
    bad["index"] = {0, 5};
    reject(sp(bad), "out of range");
    bad = rec;
    bad["value"] = "3.5";
    reject(sp(bad), ".value");

    ordered_json dup;
    dup["shape"] = {2, 2};
    dup["entries"] = ordered_json::array({rec, rec});
    reject(dup, "duplicate");
}

TEST_CASE("file errors name the path") {
    CHECK_THROWS_MATCHES(segre::read_tensor("/nonexistent/t.json"), segre::parse_error,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("/nonexistent/t.json")));
    TempFile f("segre_io_bad.json");
    {
        std::ofstream out(f.path);
        out << "{\"shape\": [2, 2,";
    }
    CHECK_THROWS_MATCHES(
        segre::read_tensor(f.path), segre::parse_error,
        Catch::Matchers::MessageMatches(Catch::Matchers::ContainsSubstring(f.path)));
}

TEST_CASE("certificate serialization follows the schema") {
    segre::NormalFormSpec s;
    s.family = segre::Family::GenericRank;
    s.dims = {3, 3, 3};
    s.seed = 11;
    s.rank = 4;
    auto cert = segre::sigma3(segre::generate(s));
    ordered_json j = segre::to_json(cert);

    CHECK(j["verdict"] == "non-member");
    REQUIRE(j["witness"].is_object());
    CHECK(j["witness"]["family"] == "strassen");
    CHECK(j["witness"]["partition"]["a"] == 0);
    CHECK(j["witness"]["partition"]["b"] == 1);
    CHECK(j["witness"]["rank"] == 8);
    CHECK(j["witness"]["bound"] == 6);
    REQUIRE(j["trace"].is_array());
    for (const auto& e : j["trace"]) {
        REQUIRE(e.is_object());
        CHECK(e.size() == 4);
        auto it = e.begin();
        CHECK(it.key() == "family");
        CHECK((++it).key() == "partition");
        CHECK((++it).key() == "rank");
        CHECK((++it).key() == "bound");
    }
    // split partitions render as [[left],[right]]
    const auto& first = j["trace"][0];
    CHECK(first["family"] == "subspace");
    REQUIRE(first["partition"].is_array());
    CHECK(first["partition"][0] == ordered_json::array({0}));
    CHECK(first["partition"][1] == ordered_json::array({1, 2}));

    s.family = segre::Family::Sigma3_Type1;
    s.rank = 0;
    ordered_json jm = segre::to_json(segre::sigma3(segre::generate(s)));
    CHECK(jm["verdict"] == "member");
    CHECK(jm["witness"].is_null());

    // a degenerate partition (degree <= 5 forms) renders as null
    auto fills = segre::binary_sigma3(segre::power_form({Rational(1), Rational(2)}, 4));
    ordered_json jf = segre::to_json(fills);
    CHECK(jf["trace"][0]["family"] == "fills");
    CHECK(jf["trace"][0]["partition"].is_null());
}

TEST_CASE("serialized certificates are deterministic") {
    segre::NormalFormSpec s;
    s.family = segre::Family::GenericRank;
    s.dims = {3, 3, 3};
    s.seed = 31;
    s.rank = 4;
    Tensor t = segre::generate(s);
    segre::Sigma3Options one, four;
    one.full_trace = four.full_trace = true;
    one.threads = 1;
    four.threads = 4;
    CHECK(segre::to_json(segre::sigma3(t, one)).dump(2) ==
          segre::to_json(segre::sigma3(t, four)).dump(2));
}
