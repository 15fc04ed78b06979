#ifndef SEGRE_IO_HPP
#define SEGRE_IO_HPP

#include <cstddef>
#include <fstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "segre/certificate.hpp"
#include "segre/error.hpp"
#include "segre/rational.hpp"
#include "segre/tensor.hpp"

// Tensor files are UTF-8 JSON objects {"shape": [...], "entries": ...} where
// entries is either a dense array of rational strings (row-major, last index
// fastest) or a sparse array of {"index": [...], "value": "..."} records.
// All indices are 0-based. Rationals are strings matching
// -?[0-9]+(/[1-9][0-9]*)?; they are re-canonicalized on read, so round-trips
// through write/read are byte-exact.

namespace segre {

namespace detail {

inline std::size_t json_nat(const nlohmann::ordered_json& j, const std::string& where) {
    if (j.is_number_unsigned()) return j.get<std::size_t>();
    if (j.is_number_integer() && j.get<long long>() >= 0)
        return static_cast<std::size_t>(j.get<long long>());
    throw parse_error(where + ": expected a nonnegative integer");
}

inline Rational json_rational(const nlohmann::ordered_json& j, const std::string& where) {
    if (!j.is_string()) throw parse_error(where + ": expected a rational string");
    try {
        return Rational::parse(j.get<std::string>());
    } catch (const parse_error& e) {
        throw parse_error(where + ": " + e.what());
    }
}

} // namespace detail

inline Tensor tensor_from_json(const nlohmann::ordered_json& j) {
    if (!j.is_object()) throw parse_error("tensor file: top level must be an object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (it.key() != "shape" && it.key() != "entries")
            throw parse_error("tensor file: unknown field '" + it.key() + "'");
    if (!j.contains("shape")) throw parse_error("tensor file: missing field 'shape'");
    if (!j.contains("entries")) throw parse_error("tensor file: missing field 'entries'");

    const auto& js = j.at("shape");
    if (!js.is_array()) throw parse_error("shape: expected an array");
    if (js.size() < 2) throw parse_error("shape: at least 2 modes required");
    std::vector<std::size_t> dims;
    std::size_t total = 1;
    for (std::size_t m = 0; m < js.size(); ++m) {
        const std::string at = "shape[" + std::to_string(m) + "]";
        std::size_t d = detail::json_nat(js[m], at);
        if (d == 0) throw parse_error(at + ": zero mode dimension");
        if (total > (std::size_t(1) << 28) / d) throw parse_error("shape: tensor too large");
        total *= d;
        dims.push_back(d);
    }

    Tensor t{Shape(dims)};
    const auto& je = j.at("entries");
    if (!je.is_array()) throw parse_error("entries: expected an array");
    if (!je.empty() && je.front().is_string()) {
        // dense: one rational string per cell
        if (je.size() != total)
            throw parse_error("entries: dense array has " + std::to_string(je.size()) +
                              " values but the shape holds " + std::to_string(total));
        for (std::size_t k = 0; k < total; ++k)
            t[k] = detail::json_rational(je[k], "entries[" + std::to_string(k) + "]");
    } else {
        // sparse: explicit cells only, unmentioned cells are zero
        std::vector<bool> seen(total, false);
        for (std::size_t k = 0; k < je.size(); ++k) {
            const std::string at = "entries[" + std::to_string(k) + "]";
            const auto& rec = je[k];
            if (!rec.is_object())
                throw parse_error(at + ": expected an object with 'index' and 'value'");
            for (auto it = rec.begin(); it != rec.end(); ++it)
                if (it.key() != "index" && it.key() != "value")
                    throw parse_error(at + ": unknown field '" + it.key() + "'");
            if (!rec.contains("index")) throw parse_error(at + ": missing field 'index'");
            if (!rec.contains("value")) throw parse_error(at + ": missing field 'value'");
            const auto& ji = rec.at("index");
            if (!ji.is_array() || ji.size() != dims.size())
                throw parse_error(at + ".index: expected " + std::to_string(dims.size()) +
                                  " coordinates");
            std::vector<std::size_t> idx;
            for (std::size_t m = 0; m < dims.size(); ++m) {
                const std::string iat = at + ".index[" + std::to_string(m) + "]";
                std::size_t c = detail::json_nat(ji[m], iat);
                if (c >= dims[m])
                    throw parse_error(iat + ": coordinate " + std::to_string(c) +
                                      " is out of range for dimension " + std::to_string(dims[m]));
                idx.push_back(c);
            }
            const std::size_t off = flat_index(t.shape(), idx);
            if (seen[off]) throw parse_error(at + ".index: duplicate multi-index");
            seen[off] = true;
            t[off] = detail::json_rational(rec.at("value"), at + ".value");
        }
    }
    return t;
}

inline nlohmann::ordered_json tensor_to_json(const Tensor& t, bool sparse = false) {
    nlohmann::ordered_json j;
    j["shape"] = t.shape().dims;
    auto entries = nlohmann::ordered_json::array();
    if (sparse) {
        for (std::size_t off = 0; off < t.size(); ++off) {
            if (t[off].is_zero()) continue;
            nlohmann::ordered_json rec;
            rec["index"] = unflatten(t.shape(), off);
            rec["value"] = t[off].str();
            entries.push_back(std::move(rec));
        }
    } else {
        for (std::size_t off = 0; off < t.size(); ++off) entries.push_back(t[off].str());
    }
    j["entries"] = std::move(entries);
    return j;
}

inline nlohmann::ordered_json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open '" + path + "'");
    try {
        return nlohmann::ordered_json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw parse_error(path + ": " + e.what());
    }
}

inline Tensor read_tensor(const std::string& path) {
    nlohmann::ordered_json j = read_json_file(path);
    try {
        return tensor_from_json(j);
    } catch (const parse_error& e) {
        throw parse_error(path + ": " + e.what());
    }
}

inline void write_json_file(const std::string& path, const nlohmann::ordered_json& j) {
    std::ofstream out(path);
    if (!out) throw parse_error("cannot open '" + path + "' for writing");
    out << j.dump(2) << '\n';
    if (!out) throw parse_error("write to '" + path + "' failed");
}

inline void write_tensor(const std::string& path, const Tensor& t, bool sparse = false) {
    write_json_file(path, tensor_to_json(t, sparse));
}

// Certificates serialize with lowercase verdicts; a split partition becomes
// [[left], [right]], a mode pair {"a": i, "b": j}, and an absent partition or
// witness null.
inline nlohmann::ordered_json to_json(const PartitionRef& p) {
    switch (p.kind) {
    case PartitionRef::Kind::Split:
        return nlohmann::ordered_json::array({p.left, p.right});
    case PartitionRef::Kind::Pair: {
        nlohmann::ordered_json j;
        j["a"] = p.a;
        j["b"] = p.b;
        return j;
    }
    default:
        return nullptr;
    }
}

inline nlohmann::ordered_json to_json(const TraceEntry& e) {
    nlohmann::ordered_json j;
    j["family"] = e.family;
    j["partition"] = to_json(e.partition);
    j["rank"] = e.rank;
    j["bound"] = e.bound;
    return j;
}

inline nlohmann::ordered_json to_json(const Certificate& c) {
    nlohmann::ordered_json j;
    j["verdict"] = c.verdict == Verdict::Member ? "member" : "non-member";
    auto trace = nlohmann::ordered_json::array();
    for (const auto& e : c.trace) trace.push_back(to_json(e));
    j["trace"] = std::move(trace);
    j["witness"] = c.witness ? to_json(*c.witness) : nlohmann::ordered_json(nullptr);
    return j;
}

} // namespace segre

#endif
