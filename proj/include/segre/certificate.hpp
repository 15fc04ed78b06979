#ifndef SEGRE_CERTIFICATE_HPP
#define SEGRE_CERTIFICATE_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace segre {

enum class Verdict { Member, NonMember };

inline const char* to_string(Verdict v) {
    return v == Verdict::Member ? "Member" : "NonMember";
}

// What a trace entry was evaluated on: a bipartition of the modes (Split),
// an ordered index pair (Pair, used for the exterior-flattening checks and
// for polarization bidegrees), or nothing (None, e.g. low-degree fill-in).
struct PartitionRef {
    enum class Kind { None, Split, Pair };
    Kind kind = Kind::None;
    std::vector<std::size_t> left, right;  // Split only, both sorted
    std::size_t a = 0, b = 0;              // Pair only

    static PartitionRef none() { return {}; }
    static PartitionRef split(std::vector<std::size_t> l, std::vector<std::size_t> r) {
        PartitionRef p;
        p.kind = Kind::Split;
        p.left = std::move(l);
        p.right = std::move(r);
        return p;
    }
    static PartitionRef pair(std::size_t a, std::size_t b) {
        PartitionRef p;
        p.kind = Kind::Pair;
        p.a = a;
        p.b = b;
        return p;
    }

    bool operator==(const PartitionRef&) const = default;
};

// One evaluated equation family: which family, on which partition, the
// computed rank and the bound it was tested against.
struct TraceEntry {
    std::string family;
    PartitionRef partition;
    std::size_t rank = 0;
    std::size_t bound = 0;
    bool ok = true;

    bool operator==(const TraceEntry&) const = default;
};

// NonMember implies witness present (the first failing entry in canonical
// order); Member implies every trace entry passed its bound.
struct Certificate {
    Verdict verdict = Verdict::Member;
    std::vector<TraceEntry> trace;
    std::optional<TraceEntry> witness;

    bool member() const { return verdict == Verdict::Member; }

    bool operator==(const Certificate&) const = default;
};

} // namespace segre

#endif
