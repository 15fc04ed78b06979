#ifndef SEGRE_MEMBERSHIP_HPP
#define SEGRE_MEMBERSHIP_HPP

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <functional>
#include <numeric>
#include <thread>
#include <vector>

#include "segre/certificate.hpp"
#include "segre/error.hpp"
#include "segre/flattening.hpp"
#include "segre/strassen.hpp"
#include "segre/tensor.hpp"

namespace segre {

struct Sigma3Options {
    // Evaluate every equation family even after a failure (default stops at
    // the witness).
    bool full_trace = false;
    // Worker cap for full-trace evaluation; 0 reads SEGRE_SIGMA3_THREADS and
    // falls back to the hardware count.
    unsigned threads = 0;
};

namespace detail {

inline unsigned thread_cap(unsigned requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("SEGRE_SIGMA3_THREADS")) {
        char* end = nullptr;
        unsigned long v = std::strtoul(env, &end, 10);
        if (end != env && *end == '\0') return v == 0 ? 1 : unsigned(std::min(v, 64ul));
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? hc : 1;
}

// Runs fn(0..count-1) on up to `cap` workers. Results must be written to
// disjoint slots; the caller defines all ordering by index, so scheduling
// cannot influence the outcome.
template <typename F>
void parallel_for(std::size_t count, unsigned cap, F&& fn) {
    const std::size_t workers = std::min<std::size_t>(cap, count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count || failed.load()) return;
                try {
                    fn(i);
                } catch (...) {
                    if (!failed.exchange(true)) error = std::current_exception();
                    return;
                }
            }
        });
    for (auto& th : pool) th.join();
    if (failed.load()) std::rethrow_exception(error);
}

inline TraceEntry subspace_entry(const Tensor& t, std::size_t mode) {
    Bipartition p({mode}, t.order());
    const std::size_t r = flattening_rank(t, p);
    return {"subspace", PartitionRef::split(p.left, p.right), r, 3, r <= 3};
}

} // namespace detail

// Decides membership in the third secant variety of the Segre product.
// Necessary and sufficient equation set: all single-mode flattening ranks
// <= 3 on the ambient tensor, all canonical bipartition flattening ranks
// <= 3 on the concise core, and the exterior-flattening rank bound for
// every ordered mode pair whose contracted mode has concise dimension >= 2.
// The trace lists the families in that fixed canonical order; the witness is
// the first failure in it regardless of evaluation schedule.
inline Certificate sigma3(const Tensor& t, const Sigma3Options& opt = {}) {
    Certificate cert;
    if (t.is_zero()) return cert;  // in every secant variety

    if (t.order() == 2) {
        // a matrix lies in the third secant iff its rank is at most 3
        Bipartition p({0}, 2);
        const std::size_t r = flattening_rank(t, p);
        TraceEntry entry{"flattening", PartitionRef::split(p.left, p.right), r, 3, r <= 3};
        cert.trace.push_back(entry);
        if (!entry.ok) {
            cert.verdict = Verdict::NonMember;
            cert.witness = entry;
        }
        return cert;
    }

    bool failed = false;
    auto push = [&](TraceEntry entry) {
        cert.trace.push_back(entry);
        if (!entry.ok && !failed) {
            failed = true;
            cert.witness = entry;
        }
        return entry.ok;
    };

    for (std::size_t m = 0; m < t.order(); ++m)
        if (!push(detail::subspace_entry(t, m)) && !opt.full_trace) {
            cert.verdict = Verdict::NonMember;
            return cert;
        }

    const Tensor core = concise_core(t).core;

    const auto parts = canonical_bipartitions(core.order());
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < core.order(); ++i) {
        if (core.dim(i) < 2) continue;  // wedge square vanishes, nothing to test
        for (std::size_t j = 0; j < core.order(); ++j)
            if (j != i) pairs.emplace_back(i, j);
    }

    auto flattening_entry = [&](std::size_t k) {
        const std::size_t r = flattening_rank(core, parts[k]);
        return TraceEntry{"flattening", PartitionRef::split(parts[k].left, parts[k].right),
                          r, 3, r <= 3};
    };
    auto strassen_entry = [&](std::size_t k) {
        auto [i, j] = pairs[k];
        const StrassenReport rep = strassen_ok(core, Tripartition(i, j, core.order()), 3);
        return TraceEntry{"strassen", PartitionRef::pair(i, j), rep.rank, rep.bound, rep.ok};
    };

    if (opt.full_trace) {
        std::vector<TraceEntry> entries(parts.size() + pairs.size());
        detail::parallel_for(entries.size(), detail::thread_cap(opt.threads),
                             [&](std::size_t k) {
                                 entries[k] = k < parts.size()
                                                  ? flattening_entry(k)
                                                  : strassen_entry(k - parts.size());
                             });
        for (auto& entry : entries) push(std::move(entry));
    } else {
        for (std::size_t k = 0; k < parts.size(); ++k)
            if (!push(flattening_entry(k))) {
                cert.verdict = Verdict::NonMember;
                return cert;
            }
        for (std::size_t k = 0; k < pairs.size(); ++k)
            if (!push(strassen_entry(k))) {
                cert.verdict = Verdict::NonMember;
                return cert;
            }
    }

    cert.verdict = failed ? Verdict::NonMember : Verdict::Member;
    return cert;
}

// Classical second-secant test: member iff every proper bipartition
// flattening has rank at most 2. Used for classification and corpus
// validation only, never inside sigma3.
inline Certificate sigma2(const Tensor& t) {
    Certificate cert;
    for (const auto& p : canonical_bipartitions(t.order())) {
        const std::size_t r = flattening_rank(t, p);
        TraceEntry entry{"flattening", PartitionRef::split(p.left, p.right), r, 2, r <= 2};
        cert.trace.push_back(entry);
        if (!entry.ok && !cert.witness) {
            cert.verdict = Verdict::NonMember;
            cert.witness = entry;
        }
    }
    return cert;
}

enum class CaseLabel { Case1, Case2, Case3, Case4, Outside };

inline const char* to_string(CaseLabel c) {
    switch (c) {
        case CaseLabel::Case1: return "Case1";
        case CaseLabel::Case2: return "Case2";
        case CaseLabel::Case3: return "Case3";
        case CaseLabel::Case4: return "Case4";
        case CaseLabel::Outside: return "Outside";
    }
    throw contract_error("case label: unknown value");
}

// Coarse location of a member among the proof's four cases: Case4 when the
// two largest concise modes (grouped against the rest) already pass the
// second-secant test, otherwise by the two largest concise dimensions
// (3,3) -> Case1, (3,2) -> Case2, (2,*) -> Case3. Non-members are Outside.
inline CaseLabel classify_case(const Tensor& t) {
    if (!sigma3(t).member()) return CaseLabel::Outside;
    if (t.is_zero()) return CaseLabel::Case4;

    const auto ranks = mode_ranks(t);
    std::vector<std::size_t> order(ranks.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return ranks[x] != ranks[y] ? ranks[x] > ranks[y] : x < y;
    });
    const std::size_t m1 = order[0], m2 = order[1];

    bool s2 = flattening_rank(t, Bipartition({m1}, t.order())) <= 2 &&
              flattening_rank(t, Bipartition({m2}, t.order())) <= 2;
    if (s2 && t.order() >= 3) {
        std::vector<std::size_t> both{std::min(m1, m2), std::max(m1, m2)};
        s2 = flattening_rank(t, Bipartition(both, t.order())) <= 2;
    }
    if (s2) return CaseLabel::Case4;

    const std::size_t d1 = ranks[m1], d2 = ranks[m2];
    if (d1 == 3 && d2 == 3) return CaseLabel::Case1;
    if (d1 == 3 && d2 == 2) return CaseLabel::Case2;
    if (d1 == 2) return CaseLabel::Case3;
    throw contract_error("classify: no case matches the concise dimensions");
}

} // namespace segre

#endif
