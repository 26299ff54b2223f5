#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "rnca/config.hpp"
#include "rnca/flow.hpp"
#include "rnca/rule.hpp"

namespace rnca {

/// A named failed check plus the offending tuple, carried inside NotNCCA
/// verdicts and flow-extraction failures.
struct Violation {
    std::string check;
    std::string detail;

    std::string to_string() const { return check + ": " + detail; }
};

/// Lemma-2 refutation: g(a,b) = alpha but the ten arithmetic-progression
/// values {a..a+4*alpha, b..b-4*alpha} do not all lie in Q.
struct FlowWitness {
    State a = 0;
    State b = 0;
    int alpha = 0;
    bool operator==(const FlowWitness&) const = default;
};

/// g is forced by f through f(x,y,y,y,y) = x + 4 g(x,y).
/// Returns a FlowSpec carrying only the direct part (T all zero).
inline std::variant<FlowSpec, Violation> extract_direct_flow(const Rule& rule) {
    const StateSet& q = rule.states();
    FlowSpec flow(q);
    const int n = q.size();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            int diff = rule.apply_indices(i, j, j, j, j) - q[i];
            if (diff % 4 != 0)
                return Violation{"NonDivisibleFlow",
                                 "f(" + std::to_string(q[i]) + "," + std::to_string(q[j]) +
                                     ",...) - " + std::to_string(q[i]) + " = " +
                                     std::to_string(diff) + " is not divisible by 4"};
            if (i < j) flow.set_direct(q[i], q[j], diff / 4);
        }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            int expected = (rule.apply_indices(i, j, j, j, j) - q[i]) / 4;
            if (flow.direct(q[i], q[j]) != expected)
                return Violation{"AntisymmetryViolation",
                                 "g(" + std::to_string(q[i]) + "," + std::to_string(q[j]) +
                                     ") != -g(" + std::to_string(q[j]) + "," +
                                     std::to_string(q[i]) + ")"};
        }
    return flow;
}

/// Theorem-1 decision: NCCA verdict with the flow certificate, or the first
/// named violation. When the verdict is NCCA, build_rule on the certificate
/// reproduces the input table exactly.
struct DecompositionResult {
    std::optional<FlowSpec> flow;
    std::optional<Violation> violation;

    bool is_ncca() const { return flow.has_value(); }
};

inline DecompositionResult decompose(const Rule& rule) {
    auto fail = [](std::string check, std::string detail) {
        return DecompositionResult{std::nullopt, Violation{std::move(check), std::move(detail)}};
    };
    if (!rotation_symmetry_check(rule))
        return fail("RotationAsymmetry", "f(c,u,r,d,l) != f(c,r,d,l,u) for some tuple");

    auto extracted = extract_direct_flow(rule);
    if (std::holds_alternative<Violation>(extracted))
        return DecompositionResult{std::nullopt, std::get<Violation>(extracted)};
    FlowSpec flow = std::get<FlowSpec>(std::move(extracted));

    const StateSet& q = rule.states();
    const int n = q.size();
    // Residual after removing the direct flow; must not depend on the center.
    auto residual = [&](int ic, int iu, int ir, int id, int il) {
        return rule.apply_indices(ic, iu, ir, id, il) - q[ic] - flow.direct(q[ic], q[iu]) -
               flow.direct(q[ic], q[ir]) - flow.direct(q[ic], q[id]) - flow.direct(q[ic], q[il]);
    };
    for (int iu = 0; iu < n; ++iu)
        for (int ir = 0; ir < n; ++ir)
            for (int id = 0; id < n; ++id)
                for (int il = 0; il < n; ++il) {
                    int r0 = residual(0, iu, ir, id, il);
                    for (int ic = 1; ic < n; ++ic)
                        if (residual(ic, iu, ir, id, il) != r0)
                            return fail("CenterDependence",
                                        "residual at (" + std::to_string(q[iu]) + "," +
                                            std::to_string(q[ir]) + "," + std::to_string(q[id]) +
                                            "," + std::to_string(q[il]) + ") differs between c=" +
                                            std::to_string(q[0]) + " and c=" +
                                            std::to_string(q[ic]));
                }

    // Recover the triple table via repetition invariance: T(x,y,z) = R(x,x,y,z).
    auto triple_raw = [&](int ix, int iy, int iz) { return residual(0, ix, ix, iy, iz); };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                int v = triple_raw(i, j, k);
                std::string at = "(" + std::to_string(q[i]) + "," + std::to_string(q[j]) + "," +
                                 std::to_string(q[k]) + ")";
                if ((i == j || j == k || i == k) && v != 0)
                    return fail("TripleInconsistency", "T" + at + " nonzero on repeated states");
                if (triple_raw(j, k, i) != v)
                    return fail("TripleInconsistency", "T" + at + " not rotation invariant");
                if (triple_raw(k, j, i) != -v)
                    return fail("TripleInconsistency", "T" + at + " not reversal antisymmetric");
            }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k) {
                flow.set_triple(q[i], q[j], q[k], triple_raw(i, j, k));
                flow.set_triple(q[i], q[k], q[j], triple_raw(i, k, j));
            }
    // The full 4-cycle must split as the triple fan everywhere.
    for (int iu = 0; iu < n; ++iu)
        for (int ir = 0; ir < n; ++ir)
            for (int id = 0; id < n; ++id)
                for (int il = 0; il < n; ++il)
                    if (residual(0, iu, ir, id, il) !=
                        flow.triple(q[iu], q[ir], q[id]) + flow.triple(q[iu], q[id], q[il]))
                        return fail("TripleInconsistency",
                                    "4-cycle value at (" + std::to_string(q[iu]) + "," +
                                        std::to_string(q[ir]) + "," + std::to_string(q[id]) +
                                        "," + std::to_string(q[il]) +
                                        ") does not split into triples");
    if (auto why = flow.invariant_violation())
        return fail("TripleInconsistency", *why);
    return DecompositionResult{std::move(flow), std::nullopt};
}

struct Exhaustive {};
struct Sampled {
    uint64_t count = 10000;
    uint64_t seed = 0;
};
using SweepMode = std::variant<Exhaustive, Sampled>;

struct ConservationViolation {
    Configuration window;
    long long sum_before = 0;
    long long sum_after = 0;
};

struct ConservationReport {
    int width = 0;
    int height = 0;
    SweepMode mode;
    uint64_t checked = 0;
    uint64_t violations_found = 0;
    std::vector<ConservationViolation> violations; // first few exemplars

    bool clean() const { return violations_found == 0; }
};

inline uint64_t default_sweep_budget() { return 100'000'000ULL; }

/// Embeds every candidate w x h window in a quiescent background, steps
/// once and compares total sums. Exhaustive mode walks all |Q|^(w*h)
/// contents in odometer order; sampled mode draws seeded uniform contents.
inline ConservationReport check_conservation_window(const Rule& rule, int width, int height,
                                                    SweepMode mode,
                                                    uint64_t budget = default_sweep_budget(),
                                                    size_t max_recorded = 8) {
    if (width < 1 || height < 1) throw Error("window dimensions must be >= 1");
    const StateSet& q = rule.states();
    const int n = q.size();
    const int cells = width * height;
    const int iq = q.index_of(rule.quiescent());

    if (std::holds_alternative<Exhaustive>(mode)) {
        double total = 1;
        for (int i = 0; i < cells; ++i) {
            total *= n;
            if (total > static_cast<double>(budget))
                throw BudgetExceeded("exhaustive sweep of " + std::to_string(n) + "^" +
                                     std::to_string(cells) + " configurations exceeds budget " +
                                     std::to_string(budget));
        }
    }

    // Dense buffer of state indices: window at [1..width] x [1..height],
    // ring of quiescent around it; reads outside the buffer are quiescent.
    const int bw = width + 2, bh = height + 2;
    std::vector<int> buf(static_cast<size_t>(bw) * bh, iq);
    auto buf_at = [&](int x, int y) {
        if (x < 0 || x >= bw || y < 0 || y >= bh) return iq;
        return buf[static_cast<size_t>(y) * bw + x];
    };

    ConservationReport report{width, height, mode, 0, 0, {}};
    auto check_current = [&]() {
        long long before = 0, after = 0;
        for (int y = 0; y < bh; ++y)
            for (int x = 0; x < bw; ++x) {
                int ic = buf_at(x, y);
                before += q[ic] - rule.quiescent();
                after += rule.apply_indices(ic, buf_at(x, y + 1), buf_at(x + 1, y),
                                            buf_at(x, y - 1), buf_at(x - 1, y)) -
                         rule.quiescent();
            }
        ++report.checked;
        if (before != after) {
            ++report.violations_found;
            if (report.violations.size() < max_recorded) {
                Configuration window(rule.quiescent());
                for (int y = 0; y < height; ++y)
                    for (int x = 0; x < width; ++x)
                        window.set(x, y, q[buf_at(x + 1, y + 1)]);
                report.violations.push_back({std::move(window), before, after});
            }
        }
    };

    if (std::holds_alternative<Exhaustive>(mode)) {
        std::vector<int> digits(static_cast<size_t>(cells), 0);
        for (;;) {
            for (int i = 0; i < cells; ++i)
                buf[static_cast<size_t>(1 + i / width) * bw + (1 + i % width)] = digits[i];
            check_current();
            int i = cells - 1;
            while (i >= 0 && digits[static_cast<size_t>(i)] == n - 1) {
                digits[static_cast<size_t>(i)] = 0;
                --i;
            }
            if (i < 0) break;
            ++digits[static_cast<size_t>(i)];
        }
    } else {
        const Sampled& sampled = std::get<Sampled>(mode);
        std::mt19937_64 rng(sampled.seed);
        std::uniform_int_distribution<int> dist(0, n - 1);
        for (uint64_t t = 0; t < sampled.count; ++t) {
            for (int i = 0; i < cells; ++i)
                buf[static_cast<size_t>(1 + i / width) * bw + (1 + i % width)] = dist(rng);
            check_current();
        }
    }
    return report;
}

/// Returns the Lemma-2 refutations of g: pairs whose arithmetic progressions
/// escape Q. An empty list makes g viable for a closed rule.
inline std::vector<FlowWitness> lemma2_closure_check(const FlowSpec& flow) {
    const StateSet& q = flow.states();
    std::vector<FlowWitness> refutations;
    for (int i = 0; i < q.size(); ++i)
        for (int j = 0; j < q.size(); ++j) {
            int alpha = flow.direct(q[i], q[j]);
            if (alpha == 0) continue;
            bool ok = true;
            for (int k = 1; k <= 4; ++k)
                if (!q.contains(q[i] + k * alpha) || !q.contains(q[j] - k * alpha)) ok = false;
            if (!ok) refutations.push_back({q[i], q[j], alpha});
        }
    return refutations;
}

namespace detail {

/// Candidate values of g(a,b) passing the Lemma-2 progression test.
inline std::vector<int> direct_flow_candidates(const StateSet& q, State a, State b) {
    std::vector<int> out;
    int span = q.max() - q.min();
    for (int alpha = -span / 4; alpha <= span / 4; ++alpha) {
        bool ok = true;
        for (int k = 1; k <= 4; ++k)
            if (!q.contains(a + k * alpha) || !q.contains(b - k * alpha)) ok = false;
        if (ok || alpha == 0) out.push_back(alpha);
    }
    return out;
}

/// Closure of all tuples whose 4-cycle term provably vanishes (neighborhoods
/// with at most two distinct neighbor states). Prunes g before T is chosen.
inline bool direct_part_closed(const FlowSpec& flow) {
    const StateSet& q = flow.states();
    const int n = q.size();
    for (int ic = 0; ic < n; ++ic)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                // Multiset split k copies of q[i], 4-k of q[j].
                for (int k = 0; k <= 4; ++k) {
                    int v = q[ic] + k * flow.direct(q[ic], q[i]) +
                            (4 - k) * flow.direct(q[ic], q[j]);
                    if (!q.contains(v)) return false;
                }
            }
    return true;
}

} // namespace detail

/// Backtracking enumeration of all flow certificates over Q whose realized
/// rules are closed, deduplicated by realized table. Pruning: Lemma-2
/// progression candidates per pair, closure of the T-free tuples per g,
/// and per-triple value intervals from f(m,x,x,y,z) closure.
inline std::vector<FlowSpec> enumerate_rnca(const StateSet& q) {
    if (q.size() > 5)
        throw BudgetExceeded("enumeration is guarded to |Q| <= 5, got " +
                             std::to_string(q.size()));
    const int n = q.size();

    struct Pair {
        int i, j;
        std::vector<int> candidates;
    };
    std::vector<Pair> pairs;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            pairs.push_back({i, j, detail::direct_flow_candidates(q, q[i], q[j])});

    struct Triple {
        int i, j, k; // i < j < k; the free value is T(q[i], q[j], q[k])
    };
    std::vector<Triple> triples;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k) triples.push_back({i, j, k});

    std::vector<FlowSpec> found;
    std::map<std::vector<State>, size_t> seen;

    auto try_complete = [&](const FlowSpec& flow) {
        if (flow.invariant_violation()) return;
        try {
            Rule rule = build_rule(flow, q.min());
            if (seen.emplace(rule.table(), found.size()).second) found.push_back(flow);
        } catch (const ClosureViolation&) {
        }
    };

    // Interval of viable values for one triple given g, from the closure of
    // f(m,x,x,y,z) = m + 2g(m,x) + g(m,y) + g(m,z) + T(x,y,z) over all
    // centers m and all six orientations of the triple.
    auto triple_interval = [&](const FlowSpec& flow, const Triple& t) {
        int lo = q.min() - q.max(), hi = q.max() - q.min();
        int perms[6][3] = {{t.i, t.j, t.k}, {t.j, t.k, t.i}, {t.k, t.i, t.j},
                           {t.k, t.j, t.i}, {t.j, t.i, t.k}, {t.i, t.k, t.j}};
        for (int p = 0; p < 6; ++p) {
            int sign = p < 3 ? 1 : -1; // orientation relative to (i,j,k)
            State x = q[perms[p][0]], y = q[perms[p][1]], z = q[perms[p][2]];
            for (int m = 0; m < n; ++m) {
                int base = q[m] + 2 * flow.direct(q[m], x) + flow.direct(q[m], y) +
                           flow.direct(q[m], z);
                // base + sign * value must land in [min, max]
                if (sign > 0) {
                    lo = std::max(lo, q.min() - base);
                    hi = std::min(hi, q.max() - base);
                } else {
                    lo = std::max(lo, base - q.max());
                    hi = std::min(hi, base - q.min());
                }
            }
        }
        return std::pair{lo, hi};
    };

    std::function<void(FlowSpec&, size_t)> assign_triples = [&](FlowSpec& flow, size_t ti) {
        if (ti >= triples.size()) {
            try_complete(flow);
            return;
        }
        const Triple& t = triples[ti];
        auto [lo, hi] = triple_interval(flow, t);
        for (int v = lo; v <= hi; ++v) {
            flow.set_triple(q[t.i], q[t.j], q[t.k], v);
            assign_triples(flow, ti + 1);
        }
        flow.set_triple(q[t.i], q[t.j], q[t.k], 0);
    };

    std::function<void(FlowSpec&, size_t)> assign_pairs = [&](FlowSpec& flow, size_t pi) {
        if (pi >= pairs.size()) {
            if (!detail::direct_part_closed(flow)) return;
            assign_triples(flow, 0);
            return;
        }
        for (int alpha : pairs[pi].candidates) {
            flow.set_direct(q[pairs[pi].i], q[pairs[pi].j], alpha);
            assign_pairs(flow, pi + 1);
        }
        flow.set_direct(q[pairs[pi].i], q[pairs[pi].j], 0);
    };

    FlowSpec root(q);
    assign_pairs(root, 0);
    return found;
}

/// Triviality sweep over every normalized state set of size <= 4 contained
/// in {0..max_range}. Expected: only the trivial rule anywhere.
struct TrivialityReport {
    int max_range = 0;
    uint64_t sets_examined = 0;
    std::vector<std::pair<StateSet, FlowSpec>> non_trivial;

    bool all_trivial() const { return non_trivial.empty(); }
};

inline TrivialityReport verify_small_triviality(int max_range) {
    TrivialityReport report{max_range, 0, {}};
    std::vector<State> pool;
    for (State s = 1; s <= max_range; ++s) pool.push_back(s);

    std::vector<State> current{0};
    std::function<void(size_t)> walk = [&](size_t next) {
        StateSet q(current);
        if (q.is_normalized()) {
            ++report.sets_examined;
            for (const FlowSpec& flow : enumerate_rnca(q)) {
                Rule rule = build_rule(flow, q.min());
                if (!(rule == trivial_rule(q, q.min())))
                    report.non_trivial.emplace_back(q, flow);
            }
        }
        if (current.size() >= 4) return;
        for (size_t p = next; p < pool.size(); ++p) {
            current.push_back(pool[p]);
            walk(p + 1);
            current.pop_back();
        }
    };
    walk(0);
    return report;
}

} // namespace rnca
