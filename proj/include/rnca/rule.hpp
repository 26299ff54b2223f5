#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "rnca/flow.hpp"
#include "rnca/states.hpp"

namespace rnca {

/// A von Neumann neighborhood rule materialized as an explicit lookup table
/// over all |Q|^5 neighborhoods (3125 entries for 5 states). Entries hold
/// state values, indexed by (c,u,r,d,l) state indices.
class Rule {
public:
    Rule(StateSet states, State quiescent, std::vector<State> table,
         std::optional<FlowSpec> provenance = std::nullopt)
        : states_(std::move(states)),
          quiescent_(quiescent),
          table_(std::move(table)),
          provenance_(std::move(provenance)) {
        size_t n = static_cast<size_t>(states_.size());
        if (table_.size() != n * n * n * n * n)
            throw Error("rule table has wrong size");
        if (!states_.contains(quiescent_))
            throw StateOutOfAlphabet("quiescent state not in alphabet");
    }

    const StateSet& states() const { return states_; }
    State quiescent() const { return quiescent_; }
    const std::optional<FlowSpec>& provenance() const { return provenance_; }
    const std::vector<State>& table() const { return table_; }

    State apply(State c, State u, State r, State d, State l) const {
        return table_[tuple_index(idx(c), idx(u), idx(r), idx(d), idx(l))];
    }
    State apply(const Neighborhood& n) const { return apply(n.c, n.u, n.r, n.d, n.l); }

    /// Fast path: lookup by state indices, no validation.
    State apply_indices(int ic, int iu, int ir, int id, int il) const {
        return table_[tuple_index(ic, iu, ir, id, il)];
    }

    size_t tuple_index(int ic, int iu, int ir, int id, int il) const {
        size_t n = static_cast<size_t>(states_.size());
        return (((static_cast<size_t>(ic) * n + iu) * n + ir) * n + id) * n + il;
    }

    bool operator==(const Rule& o) const {
        return states_ == o.states_ && quiescent_ == o.quiescent_ && table_ == o.table_;
    }

private:
    int idx(State s) const {
        int i = states_.index_of(s);
        if (i < 0) throw StateOutOfAlphabet("state " + std::to_string(s) + " not in alphabet");
        return i;
    }

    StateSet states_;
    State quiescent_;
    std::vector<State> table_;
    std::optional<FlowSpec> provenance_;
};

inline State apply_local(const Rule& rule, const Neighborhood& n) { return rule.apply(n); }

/// Realizes a rule from its flow certificate:
///   f(c,u,r,d,l) = c + g(c,u) + g(c,r) + g(c,d) + g(c,l) + T(u,r,d) + T(u,d,l)
/// where the last two terms are the cyclic extension of the indirect flow on
/// the neighbor cycle u -> r -> d -> l. Throws if any entry leaves Q.
inline Rule build_rule(const FlowSpec& flow, State quiescent) {
    if (auto why = flow.invariant_violation())
        throw FlowInvariantViolation(*why);
    const StateSet& q = flow.states();
    if (!q.contains(quiescent))
        throw QuiescentViolation("quiescent state not in alphabet");
    const int n = q.size();
    std::vector<State> table(static_cast<size_t>(n) * n * n * n * n);
    size_t pos = 0;
    for (int ic = 0; ic < n; ++ic)
        for (int iu = 0; iu < n; ++iu)
            for (int ir = 0; ir < n; ++ir)
                for (int id = 0; id < n; ++id)
                    for (int il = 0; il < n; ++il) {
                        State c = q[ic], u = q[iu], r = q[ir], d = q[id], l = q[il];
                        int v = c + flow.direct(c, u) + flow.direct(c, r) + flow.direct(c, d) +
                                flow.direct(c, l) + flow.triple(u, r, d) + flow.triple(u, d, l);
                        if (!q.contains(v))
                            throw ClosureViolation(
                                "f(" + std::to_string(c) + "," + std::to_string(u) + "," +
                                    std::to_string(r) + "," + std::to_string(d) + "," +
                                    std::to_string(l) + ") = " + std::to_string(v) +
                                    " leaves the alphabet",
                                v);
                        table[pos++] = v;
                    }
    Rule rule(q, quiescent, std::move(table), flow);
    if (rule.apply(quiescent, quiescent, quiescent, quiescent, quiescent) != quiescent)
        throw QuiescentViolation("f(q0,q0,q0,q0,q0) != q0");
    return rule;
}

/// The flow certificate of the non-trivial 5-state rules: Q = {0..4},
/// g(0,4) = 1 and T(0,4,x) = beta for x in {1,2,3}. beta = 0 gives the rule
/// with permanent middle states; beta = +1/-1 are mirror images.
inline FlowSpec canonical_flow(int beta) {
    if (beta < -1 || beta > 1)
        throw Error("beta must be in {-1,0,1}");
    FlowSpec flow(StateSet::range(5));
    flow.set_direct(0, 4, 1);
    for (State x : {1, 2, 3}) flow.set_triple(0, 4, x, beta);
    return flow;
}

inline Rule canonical_rule(int beta, State quiescent = 0) {
    return build_rule(canonical_flow(beta), quiescent);
}

/// The identity rule f(c,...) = c over the given alphabet.
inline Rule trivial_rule(const StateSet& states, State quiescent) {
    return build_rule(FlowSpec(states), quiescent);
}

/// Checks f(c,u,r,d,l) = f(c,r,d,l,u) over all |Q|^5 tuples.
inline bool rotation_symmetry_check(const Rule& rule) {
    const int n = rule.states().size();
    for (int ic = 0; ic < n; ++ic)
        for (int iu = 0; iu < n; ++iu)
            for (int ir = 0; ir < n; ++ir)
                for (int id = 0; id < n; ++id)
                    for (int il = 0; il < n; ++il)
                        if (rule.apply_indices(ic, iu, ir, id, il) !=
                            rule.apply_indices(ic, ir, id, il, iu))
                            return false;
    return true;
}

/// Exchanges the left/right neighbor roles: table'(c,u,r,d,l) = table(c,u,l,d,r).
inline Rule mirror_rule(const Rule& rule) {
    const int n = rule.states().size();
    std::vector<State> table(rule.table().size());
    for (int ic = 0; ic < n; ++ic)
        for (int iu = 0; iu < n; ++iu)
            for (int ir = 0; ir < n; ++ir)
                for (int id = 0; id < n; ++id)
                    for (int il = 0; il < n; ++il)
                        table[rule.tuple_index(ic, iu, ir, id, il)] =
                            rule.apply_indices(ic, iu, il, id, ir);
    return Rule(rule.states(), rule.quiescent(), std::move(table));
}

/// original_state = scale * normalized_state + offset
struct AffineMap {
    int scale = 1;
    int offset = 0;
    State to_normalized(State s) const { return (s - offset) / scale; }
    State from_normalized(State s) const { return scale * s + offset; }
    bool operator==(const AffineMap&) const = default;
};

/// Renames states affinely so the alphabet has minimum 0 and difference
/// gcd 1. Dynamics and conservation commute with the renaming.
inline std::pair<Rule, AffineMap> normalize_states(const Rule& rule) {
    const StateSet& q = rule.states();
    if (q.size() < 2) throw DegenerateAlphabet("cannot normalize a single-state alphabet");
    AffineMap map{q.difference_gcd(), q.min()};
    std::vector<State> mapped;
    mapped.reserve(static_cast<size_t>(q.size()));
    for (State s : q.values()) mapped.push_back(map.to_normalized(s));
    StateSet nq(mapped);
    const int n = q.size();
    std::vector<State> table(rule.table().size());
    size_t pos = 0;
    for (int ic = 0; ic < n; ++ic)
        for (int iu = 0; iu < n; ++iu)
            for (int ir = 0; ir < n; ++ir)
                for (int id = 0; id < n; ++id)
                    for (int il = 0; il < n; ++il)
                        table[pos++] = map.to_normalized(rule.apply_indices(ic, iu, ir, id, il));
    return {Rule(nq, map.to_normalized(rule.quiescent()), std::move(table)), map};
}

} // namespace rnca
