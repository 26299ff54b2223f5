#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rnca/states.hpp"

namespace rnca {

/// Flow certificate of a number-conserving rule: the antisymmetric direct
/// flow g(x,y) (value transferred from y to x each step) and the cyclic
/// extension of the indirect flow on triples, T(x,y,z).
///
/// Only the cyclic extension of the pair function h is dynamically
/// meaningful, so T is the stored normal form. A valid T satisfies
///   T(x,y,z) = T(y,z,x) = -T(z,y,x),  T(x,x,y) = 0,
/// and the coherence identity
///   T(a,b,c) + T(a,c,d) = T(b,c,d) + T(b,d,a)
/// which makes T realizable as cyc h of an actual pair function.
class FlowSpec {
public:
    explicit FlowSpec(StateSet states)
        : states_(std::move(states)),
          g_(static_cast<size_t>(states_.size()) * states_.size(), 0),
          t_(static_cast<size_t>(states_.size()) * states_.size() * states_.size(), 0) {}

    const StateSet& states() const { return states_; }

    int direct(State x, State y) const { return g_[gi(idx(x), idx(y))]; }

    /// Sets g(x,y) = v and g(y,x) = -v.
    void set_direct(State x, State y, int v) {
        int i = idx(x), j = idx(y);
        if (i == j && v != 0) throw FlowInvariantViolation("g(x,x) must be 0");
        g_[gi(i, j)] = v;
        g_[gi(j, i)] = -v;
    }

    int triple(State x, State y, State z) const { return t_[ti(idx(x), idx(y), idx(z))]; }

    /// Sets T on the whole orbit of (x,y,z) under rotation and reversal.
    void set_triple(State x, State y, State z, int v) {
        int i = idx(x), j = idx(y), k = idx(z);
        if ((i == j || j == k || i == k) && v != 0)
            throw FlowInvariantViolation("T vanishes on repeated states");
        t_[ti(i, j, k)] = v;
        t_[ti(j, k, i)] = v;
        t_[ti(k, i, j)] = v;
        t_[ti(k, j, i)] = -v;
        t_[ti(j, i, k)] = -v;
        t_[ti(i, k, j)] = -v;
    }

    /// First violated invariant, or nullopt if the spec is valid.
    std::optional<std::string> invariant_violation() const {
        const int n = states_.size();
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (g_[gi(i, j)] != -g_[gi(j, i)])
                    return "g antisymmetry fails at (" + std::to_string(states_[i]) + "," +
                           std::to_string(states_[j]) + ")";
            }
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    int v = t_[ti(i, j, k)];
                    if (v != t_[ti(j, k, i)]) return "T rotation invariance fails";
                    if (v != -t_[ti(k, j, i)]) return "T reversal antisymmetry fails";
                    if ((i == j || j == k || i == k) && v != 0)
                        return "T nonzero on repeated states";
                }
        // Coherence: the induced 4-cycle value must not depend on the anchor.
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    for (int d = 0; d < n; ++d) {
                        if (t_[ti(a, b, c)] + t_[ti(a, c, d)] !=
                            t_[ti(b, c, d)] + t_[ti(b, d, a)])
                            return "T coherence fails on (" + std::to_string(states_[a]) + "," +
                                   std::to_string(states_[b]) + "," + std::to_string(states_[c]) +
                                   "," + std::to_string(states_[d]) + ")";
                    }
        return std::nullopt;
    }

    bool operator==(const FlowSpec&) const = default;

private:
    int idx(State s) const {
        int i = states_.index_of(s);
        if (i < 0) throw StateOutOfAlphabet("state " + std::to_string(s) + " not in alphabet");
        return i;
    }
    size_t gi(int i, int j) const { return static_cast<size_t>(i) * states_.size() + j; }
    size_t ti(int i, int j, int k) const {
        return (static_cast<size_t>(i) * states_.size() + j) * states_.size() + k;
    }

    StateSet states_;
    std::vector<int> g_;
    std::vector<int> t_;
};

/// Cyclic extension on a word (q1,...,qn), n >= 2: the fan decomposition
/// sum T(q1,qi,qi+1) for i = 2..n-1. Pairs evaluate to 0.
inline int cyc_extension(const FlowSpec& flow, std::span<const State> word) {
    if (word.size() < 2) throw WordTooShort("cyclic extension needs a word of length >= 2");
    int total = 0;
    for (size_t i = 1; i + 1 < word.size(); ++i)
        total += flow.triple(word[0], word[i], word[i + 1]);
    return total;
}

inline int cyc_extension(const FlowSpec& flow, std::initializer_list<State> word) {
    return cyc_extension(flow, std::span<const State>(word.begin(), word.size()));
}

} // namespace rnca
