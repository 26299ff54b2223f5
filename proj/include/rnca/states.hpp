#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "rnca/error.hpp"

namespace rnca {

using State = int;

/// Ordered finite set of integer states. Stored sorted ascending without
/// duplicates; lookups are index-based so rule tables can be dense arrays.
class StateSet {
public:
    explicit StateSet(std::vector<State> states) : states_(std::move(states)) {
        std::sort(states_.begin(), states_.end());
        states_.erase(std::unique(states_.begin(), states_.end()), states_.end());
        if (states_.empty()) throw DegenerateAlphabet("state set must be non-empty");
    }

    /// {0, 1, ..., n-1}
    static StateSet range(int n) {
        std::vector<State> v(static_cast<size_t>(n));
        std::iota(v.begin(), v.end(), 0);
        return StateSet(std::move(v));
    }

    int size() const { return static_cast<int>(states_.size()); }
    State operator[](int i) const { return states_[static_cast<size_t>(i)]; }
    State min() const { return states_.front(); }
    State max() const { return states_.back(); }

    bool contains(State s) const {
        return std::binary_search(states_.begin(), states_.end(), s);
    }

    /// Index of `s`, or -1 if absent.
    int index_of(State s) const {
        auto it = std::lower_bound(states_.begin(), states_.end(), s);
        if (it == states_.end() || *it != s) return -1;
        return static_cast<int>(it - states_.begin());
    }

    /// gcd of all pairwise differences (0 for a singleton).
    int difference_gcd() const {
        int g = 0;
        for (State s : states_) g = std::gcd(g, s - states_.front());
        return g;
    }

    /// Minimum 0 and difference gcd 1 (singleton {0} counts as normalized).
    bool is_normalized() const {
        if (states_.front() != 0) return false;
        return states_.size() == 1 || difference_gcd() == 1;
    }

    const std::vector<State>& values() const { return states_; }

    bool operator==(const StateSet&) const = default;

private:
    std::vector<State> states_;
};

/// Von Neumann neighborhood of a cell: center, up, right, down, left.
/// Coordinates follow x growing rightward and y growing upward, so `u`
/// is the state at (x, y+1).
struct Neighborhood {
    State c, u, r, d, l;
    bool operator==(const Neighborhood&) const = default;
};

} // namespace rnca
