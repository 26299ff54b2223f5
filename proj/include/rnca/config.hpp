#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "rnca/rule.hpp"
#include "rnca/states.hpp"

namespace rnca {

struct Coord {
    int x = 0;
    int y = 0;
    auto operator<=>(const Coord&) const = default;
};

/// Inclusive rectangle; `empty` means no cells (width = height = 0).
struct Box {
    int min_x = 0, min_y = 0, max_x = 0, max_y = 0;
    bool empty = true;

    int width() const { return empty ? 0 : max_x - min_x + 1; }
    int height() const { return empty ? 0 : max_y - min_y + 1; }

    void include(Coord c) {
        if (empty) {
            min_x = max_x = c.x;
            min_y = max_y = c.y;
            empty = false;
        } else {
            if (c.x < min_x) min_x = c.x;
            if (c.x > max_x) max_x = c.x;
            if (c.y < min_y) min_y = c.y;
            if (c.y > max_y) max_y = c.y;
        }
    }

    bool contains(Coord c) const {
        return !empty && c.x >= min_x && c.x <= max_x && c.y >= min_y && c.y <= max_y;
    }

    bool operator==(const Box&) const = default;
};

/// Finite configuration over a quiescent background: a sparse map from
/// coordinates to non-quiescent states. Quiescent-valued insertions are
/// dropped so equal configurations compare equal structurally.
class Configuration {
public:
    explicit Configuration(State quiescent) : quiescent_(quiescent) {}

    Configuration(State quiescent, const std::map<Coord, State>& cells) : quiescent_(quiescent) {
        for (const auto& [pos, s] : cells) set(pos, s);
    }

    State quiescent() const { return quiescent_; }
    const std::map<Coord, State>& cells() const { return cells_; }
    const Box& bbox() const { return bbox_; }
    size_t support_size() const { return cells_.size(); }

    State at(Coord c) const {
        auto it = cells_.find(c);
        return it == cells_.end() ? quiescent_ : it->second;
    }
    State at(int x, int y) const { return at(Coord{x, y}); }

    /// Writes one cell; quiescent values erase. Recomputes the bbox lazily
    /// only when a boundary cell is erased.
    void set(Coord c, State s) {
        if (s == quiescent_) {
            auto it = cells_.find(c);
            if (it != cells_.end()) {
                bool on_edge = !bbox_.empty &&
                               (c.x == bbox_.min_x || c.x == bbox_.max_x || c.y == bbox_.min_y ||
                                c.y == bbox_.max_y);
                cells_.erase(it);
                if (on_edge) recompute_bbox();
            }
        } else {
            cells_[c] = s;
            bbox_.include(c);
        }
    }
    void set(int x, int y, State s) { set(Coord{x, y}, s); }

    /// Sum of (state - quiescent) over all cells; the conserved quantity.
    long long relative_sum() const {
        long long total = 0;
        for (const auto& [pos, s] : cells_) total += s - quiescent_;
        return total;
    }

    /// Translates all cells by (dx, dy).
    Configuration translated(int dx, int dy) const {
        Configuration out(quiescent_);
        for (const auto& [pos, s] : cells_) out.set(Coord{pos.x + dx, pos.y + dy}, s);
        return out;
    }

    /// Left-right mirror: (x, y) -> (-x, y).
    Configuration mirrored_x() const {
        Configuration out(quiescent_);
        for (const auto& [pos, s] : cells_) out.set(Coord{-pos.x, pos.y}, s);
        return out;
    }

    bool operator==(const Configuration& o) const {
        return quiescent_ == o.quiescent_ && cells_ == o.cells_;
    }

private:
    void recompute_bbox() {
        bbox_ = Box{};
        for (const auto& [pos, s] : cells_) bbox_.include(pos);
    }

    State quiescent_;
    std::map<Coord, State> cells_;
    Box bbox_;
};

/// One application of the global transition function. Only cells in the
/// one-cell von Neumann dilation of the support can change.
inline Configuration step(const Rule& rule, const Configuration& config) {
    if (config.quiescent() != rule.quiescent())
        throw AlphabetMismatch("configuration quiescent state differs from rule");
    const StateSet& q = rule.states();
    Configuration out(config.quiescent());
    std::map<Coord, char> candidates;
    for (const auto& [pos, s] : config.cells()) {
        if (!q.contains(s))
            throw AlphabetMismatch("configuration state " + std::to_string(s) +
                                   " not in rule alphabet");
        candidates[pos] = 1;
        candidates[Coord{pos.x, pos.y + 1}] = 1;
        candidates[Coord{pos.x + 1, pos.y}] = 1;
        candidates[Coord{pos.x, pos.y - 1}] = 1;
        candidates[Coord{pos.x - 1, pos.y}] = 1;
    }
    for (const auto& [pos, tag] : candidates) {
        State next = rule.apply(config.at(pos), config.at(pos.x, pos.y + 1),
                                config.at(pos.x + 1, pos.y), config.at(pos.x, pos.y - 1),
                                config.at(pos.x - 1, pos.y));
        out.set(pos, next);
    }
    return out;
}

} // namespace rnca
