#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "errors.hpp"

namespace spinmarket {

// Toroidal square lattice. Each agent talks to its four von Neumann
// neighbours; indices are row-major.
struct LatticeTopology {
    int side = 0;
    std::vector<std::int32_t> neighbours; // 4 per agent: north, south, west, east

    int size() const noexcept { return side * side; }

    std::int32_t neighbour(int agent, int direction) const {
        return neighbours[static_cast<std::size_t>(agent) * 4 + static_cast<std::size_t>(direction)];
    }
};

inline LatticeTopology build_lattice(int agents) {
    if (agents < 16) throw ConfigError("agents", "need at least 16 agents for a 4x4 lattice");
    const int side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(agents))));
    if (side * side != agents) throw ConfigError("agents", "agent count must be a perfect square");

    LatticeTopology topo;
    topo.side = side;
    topo.neighbours.resize(static_cast<std::size_t>(agents) * 4);
    for (int r = 0; r < side; ++r) {
        for (int c = 0; c < side; ++c) {
            const std::size_t i = static_cast<std::size_t>(r * side + c);
            topo.neighbours[4 * i + 0] = static_cast<std::int32_t>(((r + side - 1) % side) * side + c);
            topo.neighbours[4 * i + 1] = static_cast<std::int32_t>(((r + 1) % side) * side + c);
            topo.neighbours[4 * i + 2] = static_cast<std::int32_t>(r * side + (c + side - 1) % side);
            topo.neighbours[4 * i + 3] = static_cast<std::int32_t>(r * side + (c + 1) % side);
        }
    }
    return topo;
}

} // namespace spinmarket
