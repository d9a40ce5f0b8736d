#pragma once

#include <algorithm>
#include <vector>

#include "zzgril/bifiltration.hpp"
#include "zzgril/landscape.hpp"
#include "zzgril/oracle.hpp"
#include "zzgril/simplex.hpp"
#include "zzgril/worms.hpp"

namespace fixtures {

using namespace zzgril;

// Three points on a line at two times. At level 1 they are isolated; at level 2 only the second time
// joins b and c; at level 3 everything is connected.
inline QuasiZigzagBifiltration moving_three_points() {
    LevelBinning rule(0.0, 3.0, 3);
    auto f0 = rips_level_filtration({{0.0}, {3.0}, {6.0}}, 3, 2, rule);
    auto f1 = rips_level_filtration({{0.0}, {3.0}, {5.0}}, 3, 2, rule);
    return QuasiZigzagBifiltration::build({f0, f1});
}

inline std::vector<GridPoint> region(int x0, int x1, int y0, int y1) {
    std::vector<GridPoint> out;
    for (int x = x0; x <= x1; ++x)
        for (int y = y0; y <= y1; ++y) out.push_back({x, y});
    return out;
}

// Every birth raised by eps, grid height L + eps.
inline QuasiZigzagBifiltration shifted_up(const QuasiZigzagBifiltration& b, int eps) {
    std::vector<std::vector<Level>> births;
    for (int t = 0; t < b.time_steps(); ++t) {
        auto col = b.births_at_time(t);
        for (auto& l : col)
            if (l != kAbsent) l += eps;
        births.push_back(std::move(col));
    }
    return QuasiZigzagBifiltration(b.levels() + eps, b.universe(), std::move(births));
}

// Largest width among worms that fit unclipped with rank >= k, or -1 when even the center fails.
inline int fitting_lambda(const std::vector<std::size_t>& ranks, int k) {
    int best = -1;
    for (std::size_t d = 0; d < ranks.size(); ++d)
        if (static_cast<int>(ranks[d]) >= k) best = static_cast<int>(d);
    return best;
}

}  // namespace fixtures
