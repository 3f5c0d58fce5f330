#pragma once

#include "cyclical/graph.hpp"

namespace fixtures {

using cyclical::Digraph;

inline Digraph double_self_loop() { return Digraph(1, {{0, 0}, {0, 0}}); }

inline Digraph doubled_three_cycle() { return Digraph(3, {{0, 1}, {0, 1}, {1, 2}, {1, 2}, {2, 0}, {2, 0}}); }

/// 0 =>> 1 =>> 2, and 2 double-self-loops.
inline Digraph chain() { return Digraph(3, {{0, 1}, {0, 1}, {1, 2}, {1, 2}, {2, 2}, {2, 2}}); }

} // namespace fixtures
