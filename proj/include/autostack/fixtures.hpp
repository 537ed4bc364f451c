// Built-in example groups and rewriting systems.
#pragma once

#include "autostack/cprs.hpp"
#include "autostack/group.hpp"

namespace autostack::fixtures {

/// Z^2 on x, X, y, Y with x = (1,0) and y = (0,1), ordered x < X < y < Y.
GroupSpec z2();

/// Z^2 extended by the swap t of the two coordinates, on a, A, t, T with
/// a = (1,0), t = T the swap; b = tat = (0,1). Ordered a < A < t < T.
GroupSpec z2_by_swap();

/// Infinite dihedral group on two involutions s, t.
GroupSpec d_infinity();

/// Klein four-group on two involutions, as a multiplication table.
GroupSpec klein_four();

/// Shortlex rewriting system of `z2_by_swap`, one rule per minimally
/// reducible word, assembled from its rule families with coordinate-wise
/// concatenation.
Cprs z2_by_swap_rules();

/// The same rules as pairs (u, v) with u a normal form times a letter, v a
/// normal form, u = v and the two 4-fellow travelling, read off a
/// word-difference automaton.
Cprs z2_by_swap_rules_direct();

}  // namespace autostack::fixtures
