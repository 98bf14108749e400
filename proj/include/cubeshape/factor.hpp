#pragma once

#include <utility>
#include <vector>

#include "cubeshape/int_types.hpp"

namespace cubeshape {

// Prime factorization of |n|, n != 0, as (p, multiplicity) sorted by p.
// Trial division first, Pollard rho on what remains; throws if a composite
// cofactor resists (with the unfactored part in the message).
std::vector<std::pair<Int, int>> factor_abs(const Int& n);

bool is_prime(const Int& n);

// squarefree part of n (same sign as n), n != 0
Int squarefree_part(const Int& n);

}  // namespace cubeshape
