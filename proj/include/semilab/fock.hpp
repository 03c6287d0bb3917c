#pragma once

#include "semilab/ncpoly.hpp"

namespace semilab {

// Certified lower bound on the operator norm of the left regular action of a
// polynomial, computed by compressing to the paths of length <= max_len and
// taking the largest singular value of the (exact) compression. Compressions
// only shrink norms, so every returned value is a true lower bound, and the
// values increase monotonically in max_len.
double fock_norm_lower_bound(const NcPoly& p, int max_len);

// Convenience overload using a fixed truncation level from the run config.
double fock_norm_lower_bound(const NcPoly& p);

}  // namespace semilab
