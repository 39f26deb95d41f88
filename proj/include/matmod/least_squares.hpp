#pragma once

#include "matmod/array.hpp"
#include "matmod/submodule.hpp"

// Matrix least squares over a submodule.
//
// Minimizing the residual scalar square |X - Z|^2 over Z in a submodule is a
// problem with matrix values, ordered by nonnegative definiteness of
// differences. Its unique solution is the projection of X onto the
// submodule, and the same array also minimizes the scalar trace objective
// tr |X - Z|^2. Both entry points therefore route through the projector; no
// normal equations are formed on the raw data.

namespace matmod {

struct LsSolution {
  Array fitted;              // the minimizer, an element of the submodule
  MatScalar residual_square;  // |x - fitted|^2
};

LsSolution matrix_ls(const Array& x, const Submodule& l);

// Scalar (trace) objective; same minimizer as matrix_ls.
LsSolution trace_ls(const Array& x, const Submodule& l);

// tr |x - z|^2, the scalar objective value at z.
double trace_objective(const Array& x, const Array& z);

}  // namespace matmod
