#include "matmod/least_squares.hpp"

namespace matmod {

LsSolution matrix_ls(const Array& x, const Submodule& l) {
  Array fitted = project(x, l);
  MatScalar residual_square = scalar_square(x - fitted);
  return LsSolution{std::move(fitted), std::move(residual_square)};
}

LsSolution trace_ls(const Array& x, const Submodule& l) {
  return matrix_ls(x, l);
}

double trace_objective(const Array& x, const Array& z) {
  return scalar_square(x - z).entries().trace();
}

}  // namespace matmod
