#include "linni/problem.hpp"

#include <stdexcept>

namespace linni {

RadialProblem::RadialProblem(int dimension, double radius, double exponent, double potential)
    : dimension_(dimension), radius_(radius), exponent_(exponent), potential_(potential) {
  if (dimension < 3) throw std::invalid_argument("dimension must be at least 3");
  if (!(radius > 0.0)) throw std::invalid_argument("radius must be positive");
  if (!(exponent > 2.0)) throw std::invalid_argument("exponent must exceed 2");
  if (!(potential > 0.0)) throw std::invalid_argument("potential coefficient must be positive");
}

} // namespace linni
