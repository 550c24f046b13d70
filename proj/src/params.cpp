#include "riesz/params.hpp"

#include <sstream>

namespace riesz {

RieszParams::RieszParams(int dim, double alpha) : dim_(dim), alpha_(alpha), s_(dim - alpha) {
  if (dim < 2) {
    throw std::invalid_argument("RieszParams: ambient dimension must be at least 2");
  }
  if (!std::isfinite(alpha)) {
    throw std::invalid_argument("RieszParams: alpha must be finite");
  }
  if (dim == 2 && alpha == 2.0) {
    throw std::invalid_argument("RieszParams: the logarithmic case N = alpha = 2 is not supported");
  }
  if (!(alpha < dim)) {
    throw std::invalid_argument("RieszParams: alpha must be smaller than the dimension");
  }
}

std::string RieszParams::describe() const {
  std::ostringstream out;
  out << "N=" << dim_ << " alpha=" << alpha_ << " s=" << s_;
  return out.str();
}

}  // namespace riesz
