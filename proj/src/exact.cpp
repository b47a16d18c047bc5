#include "dbar/exact.hpp"

#include <cmath>

#include "dbar/core.hpp"

namespace dbar {

ExactComplex ExactComplex::from_double(double re, double im) {
    if (!std::isfinite(re) || !std::isfinite(im)) throw SpecError("non-finite coefficient");
    return ExactComplex(Rational(re), Rational(im));
}

std::string ExactComplex::to_string() const {
    Rational mag = im_;
    if (sgn(mag) < 0) mag = -mag;
    return re_.get_str() + (sgn(im_) < 0 ? "-" : "+") + mag.get_str() + "i";
}

}  // namespace dbar
