#pragma once

#include <cmath>
#include <cstdint>

#include "wka/errors.hpp"

namespace wka {

/// Polynomial weight u(gamma) = (1 + l(gamma))^a, a >= 0.
struct Weight {
    double exponent = 0.0;

    explicit Weight(double a) : exponent(a) {
        if (!(a >= 0.0)) throw ValidationError("weight exponent must be >= 0");
    }

    double at_length(std::uint64_t l) const { return std::pow(1.0 + static_cast<double>(l), exponent); }
};

}  // namespace wka
