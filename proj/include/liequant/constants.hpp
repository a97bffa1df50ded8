#pragma once

#include "liequant/error.hpp"

namespace liequant {

// SI values by default; natural() sets kbar = hbar = c = 1.
struct PhysicalConstants {
    double kbar = 1.38065e-23;   // J/K
    double hbar = 1.0545718e-34; // J s
    double c = 2.99792458e8;     // m/s
    double R_H = 1.0967758e7;    // 1/m
    double R = 8.31447;          // J/(K mol)

    static PhysicalConstants natural() {
        PhysicalConstants p;
        p.kbar = p.hbar = p.c = 1.0;
        return p;
    }

    void validate() const {
        if (!(kbar > 0.0) || !(hbar > 0.0) || !(c > 0.0) || !(R_H > 0.0) || !(R > 0.0))
            throw Error("bad_constants", "physical constants must be positive");
    }
};

} // namespace liequant
