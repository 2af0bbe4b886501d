#pragma once

#include "surfdyn/boundary.hpp"

namespace surfdyn {

// Boundary of the surface S(2) from the Dubouloz family: a chain
// F_inf - L - F_0 forking into F_1 and F_-1 at F_0.
inline Completion s2_completion() {
    Completion x;
    x.add_divisor("F_inf", 0);
    x.add_divisor("L", 0);
    x.add_divisor("F0", -2);
    x.add_divisor("F1", -2);
    x.add_divisor("Fm1", -2);
    x.add_crossing("F_inf", "L");
    x.add_crossing("L", "F0");
    x.add_crossing("F0", "F1");
    x.add_crossing("F0", "Fm1");
    return x;
}

// Boundary of the Markov cubic surface: a triangle of (-1)-curves.
inline Completion markov_completion() {
    Completion x;
    x.add_divisor("Ex", -1);
    x.add_divisor("Ey", -1);
    x.add_divisor("Ez", -1);
    x.add_crossing("Ex", "Ey");
    x.add_crossing("Ey", "Ez");
    x.add_crossing("Ez", "Ex");
    return x;
}

}  // namespace surfdyn
