#pragma once

#include <string>
#include <vector>

namespace dnls {

// Palindromic split-step scheme: A(c1) B(d1) A(c2) ... B(d_{K-1}) A(cK),
// where A is the kinetic (momentum-diagonal) substep and B the
// disorder + nonlinearity (position-diagonal) substep. Both coefficient
// lists sum to 1 and the layout starts and ends on a kinetic substep.
struct SplitScheme {
    std::string name;
    std::vector<double> kinetic_coeffs;    // c_i, size K
    std::vector<double> potential_coeffs;  // d_i, size K-1

    void validate() const;

    // A(c) B(1/2) A(1/sqrt3) B(1/2) A(c) with c = (3 - sqrt3)/6.
    static SplitScheme saba2();

    // A(1/2) B(1) A(1/2), the cross-check scheme.
    static SplitScheme strang();

    static SplitScheme by_name(const std::string& name);
};

}  // namespace dnls
