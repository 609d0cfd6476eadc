#pragma once

#include "jetlie/poisson.hpp"

#include <array>
#include <map>
#include <utility>
#include <vector>

namespace jetlie {

using BracketTable = std::map<std::pair<int, int>, Poly>;

// Bracket tables of the power families as printed: d = 2 at n = 5, d = 1 at
// n = 4, d = 3 at n = 5. `corrected` repairs the three misprinted entries
// (one per table) so the tables can serve as fixed expectations.
BracketTable printed_brackets(int d, bool corrected = false);
int printed_brackets_level(int d);

// The first quadrics of the coefficient system of the phi-equation, in the
// symbolic parameters l<m><n> (e.g. l12), each tagged with the coefficient
// u^k v^n w^r where it appears.
struct Quadric {
    std::array<int, 3> triple;
    Poly poly;
};
std::vector<Quadric> printed_quadrics();
Variable lambda_symbol(int m, int n);
// phi with every lambda_{mn} (m < n, m + n <= D) a free parameter.
PhiFunction symbolic_phi(int D, int minIndex = 1);

}  // namespace jetlie
