#include "jetlie/catalog.hpp"

#include <stdexcept>
#include <string>

namespace jetlie {

namespace {

BracketTable table(std::initializer_list<std::tuple<int, int, const char*>> rows) {
    BracketTable t;
    for (const auto& [i, j, s] : rows) t[{i, j}] = Poly::parse(s);
    return t;
}

}  // namespace

int printed_brackets_level(int d) {
    switch (d) {
        case 1: return 4;
        case 2:
        case 3: return 5;
        default: throw std::invalid_argument("no printed bracket table for d=" + std::to_string(d));
    }
}

BracketTable printed_brackets(int d, bool corrected) {
    switch (d) {
        case 2:
            return table({
                {1, 2, "0"},
                {1, 3, "-x1^2 + x1^4"},
                {2, 3, "x2*(x1^3 - 2*x1)"},
                {1, 4, "x2*(3*x1^3 - 2*x1)"},
                // printed with x1^3; the closed form gives 3 x1^2 x2^2
                {2, 4, corrected ? "x2^2*(3*x1^2 - 4)" : "x2^2*(3*x1^3 - 4)"},
                {3, 4, "x4*(4*x1 - x1^3) + x3*x2*(3*x1^2 - 6)"},
                {1, 5, "x3*(3*x1^3 - 3*x1) + 3*x2^2*x1^2"},
                {2, 5, "3*x2^3*x1 + x3*x2*(3*x1^2 - 6)"},
                {3, 5, "x5*(5*x1 - x1^3) + x3^2*(3*x1^2 - 9) + 3*x3*x2^2*x1"},
                {4, 5, "x5*x2*(10 - 3*x1^2) + x4*x3*(3*x1^2 - 12) + 3*x4*x2^2*x1"},
            });
        case 1:
            return table({
                {1, 2, "x1^3 - x1^2"},
                {1, 3, "2*x2*(x1^2 - x1)"},
                {2, 3, "(3*x1 - x1^2)*x3 + x2^2*(2*x1 - 4)"},
                {1, 4, "x3*(2*x1^2 - 3*x1) + x2^2*x1"},
                // printed without the x2^3 term
                {2, 4, corrected ? "x4*(4*x1 - x1^2) + x3*x2*(2*x1 - 6) + x2^3" : "x4*(4*x1 - x1^2) + x3*x2*(2*x1 - 6)"},
                {3, 4, "x4*x2*(8 - 2*x1) + x3*x2^2 + x3^2*(2*x1 - 9)"},
            });
        case 3:
            return table({
                {1, 2, "0"},
                {1, 3, "0"},
                {2, 3, "0"},
                {1, 4, "x1^5 - x1^2"},
                {2, 4, "x2*(x1^4 - 2*x1)"},
                {3, 4, "x3*(x1^4 - 3*x1)"},
                {1, 5, "x2*(4*x1^4 - 2*x1)"},
                // printed with x1^4
                {2, 5, corrected ? "x2^2*(4*x1^3 - 4)" : "x2^2*(4*x1^4 - 4)"},
                {3, 5, "x3*x2*(4*x1^3 - 6)"},
                {4, 5, "x4*x2*(4*x1^3 - 8) + x5*(5*x1 - x1^4)"},
            });
        default: throw std::invalid_argument("no printed bracket table for d=" + std::to_string(d));
    }
}

Variable lambda_symbol(int m, int n) { return param("l" + std::to_string(m) + std::to_string(n)); }

std::vector<Quadric> printed_quadrics() {
    const std::vector<std::pair<std::array<int, 3>, const char*>> rows = {
        {{1, 2, 3}, "l12*l13"},
        {{1, 2, 4}, "l12*(2*l14 + l23)"},
        {{1, 3, 4}, "l13*(l14 + l23)"},
        {{2, 3, 4}, "3*l14*l23 - l23^2 - 4*l13*l24 + 5*l12*l34"},
        {{1, 2, 5}, "l12*(3*l15 + 2*l24)"},
        {{1, 3, 5}, "l13*l15 + l14*l23 + l12*l34"},
        {{2, 3, 5}, "3*l15*l23 - 2*l23*l24 - 5*l13*l25 + 6*l12*l35"},
        {{1, 4, 5}, "-l14*l15 - 2*l14*l24 + l13*l25 - l12*l35"},
        {{2, 4, 5}, "4*l15*l24 - 2*l24^2 - 5*l14*l25 + l23*l25 + 7*l12*l45"},
        {{3, 4, 5}, "5*l15*l34 - 2*l24*l34 - 6*l14*l35 + l23*l35 + 7*l13*l45"},
    };
    std::vector<Quadric> r;
    for (const auto& [t, s] : rows) r.push_back({t, Poly::parse(s)});
    return r;
}

PhiFunction symbolic_phi(int D, int minIndex) {
    PhiFunction phi;
    phi.D = D;
    phi.min_index = minIndex;
    phi.tag = "symbolic";
    for (int m = minIndex; 2 * m + 1 <= D; ++m)
        for (int n = m + 1; m + n <= D; ++n) phi.set(m, n, Poly(lambda_symbol(m, n)));
    return phi;
}

}  // namespace jetlie
