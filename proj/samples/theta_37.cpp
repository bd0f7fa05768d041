// Level 37: the first prime where some Theta_i has dimension below n.

#include <iostream>

#include "brandtlab/record.hpp"

int main() {
    using namespace brandtlab;
    const Analysis a = analyze(37);
    const auto& t = a.theta;
    for (std::size_t i = 0; i < t.n; ++i) {
        std::cout << "class " << i + 1 << "  dim Theta = " << t.dims[i] << "  Sigma = {";
        for (std::size_t k = 0; k < t.sigma[i].size(); ++k) std::cout << (k ? "," : "") << t.sigma[i][k] + 1;
        std::cout << "}\n";
    }
    for (std::size_t k = 0; k < a.spectral.n; ++k) {
        std::cout << "f" << k + 1 << ":";
        for (long m = 1; m <= a.brandt.bound; ++m) std::cout << " " << detail::format_real(a.spectral.alpha(k, m));
        std::cout << (a.spectral.is_cuspidal(k) ? "" : "  (Eisenstein)") << "\n";
    }
    return a.passed() ? 0 : 1;
}
