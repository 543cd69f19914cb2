// Walks the fundamental-weight combinations used by the quasi pull-back
// searches: for each combination, prints its coordinates in the simple-root
// basis, its norm, and the ADE type of the roots orthogonal to it.

#include <klat/e8.hpp>
#include <klat/roots.hpp>

#include <iostream>
#include <vector>

using namespace klat;

int main() {
    const E8Frame& frame = E8Frame::instance();

    std::cout << "pairings (w_i, w_j) of the fundamental weights:\n";
    for (std::size_t i = 0; i < 8; ++i) {
        for (std::size_t j = 0; j < 8; ++j)
            std::cout << (j ? " " : "  ") << frame.weight_gram()(i, j);
        std::cout << "\n";
    }

    struct Combo {
        const char* name;
        std::vector<Integer> coeffs;
    };
    const std::vector<Combo> combos = {
        {"w1+w4+w7", {1, 0, 0, 1, 0, 0, 1, 0}},
        {"w4+w6+w8", {0, 0, 0, 1, 0, 1, 0, 1}},
        {"w3+w5+w7", {0, 0, 1, 0, 1, 0, 1, 0}},
        {"w1+w4+w6", {1, 0, 0, 1, 0, 1, 0, 0}},
        {"w1+w2+w5+w8", {1, 1, 0, 0, 1, 0, 0, 1}},
    };

    for (const Combo& combo : combos) {
        LatticeVector l = weight_vector(combo.coeffs);
        std::vector<LatticeVector> orth = roots_orthogonal_to(frame.lattice(), {l});
        std::cout << "\n" << combo.name << ":\n  root-basis coordinates (";
        for (std::size_t i = 0; i < l.coords.size(); ++i)
            std::cout << (i ? ", " : "") << l.coords[i];
        std::cout << ")\n  norm " << l.norm() << "\n  orthogonal roots: " << orth.size()
                  << ", type " << classify_root_subsystem(orth).to_string() << "\n";
    }
    return 0;
}
