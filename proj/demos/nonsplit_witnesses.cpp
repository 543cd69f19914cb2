// Prints the witness pairs behind the non-split searches: for each degree,
// the vector pair (u, v) spanning the divided sublattice, its Gram matrix,
// and the count of orthogonal roots driving the quasi pull-back weight.

#include <klat/kodaira.hpp>

#include <iostream>

using namespace klat;

namespace {

void show(long long d) {
    std::cout << "d = " << d << ": ";
    auto w = nonsplit_search(d, 14);
    if (!w) {
        std::cout << "no witness with at most 14 orthogonal roots\n";
        return;
    }
    const LatticeVector& u = w->vectors[0];
    const LatticeVector& v = w->vectors[1];
    auto print = [](const LatticeVector& x) {
        std::cout << "(";
        for (std::size_t i = 0; i < x.coords.size(); ++i)
            std::cout << (i ? ", " : "") << x.coords[i];
        std::cout << ")";
    };
    std::cout << "witness found\n  u = ";
    print(u);
    std::cout << "\n  v = ";
    print(v);
    std::cout << "\n  Gram [[" << u.norm() << ", " << u.pair(v) << "], [" << v.pair(u) << ", "
              << v.norm() << "]], determinant " << u.norm() * v.norm() - u.pair(v) * u.pair(v)
              << "\n  orthogonal roots: " << w->report.root_count << " ("
              << w->orthogonal_roots.to_string() << "), weight " << w->report.weight << "\n";
}

}  // namespace

int main() {
    for (long long d : {39, 47, 55, 63}) show(d);

    std::cout << "\nsmall degrees (witnesses require more than 14 roots):\n";
    for (long long d : {3, 7, 11, 15}) {
        auto w = nonsplit_search(d, 14);
        std::cout << "  d = " << d << ": " << (w ? "witness" : "none") << "\n";
    }
    return 0;
}
