// Decides stability of the tangent bundle of B5 and prints the destabilizer.
#include <iostream>

#include "toricstab/stability.hpp"

using namespace toricstab;

int main() {
    const Fan b5 = construct_proj_split(1, {1, 0, 0});
    const StabilityVerdict v = decide(b5, anticanonical(b5));
    std::cout << "facet volumes:";
    for (const auto& x : v.volumes.vol) std::cout << ' ' << to_string(x);
    std::cout << "\nmu(TX) = " << to_string(v.mu_tx) << "\nverdict: " << to_string(v.status) << "\n";
    if (auto c = certificate(v)) {
        std::cout << "rank " << c->rank << " subsheaf of slope " << to_string(c->slope) << ", lambda matrix:\n";
        for (const auto& row : c->lambda.entries) {
            for (auto x : row) std::cout << ' ' << x;
            std::cout << '\n';
        }
    }
    for (const auto& s : v.ranks)
        std::cout << "rank " << s.rank << ": best " << to_string(s.realizable_max) << ", bound "
                  << (s.admissible_bound ? to_string(*s.admissible_bound) : std::string("-")) << '\n';
}
