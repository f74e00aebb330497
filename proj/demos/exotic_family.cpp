// Walks the exotic family for m = 2, k = 1 and prints tau and the bP_8 class
// per member, then the fitted quasi-polynomial.

#include <iostream>

#include "brieskorn/brieskorn.hpp"

int main() {
    using namespace brieskorn;
    std::vector<std::pair<std::int64_t, Rational>> samples;
    for (std::int64_t q = 1; q <= 8; ++q) {
        const auto f = gen_exotic(2, 1, 3, q);
        const auto t = tau_kernel(f.exponents());
        std::cout << "q=" << q << " p=" << *f.p << " tau=" << t.tau << " class="
                  << diffeo_class_even(4, t.tau).class_mod_bp << " mod 28\n";
        samples.emplace_back(*f.p, Rational(t.tau));
    }
    const auto qp = qp_fit(samples, 6, 4);
    std::cout << to_json(qp).dump() << '\n';
}
