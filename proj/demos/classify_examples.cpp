// Classifies a handful of links and prints a one-line summary for each.

#include <iostream>
#include <vector>

#include "brieskorn/brieskorn.hpp"

int main() {
    using namespace brieskorn;
    const std::vector<std::vector<std::int64_t>> inputs{
        {2, 2, 2, 3, 5}, {3, 3, 3, 7, 20}, {2, 2, 10, 11, 13}, {2, 2, 82, 86, 94, 101}, {2, 2, 2, 2, 2}};
    for (const auto& a : inputs) {
        const auto r = classify_link(ExponentVector(a));
        std::cout << "L(";
        for (std::size_t i = 0; i < a.size(); ++i) std::cout << (i ? "," : "") << a[i];
        std::cout << ")  sphere=" << r.sphere.is_homotopy_sphere << " se=" << r.stability.se_metric_exists;
        if (const auto label = class_label(r)) std::cout << " class=" << *label;
        if (r.sphere.diffeo)
            if (const auto* odd = std::get_if<OddDiffeo>(&*r.sphere.diffeo)) std::cout << " arf=" << odd->arf;
        std::cout << '\n';
    }
}
