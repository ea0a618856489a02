// Factors a permutation (given in cycle notation) into k-cycles and prints
// the factors together with the cost accounting: the parity/deficit lower
// bound and how much the residue classes of the cycle lengths added on top.
//
//   ./factor_into_kcycles "(1 2 3 4 5)(6 7 8)" 12 3

#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "cyclewalk/cycle_notation.hpp"
#include "cyclewalk/distance.hpp"

int main(int argc, char** argv) {
    const std::string text = argc > 1 ? argv[1] : "(1 2 3 4 5)(6 7 8)";
    const std::uint32_t n = argc > 2 ? std::atoi(argv[2]) : 12;
    const std::uint32_t k = argc > 3 ? std::atoi(argv[3]) : 3;

    const auto sigma = cyclewalk::parse_perm(text, n);
    cyclewalk::FactorizationResult result;
    try {
        result = cyclewalk::decompose_to_kcycles(sigma, k);
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return 1;
    }

    std::printf("sigma = %s on %u points, generators of length %u\n",
                cyclewalk::format_cycles(cyclewalk::cycles_of(sigma)).c_str(), n, k);
    for (const auto& f : result.factors)
        std::printf("  %s\n", cyclewalk::format_cycles({f}).c_str());
    std::printf("%zu factors, lower bound %llu, %llu residue cycles\n",
                result.factors.size(),
                static_cast<unsigned long long>(result.lower_bound),
                static_cast<unsigned long long>(result.residue_count));

    if (!cyclewalk::verify_factorization(sigma, k, result.factors)) {
        std::fprintf(stderr, "factorization does not recompose to sigma\n");
        return 1;
    }
    return 0;
}
