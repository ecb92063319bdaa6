// Shared helpers for tests: corpus loading and seeded input samplers.
#ifndef BSS_TESTS_CORPUS_UTIL_HPP
#define BSS_TESTS_CORPUS_UTIL_HPP

#include <random>
#include <string>
#include <vector>

#include "bss/dsl.hpp"
#include "bss/machine.hpp"

namespace testutil {

inline std::string corpus_path(const std::string& name) { return std::string(BSS_CORPUS_DIR) + "/" + name + ".bss"; }

inline bss::Machine corpus(const std::string& name) { return bss::load_machine_file(corpus_path(name)); }

struct CorpusEntry {
    std::string name;
    std::size_t dim;
};

// machines used by the run/cell agreement and coding checks
inline const std::vector<CorpusEntry>& corpus_entries() {
    static const std::vector<CorpusEntry> entries = {
        {"sign_branch", 1}, {"newton", 1},   {"mandelbrot", 2}, {"zero_test", 1},
        {"countdown", 1},   {"shift_loop", 3}, {"identity", 2},
    };
    return entries;
}

inline bss::Rational random_rational(std::mt19937_64& rng, long num_range, long den_max) {
    const long num = static_cast<long>(rng() % (2 * num_range + 1)) - num_range;
    const long den = 1 + static_cast<long>(rng() % den_max);
    bss::Rational q(num, den);
    q.canonicalize();
    return q;
}

// Seeded inputs for a corpus machine.  Mixes small integers (which hit the
// equality tests and boundaries) with general rationals.  For the Mandelbrot
// machine, non-integer points are drawn outside the radius-2 disc: inside it the
// orbit of a general rational point has numerators whose length doubles each
// iteration.
inline bss::Word sample_input(const std::string& machine, std::size_t dim, std::mt19937_64& rng) {
    bss::Word w;
    if (machine == "mandelbrot") {
        if (rng() % 2 == 0) {
            for (std::size_t i = 0; i < dim; ++i) w.emplace_back(static_cast<long>(rng() % 9) - 4);
            return w;
        }
        for (;;) {
            bss::Rational a = random_rational(rng, 400, 97);
            bss::Rational b = random_rational(rng, 400, 97);
            if (a * a + b * b > 4) return {bss::Scalar(a), bss::Scalar(b)};
        }
    }
    for (std::size_t i = 0; i < dim; ++i) {
        switch (rng() % 3) {
        case 0: w.emplace_back(static_cast<long>(rng() % 21) - 10); break;
        case 1: w.emplace_back(static_cast<long>(rng() % 120)); break;
        default: w.emplace_back(random_rational(rng, 1000, 60)); break;
        }
    }
    return w;
}

}  // namespace testutil

#endif
