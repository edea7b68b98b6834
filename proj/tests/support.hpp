// Shared helpers for deterministic randomized tests. The seed comes from the
// TWISTLAB_SEED environment variable (default 20260826) so failures are
// reproducible by exporting the printed seed.
#pragma once

#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include "twistlab/algebra.hpp"
#include "twistlab/examples.hpp"

namespace twistlab::testing {

inline unsigned long seed_from_env() {
    if (const char* s = std::getenv("TWISTLAB_SEED")) return std::stoul(s);
    return 20260826UL;
}

inline std::mt19937_64 make_rng(unsigned long salt = 0) {
    return std::mt19937_64(seed_from_env() + salt);
}

// Small nonzero rationals for randomized coefficients.
inline Scalar random_scalar(std::mt19937_64& rng, const FieldSpec& field) {
    static const char* pool[] = {"1", "-1", "2", "-2", "1/2", "-1/2", "3", "1/3"};
    std::uniform_int_distribution<int> d(0, 7);
    return scalar_parse(pool[d(rng)], field);
}

// A random invertible unit h with eps(h) = 1: h = 1 + (combination over
// ker eps basis directions), retried until elem_inv succeeds.
inline TensorElement random_counital_unit(const PresPtr& p, std::mt19937_64& rng) {
    for (int attempt = 0; attempt < 64; ++attempt) {
        TensorElement h = unit_element(p);
        std::uniform_int_distribution<int> coin(0, 2);
        for (int i = 0; i < p->dim; ++i) {
            TensorElement dir = basis_element(p, i);
            Scalar eps = counit_of(p, dir);
            if (!eps.is_zero())
                dir = dir - unit_element(p).scaled(eps);  // push into ker eps
            if (dir.is_zero()) continue;
            if (coin(rng) == 0) h = h + dir.scaled(random_scalar(rng, p->field));
        }
        try {
            (void)elem_inv(h);
            return h;
        } catch (const NotInvertible&) {
        }
    }
    return unit_element(p);
}

}  // namespace twistlab::testing
