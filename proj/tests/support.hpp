#pragma once

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "ltlab/presets.hpp"
#include "ltlab/series.hpp"

namespace testsupport {

using namespace ltlab;

inline BaseElem random_elem(const BaseRing& R, std::mt19937_64& rng, int n) {
    std::vector<i64> c(R.degree());
    for (auto& x : c) x = static_cast<i64>(rng() % R.modulus());
    return R.from_coords(c, n);
}

inline BaseElem random_unit(const BaseRing& R, std::mt19937_64& rng, int n) {
    BaseElem a = random_elem(R, rng, n);
    return a.is_unit() ? a : a + R.one(n);
}

inline LaurentSeries random_series(const BaseRing& R, std::mt19937_64& rng, int n, int low, int high) {
    LaurentSeries f(&R, n, low, high);
    for (int k = low; k < high; ++k) f[k] = random_elem(R, rng, n);
    return f;
}

inline LaurentSeries random_unit_power_series(const BaseRing& R, std::mt19937_64& rng, int n, int high) {
    LaurentSeries f = random_series(R, rng, n, 0, high);
    f[0] = random_unit(R, rng, n);
    return f;
}

inline ResidueSeries random_residue(const BaseRing& R, std::mt19937_64& rng, int low, int high) {
    ResidueSeries f(&R, 1, low, high);
    for (int k = low; k < high; ++k) f[k] = R.residue(static_cast<std::uint32_t>(rng() % R.q()));
    return f;
}

// nonzero residue unit power series with a few terms
inline ResidueSeries random_residue_unit(const BaseRing& R, std::mt19937_64& rng, int terms) {
    ResidueSeries f = random_residue(R, rng, 0, terms);
    f[0] = R.residue(1 + static_cast<std::uint32_t>(rng() % (R.q() - 1)));
    return f;
}

// (preset, Frobenius family) pairs exercised by the group-level tests
inline std::vector<std::pair<std::string, std::string>> frobenius_grid() {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& name : preset_grid()) {
        out.emplace_back(name, "pi");
        if (name == "z3" || name == "z5") out.emplace_back(name, "gm");
    }
    return out;
}

}  // namespace testsupport
