#pragma once

#include <functional>
#include <memory>
#include <string>

#include "doctest.h"
#include "ltlab/coleman.hpp"
#include "support.hpp"

namespace testsupport {

struct Case {
    std::string name, kind;
    std::unique_ptr<BaseRing> R;
    std::unique_ptr<FormalGroup> G;
    std::unique_ptr<ColemanContext> C;
    int n;
};

inline Case make_case(const std::string& name, const std::string& kind, int n = -1, int window = 20) {
    Case c;
    c.name = name;
    c.kind = kind;
    c.R = std::make_unique<BaseRing>(preset_spec(name, 12));
    c.G = std::make_unique<FormalGroup>(*c.R, standard_frobenius(*c.R, kind), 8);
    c.n = n > 0 ? n : (c.R->q() > 5 ? 3 : 4);
    c.C = std::make_unique<ColemanContext>(*c.G, c.n, window);
    return c;
}

inline void for_grid(const std::function<void(Case&)>& body) {
    for (const auto& [name, kind] : frobenius_grid()) {
        Case c = make_case(name, kind);
        CAPTURE(name);
        CAPTURE(kind);
        body(c);
    }
}

inline LaurentSeries Zk(const BaseRing& R, int n, int k, int high) { return LaurentSeries::monomial(&R, n, k, high, std::min(k, 0)); }

}  // namespace testsupport
