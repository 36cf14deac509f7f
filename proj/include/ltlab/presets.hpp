#pragma once

#include <string>
#include <vector>

#include "ltlab/base_ring.hpp"

namespace ltlab {

// Small catalogue of rings used by the tests, the acceptance grid and the CLI.
//   z3     Q_3                 (3,1,1)
//   z5     Q_5                 (5,1,1)
//   q2e2   Q_2(sqrt 2)         (2,2,1), pi^2 = 2
//   q9     unramified, F_9     (3,1,2), y^2 + 1
//   z3e2   Q_3(sqrt 3)         (3,2,1), pi^2 = 3
inline RingSpec preset_spec(const std::string& name, int prec_max = 12) {
    RingSpec s;
    s.pi_prec_max = prec_max;
    if (name == "z3") {
        s.p = 3;
    } else if (name == "z5") {
        s.p = 5;
    } else if (name == "z2") {
        s.p = 2;
    } else if (name == "q2e2") {
        s.p = 2;
        s.e = 2;
        s.eis_poly = {{-2}, {0}, {1}};
    } else if (name == "q9") {
        s.p = 3;
        s.fdeg = 2;
        s.unram_poly = {1, 0, 1};
    } else if (name == "z3e2") {
        s.p = 3;
        s.e = 2;
        s.eis_poly = {{-3}, {0}, {1}};
    } else {
        fail("BadSpec", "unknown preset " + name);
    }
    return s;
}

inline const std::vector<std::string>& preset_grid() {
    static const std::vector<std::string> g = {"z3", "q2e2", "z5", "q9"};
    return g;
}

}  // namespace ltlab
