#pragma once

#include <string>

#include "ltlab/coleman.hpp"

namespace ltlab {

// f dZ
struct DiffForm {
    LaurentSeries coeff;

    DiffForm operator+(const DiffForm& b) const { return {coeff + b.coeff}; }
    DiffForm operator-(const DiffForm& b) const { return {coeff - b.coeff}; }
    DiffForm scaled(const BaseElem& a) const { return {coeff.scaled(a)}; }
    DiffForm times(const LaurentSeries& f) const { return {coeff * f}; }
    bool operator==(const DiffForm& b) const { return coeff == b.coeff; }
    std::string str() const { return "(" + coeff.str() + ") dZ"; }
};

// coefficient of Z^-1 dZ
BaseElem res(const DiffForm& w);
DiffForm d_map(const LaurentSeries& f);
DiffForm dlog(const LaurentSeries& f);

// pi^-1 [pi]'(Z) on [0, high), one digit below the group's working precision
LaurentSeries pi_prime_over_pi(const FormalGroup& G, int high);

DiffForm phi_omega(const ColemanContext& C, const DiffForm& w);
// through the coordinate h in f dZ = h g_LT dZ
DiffForm psi_omega(const ColemanContext& C, const DiffForm& w);
DiffForm gamma_omega(const ColemanContext& C, const BaseElem& c, const DiffForm& w);

// the element num / pi^n of L / o_L
struct TorsionClass {
    BaseElem num;
    int n = 0;

    bool operator==(const TorsionClass& b) const;
    bool operator!=(const TorsionClass& b) const { return !(*this == b); }
    bool is_zero() const { return num.with_prec(n).is_zero(); }
    std::string str() const;
};

// pi^-n res(f w) mod o_L
TorsionClass pairing_bracket(const LaurentSeries& f, const DiffForm& w, int n);

}  // namespace ltlab
