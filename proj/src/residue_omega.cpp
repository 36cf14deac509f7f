#include "ltlab/residue_omega.hpp"

#include <algorithm>

namespace ltlab {

namespace {

// window a power series factor needs so that multiplying by it keeps f's window
int span(const LaurentSeries& f) { return std::max(f.high() - std::min(f.low(), 0), 1); }

}  // namespace

BaseElem res(const DiffForm& w) {
    if (w.coeff.high() <= -1) fail("WindowTooSmall", "the window stops before Z^-1");
    return w.coeff.coeff(-1);
}

DiffForm d_map(const LaurentSeries& f) { return {derivative(f)}; }

DiffForm dlog(const LaurentSeries& f) { return {(derivative(f) * invert_unit(f)).compact()}; }

LaurentSeries pi_prime_over_pi(const FormalGroup& G, int high) {
    return divide_by_pi(derivative(G.frobenius(high + 1)), 1);
}

DiffForm phi_omega(const ColemanContext& C, const DiffForm& w) {
    LaurentSeries P = C.phi(w.coeff);
    return {P * pi_prime_over_pi(C.group(), span(P))};
}

DiffForm psi_omega(const ColemanContext& C, const DiffForm& w) {
    const FormalGroup& G = C.group();
    LaurentSeries h = w.coeff * G.g_inverse(span(w.coeff));
    LaurentSeries y = C.psi(h);
    return {y * G.g(span(y))};
}

DiffForm gamma_omega(const ColemanContext& C, const BaseElem& c, const DiffForm& w) {
    LaurentSeries x = C.gamma_act(c, w.coeff);
    return {x * derivative(C.group().mult(c, std::max(span(x) + 1, 2)))};
}

bool TorsionClass::operator==(const TorsionClass& b) const {
    const int N = std::max(n, b.n);
    return num.with_prec(n).mul_pi(N - n) == b.num.with_prec(b.n).mul_pi(N - b.n);
}

std::string TorsionClass::str() const { return to_string(num.with_prec(n)) + " / pi^" + std::to_string(n); }

TorsionClass pairing_bracket(const LaurentSeries& f, const DiffForm& w, int n) {
    if (n < 0) fail("BadArgument", "level must be non-negative");
    BaseElem r = res(w.times(f));
    if (r.prec() < n) fail("PrecisionExhausted", "residue known only modulo pi^" + std::to_string(r.prec()));
    return {r.with_prec(n), n};
}

}  // namespace ltlab
