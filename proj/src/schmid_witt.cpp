#include "ltlab/schmid_witt.hpp"

namespace ltlab {

PairingContext::PairingContext(const ColemanContext& C, int n) : C_(&C), n_(n) {
    if (n < 1) fail("BadArgument", "Witt length must be positive");
    if (n >= C.ring().max_prec()) fail("PrecisionExhausted", "Witt length exceeds the ring's precision cap");
}

BaseElem PairingContext::brace(const WittVec& f, const LaurentSeries& h) const {
    if (f.domain != WittDomain::series) fail("DomainMismatch", "brace takes a Witt vector over A_L");
    if (f.length() != n_) fail("DomainMismatch", "Witt length differs from the context's");
    if (h.prec() < n_) fail("PrecisionExhausted", "unit known only modulo pi^" + std::to_string(h.prec()));
    LaurentSeries g = ghost(f).back();
    return res(dlog(h.with_prec(g.prec())).times(g));
}

LaurentSeries PairingContext::lift_unit(const LaurentSeries& a) const {
    const BaseRing& R = *a.ring();
    LaurentSeries h(&R, n_, a.low(), a.high());
    for (int k = a.low(); k < a.high(); ++k)
        if (!a[k].is_zero()) h[k] = R.teichmuller(R.reduce(a[k]), n_);
    return h;
}

WittVec PairingContext::residue_pair(const WittVec& x, const LaurentSeries& a) const {
    if (x.domain != WittDomain::residue_series) fail("DomainMismatch", "the residue pairing takes a Witt vector over k((Z))");
    if (a.with_prec(1).is_zero()) fail("NotAUnit", "the second argument must be nonzero");
    return residue_pair_lifted(teichmuller_lift_w(x, n_), lift_unit(a.with_prec(1)));
}

WittVec PairingContext::residue_pair_lifted(const WittVec& f, const LaurentSeries& h) const {
    return s_map(brace(f, h).with_prec(n_), n_);
}

}  // namespace ltlab
