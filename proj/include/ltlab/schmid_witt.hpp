#pragma once

#include "ltlab/residue_omega.hpp"
#include "ltlab/witt.hpp"

namespace ltlab {

// The residue-side pairings at Witt length n:
//   {f, h} = Res(Phi_(n-1)(f) dlog h) for f in W_n(A_L), h a unit of o_L((Z)),
//   (x, a) = alpha_n {lift x, lift a} in W_n(k) for x in W_n(k((Z))), a in k((Z))^x.
class PairingContext {
public:
    PairingContext(const ColemanContext& C, int n);

    int length() const { return n_; }
    const ColemanContext& context() const { return *C_; }

    BaseElem brace(const WittVec& f, const LaurentSeries& h) const;
    // canonical (Teichmuller) lifts of both arguments
    WittVec residue_pair(const WittVec& x, const LaurentSeries& a) const;
    // the same through caller-chosen lifts
    WittVec residue_pair_lifted(const WittVec& f, const LaurentSeries& h) const;

    // Teichmuller-coefficient lift of a residue Laurent series to precision n
    LaurentSeries lift_unit(const LaurentSeries& a) const;

private:
    const ColemanContext* C_;
    int n_;
};

}  // namespace ltlab
