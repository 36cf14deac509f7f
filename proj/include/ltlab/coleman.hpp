#pragma once

#include <map>
#include <mutex>
#include <vector>

#include "ltlab/lubin_tate.hpp"

namespace ltlab {

// Z-window of phi(h) for h known modulo (pi^n, Z^high).
int phi_window(int high, int n, i64 q);
// Z-window of the phi-components of a power series known modulo (pi^n, Z^high).
int decompose_window(int high, int n, i64 q);
// smallest input window whose components reach `target`
int decompose_input_window(int target, int n, i64 q);
// window of the residue series on which a lift modulo (pi^n, Z^high) depends
int coleman_lift_window(int high, int n, i64 q);

// Coleman's operators on A_L = o_L((Z))^ attached to a Lubin-Tate group.
// All series carry their own pi-adic precision; the context's (prec, window)
// are the parameters at which the norm is checked when the context is built.
class ColemanContext {
public:
    ColemanContext(const FormalGroup& G, int prec, int window);

    const FormalGroup& group() const { return *G_; }
    const BaseRing& ring() const { return G_->ring(); }
    i64 q() const { return q_; }
    int prec() const { return n_; }
    int window() const { return m_; }

    // [pi](Z)^k on [0, high) at precision n
    LaurentSeries pi_power(int k, int n, int high) const;

    // f([pi](Z)); poles are allowed
    LaurentSeries phi(const LaurentSeries& f) const;
    // components f_i with f = sum_{i<q} phi(f_i) Z^i
    std::vector<LaurentSeries> phi_decompose(const LaurentSeries& f) const;
    // h with phi(h) = s; NotInImage when s is not a phi-image
    LaurentSeries phi_inverse(const LaurentSeries& s) const;
    // psi_L = pi^-1 psi_Col, the normalized left inverse of phi
    LaurentSeries psi(const LaurentSeries& f) const;
    LaurentSeries psi_col(const LaurentSeries& f) const;
    // psi(Z^i) for i < q, on [0, high) at precision n
    std::vector<LaurentSeries> psi_table(int n, int high) const;

    // Coleman's norm operator: phi(N(f)) = prod over a in LT_1 of f(a +_LT Z)
    LaurentSeries norm(const LaurentSeries& f) const;
    LaurentSeries norm_of_Z(int n, int high) const;

    // f([c](Z))
    LaurentSeries gamma_act(const BaseElem& c, const LaurentSeries& f) const;
    // g_LT^-1 f'/f
    LaurentSeries delta(const LaurentSeries& f) const;
    LaurentSeries nabla(const LaurentSeries& g, const BaseElem& a) const;
    // (d_inv^(r-1) Delta g)(0) / r!
    Rational coates_wiles(const LaurentSeries& g, int r, int den_budget) const;

    // the unique N-fixed unit reducing to u, modulo (pi^n, Z^high); u is taken
    // as an exact Laurent polynomial
    LaurentSeries coleman_lift(const ResidueSeries& u, int n, int high) const;
    // the same limit started from any exact lift g0 of u
    LaurentSeries coleman_lift_from(const LaurentSeries& g0, int n, int high) const;

private:
    LaurentSeries phi_power_series(const LaurentSeries& h, int cap) const;
    std::vector<LaurentSeries> decompose_power_series(const LaurentSeries& f, bool image_only) const;
    std::vector<LaurentSeries> zq_components(int n, int high) const;
    LaurentSeries norm_power_series(const LaurentSeries& h) const;
    void check_norm() const;

    const FormalGroup* G_;
    i64 q_;
    int n_, m_;
    bool closed_zq_;
    mutable std::mutex mu_;
    mutable std::map<int, std::vector<LaurentSeries>> psi_cache_;
    mutable std::map<int, std::vector<LaurentSeries>> zq_cache_;
};

// determinant of a square matrix over A_L / pi^n by elimination on unit pivots
LaurentSeries series_determinant(std::vector<std::vector<LaurentSeries>> M);

}  // namespace ltlab
