#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "ltlab/series.hpp"

namespace ltlab {

// Bivariate power series sum c_ij X^i Y^j known for i + j < degree, stored by
// homogeneous components: hom[k][i] is the coefficient of X^i Y^(k-i).
struct Bivariate {
    const BaseRing* R = nullptr;
    int prec = 0;
    std::vector<std::vector<BaseElem>> hom;

    int degree() const { return static_cast<int>(hom.size()); }
    const BaseElem& coeff(int i, int j) const { return hom[i + j][i]; }
    // F(A(Z), B(Z)) for A, B without constant term
    LaurentSeries eval(const LaurentSeries& A, const LaurentSeries& B) const;
};

// Monic polynomial of degree q in X over truncated o_L[[Z]]; coeffs[i] is the
// coefficient of X^i. When [pi] is itself a monic polynomial of degree q the
// cofactor is 1 and `exact` is set.
struct WeierPoly {
    std::vector<LaurentSeries> coeffs;
    bool exact = false;
    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
};

class FormalGroup {
public:
    // Group law to total degree `degree` from a Frobenius polynomial. The
    // working precision is the ring maximum; prec() reports what survives.
    FormalGroup(const BaseRing& R, const LaurentSeries& frobenius, int degree);

    const BaseRing& ring() const { return *R_; }
    int degree() const { return law_.degree(); }
    int prec() const { return law_.prec; }
    int work_prec() const { return Nw_; }

    // [pi](Z) as an exact polynomial, padded to the window [0, high)
    LaurentSeries frobenius(int high) const;
    const std::vector<BaseElem>& frobenius_coeffs() const { return f_; }
    int frobenius_degree() const { return static_cast<int>(f_.size()) - 1; }

    const Bivariate& law() const { return law_; }
    LaurentSeries add(const LaurentSeries& A, const LaurentSeries& B) const { return law_.eval(A, B); }

    // [a](Z) modulo Z^high (default: the law's degree)
    LaurentSeries mult(const BaseElem& a, int high = -1) const;
    LaurentSeries mult(i64 a, int high = -1) const { return mult(R_->from_int(a, Nw_), high); }

    // (dF/dY)(Z, 0) and its inverse g_LT; window [0, degree - 1)
    const LaurentSeries& g_inverse() const { return ginv_; }
    const LaurentSeries& g() const { return g_; }
    // the same series to any window, solved from f'(X) h(X) = pi h(f(X));
    // precision work_prec - 1
    LaurentSeries g_inverse(int high) const;
    LaurentSeries g(int high) const;
    const RationalSeries& log() const { return log_; }
    // compositional inverse of log modulo t^high; fails when a denominator
    // exceeds pi^den_budget
    RationalSeries exp(int high, int den_budget) const;

    LaurentSeries inv_deriv(const LaurentSeries& f) const;

    WeierPoly torsion_weier(int zhigh) const;

private:
    void check_frobenius() const;
    void build_law(int degree);

    const BaseRing* R_;
    int Nw_;
    std::vector<BaseElem> f_;
    Bivariate law_;
    LaurentSeries ginv_, g_;
    RationalSeries log_;
    mutable std::mutex mu_;
    mutable std::map<std::pair<std::vector<i64>, int>, LaurentSeries> mult_cache_;
    mutable LaurentSeries ginv_long_;
};

// Frobenius polynomials by name: "pi" is pi Z + Z^q; "gm" is (1+Z)^p - 1,
// available when o_L = Z_p.
LaurentSeries standard_frobenius(const BaseRing& R, const std::string& kind);

// Claimed precision of degree-k coefficients of a series solved degree by
// degree against the Frobenius, given the degree-1 precision.
std::vector<int> lt_precision_profile(int degree, int work_prec, int rho1, i64 q);

// power sums s_j = sum of j-th powers of the roots of a monic polynomial,
// j = 0 .. count - 1 (Newton's identities)
std::vector<LaurentSeries> newton_power_sums(const WeierPoly& P, int count);

}  // namespace ltlab
