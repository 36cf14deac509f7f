#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "ltlab/coleman.hpp"

namespace ltlab {

// k_L, k_L((Z)), o_L/pi^N, A_L/pi^N
enum class WittDomain { residue_field, residue_series, integers, series };

std::string domain_name(WittDomain d);
WittDomain domain_from_name(const std::string& s);
inline bool is_char_p(WittDomain d) { return d == WittDomain::residue_field || d == WittDomain::residue_series; }
inline bool is_scalar(WittDomain d) { return d == WittDomain::residue_field || d == WittDomain::integers; }

// Ramified Witt vector (x_0, ..., x_{n-1}). Scalars are stored as constants on
// the window [0, 1); residue domains hold their components at precision 1.
struct WittVec {
    WittDomain domain = WittDomain::residue_field;
    std::vector<LaurentSeries> c;

    int length() const { return static_cast<int>(c.size()); }
    const BaseRing& ring() const { return *c.at(0).ring(); }
    int prec() const;
    bool operator==(const WittVec& b) const;
    bool operator!=(const WittVec& b) const { return !(*this == b); }
    std::string str() const;
};

// validates and normalizes components for the domain
WittVec make_witt(WittDomain d, std::vector<LaurentSeries> comps);
WittVec witt_scalars(WittDomain d, const std::vector<BaseElem>& comps);
WittVec witt_zero(const BaseRing& R, WittDomain d, int n, int prec = 1, int high = 1);

using GhostVec = std::vector<LaurentSeries>;

// Phi_i(x) = x_0^(q^i) + pi x_1^(q^(i-1)) + ... + pi^i x_i
GhostVec ghost(const WittVec& x);
// inverse of ghost on its image; NotDivisible outside the image
WittVec ghost_solve(WittDomain d, const GhostVec& g);

enum class WittOp { add, sub, mul, neg };
WittVec witt_arith(const WittVec& x, const WittVec& y, WittOp op);
inline WittVec operator+(const WittVec& x, const WittVec& y) { return witt_arith(x, y, WittOp::add); }
inline WittVec operator-(const WittVec& x, const WittVec& y) { return witt_arith(x, y, WittOp::sub); }
inline WittVec operator*(const WittVec& x, const WittVec& y) { return witt_arith(x, y, WittOp::mul); }
WittVec witt_neg(const WittVec& x);

WittVec teichmuller_w(WittDomain d, const LaurentSeries& b, int n);
// (0, x_0, ..., x_{n-1})
WittVec vshift(const WittVec& x);
// componentwise q-th power; residue domains only
WittVec frobenius_w(const WittVec& x);
// the Frobenius with Phi_i(F x) = Phi_(i+1)(x); one component shorter
WittVec frobenius_ghost(const WittVec& x);
// frobenius_w - id
WittVec wp(const WittVec& x);

// s-map on o_L/pi^n (sigma = id) and on A_L/pi^n (sigma = phi_L), followed by
// reduction of the components: the maps alpha-bar_n
WittVec s_map(const BaseElem& b, int n);
WittVec s_map(const ColemanContext& C, const LaurentSeries& b, int n);
// Phi_(n-1) of the Teichmuller-coefficient lift, modulo pi^n
LaurentSeries w_map(const WittVec& x);
// the same through explicitly lifted components (an integral-domain vector)
LaurentSeries w_map_lifted(const WittVec& lift);
// coefficient-wise Teichmuller lift of a residue-domain vector to precision n
WittVec teichmuller_lift_w(const WittVec& x, int n);

struct OmegaParts {
    WittVec constant, plus, minus;
};
// x = constant + plus + minus with constant over k, plus over Z k[[Z]],
// minus over Z^-1 k[Z^-1]
OmegaParts omega_decompose(const WittVec& x);
bool in_constant_part(const WittVec& x);
bool in_plus_part(const WittVec& x);
bool in_minus_part(const WittVec& x);
// a residue-field vector as constant series on [0, high)
WittVec as_series(const WittVec& x, int high);

// ------------------------------------------------------- universal polynomials

// sparse polynomial in X_0..X_3, Y_0..Y_3 over o_L / pi^N; the monomial key
// packs 16-bit exponents, X_j in slot j and Y_j in slot 4 + j
class MPoly {
public:
    using Key = unsigned __int128;
    struct KeyHash {
        size_t operator()(Key k) const {
            auto lo = static_cast<std::uint64_t>(k), hi = static_cast<std::uint64_t>(k >> 64);
            return std::hash<std::uint64_t>()(lo * 0x9E3779B97F4A7C15ULL ^ hi);
        }
    };
    using Terms = std::unordered_map<Key, BaseElem, KeyHash>;

    static constexpr int kSlots = 8;
    static Key key(const std::vector<int>& exps);
    static int exponent(Key k, int slot) { return static_cast<int>((k >> (16 * slot)) & 0xFFFF); }

    MPoly() = default;
    explicit MPoly(const BaseRing* R) : R_(R) {}

    const BaseRing* ring() const { return R_; }
    const Terms& terms() const { return t_; }
    size_t size() const { return t_.size(); }
    BaseElem coeff(const std::vector<int>& exps, int prec) const;
    void add_term(Key k, const BaseElem& c);
    // values for the eight slots
    BaseElem eval(const std::vector<BaseElem>& slots) const;

private:
    const BaseRing* R_ = nullptr;
    Terms t_;
};

// Sum, product and negation polynomials of W_n(-)_L, known modulo pi^digits,
// obtained by ghost-solving; NotDivisible if some step is not integral.
class UniversalPolys {
public:
    UniversalPolys(const BaseRing& R, int n, int digits = 1);

    int length() const { return n_; }
    int digits() const { return N_; }
    const MPoly& sum(int i) const { return S_.at(i); }
    const MPoly& product(int i) const { return P_.at(i); }
    const MPoly& negation(int i) const { return Ng_.at(i); }

    // evaluation on W_n over o_L / pi^digits
    std::vector<BaseElem> add(const std::vector<BaseElem>& x, const std::vector<BaseElem>& y) const;
    std::vector<BaseElem> mul(const std::vector<BaseElem>& x, const std::vector<BaseElem>& y) const;
    std::vector<BaseElem> neg(const std::vector<BaseElem>& x) const;

private:
    int n_, N_;
    std::vector<MPoly> S_, P_, Ng_;
};

// shared cache, one entry per (ring spec, length, digits)
const UniversalPolys& universal_polys(const BaseRing& R, int n, int digits = 1);

}  // namespace ltlab
