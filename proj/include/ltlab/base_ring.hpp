#pragma once

#include <array>
#include <climits>
#include <cstdint>
#include <string>
#include <vector>

#include "ltlab/error.hpp"

namespace ltlab {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using u128 = unsigned __int128;

constexpr int kInfinity = INT_MAX;
constexpr int kMaxDegree = 8;     // e * fdeg
constexpr int kMaxResidue = 1024; // q, residue field tables

// Description of o_L: (Z_p[y]/unram_poly)[x]/eis_poly.
// unram_poly lists coefficients from the constant term up; eis_poly lists
// its coefficients (each a vector of y-coordinates) from the constant term up.
struct RingSpec {
    i64 p = 3;
    int e = 1;
    int fdeg = 1;
    std::vector<i64> unram_poly;
    std::vector<std::vector<i64>> eis_poly;
    int pi_prec_max = 12;
};

class BaseRing;

// Element of the residue field F_q, encoded by its base-p digit string.
class ResidueElem {
public:
    ResidueElem() = default;
    ResidueElem(const BaseRing* r, std::uint32_t v) : R_(r), v_(v) {}

    const BaseRing* ring() const { return R_; }
    std::uint32_t index() const { return v_; }
    std::vector<i64> coords() const;

    ResidueElem operator+(const ResidueElem& b) const;
    ResidueElem operator-(const ResidueElem& b) const;
    ResidueElem operator*(const ResidueElem& b) const;
    ResidueElem operator-() const;
    ResidueElem& operator+=(const ResidueElem& b) { return *this = *this + b; }
    ResidueElem& operator-=(const ResidueElem& b) { return *this = *this - b; }
    ResidueElem& operator*=(const ResidueElem& b) { return *this = *this * b; }
    bool operator==(const ResidueElem& b) const { return v_ == b.v_; }
    bool operator!=(const ResidueElem& b) const { return v_ != b.v_; }

    bool is_zero() const { return v_ == 0; }
    bool is_unit() const { return v_ != 0; }
    ResidueElem inverse() const;
    ResidueElem pow(u64 k) const;

    ResidueElem zero_like() const { return {R_, 0}; }
    ResidueElem one_like() const { return {R_, 1}; }
    ResidueElem from_int(i64 a) const;

private:
    const BaseRing* R_ = nullptr;
    std::uint32_t v_ = 0;
};

// Element of o_L / pi^prec. Coordinates are the coefficients of x^i y^j at
// index i*fdeg + j, each a residue mod p^M.
class BaseElem {
public:
    using Coords = std::array<u64, kMaxDegree>;

    BaseElem() = default;
    BaseElem(const BaseRing* r, int prec) : R_(r), prec_(prec) { c_.fill(0); }

    const BaseRing* ring() const { return R_; }
    int prec() const { return prec_; }
    const Coords& raw() const { return c_; }
    Coords& raw() { return c_; }
    std::vector<i64> coords() const;

    BaseElem operator+(const BaseElem& b) const;
    BaseElem operator-(const BaseElem& b) const;
    BaseElem operator*(const BaseElem& b) const;
    BaseElem operator-() const;
    BaseElem& operator+=(const BaseElem& b) { return *this = *this + b; }
    BaseElem& operator-=(const BaseElem& b) { return *this = *this - b; }
    BaseElem& operator*=(const BaseElem& b) { return *this = *this * b; }

    // Equal modulo pi^min(prec).
    bool operator==(const BaseElem& b) const;
    bool operator!=(const BaseElem& b) const { return !(*this == b); }

    bool is_zero() const;
    bool is_unit() const { return prec_ > 0 && valuation() == 0; }
    int valuation() const;
    // valuation capped at the precision: what is provably known.
    int known_valuation() const;

    // Same class at a lower precision.
    BaseElem with_prec(int n) const;
    // Same representative at a higher precision (a particular lift).
    BaseElem lifted(int n) const;

    BaseElem inverse() const;
    BaseElem pow(u64 k) const;
    BaseElem divide_by_pi(int k) const;
    // Multiplication by pi^k, gaining k digits of precision.
    BaseElem mul_pi(int k) const;
    // Product whose precision is min(Na + v(b), Nb + v(a)).
    BaseElem mul_tight(const BaseElem& b) const;
    BaseElem scale(i64 a) const;

    BaseElem zero_like() const;
    BaseElem one_like() const;
    BaseElem from_int(i64 a) const;

private:
    friend class BaseRing;
    const BaseRing* R_ = nullptr;
    int prec_ = 0;
    Coords c_{};
};

class BaseRing {
public:
    explicit BaseRing(RingSpec spec);
    BaseRing(const BaseRing&) = delete;
    BaseRing& operator=(const BaseRing&) = delete;

    const RingSpec& spec() const { return spec_; }
    i64 p() const { return spec_.p; }
    int e() const { return spec_.e; }
    int fdeg() const { return spec_.fdeg; }
    int degree() const { return d_; }
    i64 q() const { return q_; }
    int max_prec() const { return spec_.pi_prec_max; }
    int digits() const { return M_; }
    u64 modulus() const { return pM_; }

    BaseElem zero(int n) const { return BaseElem(this, n); }
    BaseElem one(int n) const { return from_int(1, n); }
    BaseElem from_int(i64 a, int n) const;
    BaseElem from_coords(const std::vector<i64>& coords, int n) const;
    BaseElem pi(int n) const;
    BaseElem pi_pow(int k, int n) const;
    // unit w with p = pi^e / w
    const BaseElem& p_unit_inverse() const { return pe_over_p_; }

    ResidueElem rzero() const { return {this, 0}; }
    ResidueElem rone() const { return {this, 1}; }
    ResidueElem residue(std::uint32_t index) const;
    ResidueElem residue_from_coords(const std::vector<i64>& coords) const;
    ResidueElem residue_from_int(i64 a) const;
    // generator of F_q^x
    ResidueElem residue_generator() const;

    ResidueElem reduce(const BaseElem& a) const;
    // coordinate lift with digits in [0, p)
    BaseElem lift(const ResidueElem& c, int n) const;
    BaseElem teichmuller(const ResidueElem& c, int n) const;

    bool same(const BaseRing& o) const { return this == &o; }

    // internals shared with the element classes
    void canonicalize(BaseElem::Coords& c, int n) const;
    void mul_raw(const BaseElem::Coords& a, const BaseElem::Coords& b, BaseElem::Coords& out) const;
    u64 pw(int k) const { return ppow_[k]; }
    std::uint32_t radd(std::uint32_t a, std::uint32_t b) const { return add_[a * q_ + b]; }
    std::uint32_t rmul(std::uint32_t a, std::uint32_t b) const { return mul_[a * q_ + b]; }
    std::uint32_t rneg(std::uint32_t a) const { return neg_[a]; }
    std::uint32_t rinv(std::uint32_t a) const { return inv_[a]; }
    const BaseElem& pi_quotient_factor() const { return divk_; }
    static int vp(u64 x, i64 p);

private:
    void check_spec();
    void build_residue_tables();
    void unram_mul(const u64* a, const u64* b, u64* out) const;

    RingSpec spec_;
    int d_ = 1;
    i64 q_ = 3;
    int M_ = 1;
    u64 pM_ = 3;
    std::vector<u64> ppow_;
    std::vector<u64> unram_;                  // monic, length fdeg + 1, mod p^M
    std::vector<std::vector<u64>> eis_;       // length e + 1, each length fdeg
    std::vector<std::uint16_t> add_, mul_, neg_, inv_;
    BaseElem divk_;      // -(c0/p)^{-1} (x^{e-1} + c_{e-1} x^{e-2} + ... + c_1)
    BaseElem pe_over_p_; // pi^e / p
};

enum class ArithKind { add, sub, mul };

BaseElem arith(const BaseElem& a, const BaseElem& b, ArithKind kind);
int valuation(const BaseElem& a);
BaseElem divide_by_pi_exact(const BaseElem& a, int k);
BaseElem teichmuller_lift(const ResidueElem& c, int n);
ResidueElem reduce_residue(const BaseElem& a);

std::string to_string(const BaseElem& a);
std::string to_string(const ResidueElem& a);

}  // namespace ltlab
