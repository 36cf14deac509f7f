#pragma once

#include <algorithm>
#include <climits>
#include <string>
#include <vector>

#include "ltlab/base_ring.hpp"

namespace ltlab {

constexpr int kOpenWindow = INT_MAX / 4;

template <class C>
struct CoeffTraits;

template <>
struct CoeffTraits<BaseElem> {
    static constexpr bool integral = true;
    static BaseElem zero(const BaseRing* R, int prec) { return R->zero(prec); }
    static BaseElem one(const BaseRing* R, int prec) { return R->one(prec); }
    static BaseElem from_int(const BaseRing* R, i64 a, int prec) { return R->from_int(a, prec); }
    static BaseElem at_prec(const BaseElem& c, int prec) { return c.prec() == prec ? c : c.with_prec(prec); }
    static bool is_unit(const BaseElem& c) { return c.is_unit(); }
};

template <>
struct CoeffTraits<ResidueElem> {
    static constexpr bool integral = false;
    static ResidueElem zero(const BaseRing* R, int) { return R->rzero(); }
    static ResidueElem one(const BaseRing* R, int) { return R->rone(); }
    static ResidueElem from_int(const BaseRing* R, i64 a, int) { return R->residue_from_int(a); }
    static ResidueElem at_prec(const ResidueElem& c, int) { return c; }
    static bool is_unit(const ResidueElem& c) { return !c.is_zero(); }
};

// Truncated Laurent series sum_{k >= low} c_k Z^k known modulo
// (pi^prec, Z^high). Coefficients below low are exactly zero.
template <class C>
class Laurent {
public:
    using T = CoeffTraits<C>;

    Laurent() = default;
    Laurent(const BaseRing* R, int prec, int low, int high)
        : R_(R), prec_(T::integral ? prec : 1), low_(low), high_(std::max(high, low)),
          c_(static_cast<size_t>(high_ - low_), T::zero(R, prec_)) {}

    static Laurent zero(const BaseRing* R, int prec, int high, int low = 0) { return Laurent(R, prec, low, high); }
    static Laurent constant(const C& c, int high) {
        Laurent r(c.ring(), prec_of(c), 0, high);
        if (high > 0) r.c_[0] = c;
        return r;
    }
    static Laurent monomial(const BaseRing* R, int prec, int k, int high, int low = 0) {
        Laurent r(R, prec, std::min(low, k), high);
        if (k < r.high_) r.c_[k - r.low_] = T::one(R, r.prec_);
        return r;
    }
    // coefficients listed from exponent low
    static Laurent from_coeffs(const BaseRing* R, int prec, int low, int high, const std::vector<C>& cs) {
        Laurent r(R, prec, low, high);
        for (size_t i = 0; i < cs.size() && low + static_cast<int>(i) < r.high_; ++i)
            r.c_[i] = T::at_prec(cs[i], r.prec_);
        return r;
    }
    static Laurent from_ints(const BaseRing* R, int prec, int low, int high, const std::vector<i64>& cs) {
        Laurent r(R, prec, low, high);
        for (size_t i = 0; i < cs.size() && low + static_cast<int>(i) < r.high_; ++i)
            r.c_[i] = T::from_int(R, cs[i], r.prec_);
        return r;
    }

    const BaseRing* ring() const { return R_; }
    int prec() const { return prec_; }
    int low() const { return low_; }
    int high() const { return high_; }
    int width() const { return high_ - low_; }
    const std::vector<C>& coeffs() const { return c_; }

    C coeff(int k) const {
        if (k < low_) return T::zero(R_, prec_);
        if (k >= high_) fail("WindowTooSmall", "coefficient of Z^" + std::to_string(k) + " is outside the window");
        return c_[k - low_];
    }
    void set(int k, const C& v) {
        if (k < low_ || k >= high_) fail("WindowTooSmall", "cannot set Z^" + std::to_string(k));
        c_[k - low_] = T::at_prec(v, prec_);
    }
    C& operator[](int k) { return c_[k - low_]; }
    const C& operator[](int k) const { return c_[k - low_]; }

    // lowest exponent with a nonzero coefficient, kInfinity if none
    int order() const {
        for (int k = low_; k < high_; ++k)
            if (!c_[k - low_].is_zero()) return k;
        return kInfinity;
    }
    // lowest exponent whose coefficient is a unit
    int unit_order() const {
        for (int k = low_; k < high_; ++k)
            if (T::is_unit(c_[k - low_])) return k;
        return kInfinity;
    }
    int degree() const {
        for (int k = high_ - 1; k >= low_; --k)
            if (!c_[k - low_].is_zero()) return k;
        return -kInfinity;
    }
    bool is_zero() const { return order() == kInfinity; }

    Laurent with_prec(int n) const {
        if (!T::integral) return *this;
        Laurent r = *this;
        r.prec_ = std::min(n, prec_);
        for (auto& x : r.c_) x = T::at_prec(x, r.prec_);
        return r;
    }
    // Same coefficients, claimed modulo a higher power of pi (a lift).
    Laurent lifted(int n) const {
        if constexpr (!T::integral) {
            return *this;
        } else {
            Laurent r = *this;
            r.prec_ = n;
            for (auto& x : r.c_) x = x.lifted(n);
            return r;
        }
    }
    Laurent truncated(int high) const {
        if (high >= high_) return *this;
        Laurent r(R_, prec_, low_, std::max(high, low_));
        for (int k = r.low_; k < r.high_; ++k) r.c_[k - low_] = c_[k - low_];
        return r;
    }
    // Pads with zero coefficients; only valid for series known exactly.
    Laurent widened(int high) const {
        if (high <= high_) return truncated(high);
        Laurent r(R_, prec_, low_, high);
        for (int k = low_; k < high_; ++k) r.c_[k - low_] = c_[k - low_];
        return r;
    }
    // Moves the stored lower bound; requires the dropped coefficients to vanish.
    Laurent rebased(int low) const {
        if (low > low_)
            for (int k = low_; k < std::min(low, high_); ++k)
                if (!c_[k - low_].is_zero()) fail("WindowTooSmall", "rebase would drop a nonzero coefficient");
        int hi = std::max(high_, low);
        Laurent r(R_, prec_, low, hi);
        for (int k = std::max(low, low_); k < high_; ++k) r.c_[k - low] = c_[k - low_];
        return r;
    }
    // drop leading zeros
    Laurent compact() const {
        int o = order();
        if (o == kInfinity || o <= low_) return *this;
        return rebased(o);
    }

    Laurent shifted(int k) const {
        Laurent r = *this;
        r.low_ += k;
        r.high_ += k;
        return r;
    }

    Laurent operator-() const {
        Laurent r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }
    Laurent operator+(const Laurent& b) const { return combine(b, false); }
    Laurent operator-(const Laurent& b) const { return combine(b, true); }
    Laurent operator*(const Laurent& b) const { return mul(b, kOpenWindow); }
    Laurent& operator+=(const Laurent& b) { return *this = *this + b; }
    Laurent& operator-=(const Laurent& b) { return *this = *this - b; }
    Laurent& operator*=(const Laurent& b) { return *this = *this * b; }

    Laurent scaled(const C& a) const {
        Laurent r = *this;
        if constexpr (T::integral) {
            r.prec_ = std::min(prec_, a.prec());
        }
        for (auto& x : r.c_) x = T::at_prec(x * a, r.prec_);
        return r;
    }

    // Product truncated to the sound window and to cap.
    Laurent mul(const Laurent& b, int cap) const {
        check(b);
        int lo = low_ + b.low_;
        int hi = std::min({high_ + b.low_, b.high_ + low_, cap});
        Laurent r(R_, std::min(prec_, b.prec_), lo, hi);
        mul_into(*this, b, r);
        return r;
    }

    Laurent pow(u64 k, int cap = kOpenWindow) const {
        if (k == 0) return monomial(R_, prec_, 0, std::max(std::min(high_ - low_, cap), 1));
        Laurent r = *this, base = *this;
        bool first = true;
        while (k) {
            if (k & 1) {
                r = first ? base.truncated(std::min(base.high_, cap)) : r.mul(base, cap);
                first = false;
            }
            k >>= 1;
            if (k) base = base.mul(base, cap);
        }
        return r;
    }

    bool operator==(const Laurent& b) const { return agrees(b); }

    // Equality on the common window; the common window must be nonempty.
    bool agrees(const Laurent& b, int min_width = 1) const {
        check(b);
        int lo = std::min(low_, b.low_), hi = std::min(high_, b.high_);
        if (hi - lo < min_width) fail("WindowTooSmall", "no common window to compare");
        for (int k = lo; k < hi; ++k)
            if (!(coeff(k) == b.coeff(k))) return false;
        return true;
    }

    std::string str() const {
        std::string s = "{prec " + std::to_string(prec_) + ", [" + std::to_string(low_) + "," + std::to_string(high_) + ")";
        for (int k = low_; k < high_; ++k)
            if (!c_[k - low_].is_zero()) s += " " + to_string(c_[k - low_]) + "Z^" + std::to_string(k);
        return s + "}";
    }

private:
    static int prec_of(const C& c) {
        if constexpr (T::integral) return c.prec();
        else return 1;
    }

    void check(const Laurent& b) const {
        if (R_ != b.R_) fail("SpecMismatch", "series over different rings");
    }

    Laurent combine(const Laurent& b, bool sub) const {
        check(b);
        int lo = std::min(low_, b.low_), hi = std::min(high_, b.high_);
        Laurent r(R_, std::min(prec_, b.prec_), lo, hi);
        for (int k = lo; k < hi; ++k) {
            C x = T::zero(R_, r.prec_);
            if (k >= low_) x = T::at_prec(c_[k - low_], r.prec_);
            if (k >= b.low_) x = sub ? x - b.c_[k - b.low_] : x + b.c_[k - b.low_];
            r.c_[k - lo] = T::at_prec(x, r.prec_);
        }
        return r;
    }

    static void mul_into(const Laurent& a, const Laurent& b, Laurent& r);

    const BaseRing* R_ = nullptr;
    int prec_ = 1;
    int low_ = 0, high_ = 0;
    std::vector<C> c_;
};

using LaurentSeries = Laurent<BaseElem>;
using ResidueSeries = Laurent<ResidueElem>;

template <>
void Laurent<BaseElem>::mul_into(const Laurent& a, const Laurent& b, Laurent& r);
template <>
void Laurent<ResidueElem>::mul_into(const Laurent& a, const Laurent& b, Laurent& r);

enum class SeriesKind { add, sub, mul };

template <class C>
Laurent<C> s_arith(const Laurent<C>& f, const Laurent<C>& g, SeriesKind kind) {
    switch (kind) {
    case SeriesKind::add: return f + g;
    case SeriesKind::sub: return f - g;
    case SeriesKind::mul: return f * g;
    }
    fail("BadArgument", "unknown series operation");
}

// Power series inverse of a series with unit constant term, on [0, high).
template <class C>
Laurent<C> invert_power_series(const Laurent<C>& u);

// Inverse in A_L (or k((Z))): f = Z^k (u + N) with u a unit power series and
// N a polar part divisible by pi.
template <class C>
Laurent<C> invert_unit(const Laurent<C>& f);

// f(g) for f with no poles and g with g(0) = 0.
template <class C>
Laurent<C> compose(const Laurent<C>& f, const Laurent<C>& g);

// f(g) from precomputed powers g^i (pw[i] for i < pw.size()); the tail bound
// uses the order of the last power.
template <class C>
Laurent<C> compose_with_powers(const Laurent<C>& f, const std::vector<Laurent<C>>& pw);

template <class C>
Laurent<C> derivative(const Laurent<C>& f);

// pi^k f, gaining k digits of precision
LaurentSeries mul_pi(const LaurentSeries& f, int k);
// f / pi^k; every coefficient must be divisible
LaurentSeries divide_by_pi(const LaurentSeries& f, int k);
// smallest coefficient valuation inside the window
int min_valuation(const LaurentSeries& f);

ResidueSeries reduce_mod_pi(const LaurentSeries& f);
LaurentSeries lift_from_residue(const ResidueSeries& f, int n);
// Raw coordinate lift (digits in [0, p)); cheaper than the Teichmuller lift.
LaurentSeries lift_plain(const ResidueSeries& f, int n);
// f^(p^k) in characteristic p: exponents scale, coefficients are raised.
ResidueSeries frobenius_power(const ResidueSeries& f, int k);

// ------------------------------------------------------------ rational scalars

// num / pi^den; the value is known modulo pi^(num.prec() - den).
struct Rational {
    BaseElem num;
    int den = 0;

    int abs_prec() const { return num.prec() - den; }
    Rational normalized() const;
    Rational operator+(const Rational& b) const;
    Rational operator-(const Rational& b) const;
    Rational operator*(const Rational& b) const;
    Rational operator-() const { return {-num, den}; }
    Rational div_int(i64 k) const;
    bool is_zero() const;
    // Equal as elements of L modulo the smaller absolute precision.
    bool operator==(const Rational& b) const;
    bool is_integral() const;
    // the value as an element of o_L, when integral
    BaseElem integral_value() const;
    static Rational of(const BaseElem& a) { return {a, 0}; }
};

std::string to_string(const Rational& r);

// Power series with coefficients in L, known modulo t^high; each coefficient
// carries its own precision.
struct RationalSeries {
    const BaseRing* R = nullptr;
    std::vector<Rational> c;

    int high() const { return static_cast<int>(c.size()); }
    int max_den() const;
    static RationalSeries of(const LaurentSeries& f);
    RationalSeries operator+(const RationalSeries& b) const;
    RationalSeries operator*(const RationalSeries& b) const;
};

// f(g) with g(0) = 0, both rational.
RationalSeries compose(const RationalSeries& f, const RationalSeries& g);

}  // namespace ltlab
