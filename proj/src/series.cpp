#include "ltlab/series.hpp"

namespace ltlab {

namespace {

// bounds for the index range of a product coefficient
inline void product_range(int k, int alo, int ahi, int blo, int bhi, int& i0, int& i1) {
    i0 = std::max(alo, k - bhi + 1);
    i1 = std::min(ahi - 1, k - blo);
}

}  // namespace

template <>
void Laurent<BaseElem>::mul_into(const Laurent& a, const Laurent& b, Laurent& r) {
    const BaseRing* R = a.R_;
    const int n = r.prec_;
    const int lo = r.low_, hi = r.high_;
    if (hi <= lo) return;
    const size_t w = static_cast<size_t>(hi - lo);
    const u64 m = R->modulus();
    if (R->degree() == 1) {
        const u128 sq = (u128)(m - 1) * (m - 1);
        const int span = std::min(a.width(), b.width());
        const bool small = sq * static_cast<u128>(span + 1) < ((u128)1 << 64);
        if (small) {
            std::vector<u64> acc(w, 0);
            for (int i = a.low_; i < a.high_; ++i) {
                u64 x = a.c_[i - a.low_].raw()[0];
                if (!x) continue;
                int j0 = std::max(b.low_, lo - i), j1 = std::min(b.high_, hi - i);
                for (int j = j0; j < j1; ++j) acc[i + j - lo] += x * b.c_[j - b.low_].raw()[0];
            }
            for (size_t k = 0; k < w; ++k) {
                BaseElem& c = r.c_[k];
                c.raw()[0] = acc[k] % m;
                R->canonicalize(c.raw(), n);
            }
            return;
        }
        const u128 room = (~(u128)0) / (sq ? sq : 1);
        const int batch = static_cast<int>(std::min<u128>(room - 1, 1 << 20));
        for (size_t k = 0; k < w; ++k) {
            int kk = lo + static_cast<int>(k), i0, i1;
            product_range(kk, a.low_, a.high_, b.low_, b.high_, i0, i1);
            u128 acc = 0;
            int cnt = 0;
            for (int i = i0; i <= i1; ++i) {
                acc += (u128)a.c_[i - a.low_].raw()[0] * b.c_[kk - i - b.low_].raw()[0];
                if (++cnt == batch) {
                    acc %= m;
                    cnt = 1;
                }
            }
            BaseElem& c = r.c_[k];
            c.raw()[0] = static_cast<u64>(acc % m);
            R->canonicalize(c.raw(), n);
        }
        return;
    }
    const int d = R->degree();
    std::vector<BaseElem::Coords> acc(w);
    for (auto& x : acc) x.fill(0);
    BaseElem::Coords t{};
    for (int i = a.low_; i < a.high_; ++i) {
        const auto& x = a.c_[i - a.low_];
        if (x.is_zero()) continue;
        int j0 = std::max(b.low_, lo - i), j1 = std::min(b.high_, hi - i);
        for (int j = j0; j < j1; ++j) {
            const auto& y = b.c_[j - b.low_];
            if (y.is_zero()) continue;
            R->mul_raw(x.raw(), y.raw(), t);
            auto& s = acc[i + j - lo];
            for (int l = 0; l < d; ++l) {
                u64 v = s[l] + t[l];
                s[l] = v >= m ? v - m : v;
            }
        }
    }
    for (size_t k = 0; k < w; ++k) {
        BaseElem& c = r.c_[k];
        c.raw() = acc[k];
        R->canonicalize(c.raw(), n);
    }
}

template <>
void Laurent<ResidueElem>::mul_into(const Laurent& a, const Laurent& b, Laurent& r) {
    const BaseRing* R = a.R_;
    const int lo = r.low_, hi = r.high_;
    if (hi <= lo) return;
    const size_t w = static_cast<size_t>(hi - lo);
    if (R->fdeg() == 1) {
        const u64 p = static_cast<u64>(R->p());
        std::vector<u64> acc(w, 0);
        for (int i = a.low_; i < a.high_; ++i) {
            u64 x = a.c_[i - a.low_].index();
            if (!x) continue;
            int j0 = std::max(b.low_, lo - i), j1 = std::min(b.high_, hi - i);
            for (int j = j0; j < j1; ++j) acc[i + j - lo] += x * b.c_[j - b.low_].index();
        }
        for (size_t k = 0; k < w; ++k) r.c_[k] = ResidueElem(R, static_cast<std::uint32_t>(acc[k] % p));
        return;
    }
    std::vector<std::uint32_t> acc(w, 0);
    for (int i = a.low_; i < a.high_; ++i) {
        std::uint32_t x = a.c_[i - a.low_].index();
        if (!x) continue;
        int j0 = std::max(b.low_, lo - i), j1 = std::min(b.high_, hi - i);
        for (int j = j0; j < j1; ++j) {
            std::uint32_t y = b.c_[j - b.low_].index();
            if (y) acc[i + j - lo] = R->radd(acc[i + j - lo], R->rmul(x, y));
        }
    }
    for (size_t k = 0; k < w; ++k) r.c_[k] = ResidueElem(R, acc[k]);
}

template <class C>
Laurent<C> invert_power_series(const Laurent<C>& u0) {
    Laurent<C> u = u0.low() < 0 ? u0.rebased(0) : u0;
    const int m = u.high();
    if (u.low() > 0 || m <= 0) fail("NotAUnit", "power series without a unit constant term");
    C inv0 = u.coeff(0).inverse();
    Laurent<C> b(u.ring(), u.prec(), 0, m);
    if (m == 0) return b;
    b[0] = inv0;
    for (int k = 1; k < m; ++k) {
        C s = CoeffTraits<C>::zero(u.ring(), u.prec());
        for (int j = std::max(1, u.low()); j <= k; ++j) {
            const C& uj = u[j];
            if (!uj.is_zero()) s += uj * b[k - j];
        }
        b[k] = -(s * inv0);
    }
    return b;
}

template <class C>
Laurent<C> invert_unit(const Laurent<C>& f) {
    const int k = f.unit_order();
    if (k == kInfinity) fail("NotAUnit", "no unit coefficient inside the window");
    Laurent<C> v = f.shifted(-k);
    const int m = v.high();
    const int o = v.order();
    Laurent<C> u(f.ring(), f.prec(), 0, m);
    for (int j = 0; j < m; ++j)
        if (j >= v.low()) u[j] = v[j];
    Laurent<C> uinv = invert_power_series(u);
    if (o >= 0) return uinv.shifted(-k);
    const int s = -o;
    Laurent<C> polar(f.ring(), f.prec(), -s, m);
    for (int j = -s; j < 0; ++j) polar[j] = v.coeff(j);
    Laurent<C> x = -(polar * uinv);
    Laurent<C> term = Laurent<C>::monomial(f.ring(), f.prec(), 0, m);
    Laurent<C> sum = term;
    for (int t = 1; t < f.prec(); ++t) {
        term = term * x;
        sum = sum + term;
    }
    return (uinv * sum).shifted(-k);
}

template <class C>
Laurent<C> compose_with_powers(const Laurent<C>& f, const std::vector<Laurent<C>>& pw) {
    const BaseRing* R = f.ring();
    for (int k = f.low(); k < std::min(f.high(), 0); ++k)
        if (!f[k].is_zero()) fail("IllegalSubstituend", "substitution into a series with poles");
    if (pw.size() < 2) fail("IllegalSubstituend", "no powers supplied");
    const int L = static_cast<int>(pw.size()) - 1;
    const int T = std::min(f.high(), L);
    int prec = f.prec();
    for (int i = 1; i <= L; ++i) prec = std::min(prec, pw[i].prec());
    // tail sum_{i >= T} f_i g^i lies in g^T o[[Z]]
    int tail = pw[T].order();
    if (tail == kInfinity) tail = pw[T].high();
    tail = std::min(tail, pw[T].high());
    int H = tail;
    for (int i = std::max(1, f.low()); i < T; ++i)
        if (!f[i].is_zero()) H = std::min(H, pw[i].high());
    H = std::max(H, 0);
    Laurent<C> r(R, prec, 0, H);
    if (H == 0) return r;
    if (f.low() <= 0 && f.high() > 0) r[0] = CoeffTraits<C>::at_prec(f[0], prec);
    for (int i = std::max(1, f.low()); i < T; ++i) {
        const C& fi = f[i];
        if (fi.is_zero()) continue;
        const Laurent<C>& g = pw[i];
        for (int k = std::max(g.low(), 0); k < std::min(g.high(), H); ++k) {
            const C& gk = g[k];
            if (!gk.is_zero()) r[k] = CoeffTraits<C>::at_prec(r[k] + fi * gk, prec);
        }
    }
    return r;
}

template <class C>
Laurent<C> compose(const Laurent<C>& f, const Laurent<C>& g) {
    for (int k = g.low(); k <= std::min(0, g.high() - 1); ++k)
        if (!g[k].is_zero()) fail("IllegalSubstituend", "substituend must vanish at Z = 0");
    int r = g.order();
    if (r == kInfinity) r = g.high();
    if (r < 1) r = 1;
    Laurent<C> g1 = g.low() < r ? g.rebased(std::min(r, g.high())) : g;
    int fh = f.high();
    if (fh <= 0) return Laurent<C>(f.ring(), std::min(f.prec(), g.prec()), 0, 0);
    int imin = kInfinity;
    for (int i = std::max(1, f.low()); i < fh; ++i)
        if (!f[i].is_zero()) {
            imin = i;
            break;
        }
    int H = imin == kInfinity ? g.high() + (fh - 1) * r : g.high() + (imin - 1) * r;
    std::vector<Laurent<C>> pw;
    pw.reserve(fh + 1);
    pw.push_back(Laurent<C>::monomial(f.ring(), g.prec(), 0, 1));
    pw.push_back(g1.truncated(H));
    for (int i = 2; i <= fh; ++i) pw.push_back(pw.back().mul(g1, H));
    return compose_with_powers(f, pw);
}

template <class C>
Laurent<C> derivative(const Laurent<C>& f) {
    Laurent<C> r(f.ring(), f.prec(), f.low() - 1, f.high() - 1);
    for (int k = f.low(); k < f.high(); ++k) {
        if (f[k].is_zero() || k == 0) continue;
        r[k - 1] = f[k] * CoeffTraits<C>::from_int(f.ring(), k, f.prec());
    }
    return r;
}

LaurentSeries mul_pi(const LaurentSeries& f, int k) {
    int n = std::min(f.prec() + k, f.ring()->max_prec());
    LaurentSeries r(f.ring(), n, f.low(), f.high());
    for (int j = f.low(); j < f.high(); ++j)
        if (!f[j].is_zero()) r[j] = f[j].mul_pi(k).with_prec(n);
    return r;
}

LaurentSeries divide_by_pi(const LaurentSeries& f, int k) {
    LaurentSeries r(f.ring(), f.prec() - k, f.low(), f.high());
    for (int j = f.low(); j < f.high(); ++j)
        if (!f[j].is_zero()) r[j] = divide_by_pi_exact(f[j], k);
    return r;
}

int min_valuation(const LaurentSeries& f) {
    int v = kInfinity;
    for (int j = f.low(); j < f.high(); ++j) v = std::min(v, f[j].valuation());
    return v;
}

ResidueSeries reduce_mod_pi(const LaurentSeries& f) {
    ResidueSeries r(f.ring(), 1, f.low(), f.high());
    for (int k = f.low(); k < f.high(); ++k) r[k] = f.ring()->reduce(f[k]);
    return r;
}

LaurentSeries lift_from_residue(const ResidueSeries& f, int n) {
    const BaseRing* R = f.ring();
    std::vector<BaseElem> cache(static_cast<size_t>(R->q()));
    std::vector<bool> have(static_cast<size_t>(R->q()), false);
    LaurentSeries r(R, n, f.low(), f.high());
    for (int k = f.low(); k < f.high(); ++k) {
        std::uint32_t v = f[k].index();
        if (!v) continue;
        if (!have[v]) {
            cache[v] = R->teichmuller(f[k], n);
            have[v] = true;
        }
        r[k] = cache[v];
    }
    return r;
}

LaurentSeries lift_plain(const ResidueSeries& f, int n) {
    LaurentSeries r(f.ring(), n, f.low(), f.high());
    for (int k = f.low(); k < f.high(); ++k)
        if (!f[k].is_zero()) r[k] = f.ring()->lift(f[k], n);
    return r;
}

ResidueSeries frobenius_power(const ResidueSeries& f, int k) {
    const BaseRing* R = f.ring();
    i64 P = 1;
    for (int i = 0; i < k; ++i) P *= R->p();
    const u64 ce = static_cast<u64>(P);
    const int lo = static_cast<int>(f.low() * P), hi = static_cast<int>(f.high() * P);
    ResidueSeries r(R, 1, lo, hi);
    for (int j = f.low(); j < f.high(); ++j)
        if (!f[j].is_zero()) r[static_cast<int>(j * P)] = f[j].pow(ce);
    return r;
}

template Laurent<BaseElem> invert_power_series(const Laurent<BaseElem>&);
template Laurent<ResidueElem> invert_power_series(const Laurent<ResidueElem>&);
template Laurent<BaseElem> invert_unit(const Laurent<BaseElem>&);
template Laurent<ResidueElem> invert_unit(const Laurent<ResidueElem>&);
template Laurent<BaseElem> compose(const Laurent<BaseElem>&, const Laurent<BaseElem>&);
template Laurent<ResidueElem> compose(const Laurent<ResidueElem>&, const Laurent<ResidueElem>&);
template Laurent<BaseElem> compose_with_powers(const Laurent<BaseElem>&, const std::vector<Laurent<BaseElem>>&);
template Laurent<ResidueElem> compose_with_powers(const Laurent<ResidueElem>&, const std::vector<Laurent<ResidueElem>>&);
template Laurent<BaseElem> derivative(const Laurent<BaseElem>&);
template Laurent<ResidueElem> derivative(const Laurent<ResidueElem>&);

// ------------------------------------------------------------ Rational

Rational Rational::normalized() const {
    Rational r = *this;
    if (r.den < 0) {
        r.num = r.num.mul_pi(-r.den);
        r.den = 0;
    }
    if (r.den > 0) {
        int v = r.num.valuation();
        int t = std::min(v, r.den);
        if (t > 0) {
            r.num = r.num.divide_by_pi(t);
            r.den -= t;
        }
    }
    return r;
}

Rational Rational::operator+(const Rational& b) const {
    int D = std::max(den, b.den);
    BaseElem x = num.mul_pi(D - den), y = b.num.mul_pi(D - b.den);
    return Rational{x + y, D}.normalized();
}

Rational Rational::operator-(const Rational& b) const { return *this + (-b); }

Rational Rational::operator*(const Rational& b) const {
    return Rational{num.mul_tight(b.num), den + b.den}.normalized();
}

Rational Rational::div_int(i64 k) const {
    if (k == 0) fail("BadArgument", "division by zero");
    const BaseRing* R = num.ring();
    int v = 0;
    i64 u = k;
    while (u % R->p() == 0) {
        u /= R->p();
        ++v;
    }
    BaseElem x = num * R->from_int(u, num.prec()).inverse();
    if (v) x = x * R->p_unit_inverse().with_prec(std::min(R->max_prec(), x.prec())).pow(static_cast<u64>(v));
    return Rational{x, den + R->e() * v}.normalized();
}

bool Rational::is_zero() const { return num.is_zero(); }

bool Rational::operator==(const Rational& b) const { return (*this - b).is_zero(); }

bool Rational::is_integral() const {
    Rational r = normalized();
    return r.den == 0;
}

BaseElem Rational::integral_value() const {
    Rational r = normalized();
    if (r.den > 0) fail("NotDivisible", "value is not integral");
    return r.num;
}

std::string to_string(const Rational& r) {
    return to_string(r.num) + "/pi^" + std::to_string(r.den);
}

int RationalSeries::max_den() const {
    int d = 0;
    for (const auto& x : c) d = std::max(d, x.den);
    return d;
}

RationalSeries RationalSeries::of(const LaurentSeries& f) {
    RationalSeries r;
    r.R = f.ring();
    for (int k = 0; k < f.high(); ++k) r.c.push_back(Rational::of(f.coeff(k)));
    return r;
}

RationalSeries RationalSeries::operator+(const RationalSeries& b) const {
    RationalSeries r;
    r.R = R;
    size_t n = std::min(c.size(), b.c.size());
    for (size_t k = 0; k < n; ++k) r.c.push_back(c[k] + b.c[k]);
    return r;
}

RationalSeries RationalSeries::operator*(const RationalSeries& b) const {
    RationalSeries r;
    r.R = R;
    size_t n = std::min(c.size(), b.c.size());
    for (size_t k = 0; k < n; ++k) {
        Rational s{R->zero(R->max_prec()), 0};
        for (size_t i = 0; i <= k; ++i)
            if (!c[i].is_zero() && !b.c[k - i].is_zero()) s = s + c[i] * b.c[k - i];
        r.c.push_back(s);
    }
    return r;
}

RationalSeries compose(const RationalSeries& f, const RationalSeries& g) {
    if (!g.c.empty() && !g.c[0].is_zero()) fail("IllegalSubstituend", "substituend must vanish at 0");
    size_t n = std::min(f.c.size(), g.c.size());
    RationalSeries gt;
    gt.R = g.R;
    gt.c.assign(g.c.begin(), g.c.begin() + static_cast<long>(n));
    RationalSeries r;
    r.R = f.R;
    r.c.assign(n, Rational{f.R->zero(f.R->max_prec()), 0});
    for (size_t i = n; i-- > 0;) {
        r = r * gt;
        r.c[0] = r.c[0] + f.c[i];
    }
    return r;
}

}  // namespace ltlab
