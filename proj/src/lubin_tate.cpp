#include "ltlab/lubin_tate.hpp"

namespace ltlab {

namespace {

constexpr int kExact = INT_MAX / 8;

// truncated powers of a polynomial without constant term: out[i][k] = [f^i]_k
std::vector<std::vector<BaseElem>> poly_powers(const std::vector<BaseElem>& f, int count, int H, int N) {
    const BaseRing* R = f[1].ring();
    std::vector<std::vector<BaseElem>> out(count, std::vector<BaseElem>(H, R->zero(N)));
    if (count == 0 || H == 0) return out;
    out[0][0] = R->one(N);
    for (int i = 1; i < count; ++i)
        for (int k = i; k < H; ++k) {
            BaseElem s = R->zero(N);
            for (int a = 1; a < static_cast<int>(f.size()) && a <= k - (i - 1); ++a)
                if (!f[a].is_zero() && !out[i - 1][k - a].is_zero()) s += f[a] * out[i - 1][k - a];
            out[i][k] = s;
        }
    return out;
}

BaseElem solve_step(const BaseElem& err, const BaseElem& unit_inv, int N) {
    if (err.valuation() < 1) fail("BadFrobenius", "degree-by-degree solve met a non-divisible error term");
    return (err.divide_by_pi(1) * unit_inv).lifted(N);
}

}  // namespace

LaurentSeries standard_frobenius(const BaseRing& R, const std::string& kind) {
    const int N = R.max_prec();
    const int q = static_cast<int>(R.q());
    if (kind == "pi") {
        LaurentSeries f(&R, N, 0, q + 1);
        f[1] = R.pi(N);
        f[q] = R.one(N);
        return f;
    }
    if (kind == "gm") {
        if (R.e() != 1 || R.fdeg() != 1) fail("BadFrobenius", "(1+Z)^p - 1 needs o_L = Z_p");
        LaurentSeries f(&R, N, 0, q + 1);
        i64 b = 1;
        for (int k = 1; k <= q; ++k) {
            b = b * (q - k + 1) / k;
            f[k] = R.from_int(b, N);
        }
        return f;
    }
    fail("BadFrobenius", "unknown Frobenius family " + kind);
}

std::vector<int> lt_precision_profile(int degree, int work_prec, int rho1, i64 q) {
    std::vector<int> rho(std::max(degree, 2), kExact);
    rho[1] = rho1 >= work_prec ? kExact : rho1;
    int lo = rho[1];
    for (int k = 2; k < degree; ++k) {
        int r = std::min(work_prec, lo == kExact ? kExact : lo + 1);
        if (k % q == 0) r = std::min(r, rho[k / q]);
        rho[k] = r - 1;
        lo = std::min(lo, rho[k]);
    }
    return rho;
}

LaurentSeries Bivariate::eval(const LaurentSeries& A, const LaurentSeries& B) const {
    auto ord = [](const LaurentSeries& s) {
        int o = s.order();
        return o == kInfinity ? s.high() : o;
    };
    for (const LaurentSeries* s : {&A, &B})
        for (int k = s->low(); k <= std::min(0, s->high() - 1); ++k)
            if (!(*s)[k].is_zero()) fail("IllegalSubstituend", "law arguments must vanish at Z = 0");
    const int D = degree();
    const int r = std::max(1, std::min(ord(A), ord(B)));
    const int H = static_cast<int>(std::min<long long>(static_cast<long long>(D) * r, kOpenWindow));
    LaurentSeries a = A.rebased(0), b = B.rebased(0);
    std::vector<LaurentSeries> pa{LaurentSeries::monomial(R, a.prec(), 0, H)}, pb{LaurentSeries::monomial(R, b.prec(), 0, H)};
    for (int i = 1; i < D; ++i) {
        pa.push_back(i == 1 ? a.truncated(H) : pa.back().mul(a, H));
        pb.push_back(i == 1 ? b.truncated(H) : pb.back().mul(b, H));
    }
    LaurentSeries acc(R, std::min({prec, A.prec(), B.prec()}), 0, H);
    for (int k = 1; k < D; ++k)
        for (int i = 0; i <= k; ++i) {
            const BaseElem& c = hom[k][i];
            if (c.is_zero()) continue;
            acc = acc + pa[i].mul(pb[k - i], H).scaled(c);
        }
    return acc;
}

FormalGroup::FormalGroup(const BaseRing& R, const LaurentSeries& frobenius, int degree) : R_(&R), Nw_(R.max_prec()) {
    if (frobenius.ring() != &R) fail("SpecMismatch", "Frobenius series over another ring");
    if (degree < 2) fail("BadArgument", "working degree must be at least 2");
    int df = frobenius.degree();
    if (df < 1) fail("BadFrobenius", "Frobenius series is zero");
    f_.assign(df + 1, R.zero(Nw_));
    for (int k = frobenius.low(); k <= df; ++k) {
        if (k < 0) {
            if (!frobenius[k].is_zero()) fail("BadFrobenius", "Frobenius series has poles");
            continue;
        }
        f_[k] = frobenius[k].lifted(Nw_);
    }
    check_frobenius();
    build_law(degree);
}

void FormalGroup::check_frobenius() const {
    const i64 q = R_->q();
    if (static_cast<i64>(f_.size()) <= q) fail("BadFrobenius", "Frobenius series must reach degree q");
    if (!f_[0].is_zero()) fail("BadFrobenius", "Frobenius series has a constant term");
    if (f_[1] != R_->pi(Nw_)) fail("BadFrobenius", "linear coefficient must be pi");
    for (size_t k = 2; k < f_.size(); ++k) {
        ResidueElem r = R_->reduce(f_[k]);
        bool ok = static_cast<i64>(k) == q ? r == R_->rone() : r.is_zero();
        if (!ok) fail("BadFrobenius", "Frobenius series is not Z^q modulo pi");
    }
}

void FormalGroup::build_law(int D) {
    const int N = Nw_;
    const i64 q = R_->q();
    const int df = frobenius_degree();
    const int L = std::min(df, D - 1);
    law_.R = R_;
    law_.hom.assign(D, {});
    law_.hom[0] = {R_->zero(N)};
    law_.hom[1] = {R_->one(N), R_->one(N)};
    auto fp = poly_powers(f_, D, D, N);
    // pw[l][k]: degree-k component of F^l
    std::vector<std::vector<std::vector<BaseElem>>> pw(L + 1, std::vector<std::vector<BaseElem>>(D));
    pw[1][1] = law_.hom[1];
    auto& hom = law_.hom;
    for (int k = 2; k < D; ++k) {
        for (int l = 2; l <= std::min(L, k); ++l) {
            std::vector<BaseElem> s(k + 1, R_->zero(N));
            for (int a = 1; a <= k - (l - 1); ++a) {
                const auto& x = hom[a];
                const auto& y = pw[l - 1][k - a];
                if (y.empty()) continue;
                for (int i = 0; i <= a; ++i) {
                    if (x[i].is_zero()) continue;
                    for (int j = 0; j <= k - a; ++j)
                        if (!y[j].is_zero()) s[i + j] += x[i] * y[j];
                }
            }
            pw[l][k] = std::move(s);
        }
        std::vector<BaseElem> err(k + 1, R_->zero(N));
        for (int l = 2; l <= std::min(L, k); ++l)
            if (!f_[l].is_zero())
                for (int i = 0; i <= k; ++i) err[i] += f_[l] * pw[l][k][i];
        // subtract the degree-k part of F_{<k}(f(X), f(Y))
        for (int d = 1; d < k; ++d)
            for (int i = 0; i <= d; ++i) {
                const BaseElem& c = hom[d][i];
                if (c.is_zero()) continue;
                int j = d - i;
                for (int a = i; a <= k - j; ++a) {
                    const BaseElem& u = fp[i][a];
                    const BaseElem& v = fp[j][k - a];
                    if (!u.is_zero() && !v.is_zero()) err[a] -= c * u * v;
                }
            }
        BaseElem unit_inv = (R_->pi_pow(k - 1, N) - R_->one(N)).inverse().with_prec(N - 1);
        hom[k].assign(k + 1, R_->zero(N));
        for (int i = 0; i <= k; ++i) hom[k][i] = solve_step(err[i], unit_inv, N);
        if (L >= 1) pw[1][k] = hom[k];
    }
    auto rho = lt_precision_profile(D, N, kExact, q);
    int prec = N;
    for (int k = 2; k < D; ++k) prec = std::min(prec, rho[k]);
    law_.prec = prec;
    for (auto& h : hom)
        for (auto& c : h) c = c.with_prec(prec);

    ginv_ = LaurentSeries(R_, prec, 0, D - 1);
    for (int i = 0; i < D - 1; ++i) ginv_[i] = law_.coeff(i, 1);
    g_ = invert_power_series(ginv_);
    log_.R = R_;
    log_.c.assign(D, Rational{R_->zero(prec), 0});
    for (int k = 1; k < D && k - 1 < g_.high(); ++k) log_.c[k] = Rational::of(g_[k - 1]).div_int(k);
    log_.c.resize(std::min(D, g_.high() + 1), Rational{R_->zero(prec), 0});
}

LaurentSeries FormalGroup::frobenius(int high) const {
    LaurentSeries r(R_, Nw_, 0, high);
    for (int k = 0; k < std::min<int>(high, static_cast<int>(f_.size())); ++k) r[k] = f_[k];
    return r;
}

LaurentSeries FormalGroup::mult(const BaseElem& a0, int high) const {
    const int H = high < 0 ? degree() : high;
    if (H < 2) fail("BadArgument", "window too small for [a]");
    const int N = Nw_;
    BaseElem a = a0.prec() > N ? a0.with_prec(N) : a0;
    auto key = std::make_pair(a.coords(), H);
    key.first.push_back(a.prec());
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = mult_cache_.find(key);
        if (it != mult_cache_.end()) return it->second;
    }
    const int df = frobenius_degree();
    const int L = std::min(df, H - 1);
    auto fp = poly_powers(f_, H, H, N);
    std::vector<BaseElem> c(H, R_->zero(N));
    c[1] = a.lifted(N);
    std::vector<std::vector<BaseElem>> pw(L + 1, std::vector<BaseElem>(H, R_->zero(N)));
    pw[1][1] = c[1];
    for (int k = 2; k < H; ++k) {
        for (int l = 2; l <= std::min(L, k); ++l) {
            BaseElem s = R_->zero(N);
            for (int b = 1; b <= k - (l - 1); ++b)
                if (!c[b].is_zero() && !pw[l - 1][k - b].is_zero()) s += c[b] * pw[l - 1][k - b];
            pw[l][k] = s;
        }
        BaseElem err = R_->zero(N);
        for (int l = 2; l <= std::min(L, k); ++l)
            if (!f_[l].is_zero()) err += f_[l] * pw[l][k];
        for (int i = 1; i < k; ++i)
            if (!c[i].is_zero() && !fp[i][k].is_zero()) err -= c[i] * fp[i][k];
        BaseElem unit_inv = (R_->pi_pow(k - 1, N) - R_->one(N)).inverse().with_prec(N - 1);
        c[k] = solve_step(err, unit_inv, N);
        if (L >= 1) pw[1][k] = c[k];
    }
    auto rho = lt_precision_profile(H, N, a.prec(), R_->q());
    int prec = std::min(N, rho[1]);
    for (int k = 2; k < H; ++k) prec = std::min(prec, rho[k]);
    LaurentSeries r(R_, prec, 0, H);
    for (int k = 1; k < H; ++k) r[k] = c[k].with_prec(prec);
    std::lock_guard<std::mutex> lock(mu_);
    mult_cache_.emplace(key, r);
    return r;
}

RationalSeries FormalGroup::exp(int high, int den_budget) const {
    if (high > log_.high()) fail("WindowTooSmall", "logarithm known only to degree " + std::to_string(log_.high()));
    const Rational zero{R_->zero(prec()), 0};
    RationalSeries E;
    E.R = R_;
    E.c.assign(high, zero);
    if (high > 1) E.c[1] = Rational::of(R_->one(prec()));
    for (int k = 2; k < high; ++k) {
        RationalSeries e, l;
        e.R = l.R = R_;
        e.c.assign(E.c.begin(), E.c.begin() + k + 1);
        l.c.assign(log_.c.begin(), log_.c.begin() + k + 1);
        Rational v = compose(l, e).c[k];
        E.c[k] = -v;
        if (E.c[k].den > den_budget)
            fail("DenominatorBudgetExceeded", "exp coefficient of degree " + std::to_string(k) + " needs pi^-" +
                                                  std::to_string(E.c[k].den));
        if (E.c[k].abs_prec() < 1) fail("PrecisionExhausted", "exp coefficient lost all precision");
    }
    return E;
}

LaurentSeries FormalGroup::g_inverse(int high) const {
    {
        std::lock_guard<std::mutex> lock(mu_);
        if (ginv_long_.ring() && ginv_long_.high() >= high) return ginv_long_.truncated(high);
    }
    const int N = Nw_;
    const int H = std::max(high, 1);
    const int df = frobenius_degree();
    auto fp = poly_powers(f_, H, H, N);
    std::vector<BaseElem> d(df, R_->zero(N));  // f'
    for (int j = 0; j < df; ++j) d[j] = f_[j + 1] * R_->from_int(j + 1, N);
    std::vector<BaseElem> h(H, R_->zero(N));
    h[0] = R_->one(N);
    for (int k = 1; k < H; ++k) {
        BaseElem err = R_->zero(N);
        for (int j = 1; j <= std::min(k, df - 1); ++j)
            if (!d[j].is_zero()) err += d[j] * h[k - j];
        BaseElem t = R_->zero(N);
        for (int i = 1; i < k; ++i)
            if (!fp[i][k].is_zero()) t += h[i] * fp[i][k];
        err -= t.mul_pi(1).with_prec(N);
        BaseElem unit_inv = (R_->pi_pow(k, N) - R_->one(N)).inverse();
        h[k] = solve_step(err, unit_inv, N);
    }
    LaurentSeries r(R_, N - 1, 0, high);
    for (int k = 0; k < high; ++k) r[k] = h[k].with_prec(N - 1);
    std::lock_guard<std::mutex> lock(mu_);
    if (!ginv_long_.ring() || ginv_long_.high() < high) ginv_long_ = r;
    return r;
}

LaurentSeries FormalGroup::g(int high) const { return invert_power_series(g_inverse(high)); }

LaurentSeries FormalGroup::inv_deriv(const LaurentSeries& f) const { return ginv_ * derivative(f); }

WeierPoly FormalGroup::torsion_weier(int zhigh) const {
    const int N = Nw_;
    const int q = static_cast<int>(R_->q());
    const int df = frobenius_degree();
    WeierPoly P;
    P.coeffs.assign(q + 1, LaurentSeries(R_, N, 0, zhigh));
    LaurentSeries fz = frobenius(zhigh);
    if (df == q) {
        BaseElem lead_inv = f_[q].inverse();
        P.exact = f_[q] == R_->one(N);
        P.coeffs[0] = (-fz).scaled(lead_inv);
        for (int i = 1; i < q; ++i) P.coeffs[i] = LaurentSeries::constant(f_[i] * lead_inv, zhigh);
        P.coeffs[q] = LaurentSeries::monomial(R_, N, 0, zhigh);
        return P;
    }
    // [pi](X) - [pi](Z) = G_low(X) + X^q H(X); solve H V = 1 - (G_low V)_high
    // by fixed-point iteration, each round gaining one power of (pi, Z).
    const int rounds = N + zhigh;
    const int K = q * (rounds + 2);
    std::vector<BaseElem> Hc(K, R_->zero(N));
    for (int j = 0; j < K && q + j <= df; ++j) Hc[j] = f_[q + j];
    LaurentSeries Hs = LaurentSeries::from_coeffs(R_, N, 0, K, Hc);
    LaurentSeries Hinv = invert_power_series(Hs);
    LaurentSeries G0 = -fz;
    std::vector<LaurentSeries> V(K);
    for (int j = 0; j < K; ++j) V[j] = LaurentSeries::constant(Hinv[j], zhigh);
    for (int t = 0; t < rounds; ++t) {
        std::vector<LaurentSeries> W(K, LaurentSeries(R_, N, 0, zhigh));
        for (int j = 0; j < K; ++j) {
            LaurentSeries s(R_, N, 0, zhigh);
            for (int a = 0; a < q; ++a) {
                int b = q + j - a;
                if (b >= K) continue;
                if (a == 0) s = s + G0.mul(V[b], zhigh);
                else if (!f_[a].is_zero()) s = s + V[b].scaled(f_[a]);
            }
            W[j] = s;
        }
        W[0] = LaurentSeries::monomial(R_, N, 0, zhigh) - W[0];
        for (int j = 1; j < K; ++j) W[j] = -W[j];
        for (int j = 0; j < K; ++j) {
            LaurentSeries s(R_, N, 0, zhigh);
            for (int b = 0; b <= j; ++b)
                if (!Hinv[j - b].is_zero()) s = s + W[b].scaled(Hinv[j - b]);
            V[j] = s;
        }
    }
    for (int i = 0; i < q; ++i) {
        LaurentSeries s(R_, N, 0, zhigh);
        for (int a = 0; a <= i; ++a) s = s + (a == 0 ? G0.mul(V[i], zhigh) : V[i - a].scaled(f_[a]));
        P.coeffs[i] = s;
    }
    P.coeffs[q] = LaurentSeries::monomial(R_, N, 0, zhigh);
    return P;
}

std::vector<LaurentSeries> newton_power_sums(const WeierPoly& P, int count) {
    const int q = P.degree();
    const BaseRing* R = P.coeffs[0].ring();
    const int N = P.coeffs[0].prec();
    int H = P.coeffs[0].high();
    for (const auto& c : P.coeffs) H = std::min(H, c.high());
    std::vector<LaurentSeries> s;
    s.reserve(count);
    if (count > 0) s.push_back(LaurentSeries::constant(R->from_int(q, N), H));
    for (int k = 1; k < count; ++k) {
        LaurentSeries v(R, N, 0, H);
        for (int i = 1; i <= std::min(k - 1, q); ++i) v = v + P.coeffs[q - i].mul(s[k - i], H);
        if (k <= q) v = v + P.coeffs[q - k].scaled(R->from_int(k, N));
        s.push_back(-v);
    }
    return s;
}

}  // namespace ltlab
