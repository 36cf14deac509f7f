#include "ltlab/coleman.hpp"

namespace ltlab {

namespace {

LaurentSeries at_prec(const LaurentSeries& s, int n) { return n <= s.prec() ? s.with_prec(n) : s.lifted(n); }

// the same bookkeeping as decompose_power_series, without the arithmetic
int decompose_window_impl(int W, int n, i64 q, bool image_only) {
    int hi = kOpenWindow;
    for (int t = 0; t < n; ++t) {
        int newW = W;
        for (int i = 0; i < q; ++i) {
            if (image_only && i > 0) break;
            int hh = W > i ? static_cast<int>((W - i + q - 1) / q) : 0;
            hi = std::min(hi, hh);
            int ph = std::min(phi_window(hh, n - t, q), W - i);
            newW = std::min(newW, ph + i);
        }
        W = newW;
    }
    return hi;
}

int input_window(int target, int n, i64 q, bool image_only) {
    if (target <= 0) return 0;
    i64 hi = q * target + q;
    while (decompose_window_impl(static_cast<int>(hi), n, q, image_only) < target) hi *= 2;
    i64 lo = target;
    while (lo < hi) {
        i64 mid = (lo + hi) / 2;
        if (decompose_window_impl(static_cast<int>(mid), n, q, image_only) >= target) hi = mid;
        else lo = mid + 1;
    }
    return static_cast<int>(lo);
}

}  // namespace

int phi_window(int high, int n, i64 q) {
    if (high <= 0) return 0;
    i64 h = q * high - std::min(high, std::max(n - 1, 0)) * (q - 1);
    return static_cast<int>(std::min<i64>(h, kOpenWindow));
}

int decompose_window(int high, int n, i64 q) { return decompose_window_impl(high, n, q, false); }

int decompose_input_window(int target, int n, i64 q) { return input_window(target, n, q, false); }

int coleman_lift_window(int high, int n, i64 q) {
    int w = high;
    for (int k = n - 1; k >= 1; --k) w = decompose_input_window(w, k + 1, q);
    return w;
}

// ------------------------------------------------------------------ context

ColemanContext::ColemanContext(const FormalGroup& G, int prec, int window)
    : G_(&G), q_(G.ring().q()), n_(prec), m_(window) {
    if (prec < 1 || prec >= G.work_prec()) fail("BadArgument", "precision must lie in [1, work_prec)");
    if (window < 1) fail("BadArgument", "window must be positive");
    closed_zq_ = G.frobenius_degree() == q_;
    check_norm();
}

LaurentSeries ColemanContext::pi_power(int k, int n, int high) const {
    if (k < 0) fail("BadArgument", "negative power of [pi]");
    if (k == 0) return LaurentSeries::monomial(&ring(), n, 0, high);
    return G_->frobenius(high).with_prec(n).pow(static_cast<u64>(k), high);
}

// Horner's rule against the sparse Frobenius polynomial.
LaurentSeries ColemanContext::phi_power_series(const LaurentSeries& h, int cap) const {
    const BaseRing& R = ring();
    const int n = h.prec();
    const int H = std::max(0, std::min(phi_window(h.high(), n, q_), cap));
    const auto& f = G_->frobenius_coeffs();
    const int df = G_->frobenius_degree();
    std::vector<std::pair<int, BaseElem>> fr;
    for (int t = 1; t <= df; ++t)
        if (!f[t].is_zero()) fr.emplace_back(t, f[t].with_prec(n));
    std::vector<BaseElem> acc(H, R.zero(n));
    int cur = 0;
    int top = std::min(h.degree(), h.high() - 1);
    for (int k = top; k >= 0 && H > 0; --k) {
        if (cur > 0) {
            int nc = std::min(H, cur + df);
            for (int j = nc - 1; j >= 0; --j) {
                BaseElem s = R.zero(n);
                for (const auto& [t, c] : fr) {
                    if (t > j) break;
                    int i = j - t;
                    if (i < cur && !acc[i].is_zero()) s += c * acc[i];
                }
                acc[j] = s;
            }
            cur = nc;
        }
        if (k >= h.low()) acc[0] += h[k];
        cur = std::max(cur, 1);
    }
    return LaurentSeries::from_coeffs(&R, n, 0, H, acc);
}

LaurentSeries ColemanContext::phi(const LaurentSeries& f) const {
    int o = f.order();
    if (o == kInfinity || o >= 0) return phi_power_series(o == kInfinity ? f : f.rebased(0), kOpenWindow);
    const int n = f.prec();
    const int K = -o;
    LaurentSeries P = phi_power_series(f.shifted(K).rebased(0), kOpenWindow);
    int W = P.high() + 2 * static_cast<int>(q_) * (K + n) + 8;
    LaurentSeries Q = invert_unit(pi_power(K, n, W)).compact();
    return P.mul(Q, kOpenWindow);
}

std::vector<LaurentSeries> ColemanContext::decompose_power_series(const LaurentSeries& f, bool image_only) const {
    const BaseRing& R = ring();
    const int n = f.prec();
    const int q = static_cast<int>(q_);
    const int classes = image_only ? 1 : q;
    LaurentSeries r = f.low() == 0 ? f : f.rebased(0);
    std::vector<int> hi(classes, kOpenWindow);
    std::vector<std::vector<BaseElem>> acc(classes);
    for (int t = 0; t < n; ++t) {
        const int W = r.high(), nt = r.prec();
        LaurentSeries sub(&R, nt, 0, W);
        int newW = W;
        for (int i = 0; i < classes; ++i) {
            int hh = W > i ? (W - i + q - 1) / q : 0;
            hi[i] = std::min(hi[i], hh);
            LaurentSeries d(&R, nt, 0, hh);
            if (static_cast<int>(acc[i].size()) < hh) acc[i].resize(hh, R.zero(n));
            for (int m = 0; m < hh; ++m) {
                d[m] = r[q * m + i];
                if (!d[m].is_zero()) acc[i][m] += d[m].mul_pi(t).with_prec(n);
            }
            LaurentSeries ph = phi_power_series(d, W - i);
            newW = std::min(newW, ph.high() + i);
            sub = sub + ph.shifted(i);
        }
        LaurentSeries res = (r - sub).truncated(newW);
        if (min_valuation(res) < 1) {
            if (image_only) fail("NotInImage", "series is not in the image of phi");
            fail("InternalError", "phi-decomposition residual is not divisible by pi");
        }
        if (t + 1 == n) break;
        r = divide_by_pi(res, 1);
    }
    std::vector<LaurentSeries> out;
    for (int i = 0; i < classes; ++i) {
        LaurentSeries c(&R, n, 0, hi[i]);
        for (int m = 0; m < hi[i]; ++m) c[m] = acc[i][m];
        out.push_back(c);
    }
    return out;
}

std::vector<LaurentSeries> ColemanContext::phi_decompose(const LaurentSeries& f) const {
    int o = f.order();
    if (o == kInfinity || o >= 0) return decompose_power_series(o == kInfinity ? f.rebased(0) : f.rebased(0), false);
    const int K = -o;
    LaurentSeries x = pi_power(K, f.prec(), f.high() - f.low()).mul(f, kOpenWindow).rebased(0);
    auto c = decompose_power_series(x, false);
    for (auto& s : c) s = s.shifted(-K);
    return c;
}

LaurentSeries ColemanContext::phi_inverse(const LaurentSeries& s) const {
    int o = s.order();
    if (o == kInfinity || o >= 0) return decompose_power_series(s.rebased(0), true)[0];
    const int K = -o;
    LaurentSeries x = pi_power(K, s.prec(), s.high() - s.low()).mul(s, kOpenWindow).rebased(0);
    return decompose_power_series(x, true)[0].shifted(-K);
}

std::vector<LaurentSeries> ColemanContext::psi_table(int n, int high) const {
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = psi_cache_.find(n);
        if (it != psi_cache_.end() && it->second[0].high() >= high) {
            std::vector<LaurentSeries> out;
            for (const auto& s : it->second) out.push_back(s.truncated(high));
            return out;
        }
    }
    if (n + 1 > G_->work_prec()) fail("PrecisionExhausted", "psi needs one digit beyond the requested precision");
    const int Hs = input_window(std::max(high, 1), n, q_, true);
    auto s = newton_power_sums(G_->torsion_weier(Hs), static_cast<int>(q_));
    std::vector<LaurentSeries> T;
    for (const auto& si : s) T.push_back(phi_inverse(divide_by_pi(si, 1).with_prec(n)));
    std::lock_guard<std::mutex> lock(mu_);
    auto& slot = psi_cache_[n];
    if (slot.empty() || slot[0].high() < T[0].high()) slot = T;
    return T;
}

LaurentSeries ColemanContext::psi(const LaurentSeries& f) const {
    const int n = f.prec();
    int o = f.order();
    if (o == kInfinity) return LaurentSeries(&ring(), n, 0, decompose_window(f.high(), n, q_));
    const int K = std::max(0, -o);
    LaurentSeries x = f;
    if (K > 0) x = pi_power(K, n, f.high() - f.low()).mul(f, kOpenWindow);
    auto comps = decompose_power_series(x.rebased(0), false);
    int w = kOpenWindow;
    for (const auto& c : comps) w = std::min(w, c.high());
    auto T = psi_table(n, w);
    LaurentSeries r(&ring(), n, 0, w);
    for (int i = 0; i < q_; ++i) r = r + comps[i] * T[i];
    return r.shifted(-K);
}

LaurentSeries ColemanContext::psi_col(const LaurentSeries& f) const { return mul_pi(psi(f), 1).with_prec(f.prec()); }

// ---------------------------------------------------------------- the norm

// Z^q = sum_i phi(C_i) Z^i
std::vector<LaurentSeries> ColemanContext::zq_components(int n, int high) const {
    const BaseRing& R = ring();
    const int q = static_cast<int>(q_);
    if (closed_zq_) {
        // [pi](Z) = sum f_i Z^i with f_q a unit, and phi(Z) = [pi](Z)
        const auto& f = G_->frobenius_coeffs();
        BaseElem inv = f[q].inverse().with_prec(n);
        std::vector<LaurentSeries> C;
        C.push_back(LaurentSeries::monomial(&R, n, 1, high).scaled(inv));
        for (int i = 1; i < q; ++i) C.push_back(LaurentSeries::constant(-(f[i].with_prec(n) * inv), high));
        return C;
    }
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = zq_cache_.find(n);
        if (it != zq_cache_.end() && it->second[0].high() >= high) {
            std::vector<LaurentSeries> out;
            for (const auto& s : it->second) out.push_back(s.truncated(high));
            return out;
        }
    }
    int W = decompose_input_window(high, n, q_);
    auto C = decompose_power_series(LaurentSeries::monomial(&R, n, q, W), false);
    std::lock_guard<std::mutex> lock(mu_);
    zq_cache_[n] = C;
    return C;
}

LaurentSeries ColemanContext::norm_of_Z(int n, int high) const {
    LaurentSeries c = zq_components(n, high)[0];
    return q_ % 2 == 1 ? c : -c;
}

namespace {

// division-free expansion over the column sets used by the leading rows
LaurentSeries subset_determinant(const std::vector<std::vector<LaurentSeries>>& M, size_t from) {
    const size_t k = M.size() - from;
    std::vector<LaurentSeries> D(size_t{1} << k);
    std::vector<bool> known(D.size(), false);
    known[0] = true;
    for (size_t S = 0; S < D.size(); ++S) {
        if (!known[S]) continue;
        size_t row = from + static_cast<size_t>(__builtin_popcountll(S));
        if (row == M.size()) continue;
        int above = 0;
        for (size_t j = k; j-- > 0;) {
            if (S >> j & 1) {
                ++above;
                continue;
            }
            LaurentSeries t = S == 0 ? M[row][from + j] : D[S] * M[row][from + j];
            if (above % 2) t = -t;
            size_t T = S | (size_t{1} << j);
            D[T] = known[T] ? D[T] + t : t;
            known[T] = true;
        }
    }
    return D.back();
}

bool power_series_unit(const LaurentSeries& s) {
    int o = s.order();
    return o == 0 && s.unit_order() == 0;
}

}  // namespace

LaurentSeries series_determinant(std::vector<std::vector<LaurentSeries>> M) {
    const size_t q = M.size();
    bool negate = false;
    LaurentSeries det;
    size_t c = 0;
    for (; c < q; ++c) {
        size_t best = q;
        for (size_t r = c; r < q && best == q; ++r)
            if (power_series_unit(M[r][c])) best = r;
        if (best == q) break;
        if (best != c) {
            std::swap(M[best], M[c]);
            negate = !negate;
        }
        const LaurentSeries& p = M[c][c];
        det = c == 0 ? p : det * p;
        if (c + 1 == q) return negate ? -det : det;
        LaurentSeries pinv = invert_power_series(p);
        for (size_t r = c + 1; r < q; ++r) {
            if (M[r][c].is_zero() && M[r][c].low() >= 0) {
                // a zero entry only narrows the window
                int w = std::min(M[r][c].high(), pinv.high());
                for (size_t j = c + 1; j < q; ++j) M[r][j] = M[r][j].truncated(std::min(w, M[c][j].high()));
                continue;
            }
            LaurentSeries fac = M[r][c] * pinv;
            for (size_t j = c + 1; j < q; ++j) M[r][j] = M[r][j] - fac * M[c][j];
        }
    }
    LaurentSeries rest = subset_determinant(M, c);
    det = c == 0 ? rest : det * rest;
    return negate ? -det : det;
}

// det of multiplication by h on the basis Z^i over phi(o_L[[Z]])
LaurentSeries ColemanContext::norm_power_series(const LaurentSeries& h) const {
    const int q = static_cast<int>(q_);
    auto comps = decompose_power_series(h, false);
    int w = kOpenWindow;
    for (const auto& c : comps) w = std::min(w, c.high());
    auto C = zq_components(h.prec(), w);
    std::vector<std::vector<LaurentSeries>> M(q, std::vector<LaurentSeries>(q));
    for (int i = 0; i < q; ++i) M[i][0] = comps[i];
    for (int j = 1; j < q; ++j) {
        const LaurentSeries& top = M[q - 1][j - 1];
        M[0][j] = top * C[0];
        for (int i = 1; i < q; ++i) M[i][j] = M[i - 1][j - 1] + top * C[i];
    }
    return series_determinant(std::move(M));
}

LaurentSeries ColemanContext::norm(const LaurentSeries& f) const {
    const int n = f.prec();
    int v = f.order();
    if (v == kInfinity) fail("NotAUnit", "norm of zero");
    LaurentSeries h = f.shifted(-v).rebased(0);
    if (h.unit_order() == kInfinity) fail("NotAUnit", "series is not a unit of A_L");
    LaurentSeries D = norm_power_series(h);
    if (v == 0) return D;
    const int a = std::abs(v);
    LaurentSeries NZ = norm_of_Z(n, D.high() + 2 * a + 4);
    LaurentSeries Zp = v > 0 ? NZ.pow(a).compact() : invert_unit(NZ).pow(a).compact();
    return D * Zp;
}

// ------------------------------------------------------ Gamma, Delta, lifts

LaurentSeries ColemanContext::gamma_act(const BaseElem& c, const LaurentSeries& f) const {
    if (!c.is_unit()) fail("NotAUnit", "Gamma acts through units of o_L");
    int o = f.order();
    if (o == kInfinity) return f;
    const int K = std::max(0, -o);
    LaurentSeries h = f.shifted(K).rebased(0);
    LaurentSeries x = compose(h, G_->mult(c, std::max(h.high() + 1, 2)));
    if (K == 0) return x;
    LaurentSeries inv = invert_unit(G_->mult(c, h.high() + 2 * K + 4)).pow(K).compact();
    return x * inv;
}

LaurentSeries ColemanContext::delta(const LaurentSeries& f) const {
    LaurentSeries D = (derivative(f) * invert_unit(f)).compact();
    int w = D.low() < 0 ? D.high() - D.low() : D.high();
    return G_->g_inverse(std::max(w, 1)) * D;
}

LaurentSeries ColemanContext::nabla(const LaurentSeries& g, const BaseElem& a) const { return delta(g).scaled(a); }

Rational ColemanContext::coates_wiles(const LaurentSeries& g, int r, int den_budget) const {
    if (r < 1) fail("BadArgument", "Coates-Wiles index starts at 1");
    LaurentSeries x = delta(g).compact();
    int o = x.order();
    if (o != kInfinity && o < 0) fail("BadArgument", "Delta g has a pole; g must be a unit power series");
    x = x.rebased(0);
    for (int i = 1; i < r; ++i) {
        LaurentSeries d = derivative(x).rebased(0);
        x = G_->g_inverse(std::max(d.high(), 1)) * d;
    }
    if (x.high() < 1) fail("WindowTooSmall", "window exhausted before reaching the requested index");
    Rational v = Rational::of(x[0]);
    for (int k = 2; k <= r; ++k) v = v.div_int(k);
    if (v.den > den_budget)
        fail("DenominatorBudgetExceeded", "psi^" + std::to_string(r) + " needs pi^-" + std::to_string(v.den));
    return v;
}

LaurentSeries ColemanContext::coleman_lift(const ResidueSeries& u, int n, int high) const {
    return coleman_lift_from(lift_from_residue(u, n), n, high);
}

LaurentSeries ColemanContext::coleman_lift_from(const LaurentSeries& g0, int n, int high) const {
    if (n < 1) fail("BadArgument", "precision must be positive");
    int v = g0.order();
    if (v == kInfinity || g0.unit_order() != v) fail("NotAUnit", "starting series does not reduce to a unit");
    const int T = std::max(high - v, 1);
    LaurentSeries u = g0.shifted(-v).rebased(0);
    // iteration k works modulo pi^(k+1) and must leave window w[k]
    std::vector<int> w(n);
    w[n - 1] = T;
    for (int k = n - 1; k >= 1; --k) w[k - 1] = decompose_input_window(w[k], k + 1, q_);
    u = u.widened(w[0]);
    for (int k = 1; k < n; ++k) {
        LaurentSeries y = norm_power_series(at_prec(u, k + 1));
        if (v != 0) {
            LaurentSeries wz = norm_of_Z(k + 1, w[k] + 1).shifted(-1).rebased(0);
            if (v < 0) wz = invert_power_series(wz);
            y = y * wz.pow(static_cast<u64>(std::abs(v)), w[k]);
        }
        if (y.high() < w[k]) fail("InternalError", "norm iteration fell short of its planned window");
        u = y.truncated(w[k]);
    }
    return at_prec(u.truncated(T), n).shifted(v);
}

// -------------------------------------------------------------- build checks

void ColemanContext::check_norm() const {
    const BaseRing& R = ring();
    const int n = n_, m = m_, q = static_cast<int>(q_);
    // power sums of the torsion points against phi of the psi table
    auto T = psi_table(n, m);
    const int Hs = phi_window(m, n, q_);
    auto s = newton_power_sums(G_->torsion_weier(Hs), q);
    for (int i = 0; i < q; ++i) {
        LaurentSeries lhs = mul_pi(phi(T[i]), 1);
        if (!(lhs == s[i].with_prec(lhs.prec())))
            fail("NormGateFailed", "pi phi(psi(Z^" + std::to_string(i) + ")) differs from the power sum");
    }
    // N([pi]) = Z^q
    int W = decompose_input_window(m + 2 * q, n, q_) + 2 * q;
    LaurentSeries a = norm(pi_power(1, n, W));
    if (a.high() <= q || !(a == LaurentSeries::monomial(&R, n, q, a.high())))
        fail("NormGateFailed", "N([pi]) is not Z^q");
    // N(phi(f)) = f^q
    LaurentSeries f = LaurentSeries::from_coeffs(
        &R, n, 0, 4, {R.one(n), R.one(n), R.teichmuller(R.residue_generator(), n), R.from_int(-1, n)});
    int Wd = decompose_input_window(m, n, q_);
    int Wf = (Wd + (n - 1) * (q - 1)) / q + 2;
    LaurentSeries b = norm(phi(f.widened(Wf)));
    LaurentSeries fq = f.widened(m).pow(static_cast<u64>(q), m);
    if (b.high() < m || !(b == fq)) fail("NormGateFailed", "N(phi(f)) is not f^q");
}

}  // namespace ltlab
