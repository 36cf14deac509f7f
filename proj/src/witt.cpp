#include "ltlab/witt.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>

namespace ltlab {

namespace {

void check_same(const WittVec& x, const WittVec& y) {
    if (x.domain != y.domain) fail("DomainMismatch", domain_name(x.domain) + " vs " + domain_name(y.domain));
    if (x.length() != y.length()) fail("DomainMismatch", "Witt lengths differ");
    if (!x.ring().same(y.ring())) fail("SpecMismatch", "Witt vectors over different rings");
}

void require_integral(const WittVec& x) {
    if (is_char_p(x.domain)) fail("DomainMismatch", "ghost map needs a pi-torsion-free domain, got " + domain_name(x.domain));
}

// power with the stored window tightened to the actual order
LaurentSeries qpow(const LaurentSeries& x, i64 q) { return x.compact().pow(static_cast<u64>(q)); }

// working precision for operations on components known modulo pi^N
int work_prec(const BaseRing& R, int N, int n) {
    int P = N + n - 1;
    if (P > R.max_prec()) fail("PrecisionExhausted", "Witt length " + std::to_string(n) + " at precision " + std::to_string(N) + " exceeds the ring's precision cap");
    return P;
}

std::vector<LaurentSeries> lift_all(const std::vector<LaurentSeries>& x, int P) {
    std::vector<LaurentSeries> r;
    r.reserve(x.size());
    for (const auto& c : x) r.push_back(c.lifted(P));
    return r;
}

GhostVec ghost_raw(std::vector<LaurentSeries> pw, int count, i64 q) {
    GhostVec g;
    for (int i = 0; i < count; ++i) {
        // pw[m] = x_m^(q^(i-m))
        LaurentSeries s = pw[0];
        for (int m = 1; m <= i; ++m) s = s + mul_pi(pw[m], m);
        g.push_back(s);
        if (i + 1 < count)
            for (int m = 0; m <= i; ++m) pw[m] = qpow(pw[m], q);
    }
    return g;
}

std::vector<LaurentSeries> solve_raw(const GhostVec& g, i64 q) {
    const int n = static_cast<int>(g.size());
    std::vector<LaurentSeries> x, pw;
    for (int i = 0; i < n; ++i) {
        LaurentSeries s = g[i];
        for (int m = 0; m < i; ++m) s = s - mul_pi(pw[m], m);
        if (s.prec() <= i) fail("PrecisionExhausted", "ghost component " + std::to_string(i) + " known only modulo pi^" + std::to_string(s.prec()));
        x.push_back(i == 0 ? s : divide_by_pi(s, i));
        pw.push_back(x.back());
        if (i + 1 < n)
            for (int m = 0; m <= i; ++m) pw[m] = qpow(pw[m], q);
    }
    return x;
}

WittVec finish(WittDomain d, std::vector<LaurentSeries> comps, int N) {
    for (auto& c : comps) c = c.with_prec(N);
    return {d, std::move(comps)};
}

LaurentSeries zero_like(const LaurentSeries& b, bool scalar) {
    return LaurentSeries(b.ring(), b.prec(), 0, scalar ? 1 : std::max(b.high(), 1));
}

}  // namespace

std::string domain_name(WittDomain d) {
    switch (d) {
    case WittDomain::residue_field: return "k";
    case WittDomain::residue_series: return "k((Z))";
    case WittDomain::integers: return "o_L";
    case WittDomain::series: return "A_L";
    }
    return "?";
}

WittDomain domain_from_name(const std::string& s) {
    for (auto d : {WittDomain::residue_field, WittDomain::residue_series, WittDomain::integers, WittDomain::series})
        if (domain_name(d) == s) return d;
    fail("BadArgument", "unknown Witt domain '" + s + "'");
}

int WittVec::prec() const {
    int p = kInfinity;
    for (const auto& x : c) p = std::min(p, x.prec());
    return p;
}

bool WittVec::operator==(const WittVec& b) const {
    if (domain != b.domain || length() != b.length()) return false;
    for (int i = 0; i < length(); ++i)
        if (!(c[i] == b.c[i])) return false;
    return true;
}

std::string WittVec::str() const {
    std::string s = "W_" + std::to_string(length()) + "(" + domain_name(domain) + ")(";
    for (int i = 0; i < length(); ++i) {
        if (i) s += ", ";
        s += is_scalar(domain) ? to_string(c[i].coeff(0)) : c[i].str();
    }
    return s + ")";
}

WittVec make_witt(WittDomain d, std::vector<LaurentSeries> comps) {
    if (comps.empty()) fail("BadArgument", "Witt vectors have length at least 1");
    for (auto& x : comps) {
        if (x.ring() != comps[0].ring()) fail("SpecMismatch", "components over different rings");
        if (is_char_p(d)) x = x.with_prec(1);
        if (is_scalar(d)) {
            if (x.high() < 1) fail("WindowTooSmall", "scalar component needs the constant term");
            for (int k = x.low(); k < x.high(); ++k)
                if (k != 0 && !x[k].is_zero()) fail("BadElement", "scalar component has a Z-term");
            x = LaurentSeries::constant(x.coeff(0), 1);
        }
    }
    return {d, std::move(comps)};
}

WittVec witt_scalars(WittDomain d, const std::vector<BaseElem>& comps) {
    if (!is_scalar(d)) fail("DomainMismatch", "scalar components for a series domain");
    std::vector<LaurentSeries> s;
    for (const auto& a : comps) s.push_back(LaurentSeries::constant(a, 1));
    return make_witt(d, std::move(s));
}

WittVec witt_zero(const BaseRing& R, WittDomain d, int n, int prec, int high) {
    const int N = is_char_p(d) ? 1 : prec;
    std::vector<LaurentSeries> s(n, LaurentSeries(&R, N, 0, is_scalar(d) ? 1 : high));
    return {d, std::move(s)};
}

GhostVec ghost(const WittVec& x) {
    require_integral(x);
    return ghost_raw(x.c, x.length(), x.ring().q());
}

WittVec ghost_solve(WittDomain d, const GhostVec& g) {
    if (is_char_p(d)) fail("DomainMismatch", "ghost coordinates need a pi-torsion-free domain");
    if (g.empty()) fail("BadArgument", "empty ghost vector");
    return {d, solve_raw(g, g[0].ring()->q())};
}

WittVec witt_arith(const WittVec& x, const WittVec& y, WittOp op) {
    if (op == WittOp::neg) return witt_neg(x);
    check_same(x, y);
    const BaseRing& R = x.ring();
    const int n = x.length(), N = std::min(x.prec(), y.prec()), P = work_prec(R, N, n);
    GhostVec gx = ghost_raw(lift_all(x.c, P), n, R.q()), gy = ghost_raw(lift_all(y.c, P), n, R.q());
    GhostVec g;
    for (int i = 0; i < n; ++i) {
        switch (op) {
        case WittOp::add: g.push_back(gx[i] + gy[i]); break;
        case WittOp::sub: g.push_back(gx[i] - gy[i]); break;
        default: g.push_back(gx[i] * gy[i]); break;
        }
    }
    return finish(x.domain, solve_raw(g, R.q()), N);
}

WittVec witt_neg(const WittVec& x) {
    const BaseRing& R = x.ring();
    const int n = x.length(), N = x.prec(), P = work_prec(R, N, n);
    GhostVec g = ghost_raw(lift_all(x.c, P), n, R.q());
    for (auto& s : g) s = -s;
    return finish(x.domain, solve_raw(g, R.q()), N);
}

WittVec teichmuller_w(WittDomain d, const LaurentSeries& b, int n) {
    if (n < 1) fail("BadArgument", "Witt length must be positive");
    std::vector<LaurentSeries> s{b};
    LaurentSeries z = zero_like(is_char_p(d) ? b.with_prec(1) : b, is_scalar(d));
    for (int i = 1; i < n; ++i) s.push_back(z);
    return make_witt(d, std::move(s));
}

WittVec vshift(const WittVec& x) {
    std::vector<LaurentSeries> s{zero_like(x.c[0], is_scalar(x.domain))};
    s.insert(s.end(), x.c.begin(), x.c.end());
    return {x.domain, std::move(s)};
}

WittVec frobenius_w(const WittVec& x) {
    if (!is_char_p(x.domain)) fail("DomainMismatch", "componentwise Frobenius needs a residue domain");
    const BaseRing& R = x.ring();
    const i64 q = R.q();
    WittVec r = x;
    for (auto& c : r.c) {
        if (is_scalar(x.domain)) {
            c = LaurentSeries::constant(c.coeff(0).pow(static_cast<u64>(q)), 1);
            continue;
        }
        // characteristic p: exponents scale by q
        const int lo = static_cast<int>(c.low() * q), hi = static_cast<int>(c.high() * q);
        LaurentSeries f(&R, 1, lo, hi);
        for (int k = c.low(); k < c.high(); ++k) f[static_cast<int>(k * q)] = c[k].pow(static_cast<u64>(q));
        c = f;
    }
    return r;
}

WittVec frobenius_ghost(const WittVec& x) {
    const BaseRing& R = x.ring();
    const int n = x.length(), N = x.prec();
    if (n < 2) fail("BadArgument", "Frobenius through ghosts shortens the vector; need length >= 2");
    const int P = work_prec(R, N, n);
    GhostVec g = ghost_raw(lift_all(x.c, P), n, R.q());
    g.erase(g.begin());
    return finish(x.domain, solve_raw(g, R.q()), N);
}

WittVec wp(const WittVec& x) { return frobenius_w(x) - x; }

WittVec s_map(const BaseElem& b, int n) {
    if (n < 1) fail("BadArgument", "Witt length must be positive");
    if (b.prec() < n) fail("PrecisionExhausted", "element known only modulo pi^" + std::to_string(b.prec()));
    GhostVec g(n, LaurentSeries::constant(b.with_prec(n), 1));
    return finish(WittDomain::residue_field, solve_raw(g, b.ring()->q()), 1);
}

WittVec s_map(const ColemanContext& C, const LaurentSeries& b, int n) {
    if (n < 1) fail("BadArgument", "Witt length must be positive");
    if (b.prec() < n) fail("PrecisionExhausted", "series known only modulo pi^" + std::to_string(b.prec()));
    GhostVec g{b.with_prec(n)};
    for (int i = 1; i < n; ++i) g.push_back(C.phi(g.back()));
    return finish(WittDomain::residue_series, solve_raw(g, C.q()), 1);
}

WittVec teichmuller_lift_w(const WittVec& x, int n) {
    if (!is_char_p(x.domain)) fail("DomainMismatch", "Teichmuller lift starts from a residue domain");
    const BaseRing& R = x.ring();
    WittVec r{is_scalar(x.domain) ? WittDomain::integers : WittDomain::series, {}};
    for (const auto& c : x.c) {
        LaurentSeries t(&R, n, c.low(), c.high());
        for (int k = c.low(); k < c.high(); ++k)
            if (!c[k].is_zero()) t[k] = R.teichmuller(R.reduce(c[k]), n);
        r.c.push_back(t);
    }
    return r;
}

LaurentSeries w_map(const WittVec& x) { return w_map_lifted(teichmuller_lift_w(x, x.length())); }

LaurentSeries w_map_lifted(const WittVec& lift) {
    require_integral(lift);
    const int n = lift.length();
    if (lift.prec() < n) fail("PrecisionExhausted", "lift must be known modulo pi^" + std::to_string(n));
    std::vector<LaurentSeries> c;
    for (const auto& x : lift.c) c.push_back(x.with_prec(n));
    return ghost_raw(c, n, lift.ring().q()).back();
}

OmegaParts omega_decompose(const WittVec& x) {
    if (x.domain != WittDomain::residue_series) fail("DomainMismatch", "Omega decomposition is over k((Z))");
    const BaseRing& R = x.ring();
    const int n = x.length();
    const LaurentSeries& c0 = x.c[0];
    if (c0.high() < 1) fail("WindowTooSmall", "window stops before the constant term");
    const int H = c0.high();
    LaurentSeries plus(&R, 1, 0, H), minus(&R, 1, std::min(c0.low(), 0), H);
    for (int k = c0.low(); k < H; ++k) {
        if (k > 0) plus[k] = c0[k];
        if (k < 0) minus[k] = c0[k];
    }
    const BaseElem a = c0.coeff(0);
    OmegaParts r{witt_scalars(WittDomain::residue_field, {a}), make_witt(WittDomain::residue_series, {plus}),
                 make_witt(WittDomain::residue_series, {minus})};
    if (n == 1) return r;

    WittVec t = x - teichmuller_w(WittDomain::residue_series, LaurentSeries::constant(a, H), n);
    t = t - teichmuller_w(WittDomain::residue_series, plus, n);
    t = t - teichmuller_w(WittDomain::residue_series, minus, n);
    if (!t.c[0].is_zero()) fail("InternalError", "zeroth component survived the subtraction");
    OmegaParts y = omega_decompose(WittVec{WittDomain::residue_series, {t.c.begin() + 1, t.c.end()}});
    // [b] + tau(z) = (b, z_0, z_1, ...)
    auto glue = [](WittVec& head, const WittVec& tail) { head.c.insert(head.c.end(), tail.c.begin(), tail.c.end()); };
    glue(r.constant, y.constant);
    glue(r.plus, y.plus);
    glue(r.minus, y.minus);
    return r;
}

bool in_constant_part(const WittVec& x) {
    if (is_scalar(x.domain)) return true;
    for (const auto& c : x.c) {
        int o = c.order();
        if (o != kInfinity && (o < 0 || c.degree() > 0)) return false;
    }
    return true;
}

bool in_plus_part(const WittVec& x) {
    if (is_scalar(x.domain)) {
        for (const auto& c : x.c)
            if (!c.is_zero()) return false;
        return true;
    }
    for (const auto& c : x.c)
        if (c.order() < 1) return false;
    return true;
}

bool in_minus_part(const WittVec& x) {
    if (is_scalar(x.domain)) return in_plus_part(x);
    for (const auto& c : x.c)
        if (!c.is_zero() && c.degree() >= 0) return false;
    return true;
}

WittVec as_series(const WittVec& x, int high) {
    if (!is_scalar(x.domain)) return x;
    WittVec r{x.domain == WittDomain::residue_field ? WittDomain::residue_series : WittDomain::series, {}};
    for (const auto& c : x.c) r.c.push_back(LaurentSeries::constant(c.coeff(0), high));
    return r;
}

// ------------------------------------------------------- universal polynomials

MPoly::Key MPoly::key(const std::vector<int>& exps) {
    if (exps.size() > kSlots) fail("BadArgument", "too many variables");
    Key k = 0;
    for (size_t i = 0; i < exps.size(); ++i) {
        if (exps[i] < 0 || exps[i] > 0xFFFF) fail("BadArgument", "exponent out of range");
        k |= static_cast<Key>(exps[i]) << (16 * i);
    }
    return k;
}

BaseElem MPoly::coeff(const std::vector<int>& exps, int prec) const {
    auto it = t_.find(key(exps));
    return it == t_.end() ? R_->zero(prec) : it->second;
}

void MPoly::add_term(Key k, const BaseElem& c) {
    auto [it, fresh] = t_.emplace(k, c);
    if (!fresh) it->second += c;
    if (it->second.is_zero()) t_.erase(it);
}

BaseElem MPoly::eval(const std::vector<BaseElem>& slots) const {
    if (slots.size() != kSlots) fail("BadArgument", "evaluation needs all eight slots");
    int prec = R_->max_prec();
    for (const auto& s : slots) prec = std::min(prec, s.prec());
    for (const auto& [k, c] : t_) prec = std::min(prec, c.prec());
    std::vector<std::vector<BaseElem>> pw(kSlots);
    auto power = [&](int s, int e) -> const BaseElem& {
        auto& v = pw[s];
        if (v.empty()) v.push_back(R_->one(prec));
        while (static_cast<int>(v.size()) <= e) v.push_back(v.back() * slots[s].with_prec(prec));
        return v[e];
    };
    BaseElem acc = R_->zero(prec);
    for (const auto& [k, c] : t_) {
        BaseElem m = c.with_prec(prec);
        for (int s = 0; s < kSlots; ++s) {
            int e = exponent(k, s);
            if (e) m *= power(s, e);
        }
        acc += m;
    }
    return acc;
}

namespace {

MPoly at_prec(const MPoly& A, int j, bool lift) {
    MPoly r(A.ring());
    for (const auto& [k, c] : A.terms()) r.add_term(k, lift ? c.lifted(j) : c.with_prec(j));
    return r;
}

MPoly pmul(const MPoly& A, const MPoly& B, int j) {
    MPoly r(A.ring());
    std::vector<std::pair<MPoly::Key, BaseElem>> b(B.terms().begin(), B.terms().end());
    for (auto& t : b) t.second = t.second.with_prec(j);
    for (const auto& [ka, ca] : A.terms()) {
        BaseElem a = ca.with_prec(j);
        for (const auto& [kb, cb] : b) r.add_term(ka + kb, a * cb);
    }
    return r;
}

// coefficients and exponents raised to p^t; valid modulo pi
MPoly twist(const MPoly& A, int t) {
    const BaseRing& R = *A.ring();
    u64 pt = 1;
    for (int i = 0; i < t; ++i) pt *= static_cast<u64>(R.p());
    MPoly r(&R);
    for (const auto& [k, c] : A.terms()) {
        MPoly::Key nk = 0;
        for (int s = 0; s < MPoly::kSlots; ++s) {
            u64 e = static_cast<u64>(MPoly::exponent(k, s)) * pt;
            if (e > 0xFFFF) fail("BadArgument", "exponent overflow");
            nk |= static_cast<MPoly::Key>(e) << (16 * s);
        }
        r.add_term(nk, c.with_prec(1).pow(pt));
    }
    return r;
}

// A^(p^t) modulo pi^j, using that C = D mod pi^(j-1) gives C^p = D^p mod pi^j
MPoly pow_pp(const MPoly& A, int t, int j) {
    if (t == 0) return at_prec(A, j, false);
    if (j == 1) return twist(A, t);
    MPoly B = at_prec(pow_pp(A, t - 1, j - 1), j, true);
    MPoly r = B;
    for (i64 i = 1; i < A.ring()->p(); ++i) r = pmul(r, B, j);
    return r;
}

// Phi_i in the variables starting at slot `base`, modulo pi^j
MPoly ghost_poly(const BaseRing& R, int i, int base, int j) {
    MPoly r(&R);
    u64 e = 1;
    for (int m = i; m >= 0; --m) {
        std::vector<int> ex(MPoly::kSlots, 0);
        ex[base + m] = static_cast<int>(e);
        r.add_term(MPoly::key(ex), R.pi_pow(m, j));
        e *= static_cast<u64>(R.q());
    }
    return r;
}

MPoly padd(const MPoly& A, const MPoly& B, int sign) {
    MPoly r = A;
    for (const auto& [k, c] : B.terms()) r.add_term(k, sign > 0 ? c : -c);
    return r;
}

std::vector<BaseElem> slots_of(const std::vector<BaseElem>& x, const std::vector<BaseElem>& y, const BaseRing& R, int N) {
    std::vector<BaseElem> s(MPoly::kSlots, R.zero(N));
    for (size_t i = 0; i < x.size(); ++i) s[i] = x[i];
    for (size_t i = 0; i < y.size(); ++i) s[4 + i] = y[i];
    return s;
}

}  // namespace

UniversalPolys::UniversalPolys(const BaseRing& R, int n, int digits) : n_(n), N_(digits) {
    if (n < 1 || n > 4) fail("BadArgument", "universal polynomials are built for lengths 1..4");
    if (digits < 1 || digits + n > R.max_prec()) fail("PrecisionExhausted", "digits out of range");
    const int f = R.fdeg();
    enum { kSum, kProd, kNeg };
    for (int kind : {kSum, kProd, kNeg}) {
        std::vector<MPoly>& out = kind == kSum ? S_ : kind == kProd ? P_ : Ng_;
        const char* name = kind == kSum ? "sum" : kind == kProd ? "product" : "negation";
        for (int i = 0; i < n; ++i) {
            const int j = N_ + i;
            MPoly num(&R);
            if (kind == kSum) num = padd(ghost_poly(R, i, 0, j), ghost_poly(R, i, 4, j), 1);
            else if (kind == kProd) num = pmul(ghost_poly(R, i, 0, j), ghost_poly(R, i, 4, j), j);
            else num = padd(MPoly(&R), ghost_poly(R, i, 0, j), -1);
            for (int m = 0; m < i; ++m) {
                MPoly t = pow_pp(out[m], f * (i - m), j - m);
                for (const auto& [k, c] : t.terms()) num.add_term(k, -c.mul_pi(m).with_prec(j));
            }
            MPoly q(&R);
            for (const auto& [k, c] : num.terms()) {
                if (c.valuation() < i)
                    fail("NotDivisible", std::string(name) + " polynomial " + std::to_string(i) + " is not integral");
                q.add_term(k, c.divide_by_pi(i).with_prec(N_));
            }
            out.push_back(std::move(q));
        }
    }
}

std::vector<BaseElem> UniversalPolys::add(const std::vector<BaseElem>& x, const std::vector<BaseElem>& y) const {
    auto s = slots_of(x, y, *x.at(0).ring(), N_);
    std::vector<BaseElem> r;
    for (int i = 0; i < static_cast<int>(x.size()); ++i) r.push_back(S_.at(i).eval(s));
    return r;
}

std::vector<BaseElem> UniversalPolys::mul(const std::vector<BaseElem>& x, const std::vector<BaseElem>& y) const {
    auto s = slots_of(x, y, *x.at(0).ring(), N_);
    std::vector<BaseElem> r;
    for (int i = 0; i < static_cast<int>(x.size()); ++i) r.push_back(P_.at(i).eval(s));
    return r;
}

std::vector<BaseElem> UniversalPolys::neg(const std::vector<BaseElem>& x) const {
    auto s = slots_of(x, {}, *x.at(0).ring(), N_);
    std::vector<BaseElem> r;
    for (int i = 0; i < static_cast<int>(x.size()); ++i) r.push_back(Ng_.at(i).eval(s));
    return r;
}

const UniversalPolys& universal_polys(const BaseRing& R, int n, int digits) {
    static std::mutex mu;
    static std::map<std::tuple<const BaseRing*, std::string, int, int>, std::unique_ptr<UniversalPolys>> cache;
    const RingSpec& sp = R.spec();
    std::string tag = std::to_string(sp.p) + "/" + std::to_string(sp.e) + "/" + std::to_string(sp.fdeg);
    for (auto c : sp.unram_poly) tag += "," + std::to_string(c);
    for (const auto& row : sp.eis_poly)
        for (auto c : row) tag += ";" + std::to_string(c);
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[{&R, tag, n, digits}];
    if (!slot) slot = std::make_unique<UniversalPolys>(R, n, digits);
    return *slot;
}

}  // namespace ltlab
