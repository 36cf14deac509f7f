#include "ltlab/base_ring.hpp"

#include <algorithm>
#include <sstream>

namespace ltlab {

namespace {

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>((u128)a * b % m); }
inline u64 addmod(u64 a, u64 b, u64 m) {
    u64 s = a + b;
    return s >= m ? s - m : s;
}
inline u64 submod(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + m - b; }

inline u64 reduce_signed(i64 a, u64 m) {
    i64 r = a % static_cast<i64>(m);
    return static_cast<u64>(r < 0 ? r + static_cast<i64>(m) : r);
}

bool is_prime(i64 p) {
    if (p < 2) return false;
    for (i64 d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

// Polynomials over F_p, coefficients from the constant term up.
using Fp = std::vector<i64>;

void trim(Fp& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

i64 inv_mod_p(i64 a, i64 p) {
    i64 r = 1, b = a % p, k = p - 2;
    if (b < 0) b += p;
    while (k) {
        if (k & 1) r = r * b % p;
        b = b * b % p;
        k >>= 1;
    }
    return r;
}

Fp fp_rem(Fp a, const Fp& g, i64 p) {
    trim(a);
    i64 lc = inv_mod_p(g.back(), p);
    while (a.size() >= g.size()) {
        i64 c = a.back() * lc % p;
        size_t sh = a.size() - g.size();
        for (size_t i = 0; i < g.size(); ++i)
            a[sh + i] = ((a[sh + i] - c * g[i]) % p + p) % p;
        trim(a);
    }
    return a;
}

Fp fp_mulmod(const Fp& a, const Fp& b, const Fp& g, i64 p) {
    if (a.empty() || b.empty()) return {};
    Fp r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    return fp_rem(r, g, p);
}

Fp fp_gcd(Fp a, Fp b, i64 p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Fp r = fp_rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

}  // namespace

int BaseRing::vp(u64 x, i64 p) {
    if (x == 0) return kInfinity;
    int v = 0;
    while (x % static_cast<u64>(p) == 0) {
        x /= static_cast<u64>(p);
        ++v;
    }
    return v;
}

BaseRing::BaseRing(RingSpec spec) : spec_(std::move(spec)) { check_spec(); }

void BaseRing::check_spec() {
    auto& s = spec_;
    if (!is_prime(s.p)) fail("BadSpec", "p is not prime");
    if (s.e < 1 || s.fdeg < 1) fail("BadSpec", "e and fdeg must be positive");
    d_ = s.e * s.fdeg;
    if (d_ > kMaxDegree) fail("BadSpec", "e*fdeg exceeds " + std::to_string(kMaxDegree));
    q_ = 1;
    for (int i = 0; i < s.fdeg; ++i) q_ *= s.p;
    if (q_ > kMaxResidue) fail("BadSpec", "residue field too large");
    if (s.pi_prec_max < 1) fail("BadSpec", "pi_prec_max must be positive");

    M_ = (s.pi_prec_max + s.e - 1) / s.e + 1;
    ppow_.assign(M_ + 1, 1);
    for (int k = 1; k <= M_; ++k) {
        if (ppow_[k - 1] > (u64(1) << 62) / static_cast<u64>(s.p))
            fail("BadSpec", "p^M does not fit in 62 bits; lower pi_prec_max");
        ppow_[k] = ppow_[k - 1] * static_cast<u64>(s.p);
    }
    pM_ = ppow_[M_];

    if (s.unram_poly.empty() && s.fdeg == 1) s.unram_poly = {0, 1};
    if (static_cast<int>(s.unram_poly.size()) != s.fdeg + 1 || s.unram_poly.back() != 1)
        fail("BadSpec", "unram_poly must be monic of degree fdeg");
    if (s.eis_poly.empty() && s.e == 1) s.eis_poly = {{-s.p}, {1}};
    if (static_cast<int>(s.eis_poly.size()) != s.e + 1)
        fail("BadSpec", "eis_poly must have degree e");
    for (auto& c : s.eis_poly) {
        if (static_cast<int>(c.size()) > s.fdeg) fail("BadSpec", "eis_poly coefficient too long");
        c.resize(s.fdeg, 0);
    }
    for (int j = 0; j < s.fdeg; ++j)
        if (s.eis_poly[s.e][j] != (j == 0 ? 1 : 0)) fail("BadSpec", "eis_poly must be monic");

    unram_.resize(s.fdeg + 1);
    for (int j = 0; j <= s.fdeg; ++j) unram_[j] = reduce_signed(s.unram_poly[j], pM_);
    eis_.assign(s.e + 1, std::vector<u64>(s.fdeg));
    for (int i = 0; i <= s.e; ++i)
        for (int j = 0; j < s.fdeg; ++j) eis_[i][j] = reduce_signed(s.eis_poly[i][j], pM_);

    // irreducibility of unram_poly mod p
    if (s.fdeg > 1) {
        Fp g(s.fdeg + 1);
        for (int j = 0; j <= s.fdeg; ++j) g[j] = static_cast<i64>(reduce_signed(s.unram_poly[j], s.p));
        Fp xp = {0, 1};
        for (int i = 1; i < s.fdeg; ++i) {
            Fp base = xp, r = {1};
            for (i64 k = s.p; k; k >>= 1) {
                if (k & 1) r = fp_mulmod(r, base, g, s.p);
                base = fp_mulmod(base, base, g, s.p);
            }
            xp = r;
            Fp h = xp;
            h.resize(std::max<size_t>(h.size(), 2), 0);
            h[1] = ((h[1] - 1) % s.p + s.p) % s.p;
            if (fp_gcd(g, h, s.p).size() > 1) fail("BadSpec", "unram_poly is reducible mod p");
        }
    }
    build_residue_tables();

    // Eisenstein conditions
    for (int i = 0; i < s.e; ++i)
        for (int j = 0; j < s.fdeg; ++j)
            if (s.eis_poly[i][j] % s.p != 0) fail("BadSpec", "eis_poly is not Eisenstein");
    std::vector<i64> u(s.fdeg);
    for (int j = 0; j < s.fdeg; ++j) u[j] = s.eis_poly[0][j] / s.p;
    if (residue_from_coords(u).is_zero()) fail("BadSpec", "eis_poly constant term has v > e");

    int N = s.pi_prec_max;
    BaseElem unit = from_coords(u, N);
    BaseElem h(this, N);
    for (int i = 1; i <= s.e; ++i)
        for (int j = 0; j < s.fdeg; ++j) h.c_[(i - 1) * s.fdeg + j] = eis_[i][j];
    canonicalize(h.c_, N);
    divk_ = -(unit.inverse() * h);

    BaseElem acc(this, N), pk = one(N), pie = pi(N);
    for (int i = 0; i < s.e; ++i) {
        std::vector<i64> ci(s.fdeg);
        for (int j = 0; j < s.fdeg; ++j) ci[j] = s.eis_poly[i][j] / s.p;
        acc -= from_coords(ci, N) * pk;
        pk *= pie;
    }
    pe_over_p_ = acc;

    if (from_int(s.p, N).valuation() != s.e) fail("BadSpec", "v(p) != e");
    if (pi(N).valuation() != 1) fail("BadSpec", "v(pi) != 1");
}

void BaseRing::build_residue_tables() {
    const i64 p = spec_.p;
    const int f = spec_.fdeg;
    const size_t q = static_cast<size_t>(q_);
    std::vector<std::vector<i64>> dig(q, std::vector<i64>(f));
    for (size_t v = 0; v < q; ++v) {
        size_t t = v;
        for (int j = 0; j < f; ++j) {
            dig[v][j] = static_cast<i64>(t % p);
            t /= p;
        }
    }
    auto encode = [&](const std::vector<i64>& a) {
        std::uint32_t r = 0;
        for (int j = f - 1; j >= 0; --j) r = r * static_cast<std::uint32_t>(p) + static_cast<std::uint32_t>(((a[j] % p) + p) % p);
        return r;
    };
    Fp g(f + 1);
    for (int j = 0; j <= f; ++j) g[j] = static_cast<i64>(reduce_signed(spec_.unram_poly[j], p));
    add_.assign(q * q, 0);
    mul_.assign(q * q, 0);
    neg_.assign(q, 0);
    inv_.assign(q, 0);
    std::vector<i64> tmp(f);
    for (size_t a = 0; a < q; ++a) {
        for (int j = 0; j < f; ++j) tmp[j] = p - dig[a][j];
        neg_[a] = static_cast<std::uint16_t>(encode(tmp));
        for (size_t b = 0; b < q; ++b) {
            for (int j = 0; j < f; ++j) tmp[j] = dig[a][j] + dig[b][j];
            add_[a * q + b] = static_cast<std::uint16_t>(encode(tmp));
            Fp pa(dig[a].begin(), dig[a].end()), pb(dig[b].begin(), dig[b].end());
            trim(pa);
            trim(pb);
            Fp r = fp_mulmod(pa, pb, g, p);
            r.resize(f, 0);
            mul_[a * q + b] = static_cast<std::uint16_t>(encode(r));
        }
    }
    for (size_t a = 1; a < q; ++a)
        for (size_t b = 1; b < q; ++b)
            if (mul_[a * q + b] == 1) {
                inv_[a] = static_cast<std::uint16_t>(b);
                break;
            }
}

void BaseRing::canonicalize(BaseElem::Coords& c, int n) const {
    const int e = spec_.e, f = spec_.fdeg;
    for (int i = 0; i < e; ++i) {
        int k = n - i > 0 ? (n - i + e - 1) / e : 0;
        u64 m = ppow_[std::min(k, M_)];
        for (int j = 0; j < f; ++j) c[i * f + j] = m == 1 ? 0 : c[i * f + j] % m;
    }
}

void BaseRing::unram_mul(const u64* a, const u64* b, u64* out) const {
    const int f = spec_.fdeg;
    if (f == 1) {
        out[0] = mulmod(a[0], b[0], pM_);
        return;
    }
    u128 t[2 * kMaxDegree] = {};
    for (int i = 0; i < f; ++i)
        for (int j = 0; j < f; ++j) t[i + j] += (u128)a[i] * b[j] % pM_;
    u64 r[2 * kMaxDegree];
    for (int k = 0; k < 2 * f - 1; ++k) r[k] = static_cast<u64>(t[k] % pM_);
    for (int k = 2 * f - 2; k >= f; --k) {
        u64 ck = r[k];
        if (!ck) continue;
        for (int j = 0; j < f; ++j) r[k - f + j] = submod(r[k - f + j], mulmod(ck, unram_[j], pM_), pM_);
    }
    for (int j = 0; j < f; ++j) out[j] = r[j];
}

void BaseRing::mul_raw(const BaseElem::Coords& a, const BaseElem::Coords& b, BaseElem::Coords& out) const {
    const int e = spec_.e, f = spec_.fdeg;
    if (d_ == 1) {
        out[0] = mulmod(a[0], b[0], pM_);
        return;
    }
    u64 rows[2 * kMaxDegree][kMaxDegree] = {};
    u64 tmp[kMaxDegree];
    for (int i = 0; i < e; ++i)
        for (int k = 0; k < e; ++k) {
            unram_mul(&a[i * f], &b[k * f], tmp);
            for (int j = 0; j < f; ++j) rows[i + k][j] = addmod(rows[i + k][j], tmp[j], pM_);
        }
    for (int i = 2 * e - 2; i >= e; --i) {
        for (int k = 0; k < e; ++k) {
            unram_mul(rows[i], eis_[k].data(), tmp);
            for (int j = 0; j < f; ++j) rows[i - e + k][j] = submod(rows[i - e + k][j], tmp[j], pM_);
        }
    }
    for (int i = 0; i < e; ++i)
        for (int j = 0; j < f; ++j) out[i * f + j] = rows[i][j];
}

BaseElem BaseRing::from_int(i64 a, int n) const {
    BaseElem r(this, n);
    r.c_[0] = reduce_signed(a, pM_);
    canonicalize(r.c_, n);
    return r;
}

BaseElem BaseRing::from_coords(const std::vector<i64>& coords, int n) const {
    if (static_cast<int>(coords.size()) > d_) fail("BadElement", "too many coordinates");
    BaseElem r(this, n);
    for (size_t i = 0; i < coords.size(); ++i) r.c_[i] = reduce_signed(coords[i], pM_);
    canonicalize(r.c_, n);
    return r;
}

BaseElem BaseRing::pi(int n) const {
    if (spec_.e == 1) {
        BaseElem r(this, n);
        for (int j = 0; j < spec_.fdeg; ++j) r.c_[j] = submod(0, eis_[0][j], pM_);
        canonicalize(r.c_, n);
        return r;
    }
    BaseElem r(this, n);
    r.c_[spec_.fdeg] = 1;
    canonicalize(r.c_, n);
    return r;
}

BaseElem BaseRing::pi_pow(int k, int n) const { return pi(n).pow(static_cast<u64>(k)); }

ResidueElem BaseRing::residue(std::uint32_t index) const {
    if (index >= q_) fail("BadElement", "residue index out of range");
    return {this, index};
}

ResidueElem BaseRing::residue_from_coords(const std::vector<i64>& coords) const {
    if (static_cast<int>(coords.size()) > spec_.fdeg) fail("BadElement", "too many residue coordinates");
    std::uint32_t r = 0;
    for (int j = static_cast<int>(coords.size()) - 1; j >= 0; --j)
        r = r * static_cast<std::uint32_t>(spec_.p) + static_cast<std::uint32_t>(reduce_signed(coords[j], spec_.p));
    return {this, r};
}

ResidueElem BaseRing::residue_from_int(i64 a) const {
    return {this, static_cast<std::uint32_t>(reduce_signed(a, spec_.p))};
}

ResidueElem BaseRing::residue_generator() const {
    for (std::uint32_t g = 1; g < q_; ++g) {
        ResidueElem x(this, g), y = x;
        i64 ord = 1;
        while (y.index() != 1) {
            y = y * x;
            ++ord;
        }
        if (ord == q_ - 1) return x;
    }
    return rone();
}

ResidueElem BaseRing::reduce(const BaseElem& a) const {
    if (a.ring() != this) fail("SpecMismatch", "element from another ring");
    if (a.prec() < 1) fail("PrecisionExhausted", "cannot reduce an element known modulo 1");
    std::vector<i64> dg(spec_.fdeg);
    for (int j = 0; j < spec_.fdeg; ++j) dg[j] = static_cast<i64>(a.c_[j] % static_cast<u64>(spec_.p));
    return residue_from_coords(dg);
}

BaseElem BaseRing::lift(const ResidueElem& c, int n) const {
    return from_coords(c.coords(), n);
}

BaseElem BaseRing::teichmuller(const ResidueElem& c, int n) const {
    if (c.is_zero()) return zero(n);
    // Newton iteration on X^q - X
    BaseElem w = lift(c, n);
    BaseElem qq = from_int(q_, n), one_ = one(n);
    for (int it = 0; it < 64; ++it) {
        BaseElem wq1 = w.pow(static_cast<u64>(q_ - 1));
        BaseElem num = wq1 * w - w;
        if (num.is_zero()) break;
        w = w - num * (qq * wq1 - one_).inverse();
    }
    return w;
}

// ---------------------------------------------------------------- ResidueElem

std::vector<i64> ResidueElem::coords() const {
    std::vector<i64> r(R_->fdeg());
    std::uint32_t t = v_;
    for (auto& x : r) {
        x = t % R_->p();
        t /= static_cast<std::uint32_t>(R_->p());
    }
    return r;
}

ResidueElem ResidueElem::operator+(const ResidueElem& b) const { return {R_, R_->radd(v_, b.v_)}; }
ResidueElem ResidueElem::operator-(const ResidueElem& b) const { return {R_, R_->radd(v_, R_->rneg(b.v_))}; }
ResidueElem ResidueElem::operator*(const ResidueElem& b) const { return {R_, R_->rmul(v_, b.v_)}; }
ResidueElem ResidueElem::operator-() const { return {R_, R_->rneg(v_)}; }

ResidueElem ResidueElem::inverse() const {
    if (v_ == 0) fail("NotAUnit", "zero has no inverse in the residue field");
    return {R_, R_->rinv(v_)};
}

ResidueElem ResidueElem::pow(u64 k) const {
    ResidueElem r = one_like(), b = *this;
    while (k) {
        if (k & 1) r = r * b;
        b = b * b;
        k >>= 1;
    }
    return r;
}

ResidueElem ResidueElem::from_int(i64 a) const { return R_->residue_from_int(a); }

// ---------------------------------------------------------------- BaseElem

namespace {
inline void same_ring(const BaseElem& a, const BaseElem& b) {
    if (a.ring() != b.ring()) fail("SpecMismatch", "elements from different rings");
}
}  // namespace

std::vector<i64> BaseElem::coords() const {
    std::vector<i64> r(R_->degree());
    for (int i = 0; i < R_->degree(); ++i) r[i] = static_cast<i64>(c_[i]);
    return r;
}

BaseElem BaseElem::operator+(const BaseElem& b) const {
    same_ring(*this, b);
    BaseElem r(R_, std::min(prec_, b.prec_));
    const u64 m = R_->modulus();
    for (int i = 0; i < R_->degree(); ++i) r.c_[i] = addmod(c_[i], b.c_[i], m);
    R_->canonicalize(r.c_, r.prec_);
    return r;
}

BaseElem BaseElem::operator-(const BaseElem& b) const {
    same_ring(*this, b);
    BaseElem r(R_, std::min(prec_, b.prec_));
    const u64 m = R_->modulus();
    for (int i = 0; i < R_->degree(); ++i) r.c_[i] = submod(c_[i], b.c_[i], m);
    R_->canonicalize(r.c_, r.prec_);
    return r;
}

BaseElem BaseElem::operator*(const BaseElem& b) const {
    same_ring(*this, b);
    BaseElem r(R_, std::min(prec_, b.prec_));
    R_->mul_raw(c_, b.c_, r.c_);
    R_->canonicalize(r.c_, r.prec_);
    return r;
}

BaseElem BaseElem::operator-() const {
    BaseElem r(R_, prec_);
    const u64 m = R_->modulus();
    for (int i = 0; i < R_->degree(); ++i) r.c_[i] = submod(0, c_[i], m);
    R_->canonicalize(r.c_, r.prec_);
    return r;
}

bool BaseElem::operator==(const BaseElem& b) const {
    same_ring(*this, b);
    int n = std::min(prec_, b.prec_);
    Coords x = c_, y = b.c_;
    R_->canonicalize(x, n);
    R_->canonicalize(y, n);
    for (int i = 0; i < R_->degree(); ++i)
        if (x[i] != y[i]) return false;
    return true;
}

bool BaseElem::is_zero() const {
    for (int i = 0; i < R_->degree(); ++i)
        if (c_[i]) return false;
    return true;
}

int BaseElem::valuation() const {
    const int e = R_->e(), f = R_->fdeg();
    int v = kInfinity;
    for (int i = 0; i < e; ++i) {
        int m = kInfinity;
        for (int j = 0; j < f; ++j) m = std::min(m, BaseRing::vp(c_[i * f + j], R_->p()));
        if (m != kInfinity) v = std::min(v, e * m + i);
    }
    return v;
}

int BaseElem::known_valuation() const { return std::min(valuation(), prec_); }

BaseElem BaseElem::with_prec(int n) const {
    if (n > prec_) fail("PrecisionExhausted", "cannot raise precision of a known class");
    BaseElem r = *this;
    r.prec_ = std::max(n, 0);
    R_->canonicalize(r.c_, r.prec_);
    return r;
}

BaseElem BaseElem::lifted(int n) const {
    if (n < prec_) return with_prec(n);
    if (n > R_->max_prec()) fail("PrecisionExhausted", "precision beyond pi_prec_max");
    BaseElem r = *this;
    r.prec_ = n;
    return r;
}

BaseElem BaseElem::inverse() const {
    if (!is_unit()) fail("NotAUnit", "element is not a unit: " + to_string(*this));
    BaseElem b = R_->lift(R_->reduce(*this).inverse(), prec_);
    BaseElem two = R_->from_int(2, prec_);
    for (int k = 1; k < 2 * prec_ + 2; k *= 2) b = b * (two - *this * b);
    return b;
}

BaseElem BaseElem::pow(u64 k) const {
    BaseElem r = one_like(), b = *this;
    while (k) {
        if (k & 1) r = r * b;
        k >>= 1;
        if (k) b = b * b;
    }
    return r;
}

BaseElem BaseElem::divide_by_pi(int k) const {
    if (k < 0) fail("BadArgument", "negative shift");
    int v = valuation();
    if (v < k) fail("NotDivisible", "valuation " + std::to_string(v) + " < " + std::to_string(k) + " for " + to_string(*this));
    const int e = R_->e(), f = R_->fdeg();
    const u64 p = static_cast<u64>(R_->p());
    BaseElem a = *this;
    for (int step = 0; step < k; ++step) {
        int n = std::max(a.prec_ - 1, 0);
        if (a.prec_ == 0) break;
        Coords t{}, sh{}, prod{};
        for (int j = 0; j < f; ++j) t[j] = a.c_[j] / p;
        for (int i = 1; i < e; ++i)
            for (int j = 0; j < f; ++j) sh[(i - 1) * f + j] = a.c_[i * f + j];
        R_->mul_raw(t, R_->pi_quotient_factor().c_, prod);
        BaseElem r(R_, n);
        for (int i = 0; i < R_->degree(); ++i) r.c_[i] = addmod(prod[i], sh[i], R_->modulus());
        R_->canonicalize(r.c_, n);
        a = r;
    }
    return a;
}

BaseElem BaseElem::mul_pi(int k) const {
    int n = std::min(prec_ + k, R_->max_prec());
    return lifted(n) * R_->pi_pow(k, n);
}

BaseElem BaseElem::mul_tight(const BaseElem& b) const {
    same_ring(*this, b);
    int n = std::min({prec_ + b.known_valuation(), b.prec_ + known_valuation(), R_->max_prec()});
    return lifted(n) * b.lifted(n);
}

BaseElem BaseElem::scale(i64 a) const { return *this * R_->from_int(a, prec_); }

BaseElem BaseElem::zero_like() const { return BaseElem(R_, prec_); }
BaseElem BaseElem::one_like() const { return R_->one(prec_); }
BaseElem BaseElem::from_int(i64 a) const { return R_->from_int(a, prec_); }

// ---------------------------------------------------------------- free API

BaseElem arith(const BaseElem& a, const BaseElem& b, ArithKind kind) {
    switch (kind) {
    case ArithKind::add: return a + b;
    case ArithKind::sub: return a - b;
    case ArithKind::mul: return a * b;
    }
    fail("BadArgument", "unknown arithmetic kind");
}

int valuation(const BaseElem& a) { return a.valuation(); }

BaseElem divide_by_pi_exact(const BaseElem& a, int k) { return a.divide_by_pi(k); }

BaseElem teichmuller_lift(const ResidueElem& c, int n) { return c.ring()->teichmuller(c, n); }

ResidueElem reduce_residue(const BaseElem& a) { return a.ring()->reduce(a); }

std::string to_string(const BaseElem& a) {
    std::ostringstream os;
    os << '[';
    for (int i = 0; i < a.ring()->degree(); ++i) os << (i ? "," : "") << a.raw()[i];
    os << "]@" << a.prec();
    return os.str();
}

std::string to_string(const ResidueElem& a) {
    std::ostringstream os;
    auto c = a.coords();
    os << '(';
    for (size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
    os << ')';
    return os.str();
}

}  // namespace ltlab
