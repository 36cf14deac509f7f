#include <algorithm>
#include <random>

#include "doctest.h"
#include "ltlab/lubin_tate.hpp"
#include "ltlab/presets.hpp"

using namespace ltlab;

namespace {

struct Case {
    std::string ring, frob;
};

std::vector<Case> grid_cases() {
    std::vector<Case> v;
    for (const auto& r : preset_grid()) v.push_back({r, "pi"});
    v.push_back({"z3", "gm"});
    v.push_back({"z5", "gm"});
    return v;
}

// dense trivariate polynomial truncated at total degree D
struct Tri {
    int D;
    std::vector<BaseElem> c;
    Tri(const BaseRing& R, int D_, int N) : D(D_), c(static_cast<size_t>(D_) * D_ * D_, R.zero(N)) {}
    BaseElem& at(int i, int j, int k) { return c[(static_cast<size_t>(i) * D + j) * D + k]; }
};

using Dense2 = std::vector<std::vector<BaseElem>>;  // [i][j], i + j < D

Dense2 dense_of(const Bivariate& F, int N) {
    int D = F.degree();
    Dense2 d(D, std::vector<BaseElem>(D, F.R->zero(N)));
    for (int k = 1; k < D; ++k)
        for (int i = 0; i <= k; ++i) d[i][k - i] = F.coeff(i, k - i);
    return d;
}

Dense2 dense_mul(const Dense2& a, const Dense2& b, const BaseRing& R, int N) {
    int D = static_cast<int>(a.size());
    Dense2 r(D, std::vector<BaseElem>(D, R.zero(N)));
    for (int i = 0; i < D; ++i)
        for (int j = 0; i + j < D; ++j) {
            if (a[i][j].is_zero()) continue;
            for (int k = 0; i + j + k < D; ++k)
                for (int l = 0; i + j + k + l < D; ++l)
                    if (!b[k][l].is_zero()) r[i + k][j + l] += a[i][j] * b[k][l];
        }
    return r;
}

// F(F(X,Y),W) and F(X,F(Y,W)) as trivariate polynomials
bool associative(const Bivariate& F) {
    const BaseRing& R = *F.R;
    const int D = F.degree(), N = F.prec;
    Dense2 U = dense_of(F, N);
    Dense2 one(D, std::vector<BaseElem>(D, R.zero(N)));
    one[0][0] = R.one(N);
    std::vector<Dense2> pw{one};
    for (int a = 1; a < D; ++a) pw.push_back(dense_mul(pw.back(), U, R, N));
    Tri left(R, D, N), right(R, D, N);
    for (int a = 0; a < D; ++a)
        for (int b = 0; a + b < D; ++b) {
            if (a + b == 0) continue;
            BaseElem c = F.coeff(a, b);
            if (c.is_zero()) continue;
            for (int i = 0; i < D; ++i)
                for (int j = 0; i + j < D; ++j) {
                    if (i + j + b < D && !pw[a][i][j].is_zero()) left.at(i, j, b) += c * pw[a][i][j];
                    // F(X, V) with V = F(Y, W): X^a V^b, V^b[j][k] in (Y, W)
                    if (a + i + j < D && !pw[b][i][j].is_zero()) right.at(a, i, j) += c * pw[b][i][j];
                }
        }
    for (size_t t = 0; t < left.c.size(); ++t)
        if (left.c[t] != right.c[t]) return false;
    return true;
}

i64 binom_signed(i64 a, int k) {
    // C(a, k) for small a, possibly negative
    long double r = 1;
    for (int i = 0; i < k; ++i) r = r * static_cast<long double>(a - i) / static_cast<long double>(i + 1);
    return static_cast<i64>(r < 0 ? r - 0.5 : r + 0.5);
}

BaseElem random_elem(const BaseRing& R, std::mt19937_64& rng, int n) {
    std::vector<i64> c(R.degree());
    for (auto& x : c) x = static_cast<i64>(rng() % R.modulus());
    return R.from_coords(c, n);
}

}  // namespace

TEST_CASE("multiplicative group closed forms") {
    BaseRing R(preset_spec("z3", 12));
    FormalGroup G(R, standard_frobenius(R, "gm"), 13);
    CHECK(G.prec() >= 10);
    for (int k = 1; k < 13; ++k)
        for (int i = 0; i <= k; ++i) {
            i64 want = (k == 1 || (k == 2 && i == 1)) ? 1 : 0;
            CHECK(G.law().coeff(i, k - i) == R.from_int(want, G.prec()));
        }
    for (i64 a : {2, 5, -1, 7}) {
        LaurentSeries m = G.mult(a, 13);
        for (int k = 1; k < 13; ++k) CHECK(m[k] == R.from_int(binom_signed(a, k), m.prec()));
    }
    for (int k = 0; k < G.g().high(); ++k) CHECK(G.g()[k] == R.from_int(k % 2 ? -1 : 1, G.prec()));
    // log(1+Z) = sum (-1)^(k+1) Z^k / k
    for (int k = 1; k < G.log().high(); ++k) {
        Rational want = Rational::of(R.from_int(k % 2 ? 1 : -1, G.prec())).div_int(k);
        CHECK(G.log().c[k] == want);
    }
    LaurentSeries z = LaurentSeries::monomial(&R, 12, 1, 13);
    CHECK(G.inv_deriv(z) == LaurentSeries::from_ints(&R, 12, 0, 12, {1, 1}));
    CHECK(G.inv_deriv(LaurentSeries::monomial(&R, 12, 0, 13)).is_zero());
    WeierPoly P = G.torsion_weier(10);
    CHECK(P.exact);
    CHECK(P.coeffs[0] == LaurentSeries::from_ints(&R, 12, 0, 10, {0, -3, -3, -1}));
    CHECK(P.coeffs[1] == LaurentSeries::from_ints(&R, 12, 0, 10, {3}));
    CHECK(P.coeffs[2] == LaurentSeries::from_ints(&R, 12, 0, 10, {3}));
}

TEST_CASE("group law axioms on the grid") {
    for (const auto& c : grid_cases()) {
        CAPTURE(c.ring);
        CAPTURE(c.frob);
        BaseRing R(preset_spec(c.ring, 12));
        FormalGroup G(R, standard_frobenius(R, c.frob), 20);
        auto rho = lt_precision_profile(20, 12, 12, R.q());
        CHECK(G.prec() == *std::min_element(rho.begin() + 2, rho.end()));
        CHECK(G.prec() >= 12 - 1 - (R.q() == 2 ? 4 : 2));
        const Bivariate& F = G.law();
        CHECK(F.coeff(1, 0) == R.one(12));
        CHECK(F.coeff(0, 1) == R.one(12));
        for (int k = 2; k < 20; ++k) {
            CHECK(F.coeff(k, 0).is_zero());
            CHECK(F.coeff(0, k).is_zero());
            for (int i = 0; i <= k; ++i) CHECK(F.coeff(i, k - i) == F.coeff(k - i, i));
        }
        CHECK(associative(F));
        CHECK(G.g()[0] == R.one(12));
        CHECK(G.g()[0].valuation() == 0);
        CHECK(G.mult(1) == LaurentSeries::monomial(&R, 12, 1, 20));
        CHECK(G.mult(R.pi(12)) == G.frobenius(20));
        LaurentSeries dpi = derivative(G.frobenius(20));
        for (int k = 0; k < dpi.high(); ++k) CHECK(dpi[k].valuation() >= 1);
    }
}

TEST_CASE("endomorphisms compose and add") {
    std::mt19937_64 rng(29);
    for (const auto& c : grid_cases()) {
        CAPTURE(c.ring);
        BaseRing R(preset_spec(c.ring, 10));
        FormalGroup G(R, standard_frobenius(R, c.frob), 16);
        for (int t = 0; t < 20; ++t) {
            BaseElem a = random_elem(R, rng, 3).lifted(10), b = random_elem(R, rng, 3).lifted(10);
            LaurentSeries ma = G.mult(a), mb = G.mult(b);
            CHECK(compose(ma, mb) == G.mult(a * b));
            CHECK(G.add(ma, mb) == G.mult(a + b));
        }
    }
}

TEST_CASE("logarithm identities") {
    for (const auto& c : grid_cases()) {
        CAPTURE(c.ring);
        // 1/10! has valuation 16 in Q_2(sqrt 2)
        const int N = c.ring == "q2e2" ? 40 : 12;
        BaseRing R(preset_spec(c.ring, N));
        FormalGroup G(R, standard_frobenius(R, c.frob), 14);
        for (const BaseElem& a : {R.from_int(2, N), R.pi(N), R.one(N) + R.pi(N)}) {
            LaurentSeries ma = G.mult(a, 11);
            RationalSeries lhs = compose(G.log(), RationalSeries::of(ma));
            for (int k = 0; k < 11; ++k) CHECK(lhs.c[k] == G.log().c[k] * Rational::of(a));
            // a g(Z) = g([a](Z)) [a]'(Z)
            LaurentSeries rhs = compose(G.g(), ma) * derivative(ma);
            CHECK(rhs.high() >= 10);
            CHECK(G.g().scaled(a) == rhs);
        }
        RationalSeries E = G.exp(11, N);
        RationalSeries lg = G.log();
        lg.c.resize(11, lg.c[0]);
        RationalSeries id1 = compose(E, lg), id2 = compose(lg, E);
        for (int k = 0; k < 11; ++k) {
            Rational want = Rational::of(R.from_int(k == 1 ? 1 : 0, N));
            CHECK(id1.c[k] == want);
            CHECK(id2.c[k] == want);
        }
        CHECK_THROWS_AS(G.exp(11, 0), Error);
    }
}

TEST_CASE("torsion Weierstrass polynomial") {
    for (const auto& c : grid_cases()) {
        CAPTURE(c.ring);
        BaseRing R(preset_spec(c.ring, 8));
        FormalGroup G(R, standard_frobenius(R, c.frob), 8);
        WeierPoly P = G.torsion_weier(30);
        const int q = static_cast<int>(R.q());
        CHECK(P.degree() == q);
        CHECK(reduce_mod_pi(P.coeffs[0]) == -ResidueSeries::monomial(&R, 1, q, 30));
        for (int i = 1; i < q; ++i) CHECK(reduce_mod_pi(P.coeffs[i]).is_zero());
        auto s = newton_power_sums(P, 4);
        CHECK(s[0] == LaurentSeries::constant(R.from_int(q, 8), 30));
        CHECK(s[1] == -P.coeffs[q - 1]);
    }
    BaseRing R(preset_spec("z3", 8));
    FormalGroup E(R, standard_frobenius(R, "pi"), 8);
    WeierPoly P = E.torsion_weier(10);
    CHECK(P.exact);
    CHECK(P.coeffs[0] == LaurentSeries::from_ints(&R, 8, 0, 10, {0, -3, 0, -1}));
    CHECK(P.coeffs[1] == LaurentSeries::from_ints(&R, 8, 0, 10, {3}));
    CHECK(P.coeffs[2].is_zero());
}

TEST_CASE("Weierstrass division for a Frobenius of degree above q") {
    BaseRing R(preset_spec("z3", 8));
    LaurentSeries f = LaurentSeries::from_ints(&R, 8, 0, 6, {0, 3, 3, 1, 3, 6});
    FormalGroup G(R, f, 8);
    WeierPoly P = G.torsion_weier(12);
    CHECK(!P.exact);
    // X = Z is a root
    LaurentSeries z = LaurentSeries::monomial(&R, 8, 1, 12);
    LaurentSeries val(&R, 8, 0, 12);
    for (int i = 0; i <= 3; ++i) val = val + P.coeffs[i] * z.pow(i);
    CHECK(val.is_zero());
    // P divides f(X) - f(Z): long division by the monic P leaves no remainder
    std::vector<LaurentSeries> g(6);
    g[0] = -G.frobenius(12);
    for (int i = 1; i < 6; ++i) g[i] = LaurentSeries::constant(G.frobenius_coeffs()[i], 12);
    for (int top = 5; top >= 3; --top) {
        LaurentSeries lead = g[top];
        for (int i = 0; i <= 3; ++i) g[top - 3 + i] = g[top - 3 + i] - lead * P.coeffs[i];
    }
    for (int i = 0; i < 3; ++i) CHECK(g[i].is_zero());
    for (int i = 1; i < 3; ++i) CHECK(P.coeffs[i].coeff(0).valuation() >= 1);
    CHECK(P.coeffs[0].coeff(0).is_zero());
}

TEST_CASE("bad Frobenius series are rejected") {
    BaseRing R(preset_spec("z3", 6));
    CHECK_THROWS_AS(FormalGroup(R, LaurentSeries::from_ints(&R, 6, 0, 4, {0, 3, 0, 2}), 6), Error);
    CHECK_THROWS_AS(FormalGroup(R, LaurentSeries::from_ints(&R, 6, 0, 4, {0, 6, 0, 1}), 6), Error);
    CHECK_THROWS_AS(FormalGroup(R, LaurentSeries::from_ints(&R, 6, 0, 4, {0, 3, 1, 1}), 6), Error);
    CHECK_THROWS_AS(FormalGroup(R, LaurentSeries::from_ints(&R, 6, 0, 3, {0, 3, 1}), 6), Error);
}
