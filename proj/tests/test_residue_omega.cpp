#include "doctest.h"
#include "ltlab/residue_omega.hpp"
#include "cases.hpp"
#include "support.hpp"

using namespace ltlab;
using namespace testsupport;

namespace {

BaseElem q_over_pi(const BaseRing& R, int n) { return R.from_int(static_cast<i64>(R.q()), n + 1).divide_by_pi(1); }

DiffForm random_form(const BaseRing& R, std::mt19937_64& rng, int n, int low, int high) {
    return {random_series(R, rng, n, low, high)};
}

}  // namespace

TEST_CASE("residue, d and dlog") {
    auto c = make_case("z5", "pi");
    const BaseRing& R = *c.R;
    const int n = 4;
    std::mt19937_64 rng(211);
    CHECK(res({Zk(R, n, -1, 10)}) == R.one(n));
    for (int k : {-4, -2, 0, 1, 5}) CHECK(res({Zk(R, n, k, 10)}).is_zero());
    CHECK_THROWS_AS(res({LaurentSeries(&R, n, -5, -1)}), Error);
    CHECK(d_map(Zk(R, n, 2, 10)).coeff == Zk(R, n, 1, 9).scaled(R.from_int(2, n)));
    for (int t = 0; t < 10; ++t) CHECK(res(d_map(random_series(R, rng, n, -6, 10))).is_zero());

    auto teich = LaurentSeries::constant(R.teichmuller(R.residue_generator(), n), 10);
    CHECK(dlog(teich).coeff.is_zero());
    for (int t = 0; t < 10; ++t) {
        int k = static_cast<int>(rng() % 7) - 3;
        auto u = random_series(R, rng, n, 0, 16);
        u[0] = R.one(n);
        auto v = random_unit_power_series(R, rng, n, 16);
        auto f = u.shifted(k);
        CHECK(res(dlog(f)) == R.from_int(k, n));
        CHECK(dlog(f * v) == dlog(f) + dlog(v));
    }
    CHECK_THROWS_AS(dlog(Zk(R, n, 1, 10).scaled(R.pi(n))), Error);
}

TEST_CASE("residue does not depend on the variable") {
    std::mt19937_64 rng(223);
    for_grid([&](Case& c) {
        const BaseRing& R = *c.R;
        const int n = c.n, W = 24;
        for (int t = 0; t < 10; ++t) {
            // omega = F(Z') dZ' with Z' = Z u, u = 1 + pi h
            const int K = 1 + static_cast<int>(rng() % 3);
            auto P = random_series(R, rng, n, 0, W);
            auto u = mul_pi(random_series(R, rng, n, 0, W), 1).with_prec(n) + Zk(R, n, 0, W);
            auto Zp = Zk(R, n, 1, W + 1) * u;
            auto F = P.shifted(-K);
            auto inZ = compose(P, Zp) * invert_power_series(u).pow(K).shifted(-K);
            auto form = inZ * derivative(Zp);
            CHECK(res({form}) == res({F}));
        }
    });
}

TEST_CASE("phi, psi and Gamma on forms") {
    std::mt19937_64 rng(227);
    for_grid([&](Case& c) {
        const BaseRing& R = *c.R;
        const int n = c.n, q = static_cast<int>(R.q());
        auto& C = *c.C;
        const int W = 20 * q;
        const BaseElem qp = q_over_pi(R, n);
        CHECK(res(phi_omega(C, {Zk(R, n, -1, 20)})) == qp);
        auto g = c.G->g(W);
        auto gf = DiffForm{g.with_prec(n)};
        CHECK(psi_omega(C, gf) == gf.scaled(qp));
        for (int t = 0; t < 6; ++t) {
            auto w = random_form(R, rng, n, -3, W);
            auto h = random_series(R, rng, n, -3, W);
            auto a = random_unit(R, rng, 12);
            CHECK(res(phi_omega(C, w)) == res(w) * qp);
            CHECK(res(gamma_omega(C, a, w)) == res(w));
            CHECK(res(psi_omega(C, w)) == res(w));
            CHECK(psi_omega(C, phi_omega(C, w)) == w.scaled(qp));
            // the g_LT-twist presentation
            CHECK(phi_omega(C, {h * g}) == DiffForm{C.phi(h) * g});
        }
    });
}

TEST_CASE("duality pairing") {
    auto z = make_case("z3", "pi");
    const BaseRing& R = *z.R;
    TorsionClass one = pairing_bracket(Zk(R, 1, 0, 4), {Zk(R, 1, -1, 4)}, 1);
    CHECK(!one.is_zero());
    CHECK(one == TorsionClass{R.pi(3), 2});
    CHECK(one != TorsionClass{R.one(3), 2});

    std::mt19937_64 rng(229);
    for_grid([&](Case& c) {
        const BaseRing& Rc = *c.R;
        const int n = c.n, q = static_cast<int>(Rc.q());
        auto& C = *c.C;
        const int W = 20 * q;
        for (int t = 0; t < 3; ++t) {
            auto f = random_series(Rc, rng, n, -2, W);
            auto w = random_form(Rc, rng, n, -2, W);
            auto f2 = random_series(Rc, rng, n, -2, W);
            auto a = random_elem(Rc, rng, n);
            const int k = n - 1;
            CHECK(pairing_bracket(C.psi(f), w, k) == pairing_bracket(f, phi_omega(C, w), k));
            CHECK(pairing_bracket(C.phi(f), w, k) == pairing_bracket(f, psi_omega(C, w), k));
            auto lhs = pairing_bracket(f.scaled(a) + f2, w, k);
            CHECK(lhs.num == a * pairing_bracket(f, w, k).num + pairing_bracket(f2, w, k).num);
        }
    });
}

TEST_CASE("d against phi, psi and Gamma") {
    std::mt19937_64 rng(233);
    for_grid([&](Case& c) {
        const BaseRing& R = *c.R;
        const int n = c.n, q = static_cast<int>(R.q());
        auto& C = *c.C;
        const int W = 20 * q;
        for (int t = 0; t < 4; ++t) {
            auto f = random_series(R, rng, n, -2, W);
            auto a = random_unit(R, rng, 12);
            CHECK(DiffForm{mul_pi(phi_omega(C, d_map(f)).coeff, 1)} == d_map(C.phi(f)));
            CHECK(gamma_omega(C, a, d_map(f)) == d_map(C.gamma_act(a, f)));
            CHECK(psi_omega(C, d_map(f)) == DiffForm{mul_pi(d_map(C.psi(f)).coeff, 1)});
        }
    });
}

TEST_CASE("dlog of a Coleman lift is psi-invariant") {
    std::mt19937_64 rng(239);
    for_grid([&](Case& c) {
        const BaseRing& R = *c.R;
        const int n = c.n, q = static_cast<int>(R.q());
        auto& C = *c.C;
        for (int t = 0; t < 2; ++t) {
            auto g = C.coleman_lift(random_residue_unit(R, rng, 3), n, q > 5 ? 45 : 40);
            auto w = dlog(g);
            auto y = psi_omega(C, w);
            CHECK(y.coeff.high() >= 2);
            CHECK(y == w);
        }
    });
}
