#include <random>

#include "doctest.h"
#include "ltlab/presets.hpp"
#include "ltlab/series.hpp"

using namespace ltlab;

namespace {

LaurentSeries random_series(const BaseRing& R, std::mt19937_64& rng, int n, int low, int high) {
    LaurentSeries f(&R, n, low, high);
    for (int k = low; k < high; ++k) {
        std::vector<i64> c(R.degree());
        for (auto& x : c) x = static_cast<i64>(rng() % R.modulus());
        f[k] = R.from_coords(c, n);
    }
    return f;
}

LaurentSeries random_unit_power_series(const BaseRing& R, std::mt19937_64& rng, int n, int high) {
    LaurentSeries f = random_series(R, rng, n, 0, high);
    f[0] = R.teichmuller(R.residue(1 + static_cast<std::uint32_t>(rng() % (R.q() - 1))), n);
    return f;
}

ResidueSeries random_residue(const BaseRing& R, std::mt19937_64& rng, int low, int high) {
    ResidueSeries f(&R, 1, low, high);
    for (int k = low; k < high; ++k) f[k] = R.residue(static_cast<std::uint32_t>(rng() % R.q()));
    return f;
}

}  // namespace

TEST_CASE("small products and inverses") {
    BaseRing R(preset_spec("z3", 6));
    auto a = LaurentSeries::from_ints(&R, 6, 0, 10, {1, 1});
    auto b = LaurentSeries::from_ints(&R, 6, 0, 10, {1, -1});
    CHECK(a * b == LaurentSeries::from_ints(&R, 6, 0, 10, {1, 0, -1}));

    auto zinv = LaurentSeries::monomial(&R, 6, -1, 10, -1);
    auto z = LaurentSeries::monomial(&R, 6, 1, 10);
    auto one = zinv * z;
    CHECK(one.high() == 9);
    CHECK(one == LaurentSeries::monomial(&R, 6, 0, 10));

    auto inv = invert_unit(b);
    CHECK(inv == LaurentSeries::from_ints(&R, 6, 0, 10, {1, 1, 1, 1, 1, 1, 1, 1, 1, 1}));
    auto zi = invert_unit(z);
    CHECK(zi.order() == -1);
    CHECK(zi.coeff(-1) == R.one(6));
}

TEST_CASE("[pi] = 3Z + Z^3 is a unit of the Laurent ring") {
    BaseRing R(preset_spec("z3", 3));
    auto f = LaurentSeries::from_ints(&R, 3, 0, 40, {0, 3, 0, 1});
    auto g = invert_unit(f);
    CHECK(g.order() < -3);  // genuinely uses the polar correction
    auto one = f * g;
    CHECK(one.high() > 4);
    CHECK(one == LaurentSeries::monomial(&R, 3, 0, one.high()));
    auto back = invert_unit(g);
    CHECK(back.high() > 3);
    CHECK(back == f);
    CHECK(reduce_mod_pi(f) == ResidueSeries::monomial(&R, 1, 3, 40));
}

TEST_CASE("composition examples") {
    BaseRing R(preset_spec("z3", 6));
    auto f = LaurentSeries::from_ints(&R, 6, 0, 12, {0, 0, 1});
    auto g = LaurentSeries::from_ints(&R, 6, 0, 12, {0, 1, 1});
    auto h = compose(f, g);
    CHECK(h.high() >= 5);
    CHECK(h == LaurentSeries::from_ints(&R, 6, 0, 5, {0, 0, 1, 2, 1}));

    std::mt19937_64 rng(3);
    auto r = random_series(R, rng, 6, 0, 15);
    auto id = LaurentSeries::monomial(&R, 6, 1, 20);
    CHECK(compose(r, id) == r);
    CHECK(compose(r, id).high() == 15);
}

TEST_CASE("composition agrees with direct powers") {
    std::mt19937_64 rng(5);
    for (const auto& name : preset_grid()) {
        BaseRing R(preset_spec(name, 6));
        for (int t = 0; t < 10; ++t) {
            auto f = random_series(R, rng, 6, 0, 8);
            auto g = random_series(R, rng, 6, 0, 16);
            g[0] = R.zero(6);
            g[1] = R.one(6);
            auto h = compose(f, g);
            LaurentSeries direct = LaurentSeries::constant(f[0], 16);
            for (int i = 1; i < 8; ++i) direct = direct + g.pow(i).scaled(f[i]);
            CHECK(h.high() == 8);
            CHECK(h == direct);
        }
    }
}

TEST_CASE("derivatives") {
    BaseRing R(preset_spec("z3", 6));
    auto z3 = LaurentSeries::monomial(&R, 6, 3, 10);
    CHECK(derivative(z3) == LaurentSeries::from_ints(&R, 6, 0, 9, {0, 0, 3}));
    auto zi = LaurentSeries::monomial(&R, 6, -1, 10, -1);
    auto d = derivative(zi);
    CHECK(d.low() == -2);
    CHECK(d.coeff(-2) == R.from_int(-1, 6));
    CHECK(d.coeff(-1).is_zero());

    std::mt19937_64 rng(9);
    for (const auto& name : preset_grid()) {
        BaseRing Q(preset_spec(name, 8));
        for (int t = 0; t < 30; ++t) {
            auto f = random_series(Q, rng, 8, -3, 20), g = random_series(Q, rng, 8, -2, 20);
            CHECK(derivative(f * g) == f * derivative(g) + g * derivative(f));
        }
    }
}

TEST_CASE("ring laws at width 25") {
    std::mt19937_64 rng(13);
    for (const auto& name : preset_grid()) {
        BaseRing R(preset_spec(name, 8));
        for (int t = 0; t < 30; ++t) {
            auto a = random_series(R, rng, 8, -2, 23), b = random_series(R, rng, 8, 0, 25),
                 c = random_series(R, rng, 8, -1, 24);
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a * b == b * a);
        }
    }
}

TEST_CASE("inversion") {
    std::mt19937_64 rng(17);
    for (const auto& name : preset_grid()) {
        BaseRing R(preset_spec(name, 6));
        for (int t = 0; t < 20; ++t) {
            // Z^k (u + pi N) with a polar N
            auto u = random_unit_power_series(R, rng, 6, 30);
            auto N = random_series(R, rng, 6, -4, 30);
            for (int k = -4; k < 30; ++k) N[k] = N[k] * R.pi(6);
            int k = static_cast<int>(rng() % 5) - 2;
            auto f = (u + N).shifted(k);
            auto g = invert_unit(f);
            auto one = f * g;
            CHECK(one.high() > 0);
            CHECK(one == LaurentSeries::monomial(&R, 6, 0, one.high()));
            auto back = invert_unit(g);
            CHECK(back == f);
        }
        ResidueSeries x = random_residue(R, rng, -3, 20);
        x[-3] = R.rone();
        ResidueSeries one = x * invert_unit(x);
        CHECK(one == ResidueSeries::monomial(&R, 1, 0, one.high()));
    }
    BaseRing R(preset_spec("z3", 4));
    CHECK_THROWS_AS(invert_unit(LaurentSeries::from_ints(&R, 4, 0, 5, {3, 3})), Error);
}

TEST_CASE("wider windows refine narrower answers") {
    std::mt19937_64 rng(19);
    for (const auto& name : preset_grid()) {
        BaseRing R(preset_spec(name, 8));
        for (int t = 0; t < 10; ++t) {
            auto a = random_series(R, rng, 8, -2, 30), b = random_unit_power_series(R, rng, 8, 30);
            auto as = a.truncated(15).with_prec(5), bs = b.truncated(12).with_prec(5);
            CHECK((a * b).truncated((as * bs).high()).with_prec(5) == as * bs);
            auto ib = invert_unit(bs);
            CHECK(invert_unit(b).truncated(ib.high()).with_prec(5) == ib);
            auto g = random_series(R, rng, 8, 0, 30);
            g[0] = R.zero(8);
            g[1] = R.teichmuller(R.residue_generator(), 8);
            auto gs = g.truncated(10);
            auto c1 = compose(b, g), c2 = compose(bs, gs);
            CHECK(c1.truncated(c2.high()).with_prec(5) == c2);
        }
    }
}

TEST_CASE("reduction and lifting") {
    BaseRing R(preset_spec("z3", 4));
    auto f = LaurentSeries::from_ints(&R, 4, 0, 5, {3, 1});
    CHECK(reduce_mod_pi(f) == ResidueSeries::monomial(&R, 1, 1, 5));
    auto z = ResidueSeries::monomial(&R, 1, 1, 5);
    CHECK(lift_from_residue(z, 4) == LaurentSeries::monomial(&R, 4, 1, 5));
    auto c = ResidueSeries::constant(R.residue_from_int(2), 5);
    CHECK(lift_from_residue(c, 4).coeff(0) == R.from_int(80, 4));

    std::mt19937_64 rng(23);
    for (const auto& name : preset_grid()) {
        BaseRing Q(preset_spec(name, 6));
        for (int t = 0; t < 50; ++t) {
            auto x = random_residue(Q, rng, -2, 12);
            CHECK(reduce_mod_pi(lift_from_residue(x, 6)) == x);
            CHECK(reduce_mod_pi(lift_plain(x, 6)) == x);
        }
        for (int t = 0; t < 10; ++t) {
            auto a = random_series(Q, rng, 6, -2, 15), b = random_series(Q, rng, 6, 0, 15);
            CHECK(reduce_mod_pi(a * b) == reduce_mod_pi(a) * reduce_mod_pi(b));
            auto x = random_residue(Q, rng, -1, 10);
            CHECK(frobenius_power(x, 1) == x.pow(static_cast<u64>(Q.p())));
        }
    }
}

TEST_CASE("rational scalars") {
    BaseRing R(preset_spec("z3e2", 10));
    Rational a = Rational::of(R.one(10)).div_int(9);
    CHECK(a.den == 4);
    CHECK((a * Rational::of(R.from_int(9, 10))).integral_value() == R.one(6));
    Rational b = Rational::of(R.from_int(2, 10)).div_int(6);
    CHECK(b + b + b == Rational::of(R.one(10)));
    BaseRing Z(preset_spec("z5", 10));
    Rational s{Z.zero(10), 0};
    for (int k = 1; k <= 4; ++k) s = s + Rational::of(Z.one(10)).div_int(k);
    // 1 + 1/2 + 1/3 + 1/4 = 25/12
    CHECK(s == Rational::of(Z.from_int(25, 10)).div_int(12));
}
