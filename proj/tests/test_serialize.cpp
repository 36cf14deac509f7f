#include "doctest.h"
#include "ltlab/serialize.hpp"
#include "cases.hpp"
#include "support.hpp"

using namespace ltlab;
using namespace testsupport;

namespace {

// serialize, print, parse, serialize again
json reparse(const json& j) { return json::parse(j.dump()); }

}  // namespace

TEST_CASE("ring specs and elements round-trip") {
    std::mt19937_64 rng(501);
    for (const char* name : {"z3", "q2e2", "z5", "q9", "z3e2"}) {
        CAPTURE(name);
        RingSpec s = preset_spec(name, 12);
        RingSpec t = ring_spec_from_json(reparse(to_json(s)));
        CHECK(t.p == s.p);
        CHECK(t.e == s.e);
        CHECK(t.fdeg == s.fdeg);
        CHECK(t.unram_poly == s.unram_poly);
        CHECK(t.eis_poly == s.eis_poly);
        CHECK(t.pi_prec_max == s.pi_prec_max);
        BaseRing R(s);
        for (int k = 0; k < 20; ++k) {
            int n = 1 + static_cast<int>(rng() % 12);
            BaseElem a = random_elem(R, rng, n);
            BaseElem b = elem_from_json(R, reparse(to_json(a)), 1);
            CHECK(b.prec() == n);
            CHECK(b == a);
            CHECK(to_json(b) == to_json(a));
            ResidueElem r = R.residue(static_cast<std::uint32_t>(rng() % R.q()));
            CHECK(residue_elem_from_json(R, reparse(to_json(r))) == r);
        }
    }
}

TEST_CASE("integers are written as decimal strings") {
    BaseRing R(preset_spec("z3", 12));
    json j = to_json(R.from_int(-1, 12));
    REQUIRE(j["coords"][0].is_string());
    CHECK(j["coords"][0] == "531440");
    CHECK(elem_from_json(R, json(7), 3) == R.from_int(7, 3));
    CHECK(elem_from_json(R, json("7"), 3) == R.from_int(7, 3));
    CHECK(elem_from_json(R, json::parse("[\"-2\"]"), 3) == R.from_int(-2, 3));
    CHECK_THROWS_AS(elem_from_json(R, json("7x"), 3), Error);
    CHECK_THROWS_AS(elem_from_json(R, json::parse("{\"coords\": [1], \"prec\": 40}"), 3), Error);
}

TEST_CASE("series, forms and rationals round-trip") {
    std::mt19937_64 rng(503);
    for (const char* name : {"z3", "q2e2", "q9"}) {
        CAPTURE(name);
        BaseRing R(preset_spec(name, 12));
        for (int t = 0; t < 10; ++t) {
            int lo = static_cast<int>(rng() % 5) - 2;
            auto f = random_series(R, rng, 4, lo, lo + 12);
            auto g = series_from_json(R, reparse(to_json(f)), 1, 0, 1);
            CHECK(g.low() == f.low());
            CHECK(g.high() == f.high());
            CHECK(g.prec() == f.prec());
            CHECK(to_json(g) == to_json(f));
            auto r = random_residue(R, rng, lo, lo + 9);
            auto r2 = residue_series_from_json(R, reparse(to_json(r)), 0, 1);
            CHECK(to_json(r2) == to_json(r));
            DiffForm w{f};
            json jw = to_json(w);
            CHECK(jw["form"] == "dZ");
            CHECK(to_json(form_from_json(R, reparse(jw), 1, 0, 1)) == jw);
            Rational q{random_elem(R, rng, 6), static_cast<int>(rng() % 3)};
            CHECK(to_json(rational_from_json(R, reparse(to_json(q)))) == to_json(q));
            TorsionClass tc{random_elem(R, rng, 3), 3};
            CHECK(torsion_from_json(R, reparse(to_json(tc))) == tc);
        }
        RationalSeries s;
        s.R = &R;
        for (int k = 0; k < 5; ++k) s.c.push_back({R.from_int(k + 1, 8), k % 2});
        CHECK(to_json(rational_series_from_json(R, reparse(to_json(s)))) == to_json(s));
    }
    // short forms start at the window's low end and pad to its high end
    BaseRing R(preset_spec("z3", 12));
    auto f = series_from_json(R, json::parse("[1, 2]"), 3, -1, 5);
    CHECK(f.low() == -1);
    CHECK(f.high() == 5);
    CHECK(f == LaurentSeries::from_ints(&R, 3, -1, 5, {1, 2}));
    auto g = series_from_json(R, json::parse("{\"low\": 2, \"coeffs\": [1]}"), 3, 0, 5);
    CHECK(g == LaurentSeries::monomial(&R, 3, 2, 5));
}

TEST_CASE("Witt vectors round-trip in every domain") {
    std::mt19937_64 rng(509);
    BaseRing R(preset_spec("q9", 12));
    std::vector<LaurentSeries> ser, res1;
    std::vector<BaseElem> ints, ks;
    for (int i = 0; i < 3; ++i) {
        ser.push_back(random_series(R, rng, 3, -1, 8));
        res1.push_back(random_series(R, rng, 1, -1, 8));
        ints.push_back(random_elem(R, rng, 3));
        ks.push_back(random_elem(R, rng, 1));
    }
    for (const WittVec& x : {make_witt(WittDomain::series, ser), make_witt(WittDomain::residue_series, res1),
                             witt_scalars(WittDomain::integers, ints), witt_scalars(WittDomain::residue_field, ks)}) {
        CAPTURE(x.str());
        json j = to_json(x);
        CHECK(j["len"] == 3);
        CHECK(j["domain"] == domain_name(x.domain));
        WittVec y = witt_from_json(R, reparse(j), WittDomain::residue_field, 1, 0, 1);
        CHECK(y.domain == x.domain);
        CHECK(y == x);
        CHECK(to_json(y) == j);
    }
    CHECK_THROWS_AS(witt_from_json(R, json::parse("{\"len\": 2, \"domain\": \"k\", \"components\": [0]}"), WittDomain::residue_field, 1, 0, 1), Error);
}
