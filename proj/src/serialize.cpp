#include "ltlab/serialize.hpp"

#include <string>

namespace ltlab {

namespace {

i64 int_of(const json& j, const char* what) {
    if (j.is_number_integer()) return j.get<i64>();
    if (j.is_string()) {
        const std::string& s = j.get_ref<const std::string&>();
        size_t pos = 0;
        i64 v = 0;
        try {
            v = std::stoll(s, &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        if (pos == 0 || pos != s.size()) fail("BadInput", std::string(what) + ": not an integer: '" + s + "'");
        return v;
    }
    fail("BadInput", std::string(what) + ": expected an integer, got " + j.dump());
}

int small_int(const json& j, const char* what) { return static_cast<int>(int_of(j, what)); }

std::vector<i64> ints_of(const json& j, const char* what) {
    if (!j.is_array()) fail("BadInput", std::string(what) + ": expected an array");
    std::vector<i64> r;
    for (const auto& x : j) r.push_back(int_of(x, what));
    return r;
}

json strs(const std::vector<i64>& v) {
    json a = json::array();
    for (i64 x : v) a.push_back(std::to_string(x));
    return a;
}

const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) fail("BadInput", std::string("missing field '") + key + "'");
    return j.at(key);
}

bool is_full_series(const json& j) { return j.is_object() && j.contains("domain"); }

}  // namespace

json to_json(const RingSpec& s) {
    json eis = json::array();
    for (const auto& c : s.eis_poly) eis.push_back(strs(c));
    return {{"p", std::to_string(s.p)},
            {"e", s.e},
            {"fdeg", s.fdeg},
            {"unram_poly", strs(s.unram_poly)},
            {"eis_poly", eis},
            {"pi_prec_max", s.pi_prec_max}};
}

RingSpec ring_spec_from_json(const json& j) {
    RingSpec s;
    s.p = int_of(field(j, "p"), "p");
    if (j.contains("e")) s.e = small_int(j["e"], "e");
    if (j.contains("fdeg")) s.fdeg = small_int(j["fdeg"], "fdeg");
    if (j.contains("unram_poly")) s.unram_poly = ints_of(j["unram_poly"], "unram_poly");
    if (j.contains("eis_poly")) {
        if (!j["eis_poly"].is_array()) fail("BadInput", "eis_poly: expected an array");
        for (const auto& c : j["eis_poly"]) s.eis_poly.push_back(c.is_array() ? ints_of(c, "eis_poly") : std::vector<i64>{int_of(c, "eis_poly")});
    }
    if (j.contains("pi_prec_max")) s.pi_prec_max = small_int(j["pi_prec_max"], "pi_prec_max");
    return s;
}

json to_json(const BaseElem& a) { return {{"coords", strs(a.coords())}, {"prec", a.prec()}}; }

json to_json(const ResidueElem& a) { return {{"coords", strs(a.coords())}}; }

BaseElem elem_from_json(const BaseRing& R, const json& j, int prec) {
    if (j.is_object()) {
        int n = j.contains("prec") ? small_int(j["prec"], "prec") : prec;
        if (n < 0 || n > R.max_prec()) fail("BadInput", "element precision " + std::to_string(n) + " out of range");
        return R.from_coords(ints_of(field(j, "coords"), "coords"), n);
    }
    if (j.is_array()) return R.from_coords(ints_of(j, "coords"), prec);
    return R.from_int(int_of(j, "element"), prec);
}

ResidueElem residue_elem_from_json(const BaseRing& R, const json& j) {
    if (j.is_object()) return R.residue_from_coords(ints_of(field(j, "coords"), "coords"));
    if (j.is_array()) return R.residue_from_coords(ints_of(j, "coords"));
    return R.residue_from_int(int_of(j, "element"));
}

json to_json(const LaurentSeries& f) {
    json cs = json::array();
    for (const auto& c : f.coeffs()) cs.push_back(to_json(c));
    return {{"domain", "integral"}, {"pi_prec", f.prec()}, {"z_low", f.low()}, {"z_high", f.high()}, {"coeffs", cs}};
}

json to_json(const ResidueSeries& f) {
    json cs = json::array();
    for (const auto& c : f.coeffs()) cs.push_back(to_json(c));
    return {{"domain", "residue"}, {"pi_prec", 1}, {"z_low", f.low()}, {"z_high", f.high()}, {"coeffs", cs}};
}

LaurentSeries series_from_json(const BaseRing& R, const json& j, int prec, int low, int high) {
    if (is_full_series(j)) {
        if (j["domain"] == "residue") return lift_plain(residue_series_from_json(R, j, low, high), 1);
        if (j["domain"] != "integral") fail("BadInput", "unknown series domain " + j["domain"].dump());
        int n = small_int(field(j, "pi_prec"), "pi_prec");
        int lo = small_int(field(j, "z_low"), "z_low"), hi = small_int(field(j, "z_high"), "z_high");
        const json& cs = field(j, "coeffs");
        if (!cs.is_array() || static_cast<int>(cs.size()) != hi - lo) fail("BadInput", "coefficient count does not match the window");
        LaurentSeries f(&R, n, lo, hi);
        for (int k = lo; k < hi; ++k) f[k] = elem_from_json(R, cs[k - lo], n).with_prec(n);
        return f;
    }
    int lo = low;
    const json* cs = &j;
    if (j.is_object()) {
        lo = j.contains("low") ? small_int(j["low"], "low") : low;
        cs = &field(j, "coeffs");
    }
    if (!cs->is_array()) fail("BadInput", "series: expected a coefficient list");
    int hi = std::max(high, lo + static_cast<int>(cs->size()));
    LaurentSeries f(&R, prec, lo, hi);
    for (size_t i = 0; i < cs->size(); ++i) f[lo + static_cast<int>(i)] = elem_from_json(R, (*cs)[i], prec).with_prec(prec);
    return f;
}

ResidueSeries residue_series_from_json(const BaseRing& R, const json& j, int low, int high) {
    if (is_full_series(j)) {
        if (j["domain"] == "integral") return reduce_mod_pi(series_from_json(R, j, 1, low, high));
        if (j["domain"] != "residue") fail("BadInput", "unknown series domain " + j["domain"].dump());
        int lo = small_int(field(j, "z_low"), "z_low"), hi = small_int(field(j, "z_high"), "z_high");
        const json& cs = field(j, "coeffs");
        if (!cs.is_array() || static_cast<int>(cs.size()) != hi - lo) fail("BadInput", "coefficient count does not match the window");
        ResidueSeries f(&R, 1, lo, hi);
        for (int k = lo; k < hi; ++k) f[k] = residue_elem_from_json(R, cs[k - lo]);
        return f;
    }
    int lo = low;
    const json* cs = &j;
    if (j.is_object()) {
        lo = j.contains("low") ? small_int(j["low"], "low") : low;
        cs = &field(j, "coeffs");
    }
    if (!cs->is_array()) fail("BadInput", "series: expected a coefficient list");
    int hi = std::max(high, lo + static_cast<int>(cs->size()));
    ResidueSeries f(&R, 1, lo, hi);
    for (size_t i = 0; i < cs->size(); ++i) f[lo + static_cast<int>(i)] = residue_elem_from_json(R, (*cs)[i]);
    return f;
}

json to_json(const Rational& r) { return {{"num", to_json(r.num)}, {"den", r.den}}; }

Rational rational_from_json(const BaseRing& R, const json& j) {
    return {elem_from_json(R, field(j, "num"), R.max_prec()), small_int(field(j, "den"), "den")};
}

json to_json(const RationalSeries& f) {
    json cs = json::array();
    for (const auto& c : f.c) cs.push_back(to_json(c));
    return {{"domain", "rational"}, {"t_high", f.high()}, {"coeffs", cs}};
}

RationalSeries rational_series_from_json(const BaseRing& R, const json& j) {
    RationalSeries f;
    f.R = &R;
    for (const auto& c : field(j, "coeffs")) f.c.push_back(rational_from_json(R, c));
    return f;
}

json to_json(const Bivariate& F) {
    json hom = json::array();
    for (const auto& row : F.hom) {
        json r = json::array();
        for (const auto& c : row) r.push_back(to_json(c));
        hom.push_back(r);
    }
    return {{"degree", F.degree()}, {"prec", F.prec}, {"hom", hom}};
}

json to_json(const DiffForm& w) { return {{"form", "dZ"}, {"coeff", to_json(w.coeff)}}; }

DiffForm form_from_json(const BaseRing& R, const json& j, int prec, int low, int high) {
    if (j.is_object() && j.contains("form")) {
        if (j["form"] != "dZ") fail("BadInput", "differential forms are written in dZ");
        return {series_from_json(R, field(j, "coeff"), prec, low, high)};
    }
    return {series_from_json(R, j, prec, low, high)};
}

json to_json(const TorsionClass& t) { return {{"num", to_json(t.num)}, {"n", t.n}}; }

TorsionClass torsion_from_json(const BaseRing& R, const json& j) {
    int n = small_int(field(j, "n"), "n");
    return {elem_from_json(R, field(j, "num"), n), n};
}

json to_json(const WittVec& x) {
    const BaseRing& R = x.ring();
    json cs = json::array();
    for (const auto& c : x.c) {
        switch (x.domain) {
        case WittDomain::residue_field: cs.push_back(to_json(R.reduce(c.coeff(0)))); break;
        case WittDomain::integers: cs.push_back(to_json(c.coeff(0))); break;
        case WittDomain::residue_series: cs.push_back(to_json(reduce_mod_pi(c))); break;
        case WittDomain::series: cs.push_back(to_json(c)); break;
        }
    }
    return {{"len", x.length()}, {"domain", domain_name(x.domain)}, {"components", cs}};
}

WittVec witt_from_json(const BaseRing& R, const json& j, WittDomain d, int prec, int low, int high) {
    const json* cs = &j;
    if (j.is_object()) {
        d = domain_from_name(field(j, "domain").get<std::string>());
        cs = &field(j, "components");
        if (j.contains("len") && small_int(j["len"], "len") != static_cast<int>(cs->size()))
            fail("BadInput", "Witt length does not match the component count");
    }
    if (!cs->is_array() || cs->empty()) fail("BadInput", "Witt vector: expected a nonempty component list");
    std::vector<LaurentSeries> comps;
    for (const auto& c : *cs) {
        switch (d) {
        case WittDomain::residue_field: comps.push_back(LaurentSeries::constant(R.lift(residue_elem_from_json(R, c), 1), 1)); break;
        case WittDomain::integers: comps.push_back(LaurentSeries::constant(elem_from_json(R, c, prec), 1)); break;
        case WittDomain::residue_series: comps.push_back(lift_plain(residue_series_from_json(R, c, low, high), 1)); break;
        case WittDomain::series: comps.push_back(series_from_json(R, c, prec, low, high)); break;
        }
    }
    return make_witt(d, std::move(comps));
}

}  // namespace ltlab
