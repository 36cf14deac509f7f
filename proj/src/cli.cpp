#include "ltlab/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "ltlab/acceptance.hpp"
#include "ltlab/schmid_witt.hpp"

namespace ltlab {

namespace {

int int_field(const json& j, const char* key) {
    const json& v = j.at(key);
    if (v.is_number_integer()) return v.get<int>();
    if (v.is_string()) {
        try {
            size_t pos = 0;
            int r = std::stoi(v.get<std::string>(), &pos);
            if (pos == v.get<std::string>().size()) return r;
        } catch (const std::exception&) {
        }
    }
    fail("BadConfig", std::string("'") + key + "' must be an integer");
}

// ------------------------------------------------------------ job objects

struct Job {
    const JobConfig& cfg;
    std::unique_ptr<BaseRing> R;
    std::unique_ptr<FormalGroup> G;
    std::unique_ptr<ColemanContext> C;

    explicit Job(const JobConfig& c) : cfg(c), R(std::make_unique<BaseRing>(c.ring)) {}

    int n() const { return cfg.prec.pi_prec; }
    int lo() const { return cfg.prec.z_low; }
    int hi() const { return cfg.prec.z_high; }

    const FormalGroup& group(int degree = 8) {
        if (!G) {
            LaurentSeries f;
            if (cfg.frobenius.is_string()) f = standard_frobenius(*R, cfg.frobenius.get<std::string>());
            else f = series_from_json(*R, cfg.frobenius, R->max_prec(), 0, 0);
            G = std::make_unique<FormalGroup>(*R, f, degree);
        }
        return *G;
    }
    const ColemanContext& context() {
        if (!C) C = std::make_unique<ColemanContext>(group(), n(), 20);
        return *C;
    }

    bool has(const char* key) const { return cfg.args.contains(key); }
    const json& arg(const char* key) const {
        if (!has(key)) fail("BadArgument", std::string("missing argument --") + key);
        return cfg.args.at(key);
    }
    bool flag(const char* key) const {
        if (!has(key)) return false;
        const json& v = cfg.args.at(key);
        return v.is_boolean() ? v.get<bool>() : v != "false" && v != 0;
    }
    std::string text(const char* key, const std::string& dflt) const {
        if (!has(key)) return dflt;
        const json& v = cfg.args.at(key);
        return v.is_string() ? v.get<std::string>() : v.dump();
    }
    int integer(const char* key, int dflt) const { return has(key) ? int_field(cfg.args, key) : dflt; }

    LaurentSeries series(const char* key) const { return series_from_json(*R, arg(key), n(), lo(), hi()); }
    ResidueSeries residue_series(const char* key) const { return residue_series_from_json(*R, arg(key), lo(), hi()); }
    BaseElem elem(const char* key, int prec) const { return elem_from_json(*R, arg(key), prec); }
    WittVec witt(const char* key, WittDomain d) const { return witt_from_json(*R, arg(key), d, n(), lo(), hi()); }
    WittDomain domain(WittDomain dflt) const { return has("domain") ? domain_from_name(text("domain", "")) : dflt; }
};

json ghost_json(const WittVec& x, const GhostVec& g) {
    json r = json::array();
    for (const auto& s : g) r.push_back(is_scalar(x.domain) ? to_json(s.coeff(0)) : to_json(s));
    return r;
}

using Handler = json (*)(Job&);

json cmd_lt_build(Job& J) {
    const FormalGroup& G = J.group(J.hi());
    return {{"frobenius", to_json(G.frobenius(G.frobenius_degree() + 1))},
            {"law", to_json(G.law())},
            {"g", to_json(G.g())},
            {"g_inverse", to_json(G.g_inverse())},
            {"log", to_json(G.log())},
            {"prec", G.prec()}};
}

json cmd_lt_mult(Job& J) {
    const FormalGroup& G = J.group(J.hi());
    BaseElem a = J.elem("a", J.R->max_prec());
    return {{"a", to_json(a)}, {"mult", to_json(G.mult(a, J.hi()))}};
}

json cmd_lt_log(Job& J) {
    const FormalGroup& G = J.group(J.hi());
    json r = {{"log", to_json(G.log())}};
    if (J.flag("exp")) r["exp"] = to_json(G.exp(J.cfg.prec.r_max + 1, J.R->max_prec()));
    return r;
}

json cmd_coleman_psi(Job& J) {
    const ColemanContext& C = J.context();
    LaurentSeries f = J.series("f");
    if (J.flag("phi_first")) f = C.phi(f);
    return {{"input", to_json(f)}, {"psi", to_json(C.psi(f))}, {"psi_col", to_json(C.psi_col(f))}};
}

json cmd_coleman_norm(Job& J) { return {{"norm", to_json(J.context().norm(J.series("f")))}}; }

json cmd_coleman_lift(Job& J) {
    const ColemanContext& C = J.context();
    ResidueSeries u = J.residue_series("u");
    return {{"u", to_json(u)}, {"lift", to_json(C.coleman_lift(u, J.n(), J.hi()))}};
}

json cmd_coleman_delta(Job& J) { return {{"delta", to_json(J.context().delta(J.series("f")))}}; }

json cmd_coates_wiles(Job& J) {
    const ColemanContext& C = J.context();
    LaurentSeries g = J.series("g");
    const int rmax = J.cfg.prec.r_max;
    const int r = J.integer("r", rmax);
    if (r < 1 || r > rmax) fail("DenominatorBudgetExceeded", "r = " + std::to_string(r) + " is outside 1.." + std::to_string(rmax));
    json vals = json::array();
    for (int k = 1; k <= r; ++k) vals.push_back(to_json(C.coates_wiles(g, k, J.R->max_prec())));
    return {{"values", vals}};
}

json cmd_nabla(Job& J) {
    const ColemanContext& C = J.context();
    return {{"nabla", to_json(C.nabla(J.series("g"), J.elem("a", J.n())))}};
}

json cmd_residue(Job& J) {
    DiffForm w = J.flag("dlog") ? dlog(J.series("f")) : form_from_json(*J.R, J.arg("f"), J.n(), J.lo(), J.hi());
    return {{"form", to_json(w)}, {"res", to_json(res(w))}};
}

json cmd_pairing_bracket(Job& J) {
    LaurentSeries f = J.series("f");
    DiffForm w = form_from_json(*J.R, J.arg("w"), J.n(), J.lo(), J.hi());
    return {{"bracket", to_json(pairing_bracket(f, w, J.integer("level", J.n())))}};
}

json cmd_witt_ghost(Job& J) {
    WittVec x = J.witt("components", J.domain(WittDomain::integers));
    return {{"vector", to_json(x)}, {"ghost", ghost_json(x, ghost(x))}};
}

json cmd_witt_arith(Job& J) {
    const WittDomain d = J.domain(WittDomain::residue_field);
    const std::string op = J.text("op", "add");
    WittVec x = J.witt("x", d);
    WittVec r;
    if (op == "neg") {
        r = witt_neg(x);
    } else {
        WittVec y = J.witt("y", d);
        if (op == "add") r = x + y;
        else if (op == "sub") r = x - y;
        else if (op == "mul") r = x * y;
        else fail("BadArgument", "unknown operation '" + op + "'");
    }
    return {{"result", to_json(r)}};
}

json cmd_witt_smap(Job& J) {
    const int len = J.integer("n", J.cfg.prec.witt_len);
    if (len < 1 || len > J.n()) fail("BadConfig", "Witt length must lie in 1..pi_prec");
    if (J.domain(WittDomain::integers) == WittDomain::series) {
        LaurentSeries b = series_from_json(*J.R, J.arg("b"), len, J.lo(), J.hi());
        return {{"alpha", to_json(s_map(J.context(), b, len))}};
    }
    return {{"alpha", to_json(s_map(J.elem("b", len), len))}};
}

json cmd_witt_wmap(Job& J) {
    WittVec x = J.witt("x", J.domain(WittDomain::residue_field));
    LaurentSeries w = w_map(x);
    return {{"w", is_scalar(x.domain) ? to_json(w.coeff(0)) : to_json(w)}};
}

json cmd_witt_omega(Job& J) {
    OmegaParts p = omega_decompose(J.witt("x", WittDomain::residue_series));
    return {{"constant", to_json(p.constant)}, {"plus", to_json(p.plus)}, {"minus", to_json(p.minus)}};
}

json cmd_sw_brace(Job& J) {
    WittVec f = J.witt("f", WittDomain::series);
    PairingContext P(J.context(), f.length());
    return {{"brace", to_json(P.brace(f, J.series("unit")))}};
}

json cmd_sw_pair(Job& J) {
    WittVec x = J.witt("x", WittDomain::residue_series);
    PairingContext P(J.context(), x.length());
    LaurentSeries a = lift_plain(J.residue_series("a"), 1);
    return {{"pairing", to_json(P.residue_pair(x, a))}};
}

struct CommandDef {
    const char* name;
    const char* help;
    Handler run;
    std::vector<const char*> opts;
    std::vector<const char*> flags;
};

const std::vector<CommandDef>& commands() {
    static const std::vector<CommandDef> defs = {
        {"lt-build", "formal group law, g_LT and log_LT to degree z_high", cmd_lt_build, {}, {}},
        {"lt-mult", "[a](Z) modulo Z^z_high", cmd_lt_mult, {"a"}, {}},
        {"lt-log", "log_LT, and exp_LT to degree r_max with --exp", cmd_lt_log, {}, {"exp"}},
        {"coleman-psi", "psi_L and psi_Col of f", cmd_coleman_psi, {"f"}, {"phi_first"}},
        {"coleman-norm", "Coleman norm of f", cmd_coleman_norm, {"f"}, {}},
        {"coleman-lift", "norm-fixed lift of the residue unit u", cmd_coleman_lift, {"u"}, {}},
        {"coleman-delta", "g_LT^-1 f'/f", cmd_coleman_delta, {"f"}, {}},
        {"coates-wiles", "Coates-Wiles values of g for r = 1..r", cmd_coates_wiles, {"g", "r"}, {}},
        {"nabla", "nabla(g, a)", cmd_nabla, {"g", "a"}, {}},
        {"residue", "residue of f dZ, or of dlog f", cmd_residue, {"f"}, {"dlog"}},
        {"pairing-bracket", "pi^-level Res(f w) mod o_L", cmd_pairing_bracket, {"f", "w", "level"}, {}},
        {"witt-ghost", "ghost components", cmd_witt_ghost, {"components", "domain"}, {}},
        {"witt-arith", "Witt sum, difference, product or negative", cmd_witt_arith, {"x", "y", "op", "domain"}, {}},
        {"witt-smap", "alpha-bar_n of b", cmd_witt_smap, {"b", "n", "domain"}, {}},
        {"witt-wmap", "w_(n-1) of x", cmd_witt_wmap, {"x", "domain"}, {}},
        {"witt-omega", "constant, plus and minus parts of x", cmd_witt_omega, {"x"}, {}},
        {"sw-brace", "{f, unit}", cmd_sw_brace, {"f", "unit"}, {}},
        {"sw-pair", "residue pairing (x, a)", cmd_sw_pair, {"x", "a"}, {}},
    };
    return defs;
}

json error_doc(const std::string& code, const std::string& detail) { return {{"error", code}, {"detail", detail}}; }

std::string render(const json& doc) { return doc.dump(2) + "\n"; }

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("BadConfig", "cannot read " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        fail("BadConfig", path + ": " + e.what());
    }
}

// a flag value: JSON when it parses, the raw text otherwise
json flag_value(const std::string& s) {
    json v = json::parse(s, nullptr, false);
    return v.is_discarded() ? json(s) : v;
}

json selftest_doc(const std::vector<int>& only, int& status) {
    AcceptanceOptions opt;
    opt.root = default_root();
    opt.only = only;
    auto results = run_acceptance(opt);
    json crit = json::array();
    bool all = true;
    for (const auto& r : results) {
        all = all && r.pass;
        crit.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"checks", r.checks}, {"failures", r.failures}, {"notes", r.notes}});
    }
    status = all ? 0 : 1;
    return {{"command", "selftest"}, {"pass", all}, {"criteria", crit}};
}

}  // namespace

JobConfig merge_config(JobConfig base, const json& j) {
    if (!j.is_object()) fail("BadConfig", "a config is a JSON object");
    if (j.contains("ring")) base.ring = ring_spec_from_json(j["ring"]);
    if (j.contains("frobenius")) base.frobenius = j["frobenius"];
    if (j.contains("precision")) {
        const json& p = j["precision"];
        if (!p.is_object()) fail("BadConfig", "precision must be an object");
        if (p.contains("pi_prec")) base.prec.pi_prec = int_field(p, "pi_prec");
        if (p.contains("z_low")) base.prec.z_low = int_field(p, "z_low");
        if (p.contains("z_high")) base.prec.z_high = int_field(p, "z_high");
        if (p.contains("witt_len")) base.prec.witt_len = int_field(p, "witt_len");
        if (p.contains("r_max")) base.prec.r_max = int_field(p, "r_max");
    }
    if (j.contains("args")) {
        if (!j["args"].is_object()) fail("BadConfig", "args must be an object");
        for (const auto& [k, v] : j["args"].items()) base.args[k] = v;
    }
    return base;
}

json to_json(const JobConfig& c) {
    return {{"ring", to_json(c.ring)},
            {"frobenius", c.frobenius},
            {"precision",
             {{"pi_prec", c.prec.pi_prec}, {"z_low", c.prec.z_low}, {"z_high", c.prec.z_high}, {"witt_len", c.prec.witt_len}, {"r_max", c.prec.r_max}}},
            {"args", c.args}};
}

void validate(const JobConfig& c) {
    const PrecisionBlock& p = c.prec;
    if (p.pi_prec < 1 || p.pi_prec > c.ring.pi_prec_max)
        fail("BadConfig", "pi_prec must lie in 1.." + std::to_string(c.ring.pi_prec_max));
    if (p.witt_len < 1 || p.witt_len > p.pi_prec) fail("BadConfig", "witt_len must lie in 1..pi_prec");
    if (p.z_low >= p.z_high) fail("BadConfig", "empty Z-window");
    if (p.r_max < 1) fail("BadConfig", "r_max must be positive");
}

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& d : commands()) v.push_back(d.name);
        v.push_back("selftest");
        return v;
    }();
    return names;
}

json run_command(const std::string& command, const JobConfig& cfg) {
    validate(cfg);
    for (const auto& d : commands()) {
        if (command != d.name) continue;
        Job J(cfg);
        return {{"command", command}, {"result", d.run(J)}};
    }
    fail("BadArgument", "unknown command '" + command + "'");
}

int run_cli(const std::vector<std::string>& args, std::string& out) {
    CLI::App app{"Lubin-Tate, Coleman and Witt vector computations with JSON I/O", "ltlab"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path, zwindow, out_path;
    int precision = 0;
    app.add_option("--config", config_path, "JSON job config")->envname("LTLAB_CONFIG");
    app.add_option("--precision", precision, "pi-adic precision (pi_prec)");
    app.add_option("--zwindow", zwindow, "Z-window LOW:HIGH");
    app.add_option("--out", out_path, "write the document to a file");

    std::map<std::string, std::string> values;
    std::map<std::string, bool> flags;
    std::vector<std::pair<CLI::App*, std::string>> subs;
    for (const auto& d : commands()) {
        CLI::App* s = app.add_subcommand(d.name, d.help);
        for (const char* o : d.opts) s->add_option(std::string("--") + o, values[std::string(d.name) + ":" + o], "JSON value");
        for (const char* f : d.flags) s->add_flag(std::string("--") + f, flags[std::string(d.name) + ":" + f]);
        subs.emplace_back(s, d.name);
    }
    std::vector<int> only;
    app.add_subcommand("selftest", "run the acceptance criteria")->add_option("--only", only, "criterion numbers to run");

    std::vector<std::string> argv(args.rbegin(), args.rend());
    try {
        app.parse(argv);
    } catch (const CLI::CallForHelp&) {
        out = app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        out = render(error_doc("BadArgument", e.what()));
        return 2;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    json doc;
    int status = 0;
    try {
        if (command == "selftest") {
            doc = selftest_doc(only, status);
        } else {
            JobConfig cfg;
            if (!config_path.empty()) cfg = merge_config(cfg, read_json_file(config_path));
            if (precision) cfg.prec.pi_prec = precision;
            if (!zwindow.empty()) {
                auto colon = zwindow.find(':');
                if (colon == std::string::npos) fail("BadArgument", "--zwindow takes LOW:HIGH");
                try {
                    cfg.prec.z_low = std::stoi(zwindow.substr(0, colon));
                    cfg.prec.z_high = std::stoi(zwindow.substr(colon + 1));
                } catch (const std::exception&) {
                    fail("BadArgument", "--zwindow takes LOW:HIGH");
                }
            }
            for (const auto& [key, v] : values) {
                auto colon = key.find(':');
                if (key.substr(0, colon) == command && app.get_subcommand(command)->count("--" + key.substr(colon + 1)))
                    cfg.args[key.substr(colon + 1)] = flag_value(v);
            }
            for (const auto& [key, on] : flags) {
                auto colon = key.find(':');
                if (key.substr(0, colon) == command && on) cfg.args[key.substr(colon + 1)] = true;
            }
            doc = run_command(command, cfg);
        }
    } catch (const Error& e) {
        out = render(error_doc(e.code(), e.what()));
        return 1;
    } catch (const json::exception& e) {
        out = render(error_doc("BadInput", e.what()));
        return 1;
    } catch (const std::exception& e) {
        out = render(error_doc("InternalError", e.what()));
        return 1;
    }

    std::string text = render(doc);
    if (out_path.empty()) {
        out = text;
    } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) {
            out = render(error_doc("BadArgument", "cannot write " + out_path));
            return 1;
        }
        f << text;
        out.clear();
    }
    return status;
}

}  // namespace ltlab
