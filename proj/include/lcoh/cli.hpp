#pragma once

#include <CLI11.hpp>
#include <iostream>
#include <sstream>

#include "io.hpp"

namespace lcoh::cli {

using io::json;
using io::Report;
using io::Table;

struct SessionConfig {
    int prime = 2;
    std::string window;  // "lo:hi", degrees of the output table
    int horizon_N = 20;
    int horizon_K = 6;
    int horizon_J = 8;
    int W = 3;
    int threads = 1;
    int top = 8;
    std::string format = "text";
};

inline std::pair<int, int> parse_window(const std::string& w, int lo, int hi) {
    if (w.empty()) return {lo, hi};
    auto colon = w.find(':');
    try {
        if (colon == std::string::npos) throw std::invalid_argument("");
        int a = std::stoi(w.substr(0, colon)), b = std::stoi(w.substr(colon + 1));
        if (b < a) throw std::invalid_argument("");
        return {a, b};
    } catch (const std::exception&) {
        throw io::InputError("--window", "expected lo:hi with lo <= hi, got '" + w + "'");
    }
}

inline void check_session(const SessionConfig& c) {
    if (c.horizon_N <= 0) throw io::InputError("--horizon-N", "must be positive");
    if (c.horizon_K <= 0) throw io::InputError("--horizon-K", "must be positive");
    if (c.horizon_J <= 0) throw io::InputError("--horizon-J", "must be positive");
    if (c.W <= 0) throw io::InputError("--W", "must be positive");
    if (c.threads <= 0) throw io::InputError("--threads", "must be positive");
    if (c.top < 1 || c.top > 40) throw io::InputError("--top", "must lie in [1, 40]");
    try {
        lcoh::detail::check_prime(c.prime);
    } catch (const std::exception& e) {
        throw io::InputError("--prime", e.what());
    }
}

inline NamedModule load_module(const std::string& builtin, const std::string& input, const SessionConfig& c) {
    NamedModule nm;
    if (!builtin.empty() && !input.empty()) throw io::InputError("--builtin", "give either --builtin or --input");
    if (!builtin.empty()) {
        try {
            nm = builtin_module(builtin, c.top);
        } catch (const std::invalid_argument& e) {
            std::string names;
            for (const auto& n : builtin_names()) names += " " + n;
            throw io::InputError("--builtin", std::string(e.what()) + "; available:" + names);
        }
        if (nm.module.name.empty()) nm.module.name = builtin;
    } else if (!input.empty()) {
        nm = io::parse_module(io::load_file(input));
    } else {
        throw io::InputError("--builtin", "no module given (use --builtin or --input)");
    }
    if (nm.alg->prime() != c.prime)
        throw io::InputError("--prime", "module is over F_" + std::to_string(nm.alg->prime()) + " but --prime is " + std::to_string(c.prime));
    return nm;
}

// ---- checks against stored expectations ----

struct Checks {
    Table table{"checks", {"check", "expected", "observed", "status"}, {}};
    json list = json::array();
    bool ok = true;
    void add(const std::string& what, const std::string& expected, const std::string& observed) {
        bool pass = expected == observed;
        ok = ok && pass;
        table.rows.push_back({what, expected, observed, pass ? "ok" : "MISMATCH"});
        list.push_back({{"check", what}, {"expected", expected}, {"observed", observed}, {"pass", pass}});
    }
    void add(const std::string& what, bool expected, bool observed) { add(what, std::string(expected ? "true" : "false"), std::string(observed ? "true" : "false")); }
    void add(const std::string& what, int expected, int observed) { add(what, std::to_string(expected), std::to_string(observed)); }
    void finish(Report& r) {
        r.doc["checks"] = list;
        r.doc["pass"] = ok;
        r.tables.push_back(table);
    }
};

inline Vec a1_elem(const GradedAlgebra& A, const std::vector<int>& word) {
    int d = 0;
    for (int k : word) d += k;
    return milnor_vec(A, sq_word(word), d);
}

inline Report example_a1_remark() {
    auto a = build_A_n(1);
    GradedModule m = regular_module(a);
    IdealSet S = a1_sq1_set(a);
    auto h = h0(S, m, 8);
    auto H = H0(S, m, 8);
    Report r;
    r.doc["example"] = "a1-remark";
    Checks c;
    c.add("Sq1 in h0_S(A(1))", true, h.at(1).contains(a1_elem(*a, {1})));
    c.add("Sq2Sq1 in h0_S(A(1))", false, h.at(3).contains(a1_elem(*a, {2, 1})));
    c.add("Sq2Sq1 in H0_S(A(1))", true, H.at(3).contains(a1_elem(*a, {2, 1})));
    Degreewise hs(h.space.begin(), h.space.end());
    c.add("h0_S(A(1)) is a submodule", false, is_action_closed(m, hs));
    c.finish(r);
    return r;
}

inline Report example_a1_section3() {
    auto a = build_A_n(1);
    IdealSet S = a1_sq1_set(a);
    NamedModule ex = builtin_module("a1-section3-example");
    NamedModule sub = builtin_module("a1-section3-sub");
    // one algebra object for everything
    GradedModule self = regular_module(a);
    GradedModule M = submodule_generated(self, {{1, a1_elem(*a, {1})}});
    GradedModule Mp = submodule_generated(self, {{3, a1_elem(*a, {2, 1})}});
    auto h = h0(S, M, 8);
    auto H = H0(S, M, 8);
    Report r;
    r.doc["example"] = "a1-section3";
    Checks c;
    std::string degs;
    int hd = 0, Hd = 0;
    for (int d = M.lo(); d <= M.hi(); ++d) {
        for (int i = 0; i < M.dim(d); ++i) degs += (degs.empty() ? "" : ",") + std::to_string(d);
        hd += h.dim(d);
        Hd += H.dim(d);
    }
    c.add("dim <Sq1>", 4, M.total_dim());
    c.add("basis degrees of <Sq1>", std::string("1,3,4,6"), degs);
    c.add("dim h0_S(<Sq1>)", 3, hd);
    std::string hdegs;
    for (int d = M.lo(); d <= M.hi(); ++d)
        for (int i = 0; i < h.dim(d); ++i) hdegs += (hdegs.empty() ? "" : ",") + std::to_string(d);
    c.add("degrees of h0_S(<Sq1>)", std::string("1,4,6"), hdegs);
    c.add("H0_S(<Sq1>) = <Sq1>", 4, Hd);
    auto hp = h0(S, Mp, 8);
    auto Hp = H0(S, Mp, 8);
    int hpd = 0, Hpd = 0;
    for (int d = Mp.lo(); d <= Mp.hi(); ++d) {
        hpd += hp.dim(d);
        Hpd += Hp.dim(d);
    }
    c.add("h0 = H0 on <Sq2 x>", true, hpd == Hpd);
    c.add("H0 differs from <Sq2 x>", true, Hpd != Mp.total_dim());
    c.add("builtins agree", true, ex.module.total_dim() == M.total_dim() && sub.module.total_dim() == Mp.total_dim());
    c.finish(r);
    return r;
}

inline Report example_margolis_a1() {
    auto a = build_A_n(1);
    auto tab = ext(trivial_module(a), regular_module(a), 4, 16, -2, 10);
    Report r = io::ext_report("k", "A(1)", tab);
    r.doc["example"] = "margolis-a1";
    Checks c;
    for (int s = 1; s <= 4; ++s) {
        int total = 0;
        bool cert = true;
        for (int t = -2; t <= 10; ++t) {
            total += tab.at(s, t);
            cert = cert && tab.certified[s][t + 2];
        }
        c.add("dim Ext^" + std::to_string(s) + "(k, A(1)), t in [-2,10], all certified", "0 certified", std::to_string(total) + (cert ? " certified" : " uncertified"));
    }
    std::string hom;
    for (int t = -2; t <= 10; ++t)
        if (tab.at(0, t)) hom += (hom.empty() ? "" : ",") + std::to_string(t) + ":" + std::to_string(tab.at(0, t));
    c.add("Hom(k, A(1)) by degree", std::string("6:1"), hom);
    c.finish(r);
    return r;
}

inline Report example_ex1(const SessionConfig& cfg) {
    int N = cfg.horizon_N;
    FamilySetup s = example1(N, 2 * N + 4, N + 3, 4);
    Report r;
    r.doc["example"] = "ex1";
    Checks c;
    auto p1 = derived_product(s.family, s.chain, 1, s.t, 0, cfg.threads, cfg.W);
    Report pr = io::product_report(p1, s);
    r.doc["product"] = pr.doc;
    r.tables = pr.tables;
    bool orders = true;
    for (const auto& comp : p1.components) orders = orders && comp.survival.order == comp.index + 1 && !comp.survival.reached_horizon;
    c.add("n=1 verdict", std::string("nonzero"), std::string(to_string(p1.verdict.kind)));
    c.add("n=1 certificate is horizon-bounded", true, p1.verdict.horizon_bounded);
    c.add("survival order of member i is i+1, i=0.." + std::to_string(N), true, orders);
    for (int n : {2, 3}) {
        auto pn = derived_product(s.family, s.chain, n, s.t, 0, cfg.threads, cfg.W);
        c.add("n=" + std::to_string(n) + " verdict", std::string("zero"), std::string(to_string(pn.verdict.kind)));
    }
    std::vector<Vec> ones(s.family.members.size(), Vec{1});
    auto loc = localization_oracle(s.family.members, s.alg->global(2, 0), 0, ones, 1, s.alg->top(), cfg.W);
    bool needed = true;
    for (std::size_t i = 0; i < loc.needed.size(); ++i) needed = needed && loc.needed[i] == int(i) + 1;
    c.add("localization: (1,1,...)/x needs x^(i+1) on member i", true, needed);
    c.add("localization: (1,1,...)/x lies outside the image", false, loc.in_image);
    r.doc["localization"] = {{"needed", loc.needed}, {"in_image", loc.in_image}, {"horizon_bounded", loc.horizon_bounded}};
    c.finish(r);
    r.notes = pr.notes;
    return r;
}

// largest degree of an algebra element moving y: the annihilation order of y
inline int annihilation_order(const GradedModule& big, int d, const Vec& y) {
    const auto& A = *big.algebra();
    int best = -1;
    for (int g = 0; g < A.size(); ++g) {
        int e = A.degree(g);
        if (d + e > big.hi()) continue;
        if (!is_zero_vec(big.act(g, d, y))) best = std::max(best, e);
    }
    return best;
}

inline Report example_ex2(const SessionConfig& cfg, int imax) {
    int top = std::max(cfg.top, (1 << imax) - 1);
    FamilySetup s = example2(imax, top, 2);
    Report r;
    r.doc["example"] = "ex2";
    auto p = derived_product(s.family, s.chain, 1, s.t, 0, cfg.threads, cfg.W);
    Report pr = io::product_report(p, s);
    r.doc["product"] = pr.doc;
    Checks c;
    Table growth{"survival orders of the xi_i classes", {"i", "xi_i degree", "survival order", "annihilation order"}, {}};
    int last = -1;
    bool increasing = true;
    for (std::size_t k = 0; k < p.components.size(); ++k) {
        int i = s.indices[k];
        int cc = (1 << i) - 2;
        GradedModule big = dual_module(s.alg, cc + 1);
        Milnor xi(i, 0);
        xi[i - 1] = 1;
        Vec y(big.dim(-(cc + 1)), 0);
        y[s.alg->local(milnor_index(*s.alg, xi))] = 1;
        int expect = annihilation_order(big, -(cc + 1), y);
        int got = p.components[k].survival.order;
        growth.rows.push_back({std::to_string(i), std::to_string(-(cc + 1)), std::to_string(got), std::to_string(expect)});
        c.add("survival order of xi_" + std::to_string(i), expect, got);
        increasing = increasing && got > last;
        last = got;
    }
    c.add("survival orders strictly increase", true, increasing);
    c.add("n=1 verdict", std::string("nonzero"), std::string(to_string(p.verdict.kind)));
    r.tables.push_back(growth);
    for (const auto& t : pr.tables) r.tables.push_back(t);
    c.finish(r);
    r.notes = pr.notes;
    return r;
}

// ---- the command line ----

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"lcoh: local cohomology, derived products and sequential limits of graded modules"};
    app.require_subcommand(1);
    app.fallthrough();
    SessionConfig cfg;
    app.add_option("--prime", cfg.prime, "ground field characteristic")->capture_default_str();
    app.add_option("--window", cfg.window, "internal degrees of the output, lo:hi");
    app.add_option("--horizon-N", cfg.horizon_N, "members of a generated family")->capture_default_str();
    app.add_option("--horizon-K", cfg.horizon_K, "modules of a generated tower")->capture_default_str();
    app.add_option("--horizon-J", cfg.horizon_J, "last stage j of the ideal chain")->capture_default_str();
    app.add_option("--W", cfg.W, "stabilization run length")->capture_default_str();
    app.add_option("--threads", cfg.threads, "worker threads for per-member work")->capture_default_str();
    app.add_option("--top", cfg.top, "truncation degree of the Steenrod builtins")->capture_default_str();
    app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "tsv", "text"}))->capture_default_str();

    std::string builtin, input, ideal_set = "grad", chain_kind = "grad", source, family_gen, family_file, tower_builtin, tower_file, example;
    int n = 1, max_s = 3;
    std::optional<int> t_opt;
    bool milnor = false;

    auto module_opts = [&](CLI::App* s) {
        s->add_option("--builtin", builtin, "builtin module");
        s->add_option("--input", input, "module description file (JSON)");
    };
    auto* describe = app.add_subcommand("describe", "dimensions, boundedness and axiom checks of a module");
    module_opts(describe);
    auto* sh0 = app.add_subcommand("h0", "S-torsion subgroup, per degree");
    auto* sH0 = app.add_subcommand("H0", "submodule generated by the S-torsion, per degree");
    for (auto* s : {sh0, sH0}) {
        module_opts(s);
        s->add_option("--ideal-set", ideal_set, "trivial, grad, dist, mit or a1-sq1")->capture_default_str();
    }
    auto* rational = app.add_subcommand("rational", "both rationality tests");
    module_opts(rational);
    auto* sext = app.add_subcommand("ext", "Ext^{s,t}(source, module) table");
    module_opts(sext);
    sext->add_option("--source", source, "builtin source module (default: the ground field)");
    sext->add_option("--max-s", max_s, "largest homological degree")->capture_default_str();
    auto* slc = app.add_subcommand("localcoh", "Ext^n(A/I_j, M) by stage j and degree t, with colimits");
    module_opts(slc);
    slc->add_option("--n", n, "cohomological degree")->capture_default_str();
    slc->add_option("--chain", chain_kind, "grad or mit")->check(CLI::IsMember({"grad", "mit"}))->capture_default_str();
    auto* sprod = app.add_subcommand("product", "derived functors of the product of a family");
    sprod->add_option("--generator", family_gen, "example1 or example2");
    sprod->add_option("--family", family_file, "family description file (JSON)");
    sprod->add_option("--n", n, "derived degree")->capture_default_str();
    sprod->add_option("--t", t_opt, "internal degree (default: the family's)");
    auto* sseq = app.add_subcommand("seqlim", "derived limit of a tower");
    sseq->add_option("--builtin", tower_builtin, "builtin tower");
    sseq->add_option("--tower", tower_file, "tower description file (JSON)");
    sseq->add_option("--n", n, "derived degree")->capture_default_str();
    sseq->add_flag("--milnor", milnor, "also check the Milnor sequence");
    auto* sex = app.add_subcommand("paper-example", "run a canned example against its stored outcome");
    sex->add_option("name", example, "ex1, ex2, a1-remark, a1-section3 or margolis-a1")
        ->required()
        ->check(CLI::IsMember({"ex1", "ex2", "a1-remark", "a1-section3", "margolis-a1"}));
    auto* sbasis = app.add_subcommand("steenrod-basis", "Milnor basis by degree (TSV-friendly)");
    int profile = -1;
    sbasis->add_option("--profile", profile, "restrict to A(n)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "input error: " << e.what() << "\n";
        return 2;
    }

    try {
        check_session(cfg);
        io::Format fmt = io::parse_format(cfg.format);
        Report rep;
        bool failed = false;
        std::string refusal;

        if (describe->parsed()) {
            rep = io::describe_report(load_module(builtin, input, cfg));
        } else if (sh0->parsed() || sH0->parsed()) {
            NamedModule nm = load_module(builtin, input, cfg);
            IdealSet S;
            try {
                S = named_ideal_set(ideal_set, nm.alg);
            } catch (const std::invalid_argument& e) {
                throw io::InputError("--ideal-set", e.what());
            }
            bool big = sH0->parsed();
            TorsionResult t = big ? H0(S, nm.module, cfg.horizon_J) : h0(S, nm.module, cfg.horizon_J);
            rep = io::torsion_report(big ? "H0" : "h0", S, nm.module, t);
        } else if (rational->parsed()) {
            NamedModule nm = load_module(builtin, input, cfg);
            auto theta = std::make_shared<GradedModule>(dual_module(nm.alg, nm.alg->top()));
            bool mitchell = nm.alg->name() != "k[x]";
            rep = io::rationality_report(nm.module, is_rational(nm.module, theta, cfg.horizon_J, mitchell));
        } else if (sext->parsed()) {
            NamedModule nm = load_module(builtin, input, cfg);
            GradedModule src = trivial_module(nm.alg);
            if (!source.empty()) {
                NamedModule s = load_module(source, "", cfg);
                if (s.alg->name() != nm.alg->name()) throw io::InputError("--source", "source is over " + s.alg->name() + ", module over " + nm.alg->name());
                src = s.module;
                // rebuild over the module's algebra object
                GradedModule re(nm.alg, src.lo(), src.hi(), src.dims(), src.zero_above(), src.zero_below());
                for (int g = 0; g < nm.alg->size(); ++g)
                    for (int d = src.lo(); d + nm.alg->degree(g) <= src.hi(); ++d)
                        if (nm.alg->degree(g) > 0) re.set_action(g, d, src.action(g, d));
                re.name = src.name;
                src = re;
            }
            if (max_s < 0) throw io::InputError("--max-s", "must be nonnegative");
            const GradedModule& m = nm.module;
            int max_t = nm.alg->complete() ? src.hi() + (m.hi() - m.lo()) + 2 * (max_s + 2) : src.lo() + nm.alg->top();
            auto [lo, hi] = parse_window(cfg.window, m.lo() - max_t, m.hi() - src.lo());
            rep = io::ext_report(src.name, m.name, ext(src, m, max_s, max_t, lo, hi));
        } else if (slc->parsed()) {
            NamedModule nm = load_module(builtin, input, cfg);
            const GradedModule& m = nm.module;
            const auto& A = *nm.alg;
            if (n < 0) throw io::InputError("--n", "must be nonnegative");
            int J = cfg.horizon_J;
            if (!A.complete() && J > A.top() + 1) throw io::InputError("--horizon-J", "exceeds the truncation degree + 1");
            int max_t = A.complete() ? (m.hi() - m.lo()) + J + 2 * (n + 2) : A.top();
            auto [lo, hi] = parse_window(cfg.window, std::max(m.lo() - max_t, m.lo() - J - n), m.hi());
            ResolvedChain c;
            if (chain_kind == "grad") {
                c = resolve_grad_chain(nm.alg, J, n + 1, max_t);
            } else {
                c = resolve_ideal_set(mitchell_set(nm.alg), J, n + 1, max_t);
            }
            rep = io::localcoh_report(m.name, chain_kind, local_cohomology(c, m, n, lo, hi, cfg.W));
        } else if (sprod->parsed()) {
            if (family_gen.empty() == family_file.empty()) throw io::InputError("--generator", "give exactly one of --generator and --family");
            if (n < 0) throw io::InputError("--n", "must be nonnegative");
            io::FamilyOptions o;
            o.horizon_N = cfg.horizon_N;
            o.j_max = 0;
            json desc = family_file.empty() ? json{{"generator", family_gen}} : io::load_file(family_file);
            if (!family_file.empty() && !desc.contains("generator") && !desc.contains("chain")) o.j_max = cfg.horizon_J;
            FamilySetup s = io::parse_family(desc, n, o);
            int t = t_opt ? *t_opt : s.t;
            auto p = derived_product(s.family, s.chain, n, t, 0, cfg.threads, cfg.W);
            rep = io::product_report(p, s);
        } else if (sseq->parsed()) {
            if (tower_builtin.empty() == tower_file.empty()) throw io::InputError("--builtin", "give exactly one of --builtin and --tower");
            if (n < 0) throw io::InputError("--n", "must be nonnegative");
            Tower T;
            if (!tower_builtin.empty()) {
                try {
                    T = io::builtin_tower(tower_builtin);
                } catch (const std::invalid_argument& e) {
                    std::string names;
                    for (const auto& x : io::builtin_tower_names()) names += " " + x;
                    throw io::InputError("--builtin", std::string(e.what()) + "; available:" + names);
                }
            } else {
                T = io::parse_tower(io::load_file(tower_file));
            }
            const auto& alg = T.modules[0].algebra();
            if (alg->prime() != cfg.prime) throw io::InputError("--prime", "tower is over F_" + std::to_string(alg->prime()));
            int lo = T.modules[0].lo(), hi = T.modules[0].hi();
            for (const auto& M : T.modules) {
                lo = std::min(lo, M.lo());
                hi = std::max(hi, M.hi());
            }
            int J = alg->complete() ? cfg.horizon_J : std::min(cfg.horizon_J, alg->top());
            int max_t = alg->complete() ? (hi - lo) + J + 2 * (n + 2) : alg->top();
            auto [tlo, thi] = parse_window(cfg.window, lo - max_t, hi);
            auto sl = derived_sequential_limit(T, resolve_grad_chain(alg, J, n + 1, max_t), n, tlo, thi, cfg.W);
            std::optional<MooreComplex> mc;
            std::optional<MilnorCheck> mil;
            if (!sl.refused) {
                mc = moore_complex(T);
                if (milnor) mil = milnor_les_check(T, resolve_grad_chain(alg, J, n + 2, max_t), n, tlo, thi, cfg.W);
            }
            rep = io::seqlim_report(T, sl, mc ? &*mc : nullptr, mil ? &*mil : nullptr);
            if (sl.refused) {
                failed = true;
                refusal = sl.refusal;
            }
            if (mil && !mil->exact) {
                failed = true;
                refusal = "Milnor sequence check failed";
            }
        } else if (sex->parsed()) {
            if (example == "a1-remark") rep = example_a1_remark();
            else if (example == "a1-section3") rep = example_a1_section3();
            else if (example == "margolis-a1") rep = example_margolis_a1();
            else if (example == "ex1") rep = example_ex1(cfg);
            else rep = example_ex2(cfg, std::min(cfg.horizon_N, 4));
            if (!rep.doc["pass"].get<bool>()) {
                failed = true;
                refusal = "mismatch against the stored outcome of " + example;
            }
        } else if (sbasis->parsed()) {
            if (cfg.prime != 2) throw io::InputError("--prime", "the Steenrod algebra is implemented at p = 2");
            Table t{"Milnor basis", {"degree", "index", "element", "excess"}, {}};
            json rows = json::array();
            for (int d = 0; d <= cfg.top; ++d) {
                int k = 0;
                for (const auto& m : milnor_basis(d)) {
                    if (profile >= 0 && !in_profile(m, profile)) continue;
                    int excess = 0;
                    for (int x : m) excess += x;
                    t.rows.push_back({std::to_string(d), std::to_string(k), milnor_label(m), std::to_string(excess)});
                    rows.push_back({{"degree", d}, {"index", k}, {"element", milnor_label(m)}, {"excess", excess}});
                    ++k;
                }
            }
            rep.doc["basis"] = rows;
            rep.tables.push_back(t);
        }
        out << io::render(rep, fmt);
        if (failed) {
            err << "refused: " << refusal << "\n";
            return 1;
        }
        return 0;
    } catch (const io::InputError& e) {
        err << "input error: " << e.what() << "\n";
        return 2;
    } catch (const UnknownDegree& e) {
        err << "input error: " << e.what() << " (widen the window or raise the truncation)\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "input error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace lcoh::cli
