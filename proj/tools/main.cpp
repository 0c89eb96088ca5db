#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <iostream>

#include "jacsums/bessel.hpp"
#include "jacsums/hsums.hpp"
#include "jacsums/iwaniec.hpp"
#include "jacsums/jacobiforms.hpp"
#include "jacsums/modarith.hpp"
#include "jacsums/parallel.hpp"
#include "jacsums/petersson.hpp"
#include "jacsums/rationals.hpp"
#include "jacsums/verify.hpp"

using json = nlohmann::json;
using namespace jacsums;

namespace {

json complex_json(const cx& v) { return json{{"re", v.real()}, {"im", v.imag()}}; }

struct Emitter {
    bool timing = false;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    int emit(const std::string& command, const json& params, json report, int exit_code) {
        report["command"] = command;
        report["params"] = params;
        if (timing) {
            const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                std::chrono::steady_clock::now() - start)
                                .count();
            report["elapsed_ms"] = ms;
        }
        std::cout << report.dump(2) << "\n";
        return exit_code;
    }
};

int cmd_hsum(Emitter& em, int64_t m, int64_t n, int64_t r, int64_t c, const std::string& sign,
             int64_t brute_limit) {
    const IndexData idx = IndexData::make(m, n, r);
    const Sign s = sign == "-" ? Sign::minus : Sign::plus;
    const HSumRequest req{idx, c, s};
    const HFastResult fast = h_fast(req);
    json rep;
    rep["result"] = complex_json(fast.sum.value);
    rep["err_bound"] = fast.sum.err;
    rep["brute_fallback"] = fast.brute_fallback;
    bool pass = true;
    if (c <= brute_limit) {
        const UnitRootSum brute = h_brute(req);
        const double diff = std::abs(brute.value - fast.sum.value);
        pass = diff <= brute.err + fast.sum.err + 1e-9;
        rep["brute_agreement"] = pass;
        rep["brute_deviation"] = diff;
    }
    rep["pass"] = pass;
    const json params{{"m", m}, {"n", n}, {"r", r}, {"c", c}, {"sign", sign}, {"D", idx.disc}};
    return em.emit("hsum", params, rep, pass ? 0 : 1);
}

int cmd_gauss(Emitter& em, int64_t a, int64_t c) {
    const UnitRootSum g = gauss_sum(a, c);
    const cx closed = gauss_closed(a, c);
    const bool pass = std::abs(g.value - closed) <= g.err + 1e-9;
    json rep;
    rep["result"] = complex_json(g.value);
    rep["closed_form"] = complex_json(closed);
    rep["err_bound"] = g.err;
    rep["pass"] = pass;
    return em.emit("gauss", json{{"a", a}, {"c", c}}, rep, pass ? 0 : 1);
}

int cmd_salie(Emitter& em, int64_t a, int64_t b, int64_t c) {
    const UnitRootSum s = salie_sum(a, b, c);
    json rep;
    rep["result"] = complex_json(s.value);
    rep["err_bound"] = s.err;
    bool pass = true;
    if (gcd64(mod_reduce(a, c) * mod_reduce(b, c) % c, c) == 1 || c == 1) {
        const UnitRootSum closed = salie_closed(a, b, c);
        pass = std::abs(s.value - closed.value) <= s.err + closed.err + 1e-9;
        rep["closed_form"] = complex_json(closed.value);
        rep["closed_agreement"] = pass;
    }
    rep["pass"] = pass;
    return em.emit("salie", json{{"a", a}, {"b", b}, {"c", c}}, rep, pass ? 0 : 1);
}

int cmd_petersson(Emitter& em, int k, int64_t m, int64_t n, int64_t r, int64_t level,
                  int64_t c_max) {
    const IndexData idx = IndexData::make(m, n, r);
    const TruncatedSide side = geometric_side(PeterssonJob{k, idx, level, c_max});
    json rep;
    rep["result"] = complex_json(side.value);
    rep["err_bound"] = side.err;
    rep["tail"] = side.tail;
    if (side.empty_sum) rep["warning"] = "empty sum: c_max < level";
    const json params{{"k", k}, {"m", m}, {"n", n}, {"r", r},
                      {"level", level}, {"cmax", c_max}, {"D", idx.disc}};
    return em.emit("petersson", params, rep, 0);
}

std::vector<std::pair<int64_t, int64_t>> default_samples() {
    return {{1, 1}, {1, 0}, {2, 1}, {2, 0}, {3, 1}};
}

int cmd_zero_dim(Emitter& em, int k, int64_t c_max, double tol, const std::string& dims) {
    const auto rep0 = zero_dim_check(k, default_samples(), c_max, tol,
                                     dims.empty() ? default_dimension_file() : dims);
    json rows = json::array();
    for (const auto& s : rep0.samples) {
        rows.push_back(json{{"n", s.index.n},
                            {"r", s.index.r},
                            {"D", s.index.disc},
                            {"abs_value", s.value_abs},
                            {"tail", s.tail},
                            {"margin", s.margin},
                            {"pass", s.pass}});
    }
    json rep;
    rep["result"] = rows;
    rep["pass"] = rep0.pass;
    const json params{{"k", k}, {"cmax", c_max}, {"tolerance", tol}};
    return em.emit("zero-dim", params, rep, rep0.pass ? 0 : 1);
}

int cmd_ratio(Emitter& em, int k, int64_t c_max, const std::string& dims) {
    using Pair = std::pair<int64_t, int64_t>;
    const std::vector<std::pair<Pair, Pair>> pairs = {
        {{1, 1}, {1, 0}}, {{2, 1}, {1, 0}}, {{2, 0}, {1, 1}},
        {{3, 1}, {1, 0}}, {{1, 1}, {1, -1}}};
    const auto rep0 = ratio_check(k, pairs, c_max, dims.empty() ? default_dimension_file() : dims);
    json rows = json::array();
    for (const auto& p : rep0.pairs) {
        json row{{"n1", p.first.n},   {"r1", p.first.r},  {"n2", p.second.n},
                 {"r2", p.second.r},  {"lhs", p.lhs},     {"rhs", p.rhs},
                 {"rel_tol", p.rel_tol}, {"pass", p.pass}};
        if (p.skipped) row["skipped"] = p.note;
        rows.push_back(row);
    }
    json rep;
    rep["result"] = rows;
    rep["pass"] = rep0.pass;
    return em.emit("ratio", json{{"k", k}, {"cmax", c_max}}, rep, rep0.pass ? 0 : 1);
}

int cmd_exponents(Emitter& em, const std::string& sigma_str) {
    const mpq_class sigma = parse_rational(sigma_str);
    const EndgameResult res = endgame_exponent(sigma);
    json rep;
    rep["result"] = json{
        {"delta", rational_str(res.delta)},
        {"exponent", rational_str(res.exponent)},
        {"exponent_low_case", rational_str(res.exponent_low)},
        {"exponent_high_case", rational_str(res.exponent_high)},
        {"regime", res.regime == Regime::low ? "LOW" : "HIGH"},
        {"c_exp", rational_str(res.params.c_exp)},
        {"k_exp", rational_str(res.params.k_exp)},
        {"t_exp", rational_str(res.params.t_exp)},
        {"p_exp", rational_str(res.params.p_exp)},
        {"p_exp_in_D", rational_str(res.p_exp_d)},
        {"t_exp_in_D", rational_str(res.t_exp_d)},
        {"p_ge_t", res.p_ge_t},
        {"theorem_exponent", rational_str(theorem_squared_exponent(sigma))},
    };
    rep["pass"] = theorem_exponent_check(sigma);
    return em.emit("exponents", json{{"sigma", rational_str(sigma)}}, rep,
                   theorem_exponent_check(sigma) ? 0 : 1);
}

int cmd_decay(Emitter& em, int64_t m, int64_t n, int64_t r, int64_t t, int64_t s, int64_t P,
              double C, double K, int eps1, int eps2, const std::string& output) {
    const IndexData idx = IndexData::make(m, n, r);
    const auto rows = decay_report(idx, t, s, P, C, K, eps1, eps2);
    if (output == "json") {
        json arr = json::array();
        for (const auto& row : rows)
            arr.push_back(json{{"a", row.a},
                               {"t", row.t},
                               {"B", row.B},
                               {"V_a_abs", row.v_abs},
                               {"term_count", row.terms}});
        json rep;
        rep["result"] = arr;
        return em.emit("decay", json{{"m", m}, {"n", n}, {"r", r}, {"t", t},
                                     {"s", s}, {"P", P}, {"C", C}, {"K", K}}, rep, 0);
    }
    decay_csv(rows, std::cout);
    return 0;
}

int cmd_table(Emitter& em, int k, int cutoff, const std::string& output) {
    const FourierTable& tab = phi_cusp(k, cutoff);
    if (output == "json") {
        json arr = json::array();
        for (const auto& [key, val] : tab.table)
            arr.push_back(json{{"n", key.first}, {"r", key.second}, {"c", val}});
        json rep;
        rep["result"] = arr;
        return em.emit("table", json{{"k", k}, {"cutoff", cutoff}}, rep, 0);
    }
    export_csv(tab, std::cout);
    return 0;
}

int cmd_verify(Emitter& em, const std::string& suite) {
    std::vector<verify::SuiteResult> results;
    if (suite == "all") {
        results = verify::run_all();
    } else {
        results.push_back(verify::run_suite(suite));
    }
    bool all_pass = true;
    json arr = json::array();
    for (const auto& r : results) {
        json facts;
        for (const auto& f : r.facts) facts[f.key] = f.value;
        arr.push_back(json{{"suite", r.suite}, {"pass", r.pass}, {"facts", facts}});
        all_pass = all_pass && r.pass;
    }
    json rep;
    rep["result"] = arr;
    rep["pass"] = all_pass;
    return em.emit("verify", json{{"suite", suite}}, rep, all_pass ? 0 : 1);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Kloosterman-type sums for Jacobi forms, Petersson-formula "
                 "verification, and exact exponent bookkeeping"};
    app.require_subcommand(1);

    int threads = 0;
    bool timing = false;
    app.add_option("--threads", threads, "cap worker threads (default: all cores)");
    app.add_flag("--timing", timing, "include elapsed_ms in reports");

    Emitter em;

    // hsum
    auto* hsum = app.add_subcommand("hsum", "evaluate H_{m,c}(n,r)");
    int64_t m = 1, n = 1, r = 1, c = 1, brute_limit = 2000;
    std::string sign = "+";
    hsum->add_option("--m", m)->required();
    hsum->add_option("--n", n)->required();
    hsum->add_option("--r", r)->required();
    hsum->add_option("--c", c)->required();
    hsum->add_option("--sign", sign)->check(CLI::IsMember({"+", "-"}));
    hsum->add_option("--brute-limit", brute_limit, "cross-check against brute force up to this c");

    // gauss
    auto* gauss = app.add_subcommand("gauss", "quadratic Gauss sum and closed form");
    int64_t ga = 1, gc = 1;
    gauss->add_option("--a", ga)->required();
    gauss->add_option("--c", gc)->required();

    // salie
    auto* salie = app.add_subcommand("salie", "Salie sum and closed form");
    int64_t sa = 1, sb = 0, sc = 1;
    salie->add_option("--a", sa)->required();
    salie->add_option("--b", sb)->required();
    salie->add_option("--c", sc)->required();

    // petersson
    auto* pet = app.add_subcommand("petersson", "truncated geometric side with rigorous tail");
    int pk = 4;
    int64_t pm = 1, pn = 1, pr = 1, plevel = 1, pcmax = 10000;
    pet->add_option("--k", pk)->required();
    pet->add_option("--m", pm)->required();
    pet->add_option("--n", pn)->required();
    pet->add_option("--r", pr)->required();
    pet->add_option("--level", plevel);
    pet->add_option("--cmax", pcmax);

    // zero-dim
    auto* zd = app.add_subcommand("zero-dim", "vanishing check for zero-dimensional spaces");
    int zk = 4;
    int64_t zcmax = 100000;
    double ztol = 1e-3;
    std::string zdims;
    zd->add_option("--k", zk)->required();
    zd->add_option("--cmax", zcmax);
    zd->add_option("--tol", ztol);
    zd->add_option("--dims", zdims, "dimension facts file");

    // ratio
    auto* ratio = app.add_subcommand("ratio", "coefficient-ratio check for 1-dim spaces");
    int rk = 10;
    int64_t rcmax = 3000;
    std::string rdims;
    ratio->add_option("--k", rk)->required();
    ratio->add_option("--cmax", rcmax);
    ratio->add_option("--dims", rdims, "dimension facts file");

    // exponents
    auto* expo = app.add_subcommand("exponents", "exact-rational endgame calculator");
    std::string sigma = "0";
    expo->add_option("--sigma", sigma, "rational p/q in [0, 7/25]")->required();

    // decay
    auto* decay = app.add_subcommand("decay", "bilinear-sum decay measurements (CSV)");
    int64_t dm = 1, dn = 1, dr = 1, dt = 1, ds = 1, dP = 11;
    double dC = 1.0, dK = 100.0;
    int deps1 = 1, deps2 = 1;
    std::string doutput = "csv";
    decay->add_option("--m", dm)->required();
    decay->add_option("--n", dn)->required();
    decay->add_option("--r", dr)->required();
    decay->add_option("--t", dt)->required();
    decay->add_option("--s", ds)->required();
    decay->add_option("--P", dP)->required();
    decay->add_option("--C", dC)->required();
    decay->add_option("--K", dK)->required();
    decay->add_option("--eps1", deps1)->check(CLI::IsMember({1, -1}));
    decay->add_option("--eps2", deps2)->check(CLI::IsMember({1, -1}));
    decay->add_option("--output", doutput)->check(CLI::IsMember({"csv", "json"}));

    // table
    auto* table = app.add_subcommand("table", "Fourier coefficient table of phi_{k,1}");
    int tk = 10, tcut = 60;
    std::string toutput = "csv";
    table->add_option("--k", tk)->check(CLI::IsMember({10, 12}));
    table->add_option("--cutoff", tcut);
    table->add_option("--output", toutput)->check(CLI::IsMember({"csv", "json"}));

    // verify
    auto* ver = app.add_subcommand("verify", "run verification suites");
    std::string suite = "all";
    {
        auto names = verify::suite_names();
        names.push_back("all");
        ver->add_option("--suite", suite)->check(CLI::IsMember(names));
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return 2;
    }

    set_max_threads(threads);
    em.timing = timing;

    try {
        if (*hsum) return cmd_hsum(em, m, n, r, c, sign, brute_limit);
        if (*gauss) return cmd_gauss(em, ga, gc);
        if (*salie) return cmd_salie(em, sa, sb, sc);
        if (*pet) return cmd_petersson(em, pk, pm, pn, pr, plevel, pcmax);
        if (*zd) return cmd_zero_dim(em, zk, zcmax, ztol, zdims);
        if (*ratio) return cmd_ratio(em, rk, rcmax, rdims);
        if (*expo) return cmd_exponents(em, sigma);
        if (*decay) return cmd_decay(em, dm, dn, dr, dt, ds, dP, dC, dK, deps1, deps2, doutput);
        if (*table) return cmd_table(em, tk, tcut, toutput);
        if (*ver) return cmd_verify(em, suite);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
