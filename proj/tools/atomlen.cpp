#include <atomlen/atomlen.hpp>
#include <atomlen/io.hpp>

#include <CLI11.hpp>

#include <iostream>

using namespace atomlen;

namespace {

enum Exit { ok = 0, failed = 1, invalid = 2 };

struct Shared {
    bool json = false;
    unsigned threads = default_threads();
};

void emit(const Shared& sh, const json& j, const std::string& text) {
    if (sh.json)
        std::cout << j.dump(2) << "\n";
    else
        std::cout << text;
}

json multi_json(const MultiPartition& mp) {
    json j = json::array();
    for (const auto& p : mp) j.push_back(p);
    return j;
}

// ---------------------------------------------------------------- entropy

struct EntropyArgs {
    Int n = 0;
    std::string window;
};

int run_entropy(const Shared& sh, const EntropyArgs& a) {
    AffinePermutation w = make_affine(a.n, parse_csv(a.window));
    Decomposition d = decompose(w);
    Int e = entropy(w), al = atomic_length_rho(w);
    std::vector<int> wbar = d.wbar.images;
    json j{{"n", a.n},       {"window", w.window()}, {"entropy", e}, {"atomic_length", al},
           {"x", d.x},       {"wbar", wbar}};
    emit(sh, j, std::to_string(e) + "\n");
    return e == al ? ok : failed;
}

// ---------------------------------------------------------------- scan

struct ScanArgs {
    std::string form;
    std::string type = "B1";
    Int ell = 0;
    std::string s;
    Int n = 0;
    Int max_k = 100;
    Int radius = 25;
    std::string normalization = "basepoint";
};

// whether a proved result rules out any gap in the scanned range
bool predicted_universal(const ScanArgs& a, const WeightSpec* w) {
    const Int n = a.n;
    if (a.form == "rho" || a.form == "Q-delta" || a.form == "q-free") return n >= 5;
    if (a.form == "go") return n >= 4;
    if (a.form == "deltaC") return 2 * n + 1 >= 5 && is_prime(2 * n + 1);
    if (a.form == "lattice") return n >= 4;
    if ((a.form == "Ps" || a.form == "trunc") && w) return w->ell == n && w->s == refined_base(n) && n >= 5;
    return false;
}

int run_scan_cmd(const Shared& sh, const ScanArgs& a) {
    ScanOptions opt{sh.threads};
    UniversalityReport r;
    std::optional<WeightSpec> w;
    if (a.form == "rho") {
        r = universality_scan_rho(a.n, a.max_k, a.radius, opt);
    } else if (a.form == "Q-delta") {
        r = universality_scan_Q_delta(a.n, a.max_k, a.radius, opt);
    } else if (a.form == "q-free") {
        r = universality_scan_q_free(a.n, a.max_k, a.radius, opt);
    } else if (a.form == "Ps") {
        require(!a.s.empty(), Errc::BadInput, "--form Ps needs --s");
        w = make_weight(a.n, parse_csv(a.s));
        r = scan_Ps(*w, a.max_k, a.radius, opt);
    } else if (a.form == "trunc") {
        require(a.ell >= 1, Errc::BadEll, "--form trunc needs --ell");
        w = truncated_weight(a.n, a.ell);
        r = scan_truncated_weight(a.n, a.ell, a.max_k, a.radius, opt);
    } else if (a.form == "refined-go") {
        auto norm = a.normalization == "coresize" ? RefinedNormalization::CoreSize : RefinedNormalization::BasePoint;
        r = scan_refined_GO(a.n, a.max_k, a.radius, norm, opt);
    } else if (a.form == "go") {
        r = granville_ono_scan(a.n, a.max_k, a.radius, opt);
    } else if (a.form == "deltaC") {
        r = scan_deltaC(a.n, a.max_k, a.radius, opt);
    } else if (a.form == "lattice") {
        r = norm_universality_scan(lattice_spec(parse_affine_type(a.type), a.n), a.max_k, a.radius, opt);
    } else {
        throw Error(Errc::BadInput, "unknown form '" + a.form + "'");
    }
    emit(sh, to_json(r), to_text(r));
    bool gap = r.count(Status::NotFoundWithinRadius) + r.count(Status::ModularObstruction) > 0;
    return gap && predicted_universal(a, w ? &*w : nullptr) ? failed : ok;
}

// ---------------------------------------------------------------- hall

struct HallArgs {
    Int mod = 0;
    std::string d;
};

int run_hall(const Shared& sh, const HallArgs& a) {
    Vec d = parse_csv(a.d);
    HallPair p = hall_decompose(a.mod, d);
    json j{{"mod", a.mod}, {"d", d}, {"a", p.a}, {"b", p.b}};
    emit(sh, j, "a = (" + to_csv(p.a) + ")\nb = (" + to_csv(p.b) + ")\n");
    return ok;
}

// ---------------------------------------------------------------- sumset

struct SumsetArgs {
    std::string family;
    Int n = 0;
    std::optional<Int> mod;
};

int run_sumset(const Shared& sh, const SumsetArgs& a) {
    require(a.family == "A" || a.family == "C", Errc::BadInput, "family must be A or C");
    Family f = a.family == "A" ? Family::A : Family::C;
    SumsetCertificate c = verify_sumset_equality(f, a.n, a.mod);
    std::string text = "family=" + a.family + " n=" + std::to_string(a.n) + " mod=" + std::to_string(c.modulus) +
                       "\nequal=" + (c.equal ? "true" : "false") + " expected=" + std::to_string(c.expected_size) +
                       " found=" + std::to_string(c.found_size) + "\n";
    for (const auto& v : c.missing) text += "missing (" + to_csv(v) + ")\n";
    emit(sh, to_json(c), text);
    bool predicted = c.modulus == default_modulus(f, a.n) && (f == Family::A || is_prime(c.modulus));
    return predicted && !c.equal ? failed : ok;
}

// ---------------------------------------------------------------- core

struct CoreArgs {
    std::string npartition;
    std::string charges;
    Int n = 0;
    bool render = false;
};

int run_core(const Shared& sh, const CoreArgs& a) {
    MultiPartition mp = parse_multipartition(a.npartition);
    ChargeVector s = parse_csv(a.charges);
    ChargedMulti q = phi(mp, s, a.n);
    NsCore c = ns_core_of(mp, s, a.n);
    bool is_core = is_ns_core(mp, s, a.n);
    json j{{"n", a.n},
           {"input", {{"parts", multi_json(mp)}, {"charges", s}}},
           {"quotient", {{"parts", multi_json(q.parts)}, {"charges", q.charges}}},
           {"core", {{"parts", multi_json(c.core.parts)}, {"charges", c.core.charges}}},
           {"multicharge", c.core_multicharge},
           {"is_ns_core", is_core}};
    std::string text = "quotient " + format_multipartition(q.parts) + " charges (" + to_csv(q.charges) + ")\n" +
                       "core " + format_multipartition(c.core.parts) + " charges (" + to_csv(c.core.charges) + ")\n" +
                       "multicharge (" + to_csv(c.core_multicharge) + ")\n" +
                       "is_ns_core " + (is_core ? "yes" : "no") + "\n";
    if (a.render) {
        std::string pic = render_abacus(l_abacus(mp, s));
        j["abacus"] = pic;
        text += "\n" + pic;
    }
    emit(sh, j, text);
    return ok;
}

// ---------------------------------------------------------------- finite

struct FiniteArgs {
    std::string type;
    Int n = 0;
    Int ell = 0;
    bool bound = false;
    bool saturate = false;
};

int run_finite(const Shared& sh, const FiniteArgs& a) {
    FiniteType t{parse_series(a.type), a.n};
    require(a.bound != a.saturate, Errc::BadInput, "pass exactly one of --bound and --saturate");
    check_ell(t, a.ell);
    std::string name = a.type + std::to_string(a.n);
    if (a.saturate) {
        SaturationResult r = saturation_check(t, a.ell, sh.threads);
        std::string text = name + " ell=" + std::to_string(a.ell) + " b=" + std::to_string(r.b) +
                           " image=[" + std::to_string(r.image_min) + "," + std::to_string(r.image_max) + "]" +
                           " interval=" + (r.is_interval ? "yes" : "no") +
                           " predicted=" + (r.predicted ? "yes" : "no") + "\n";
        if (!r.missing.empty()) text += "missing " + to_csv(r.missing) + "\n";
        emit(sh, to_json(r), text);
        return r.is_interval == r.predicted && r.image_max == r.b ? ok : failed;
    }
    Int b = b_bound(t, a.ell);
    json j{{"type", std::string(1, series_char(t.series))}, {"n", a.n}, {"ell", a.ell}, {"b", b}};
    std::string text = name + " ell=" + std::to_string(a.ell) + " b=" + std::to_string(b) + "\n";
    int code = ok;
    if (group_order(t) <= enumeration_budget(1'000'000)) {
        Int mx = brute_force_max(t, a.ell);
        j["max_over_W"] = mx;
        text += "max over W = " + std::to_string(mx) + "\n";
        if (mx != b) code = failed;
    }
    emit(sh, j, text);
    return code;
}

// ---------------------------------------------------------------- threshold

int run_threshold(const Shared& sh, const std::string& type) {
    AffineType t = parse_affine_type(type);
    ThresholdResult r = large_rank_threshold(t);
    bool cover = interval_cover_holds(t, r.n0);
    json j = to_json(r);
    j["interval_cover"] = cover;
    emit(sh, j,
         affine_name(t) + " n0=" + std::to_string(r.n0) + " checked to n=" + std::to_string(r.check_range) +
             " monotone=" + (r.monotone ? "yes" : "no") + " interval_cover=" + (cover ? "yes" : "no") + "\n");
    return r.monotone && cover ? ok : failed;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"atomic length and entropy toolkit"};
    app.require_subcommand(1);
    Shared sh;
    app.add_flag("--json", sh.json, "JSON output");
    app.add_option("--threads", sh.threads, "worker threads for scans")->check(CLI::PositiveNumber);

    EntropyArgs ea;
    auto* entropy_cmd = app.add_subcommand("entropy", "entropy and atomic length of a window");
    entropy_cmd->add_option("--n", ea.n)->required();
    entropy_cmd->add_option("--window", ea.window)->required();

    ScanArgs sa;
    auto* scan_cmd = app.add_subcommand("scan", "universality scan");
    scan_cmd->add_option("--form", sa.form)
        ->required()
        ->check(CLI::IsMember({"rho", "Q-delta", "q-free", "Ps", "trunc", "refined-go", "go", "deltaC", "lattice"}));
    scan_cmd->add_option("--type", sa.type, "affine type for --form lattice");
    scan_cmd->add_option("--ell", sa.ell, "level for --form trunc");
    scan_cmd->add_option("--s", sa.s, "charge vector for --form Ps");
    scan_cmd->add_option("--n", sa.n)->required();
    scan_cmd->add_option("--max-k", sa.max_k)->check(CLI::NonNegativeNumber);
    scan_cmd->add_option("--radius", sa.radius)->check(CLI::NonNegativeNumber);
    scan_cmd->add_option("--normalization", sa.normalization, "refined-go targets")
        ->check(CLI::IsMember({"basepoint", "coresize"}));

    HallArgs ha;
    auto* hall_cmd = app.add_subcommand("hall", "Hall decomposition of a D-vector");
    hall_cmd->add_option("--mod", ha.mod)->required();
    hall_cmd->add_option("--d", ha.d)->required();

    SumsetArgs ssa;
    auto* sumset_cmd = app.add_subcommand("sumset", "difference set of an orbit");
    sumset_cmd->add_option("--family", ssa.family)->required()->check(CLI::IsMember({"A", "C"}));
    sumset_cmd->add_option("--n", ssa.n)->required();
    sumset_cmd->add_option("--mod", ssa.mod);

    CoreArgs ca;
    auto* core_cmd = app.add_subcommand("core", "phi, quotient and (n,s)-core");
    core_cmd->add_option("--npartition", ca.npartition)->required();
    core_cmd->add_option("--charges", ca.charges)->required();
    core_cmd->add_option("--n", ca.n)->required();
    core_cmd->add_flag("--render", ca.render);

    FiniteArgs fa;
    auto* finite_cmd = app.add_subcommand("finite", "finite Weyl group bound or saturation");
    finite_cmd->add_option("--type", fa.type)->required()->check(CLI::IsMember({"A", "B", "C", "D"}));
    finite_cmd->add_option("--n", fa.n)->required();
    finite_cmd->add_option("--ell", fa.ell)->required();
    auto* bound_flag = finite_cmd->add_flag("--bound", fa.bound);
    finite_cmd->add_flag("--saturate", fa.saturate)->excludes(bound_flag);

    std::string threshold_type;
    auto* threshold_cmd = app.add_subcommand("threshold", "large rank threshold n0");
    threshold_cmd->add_option("--type", threshold_type)->required();

    for (auto* sub : app.get_subcommands({})) {
        sub->add_flag("--json", sh.json, "JSON output");
        sub->add_option("--threads", sh.threads, "worker threads for scans")->check(CLI::PositiveNumber);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? ok : invalid;
    }

    try {
        if (*entropy_cmd) return run_entropy(sh, ea);
        if (*scan_cmd) return run_scan_cmd(sh, sa);
        if (*hall_cmd) return run_hall(sh, ha);
        if (*sumset_cmd) return run_sumset(sh, ssa);
        if (*core_cmd) return run_core(sh, ca);
        if (*finite_cmd) return run_finite(sh, fa);
        if (*threshold_cmd) return run_threshold(sh, threshold_type);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code() == Errc::Invariant || e.code() == Errc::SearchFailed ? failed : invalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return invalid;
    }
    return invalid;
}
