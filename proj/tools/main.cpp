#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "wpo/checkers.hpp"
#include "wpo/kruskal.hpp"
#include "wpo/ordinal.hpp"

using namespace wpo;

namespace {

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        return buf.str();
    }
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Accepts a file path, "-" for stdin, or an inline literal that already looks
// like a poset ("elements: ..." first).
PosetPtr load_poset(const std::string& arg) {
    if (arg.rfind("elements:", 0) == 0) return parse_poset(arg);
    return parse_poset(read_input(arg));
}

struct Options {
    std::string format = "text";
    std::uint64_t seed = 0;
    bool structured() const { return format == "structured"; }
};

int emit_verdict(const Options& opt, const Verdict& v) {
    std::cout << (opt.structured() ? to_json(v) + "\n" : to_text(v));
    return v.pass ? 0 : 1;
}

int emit_function_verdict(const Options& opt, const FunctionVerdict& v) {
    std::cout << (opt.structured() ? to_json(v) + "\n" : to_text(v));
    return v.pass ? 0 : 1;
}

void emit_kv(const Options& opt, const std::vector<std::pair<std::string, std::string>>& rows) {
    if (opt.structured()) {
        nlohmann::json j;
        for (const auto& [k, val] : rows) j[k] = val;
        std::cout << j.dump(2) << "\n";
    } else {
        for (const auto& [k, val] : rows) std::cout << k << ": " << val << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"wpo - dilators on well partial orders, Kruskal term orders, Veblen ordinals"};
    app.require_subcommand(1);

    Options opt;
    app.add_option("--format", opt.format, "Report format")->check(CLI::IsMember({"text", "structured"}));
    app.add_option("--seed", opt.seed, "Seed for randomized sampling (default 0)");

    int exit_code = 0;

    // check ------------------------------------------------------------
    auto* check = app.add_subcommand("check", "Run a bounded exhaustive property check");
    std::string check_dil, check_prop, check_nu, check_target;
    int check_max_poset = 3, check_max_elem = 3;
    check->add_option("dilator", check_dil, "Dilator spec, e.g. seq, multiset, star(seq)")->required();
    check->add_option("--property", check_prop, "axioms|normal|aczel-normal|strongly-normal|"
                                                "strongly-normal-linear|flat|graph-like|remark-condition");
    check->add_option("--nu", check_nu, "Check a registered transformation instead (msetToSeq|identity-carrier)");
    check->add_option("--target", check_target, "Target dilator for --nu");
    check->add_option("--max-poset", check_max_poset, "Largest poset size");
    check->add_option("--max-elem", check_max_elem, "Largest element size");
    check->callback([&] {
        Checker ck;
        DilatorSpec d = DilatorSpec::parse(check_dil);
        Bounds b{check_max_poset, check_max_elem};
        if (!check_nu.empty()) {
            if (check_target.empty()) throw Error("--nu requires --target");
            exit_code = emit_verdict(opt, ck.check_quasi_embedding(check_nu, d, DilatorSpec::parse(check_target), b));
        } else {
            if (check_prop.empty()) throw Error("check requires --property or --nu");
            exit_code = emit_verdict(opt, ck.check_property(d, property_from_string(check_prop), b));
        }
    });

    // compare ----------------------------------------------------------
    auto* cmp = app.add_subcommand("compare", "Compare two dilator elements over a poset");
    std::string cmp_dil, cmp_poset, cmp_s, cmp_t;
    bool cmp_coded = false;
    cmp->add_option("dilator", cmp_dil)->required();
    cmp->add_option("--poset", cmp_poset, "Poset file, '-' for stdin, or inline text")->required();
    cmp->add_option("s", cmp_s, "First element literal")->required();
    cmp->add_option("t", cmp_t, "Second element literal")->required();
    cmp->add_flag("--coded", cmp_coded, "Route the comparison through the coded pathway");
    cmp->callback([&] {
        DilatorSpec d = DilatorSpec::parse(cmp_dil);
        PosetPtr x = load_poset(cmp_poset);
        DilatorElement s = parse_element(d, x, cmp_s);
        DilatorElement t = parse_element(d, x, cmp_t);
        bool st = cmp_coded ? coded_leq(encode(s), encode(t)) : dil_leq(s, t);
        bool ts = cmp_coded ? coded_leq(encode(t), encode(s)) : dil_leq(t, s);
        emit_kv(opt, {{"s", s.str()},
                      {"t", t.str()},
                      {"s<=t", st ? "yes" : "no"},
                      {"t<=s", ts ? "yes" : "no"},
                      {"pathway", cmp_coded ? "coded" : "direct"}});
    });

    // tw ----------------------------------------------------------------
    auto* tw = app.add_subcommand("tw", "The initial Kruskal fixed point of a dilator");
    std::string tw_dil;
    tw->add_option("dilator", tw_dil)->required();
    tw->require_subcommand(1);

    auto* tw_audit = tw->add_subcommand("audit", "Run a term-order audit");
    std::string tw_check = "partial-order";
    int tw_len = 7;
    tw_audit->add_option("--check", tw_check, "partial-order|fixed-point-eq|height-lemma|bad-sequence-probe");
    tw_audit->add_option("--max-length", tw_len, "Term length bound (<= 9)");
    tw_audit->callback([&] {
        KruskalSystem sys(DilatorSpec::parse(tw_dil));
        exit_code = emit_verdict(opt, sys.audit(audit_from_string(tw_check), tw_len));
    });

    auto* tw_leq = tw->add_subcommand("leq", "Compare two terms");
    std::string tw_s, tw_t;
    tw_leq->add_option("s", tw_s)->required();
    tw_leq->add_option("t", tw_t)->required();
    tw_leq->callback([&] {
        KruskalSystem sys(DilatorSpec::parse(tw_dil));
        auto s = sys.parse(tw_s);
        auto t = sys.parse(tw_t);
        emit_kv(opt, {{"s", s->str()},
                      {"t", t->str()},
                      {"s<=t", sys.leq(s, t) ? "yes" : "no"},
                      {"t<=s", sys.leq(t, s) ? "yes" : "no"}});
    });

    auto* tw_list = tw->add_subcommand("list", "Enumerate terms up to a length bound");
    int tw_list_len = 5;
    tw_list->add_option("--max-length", tw_list_len);
    tw_list->callback([&] {
        KruskalSystem sys(DilatorSpec::parse(tw_dil));
        auto terms = sys.enumerate(tw_list_len);
        if (opt.structured()) {
            nlohmann::json j = nlohmann::json::array();
            for (const auto& t : terms)
                j.push_back({{"term", t->str()}, {"length", t->length()}, {"height", t->height()}});
            std::cout << j.dump(2) << "\n";
        } else {
            for (const auto& t : terms)
                std::cout << t->str() << "  (length " << t->length() << ", height " << t->height() << ")\n";
            std::cout << "count: " << terms.size() << "\n";
        }
    });

    auto* tw_show = tw->add_subcommand("show", "Parse a term and print its canonical form");
    std::string tw_term;
    tw_show->add_option("term", tw_term)->required();
    tw_show->callback([&] {
        KruskalSystem sys(DilatorSpec::parse(tw_dil));
        auto t = sys.parse(tw_term);
        emit_kv(opt, {{"term", t->str()},
                      {"length", std::to_string(t->length())},
                      {"height", std::to_string(t->height())},
                      {"subterms", std::to_string(t->subterms().size())}});
    });

    // otype --------------------------------------------------------------
    auto* otype = app.add_subcommand("otype", "Maximal order types of the coded transformations");
    std::string otype_which;
    std::vector<std::string> otype_args;
    otype->add_option("which", otype_which, "seq|multiset|sum|product")->required();
    otype->add_option("args", otype_args, "Ordinal expression(s)")->required();
    otype->callback([&] {
        auto arg = [&](size_t i) {
            if (i >= otype_args.size()) throw Error("otype: missing ordinal argument");
            return parse_ordinal(otype_args[i]);
        };
        Ordinal result;
        if (otype_which == "seq") result = otype_seq(arg(0));
        else if (otype_which == "multiset" || otype_which == "mset") result = otype_multiset(arg(0));
        else if (otype_which == "sum") result = otype_sum(arg(0), arg(1));
        else if (otype_which == "product") result = otype_product(arg(0), arg(1));
        else throw Error("otype: unknown transformation " + otype_which);
        if (opt.structured()) emit_kv(opt, {{"otype", result.str()}});
        else std::cout << result.str() << "\n";
    });

    // ord ----------------------------------------------------------------
    auto* ord = app.add_subcommand("ord", "Veblen ordinal calculator");
    ord->require_subcommand(1);
    std::string ord_a, ord_b;
    std::uint64_t ord_n = 0;

    auto simple = [&](const char* name, const char* help, auto fn, bool binary) {
        auto* sub = ord->add_subcommand(name, help);
        sub->add_option("a", ord_a)->required();
        if (binary) sub->add_option("b", ord_b)->required();
        sub->callback([&, fn] {
            Ordinal a = parse_ordinal(ord_a);
            Ordinal b = binary ? parse_ordinal(ord_b) : Ordinal::zero();
            (void)b;
            fn(a, b);
        });
        return sub;
    };
    simple("cmp", "Compare two ordinals", [&](const Ordinal& a, const Ordinal& b) {
        int c = compare(a, b);
        std::string r = c < 0 ? "less" : (c == 0 ? "equal" : "greater");
        if (opt.structured()) emit_kv(opt, {{"compare", r}});
        else std::cout << r << "\n";
    }, true);
    auto print_result = [&](const Ordinal& r) {
        if (opt.structured()) emit_kv(opt, {{"result", r.str()}});
        else std::cout << r.str() << "\n";
    };
    simple("add", "Ordinary ordinal addition",
           [&](const Ordinal& a, const Ordinal& b) { print_result(ordinal_add(a, b)); }, true);
    simple("nsum", "Natural (Hessenberg) sum",
           [&](const Ordinal& a, const Ordinal& b) { print_result(natural_sum(a, b)); }, true);
    simple("nprod", "Natural (Hessenberg) product",
           [&](const Ordinal& a, const Ordinal& b) { print_result(natural_product(a, b)); }, true);
    simple("pow", "Omega power",
           [&](const Ordinal& a, const Ordinal&) { print_result(Ordinal::omega_pow(a)); }, false);
    simple("veblen", "Two-argument Veblen function",
           [&](const Ordinal& a, const Ordinal& b) { print_result(Ordinal::veblen(a, b)); }, true);

    auto* ord_fs = ord->add_subcommand("fs", "Fundamental sequence member");
    ord_fs->add_option("limit", ord_a)->required();
    ord_fs->add_option("n", ord_n)->required();
    ord_fs->callback([&] { print_result(fundamental_sequence(parse_ordinal(ord_a), ord_n)); });

    auto* ord_cn = ord->add_subcommand("check-normal", "Normal-function analysis of a symbolic map");
    std::string cn_fn;
    std::vector<std::string> cn_probes;
    int cn_samples = 200;
    ord_cn->add_option("function", cn_fn, "seq-otype|multiset-otype|omega-pow")->required();
    ord_cn->add_option("--probe", cn_probes, "Limit ordinal probe (repeatable)")->required();
    ord_cn->add_option("--samples", cn_samples, "Random comparable pairs to sample");
    ord_cn->callback([&] {
        std::vector<Ordinal> probes;
        for (const auto& p : cn_probes) probes.push_back(parse_ordinal(p));
        exit_code = emit_function_verdict(
            opt, check_normal_function(otype_map_from_string(cn_fn), probes, cn_samples, opt.seed));
    });

    // posets ---------------------------------------------------------------
    auto* posets = app.add_subcommand("posets", "Finite poset utilities");
    posets->require_subcommand(1);

    auto* pe = posets->add_subcommand("enumerate", "All labeled posets on n points");
    int pe_n = 3;
    bool pe_iso = false;
    pe->add_option("n", pe_n)->required();
    pe->add_flag("--iso", pe_iso, "Collapse to isomorphism classes");
    pe->callback([&] {
        auto all = enumerate_posets(pe_n, pe_iso);
        if (opt.structured()) {
            nlohmann::json j;
            j["count"] = all.size();
            j["posets"] = nlohmann::json::array();
            for (const auto& x : all) j["posets"].push_back(x->serial());
            std::cout << j.dump(2) << "\n";
        } else {
            for (const auto& x : all) std::cout << x->serial() << "\n";
            std::cout << "count: " << all.size() << "\n";
        }
    });

    auto* pm = posets->add_subcommand("maps", "All quasi embeddings or embeddings between two posets");
    std::string pm_src, pm_tgt, pm_kind = "quasi";
    pm->add_option("source", pm_src)->required();
    pm->add_option("target", pm_tgt)->required();
    pm->add_option("--kind", pm_kind)->check(CLI::IsMember({"quasi", "embedding"}));
    pm->callback([&] {
        auto maps = enumerate_maps(load_poset(pm_src), load_poset(pm_tgt),
                                   pm_kind == "quasi" ? MapKind::quasi : MapKind::embedding);
        for (const auto& f : maps) std::cout << f.serial() << "\n";
        std::cout << "count: " << maps.size() << "\n";
    });

    auto* px = posets->add_subcommand("extensions", "All linear extensions of a poset");
    std::string px_poset;
    px->add_option("poset", px_poset)->required();
    px->callback([&] {
        auto exts = linear_extensions(load_poset(px_poset));
        for (const auto& e : exts) std::cout << e.serial() << "\n";
        std::cout << "count: " << exts.size() << "\n";
    });

    auto* pl = posets->add_subcommand("lower", "The suborder strictly avoiding an upper bound");
    std::string pl_poset, pl_x;
    pl->add_option("poset", pl_poset)->required();
    pl->add_option("element", pl_x)->required();
    pl->callback([&] { std::cout << lower_set(load_poset(pl_poset), pl_x)->serial(); });

    auto* pv = posets->add_subcommand("validate", "Parse a poset file and print its canonical form");
    std::string pv_poset;
    pv->add_option("poset", pv_poset)->required();
    pv->callback([&] { std::cout << load_poset(pv_poset)->serial(); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return exit_code;
}
