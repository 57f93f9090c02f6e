#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "fdesign/balancer.hpp"
#include "fdesign/catalog.hpp"
#include "fdesign/divisibility.hpp"
#include "fdesign/errors.hpp"
#include "fdesign/extension.hpp"
#include "fdesign/io.hpp"
#include "fdesign/make_divisible.hpp"
#include "fdesign/packing.hpp"
#include "fdesign/partite.hpp"
#include "fdesign/regularise.hpp"
#include "fdesign/rng.hpp"
#include "fdesign/shifter.hpp"

namespace fdesign::cli {
namespace {

// Raised for bad command-line values that CLI11 cannot catch by itself.
struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Result of one subcommand: the document to print and the exit code.
struct Outcome {
    Json doc;
    int code = kExitPass;
};

Json set_json(const VertexSet& s) {
    Json a = Json::array();
    for (Vertex v : s) a.push_back(v);
    return a;
}

Json optional_set(const std::optional<VertexSet>& s) { return s ? set_json(*s) : Json(nullptr); }

class Context {
public:
    explicit Context(std::istream& in) : in_(in) {}

    // "-" reads stdin (once), text starting with '{' or '[' is inline JSON,
    // anything else is a file path.
    Json json(const std::string& option, const std::string& src) {
        std::string text;
        if (src == "-") {
            if (stdin_used_) throw UsageError(option + ": standard input is already consumed");
            stdin_used_ = true;
            text.assign(std::istreambuf_iterator<char>(in_), std::istreambuf_iterator<char>());
        } else if (!src.empty() && (src.front() == '{' || src.front() == '[')) {
            text = src;
        } else {
            std::ifstream f(src);
            if (!f) throw UsageError(option + ": cannot open " + src);
            text.assign(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
        }
        try {
            return parse_json(text);
        } catch (const JsonError& e) {
            throw JsonError(e.where(), option + ": " + strip_where(e));
        }
    }

    template <class Fn>
    auto load(const std::string& option, const std::string& src, Fn&& fn) {
        Json j = json(option, src);
        try {
            return fn(j);
        } catch (const JsonError& e) {
            throw JsonError(e.where(), option + ": " + strip_where(e));
        }
    }

    // Like json() but a catalog name (k3, fano, k50, k6_3, ...) is also accepted.
    RGraph graph(const std::string& option, const std::string& src) {
        if (is_name(src)) return named_pattern(src);
        return load(option, src, [](const Json& j) { return hypergraph_from_json(j); });
    }

    MultiRGraph multigraph(const std::string& option, const std::string& src) {
        if (is_name(src)) return MultiRGraph(named_pattern(src));
        return load(option, src, [](const Json& j) { return multigraph_from_json(j); });
    }

private:
    static bool is_name(const std::string& src) {
        if (src.empty() || src == "-" || src.front() == '{' || src.front() == '[') return false;
        if (std::filesystem::exists(src)) return false;
        return std::all_of(src.begin(), src.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
    }

    static std::string strip_where(const JsonError& e) {
        std::string what = e.what();
        const std::string prefix = e.where() + ": ";
        return what.rfind(prefix, 0) == 0 ? what.substr(prefix.size()) : what;
    }

    std::istream& in_;
    bool stdin_used_ = false;
};

FDecomposition fdecomposition_for(Context& ctx, const RGraph& f, const std::string& fd_src) {
    if (fd_src.empty()) return to_fdecomposition(regularise(f));
    FDecomposition fd = ctx.load("--fd", fd_src, [](const Json& j) { return fdecomposition_from_json(j); });
    if (!(fd.decomposition.pattern == f)) throw UsageError("--fd: decomposition pattern differs from the pattern");
    return fd;
}

DivVector as_div_vector(const std::string& option, const std::vector<i64>& v) {
    if (v.empty()) throw UsageError(option + ": empty vector");
    for (i64 x : v)
        if (x <= 0) throw UsageError(option + ": entries must be positive");
    return v;
}

Json divisibility_json(const DivisibilityVerdict& v, const DivVector& b) {
    return Json{{"divisible", v.divisible}, {"deg", b}, {"witness", optional_set(v.witness)},
                {"count", v.witness ? Json(v.count) : Json(nullptr)}, {"modulus", v.witness ? Json(v.modulus) : Json(nullptr)}};
}

Json packing_verdict_json(const PackingVerdict& v) {
    return Json{{"verdict", to_string(v.kind)},
                {"ok", v.ok()},
                {"detail", v.detail},
                {"copy", v.copy ? Json(*v.copy) : Json(nullptr)},
                {"edge", optional_set(v.edge)}};
}

Json separation_json(const SeparationVerdict& v) {
    Json j{{"ws1", v.ws1}, {"kappa", v.kappa}};
    if (v.pair) {
        j["pair"] = Json::array({v.pair->first, v.pair->second});
        j["shared"] = set_json(v.shared);
    }
    return j;
}

Json tuples_json(const std::map<AdapterTuple, i64>& tuples) {
    Json a = Json::array();
    for (const auto& [x, m] : tuples) a.push_back(Json{{"x", x}, {"mult", m}});
    return a;
}

i64 tuples_total(const std::map<AdapterTuple, i64>& tuples) {
    i64 t = 0;
    for (const auto& [x, m] : tuples) t += m;
    return t;
}

struct NibbleTrial {
    std::uint64_t seed = 0;
    NibbleResult result;
    PackingVerdict verdict;
    bool conserved = false;
};

NibbleTrial nibble_trial(const RGraph& g, const RGraph& f, std::uint64_t seed, const NibbleOptions& opts) {
    NibbleTrial t;
    t.seed = seed;
    t.result = greedy_nibble(g, f, seed, opts);
    t.verdict = verify_packing(g, t.result.packing);
    t.conserved = static_cast<i64>(t.result.leftover.size()) ==
                  static_cast<i64>(g.size()) - static_cast<i64>(f.size()) * static_cast<i64>(t.result.packing.copies.size());
    return t;
}

void write_text(const Json& doc, std::ostream& out) {
    if (!doc.is_object()) {
        out << doc.dump() << "\n";
        return;
    }
    for (const auto& [key, value] : doc.items()) {
        out << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
    }
}

std::string resolve_out(const std::string& path) {
    std::filesystem::path p(path);
    if (p.is_relative()) {
        if (const char* dir = std::getenv("FDESIGN_OUT_DIR"); dir && *dir) p = std::filesystem::path(dir) / p;
    }
    return p.string();
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Constructions and verifiers for F-designs of r-uniform hypergraphs", "fdesign"};
    app.set_help_flag("--help", "Print this help message and exit");
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Help for every subcommand");

    std::string format = "json";
    std::string out_path;
    std::uint64_t seed = 0;
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}))->capture_default_str();
    app.add_option("--out", out_path, "Write the result here; relative paths resolve against $FDESIGN_OUT_DIR");
    app.add_option("--seed", seed, "Seed for randomized commands")->capture_default_str();

    Context ctx(in);
    std::function<Outcome()> action;

    auto with_common = [&](CLI::App* sub) {
        sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));
        sub->add_option("--out", out_path, "Output file");
        sub->add_option("--seed", seed, "Seed");
        return sub;
    };

    // deg
    std::string in_src = "-";
    {
        auto* s = with_common(app.add_subcommand("deg", "Deg(F): gcds of link sizes"));
        s->add_option("--in", in_src, "Hypergraph (file, inline JSON, '-' or catalog name)")->capture_default_str();
        s->callback([&] {
            action = [&] { return Outcome{Json{{"deg", div_vector(ctx.graph("--in", in_src))}}}; };
        });
    }

    std::string pattern_src;
    std::vector<i64> b_opt;
    i64 lambda = 1;
    {
        auto* s = with_common(app.add_subcommand("divcheck", "Is G F-divisible (or b-divisible)?"));
        s->add_option("--in", in_src, "Hypergraph or multigraph G")->capture_default_str();
        auto* pat = s->add_option("--pattern", pattern_src, "Pattern F");
        auto* bo = s->add_option("--b", b_opt, "Explicit divisibility vector b_0,b_1,...")->delimiter(',');
        pat->excludes(bo);
        s->add_option("--lambda", lambda, "Multiplier")->capture_default_str()->check(CLI::PositiveNumber);
        s->callback([&] {
            action = [&] {
                if (pattern_src.empty() && b_opt.empty()) throw UsageError("divcheck: give --pattern or --b");
                MultiRGraph g = ctx.multigraph("--in", in_src);
                DivVector b = pattern_src.empty() ? as_div_vector("--b", b_opt) : div_vector(ctx.graph("--pattern", pattern_src));
                auto v = check_divisibility(g, b, lambda);
                return Outcome{divisibility_json(v, b), v.divisible ? kExitPass : kExitFail};
            };
        });
    }

    {
        auto* s = with_common(app.add_subcommand("weakreg", "Is F weakly regular?"));
        s->add_option("--in", in_src, "Hypergraph F")->capture_default_str();
        s->callback([&] {
            action = [&] {
                auto w = is_weakly_regular(ctx.graph("--in", in_src));
                Json j{{"weakly_regular", w.regular}, {"s", w.regular ? Json(w.s) : Json(nullptr)}};
                if (w.witness) {
                    j["witness"] = Json{{"i", w.witness->i},
                                        {"first", set_json(w.witness->first)},
                                        {"first_degree", w.witness->first_degree},
                                        {"second", set_json(w.witness->second)},
                                        {"second_degree", w.witness->second_degree}};
                }
                return Outcome{j, w.regular ? kExitPass : kExitFail};
            };
        });
    }

    {
        auto* s = with_common(app.add_subcommand("shadow", "Shadow of F"));
        s->add_option("--in", in_src, "Hypergraph F")->capture_default_str();
        s->callback([&] {
            action = [&] {
                auto sh = shadow(ctx.graph("--in", in_src));
                return Outcome{Json{{"shadow", to_json(sh.graph)}, {"s", sh.s ? Json(*sh.s) : Json(nullptr)}}};
            };
        });
    }

    int typ_h = 1;
    double typ_p = 0.5;
    std::string typ_mode = "exhaustive";
    i64 typ_samples = 10000;
    i64 max_families = 50'000'000;
    {
        auto* s = with_common(app.add_subcommand("typical", "Smallest c with G (c, h, p)-typical"));
        s->add_option("--in", in_src, "Hypergraph G")->capture_default_str();
        s->add_option("--h", typ_h, "Family size bound")->required()->check(CLI::PositiveNumber);
        s->add_option("--p", typ_p, "Density")->required()->check(CLI::Range(0.0, 1.0));
        s->add_option("--mode", typ_mode)->check(CLI::IsMember({"exhaustive", "sampled"}))->capture_default_str();
        s->add_option("--samples", typ_samples)->check(CLI::PositiveNumber)->capture_default_str();
        s->add_option("--max-families", max_families)->check(CLI::PositiveNumber)->capture_default_str();
        s->callback([&] {
            action = [&] {
                auto mode = typ_mode == "sampled" ? TypicalityMode::Sampled : TypicalityMode::Exhaustive;
                auto t = typicality(ctx.graph("--in", in_src), typ_h, typ_p, mode, typ_samples, seed, max_families);
                return Outcome{Json{{"c", t.c},
                                    {"typical", t.typical},
                                    {"mode", t.mode == TypicalityMode::Sampled ? "sampled" : "exhaustive"},
                                    {"evaluated", t.evaluated},
                                    {"seed", seed}}};
            };
        });
    }

    int pq = 0, pf = 0, pr = 0;
    {
        auto* s = with_common(app.add_subcommand("partite-gen", "Resolvable decomposition of the complete f-partite host"));
        s->add_option("--q", pq, "Prime power part size")->required();
        s->add_option("--f", pf, "Number of parts")->required();
        s->add_option("--r", pr, "Uniformity")->required();
        s->callback([&] { action = [&] { return Outcome{to_json(resolvable_decomposition(pq, pf, pr))}; }; });
    }

    {
        auto* s = with_common(app.add_subcommand("partite-verify", "Verify a resolvable partite decomposition"));
        s->add_option("--in", in_src, "Decomposition JSON")->capture_default_str();
        s->callback([&] {
            action = [&] {
                auto d = ctx.load("--in", in_src, [](const Json& j) { return resolvable_from_json(j); });
                auto v = verify_resolvable(d);
                std::size_t blocks = 0;
                for (const auto& c : d.classes) blocks += c.size();
                Json j{{"ok", v.ok}, {"q", d.q}, {"f", d.f}, {"r", d.r}, {"classes", d.classes.size()}, {"blocks", blocks}};
                if (!v.ok) {
                    j["violation"] = v.violation;
                    j["witness"] = set_json(v.witness);
                    j["class"] = v.clazz;
                }
                return Outcome{j, v.ok ? kExitPass : kExitFail};
            };
        });
    }

    i64 max_edges = 20'000'000;
    {
        auto* s = with_common(app.add_subcommand("regularise", "Weakly regular F* with an F-decomposition"));
        s->add_option("--in", in_src, "Pattern F")->capture_default_str();
        s->add_option("--max-edges", max_edges)->check(CLI::PositiveNumber)->capture_default_str();
        s->callback([&] {
            action = [&] {
                RegulariseOptions o;
                o.max_edges = max_edges;
                return Outcome{to_json(regularise(ctx.graph("--in", in_src), o))};
            };
        });
    }

    int trials = 1, jobs = 1;
    i64 max_rounds = 0, samples_factor = 200;
    std::optional<i64> kappa;
    bool emit = false;
    {
        auto* s = with_common(app.add_subcommand("nibble", "Random greedy F-packing"));
        s->add_option("--in", in_src, "Host G")->capture_default_str();
        s->add_option("--pattern", pattern_src, "Pattern F")->required();
        s->add_option("--trials", trials, "Independent runs with seeds seed, seed+1, ...")->check(CLI::PositiveNumber)->capture_default_str();
        s->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
        s->add_option("--max-rounds", max_rounds, "Stop after this many copies (0 = no limit)")->capture_default_str();
        s->add_option("--kappa", kappa, "Keep the packing kappa-well separated");
        s->add_option("--samples-factor", samples_factor)->check(CLI::PositiveNumber)->capture_default_str();
        s->add_flag("--emit", emit, "Include packing and leftover for every trial");
        s->callback([&] {
            action = [&] {
                RGraph g = ctx.graph("--in", in_src);
                RGraph f = ctx.graph("--pattern", pattern_src);
                NibbleOptions o;
                o.max_rounds = max_rounds;
                o.separation_kappa = kappa;
                o.samples_per_copy_factor = samples_factor;
                std::vector<NibbleTrial> results(static_cast<std::size_t>(trials));
                std::atomic<int> next{0};
                std::exception_ptr failure;
                std::mutex failure_mu;
                auto worker = [&] {
                    for (int i; (i = next++) < trials;) {
                        try {
                            results[static_cast<std::size_t>(i)] = nibble_trial(g, f, seed + static_cast<std::uint64_t>(i), o);
                        } catch (...) {
                            std::lock_guard lock(failure_mu);
                            if (!failure) failure = std::current_exception();
                        }
                    }
                };
                std::vector<std::thread> pool;
                for (int w = 1; w < std::min(jobs, trials); ++w) pool.emplace_back(worker);
                worker();
                for (auto& t : pool) t.join();
                if (failure) std::rethrow_exception(failure);

                bool all_ok = true;
                Json runs = Json::array();
                std::vector<double> fractions;
                for (const auto& t : results) {
                    const double frac = g.empty() ? 0.0 : static_cast<double>(t.result.leftover.size()) / static_cast<double>(g.size());
                    fractions.push_back(frac);
                    all_ok = all_ok && t.verdict.ok() && t.conserved;
                    Json run{{"seed", t.seed},
                             {"copies", t.result.packing.copies.size()},
                             {"leftover_edges", t.result.leftover.size()},
                             {"leftover_fraction", frac},
                             {"samples", t.result.samples},
                             {"verdict", to_string(t.verdict.kind)},
                             {"conserved", t.conserved}};
                    if (emit || trials == 1) {
                        run["packing"] = to_json(t.result.packing);
                        run["leftover"] = to_json(t.result.leftover);
                    }
                    runs.push_back(run);
                }
                std::sort(fractions.begin(), fractions.end());
                const std::size_t m = fractions.size();
                const double median = m % 2 ? fractions[m / 2] : (fractions[m / 2 - 1] + fractions[m / 2]) / 2;
                Json j{{"seed", seed}, {"trials", trials}, {"edges", g.size()}, {"median_leftover_fraction", median}, {"runs", runs}};
                return Outcome{j, all_ok ? kExitPass : kExitFail};
            };
        });
    }

    std::string cliques_src;
    {
        auto* s = with_common(app.add_subcommand("krandom", "F placed on each clique of a K_f packing by random bijections"));
        s->add_option("--cliques", cliques_src, "Packing of K_f^(r) (JSON) or sts7")->required();
        s->add_option("--pattern", pattern_src, "Pattern F")->required();
        s->callback([&] {
            action = [&] {
                RGraph f = ctx.graph("--pattern", pattern_src);
                Packing cliques;
                if (cliques_src == "sts7") {
                    cliques.pattern = complete_graph(2, 3);
                    cliques.host_n = 7;
                    for (const auto& line : fano_plane()) cliques.copies.push_back(Embedding{line});
                } else {
                    cliques = ctx.load("--cliques", cliques_src, [](const Json& j) { return packing_from_json(j); });
                }
                Packing p = k_random_packing(cliques, f, seed);
                const i64 covered_total = covered(p).total();
                const i64 expected = static_cast<i64>(f.size()) * static_cast<i64>(cliques.copies.size());
                Json j{{"seed", seed}, {"packing", to_json(p)}, {"covered", covered_total}, {"expected", expected}};
                return Outcome{j, covered_total == expected ? kExitPass : kExitFail};
            };
        });
    }

    std::string host_src;
    {
        auto* s = with_common(app.add_subcommand("pack-verify", "Is P an F-packing (or decomposition) of G?"));
        s->add_option("--host", host_src, "Host G")->required();
        s->add_option("--in", in_src, "Packing JSON")->capture_default_str();
        s->callback([&] {
            action = [&] {
                RGraph g = ctx.graph("--host", host_src);
                Packing p = ctx.load("--in", in_src, [](const Json& j) { return packing_from_json(j); });
                auto v = verify_packing(g, p);
                return Outcome{packing_verdict_json(v), v.ok() ? kExitPass : kExitFail};
            };
        });
    }

    {
        auto* s = with_common(app.add_subcommand("design-verify", "Is P a lambda-fold F-design of G?"));
        s->add_option("--host", host_src, "Host G")->required();
        s->add_option("--in", in_src, "Packing JSON")->capture_default_str();
        s->add_option("--lambda", lambda)->check(CLI::PositiveNumber)->capture_default_str();
        s->callback([&] {
            action = [&] {
                RGraph g = ctx.graph("--host", host_src);
                Packing p = ctx.load("--in", in_src, [](const Json& j) { return packing_from_json(j); });
                auto v = verify_design(g, p, lambda);
                Json j = packing_verdict_json(v);
                j["lambda"] = lambda;
                return Outcome{j, v.ok() ? kExitPass : kExitFail};
            };
        });
    }

    {
        auto* s = with_common(app.add_subcommand("wellsep", "Smallest kappa for which P is kappa-well separated"));
        s->add_option("--in", in_src, "Packing JSON")->capture_default_str();
        s->add_option("--kappa", kappa, "Fail if the measured kappa exceeds this");
        s->callback([&] {
            action = [&] {
                Packing p = ctx.load("--in", in_src, [](const Json& j) { return packing_from_json(j); });
                auto v = well_separation(p);
                const bool ok = v.ws1 && (!kappa || v.kappa <= *kappa);
                Json j = separation_json(v);
                j["ok"] = ok;
                return Outcome{j, ok ? kExitPass : kExitFail};
            };
        });
    }

    std::string fd_src;
    int level = 1;
    std::string kind = "simple";
    i64 shifter_max_edges = 5'000'000;
    {
        auto* s = with_common(app.add_subcommand("shifter-gen", "Degree shifter T_k for F"));
        s->add_option("--pattern", pattern_src, "Pattern F")->required();
        s->add_option("--fd", fd_src, "F* with an F-decomposition (default: regularise F)");
        s->add_option("--k", level, "Level")->check(CLI::PositiveNumber)->capture_default_str();
        s->add_option("--kind", kind)->check(CLI::IsMember({"simple", "multi"}))->capture_default_str();
        s->add_option("--max-edges", shifter_max_edges)->check(CLI::PositiveNumber)->capture_default_str();
        s->callback([&] {
            action = [&] {
                RGraph f = ctx.graph("--pattern", pattern_src);
                FDecomposition fd = fdecomposition_for(ctx, f, fd_src);
                DivVector b = div_vector(fd.fstar);
                DivVector h = div_vector(f);
                if (level >= f.r()) throw UsageError("--k must be below the uniformity");
                Json j;
                if (kind == "multi") {
                    j = to_json(multishifter(f, fd, level));
                } else {
                    ShifterOptions o;
                    o.max_edges = shifter_max_edges;
                    j = to_json(simple_shifter(f, fd, level, o));
                }
                j["kind"] = kind;
                j["b"] = DivVector(b.begin(), b.begin() + level + 1);
                j["corner_value"] = h[static_cast<std::size_t>(level)];
                return Outcome{j};
            };
        });
    }

    {
        auto* s = with_common(app.add_subcommand("shifter-verify", "Verify a shifter produced by shifter-gen"));
        s->add_option("--in", in_src, "Shifter JSON")->capture_default_str();
        s->callback([&] {
            action = [&] {
                Json j = ctx.json("--in", in_src);
                auto read = [&](auto fn) {
                    try {
                        return fn();
                    } catch (const JsonError& e) {
                        throw JsonError(e.where(), std::string("--in: ") + e.what());
                    }
                };
                const std::string k_ind = j.value("kind", std::string("simple"));
                DivVector b = read([&] {
                    if (!j.contains("b")) throw JsonError("/b", "missing field");
                    return div_vector_from_json(j["b"], "/b");
                });
                if (!j.contains("corner_value") || !j["corner_value"].is_number_integer())
                    throw JsonError("/corner_value", "--in: missing or non-integer field");
                const i64 corner = j["corner_value"].get<i64>();
                if (k_ind == "multi") {
                    if (!j.contains("graph") || !j.contains("decomposition") || !j.contains("roots") || !j.contains("k"))
                        throw JsonError("", "--in: multishifter needs k, graph, decomposition and roots");
                    MultiRGraph t = read([&] { return multigraph_from_json(j["graph"], "/graph"); });
                    Packing dec = read([&] { return packing_from_json(j["decomposition"], "/decomposition"); });
                    VertexSet roots = j["roots"].get<std::vector<Vertex>>();
                    const int k = j["k"].get<int>();
                    auto c = verify_shifter_congruences(t, roots, k, b, corner);
                    const bool dec_ok = covered(dec) == t;
                    Json out_j{{"ok", c.ok && dec_ok}, {"decomposition", dec_ok}, {"congruences", c.ok}, {"detail", c.detail}};
                    if (c.witness) out_j["witness"] = set_json(*c.witness);
                    return Outcome{out_j, c.ok && dec_ok ? kExitPass : kExitFail};
                }
                Shifter sh = read([&] { return shifter_from_json(j); });
                auto v = verify_shifter(sh.graph, sh.decomposition, sh.roots, sh.k, b, corner);
                Json out_j{{"ok", v.ok},
                           {"detail", v.detail},
                           {"decomposition", v.decomposition},
                           {"well_separated", v.well_separated},
                           {"root_pairs", v.root_pairs},
                           {"roots_independent", v.roots_independent},
                           {"congruences", v.congruences.ok}};
                if (v.congruences.witness) {
                    out_j["witness"] = set_json(*v.congruences.witness);
                    out_j["value"] = v.congruences.value;
                    out_j["expected"] = v.congruences.expected;
                    out_j["modulus"] = v.congruences.modulus;
                }
                return Outcome{out_j, v.ok ? kExitPass : kExitFail};
            };
        });
    }

    int bn = 0, br = 2;
    std::vector<Vertex> u_opt;
    {
        auto* s = with_common(app.add_subcommand("balancer-gen", "Balancer Omega_k on an ordered vertex set U"));
        s->add_option("--n", bn, "U = 0..n-1 when --u is absent");
        s->add_option("--u", u_opt, "Explicit U order")->delimiter(',');
        s->add_option("--k", level, "Level")->check(CLI::PositiveNumber)->capture_default_str();
        s->add_option("--b", b_opt, "b_0,...,b_k")->delimiter(',')->required();
        s->add_option("--r", br, "Uniformity")->capture_default_str();
        s->callback([&] {
            action = [&] {
                std::vector<Vertex> u = u_opt;
                if (u.empty())
                    for (int v = 0; v < bn; ++v) u.push_back(v);
                return Outcome{to_json(balancer(u, level, as_div_vector("--b", b_opt), br))};
            };
        });
    }

    std::string balancer_src, phi_src, source = "synthetic";
    i64 h_value = 0;
    int phi_n = 0, terms = 6;
    {
        auto* s = with_common(app.add_subcommand("balance", "Choose adapters so that phi becomes (b_0..b_k)-divisible"));
        s->add_option("--balancer", balancer_src, "Balancer JSON")->required();
        s->add_option("--phi", phi_src, "Set function JSON (default: a random balanceable one from --seed)");
        s->add_option("--h", h_value, "Corner value h_k")->required()->check(CLI::PositiveNumber);
        s->add_option("--source", source, "Adapter source")->check(CLI::IsMember({"synthetic", "padded"}))->capture_default_str();
        s->add_option("--n", phi_n, "Ground set of the random phi (default max(U) + r + 1)");
        s->add_option("--terms", terms, "Terms in the random phi")->capture_default_str();
        s->callback([&] {
            action = [&] {
                Balancer omega = ctx.load("--balancer", balancer_src, [](const Json& j) { return balancer_from_json(j); });
                SetFunction phi;
                if (phi_src.empty()) {
                    int n = phi_n;
                    if (n == 0) {
                        Vertex top = omega.u.empty() ? -1 : *std::max_element(omega.u.begin(), omega.u.end());
                        n = top + omega.r + 1;
                    }
                    Rng rng(seed);
                    phi = random_balanceable(omega.r, n, omega.u, omega.b, h_value, rng, terms);
                } else {
                    phi = ctx.load("--phi", phi_src, [](const Json& j) { return set_function_from_json(j); });
                }
                auto src = synthetic_source(phi.r(), phi.n(), h_value, omega.b.back(), source == "padded");
                auto res = balance(phi, omega, h_value, src);
                const bool ok = res.phi.is_divisible(omega.b);
                Json j{{"seed", seed},
                       {"divisible", ok},
                       {"chosen", tuples_json(res.chosen)},
                       {"chosen_total", tuples_total(res.chosen)},
                       {"phi", to_json(res.phi)}};
                return Outcome{j, ok ? kExitPass : kExitFail};
            };
        });
    }

    std::vector<Vertex> k_set;
    {
        auto* s = with_common(app.add_subcommand("autodiv", "Does (b_0..b_{k-1})-divisibility plus zero residues on K force divisibility?"));
        s->add_option("--phi", phi_src, "Set function JSON")->required();
        s->add_option("--b", b_opt, "b_0,...,b_k")->delimiter(',')->required();
        s->add_option("--K", k_set, "The (2k-1)-set K")->delimiter(',')->required();
        s->callback([&] {
            action = [&] {
                SetFunction phi = ctx.load("--phi", phi_src, [](const Json& j) { return set_function_from_json(j); });
                auto res = check_auto_div(phi, as_div_vector("--b", b_opt), make_set(k_set));
                Json j{{"divisible", res.divisible}, {"certificate", res.certificate}};
                return Outcome{j, res.divisible ? kExitPass : kExitFail};
            };
        });
    }

    std::vector<Vertex> e0_opt;
    {
        auto* s = with_common(app.add_subcommand("nabla", "Extend every edge of H to a copy of F on fresh vertices"));
        s->add_option("--in", in_src, "Multigraph H")->capture_default_str();
        s->add_option("--pattern", pattern_src, "Pattern F")->required();
        s->add_option("--e0", e0_opt, "Edge of F matched to each edge of H (default: first edge)")->delimiter(',');
        s->callback([&] {
            action = [&] {
                MultiRGraph h = ctx.multigraph("--in", in_src);
                RGraph f = ctx.graph("--pattern", pattern_src);
                if (f.empty()) throw UsageError("--pattern: F has no edges");
                VertexSet e0 = e0_opt.empty() ? *f.begin() : make_set(e0_opt);
                auto res = nabla(h, f, e0);
                Json fresh = Json::array();
                for (const auto& z : res.fresh) fresh.push_back(Json{{"instance", z.instance}, {"role", z.role}, {"vertex", z.vertex}});
                Json inst = Json::array();
                for (const auto& e : res.instances) inst.push_back(set_json(e));
                Json j{{"e0", set_json(e0)},
                       {"tilde", to_json(res.tilde)},
                       {"core", to_json(res.core)},
                       {"decomposition", to_json(res.decomposition)},
                       {"instances", inst},
                       {"fresh", fresh}};
                return Outcome{j};
            };
        });
    }

    std::string mode = "abstract";
    bool materialize = false;
    double xi = 0.0;
    i64 md_max_edges = 5'000'000;
    {
        auto* s = with_common(app.add_subcommand("fixdiv", "Make an F-divisible H into an F*-divisible one by adding D*"));
        s->add_option("--in", in_src, "F-divisible H")->capture_default_str();
        s->add_option("--pattern", pattern_src, "Pattern F")->required();
        s->add_option("--fd", fd_src, "F* with an F-decomposition (default: regularise F)");
        s->add_option("--host", host_src, "Host G (abstract mode: only |V(G)| matters; default V(H))");
        s->add_option("--mode", mode)->check(CLI::IsMember({"abstract", "embedded"}))->capture_default_str();
        s->add_flag("--materialize", materialize, "Abstract mode: build D explicitly");
        s->add_option("--max-edges", md_max_edges, "Edge budget for explicit D")->check(CLI::PositiveNumber)->capture_default_str();
        s->add_option("--xi", xi, "Embedded mode: required co-degree richness")->check(CLI::Range(0.0, 1.0));
        s->add_flag("--emit", emit, "Include D* when it is explicit");
        s->callback([&] {
            action = [&] {
                RGraph h = ctx.graph("--in", in_src);
                RGraph f = ctx.graph("--pattern", pattern_src);
                FDecomposition fd = fdecomposition_for(ctx, f, fd_src);
                RGraph g = host_src.empty() ? RGraph(h.r(), h.n()) : ctx.graph("--host", host_src);
                MakeDivisibleOptions o;
                o.mode = mode == "embedded" ? MakeDivisibleMode::Embedded : MakeDivisibleMode::Abstract;
                o.materialize = materialize;
                o.max_edges = md_max_edges;
                o.xi = xi;
                MakeDivisible md = make_divisible(g, f, fd, seed, o);
                Response resp = respond(md, h);
                const bool ok = resp.divisible && resp.decomposition;
                Json j{{"seed", seed},
                       {"mode", mode},
                       {"ok", ok},
                       {"divisible", resp.divisible},
                       {"decomposition", resp.decomposition},
                       {"compositional", resp.compositional},
                       {"detail", resp.detail},
                       {"deg_f", md.h},
                       {"deg_fstar", md.b},
                       {"n", md.n},
                       {"pieces", md.pieces.size()},
                       {"edges", md.edge_count},
                       {"chosen", resp.chosen.size()},
                       {"shift0_copies", resp.shift0_copies},
                       {"chosen_per_level", resp.chosen_per_level},
                       {"max_degree", md.max_degree >= 0 ? Json(md.max_degree) : Json(nullptr)}};
                if (md.richness)
                    j["richness"] = Json{{"min_common", md.richness->min_common},
                                         {"families", md.richness->families},
                                         {"sampled", md.richness->sampled}};
                if (emit && resp.d_star) j["d_star"] = to_json(*resp.d_star);
                return Outcome{j, ok ? kExitPass : kExitFail};
            };
        });
    }

    std::vector<std::string> argv(args.rbegin(), args.rend());
    try {
        app.parse(argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitPass : kExitUsage;
    }

    auto report = [&](const std::string& kind, const std::string& msg, const std::string& where = "") {
        Json j{{"error", kind}, {"message", msg}};
        if (!where.empty()) j["location"] = where;
        err << "fdesign: " << msg << "\n";
        return j;
    };

    Outcome outcome;
    try {
        outcome = action();
    } catch (const JsonError& e) {
        report("input", e.what(), e.where());
        return kExitUsage;
    } catch (const ResourceLimit& e) {
        report("resource", e.what());
        return kExitUsage;
    } catch (const EmbeddingFailure& e) {
        outcome = Outcome{Json{{"ok", false}, {"error", "embedding"}, {"message", e.what()}, {"piece", e.piece()}, {"seed", seed}},
                          kExitFail};
        err << "fdesign: " << e.what() << "\n";
    } catch (const InternalError& e) {
        report("internal", e.what());
        return kExitInternal;
    } catch (const Json::exception& e) {
        report("input", e.what());
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        report("input", e.what());
        return kExitUsage;
    } catch (const Unsupported& e) {
        report("unsupported", e.what());
        return kExitUsage;
    } catch (const std::domain_error& e) {
        report("input", e.what());
        return kExitUsage;
    } catch (const std::exception& e) {
        report("internal", e.what());
        return kExitInternal;
    }

    std::ostringstream buf;
    if (format == "text") {
        write_text(outcome.doc, buf);
    } else {
        buf << outcome.doc.dump() << "\n";
    }
    if (out_path.empty()) {
        out << buf.str();
    } else {
        const std::string path = resolve_out(out_path);
        std::ofstream f(path);
        if (!f) {
            err << "fdesign: cannot write " << path << "\n";
            return kExitUsage;
        }
        f << buf.str();
    }
    return outcome.code;
}

}  // namespace fdesign::cli
