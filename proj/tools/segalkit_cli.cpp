// Command-line front end: one operation per invocation, deterministic
// reports, exit code 0 on success, 1 on a negative verdict, 2 on errors.
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include "segalkit/builders.hpp"
#include "segalkit/io.hpp"
#include "segalkit/segal.hpp"

using namespace sk;
using nlohmann::json;

namespace {

struct CliError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    std::ostringstream out;
    out << std::hex << h;
    return out.str();
}

struct Args {
    std::string cmd;
    std::vector<std::string> pos;
    std::map<std::string, std::string> flags;
    bool json_mode = false;
    std::string out;

    static Args parse(int argc, char** argv) {
        Args a;
        if (argc < 2) throw CliError("usage: segalkit <subcommand> ...");
        a.cmd = argv[1];
        for (int i = 2; i < argc; ++i) {
            std::string t = argv[i];
            if (t == "--json") {
                a.json_mode = true;
            } else if (t == "-o") {
                if (++i >= argc) throw CliError("-o needs a path");
                a.out = argv[i];
            } else if (t.rfind("--", 0) == 0) {
                if (++i >= argc) throw CliError(t + " needs a value");
                a.flags[t.substr(2)] = argv[i];
            } else {
                a.pos.push_back(t);
            }
        }
        return a;
    }

    int num(const std::string& name, int def) const {
        auto it = flags.find(name);
        if (it == flags.end()) return def;
        try {
            return std::stoi(it->second);
        } catch (const std::exception&) {
            throw CliError("--" + name + " expects an integer");
        }
    }
    int pos_int(std::size_t i) const {
        if (i >= pos.size()) throw CliError("missing argument");
        try {
            return std::stoi(pos[i]);
        } catch (const std::exception&) {
            throw CliError("expected an integer, got '" + pos[i] + "'");
        }
    }
    const std::string& pos_str(std::size_t i) const {
        if (i >= pos.size()) throw CliError("missing argument");
        return pos[i];
    }
};

struct Ctx {
    Args args;
    json report;
    std::string text;
    Budget budget;
    int exit_code = 0;

    explicit Ctx(Args a) : args(std::move(a)) {
        budget.max_simplices =
            static_cast<std::size_t>(args.num("budget-simplices", 20000));
        budget.max_dim = args.num("budget-dim", 12);
        report["inputs"] = json::array();
        report["verdicts"] = json::array();
        report["result"] = json::object();
    }

    void say(const std::string& line) { text += line + "\n"; }

    std::string load(const std::string& path) {
        std::string content = read_file(path);
        report["inputs"].push_back({{"name", path}, {"digest", fnv1a(content)}});
        return content;
    }
    SSetPtr sset(std::size_t i) { return parse_sset(load(args.pos_str(i))); }
    BssData bss(std::size_t i) { return parse_bss(load(args.pos_str(i))); }
    FiniteCategory cat(std::size_t i) { return parse_cat(load(args.pos_str(i))); }
    FiniteSimplicialCategory scat(std::size_t i) {
        return parse_scat(load(args.pos_str(i)));
    }

    int window(const BisimPtr& X, int def = 3) {
        int w = args.num("window", def);
        if (X && X->level_bound() >= 0) w = std::min(w, X->level_bound());
        return w;
    }

    void verdict(const std::string& what, const Verdict& v) {
        report["verdicts"].push_back({{"what", what}, {"verdict", v.to_json()}});
        std::string s = v.yes() ? "Yes" : v.no() ? "No" : "Unknown";
        say(what + ": " + s + " (" + v.kind + ")");
        if (!v.yes()) exit_code = 1;
    }

    void output(const std::string& doc, const std::string& kind) {
        report["result"]["output_digest"] = fnv1a(doc);
        if (!args.out.empty()) {
            write_file(args.out, doc);
            say("wrote " + kind + " to " + args.out);
        } else {
            text += doc;
        }
    }
};

// f by canonical index in hom_enumerate(A, B).
SMap pick_smap(Ctx& c, const SSetPtr& A, const SSetPtr& B,
               const std::string& flag) {
    auto maps = hom_enumerate(A, B, c.budget);
    int i = c.args.num(flag, -1);
    if (i < 0 || i >= static_cast<int>(maps.size()))
        throw CliError("--" + flag + " must index into Hom (size " +
                       std::to_string(maps.size()) + ")");
    return maps[static_cast<std::size_t>(i)];
}

BisMap pick_bismap(Ctx& c, const BisimPtr& A, const BisimPtr& B, int window,
                   const std::string& flag) {
    auto maps = bis_hom_enumerate(A, B, window, c.budget);
    int i = c.args.num(flag, -1);
    if (i < 0 || i >= static_cast<int>(maps.size()))
        throw CliError("--" + flag + " must index into Hom (size " +
                       std::to_string(maps.size()) + ")");
    return maps[static_cast<std::size_t>(i)];
}

json row_sizes(const BisimPtr& X, int window) {
    json out = json::array();
    for (int n = 0; n <= window; ++n) out.push_back(X->row(n)->size());
    return out;
}

// --- subcommands ---

void cmd_build(Ctx& c) {
    const std::string& what = c.args.pos_str(0);
    SSetPtr X;
    if (what == "simplex") X = standard_simplex(c.args.pos_int(1)).s;
    else if (what == "boundary") X = boundary(c.args.pos_int(1)).s;
    else if (what == "horn") X = horn(c.args.pos_int(1), c.args.pos_int(2)).s;
    else if (what == "spine") X = spine(c.args.pos_int(1)).s;
    else if (what == "discrete") X = discrete_sset(c.args.pos_int(1));
    else if (what == "point") X = point_sset();
    else if (what == "empty") X = empty_sset();
    else throw CliError("unknown shape '" + what + "'");
    c.report["result"]["size"] = X->size();
    c.report["result"]["top_dim"] = X->top_dim();
    c.say(what + ": " + std::to_string(X->size()) +
          " nondegenerate simplices, top dimension " +
          std::to_string(X->top_dim()));
    c.output(emit_sset(*X), "sset");
}

void cmd_corpus(Ctx& c) {
    std::string dir = c.args.pos.empty() ? "corpus" : c.args.pos[0];
    std::filesystem::create_directories(dir);
    json files = json::array();
    auto put = [&](const std::string& name, const std::string& doc) {
        write_file(dir + "/" + name, doc);
        files.push_back({{"name", name}, {"digest", fnv1a(doc)}});
    };
    for (int n = 0; n <= 3; ++n)
        put("d" + std::to_string(n) + ".sset", emit_sset(*standard_simplex(n).s));
    for (int n = 1; n <= 3; ++n)
        put("bd" + std::to_string(n) + ".sset", emit_sset(*boundary(n).s));
    for (int n = 1; n <= 3; ++n)
        for (int k = 0; k <= n; ++k)
            put("horn" + std::to_string(n) + "_" + std::to_string(k) + ".sset",
                emit_sset(*horn(n, k).s));
    for (int n = 0; n <= 3; ++n)
        put("nerve_poset" + std::to_string(n) + ".bss",
            emit_bss(nerve_precat(poset_category(n), 3).bis(), 3, true));
    for (int k = 2; k <= 3; ++k) {
        put("nerve_C" + std::to_string(k) + ".bss",
            emit_bss(nerve_precat(codiscrete_groupoid(k), 3).bis(), 3, true));
        put("nerve_discrete" + std::to_string(k) + ".bss",
            emit_bss(nerve_precat(discrete_category(k), 3).bis(), 3, true));
    }
    put("E.bss", emit_bss(nerve_precat(codiscrete_groupoid(2), 3).bis(), 3, true));
    for (int k = 1; k <= 3; ++k) {
        put("G" + std::to_string(k) + ".bss",
            emit_bss_virtual("transpose", spine(k).s));
        put("d" + std::to_string(k) + "t.bss",
            emit_bss_virtual("transpose", standard_simplex(k).s));
    }
    auto gens = [&](const char* base,
                    GeneratorMap (*make)(int, int, int, const Budget&)) {
        for (int m = 0; m <= 3; ++m)
            for (int n = 0; n <= 3; ++n) {
                if (n == 0 && m >= 1) continue;
                GeneratorMap g = make(m, n, 2, c.budget);
                std::string stem = std::string(base) + "_" + std::to_string(m) +
                                   "_" + std::to_string(n);
                put(stem + ".src.bss", emit_bss(g.map.src(), 2, true));
                put(stem + ".dst.bss", emit_bss(g.map.dst(), 2, true));
            }
    };
    gens("Ic", cofib_generator);
    gens("If", segal_generator);
    c.report["result"]["files"] = files;
    c.say("wrote " + std::to_string(files.size()) + " corpus files to " + dir);
}

void cmd_hom(Ctx& c) {
    SSetPtr A = c.sset(0), B = c.sset(1);
    auto maps = hom_enumerate(A, B, c.budget);
    c.report["result"]["count"] = maps.size();
    c.say("Hom(" + A->name() + ", " + B->name() + "): " +
          std::to_string(maps.size()) + " maps");
}

void cmd_product(Ctx& c) {
    SSetPtr A = c.sset(0), B = c.sset(1);
    ProductResult P = product({A, B}, c.budget);
    c.report["result"]["size"] = P.prod->size();
    c.say("product has " + std::to_string(P.prod->size()) +
          " nondegenerate simplices");
    c.output(emit_sset(*P.prod), "sset");
}

void cmd_pushout(Ctx& c) {
    SSetPtr A = c.sset(0), B = c.sset(1), C = c.sset(2);
    SMap f = pick_smap(c, A, B, "f-index");
    SMap g = pick_smap(c, A, C, "g-index");
    PushoutResult P = pushout(f, g, c.budget);
    c.report["result"]["size"] = P.p->size();
    c.say("pushout has " + std::to_string(P.p->size()) +
          " nondegenerate simplices");
    c.output(emit_sset(*P.p), "sset");
}

void cmd_iso(Ctx& c) {
    SSetPtr A = c.sset(0), B = c.sset(1);
    auto iso = find_isomorphism(A, B, c.budget);
    Verdict v = iso ? Verdict::make_yes("isomorphism",
                                        {{"assignment", json::array()}})
                    : Verdict::make_no("no-isomorphism");
    if (iso)
        for (const Ref& r : iso->assignment())
            v.certificate["assignment"].push_back(to_string(r));
    c.verdict("isomorphic", v);
}

void cmd_skeleton(Ctx& c) {
    SSetPtr X = c.sset(0);
    SkeletonResult R = skeleton(X, c.args.pos_int(1));
    c.report["result"]["size"] = R.sk->size();
    c.say("skeleton has " + std::to_string(R.sk->size()) +
          " nondegenerate simplices");
    c.output(emit_sset(*R.sk), "sset");
}

void cmd_pi0(Ctx& c) {
    SSetPtr X = c.sset(0);
    Pi0Result r = pi0(X);
    c.report["result"]["components"] = r.count;
    c.report["result"]["component_of_vertex"] = r.component;
    c.say("pi0: " + std::to_string(r.count) + " components");
}

void cmd_homology(Ctx& c) {
    SSetPtr X = c.sset(0);
    int bound = c.args.num("dim-bound", 3);
    auto H = homology(X, bound, c.budget);
    json hs = json::array();
    for (int d = 0; d < static_cast<int>(H.size()); ++d) {
        hs.push_back(H[d].to_json());
        std::string t;
        for (long long m : H[d].torsion) t += " + Z/" + std::to_string(m);
        c.say("H_" + std::to_string(d) + " = Z^" + std::to_string(H[d].rank) + t);
    }
    c.report["result"]["homology"] = hs;
}

void cmd_kan(Ctx& c) {
    SSetPtr X = c.sset(0);
    c.verdict("kan", is_kan(X, c.args.num("dim-bound", 3), c.budget));
}

void cmd_we(Ctx& c) {
    SSetPtr A = c.sset(0), B = c.sset(1);
    SMap f = pick_smap(c, A, B, "f-index");
    WeOptions opts;
    opts.homology_bound = c.args.num("homology-bound", 4);
    opts.budget = c.budget;
    c.verdict("weak-equivalence", we_verdict(f, opts));
}

void cmd_cosk(Ctx& c) {
    BssData X = c.bss(0);
    int k = c.args.pos_int(1);
    auto Y = std::make_shared<CoskeletonBis>(X.bis, k, c.budget);
    int w = c.window(X.bis);
    c.report["result"]["rows"] = row_sizes(Y, w);
    c.say("cosk_" + std::to_string(k) + " rows: " +
          c.report["result"]["rows"].dump());
    c.output(emit_bss(Y, w), "bss");
}

void cmd_matching(Ctx& c) {
    BssData X = c.bss(0);
    int n = c.args.pos_int(1);
    MatchingResult M = matching_object(X.bis, n, c.budget);
    c.report["result"]["size"] = M.object->size();
    c.report["result"]["matching_map_injective"] = M.from_row.is_injective();
    c.say("matching object P_" + std::to_string(n) + " has " +
          std::to_string(M.object->size()) + " nondegenerate simplices");
}

void cmd_mapspace(Ctx& c) {
    BssData X = c.bss(0), Y = c.bss(1);
    int w = std::min(c.window(X.bis), c.window(Y.bis));
    int deg = c.args.num("deg-bound", 2);
    SSetPtr M = mapping_space(X.bis, Y.bis, deg, w, c.budget);
    json cnt = json::array();
    for (int d = 0; d <= deg; ++d) cnt.push_back(M->count_refs(d));
    c.report["result"]["simplices_per_degree"] = cnt;
    c.say("mapping space simplices per degree: " + cnt.dump());
    c.output(emit_sset(*M), "sset");
}

void cmd_reduce(Ctx& c) {
    BssData X = c.bss(0);
    Reduction R = reduce(X.bis, c.budget);
    int w = c.window(X.bis);
    c.report["result"]["rows"] = row_sizes(R.q, w);
    c.say("reduced rows: " + c.report["result"]["rows"].dump());
    c.output(emit_bss(R.q, w, true), "bss");
}

void cmd_gen(Ctx& c) {
    const std::string& fam = c.args.pos_str(0);
    int m = c.args.pos_int(1), n = c.args.pos_int(2);
    int w = c.args.num("window", 2);
    GeneratorMap g = fam == "cofib"   ? cofib_generator(m, n, w, c.budget)
                     : fam == "segal" ? segal_generator(m, n, w, c.budget)
                                      : throw CliError("family must be cofib or segal");
    c.report["result"]["label"] = g.label;
    c.report["result"]["src_rows"] = row_sizes(g.map.src(), w);
    c.report["result"]["dst_rows"] = row_sizes(g.map.dst(), w);
    c.say(g.label + " src rows " + c.report["result"]["src_rows"].dump() +
          ", dst rows " + c.report["result"]["dst_rows"].dump());
    if (!c.args.out.empty()) {
        std::string stem = c.args.out;
        auto dot = stem.rfind(".bss");
        if (dot != std::string::npos) stem.erase(dot);
        write_file(stem + ".src.bss", emit_bss(g.map.src(), w, true));
        write_file(stem + ".dst.bss", emit_bss(g.map.dst(), w, true));
        c.say("wrote " + stem + ".src.bss and " + stem + ".dst.bss");
    }
}

void cmd_fiber(Ctx& c) {
    BssData X = c.bss(0);
    SegalPrecategory P(X.bis);
    std::vector<int> verts;
    for (std::size_t i = 1; i < c.args.pos.size(); ++i)
        verts.push_back(c.args.pos_int(i));
    SkeletonResult F = fiber(P, verts);
    c.report["result"]["size"] = F.sk->size();
    c.say("fiber has " + std::to_string(F.sk->size()) +
          " nondegenerate simplices");
    c.output(emit_sset(*F.sk), "sset");
}

void cmd_spine(Ctx& c) {
    int k = c.args.pos_int(0);
    SpinePair sp = spine_pair(k, c.window(nullptr));
    c.report["result"]["spine_rows"] = row_sizes(sp.spine_t, sp.inclusion.window());
    c.report["result"]["simplex_rows"] =
        row_sizes(sp.simplex_t, sp.inclusion.window());
    c.say("G(" + std::to_string(k) + ")^t rows: " +
          c.report["result"]["spine_rows"].dump());
    c.output(emit_bss_virtual("transpose", spine(k).s), "bss");
}

void cmd_segal_check(Ctx& c) {
    BssData X = c.bss(0);
    SegalPrecategory P(X.bis);
    SegalReport r = segal_check(P, c.args.num("kmax", 3), {c.args.num("homology-bound", 4), c.budget});
    c.report["result"]["per_k"] = r.details;
    for (const auto& d : r.details)
        c.say("k=" + d["k"].dump() + ": row " + d["row_size"].dump() +
              " vs limit " + d["limit_size"].dump());
    c.verdict("segal", r.overall);
}

void cmd_ho(Ctx& c) {
    BssData X = c.bss(0);
    FiniteCategory H = ho_category(SegalPrecategory(X.bis));
    if (H.name.empty()) H.name = "ho";
    c.report["result"]["objects"] = H.nobjects;
    c.report["result"]["arrows"] = H.narrows();
    c.say("homotopy category: " + std::to_string(H.nobjects) + " objects, " +
          std::to_string(H.narrows()) + " arrows");
    c.output(emit_cat(H), "cat");
}

void cmd_complete_check(Ctx& c) {
    BssData X = c.bss(0);
    c.verdict("complete", complete_check(SegalPrecategory(X.bis)));
}

void cmd_dk_segal(Ctx& c) {
    BssData X = c.bss(0), Y = c.bss(1);
    int w = std::min(c.window(X.bis), c.window(Y.bis));
    BisMap f = pick_bismap(c, X.bis, Y.bis, w, "f-index");
    c.verdict("dk-equivalence", dk_check_segal(f));
}

void cmd_discretize(Ctx& c) {
    BssData X = c.bss(0);
    int w = c.window(X.bis);
    DiscretizeResult R = discretize(X.bis, w);
    c.report["result"]["rows"] = row_sizes(R.rw.bis(), w);
    c.say("discretization rows: " + c.report["result"]["rows"].dump());
    c.output(emit_bss(R.rw.bis(), w, true), "bss");
}

void cmd_phi(Ctx& c) {
    BssData X = c.bss(0), Y = c.bss(1);
    int w = std::min(c.window(X.bis), c.window(Y.bis));
    BisMap f = pick_bismap(c, X.bis, Y.bis, w, "f-index");
    PhiResult R = phi_factorization(f, w, c.budget);
    c.report["result"]["phi_rows"] = row_sizes(R.phi, w);
    c.say("phi rows: " + c.report["result"]["phi_rows"].dump());
    c.verdict("phi-postconditions", R.postcondition);
}

void cmd_strict_local(Ctx& c) {
    BssData X = c.bss(0);
    c.verdict("strictly-local",
              strict_local_check(SegalPrecategory(X.bis), c.args.num("kmax", 2),
                                 c.args.num("deg-bound", 1), c.window(X.bis),
                                 c.budget));
}

void cmd_nerve(Ctx& c) {
    std::string content = c.load(c.args.pos_str(0));
    int w = c.args.num("window", 3);
    BisimPtr N;
    if (content.rfind("scat", 0) == 0)
        N = nerve_scat(parse_scat(content), c.budget).bis();
    else
        N = nerve_precat(parse_cat(content), w).bis();
    c.report["result"]["rows"] = row_sizes(N, w);
    c.say("nerve rows: " + c.report["result"]["rows"].dump());
    c.output(emit_bss(N, w, true), "bss");
}

void cmd_ufunctor(Ctx& c) {
    SSetPtr K = c.sset(0);
    FiniteSimplicialCategory U = u_functor(K);
    c.say("two-object simplicial category with Hom(0,1) = " + K->name());
    c.output(emit_scat(U), "scat");
}

void cmd_pi0cat(Ctx& c) {
    FiniteSimplicialCategory C = c.scat(0);
    FiniteCategory P = pi0_cat(C);
    if (P.name.empty()) P.name = "pi0";
    c.report["result"]["objects"] = P.nobjects;
    c.report["result"]["arrows"] = P.narrows();
    c.say("component category: " + std::to_string(P.nobjects) + " objects, " +
          std::to_string(P.narrows()) + " arrows");
    c.output(emit_cat(P), "cat");
}

void cmd_equiv(Ctx& c) {
    FiniteCategory A = c.cat(0), B = c.cat(1);
    auto fs = functor_enumerate(A, B, c.budget);
    Verdict best = Verdict::make_no("no-equivalence",
                                    {{"functors_checked", fs.size()}});
    for (std::size_t i = 0; i < fs.size(); ++i) {
        Verdict v = cat_equiv_check(fs[i]);
        if (v.yes()) {
            best = Verdict::make_yes("equivalence", {{"functor_index", i}});
            break;
        }
    }
    c.verdict("equivalent", best);
}

void cmd_dk_sc(Ctx& c) {
    SSetPtr K = c.sset(0), L = c.sset(1);
    SMap f = pick_smap(c, K, L, "f-index");
    FiniteSimplicialCategory A = u_functor(K), B = u_functor(L);
    SFunctor F;
    F.src = A;
    F.dst = B;
    F.obj_map = {0, 1};
    F.hom_map = {{SMap(A.hom[0][0], B.hom[0][0], {Ref{0, {}}}),
                  SMap(A.hom[0][1], B.hom[0][1], f.assignment())},
                 {SMap(A.hom[1][0], B.hom[1][0], {}),
                  SMap(A.hom[1][1], B.hom[1][1], {Ref{0, {}}})}};
    F.validate();
    WeOptions opts;
    opts.homology_bound = c.args.num("homology-bound", 4);
    opts.budget = c.budget;
    c.verdict("dk-equivalence", dk_check_sc(F, opts));
}

void cmd_freecat(Ctx& c) {
    Quiver q;
    q.nvertices = c.args.pos_int(0);
    if (c.args.pos.size() % 2 == 0)
        throw CliError("edges must come as src dst pairs");
    for (std::size_t i = 1; i < c.args.pos.size(); i += 2)
        q.edges.emplace_back(c.args.pos_int(i), c.args.pos_int(i + 1));
    FiniteCategory C = free_category(q);
    if (C.name.empty()) C.name = "free";
    c.report["result"]["objects"] = C.nobjects;
    c.report["result"]["arrows"] = C.narrows();
    c.say("free category: " + std::to_string(C.nobjects) + " objects, " +
          std::to_string(C.narrows()) + " arrows");
    c.output(emit_cat(C), "cat");
}

void cmd_psi(Ctx& c) {
    int n = c.args.pos_int(0), spread = c.args.pos_int(1);
    int nobjects = c.args.num("nobjects", n + 1);
    std::vector<int> labels;
    auto it = c.args.flags.find("labels");
    if (it != c.args.flags.end()) {
        std::istringstream ls(it->second);
        std::string piece;
        while (std::getline(ls, piece, ',')) labels.push_back(std::stoi(piece));
    } else {
        for (int i = 0; i <= n; ++i) labels.push_back(i);
    }
    auto P = std::make_shared<PsiBis>(n, labels, nobjects, spread);
    int w = c.args.num("window", 3);
    c.report["result"]["rows"] = row_sizes(P, w);
    c.say("psi rows: " + c.report["result"]["rows"].dump());
    c.output(emit_bss_virtual_psi(n, labels, nobjects, spread), "bss");
}

void cmd_tau1(Ctx& c) {
    BssData X = c.bss(0);
    Tau1Result t = tau1(SegalPrecategory(X.bis), c.budget);
    c.report["result"]["generators"] = t.gen_src.size();
    c.report["result"]["relations"] = t.relations.size();
    c.report["result"]["decided"] = t.decided;
    if (t.decided) {
        c.report["result"]["arrows"] = t.category->narrows();
        c.say("fundamental category: " + std::to_string(t.category->nobjects) +
              " objects, " + std::to_string(t.category->narrows()) + " arrows");
        FiniteCategory C = *t.category;
        if (C.name.empty()) C.name = "tau1";
        c.output(emit_cat(C), "cat");
    } else {
        c.say("presentation with " + std::to_string(t.gen_src.size()) +
              " generators (undecided)");
        c.exit_code = 1;
    }
}

void cmd_lift(Ctx& c) {
    SSetPtr A = c.sset(0), B = c.sset(1), X = c.sset(2), Y = c.sset(3);
    SMap i = pick_smap(c, A, B, "i-index");
    SMap f = pick_smap(c, X, Y, "f-index");
    SMap top = pick_smap(c, A, X, "top-index");
    SMap bottom = pick_smap(c, B, Y, "bottom-index");
    LiftingSquare sq(i, f, top, bottom);
    auto lifts = solve_lifting(sq, c.budget);
    c.report["result"]["lifts"] = lifts.size();
    Verdict v = lifts.empty()
                    ? Verdict::make_no("no-diagonal")
                    : Verdict::make_yes("diagonal-found",
                                        {{"count", lifts.size()}});
    c.verdict("lift-exists", v);
}

void cmd_rlp(Ctx& c) {
    SSetPtr A = c.sset(0), B = c.sset(1);
    SMap f = pick_smap(c, A, B, "f-index");
    GeneratorFamily fam;
    auto it = c.args.flags.find("family");
    if (it != c.args.flags.end() && it->second == "boundaries")
        fam.kind = GeneratorFamily::Boundaries;
    else if (it != c.args.flags.end() && it->second != "horns")
        throw CliError("--family must be horns or boundaries");
    fam.max_m = c.args.num("max-m", 2);
    RlpReport r = has_rlp(f, fam, c.budget);
    c.report["result"]["squares_checked"] = r.squares_checked;
    c.verdict("rlp(" + fam.describe() + ")", r.verdict);
}

void cmd_injective(Ctx& c) {
    BssData X = c.bss(0), Y = c.bss(1);
    int w = std::min(c.window(X.bis), c.window(Y.bis));
    BisMap f = pick_bismap(c, X.bis, Y.bis, w, "f-index");
    c.verdict("injective-fibration",
              injective_fibration_check(f, c.args.num("max-m", 2),
                                        c.args.num("max-n", 2), c.budget));
}

using Cmd = std::function<void(Ctx&)>;

const std::map<std::string, Cmd>& command_table() {
    static const std::map<std::string, Cmd> t = {
        {"build", cmd_build},
        {"corpus", cmd_corpus},
        {"hom", cmd_hom},
        {"product", cmd_product},
        {"pushout", cmd_pushout},
        {"iso", cmd_iso},
        {"skeleton", cmd_skeleton},
        {"pi0", cmd_pi0},
        {"homology", cmd_homology},
        {"kan", cmd_kan},
        {"we", cmd_we},
        {"cosk", cmd_cosk},
        {"matching", cmd_matching},
        {"mapspace", cmd_mapspace},
        {"reduce", cmd_reduce},
        {"gen", cmd_gen},
        {"fiber", cmd_fiber},
        {"spine", cmd_spine},
        {"segal-check", cmd_segal_check},
        {"ho", cmd_ho},
        {"complete-check", cmd_complete_check},
        {"dk-segal", cmd_dk_segal},
        {"discretize", cmd_discretize},
        {"phi", cmd_phi},
        {"strict-local", cmd_strict_local},
        {"nerve", cmd_nerve},
        {"ufunctor", cmd_ufunctor},
        {"pi0cat", cmd_pi0cat},
        {"equiv", cmd_equiv},
        {"dk-sc", cmd_dk_sc},
        {"freecat", cmd_freecat},
        {"psi", cmd_psi},
        {"tau1", cmd_tau1},
        {"lift", cmd_lift},
        {"rlp", cmd_rlp},
        {"injective", cmd_injective},
    };
    return t;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        Args args = Args::parse(argc, argv);
        auto it = command_table().find(args.cmd);
        if (it == command_table().end()) {
            std::string names;
            for (const auto& [k, _] : command_table()) names += " " + k;
            throw CliError("unknown subcommand '" + args.cmd + "'; available:" +
                           names);
        }
        Ctx ctx(std::move(args));
        json echo = json::array();
        for (int i = 0; i < argc; ++i) echo.push_back(argv[i]);
        ctx.report["command"] = echo;

        auto t0 = std::chrono::steady_clock::now();
        it->second(ctx);
        auto t1 = std::chrono::steady_clock::now();

        ctx.report["budget"] = {
            {"max_simplices", ctx.budget.max_simplices},
            {"max_dim", ctx.budget.max_dim},
            {"steps_used", ctx.budget.used()}};
        ctx.report["wall_ms"] =
            std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0)
                .count();

        if (ctx.args.json_mode)
            std::cout << ctx.report.dump(2) << "\n";
        else
            std::cout << ctx.text;
        return ctx.exit_code;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget error: " << e.what();
        if (e.dimension >= 0) std::cerr << " (dimension " << e.dimension << ")";
        std::cerr << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
