#include "segalkit/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <tuple>

#include "segalkit/segal.hpp"

namespace sk {

namespace {

std::string ref_str(const Ref& r) {
    std::string out = std::to_string(r.id);
    if (!r.word.empty()) {
        out += " s[";
        for (std::size_t k = 0; k < r.word.size(); ++k) {
            if (k) out += ",";
            out += std::to_string(r.word[k]);
        }
        out += "]";
    }
    return out;
}

// One tokenized line of input.
struct Line {
    int no;
    std::vector<std::string> toks;
};

struct Lexer {
    std::vector<Line> lines;
    std::size_t pos = 0;

    explicit Lexer(const std::string& text) {
        std::istringstream in(text);
        std::string raw;
        int no = 0;
        while (std::getline(in, raw)) {
            ++no;
            auto hash = raw.find('#');
            if (hash != std::string::npos) raw.erase(hash);
            std::istringstream ls(raw);
            Line l{no, {}};
            std::string t;
            while (ls >> t) l.toks.push_back(t);
            if (!l.toks.empty()) lines.push_back(std::move(l));
        }
    }

    bool done() const { return pos >= lines.size(); }
    const Line& peek() const {
        if (done()) throw ParseError(lines.empty() ? 0 : lines.back().no + 1,
                                     "unexpected end of input");
        return lines[pos];
    }
    Line next() {
        Line l = peek();
        ++pos;
        return l;
    }
    int last_line() const { return lines.empty() ? 0 : lines.back().no; }
};

int to_int(const Line& l, const std::string& t) {
    try {
        std::size_t used = 0;
        int v = std::stoi(t, &used);
        if (used != t.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw ParseError(l.no, "expected an integer, got '" + t + "'");
    }
}

void expect(const Line& l, std::size_t i, const std::string& what) {
    if (i >= l.toks.size() || l.toks[i] != what)
        throw ParseError(l.no, "expected '" + what + "'");
}

void expect_len(const Line& l, std::size_t n) {
    if (l.toks.size() != n)
        throw ParseError(l.no, "expected " + std::to_string(n) +
                                   " tokens, got " +
                                   std::to_string(l.toks.size()));
}

// `<id>` optionally followed by `s[j1,j2,...]`; consumes 1 or 2 tokens.
Ref parse_ref(const Line& l, std::size_t& i) {
    if (i >= l.toks.size()) throw ParseError(l.no, "expected a simplex reference");
    Ref r;
    r.id = to_int(l, l.toks[i++]);
    if (i < l.toks.size() && l.toks[i].rfind("s[", 0) == 0) {
        const std::string& t = l.toks[i++];
        if (t.back() != ']') throw ParseError(l.no, "unterminated degeneracy word");
        std::string body = t.substr(2, t.size() - 3);
        std::istringstream bs(body);
        std::string piece;
        int prev = -1;
        while (std::getline(bs, piece, ',')) {
            int j = to_int(l, piece);
            if (j <= prev)
                throw ParseError(l.no, "degeneracy word not strictly increasing");
            r.word.push_back(j);
            prev = j;
        }
        if (r.word.empty()) throw ParseError(l.no, "empty degeneracy word");
    }
    return r;
}

// Face lookup over a raw simplex table, used to check the simplicial
// identities before an SSet is constructed.
Ref table_face(const std::vector<Simplex>& simps, const Ref& r, int i) {
    if (r.word.empty()) return simps[r.id].faces[i];
    int j = r.word.back();
    Ref inner{r.id, Word(r.word.begin(), r.word.end() - 1)};
    if (i == j || i == j + 1) return inner;
    if (i < j) return push_degeneracy(table_face(simps, inner, i), j - 1);
    return push_degeneracy(table_face(simps, inner, i - 1), j);
}

struct SsetBlock {
    std::string name;
    SSetPtr s;
    int header_line = 0;
};

SsetBlock parse_sset_block(Lexer& lx) {
    Line h = lx.next();
    expect(h, 0, "sset");
    expect_len(h, 2);
    SsetBlock out;
    out.name = h.toks[1];
    out.header_line = h.no;

    std::vector<Simplex> simps;
    std::vector<int> decl_line;
    std::vector<std::vector<int>> face_line;  // per simplex, per index
    while (!lx.done() && (lx.peek().toks[0] == "simplex" ||
                          lx.peek().toks[0] == "face")) {
        Line l = lx.next();
        if (l.toks[0] == "simplex") {
            expect_len(l, 4);
            expect(l, 2, "dim");
            int id = to_int(l, l.toks[1]);
            if (id != static_cast<int>(simps.size()))
                throw ParseError(l.no, "simplex ids must be consecutive from 0");
            int d = to_int(l, l.toks[3]);
            if (d < 0) throw ParseError(l.no, "negative dimension");
            Simplex s;
            s.dim = d;
            s.faces.assign(d == 0 ? 0 : d + 1, Ref{-1, {}});
            simps.push_back(std::move(s));
            decl_line.push_back(l.no);
            face_line.emplace_back(d == 0 ? 0 : d + 1, -1);
        } else {
            if (l.toks.size() < 5) throw ParseError(l.no, "malformed face line");
            int id = to_int(l, l.toks[1]);
            if (id < 0 || id >= static_cast<int>(simps.size()))
                throw ParseError(l.no, "face of undeclared simplex");
            int i = to_int(l, l.toks[2]);
            if (i < 0 || i >= static_cast<int>(simps[id].faces.size()))
                throw ParseError(l.no, "face index out of range");
            expect(l, 3, "=");
            std::size_t p = 4;
            Ref r = parse_ref(l, p);
            if (p != l.toks.size()) throw ParseError(l.no, "trailing tokens");
            if (face_line[id][i] != -1)
                throw ParseError(l.no, "duplicate face line");
            simps[id].faces[i] = r;
            face_line[id][i] = l.no;
        }
    }

    int n = static_cast<int>(simps.size());
    for (int id = 0; id < n; ++id)
        for (std::size_t i = 0; i < simps[id].faces.size(); ++i) {
            if (face_line[id][i] == -1)
                throw ParseError(decl_line[id], "simplex " + std::to_string(id) +
                                                    ": missing face " +
                                                    std::to_string(i));
            const Ref& f = simps[id].faces[i];
            if (f.id < 0 || f.id >= n)
                throw ParseError(face_line[id][i], "dangling face reference");
            int fd = simps[f.id].dim + static_cast<int>(f.word.size());
            if (fd != simps[id].dim - 1)
                throw ParseError(face_line[id][i], "face of wrong dimension");
        }
    // d_i d_j = d_{j-1} d_i for i < j
    for (int id = 0; id < n; ++id) {
        const Simplex& s = simps[id];
        for (int j = 1; j <= s.dim && s.dim >= 2; ++j)
            for (int i = 0; i < j; ++i)
                if (table_face(simps, s.faces[j], i) !=
                    table_face(simps, s.faces[i], j - 1))
                    throw ParseError(decl_line[id],
                                     "simplicial identity fails at simplex " +
                                         std::to_string(id) +
                                         " (i=" + std::to_string(i) +
                                         ", j=" + std::to_string(j) + ")");
    }
    try {
        out.s = SSet::make(out.name, std::move(simps));
    } catch (const InvalidParameter& e) {
        throw ParseError(out.header_line, e.what());
    }
    return out;
}

void emit_sset_to(std::ostringstream& out, const SSet& X) {
    out << "sset " << (X.name().empty() ? std::string("unnamed") : X.name())
        << "\n";
    for (int id = 0; id < X.size(); ++id) {
        int d = X.dim_of(id);
        out << "simplex " << id << " dim " << d << "\n";
        for (int i = 0; i <= d && d > 0; ++i)
            out << "face " << id << " " << i << " = "
                << ref_str(X.faces_of(id)[i]) << "\n";
    }
}

// Rows plus generator operators of a stored document.
struct StoredBis {
    std::vector<SSetPtr> rows;
    // faces[n][i] : row n -> row n-1, degens[n][i] : row n -> row n+1
    std::vector<std::vector<SMap>> faces, degens;
};

}  // namespace

std::string emit_sset(const SSet& X) {
    std::ostringstream out;
    emit_sset_to(out, X);
    return out.str();
}

SSetPtr parse_sset(const std::string& text) {
    Lexer lx(text);
    SsetBlock b = parse_sset_block(lx);
    if (!lx.done()) throw ParseError(lx.peek().no, "trailing content");
    return b.s;
}

std::string emit_bss(const BisimPtr& X, int window, bool discrete0) {
    if (window < 0) throw InvalidParameter("emit_bss: negative window");
    std::ostringstream out;
    out << "bss " << (X->name().empty() ? std::string("unnamed") : X->name())
        << " rows " << window + 1;
    if (discrete0) out << " discrete0";
    out << "\n";
    for (int n = 0; n <= window; ++n) emit_sset_to(out, *X->row(n));
    for (int n = 1; n <= window; ++n)
        for (int i = 0; i <= n; ++i) {
            SMap d = X->face_op(n, i);
            out << "op d" << i << " : " << n << " -> " << n - 1 << "\n";
            for (int id = 0; id < d.src()->size(); ++id)
                out << "map " << id << " = " << ref_str(d.apply(id)) << "\n";
        }
    for (int n = 0; n + 1 <= window; ++n)
        for (int i = 0; i <= n; ++i) {
            SMap s = X->degen_op(n, i);
            out << "op s" << i << " : " << n << " -> " << n + 1 << "\n";
            for (int id = 0; id < s.src()->size(); ++id)
                out << "map " << id << " = " << ref_str(s.apply(id)) << "\n";
        }
    return out.str();
}

std::string emit_bss_virtual(const std::string& rule, const SSetPtr& base) {
    if (rule != "constant" && rule != "transpose" && rule != "cosk0")
        throw InvalidParameter("emit_bss_virtual: unknown rule " + rule);
    std::ostringstream out;
    out << "bss-virtual " << rule << "\n";
    emit_sset_to(out, *base);
    return out.str();
}

std::string emit_bss_virtual_psi(int n, const std::vector<int>& labels,
                                 int nobjects, int spread) {
    std::ostringstream out;
    out << "bss-virtual psi " << n << " " << nobjects << " " << spread
        << " labels";
    for (int l : labels) out << " " << l;
    out << "\n";
    return out.str();
}

BssData parse_bss(const std::string& text) {
    Lexer lx(text);
    Line h = lx.next();
    BssData out;
    if (h.toks[0] == "bss-virtual") {
        if (h.toks.size() < 2) throw ParseError(h.no, "missing virtual rule");
        out.virtual_rule = h.toks[1];
        if (out.virtual_rule == "constant" || out.virtual_rule == "transpose" ||
            out.virtual_rule == "cosk0") {
            expect_len(h, 2);
            SsetBlock b = parse_sset_block(lx);
            out.name = b.name;
            if (out.virtual_rule == "constant")
                out.bis = std::make_shared<ConstantBis>(b.s, b.name);
            else if (out.virtual_rule == "transpose")
                out.bis = std::make_shared<TransposeBis>(b.s, b.name);
            else
                out.bis = std::make_shared<Cosk0Bis>(b.s, Budget{}, b.name);
        } else if (out.virtual_rule == "psi") {
            if (h.toks.size() < 6) throw ParseError(h.no, "malformed psi rule");
            int n = to_int(h, h.toks[2]);
            int nobjects = to_int(h, h.toks[3]);
            int spread = to_int(h, h.toks[4]);
            expect(h, 5, "labels");
            std::vector<int> labels;
            for (std::size_t i = 6; i < h.toks.size(); ++i)
                labels.push_back(to_int(h, h.toks[i]));
            try {
                out.bis = std::make_shared<PsiBis>(n, labels, nobjects, spread);
            } catch (const InvalidParameter& e) {
                throw ParseError(h.no, e.what());
            }
            out.name = "psi";
            out.discrete0 = true;
        } else {
            throw ParseError(h.no, "unknown virtual rule '" + out.virtual_rule +
                                       "'");
        }
        if (!lx.done()) throw ParseError(lx.peek().no, "trailing content");
        return out;
    }

    expect(h, 0, "bss");
    if (h.toks.size() < 4 || h.toks.size() > 5)
        throw ParseError(h.no, "malformed bss header");
    out.name = h.toks[1];
    expect(h, 2, "rows");
    out.rows = to_int(h, h.toks[3]);
    if (out.rows < 1) throw ParseError(h.no, "need at least one row");
    if (h.toks.size() == 5) {
        expect(h, 4, "discrete0");
        out.discrete0 = true;
    }

    auto data = std::make_shared<StoredBis>();
    for (int n = 0; n < out.rows; ++n)
        data->rows.push_back(parse_sset_block(lx).s);
    if (out.discrete0 && data->rows[0]->top_dim() > 0)
        throw ParseError(h.no, "discrete0 document has a non-discrete row 0");

    data->faces.resize(out.rows);
    data->degens.resize(out.rows);
    for (int n = 1; n < out.rows; ++n)
        data->faces[n].resize(n + 1);
    for (int n = 0; n + 1 < out.rows; ++n)
        data->degens[n].resize(n + 1);
    std::vector<std::vector<bool>> fseen(out.rows), sseen(out.rows);
    for (int n = 1; n < out.rows; ++n) fseen[n].assign(n + 1, false);
    for (int n = 0; n + 1 < out.rows; ++n) sseen[n].assign(n + 1, false);

    while (!lx.done()) {
        Line l = lx.next();
        expect(l, 0, "op");
        expect_len(l, 6);  // op d0 : 2 -> 1
        expect(l, 2, ":");
        expect(l, 4, "->");
        const std::string& gen = l.toks[1];
        if (gen.size() < 2 || (gen[0] != 'd' && gen[0] != 's'))
            throw ParseError(l.no, "unknown generator '" + gen + "'");
        bool is_face = gen[0] == 'd';
        int i = to_int(l, gen.substr(1));
        int from = to_int(l, l.toks[3]);
        int to = to_int(l, l.toks[5]);
        if (from < 0 || from >= out.rows || to != from + (is_face ? -1 : 1) ||
            to < 0 || to >= out.rows || i < 0 || i > from)
            throw ParseError(l.no, "op endpoints out of range");

        std::vector<Ref> assign(data->rows[from]->size(), Ref{-1, {}});
        std::vector<bool> seen(assign.size(), false);
        while (!lx.done() && lx.peek().toks[0] == "map") {
            Line m = lx.next();
            if (m.toks.size() < 4) throw ParseError(m.no, "malformed map line");
            int id = to_int(m, m.toks[1]);
            if (id < 0 || id >= static_cast<int>(assign.size()))
                throw ParseError(m.no, "map source out of range");
            if (seen[id]) throw ParseError(m.no, "duplicate map line");
            expect(m, 2, "=");
            std::size_t p = 3;
            assign[id] = parse_ref(m, p);
            if (p != m.toks.size()) throw ParseError(m.no, "trailing tokens");
            seen[id] = true;
        }
        for (std::size_t id = 0; id < seen.size(); ++id)
            if (!seen[id])
                throw ParseError(l.no, "missing map value for simplex " +
                                           std::to_string(id));
        SMap sm;
        try {
            sm = SMap(data->rows[from], data->rows[to], std::move(assign));
        } catch (const InvalidParameter& e) {
            throw ParseError(l.no, e.what());
        }
        if (is_face) {
            if (fseen[from][i]) throw ParseError(l.no, "duplicate operator");
            data->faces[from][i] = std::move(sm);
            fseen[from][i] = true;
        } else {
            if (from + 1 >= out.rows)
                throw ParseError(l.no, "degeneracy leaves the stored window");
            if (sseen[from][i]) throw ParseError(l.no, "duplicate operator");
            data->degens[from][i] = std::move(sm);
            sseen[from][i] = true;
        }
    }
    for (int n = 1; n < out.rows; ++n)
        for (int i = 0; i <= n; ++i)
            if (!fseen[n][i])
                throw ParseError(h.no, "missing operator d" + std::to_string(i) +
                                           " on row " + std::to_string(n));
    for (int n = 0; n + 1 < out.rows; ++n)
        for (int i = 0; i <= n; ++i)
            if (!sseen[n][i])
                throw ParseError(h.no, "missing operator s" + std::to_string(i) +
                                           " on row " + std::to_string(n));

    int bound = out.rows - 1;
    auto row_fn = [data](int n) { return data->rows.at(n); };
    auto face_fn = [data](const Bisim&, int n, int i) {
        return data->faces.at(n).at(i);
    };
    auto degen_fn = [data](const Bisim&, int n, int i) {
        return data->degens.at(n).at(i);
    };
    out.bis = std::make_shared<CallbackBis>(row_fn, face_fn, degen_fn, out.name,
                                            bound);
    try {
        check_operator_functoriality(out.bis, bound);
    } catch (const InvalidParameter& e) {
        throw ParseError(h.no, e.what());
    }
    if (!lx.done()) throw ParseError(lx.peek().no, "trailing content");
    return out;
}

std::string emit_cat(const FiniteCategory& C) {
    std::ostringstream out;
    out << "cat " << (C.name.empty() ? std::string("unnamed") : C.name) << "\n";
    for (int x = 0; x < C.nobjects; ++x) out << "object " << x << "\n";
    for (int f = 0; f < C.narrows(); ++f)
        out << "arrow " << f << " : " << C.arrow_src[f] << " -> "
            << C.arrow_dst[f] << "\n";
    for (int x = 0; x < C.nobjects; ++x)
        out << "id " << x << " = " << C.identity[x] << "\n";
    for (int g = 0; g < C.narrows(); ++g)
        for (int f = 0; f < C.narrows(); ++f)
            if (C.composable(g, f))
                out << "compose " << g << " " << f << " = " << C.table[g][f]
                    << "\n";
    return out.str();
}

FiniteCategory parse_cat(const std::string& text) {
    Lexer lx(text);
    Line h = lx.next();
    expect(h, 0, "cat");
    expect_len(h, 2);
    FiniteCategory C;
    C.name = h.toks[1];
    bool sized = false;
    auto finish_decls = [&]() {
        if (sized) return;
        C.identity.assign(C.nobjects, -1);
        C.table.assign(C.narrows(), std::vector<int>(C.narrows(), -1));
        sized = true;
    };
    while (!lx.done()) {
        Line l = lx.next();
        const std::string& kw = l.toks[0];
        if (kw == "object") {
            if (sized) throw ParseError(l.no, "object after id/compose lines");
            expect_len(l, 2);
            if (to_int(l, l.toks[1]) != C.nobjects)
                throw ParseError(l.no, "object ids must be consecutive from 0");
            ++C.nobjects;
        } else if (kw == "arrow") {
            if (sized) throw ParseError(l.no, "arrow after id/compose lines");
            expect_len(l, 6);  // arrow 2 : 0 -> 1
            if (to_int(l, l.toks[1]) != C.narrows())
                throw ParseError(l.no, "arrow ids must be consecutive from 0");
            expect(l, 2, ":");
            expect(l, 4, "->");
            int s = to_int(l, l.toks[3]);
            int t = to_int(l, l.toks[5]);
            if (s < 0 || s >= C.nobjects || t < 0 || t >= C.nobjects)
                throw ParseError(l.no, "arrow endpoint out of range");
            C.arrow_src.push_back(s);
            C.arrow_dst.push_back(t);
        } else if (kw == "id") {
            finish_decls();
            expect_len(l, 4);  // id 0 = 0
            expect(l, 2, "=");
            int x = to_int(l, l.toks[1]);
            int f = to_int(l, l.toks[3]);
            if (x < 0 || x >= C.nobjects)
                throw ParseError(l.no, "object out of range");
            if (f < 0 || f >= C.narrows())
                throw ParseError(l.no, "arrow out of range");
            C.identity[x] = f;
        } else if (kw == "compose") {
            finish_decls();
            expect_len(l, 5);  // compose g f = h
            expect(l, 3, "=");
            int g = to_int(l, l.toks[1]);
            int f = to_int(l, l.toks[2]);
            int v = to_int(l, l.toks[4]);
            if (g < 0 || g >= C.narrows() || f < 0 || f >= C.narrows() ||
                v < 0 || v >= C.narrows())
                throw ParseError(l.no, "arrow out of range");
            if (!C.composable(g, f))
                throw ParseError(l.no, "pair is not composable");
            C.table[g][f] = v;
        } else {
            throw ParseError(l.no, "unexpected '" + kw + "'");
        }
    }
    finish_decls();
    try {
        C.validate();
    } catch (const InvalidParameter& e) {
        throw ParseError(h.no, e.what());
    }
    return C;
}

std::string emit_scat(const FiniteSimplicialCategory& C) {
    std::ostringstream out;
    out << "scat " << (C.name.empty() ? std::string("unnamed") : C.name)
        << " objects " << C.nobjects << "\n";
    for (int x = 0; x < C.nobjects; ++x)
        out << "id " << x << " = " << C.identity_vertex[x] << "\n";
    int dmax = 0;
    for (int x = 0; x < C.nobjects; ++x)
        for (int y = 0; y < C.nobjects; ++y)
            dmax = std::max(dmax, C.hom[x][y]->top_dim());
    for (int x = 0; x < C.nobjects; ++x)
        for (int y = 0; y < C.nobjects; ++y) {
            out << "hom " << x << " " << y << "\n";
            emit_sset_to(out, *C.hom[x][y]);
        }
    for (int x = 0; x < C.nobjects; ++x)
        for (int y = 0; y < C.nobjects; ++y)
            for (int z = 0; z < C.nobjects; ++z)
                for (int d = 0; d <= dmax; ++d) {
                    auto gs = C.hom[y][z]->all_refs(d);
                    auto fs = C.hom[x][y]->all_refs(d);
                    if (gs.empty() || fs.empty()) continue;
                    out << "comp " << x << " " << y << " " << z << " dim " << d
                        << "\n";
                    for (std::size_t gi = 0; gi < gs.size(); ++gi)
                        for (std::size_t fi = 0; fi < fs.size(); ++fi)
                            out << "entry " << gi << " " << fi << " = "
                                << ref_str(C.compose_refs(x, y, z, gs[gi],
                                                          fs[fi]))
                                << "\n";
                }
    return out.str();
}

FiniteSimplicialCategory parse_scat(const std::string& text) {
    Lexer lx(text);
    Line h = lx.next();
    expect(h, 0, "scat");
    expect_len(h, 4);
    expect(h, 2, "objects");
    std::string name = h.toks[1];
    int k = to_int(h, h.toks[3]);
    if (k < 0) throw ParseError(h.no, "negative object count");

    std::vector<int> idv(k, -1);
    std::vector<std::vector<SSetPtr>> hom(k, std::vector<SSetPtr>(k));
    // (x, y, z, d, gi, fi) -> composite
    std::map<std::tuple<int, int, int, int, int, int>, Ref> table;
    while (!lx.done()) {
        Line l = lx.next();
        const std::string& kw = l.toks[0];
        if (kw == "id") {
            expect_len(l, 4);
            expect(l, 2, "=");
            int x = to_int(l, l.toks[1]);
            if (x < 0 || x >= k) throw ParseError(l.no, "object out of range");
            idv[x] = to_int(l, l.toks[3]);
        } else if (kw == "hom") {
            expect_len(l, 3);
            int x = to_int(l, l.toks[1]), y = to_int(l, l.toks[2]);
            if (x < 0 || x >= k || y < 0 || y >= k)
                throw ParseError(l.no, "object out of range");
            hom[x][y] = parse_sset_block(lx).s;
        } else if (kw == "comp") {
            expect_len(l, 6);
            expect(l, 4, "dim");
            int x = to_int(l, l.toks[1]), y = to_int(l, l.toks[2]),
                z = to_int(l, l.toks[3]), d = to_int(l, l.toks[5]);
            if (x < 0 || x >= k || y < 0 || y >= k || z < 0 || z >= k)
                throw ParseError(l.no, "object out of range");
            while (!lx.done() && lx.peek().toks[0] == "entry") {
                Line e = lx.next();
                if (e.toks.size() < 5) throw ParseError(e.no, "malformed entry");
                int gi = to_int(e, e.toks[1]), fi = to_int(e, e.toks[2]);
                expect(e, 3, "=");
                std::size_t p = 4;
                Ref r = parse_ref(e, p);
                if (p != e.toks.size()) throw ParseError(e.no, "trailing tokens");
                table[{x, y, z, d, gi, fi}] = r;
            }
        } else {
            throw ParseError(l.no, "unexpected '" + kw + "'");
        }
    }
    for (int x = 0; x < k; ++x) {
        if (idv[x] < 0) throw ParseError(h.no, "missing identity vertex for " +
                                                   std::to_string(x));
        for (int y = 0; y < k; ++y)
            if (!hom[x][y])
                throw ParseError(h.no, "missing hom block " + std::to_string(x) +
                                           " " + std::to_string(y));
    }
    auto homs = std::make_shared<std::vector<std::vector<SSetPtr>>>(hom);
    auto tbl = std::make_shared<
        std::map<std::tuple<int, int, int, int, int, int>, Ref>>(
        std::move(table));
    auto compose = [homs, tbl](int x, int y, int z, const Ref& g,
                               const Ref& f) -> Ref {
        const SSetPtr& gh = (*homs)[y][z];
        const SSetPtr& fh = (*homs)[x][y];
        int d = gh->ref_dim(g);
        auto gs = gh->all_refs(d);
        auto fs = fh->all_refs(d);
        auto gi = std::find(gs.begin(), gs.end(), g) - gs.begin();
        auto fi = std::find(fs.begin(), fs.end(), f) - fs.begin();
        auto it = tbl->find({x, y, z, d, static_cast<int>(gi),
                             static_cast<int>(fi)});
        if (it == tbl->end())
            throw InvalidParameter("composition table is incomplete");
        return it->second;
    };
    try {
        return make_scat(name, k, std::move(hom), std::move(idv), compose);
    } catch (const InvalidParameter& e) {
        throw ParseError(h.no, e.what());
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidParameter("cannot open " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidParameter("cannot open " + path + " for writing");
    out << text;
    out.close();
    if (!out) throw InvalidParameter("write to " + path + " failed");
}

}  // namespace sk
