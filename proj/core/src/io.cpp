#include "fdesign/io.hpp"

#include <algorithm>
#include <map>

#include "fdesign/errors.hpp"

namespace fdesign {

namespace {

std::string at_key(const std::string& at, const std::string& key) { return at + "/" + key; }
std::string at_index(const std::string& at, std::size_t i) { return at + "/" + std::to_string(i); }

[[noreturn]] void fail(const std::string& at, const std::string& what) { throw JsonError(at.empty() ? "/" : at, what); }

const Json& field(const Json& j, const std::string& at, const char* key) {
    if (!j.is_object()) fail(at, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) fail(at, std::string("missing field \"") + key + "\"");
    return *it;
}

i64 as_int(const Json& j, const std::string& at) {
    if (!j.is_number_integer()) fail(at, "expected an integer");
    return j.get<i64>();
}

int as_small(const Json& j, const std::string& at, i64 lo = 0) {
    i64 v = as_int(j, at);
    if (v < lo || v > 2'000'000'000) fail(at, "integer out of range");
    return static_cast<int>(v);
}

const Json& as_array(const Json& j, const std::string& at) {
    if (!j.is_array()) fail(at, "expected an array");
    return j;
}

std::vector<i64> int_list(const Json& j, const std::string& at) {
    std::vector<i64> out;
    for (std::size_t i = 0; i < as_array(j, at).size(); ++i) out.push_back(as_int(j[i], at_index(at, i)));
    return out;
}

// Edge with vertex indices (or names when `names` is non-empty), checked
// against size r, range n and strict order.
VertexSet read_edge(const Json& j, const std::string& at, int r, int n, const std::map<std::string, int>& names) {
    as_array(j, at);
    if (static_cast<int>(j.size()) != r) fail(at, "edge has " + std::to_string(j.size()) + " vertices, expected " + std::to_string(r));
    VertexSet e;
    bool named = false;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const auto& x = j[i];
        if (x.is_string() && !names.empty()) {
            auto it = names.find(x.get<std::string>());
            if (it == names.end()) fail(at_index(at, i), "unknown vertex name");
            e.push_back(it->second);
            named = true;
        } else {
            i64 v = as_int(x, at_index(at, i));
            if (v < 0 || v >= n) fail(at_index(at, i), "vertex outside 0..n-1");
            e.push_back(static_cast<Vertex>(v));
        }
    }
    if (named) std::sort(e.begin(), e.end());
    for (std::size_t i = 1; i < e.size(); ++i) {
        if (e[i - 1] == e[i]) fail(at, "edge repeats a vertex");
        if (e[i - 1] > e[i]) fail(at, "edge is not sorted ascending");
    }
    return e;
}

struct RawGraph {
    int r = 0;
    int n = 0;
    std::vector<VertexSet> edges;
    std::vector<i64> mult;
    std::vector<std::string> names;
};

RawGraph read_graph(const Json& j, const std::string& at) {
    RawGraph g;
    g.r = as_small(field(j, at, "r"), at_key(at, "r"), 1);
    std::map<std::string, int> names;
    if (j.contains("vertices")) {
        const auto& vs = as_array(j["vertices"], at_key(at, "vertices"));
        for (std::size_t i = 0; i < vs.size(); ++i) {
            if (!vs[i].is_string()) fail(at_index(at_key(at, "vertices"), i), "vertex names must be strings");
            if (!names.emplace(vs[i].get<std::string>(), static_cast<int>(i)).second)
                fail(at_index(at_key(at, "vertices"), i), "duplicate vertex name");
            g.names.push_back(vs[i].get<std::string>());
        }
    }
    if (j.contains("n")) {
        g.n = as_small(j["n"], at_key(at, "n"));
        if (!names.empty() && g.n != static_cast<int>(names.size())) fail(at_key(at, "n"), "n differs from the number of names");
    } else if (!names.empty()) {
        g.n = static_cast<int>(names.size());
    } else {
        fail(at, "missing field \"n\"");
    }
    const std::string ea = at_key(at, "edges");
    const auto& edges = as_array(field(j, at, "edges"), ea);
    for (std::size_t i = 0; i < edges.size(); ++i) g.edges.push_back(read_edge(edges[i], at_index(ea, i), g.r, g.n, names));
    if (j.contains("mult")) {
        g.mult = int_list(j["mult"], at_key(at, "mult"));
        if (g.mult.size() != g.edges.size()) fail(at_key(at, "mult"), "mult must be parallel to edges");
        for (std::size_t i = 0; i < g.mult.size(); ++i)
            if (g.mult[i] < 0) fail(at_index(at_key(at, "mult"), i), "negative multiplicity");
    }
    return g;
}

Json vertex_list(const VertexSet& s) {
    Json a = Json::array();
    for (Vertex v : s) a.push_back(v);
    return a;
}

}  // namespace

Json parse_json(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        std::size_t line = 1, col = 1;
        const std::size_t upto = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
        for (std::size_t i = 0; i < upto; ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw JsonError(std::to_string(line) + ":" + std::to_string(col), "malformed JSON");
    }
}

Json to_json(const RGraph& g) {
    Json edges = Json::array();
    for (const auto& e : g) edges.push_back(vertex_list(e));
    return Json{{"r", g.r()}, {"n", g.n()}, {"edges", edges}};
}

Json to_json(const MultiRGraph& g) {
    Json edges = Json::array(), mult = Json::array();
    for (const auto& [e, m] : g) {
        edges.push_back(vertex_list(e));
        mult.push_back(m);
    }
    return Json{{"r", g.r()}, {"n", g.n()}, {"edges", edges}, {"mult", mult}};
}

RGraph hypergraph_from_json(const Json& j, const std::string& at) {
    RawGraph raw = read_graph(j, at);
    RGraph g(raw.r, raw.n);
    for (std::size_t i = 0; i < raw.edges.size(); ++i) {
        i64 m = raw.mult.empty() ? 1 : raw.mult[i];
        if (m == 0) continue;
        if (m != 1) fail(at_index(at_key(at, "mult"), i), "multigraph given where a simple r-graph is required");
        if (!g.insert(raw.edges[i])) fail(at_index(at_key(at, "edges"), i), "duplicate edge");
    }
    return g;
}

MultiRGraph multigraph_from_json(const Json& j, const std::string& at) {
    RawGraph raw = read_graph(j, at);
    MultiRGraph g(raw.r, raw.n);
    for (std::size_t i = 0; i < raw.edges.size(); ++i) g.add(raw.edges[i], raw.mult.empty() ? 1 : raw.mult[i]);
    return g;
}

Json to_json(const Packing& p) {
    Json copies = Json::array();
    for (const auto& c : p.copies) copies.push_back(Json{{"role_map", c.role_map}});
    return Json{{"pattern", to_json(p.pattern)}, {"host_n", p.host_n}, {"copies", copies}};
}

Packing packing_from_json(const Json& j, const std::string& at) {
    Packing p;
    p.pattern = hypergraph_from_json(field(j, at, "pattern"), at_key(at, "pattern"));
    p.host_n = as_small(field(j, at, "host_n"), at_key(at, "host_n"));
    const std::string ca = at_key(at, "copies");
    const auto& copies = as_array(field(j, at, "copies"), ca);
    for (std::size_t i = 0; i < copies.size(); ++i) {
        const std::string ci = at_index(ca, i);
        const Json& rm = copies[i].is_array() ? copies[i] : field(copies[i], ci, "role_map");
        const std::string ra = copies[i].is_array() ? ci : at_key(ci, "role_map");
        auto vals = int_list(rm, ra);
        if (static_cast<int>(vals.size()) != p.pattern.n()) fail(ra, "role map must have one entry per pattern vertex");
        Embedding e;
        for (std::size_t t = 0; t < vals.size(); ++t) {
            if (vals[t] < 0 || vals[t] >= p.host_n) fail(at_index(ra, t), "host vertex outside 0..host_n-1");
            e.role_map.push_back(static_cast<Vertex>(vals[t]));
        }
        p.copies.push_back(std::move(e));
    }
    return p;
}

Json to_json(const SetFunction& phi) {
    Json values = Json::array();
    for (const auto& [s, v] : phi.values()) values.push_back(Json::array({vertex_list(s), v}));
    return Json{{"n", phi.n()}, {"r", phi.r()}, {"values", values}};
}

SetFunction set_function_from_json(const Json& j, const std::string& at) {
    const int r = as_small(field(j, at, "r"), at_key(at, "r"));
    const int n = as_small(field(j, at, "n"), at_key(at, "n"));
    SetFunction phi(r, n);
    const std::string va = at_key(at, "values");
    const auto& values = as_array(field(j, at, "values"), va);
    std::map<VertexSet, bool> seen;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const std::string vi = at_index(va, i);
        if (!values[i].is_array() || values[i].size() != 2) fail(vi, "expected [set, value]");
        VertexSet s = read_edge(values[i][0], at_index(vi, 0), r, n, {});
        if (seen[s]) fail(vi, "set listed twice");
        seen[s] = true;
        phi.set(s, as_int(values[i][1], at_index(vi, 1)));
    }
    return phi;
}

Json to_json(const ResolvableDecomposition& d) {
    Json classes = Json::array();
    for (const auto& cls : d.classes) {
        Json c = Json::array();
        for (const auto& q : cls) c.push_back(vertex_list(q));
        classes.push_back(c);
    }
    return Json{{"q", d.q}, {"f", d.f}, {"r", d.r}, {"vertex_encoding", "part * q + element"}, {"classes", classes}};
}

ResolvableDecomposition resolvable_from_json(const Json& j, const std::string& at) {
    ResolvableDecomposition d;
    d.q = as_small(field(j, at, "q"), at_key(at, "q"), 1);
    d.f = as_small(field(j, at, "f"), at_key(at, "f"), 1);
    d.r = as_small(field(j, at, "r"), at_key(at, "r"), 1);
    if (static_cast<i64>(d.q) * d.f > 2'000'000'000) fail(at, "q * f too large");
    const std::string ca = at_key(at, "classes");
    const auto& classes = as_array(field(j, at, "classes"), ca);
    for (std::size_t i = 0; i < classes.size(); ++i) {
        const std::string ci = at_index(ca, i);
        const auto& cls = as_array(classes[i], ci);
        std::vector<VertexSet> out;
        for (std::size_t t = 0; t < cls.size(); ++t) out.push_back(read_edge(cls[t], at_index(ci, t), d.f, d.q * d.f, {}));
        d.classes.push_back(std::move(out));
    }
    return d;
}

Json to_json(const Regularisation& reg) {
    Json perms = Json::array();
    for (const auto& p : reg.permutation_table) perms.push_back(p);
    return Json{{"f", to_json(reg.f)},
                {"q", reg.q},
                {"s", reg.s},
                {"fstar", to_json(reg.fstar)},
                {"decomposition", to_json(reg.decomposition)},
                {"permutations", perms}};
}

Json to_json(const FDecomposition& fd) {
    return Json{{"fstar", to_json(fd.fstar)}, {"decomposition", to_json(fd.decomposition)}};
}

FDecomposition fdecomposition_from_json(const Json& j, const std::string& at) {
    FDecomposition fd;
    fd.fstar = hypergraph_from_json(field(j, at, "fstar"), at_key(at, "fstar"));
    fd.decomposition = packing_from_json(field(j, at, "decomposition"), at_key(at, "decomposition"));
    if (fd.decomposition.host_n != fd.fstar.n()) fail(at_key(at, "decomposition"), "host_n differs from |V(F*)|");
    return fd;
}

DivVector div_vector_from_json(const Json& j, const std::string& at) {
    auto v = int_list(j, at);
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] <= 0) fail(at_index(at, i), "moduli must be positive");
    return v;
}

Json to_json(const Balancer& b) {
    Json tuples = Json::array();
    for (const auto& [x, m] : b.tuples) tuples.push_back(Json{{"x", x}, {"mult", m}});
    return Json{{"k", b.k},          {"r", b.r},         {"b", b.b},
                {"u", b.u},          {"tuples", tuples}, {"size", b.size()},
                {"delta", b.delta}, {"delta_bound", b.delta_bound}};
}

Balancer balancer_from_json(const Json& j, const std::string& at) {
    const int k = as_small(field(j, at, "k"), at_key(at, "k"), 1);
    const int r = as_small(field(j, at, "r"), at_key(at, "r"), 2);
    DivVector b = div_vector_from_json(field(j, at, "b"), at_key(at, "b"));
    auto u64 = int_list(field(j, at, "u"), at_key(at, "u"));
    std::vector<Vertex> u;
    for (std::size_t i = 0; i < u64.size(); ++i) {
        if (u64[i] < 0 || u64[i] > 2'000'000'000) fail(at_index(at_key(at, "u"), i), "vertex out of range");
        u.push_back(static_cast<Vertex>(u64[i]));
    }
    // Rebuilding is deterministic, so the stored tuples only serve as a check.
    Balancer out;
    try {
        out = balancer(u, k, b, r);
    } catch (const std::invalid_argument& e) {
        fail(at, e.what());
    }
    if (j.contains("tuples")) {
        std::map<AdapterTuple, i64> stored;
        const std::string ta = at_key(at, "tuples");
        const auto& tuples = as_array(j["tuples"], ta);
        for (std::size_t i = 0; i < tuples.size(); ++i) {
            const std::string ti = at_index(ta, i);
            auto x = int_list(field(tuples[i], ti, "x"), at_key(ti, "x"));
            AdapterTuple t(x.begin(), x.end());
            stored[t] += as_int(field(tuples[i], ti, "mult"), at_key(ti, "mult"));
        }
        if (stored != out.tuples) fail(ta, "tuples differ from the construction for this U, k, b and r");
    }
    return out;
}

Json to_json(const Multishifter& m) {
    Json s = Json::array();
    for (const auto& x : m.s_star) s.push_back(vertex_list(x));
    return Json{{"k", m.k},
                {"graph", to_json(m.graph)},
                {"decomposition", to_json(m.decomposition)},
                {"roots", m.roots},
                {"s_star", s},
                {"s_star_degree", m.s_star_degree},
                {"coefficients", m.coefficients},
                {"target", m.target},
                {"modulus", m.modulus}};
}

Json to_json(const Shifter& s) {
    return Json{{"k", s.k},
                {"graph", to_json(s.graph)},
                {"decomposition", to_json(s.decomposition)},
                {"roots", s.roots},
                {"order", s.order},
                {"degeneracy", s.degeneracy},
                {"degeneracy_bound", s.degeneracy_bound},
                {"coefficients", s.coefficients}};
}

Shifter shifter_from_json(const Json& j, const std::string& at) {
    Shifter s;
    s.k = as_small(field(j, at, "k"), at_key(at, "k"), 1);
    s.graph = hypergraph_from_json(field(j, at, "graph"), at_key(at, "graph"));
    s.decomposition = packing_from_json(field(j, at, "decomposition"), at_key(at, "decomposition"));
    auto roots = int_list(field(j, at, "roots"), at_key(at, "roots"));
    if (static_cast<int>(roots.size()) != 2 * s.k) fail(at_key(at, "roots"), "need 2k roots");
    for (std::size_t i = 0; i < roots.size(); ++i) {
        if (roots[i] < 0 || roots[i] >= s.graph.n()) fail(at_index(at_key(at, "roots"), i), "root outside the graph");
        s.roots.push_back(static_cast<Vertex>(roots[i]));
    }
    if (j.contains("order"))
        for (i64 v : int_list(j["order"], at_key(at, "order"))) s.order.push_back(static_cast<Vertex>(v));
    if (j.contains("coefficients")) s.coefficients = int_list(j["coefficients"], at_key(at, "coefficients"));
    if (j.contains("degeneracy")) s.degeneracy = as_int(j["degeneracy"], at_key(at, "degeneracy"));
    if (j.contains("degeneracy_bound")) s.degeneracy_bound = as_int(j["degeneracy_bound"], at_key(at, "degeneracy_bound"));
    return s;
}

}  // namespace fdesign
