#include <doctest.h>

#include <string>

#include "fdesign/balancer.hpp"
#include "fdesign/catalog.hpp"
#include "fdesign/io.hpp"
#include "fdesign/partite.hpp"
#include "fdesign/regularise.hpp"
#include "fdesign/shifter.hpp"

using namespace fdesign;

namespace {

std::string where_of(const std::string& text) {
    try {
        hypergraph_from_json(parse_json(text));
    } catch (const JsonError& e) {
        return e.where();
    }
    return "no error";
}

}  // namespace

TEST_CASE("hypergraph round trips") {
    for (const RGraph& g : {fano_plane(), octahedron(), complete_graph(2, 5), RGraph(3, 4)}) {
        CHECK(hypergraph_from_json(to_json(g)) == g);
        CHECK(hypergraph_from_json(parse_json(to_json(g).dump())) == g);
    }
    MultiRGraph m(2, 4);
    m.add({0, 1}, 3);
    m.add({2, 3});
    CHECK(multigraph_from_json(to_json(m)) == m);
    CHECK(multigraph_from_json(to_json(fano_plane())) == MultiRGraph(fano_plane()));
}

TEST_CASE("named vertices") {
    RGraph g = hypergraph_from_json(parse_json(R"({"r":2,"vertices":["a","b","c"],"edges":[["c","a"],["a","b"]]})"));
    CHECK(g.n() == 3);
    CHECK(g.contains({0, 2}));
    CHECK(g.contains({0, 1}));
    CHECK(where_of(R"({"r":2,"vertices":["a","a"],"edges":[]})") == "/vertices/1");
    CHECK(where_of(R"({"r":2,"vertices":["a","b"],"edges":[["a","z"]]})").rfind("/edges/0", 0) == 0);
}

TEST_CASE("error locations") {
    try {
        parse_json("{\"r\": 2,\n \"n\": 3, \"edges\": [[0,1]");
        FAIL("expected a syntax error");
    } catch (const JsonError& e) {
        CHECK(e.where().rfind("2:", 0) == 0);
    }
    CHECK(where_of(R"({"n":3,"edges":[]})") == "/");
    CHECK(where_of(R"({"r":2,"n":3,"edges":[[0,1],[2,1]]})").rfind("/edges/1", 0) == 0);
    CHECK(where_of(R"({"r":2,"n":3,"edges":[[0,1],[0,5]]})").rfind("/edges/1", 0) == 0);
    CHECK(where_of(R"({"r":2,"n":3,"edges":[[0,1],[0,1]]})") == "/edges/1");
    CHECK(where_of(R"({"r":2,"n":3,"edges":[[0,1]],"mult":[2]})") == "/mult/0");
    CHECK(where_of(R"({"r":2,"n":3,"edges":[[0,1]],"mult":[1,1]})") == "/mult");
    CHECK(where_of(R"({"r":"two","n":3,"edges":[]})") == "/r");
    CHECK_THROWS_AS(multigraph_from_json(parse_json(R"({"r":2,"n":3,"edges":[[0,1]],"mult":[-1]})")), JsonError);
}

TEST_CASE("packing and set function round trips") {
    Regularisation reg = regularise(complete_graph(2, 3));
    Packing back = packing_from_json(to_json(reg.decomposition));
    CHECK(back.pattern == reg.decomposition.pattern);
    CHECK(back.host_n == reg.decomposition.host_n);
    CHECK(back.copies == reg.decomposition.copies);

    Packing bare = packing_from_json(parse_json(R"({"pattern":{"r":2,"n":2,"edges":[[0,1]]},"host_n":3,"copies":[[0,1],[2,1]]})"));
    CHECK(bare.copies.size() == 2);
    try {
        packing_from_json(parse_json(R"({"pattern":{"r":2,"n":2,"edges":[[0,1]]},"host_n":3,"copies":[[0,1],[0,7]]})"));
        FAIL("expected an error");
    } catch (const JsonError& e) {
        CHECK(e.where() == "/copies/1/1");
    }

    SetFunction phi(3, 6);
    phi.set({0, 1, 2}, 5);
    phi.set({1, 4, 5}, -2);
    CHECK(set_function_from_json(to_json(phi)) == phi);
    CHECK_THROWS_AS(set_function_from_json(parse_json(R"({"r":2,"n":3,"values":[[[0,1],1],[[0,1],2]]})")), JsonError);

    FDecomposition fd = fdecomposition_from_json(to_json(reg));
    CHECK(fd.fstar == reg.fstar);
    CHECK(fd.decomposition.copies == reg.decomposition.copies);
    FDecomposition fd2 = fdecomposition_from_json(to_json(fd));
    CHECK(fd2.fstar == fd.fstar);
}

TEST_CASE("resolvable, balancer and shifter round trips") {
    ResolvableDecomposition d = resolvable_decomposition(7, 3, 2);
    ResolvableDecomposition rd = resolvable_from_json(to_json(d));
    CHECK(rd.q == d.q);
    CHECK(rd.f == d.f);
    CHECK(rd.r == d.r);
    CHECK(rd.classes == d.classes);

    Balancer b = balancer({0, 1, 2, 3, 4, 5}, 1, {3, 3}, 2);
    Balancer bb = balancer_from_json(to_json(b));
    CHECK(bb.tuples == b.tuples);
    CHECK(bb.delta == b.delta);
    Json tampered = to_json(b);
    tampered["tuples"][0]["mult"] = 99;
    CHECK_THROWS_AS(balancer_from_json(tampered), JsonError);

    RGraph k3 = complete_graph(2, 3);
    FDecomposition fd = to_fdecomposition(regularise(k3));
    Shifter s = simple_shifter(k3, fd, 1);
    Shifter sb = shifter_from_json(to_json(s));
    CHECK(sb.graph == s.graph);
    CHECK(sb.decomposition.copies == s.decomposition.copies);
    CHECK(sb.roots == s.roots);
    CHECK(sb.order == s.order);
    CHECK(sb.coefficients == s.coefficients);

    CHECK(div_vector_from_json(parse_json("[3,2]")) == DivVector{3, 2});
    CHECK_THROWS_AS(div_vector_from_json(parse_json("[3,0]")), JsonError);
}
