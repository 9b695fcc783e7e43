#include <doctest.h>

#include <fstream>

#include "fixtures.hpp"
#include "ratgraph/io.hpp"

using namespace ratg;
using fixtures::parse;

namespace {

std::string fixture_path(const std::string& name) {
    return std::string(RATG_FIXTURE_DIR) + "/" + name;
}

} // namespace

TEST_CASE("round trips through the text format") {
    Formalism nfa{fixtures::anbn_graph().initial};
    Formalism back = parse_formalism(formalism_to_json(nfa));
    CHECK(kind_of(back) == "nfa");
    CHECK(nfa_equal(std::get<Nfa>(nfa), std::get<Nfa>(back)));

    Formalism t{fixtures::grid().graph.relation(0)};
    Formalism t2 = parse_formalism(formalism_to_json(t));
    CHECK(kind_of(t2) == "transducer");
    CHECK(t_pairs_up_to(std::get<Transducer>(t), 4, 4) ==
          t_pairs_up_to(std::get<Transducer>(t2), 4, 4));

    Formalism g{fixtures::anbn_graph()};
    Formalism g2 = parse_formalism(formalism_to_json(g));
    CHECK(kind_of(g2) == "graph");
    auto l1 = g_enumerate_language(std::get<InfiniteAutomaton>(g), 6);
    auto l2 = g_enumerate_language(std::get<InfiniteAutomaton>(g2), 6);
    CHECK(l1 == l2);

    Formalism s{fixtures::anbn_tiling()};
    Formalism s2 = parse_formalism(formalism_to_json(s));
    CHECK(kind_of(s2) == "tiling");
    CHECK(std::get<TilingSystem>(s2).tiles() == fixtures::anbn_tiling().tiles());

    Formalism c{fixtures::anbn_ca()};
    Formalism c2 = parse_formalism(formalism_to_json(c));
    CHECK(kind_of(c2) == "ca");
    CHECK(std::get<CellularAutomaton>(c2).rules() == fixtures::anbn_ca().rules());
}

TEST_CASE("fixture files match the built-in corpus") {
    Formalism tiling = load_formalism(fixture_path("anbn_tiling.json"));
    REQUIRE(kind_of(tiling) == "tiling");
    CHECK(std::get<TilingSystem>(tiling).tiles() == fixtures::anbn_tiling().tiles());
    CHECK(std::get<TilingSystem>(tiling).tiles().size() == 20);

    Formalism graph = load_formalism(fixture_path("anbn_graph.json"));
    REQUIRE(kind_of(graph) == "graph");
    auto& m = std::get<InfiniteAutomaton>(graph);
    auto ref = fixtures::anbn_graph();
    CHECK(g_enumerate_language(m, 8) == g_enumerate_language(ref, 8));

    Formalism grid = load_formalism(fixture_path("grid_graph.json"));
    auto& gm = std::get<InfiniteAutomaton>(grid);
    CHECK(g_member(gm, parse(gm.graph.edge_labels(), "ab")));

    Formalism ca = load_formalism(fixture_path("anbn_ca.json"));
    auto& cm = std::get<CellularAutomaton>(ca);
    CHECK(cm.rules() == fixtures::anbn_ca().rules());

    Formalism g0 = load_formalism(fixture_path("double_exp_graph.json"));
    auto& g0m = std::get<InfiniteAutomaton>(g0);
    CHECK(g_out_degree(g0m.graph, parse(g0m.graph.vertex_alphabet(), "A")) ==
          Cardinality{false, 4});
}

TEST_CASE("file references resolve relative to the containing file") {
    std::ofstream aut("ref_nfa.json");
    aut << R"({"kind":"nfa","alphabet":["z"],"states":["s"],"initial":"s","finals":["s"],)"
        << R"("transitions":[["s","z","s"]]})";
    aut.close();
    std::ofstream g("ref_graph.json");
    g << R"({"kind":"graph","vertex_alphabet":["z"],"edge_labels":["e"],)"
      << R"("relations":{"e":{"alphabet":["z"],"states":["s"],"initial":"s","finals":["s"],)"
      << R"("transitions":[["s","z","z","s"]]}},)"
      << R"("initial":"ref_nfa.json","final":"ref_nfa.json"})";
    g.close();
    Formalism loaded = load_formalism("ref_graph.json");
    REQUIRE(kind_of(loaded) == "graph");
    auto& m = std::get<InfiniteAutomaton>(loaded);
    CHECK(g_member(m, parse(m.graph.edge_labels(), "ee")));
}

TEST_CASE("malformed input is reported") {
    CHECK_THROWS_AS(parse_formalism("not json"), parse_error);
    CHECK_THROWS_AS(parse_formalism("{\"kind\":\"nope\"}"), parse_error);
    CHECK_THROWS_AS(parse_formalism("{\"kind\":\"nfa\"}"), parse_error);
    CHECK_THROWS_AS(
        parse_formalism(R"({"kind":"nfa","alphabet":["a"],"states":["s"],"initial":"t",)"
                        R"("finals":[],"transitions":[]})"),
        parse_error);
    CHECK_THROWS_AS(load_formalism("does_not_exist.json"), parse_error);
}

TEST_CASE("word formatting escapes multi-character letters") {
    AlphabetRef a = make_alphabet({"a", "x:2", "⊥"});
    Word w = {0, 1, 2, 0};
    std::string text = format_word(*a, w);
    CHECK(text == "a[x:2]⊥a");
    CHECK(parse_word(*a, text) == w);
    CHECK_THROWS_AS(parse_word(*a, "a[x:2"), input_error);
    CHECK_THROWS_AS(parse_word(*a, "q"), input_error);
}
