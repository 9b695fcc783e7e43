#pragma once

// Shared fixture corpus: the grid and its transducers, the a^n b^n tiling
// system (20 tiles), the column transducers of the matching synchronous
// graph, the doubly-exponential-degree one-state graph, and a deterministic
// cellular acceptor for a^n b^n. Also small deterministic random generators
// for property tests.

#include <cstdint>

#include "ratgraph/cellular.hpp"
#include "ratgraph/convert.hpp"
#include "ratgraph/graph.hpp"
#include "ratgraph/tiling.hpp"

namespace fixtures {

using namespace ratg;

inline Word parse(const AlphabetRef& a, const std::string& text) {
    return parse_word(*a, text);
}

// infinite grid: vertices A^i B^j, a-edges insert an A, b-edges append a B
inline InfiniteAutomaton grid() {
    AlphabetRef gamma = make_alphabet({"A", "B"});
    AlphabetRef labels = make_alphabet({"a", "b"});
    Letter A = 0, B = 1;
    Transducer ta(gamma, 2, 0, {1},
                  {{0, A, A, 0}, {0, EPS, A, 1}, {1, B, B, 1}});
    Transducer tb(gamma, 2, 0, {1},
                  {{0, A, A, 0}, {0, EPS, B, 1}, {1, B, B, 1}});
    // F = A*B*
    Nfa finals(gamma, 2, 0, {0, 1}, {{0, A, 0}, {0, B, 1}, {1, B, 1}});
    return InfiniteAutomaton{RationalGraph(gamma, labels, {ta, tb}),
                             nfa_epsilon(gamma), finals};
}

// the twenty tiles accepting { a^n b^n | n ≥ 1 }
inline TilingSystem anbn_tiling() {
    AlphabetRef work = make_alphabet({"a", "b", "⊥"});
    int a = 0, b = 1, o = 2, F = 3; // F = frame
    std::vector<Tile> tiles = {
        {{F, F, F, a}}, {{F, F, a, a}}, {{F, F, a, b}}, {{F, F, b, b}}, {{F, F, b, F}},
        {{F, a, F, a}}, {{a, a, a, a}}, {{a, b, o, o}}, {{b, b, b, b}}, {{b, F, b, F}},
        {{F, a, F, o}}, {{a, a, a, o}}, {{o, o, o, o}}, {{b, b, o, b}}, {{b, F, o, F}},
        {{F, o, F, F}}, {{a, o, o, o}}, {{o, o, F, F}}, {{o, b, o, o}}, {{o, F, F, F}},
    };
    return TilingSystem(work, {a, b}, "#", std::move(tiles));
}

// column transducers of the synchronous graph accepting a^n b^n
inline InfiniteAutomaton anbn_graph() {
    AlphabetRef gamma = make_alphabet({"#", "a", "b", "⊥"});
    AlphabetRef labels = make_alphabet({"a", "b"});
    Letter H = 0, a = 1, b = 2, o = 3;
    // states: (#,#) (#,a) (a,a) (#,⊥) (a,⊥) (⊥,⊥)
    Transducer ta(gamma, 6, 0, {3, 5},
                  {{0, H, a, 1},
                   {1, H, a, 1},
                   {1, H, o, 3},
                   {0, a, a, 2},
                   {2, a, a, 2},
                   {2, a, o, 4},
                   {4, o, o, 5},
                   {5, o, o, 5}});
    // states: (#,#) (a,b) (b,b) (⊥,b) (⊥,⊥)
    Transducer tb(gamma, 5, 0, {4},
                  {{0, a, b, 1},
                   {1, o, o, 4},
                   {0, b, b, 2},
                   {2, b, b, 2},
                   {2, o, b, 3},
                   {3, o, o, 4},
                   {4, o, o, 4}});
    Nfa initial = nfa_letter_at_least(gamma, H, 2); // #^{≥2}
    Nfa final_set(gamma, 2, 0, {1}, {{0, b, 0}, {0, o, 1}}); // b*⊥
    return InfiniteAutomaton{RationalGraph(gamma, labels, {ta, tb}), initial, final_set};
}

// one-state graph with an edge u → v for every |v| = 2|u|; out-degree at
// distance n of A is 2^(2^(n+1))
inline InfiniteAutomaton double_exp_graph() {
    AlphabetRef gamma = make_alphabet({"A", "B"});
    AlphabetRef labels = make_alphabet({"e"});
    std::vector<TransducerTransition> trans;
    for (Letter x : {0, 1})
        for (Letter y : {0, 1})
            for (Letter z : {0, 1})
                trans.push_back({0, x, y, 1 + z});
    trans.push_back({1, EPS, 0, 0});
    trans.push_back({2, EPS, 1, 0});
    Transducer t(gamma, 3, 0, {0}, std::move(trans));
    return InfiniteAutomaton{RationalGraph(gamma, labels, {t}),
                             nfa_word(gamma, {0}), nfa_universal(gamma)};
}

// deterministic cellular acceptor for a^n b^n: the innermost a/b pair melts
// each step; unmatched letters strand against a bracket and the run sticks
inline CellularAutomaton anbn_ca() {
    AlphabetRef work = make_alphabet({"a", "b", "⊥"});
    int a = 0, b = 1, o = 2;
    int L = 3, R = 4; // brackets in rule encoding
    std::vector<std::array<int, 4>> rules = {
        {L, a, a, a}, {a, a, a, a},
        {a, a, b, o}, {a, a, o, o}, {L, a, b, o}, {L, a, o, o},
        {b, b, b, b}, {b, b, R, b},
        {a, b, b, o}, {a, b, R, o}, {o, b, b, o}, {o, b, R, o},
        {a, o, o, o}, {o, o, o, o}, {o, o, b, o},
    };
    return CellularAutomaton(work, {a, b}, {o}, "<", ">", std::move(rules));
}

// left-synchronized finite-out-degree graph with one initial vertex:
// vertices x^n, edges step the length by ±1; the language from x to x is
// the set of ±1 walks from 1 back to 1 staying nonnegative
inline InfiniteAutomaton walk_graph() {
    AlphabetRef gamma = make_alphabet({"x"});
    AlphabetRef labels = make_alphabet({"a", "b"});
    Transducer up(gamma, 2, 0, {1}, {{0, 0, 0, 0}, {0, EPS, 0, 1}});
    Transducer down(gamma, 2, 0, {1}, {{0, 0, 0, 0}, {0, 0, EPS, 1}});
    return InfiniteAutomaton{RationalGraph(gamma, labels, {up, down}),
                             nfa_word(gamma, {0}), nfa_word(gamma, {0})};
}

// sequential synchronous graph with initial set q*: vertices p^i q^j, the
// single edge moves the boundary one step right
inline InfiniteAutomaton boundary_graph() {
    AlphabetRef gamma = make_alphabet({"p", "q"});
    AlphabetRef labels = make_alphabet({"y"});
    Letter p = 0, q = 1;
    // p^i q^j → p^{i+1} q^{j-1} for j ≥ 1
    Transducer ty(gamma, 2, 0, {1}, {{0, p, p, 0}, {0, q, p, 1}, {1, q, q, 1}});
    Nfa initial = nfa_letter_star(gamma, q);
    // final: p+ q
    Nfa final_set(gamma, 3, 0, {2}, {{0, p, 1}, {1, p, 1}, {1, q, 2}});
    return InfiniteAutomaton{RationalGraph(gamma, labels, {ty}), initial, final_set};
}

// Bounded language of a single-initial-vertex finite-degree construction.
// A vertex u|x still owes at least |u| letters before it can reach a bar-less
// final vertex, so targets with more pending labels than remaining letters
// are dead; restricting each step's range this way keeps the padding chains
// from outgrowing the word bound. Pure pruning: never adds words, and losing
// one would show up in the language-equality checks.
inline std::vector<Word> ratfd_language(const InfiniteAutomaton& m, int max_len,
                                        const std::string& bar_name) {
    const AlphabetRef& g = m.graph.vertex_alphabet();
    Letter bar = g->require(bar_name);
    std::vector<Letter> label_letters;
    for (const auto& n : m.graph.edge_labels()->names())
        label_letters.push_back(g->require(n));
    auto filter = [&](int pending) {
        // (label letters)^{≤pending} bar Γ*  ∪  (Γ∖{bar})*
        std::vector<NfaTransition> trans;
        int loop = pending + 1;
        for (int i = 0; i <= pending; ++i) {
            if (i < pending)
                for (Letter l : label_letters)
                    trans.push_back({i, l, i + 1});
            trans.push_back({i, bar, loop});
        }
        for (Letter x = 0; x < g->size(); ++x)
            trans.push_back({loop, x, loop});
        int nobar = loop + 1;
        for (Letter x = 0; x < g->size(); ++x)
            if (x != bar)
                trans.push_back({nobar, x, nobar});
        Nfa shape(g, nobar + 1, 0, {loop, nobar}, std::move(trans));
        std::vector<NfaTransition> start{{0, EPS, 1}, {0, EPS, nobar + 1}};
        for (auto& t : shape.transitions())
            start.push_back({t.src + 1, t.letter, t.dst + 1});
        std::vector<int> finals{loop + 1, nobar + 1};
        return nfa_determinize_minimize(Nfa(g, nobar + 2, 0, finals, std::move(start)));
    };
    std::vector<std::vector<Transducer>> restricted(m.graph.edge_labels()->size());
    for (Letter a = 0; a < m.graph.edge_labels()->size(); ++a)
        for (int pending = 0; pending < max_len; ++pending)
            restricted[a].push_back(t_restrict_range(m.graph.relation(a), filter(pending)));
    std::vector<Word> out;
    Word prefix;
    std::function<void(const Nfa&, int)> dfs = [&](const Nfa& image, int remaining) {
        if (!nfa_is_empty(nfa_intersect(image, m.final)))
            out.push_back(prefix);
        if (remaining == 0)
            return;
        for (Letter a = 0; a < m.graph.edge_labels()->size(); ++a) {
            Nfa next = nfa_determinize_minimize(
                t_apply_lang(restricted[a][remaining - 1], image));
            if (nfa_is_empty(next))
                continue;
            prefix.push_back(a);
            dfs(next, remaining - 1);
            prefix.pop_back();
        }
    };
    dfs(nfa_determinize_minimize(m.initial), max_len);
    std::stable_sort(out.begin(), out.end(), [](const Word& x, const Word& y) {
        return x.size() != y.size() ? x.size() < y.size() : x < y;
    });
    return out;
}

// tiny deterministic linear congruential generator for reproducible cases
struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed * 2654435761u + 1) {}
    std::uint32_t next() {
        state = state * 6364136223846793005ull + 1442695040888963407ull;
        return static_cast<std::uint32_t>(state >> 33);
    }
    int below(int n) { return static_cast<int>(next() % static_cast<std::uint32_t>(n)); }
};

// random 3-state transducer over {a,b}; one-sided labels allowed
inline Transducer random_transducer(std::uint64_t seed, bool synchronous_only = false) {
    Rng rng(seed);
    AlphabetRef alpha = make_alphabet({"a", "b"});
    int n = 3;
    std::vector<TransducerTransition> trans;
    int edges = 4 + rng.below(4);
    for (int i = 0; i < edges; ++i) {
        Letter in, out;
        if (synchronous_only) {
            in = rng.below(2);
            out = rng.below(2);
        } else {
            in = rng.below(3) - 1;  // EPS, a, b
            out = rng.below(3) - 1;
            if (in == EPS && out == EPS)
                out = rng.below(2);
        }
        trans.push_back({rng.below(n), in, out, rng.below(n)});
    }
    std::vector<int> finals{rng.below(n)};
    if (rng.below(2))
        finals.push_back(rng.below(n));
    return Transducer(alpha, n, 0, std::move(finals), std::move(trans));
}

inline Nfa random_nfa(std::uint64_t seed) {
    Rng rng(seed);
    AlphabetRef alpha = make_alphabet({"a", "b"});
    int n = 3;
    std::vector<NfaTransition> trans;
    int edges = 3 + rng.below(4);
    for (int i = 0; i < edges; ++i)
        trans.push_back({rng.below(n), rng.below(3) - 1, rng.below(n)});
    std::vector<int> finals{rng.below(n)};
    if (rng.below(2))
        finals.push_back(rng.below(n));
    return Nfa(alpha, n, 0, std::move(finals), std::move(trans));
}

} // namespace fixtures
