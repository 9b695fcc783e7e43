#include "ratgraph/convert.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <unordered_map>

namespace ratg {

namespace {

void require(bool cond, const std::string& what) {
    if (!cond)
        throw precondition_error(what);
}

TransducerClass claim_synchronous() {
    TransducerClass c;
    c.synchronous = c.left_synchronized = c.right_synchronized = true;
    return c;
}

TransducerClass claim_left_synchronized() {
    TransducerClass c;
    c.left_synchronized = true;
    return c;
}

/// {(x^n, u) | u ∈ L(a), |u| = n} for a letter x: relabel the inputs of the
/// identity over L(a).
Transducer input_counter(const Nfa& a, const AlphabetRef& alphabet, Letter x) {
    Nfa d = nfa_determinize(nfa_with_alphabet(a, alphabet));
    std::vector<TransducerTransition> trans;
    for (const auto& t : d.transitions())
        trans.push_back({t.src, x, t.letter, t.dst});
    return Transducer(alphabet, d.num_states(), d.initial(), d.finals(), std::move(trans));
}

/// {(v, x^n) | v ∈ L(a), |v| = n}.
Transducer output_counter(const Nfa& a, const AlphabetRef& alphabet, Letter x) {
    Nfa d = nfa_determinize(nfa_with_alphabet(a, alphabet));
    std::vector<TransducerTransition> trans;
    for (const auto& t : d.transitions())
        trans.push_back({t.src, t.letter, x, t.dst});
    return Transducer(alphabet, d.num_states(), d.initial(), d.finals(), std::move(trans));
}

/// {(x^n, x^{kn})}, k ≥ 1.
Transducer stretch_relation(const AlphabetRef& alphabet, Letter x, int k) {
    std::vector<TransducerTransition> trans;
    // cycle of k states; reading one x emits k of them
    trans.push_back({0, x, x, k == 1 ? 0 : 1});
    for (int i = 1; i < k; ++i)
        trans.push_back({i, EPS, x, (i + 1) % k});
    return Transducer(alphabet, std::max(1, k), 0, {0}, std::move(trans));
}


/// {(x^n, x^m) | 1 ≤ m ≤ n}.
Transducer shrink_relation(const AlphabetRef& alphabet, Letter x) {
    std::vector<TransducerTransition> trans{
        {0, x, x, 1}, {1, x, x, 1}, {1, x, EPS, 2}, {2, x, EPS, 2}};
    return Transducer(alphabet, 3, 0, {1, 2}, std::move(trans));
}

Nfa star_of(const AlphabetRef& alphabet, Letter x) { return nfa_letter_star(alphabet, x); }

bool all_synchronous(const RationalGraph& g) {
    for (const auto& t : g.relations())
        if (!t_classify(t).synchronous)
            return false;
    return true;
}

} // namespace

// ---------------------------------------------------------------- rat2synch

GraphConversion rat2synch(const InfiniteAutomaton& m, const std::string& pad_name) {
    if (m.graph.vertex_alphabet()->contains(pad_name))
        throw fresh_symbol_error("padding symbol already occurs in the vertex alphabet: " +
                                 pad_name);
    AlphabetRef wider = alphabet_extend(m.graph.vertex_alphabet(), {pad_name});
    Letter pad = wider->require(pad_name);

    std::vector<Transducer> rel;
    for (const auto& t0 : m.graph.relations()) {
        Transducer t = t_with_alphabet(t_normalize(t0), wider);
        std::vector<TransducerTransition> trans;
        for (const auto& tr : t.transitions())
            trans.push_back({tr.src, tr.in == EPS ? pad : tr.in, tr.out == EPS ? pad : tr.out,
                             tr.dst});
        for (int s = 0; s < t.num_states(); ++s)
            trans.push_back({s, pad, pad, s});
        rel.emplace_back(wider, t.num_states(), t.initial(), t.finals(), std::move(trans));
    }
    // I' / F': a padding loop on every control state
    auto pad_loops = [&](const Nfa& a) {
        Nfa w = nfa_with_alphabet(a, wider);
        std::vector<NfaTransition> trans = w.transitions();
        for (int s = 0; s < w.num_states(); ++s)
            trans.push_back({s, pad, s});
        return Nfa(wider, w.num_states(), w.initial(), w.finals(), std::move(trans));
    };
    GraphConversion out{
        InfiniteAutomaton{RationalGraph(wider, m.graph.edge_labels(), std::move(rel)),
                          pad_loops(m.initial), pad_loops(m.final)},
        {}};
    out.report.conversion = "rat2synch";
    out.report.output_kind = "graph";
    out.report.fresh_symbols = {pad_name};
    for (const auto& name : m.graph.edge_labels()->names())
        out.report.class_claims.emplace_back(name, claim_synchronous());
    return out;
}

// ----------------------------------------------------------------- ts2synch

GraphConversion ts2synch(const TilingSystem& s) {
    // vertex alphabet: work letters plus the frame symbol
    AlphabetRef gamma = alphabet_extend(s.work(), {s.frame_name()});
    Letter frame = gamma->require(s.frame_name());
    int F = s.frame(); // frame id in the tile encoding

    std::vector<std::string> label_names;
    for (Letter l : s.sigma())
        label_names.push_back(s.work()->name(l));
    AlphabetRef labels = make_alphabet(label_names);

    auto cell = [&](int tile_letter) { // tile encoding → vertex letter
        return tile_letter == F ? frame : tile_letter;
    };

    std::vector<Transducer> rel;
    for (int li = 0; li < labels->size(); ++li) {
        int e = s.sigma()[li]; // work-letter id of this edge label
        // states are pairs over (Γ∪{frame})²; interned sparsely
        std::map<std::pair<int, int>, int> ids;
        std::vector<std::pair<int, int>> states;
        auto intern = [&](int a, int b) {
            auto it = ids.find({a, b});
            if (it != ids.end())
                return it->second;
            int id = static_cast<int>(states.size());
            ids.emplace(std::make_pair(a, b), id);
            states.emplace_back(a, b);
            return id;
        };
        intern(F, F);
        std::vector<TransducerTransition> trans;
        std::vector<int> finals;
        for (const Tile& t : s.tiles()) {
            auto [tl, tr, bl, br] = std::array<int, 4>{t.c[0], t.c[1], t.c[2], t.c[3]};
            if (tl == F && tr == F) {
                // first letters of two adjacent columns
                if (br != F && br == e)
                    trans.push_back({intern(F, F), cell(bl), cell(br), intern(bl, br)});
            } else if (tr != F && br != F) {
                trans.push_back({intern(tl, tr), cell(bl), cell(br), intern(bl, br)});
            }
        }
        for (int id = 0; id < static_cast<int>(states.size()); ++id) {
            auto [a, b] = states[id];
            if (b != F && s.has_tile(a, b, F, F))
                finals.push_back(id);
        }
        Transducer t(gamma, static_cast<int>(states.size()), 0, std::move(finals),
                     std::move(trans));
        rel.push_back(t_canonicalize(t));
    }

    // last-column automaton: the rational set of final vertices
    Nfa final_set = [&]() {
        // state 0 = start (frame), state 1+x per work letter x
        std::vector<NfaTransition> trans;
        std::vector<int> fin;
        for (int x = 0; x < s.work()->size(); ++x) {
            if (s.has_tile(F, F, x, F))
                trans.push_back({0, x, 1 + x});
            if (s.has_tile(x, F, F, F))
                fin.push_back(1 + x);
            for (int y = 0; y < s.work()->size(); ++y)
                if (s.has_tile(x, F, y, F))
                    trans.push_back({1 + x, y, 1 + y});
        }
        Nfa a(s.work(), 1 + s.work()->size(), 0, std::move(fin), std::move(trans));
        return nfa_determinize_minimize(nfa_with_alphabet(nfa_trim(a), gamma));
    }();

    GraphConversion out{InfiniteAutomaton{RationalGraph(gamma, labels, std::move(rel)),
                                          star_of(gamma, frame), final_set},
                        {}};
    out.report.conversion = "ts2synch";
    out.report.output_kind = "graph";
    out.report.fresh_symbols = {s.frame_name()};
    for (const auto& name : labels->names())
        out.report.class_claims.emplace_back(name, claim_synchronous());
    out.report.oracle_bound = 8;
    out.report.notes.emplace_back("initial", "all words over the frame symbol");
    out.report.notes.emplace_back("final", "possible last columns of accepted pictures");
    return out;
}

// --------------------------------------------------------------- startostar

GraphConversion startostar(const InfiniteAutomaton& m) {
    require(all_synchronous(m.graph), "initial-set normalization needs a synchronous graph");
    const auto& gamma0 = m.graph.vertex_alphabet();
    std::string i_name = fresh_name(*gamma0, "i");
    std::string f_name = fresh_name(*gamma0, "f");
    AlphabetRef gamma = alphabet_extend(gamma0, {i_name, f_name});
    Letter i_letter = gamma->require(i_name);
    Letter f_letter = gamma->require(f_name);

    Transducer t_initial = input_counter(m.initial, gamma, i_letter);
    Transducer t_final = output_counter(m.final, gamma, f_letter);

    std::vector<Transducer> rel;
    for (const auto& k0 : m.graph.relations()) {
        Transducer k = t_with_alphabet(k0, gamma);
        Transducer t = t_union(t_compose(t_initial, k), k);
        t = t_union(t, t_compose(k, t_final));
        t = t_union(t, t_compose(t_initial, t_compose(k, t_final)));
        rel.push_back(t_canonicalize(t));
    }

    bool eps_in_language = !nfa_is_empty(nfa_intersect(m.initial, m.final));
    Nfa new_i = eps_in_language ? star_of(gamma, i_letter)
                                : nfa_letter_at_least(gamma, i_letter, 1);
    Nfa new_f = eps_in_language ? star_of(gamma, f_letter)
                                : nfa_letter_at_least(gamma, f_letter, 1);

    GraphConversion out{
        InfiniteAutomaton{RationalGraph(gamma, m.graph.edge_labels(), std::move(rel)),
                          std::move(new_i), std::move(new_f)},
        {}};
    out.report.conversion = "startostar";
    out.report.output_kind = "graph";
    out.report.fresh_symbols = {i_name, f_name};
    for (const auto& name : m.graph.edge_labels()->names())
        out.report.class_claims.emplace_back(name, claim_synchronous());
    return out;
}

// ----------------------------------------------------------------- synch2ts

namespace {

/// startostar followed by per-label unambiguization: the shared front half of
/// the tiling construction and of the finite-degree constant derivation.
struct StarNormalized {
    AlphabetRef gamma;   // Γ ∪ {i, f}
    Letter i_letter, f_letter;
    std::vector<Transducer> unambiguous; // per edge label
    AlphabetRef edge_labels;
    std::string i_name, f_name;
};

StarNormalized star_normalize_unambiguous(const InfiniteAutomaton& m) {
    GraphConversion st = startostar(m);
    StarNormalized out;
    out.gamma = st.automaton.graph.vertex_alphabet();
    out.i_name = st.report.fresh_symbols[0];
    out.f_name = st.report.fresh_symbols[1];
    out.i_letter = out.gamma->require(out.i_name);
    out.f_letter = out.gamma->require(out.f_name);
    out.edge_labels = st.automaton.graph.edge_labels();
    for (const auto& t : st.automaton.graph.relations())
        out.unambiguous.push_back(t_unambiguize_synchronized(t));
    return out;
}

int max_cells_per_label(const StarNormalized& sn) {
    int worst = 0;
    for (const auto& t : sn.unambiguous) {
        std::set<std::pair<Letter, int>> cells;
        for (const auto& tr : t.transitions())
            cells.emplace(tr.out, tr.dst);
        worst = std::max(worst, static_cast<int>(cells.size()));
    }
    return worst;
}

} // namespace

TilingConversion synch2ts(const InfiniteAutomaton& m) {
    require(all_synchronous(m.graph), "tiling construction needs a synchronous graph");
    StarNormalized sn = star_normalize_unambiguous(m);
    int nlabels = sn.edge_labels->size();

    // tiling work alphabet: one letter per edge label (the frontier row) and
    // one letter per annotated cell (vertex letter + run state, per label)
    std::vector<std::string> work_names = sn.edge_labels->names();
    std::map<std::tuple<int, Letter, int>, int> cell_ids; // (label, letter, state) → work id
    auto cell_of = [&](int label, Letter x, int state) {
        auto key = std::make_tuple(label, x, state);
        auto it = cell_ids.find(key);
        if (it != cell_ids.end())
            return it->second;
        int id = static_cast<int>(work_names.size());
        work_names.push_back(sn.gamma->name(x) + ":" + sn.edge_labels->name(label) +
                             std::to_string(state));
        cell_ids.emplace(key, id);
        return id;
    };

    // per-label run structure: first cells, consecutive cells, last cells
    struct CellRef {
        Letter letter;
        int state;
    };
    int frame_placeholder = -1; // assigned after the alphabet is complete
    std::vector<std::array<int, 4>> raw_tiles;
    auto tile = [&](int a, int b, int c, int d) { raw_tiles.push_back({a, b, c, d}); };

    // frontier-row tiles
    for (int a = 0; a < nlabels; ++a) {
        tile(frame_placeholder, frame_placeholder, frame_placeholder, a);
        tile(frame_placeholder, frame_placeholder, a, frame_placeholder);
        for (int b = 0; b < nlabels; ++b)
            tile(frame_placeholder, frame_placeholder, a, b);
    }

    // first/consecutive/last cells per label, split by the input letter
    for (int e = 0; e < nlabels; ++e) {
        const Transducer& u = sn.unambiguous[e];
        // left border: the column-1 run reads the fresh initial letter
        for (const auto& tr : u.out(u.initial()))
            if (tr.in == sn.i_letter)
                tile(frame_placeholder, e, frame_placeholder, cell_of(e, tr.out, tr.dst));
        for (const auto& t1 : u.transitions()) {
            if (t1.in != sn.i_letter)
                continue;
            int c1 = cell_of(e, t1.out, t1.dst);
            for (const auto& t2 : u.out(t1.dst))
                if (t2.in == sn.i_letter)
                    tile(frame_placeholder, c1, frame_placeholder, cell_of(e, t2.out, t2.dst));
            if (u.is_final(t1.dst))
                tile(frame_placeholder, c1, frame_placeholder, frame_placeholder);
        }
    }

    // middle pairs: left column from any label b, right column run of label e
    // (the left chain is enforced by the pair one step to the left, so only
    // chain-consistent left cells are generated)
    std::map<Letter, std::vector<std::pair<int, int>>> first_left_by; // letter → (cell, label)
    std::map<Letter, std::vector<int>> last_left_by;                  // letter → cells
    // consecutive left cells grouped by (letter, letter')
    std::map<std::pair<Letter, Letter>, std::vector<std::pair<int, int>>> cons_left;
    for (int b = 0; b < nlabels; ++b) {
        const Transducer& u = sn.unambiguous[b];
        for (const auto& t1 : u.transitions()) {
            int c1 = cell_of(b, t1.out, t1.dst);
            if (t1.src == u.initial())
                first_left_by[t1.out].emplace_back(c1, b);
            if (u.is_final(t1.dst))
                last_left_by[t1.out].push_back(c1);
            for (const auto& t2 : u.out(t1.dst))
                cons_left[{t1.out, t2.out}].emplace_back(c1, cell_of(b, t2.out, t2.dst));
        }
    }
    for (int e = 0; e < nlabels; ++e) {
        const Transducer& u = sn.unambiguous[e];
        for (const auto& t1 : u.out(u.initial())) {
            if (t1.in == sn.i_letter)
                continue;
            int r1 = cell_of(e, t1.out, t1.dst);
            auto it = first_left_by.find(t1.in);
            if (it != first_left_by.end())
                for (auto [q, b] : it->second)
                    tile(b, e, q, r1);
        }
        for (const auto& t1 : u.transitions()) {
            if (t1.in == sn.i_letter)
                continue;
            int rin = cell_of(e, t1.out, t1.dst);
            for (const auto& t2 : u.out(t1.dst)) {
                if (t2.in == sn.i_letter)
                    continue;
                int rnext = cell_of(e, t2.out, t2.dst);
                auto it = cons_left.find({t1.in, t2.in});
                if (it != cons_left.end())
                    for (auto [q1, q2] : it->second)
                        tile(q1, rin, q2, rnext);
            }
            if (u.is_final(t1.dst)) {
                auto it = last_left_by.find(t1.in);
                if (it != last_left_by.end())
                    for (int q : it->second)
                        tile(q, rin, frame_placeholder, frame_placeholder);
            }
        }
    }

    // right border: the last column carries only the fresh final letter
    for (int d = 0; d < nlabels; ++d) {
        const Transducer& u = sn.unambiguous[d];
        for (const auto& t1 : u.transitions()) {
            if (t1.out != sn.f_letter)
                continue;
            int c1 = cell_of(d, t1.out, t1.dst);
            if (t1.src == u.initial())
                tile(d, frame_placeholder, c1, frame_placeholder);
            for (const auto& t2 : u.out(t1.dst))
                if (t2.out == sn.f_letter)
                    tile(c1, frame_placeholder, cell_of(d, t2.out, t2.dst), frame_placeholder);
            if (u.is_final(t1.dst))
                tile(c1, frame_placeholder, frame_placeholder, frame_placeholder);
        }
    }

    AlphabetRef work = make_alphabet(work_names);
    int frame_id = work->size();
    std::vector<Tile> tiles;
    tiles.reserve(raw_tiles.size());
    for (auto& rt : raw_tiles) {
        Tile t;
        for (int i = 0; i < 4; ++i)
            t.c[i] = rt[i] == frame_placeholder ? frame_id : rt[i];
        tiles.push_back(t);
    }
    std::vector<Letter> sigma;
    for (int a = 0; a < nlabels; ++a)
        sigma.push_back(a);
    std::string frame_name = fresh_name(*work, "#");

    TilingConversion out{TilingSystem(work, std::move(sigma), frame_name, std::move(tiles)), {}};
    out.report.conversion = "synch2ts";
    out.report.output_kind = "tiling";
    out.report.fresh_symbols = {frame_name, sn.i_name, sn.f_name};
    out.report.oracle_bound = 8;
    out.report.notes.emplace_back("heights", "picture heights equal path vertex lengths");
    out.report.notes.emplace_back("cells_per_label", std::to_string(max_cells_per_label(sn)));
    if (!nfa_is_empty(nfa_intersect(m.initial, m.final)))
        out.report.notes.emplace_back("epsilon",
                                      "dropped: frontier languages exclude the empty word");
    return out;
}

// -------------------------------------------------------------------- ts2seq

GraphConversion ts2seq(const TilingSystem& s) {
    // vertex letters: Λ = Γ∪{#}, the marked copies, and the row brackets
    std::vector<std::string> names = s.work()->names();
    int nwork = s.work()->size();
    std::string frame_name = s.frame_name();
    names.push_back(frame_name); // Λ = Γ ∪ {frame}; ids 0..nwork
    int lambda = nwork + 1;
    for (int i = 0; i < lambda; ++i)
        names.push_back(names[i] + "~"); // marked copies: id + lambda
    std::string lb = "[", rb = "]";
    while (std::find(names.begin(), names.end(), lb) != names.end())
        lb += "'";
    while (std::find(names.begin(), names.end(), rb) != names.end())
        rb += "'";
    names.push_back(lb);
    names.push_back(rb);
    AlphabetRef gamma = make_alphabet(names);
    Letter open = gamma->require(lb), close = gamma->require(rb);
    Letter frame = nwork;
    auto marked = [&](Letter x) { return x + lambda; };

    // Shift: move every row's mark one letter right; synchronous sequential
    Transducer shift = [&]() {
        // states: phase ∈ {between, pre, just, post} × rows-done ∈ {0,1,2+}
        auto id = [](int phase, int rows) { return phase * 3 + rows; };
        std::vector<TransducerTransition> trans;
        auto bump = [](int rows) { return std::min(rows + 1, 2); };
        for (int rows = 0; rows < 3; ++rows) {
            trans.push_back({id(0, rows), open, open, id(1, rows)});
            for (Letter x = 0; x < lambda; ++x) {
                trans.push_back({id(1, rows), x, x, id(1, rows)});
                trans.push_back({id(1, rows), marked(x), x, id(2, rows)});
                trans.push_back({id(2, rows), x, marked(x), id(3, rows)});
                trans.push_back({id(3, rows), x, x, id(3, rows)});
            }
            trans.push_back({id(3, rows), close, close, id(0, bump(rows))});
        }
        return Transducer(gamma, 12, id(0, 0), {id(0, 2)}, std::move(trans));
    }();

    // R_Δ: in every row the marked letter and its left neighbor, stacked over
    // consecutive rows, must form tiles of Δ (first row unconstrained); at
    // least two rows
    Nfa r_delta = [&]() {
        // prev = 0 means "no previous row", else 1 + x*lambda + y for the
        // previous row's (left-of-mark, marked) pair; cnt counts rows (sat. 2)
        int npairs = lambda * lambda + 1;
        auto pair_id = [&](int x, int y) { return 1 + x * lambda + y; };
        int B = 0;                            // between(prev, cnt)
        int RS = B + npairs * 3;              // rowstart(prev, cnt)
        int SC = RS + npairs * 3;             // scanning(prev, cnt, x)
        int AF = SC + npairs * 3 * lambda;    // after(pair, cnt)
        int total = AF + lambda * lambda * 3;
        auto between = [&](int prev, int cnt) { return B + prev * 3 + cnt; };
        auto rowst = [&](int prev, int cnt) { return RS + prev * 3 + cnt; };
        auto scan = [&](int prev, int cnt, int x) { return SC + (prev * 3 + cnt) * lambda + x; };
        auto aft = [&](int pair, int cnt) { return AF + (pair - 1) * 3 + cnt; };
        std::vector<NfaTransition> trans;
        std::vector<int> finals;
        for (int prev = 0; prev < npairs; ++prev)
            for (int cnt = 0; cnt < 3; ++cnt) {
                trans.push_back({between(prev, cnt), open, rowst(prev, cnt)});
                if (cnt == 2)
                    finals.push_back(between(prev, cnt));
                for (Letter z = 0; z < lambda; ++z)
                    trans.push_back({rowst(prev, cnt), z, scan(prev, cnt, z)});
                for (Letter x = 0; x < lambda; ++x) {
                    for (Letter z = 0; z < lambda; ++z)
                        trans.push_back({scan(prev, cnt, x), z, scan(prev, cnt, z)});
                    for (Letter y = 0; y < lambda; ++y) {
                        bool ok = prev == 0 ||
                                  s.has_tile((prev - 1) / lambda, (prev - 1) % lambda, x, y);
                        if (ok)
                            trans.push_back(
                                {scan(prev, cnt, x), marked(y), aft(pair_id(x, y), cnt)});
                    }
                }
            }
        for (int x = 0; x < lambda; ++x)
            for (int y = 0; y < lambda; ++y) {
                int pair = pair_id(x, y);
                for (int cnt = 0; cnt < 3; ++cnt) {
                    for (Letter z = 0; z < lambda; ++z)
                        trans.push_back({aft(pair, cnt), z, aft(pair, cnt)});
                    trans.push_back({aft(pair, cnt), close, between(pair, std::min(cnt + 1, 2))});
                }
            }
        Nfa a(gamma, total, between(0, 0), std::move(finals), std::move(trans));
        return nfa_trim(a);
    }();

    Transducer t_delta = t_restrict_domain(shift, r_delta);

    // second-row-mark restrictions, one per input letter of the system
    std::vector<std::string> label_names;
    for (Letter l : s.sigma())
        label_names.push_back(s.work()->name(l));
    AlphabetRef labels = make_alphabet(label_names);
    std::vector<Transducer> rel;
    for (Letter a : s.sigma()) {
        // [ (Λ∪Λ̃)* ] [ Λ* ã Λ* ] ( [ (Λ∪Λ̃)* ] )*
        std::vector<NfaTransition> trans;
        trans.push_back({0, open, 1});
        for (Letter x = 0; x < lambda; ++x) {
            trans.push_back({1, x, 1});
            trans.push_back({1, marked(x), 1});
            trans.push_back({3, x, 3});
            trans.push_back({4, x, 4});
            trans.push_back({6, x, 6});
            trans.push_back({6, marked(x), 6});
        }
        trans.push_back({1, close, 2});
        trans.push_back({2, open, 3});
        trans.push_back({3, marked(a), 4});
        trans.push_back({4, close, 5});
        trans.push_back({5, open, 6});
        trans.push_back({6, close, 5});
        Nfa second_row(gamma, 7, 0, {5}, std::move(trans));
        rel.push_back(t_canonicalize(t_restrict_domain(t_delta, second_row)));
    }

    // initial vertices: whole bordered pictures with marks in column 2
    // [# #̃ #*] ([# x̃ Γ* #])+ [# #̃ #*]
    Nfa initial = [&]() {
        std::vector<NfaTransition> trans;
        // 0 →[ 1 →# 2 →#̃ 3 (→# 3) →] 4 →[ 5 →# 6 →x̃ 7 (→Γ 7) →# 8 →] 9
        // 9 →[ 5 (more interior rows) or 9 →[ 10 →# 11 →#̃ 12 (→# 12) →] 13
        trans.push_back({0, open, 1});
        trans.push_back({1, frame, 2});
        trans.push_back({2, marked(frame), 3});
        trans.push_back({3, frame, 3});
        trans.push_back({3, close, 4});
        trans.push_back({4, open, 5});
        trans.push_back({5, frame, 6});
        for (Letter x = 0; x < nwork; ++x) {
            trans.push_back({6, marked(x), 7});
            trans.push_back({7, x, 7});
        }
        trans.push_back({7, frame, 8});
        trans.push_back({8, close, 9});
        trans.push_back({9, open, 5});
        trans.push_back({9, open, 10});
        trans.push_back({10, frame, 11});
        trans.push_back({11, marked(frame), 12});
        trans.push_back({12, frame, 12});
        trans.push_back({12, close, 13});
        return Nfa(gamma, 14, 0, {13}, std::move(trans));
    }();

    // final vertices: marks on the last letter of every row, constrained by
    // the unchecked last window through R_Δ
    Nfa final_set = [&]() {
        std::vector<NfaTransition> trans;
        // [#* #̃] ([# Γ* #̃])+ [#* #̃]
        trans.push_back({0, open, 1});
        trans.push_back({1, frame, 1});
        trans.push_back({1, marked(frame), 2});
        trans.push_back({2, close, 3});
        trans.push_back({3, open, 4});
        trans.push_back({4, frame, 5});
        for (Letter x = 0; x < nwork; ++x)
            trans.push_back({5, x, 5});
        trans.push_back({5, marked(frame), 6});
        trans.push_back({6, close, 7});
        trans.push_back({7, open, 4});
        trans.push_back({7, open, 8});
        trans.push_back({8, frame, 8});
        trans.push_back({8, marked(frame), 9});
        trans.push_back({9, close, 10});
        Nfa shape(gamma, 11, 0, {10}, std::move(trans));
        return nfa_determinize_minimize(nfa_intersect(shape, r_delta));
    }();

    GraphConversion out{
        InfiniteAutomaton{RationalGraph(gamma, labels, std::move(rel)), initial, final_set}, {}};
    out.report.conversion = "ts2seq";
    out.report.output_kind = "graph";
    out.report.fresh_symbols = {frame_name, lb, rb};
    for (int i = 0; i < lambda; ++i)
        out.report.fresh_symbols.push_back(gamma->name(marked(i)));
    for (const auto& name : labels->names()) {
        TransducerClass c = claim_synchronous();
        c.sequential = true;
        out.report.class_claims.emplace_back(name, c);
    }
    out.report.oracle_bound = 8;
    return out;
}

// ----------------------------------------------------------------- onepoint

GraphConversion onepoint(const InfiniteAutomaton& m) {
    const auto& gamma0 = m.graph.vertex_alphabet();
    std::string i_name = fresh_name(*gamma0, "i");
    AlphabetRef gamma = alphabet_extend(gamma0, {i_name});
    Letter i_letter = gamma->require(i_name);

    bool synchronized_in = true;
    for (const auto& t : m.graph.relations())
        if (!t_classify(t).left_synchronized)
            synchronized_in = false;

    std::vector<Transducer> rel;
    for (const auto& t0 : m.graph.relations()) {
        Nfa image = nfa_determinize(t_apply_lang(t0, m.initial));
        // {(i, w) | w ∈ T(I)}: read i on the first output letter, then spell
        // the rest with ε-inputs; one-sided tail keeps it synchronized
        std::vector<TransducerTransition> trans;
        int base = 1; // 0 is the fresh initial
        image = nfa_with_alphabet(image, gamma);
        for (const auto& tr : image.transitions())
            trans.push_back({base + tr.src, EPS, tr.letter, base + tr.dst});
        for (const auto& [l, d] : image.out(image.initial()))
            trans.push_back({0, i_letter, l, base + d});
        std::vector<int> finals;
        int extra = base + image.num_states();
        if (image.is_final(image.initial())) {
            // (i, ε) pair
            trans.push_back({0, i_letter, EPS, extra});
            finals.push_back(extra);
            ++extra;
        }
        for (int f : image.finals())
            finals.push_back(base + f);
        Transducer from_i(gamma, extra, 0, std::move(finals), std::move(trans));
        rel.push_back(t_canonicalize(t_union(t_with_alphabet(t0, gamma), t_trim(from_i))));
    }

    bool eps_in_language = !nfa_is_empty(nfa_intersect(m.initial, m.final));
    Nfa i_vertex = nfa_word(gamma, {i_letter});
    Nfa new_final = nfa_with_alphabet(m.final, gamma);
    if (eps_in_language)
        new_final = nfa_union(new_final, i_vertex);

    GraphConversion out{
        InfiniteAutomaton{RationalGraph(gamma, m.graph.edge_labels(), std::move(rel)),
                          i_vertex, nfa_determinize_minimize(new_final)},
        {}};
    out.report.conversion = "onepoint";
    out.report.output_kind = "graph";
    out.report.fresh_symbols = {i_name};
    for (const auto& name : m.graph.edge_labels()->names()) {
        TransducerClass c;
        c.left_synchronized = synchronized_in;
        out.report.class_claims.emplace_back(name, c);
    }
    out.report.oracle_bound = 8;
    out.report.notes.emplace_back("epsilon_in_language", eps_in_language ? "yes" : "no");
    return out;
}

// -------------------------------------------------------------- synch2ratfd

namespace {

/// Common engine for the single-initial-vertex finite-out-degree
/// construction; `stretch` is (x^n → x^{kn}) for the general case and the
/// synchronized (x^n → x^{n+c}) for square tiling systems.
GraphConversion build_ratfd(const InfiniteAutomaton& r, Letter star, const Transducer& stretch,
                            const Transducer& stretch2, ConversionReport report) {
    const AlphabetRef& gamma_r = r.graph.vertex_alphabet();
    const AlphabetRef& sigma = r.graph.edge_labels();

    // vertex alphabet: spelled-out edge labels, a separator bar, then Γ
    std::vector<std::string> names;
    for (const auto& n : sigma->names())
        if (!gamma_r->contains(n))
            names.push_back(n);
    std::string bar = "|";
    {
        std::vector<std::string> taken = gamma_r->names();
        taken.insert(taken.end(), names.begin(), names.end());
        Alphabet tmp(taken);
        bar = fresh_name(tmp, "|");
    }
    names.push_back(bar);
    AlphabetRef gamma =
        alphabet_extend(gamma_r, std::vector<std::string>(names.begin(), names.end()));
    Letter bar_l = gamma->require(bar);
    auto label_letter = [&](Letter a) { return gamma->require(sigma->name(a)); };

    Nfa gamma_no_star = [&]() { // (Γ_r ∖ {star})*
        std::vector<NfaTransition> trans;
        for (Letter x = 0; x < gamma_r->size(); ++x)
            if (x != star)
                trans.push_back({0, gamma->require(gamma_r->name(x)), 0});
        return Nfa(gamma, 1, 0, {0}, std::move(trans));
    }();

    Transducer id_labels = [&]() { // identity over spelled-out label words
        std::vector<TransducerTransition> trans;
        for (Letter a = 0; a < sigma->size(); ++a)
            trans.push_back({0, label_letter(a), label_letter(a), 0});
        return Transducer(gamma, 1, 0, {0}, std::move(trans));
    }();

    auto lift = [&](const Transducer& t) { return t_with_alphabet(t, gamma); };
    Transducer shrink = shrink_relation(gamma, gamma->require(gamma_r->name(star)));
    Letter star_l = gamma->require(gamma_r->name(star));

    auto drop_label = [&](Letter a) { return t_pair(gamma, {label_letter(a)}, {}); };
    auto bar_to_label_bar = [&](Letter a) {
        return t_pair(gamma, {bar_l}, {label_letter(a), bar_l});
    };
    Transducer drop_bar = t_pair(gamma, {bar_l}, {});
    Nfa just_star = nfa_word(gamma, {star_l});

    std::vector<Transducer> rel_r;
    for (const auto& t : r.graph.relations())
        rel_r.push_back(lift(t));

    std::vector<Transducer> rel_out;
    for (Letter a = 0; a < sigma->size(); ++a) {
        // Type 1: u|x^n → ua|x^(stretched twice)
        Transducer ty = t_concat(id_labels, t_concat(bar_to_label_bar(a), lift(stretch2)));
        // Type 2: bu|x^n → ua| stretch∘shrink∘T_b(x^n)
        for (Letter b = 0; b < sigma->size(); ++b) {
            Transducer piece = t_compose(lift(stretch), t_compose(shrink, rel_r[b]));
            Transducer t2 = t_concat(
                drop_label(b), t_concat(id_labels, t_concat(bar_to_label_bar(a), piece)));
            ty = t_union(ty, t2);
        }
        // Type 3: bcu|x^n → ua| shrink∘T_b∘T_c(x^n)
        for (Letter b = 0; b < sigma->size(); ++b)
            for (Letter c = 0; c < sigma->size(); ++c) {
                Transducer piece = t_compose(shrink, t_compose(rel_r[b], rel_r[c]));
                Transducer t3 = t_concat(
                    drop_label(b),
                    t_concat(drop_label(c),
                             t_concat(id_labels, t_concat(bar_to_label_bar(a), piece))));
                ty = t_union(ty, t3);
            }
        // Type 4: bcu|w → ua|T_b∘T_c(w), w without the star letter
        for (Letter b = 0; b < sigma->size(); ++b)
            for (Letter c = 0; c < sigma->size(); ++c) {
                Transducer piece =
                    t_restrict_domain(t_compose(rel_r[b], rel_r[c]), gamma_no_star);
                Transducer t4 = t_concat(
                    drop_label(b),
                    t_concat(drop_label(c),
                             t_concat(id_labels, t_concat(bar_to_label_bar(a), piece))));
                ty = t_union(ty, t4);
            }
        // Type 5: b|w → T_b∘T_a(w), w without the star letter; bar-less target
        for (Letter b = 0; b < sigma->size(); ++b) {
            Transducer piece = t_restrict_domain(t_compose(rel_r[b], rel_r[a]), gamma_no_star);
            Transducer t5 = t_concat(drop_label(b), t_concat(drop_bar, piece));
            ty = t_union(ty, t5);
        }
        // Type 5': b|x^n → shrink∘T_b∘T_a(x^n); the star-domain counterpart
        for (Letter b = 0; b < sigma->size(); ++b) {
            Transducer piece = t_compose(shrink, t_compose(rel_r[b], rel_r[a]));
            Transducer t5s = t_concat(drop_label(b), t_concat(drop_bar, piece));
            ty = t_union(ty, t5s);
        }
        // Type 6: |x → stretch∘shrink∘T_a(x)
        {
            Transducer piece =
                t_restrict_domain(t_compose(lift(stretch), t_compose(shrink, rel_r[a])),
                                  just_star);
            ty = t_union(ty, t_concat(drop_bar, piece));
        }
        rel_out.push_back(t_trim(ty));
    }

    Nfa initial = nfa_word(gamma, {bar_l, star_l});
    Nfa final_set = nfa_with_alphabet(r.final, gamma);

    GraphConversion out{
        InfiniteAutomaton{RationalGraph(gamma, sigma, std::move(rel_out)), initial, final_set},
        std::move(report)};
    out.report.fresh_symbols.push_back(bar);
    out.report.notes.emplace_back("initial_vertex", bar + gamma_r->name(star));
    return out;
}

/// Normalize the initial set of a synchronous graph to x* for a fresh (or
/// reusable) letter x, with F ∖ {ε} as final set.
struct StarInitial {
    InfiniteAutomaton automaton;
    Letter star;
    bool fresh;
    std::string star_name;
};

StarInitial normalize_initial_star(const InfiniteAutomaton& m) {
    const AlphabetRef& gamma = m.graph.vertex_alphabet();
    // reuse x when I is literally x* and x never occurs in images
    for (Letter x = 0; x < gamma->size(); ++x) {
        if (!nfa_equal(m.initial, nfa_letter_star(gamma, x)))
            continue;
        bool in_images = false;
        for (const auto& t : m.graph.relations())
            for (const auto& tr : t.transitions())
                if (tr.out == x)
                    in_images = true;
        if (in_images)
            continue;
        Nfa final_set = nfa_determinize_minimize(
            nfa_difference(m.final, nfa_epsilon(gamma)));
        return {InfiniteAutomaton{m.graph, m.initial, std::move(final_set)}, x, false,
                gamma->name(x)};
    }
    std::string h_name = fresh_name(*gamma, "#");
    AlphabetRef wider = alphabet_extend(gamma, {h_name});
    Letter h = wider->require(h_name);
    Transducer t_h = input_counter(m.initial, wider, h);
    std::vector<Transducer> rel;
    for (const auto& t0 : m.graph.relations()) {
        Transducer k = t_with_alphabet(t0, wider);
        rel.push_back(t_canonicalize(t_union(t_compose(t_h, k), k)));
    }
    Nfa final_set = nfa_determinize_minimize(
        nfa_difference(nfa_with_alphabet(m.final, wider), nfa_epsilon(wider)));
    return {InfiniteAutomaton{RationalGraph(wider, m.graph.edge_labels(), std::move(rel)),
                              nfa_letter_star(wider, h), std::move(final_set)},
            h, true, h_name};
}

} // namespace

GraphConversion synch2ratfd(const InfiniteAutomaton& m) {
    require(all_synchronous(m.graph),
            "finite-out-degree construction needs a synchronous graph");
    require(nfa_is_empty(nfa_intersect(m.initial, m.final)),
            "finite-out-degree construction needs disjoint initial and final sets");

    StarInitial r = normalize_initial_star(m);

    // the vertex-length constant: paths of length n need initial vertices no
    // longer than k^n, where k bounds the per-column cell count of the
    // associated tiling system
    StarNormalized sn = star_normalize_unambiguous(r.automaton);
    int k = std::max(2, max_cells_per_label(sn));

    const AlphabetRef& gr = r.automaton.graph.vertex_alphabet();
    Transducer stretch = stretch_relation(gr, r.star, k);
    Transducer stretch2 = stretch_relation(gr, r.star, k * k);

    ConversionReport report;
    report.conversion = "synch2ratfd";
    report.output_kind = "graph";
    if (r.fresh)
        report.fresh_symbols.push_back(r.star_name);
    report.oracle_bound = 4;
    report.notes.emplace_back("k", std::to_string(k));

    return build_ratfd(r.automaton, r.star, stretch, stretch2, std::move(report));
}

namespace {

// Direct left-synchronized machines for the square-picture variant: every
// edge relation is assembled from two-sided positional pairings with
// one-sided tails only at the end of a run, so classify reports the class
// the construction promises. X below is always a synchronous (ε-free)
// transducer applied to the hidden intermediate word.

struct SquarePieces {
    AlphabetRef gamma;
    std::vector<Letter> labels; // spelled-out edge labels as vertex letters
    Letter bar, star;

    // paired zone after the aligned bar: reads the star block, X consumes
    // #^m with m ∈ [1, n + over]; surplus reads coast one-sided
    Transducer star_zone(const Transducer& x, int over) const {
        // states: 2*q = before any step, 2*q+1 = stepped; then COAST, then
        // OVER states (q, j) for phantom inputs
        int nx = x.num_states();
        int coast = 2 * nx;
        int base_over = coast + 1;
        auto over_id = [&](int q, int j) { return base_over + q * over + (j - 1); };
        std::vector<TransducerTransition> trans;
        std::vector<int> finals{coast};
        for (int q = 0; q < nx; ++q) {
            for (const auto& tr : x.out(q)) {
                if (tr.in != star)
                    continue;
                trans.push_back({2 * q, star, tr.out, 2 * tr.dst + 1});
                trans.push_back({2 * q + 1, star, tr.out, 2 * tr.dst + 1});
                if (over >= 1) {
                    trans.push_back({2 * q + 1, EPS, tr.out, over_id(tr.dst, 1)});
                    for (int j = 1; j < over; ++j)
                        trans.push_back({over_id(q, j), EPS, tr.out, over_id(tr.dst, j + 1)});
                }
            }
            if (x.is_final(q)) {
                finals.push_back(2 * q + 1);
                trans.push_back({2 * q + 1, star, EPS, coast});
                for (int j = 1; j <= over; ++j)
                    finals.push_back(over_id(q, j));
            }
        }
        trans.push_back({coast, star, EPS, coast});
        int total = base_over + (over > 0 ? nx * over : 0);
        return Transducer(gamma, std::max(total, 1), 2 * x.initial(), std::move(finals),
                          std::move(trans));
    }

    // zone with the output running one position early: (bar, v1) then each
    // read verifies the pending guess through an X step and may emit the
    // next; m ≤ n for the star kind (coasting), m = |w| for the Γ kind
    Transducer shifted_zone(const Transducer& x, bool star_kind) const {
        int nx = x.num_states();
        int ng = gamma->size();
        // states: 0 = start; 1 + (q*ng + g) = pending guess g at X-state q;
        // then DONE(q) = 1 + nx*ng + q (pending cleared)
        auto pend = [&](int q, Letter g) { return 1 + q * ng + g; };
        auto done = [&](int q) { return 1 + nx * ng + q; };
        std::vector<TransducerTransition> trans;
        for (Letter g = 0; g < ng; ++g)
            trans.push_back({0, bar, g, pend(x.initial(), g)});
        // the shrunk star block keeps at least one intermediate letter
        if (!star_kind && x.is_final(x.initial()))
            trans.push_back({0, bar, EPS, done(x.initial())});
        for (int q = 0; q < nx; ++q) {
            for (const auto& tr : x.out(q)) {
                bool domain_ok = star_kind ? tr.in == star : tr.in != star;
                if (!domain_ok)
                    continue;
                for (Letter z = 0; z < ng; ++z)
                    trans.push_back({pend(q, tr.out), tr.in, z, pend(tr.dst, z)});
                if (x.is_final(tr.dst))
                    trans.push_back({pend(q, tr.out), tr.in, EPS, done(tr.dst)});
            }
            if (star_kind && x.is_final(q))
                trans.push_back({done(q), star, EPS, done(q)});
        }
        std::vector<int> real_finals;
        for (int q = 0; q < nx; ++q)
            if (x.is_final(q))
                real_finals.push_back(done(q));
        return Transducer(gamma, 1 + nx * ng + nx, 0, std::move(real_finals),
                          std::move(trans));
    }

    // bar-less zone of types 5 and 5': reads b, bar, then the zone with the
    // output running two positions early
    Transducer dropped_zone(Letter b_label, const Transducer& x, bool star_kind) const {
        int nx = x.num_states();
        int ng = gamma->size();
        // states: S0; G1(g); pair states (q, g1, g2); drain (q, g); done(q)
        int S0 = 0;
        auto g1_id = [&](Letter g) { return 1 + g; };
        auto pair_id = [&](int q, Letter g1, Letter g2) {
            return 1 + ng + (q * ng + g1) * ng + g2;
        };
        int drain_base = 1 + ng + nx * ng * ng;
        auto drain_id = [&](int q, Letter g) { return drain_base + q * ng + g; };
        int done_base = drain_base + nx * ng;
        auto done_id = [&](int q) { return done_base + q; };
        std::vector<TransducerTransition> trans;
        for (Letter g = 0; g < ng; ++g) {
            trans.push_back({S0, b_label, g, g1_id(g)});
            for (Letter g2 = 0; g2 < ng; ++g2)
                trans.push_back({g1_id(g), bar, g2, pair_id(x.initial(), g, g2)});
            trans.push_back({g1_id(g), bar, EPS, drain_id(x.initial(), g)});
        }
        int stopped_pre = done_base + nx;
        if (!star_kind) { // empty block only arises on the plain-word side
            trans.push_back({S0, b_label, EPS, stopped_pre});
            trans.push_back({stopped_pre, bar, EPS, done_id(x.initial())});
        }
        for (int q = 0; q < nx; ++q) {
            for (const auto& tr : x.out(q)) {
                bool domain_ok = star_kind ? tr.in == star : tr.in != star;
                if (!domain_ok)
                    continue;
                for (Letter g1 = 0; g1 < ng; ++g1)
                    if (g1 == tr.out) {
                        for (Letter g2 = 0; g2 < ng; ++g2) {
                            for (Letter z = 0; z < ng; ++z)
                                trans.push_back({pair_id(q, g1, g2), tr.in, z,
                                                 pair_id(tr.dst, g2, z)});
                            trans.push_back(
                                {pair_id(q, g1, g2), tr.in, EPS, drain_id(tr.dst, g2)});
                        }
                    }
                for (Letter g = 0; g < ng; ++g)
                    if (g == tr.out)
                        trans.push_back({drain_id(q, g), tr.in, EPS, done_id(tr.dst)});
            }
            if (star_kind && x.is_final(q))
                trans.push_back({done_id(q), star, EPS, done_id(q)});
        }
        std::vector<int> finals;
        for (int q = 0; q < nx; ++q)
            if (x.is_final(q))
                finals.push_back(done_id(q));
        return Transducer(gamma, done_base + nx + 1, S0, std::move(finals), std::move(trans));
    }
};

} // namespace

GraphConversion squarets2synchgraph(const TilingSystem& s, int c) {
    require(c >= 1, "height slope must be at least 1");
    GraphConversion g = ts2synch(s);
    // ts2synch yields I = frame*, images frame-free, so the star letter is
    // reused directly
    StarInitial r = normalize_initial_star(g.automaton);
    require(!r.fresh, "column graphs start from a one-letter star set");

    const AlphabetRef& gamma_r = r.automaton.graph.vertex_alphabet();
    const AlphabetRef& sigma = r.automaton.graph.edge_labels();
    std::vector<std::string> extra;
    for (const auto& n : sigma->names())
        if (!gamma_r->contains(n))
            extra.push_back(n);
    std::string bar_name = "|";
    {
        std::vector<std::string> taken = gamma_r->names();
        taken.insert(taken.end(), extra.begin(), extra.end());
        bar_name = fresh_name(Alphabet(taken), "|");
    }
    extra.push_back(bar_name);
    AlphabetRef gamma = alphabet_extend(gamma_r, extra);

    SquarePieces pieces;
    pieces.gamma = gamma;
    pieces.bar = gamma->require(bar_name);
    pieces.star = gamma->require(gamma_r->name(r.star));
    for (const auto& n : sigma->names())
        pieces.labels.push_back(gamma->require(n));

    std::vector<Transducer> rel_r;
    for (const auto& t : r.automaton.graph.relations())
        rel_r.push_back(t_with_alphabet(t, gamma));

    auto copy_then_a_prefix = [&](Letter a_label) {
        // identity over label words, then (bar, a)(star, bar), then the
        // padded star block with a fixed-length output tail
        std::vector<TransducerTransition> trans;
        for (Letter l : pieces.labels)
            trans.push_back({0, l, l, 0});
        trans.push_back({0, pieces.bar, a_label, 1});
        trans.push_back({1, pieces.star, pieces.bar, 2});
        trans.push_back({2, pieces.star, pieces.star, 2});
        int tail = 2 * c + 1;
        for (int i = 0; i < tail; ++i)
            trans.push_back({2 + i, EPS, pieces.star, 3 + i});
        return Transducer(gamma, 3 + tail, 0, {2 + tail}, std::move(trans));
    };
    auto shift1_prefix = [&](Letter b_label, Letter a_label) {
        // (b,u1)(u1,u2)…(uj,a)(bar,bar): one dropped label, all two-sided
        int ng = static_cast<int>(pieces.labels.size());
        auto st = [&](int i) { return 1 + i; }; // pending label index
        std::vector<TransducerTransition> trans;
        for (int y = 0; y < ng; ++y)
            trans.push_back({0, b_label, pieces.labels[y], st(y)});
        trans.push_back({0, b_label, a_label, 1 + ng});
        for (int y = 0; y < ng; ++y) {
            for (int z = 0; z < ng; ++z)
                trans.push_back({st(y), pieces.labels[y], pieces.labels[z], st(z)});
            trans.push_back({st(y), pieces.labels[y], a_label, 1 + ng});
        }
        trans.push_back({1 + ng, pieces.bar, pieces.bar, 2 + ng});
        return Transducer(gamma, 3 + ng, 0, {2 + ng}, std::move(trans));
    };
    auto shift2_prefix = [&](Letter b_label, Letter c_label, Letter a_label) {
        // two dropped labels; ends after emitting the free a and bar, with
        // the bar read left to the zone piece
        int ng = static_cast<int>(pieces.labels.size());
        // states: 0; after-b(g) = 1+g; pair(g1,g2); tail-a(g); tail-bar
        auto afterb = [&](int g) { return 1 + g; };
        auto pairst = [&](int g1, int g2) { return 1 + ng + g1 * ng + g2; };
        auto taila = [&](int g) { return 1 + ng + ng * ng + g; };
        int tailbar = 1 + ng + ng * ng + ng;
        int j0 = tailbar + 1;
        std::vector<TransducerTransition> trans;
        for (int g = 0; g < ng; ++g) {
            trans.push_back({0, b_label, pieces.labels[g], afterb(g)});
            for (int g2 = 0; g2 < ng; ++g2)
                trans.push_back({afterb(g), c_label, pieces.labels[g2], pairst(g, g2)});
            trans.push_back({afterb(g), c_label, a_label, taila(g)});
        }
        // no kept labels at all: (b,a)(c,bar)
        trans.push_back({0, b_label, a_label, j0});
        trans.push_back({j0, c_label, pieces.bar, tailbar + 2});
        for (int g1 = 0; g1 < ng; ++g1)
            for (int g2 = 0; g2 < ng; ++g2) {
                for (int z = 0; z < ng; ++z)
                    trans.push_back(
                        {pairst(g1, g2), pieces.labels[g1], pieces.labels[z], pairst(g2, z)});
                trans.push_back({pairst(g1, g2), pieces.labels[g1], a_label, taila(g2)});
            }
        for (int g = 0; g < ng; ++g)
            trans.push_back({taila(g), pieces.labels[g], pieces.bar, tailbar});
        // final: tailbar (j ≥ 1) and tailbar+2 (j = 0)
        return Transducer(gamma, tailbar + 3, 0, {tailbar, tailbar + 2},
                          std::move(trans));
    };

    int nl = sigma->size();
    std::vector<Transducer> rel_out;
    for (Letter a = 0; a < nl; ++a) {
        Letter a_label = pieces.labels[a];
        Transducer ty = copy_then_a_prefix(a_label); // Type 1
        for (Letter b = 0; b < nl; ++b) {
            // Type 2: one label consumed, X = T_b on #^m, m ≤ n + c
            ty = t_union(ty, t_concat(shift1_prefix(pieces.labels[b], a_label),
                                      pieces.star_zone(rel_r[b], c)));
            for (Letter cc = 0; cc < nl; ++cc) {
                Transducer x = t_compose(rel_r[b], rel_r[cc]);
                // Type 3: two labels consumed, shrunk star block
                ty = t_union(ty, t_concat(shift2_prefix(pieces.labels[b], pieces.labels[cc],
                                                        a_label),
                                          pieces.shifted_zone(x, /*star_kind=*/true)));
                // Type 4: two labels consumed, plain word block
                ty = t_union(ty, t_concat(shift2_prefix(pieces.labels[b], pieces.labels[cc],
                                                        a_label),
                                          pieces.shifted_zone(x, /*star_kind=*/false)));
            }
            // Types 5 and 5': bar-less targets
            Transducer x5 = t_compose(rel_r[b], rel_r[a]);
            ty = t_union(ty, pieces.dropped_zone(pieces.labels[b], x5, /*star_kind=*/false));
            ty = t_union(ty, pieces.dropped_zone(pieces.labels[b], x5, /*star_kind=*/true));
        }
        // Type 6: from the initial vertex |#, target in T_a(#^m), m ≤ 1+c
        {
            Nfa image = nfa_empty(gamma);
            Nfa block = nfa_epsilon(gamma);
            for (int m = 1; m <= 1 + c; ++m) {
                block = nfa_concat(block, nfa_word(gamma, {pieces.star}));
                image = nfa_union(image, t_apply_lang(rel_r[a], block));
            }
            Nfa img = nfa_determinize(image);
            // (bar, v1)(star, v2) then spell the rest one-sided
            int base = 2;
            std::vector<TransducerTransition> trans;
            std::vector<int> finals;
            for (const auto& tr : img.transitions())
                trans.push_back({base + tr.src, EPS, tr.letter, base + tr.dst});
            // align the first two output letters with bar and star
            int mid = base + img.num_states();
            for (const auto& [l1, d1] : img.out(img.initial())) {
                trans.push_back({0, pieces.bar, l1, mid + d1});
                for (const auto& [l2, d2] : img.out(d1))
                    trans.push_back({mid + d1, pieces.star, l2, base + d2});
            }
            for (int f2 = 0; f2 < img.num_states(); ++f2)
                if (img.is_final(f2))
                    finals.push_back(base + f2);
            // (star, ε) after a length-1 image
            int coast = mid + img.num_states();
            for (int d1 = 0; d1 < img.num_states(); ++d1)
                if (img.is_final(d1))
                    trans.push_back({mid + d1, pieces.star, EPS, coast});
            finals.push_back(coast);
            Transducer t6(gamma, coast + 1, 0, std::move(finals), std::move(trans));
            ty = t_union(ty, t_trim(t6));
        }
        rel_out.push_back(t_trim(ty));
    }

    Nfa initial = nfa_word(gamma, {pieces.bar, pieces.star});
    Nfa final_set = nfa_with_alphabet(r.automaton.final, gamma);

    ConversionReport report;
    report.conversion = "squarets2synchgraph";
    report.output_kind = "graph";
    report.oracle_bound = 6;
    report.fresh_symbols = {bar_name};
    report.notes.emplace_back("height_slope", std::to_string(c));
    report.notes.emplace_back("initial_vertex", bar_name + gamma_r->name(r.star));
    for (const auto& name : sigma->names())
        report.class_claims.emplace_back(name, claim_left_synchronized());
    return GraphConversion{
        InfiniteAutomaton{RationalGraph(gamma, sigma, std::move(rel_out)), initial, final_set},
        std::move(report)};
}

// --------------------------------------------------------- synchfd2squarets

TilingConversion synchfd2squarets(const InfiniteAutomaton& m) {
    auto initial_count = nfa_count_words(m.initial);
    require(initial_count && *initial_count == 1,
            "square-picture construction needs a single initial vertex");
    int growth = 0;
    for (Letter a = 0; a < m.graph.edge_labels()->size(); ++a) {
        const Transducer& t = m.graph.relation(a);
        TransducerClass cls = t_classify(t);
        require(cls.left_synchronized,
                "square-picture construction needs left-synchronized edge relations");
        // finite out-degree = finitely many images per vertex = bounded
        // length growth along edges; shrinkage may be unbounded
        auto grow_bound = t_imbalance_bound(t_invert(t));
        require(grow_bound.has_value(),
                "square-picture construction needs finite out-degree (bounded image growth)");
        growth = std::max(growth, *grow_bound);
    }
    std::string pad = fresh_name(*m.graph.vertex_alphabet(), "#");
    GraphConversion synch = rat2synch(m, pad);
    TilingConversion out = synch2ts(synch.automaton);
    out.report.conversion = "synchfd2squarets";
    out.report.fresh_symbols.push_back(pad);
    out.report.notes.emplace_back("height_constant_k", std::to_string(std::max(1, growth)));
    Word start = *nfa_shortest(m.initial);
    out.report.notes.emplace_back("initial_vertex_length", std::to_string(start.size()));
    // certify heights on the oracle range
    int k = std::max(1, growth);
    int bound = 6;
    out.report.oracle_bound = bound;
    int slack = 0;
    for (const Word& w : g_enumerate_language(m, bound)) {
        if (w.empty())
            continue;
        Word tw;
        for (Letter l : w)
            tw.push_back(out.system.work()->require(m.graph.edge_labels()->name(l)));
        auto h = ts_min_height(out.system, tw);
        if (!h)
            throw precondition_error("tiling construction lost a word of the source language");
        slack = std::max(slack,
                         static_cast<int>(*h) - k * static_cast<int>(w.size()) -
                             static_cast<int>(start.size()));
    }
    out.report.notes.emplace_back("height_slack", std::to_string(slack));
    return out;
}

// ----------------------------------------------------------- global determinism

bool check_global_det(const RationalGraph& g, const Nfa& initial, const Nfa& final) {
    for (const auto& t : g.relations())
        if (!t_classify(t).synchronous)
            throw class_error("global determinism is defined for synchronous relations");
    std::vector<Transducer> family;
    for (const auto& t : g.relations())
        family.push_back(t_trim(t_normalize(t)));
    Transducer t_i = t_identity(nfa_determinize_minimize(nfa_with_alphabet(initial, g.vertex_alphabet())));
    Transducer t_f = t_identity(nfa_determinize_minimize(nfa_with_alphabet(final, g.vertex_alphabet())));
    t_i = t_with_alphabet(t_i, g.vertex_alphabet());
    t_f = t_with_alphabet(t_f, g.vertex_alphabet());

    // per-transducer label determinism
    auto label_deterministic = [](const Transducer& t) {
        std::set<std::tuple<int, Letter, Letter>> seen;
        for (const auto& tr : t.transitions())
            if (!seen.emplace(tr.src, tr.in, tr.out).second)
                return false; // same source and label twice (targets differ or dup)
        // duplicates with equal targets were removed by normalization
        return true;
    };
    std::vector<const Transducer*> firsts, seconds;
    for (const auto& t : family) {
        if (!label_deterministic(t))
            return false;
        firsts.push_back(&t);
        seconds.push_back(&t);
    }
    if (!label_deterministic(t_i) || !label_deterministic(t_f))
        return false;
    firsts.push_back(&t_i);
    seconds.push_back(&t_f);

    for (const Transducer* t1 : firsts)
        for (const Transducer* t2 : seconds) {
            // per input letter a read at q1, the letter b handed to q2 must
            // be unique: outputs of q1 on a, intersected with inputs of q2
            std::vector<std::map<Letter, std::set<Letter>>> outs(t1->num_states());
            std::vector<std::set<Letter>> ins(t2->num_states());
            for (const auto& tr : t1->transitions())
                outs[tr.src][tr.in].insert(tr.out);
            for (const auto& tr : t2->transitions())
                ins[tr.src].insert(tr.in);
            for (int q1 = 0; q1 < t1->num_states(); ++q1)
                for (int q2 = 0; q2 < t2->num_states(); ++q2)
                    for (const auto& [a, bs] : outs[q1]) {
                        int count = 0;
                        for (Letter b : bs)
                            if (ins[q2].count(b))
                                ++count;
                        if (count > 1)
                            return false;
                    }
        }
    return true;
}

// ------------------------------------------------------------------ ca2graph

GraphConversion ca2graph(const CellularAutomaton& c) {
    require(ca_is_deterministic(c),
            "the graph construction needs a deterministic cellular automaton: every rule "
            "context admits at most one result letter");
    int n = c.work()->size();
    int lb = c.lbracket(), rb = c.rbracket();
    auto comp_name = [&](int x) {
        if (x == lb)
            return c.lbracket_name();
        if (x == rb)
            return c.rbracket_name();
        return c.work()->name(x);
    };
    // vertex letters: input letters, both brackets, one letter per rule
    std::vector<std::string> names;
    std::vector<Letter> sigma_letters;
    for (Letter a : c.sigma())
        names.push_back(c.work()->name(a));
    names.push_back(c.lbracket_name());
    names.push_back(c.rbracket_name());
    std::vector<std::string> rule_names;
    for (const auto& r : c.rules()) {
        std::string nm = comp_name(r[0]) + "." + comp_name(r[1]) + "." + comp_name(r[2]) + "." +
                         comp_name(r[3]);
        rule_names.push_back(nm);
        names.push_back(nm);
    }
    AlphabetRef gamma = make_alphabet(names);
    Letter lb_l = gamma->require(c.lbracket_name());
    auto rule_letter = [&](size_t idx) { return gamma->require(rule_names[idx]); };
    std::vector<std::string> label_names;
    for (Letter a : c.sigma())
        label_names.push_back(c.work()->name(a));
    AlphabetRef labels = make_alphabet(label_names);

    // rules indexed by (self, right) and by (left, self)
    std::map<std::pair<int, int>, std::vector<size_t>> by_mid, by_left;
    for (size_t i = 0; i < c.rules().size(); ++i) {
        const auto& r = c.rules()[i];
        by_mid[{r[1], r[2]}].push_back(i);
        by_left[{r[0], r[1]}].push_back(i);
    }

    std::vector<Transducer> rel;
    for (Letter li = 0; li < labels->size(); ++li) {
        Letter a = c.sigma()[li]; // work-letter id
        Letter a_vertex = gamma->require(c.work()->name(a));
        // states: 0 = start; 1 + (X * (n+1) + Y) for X ∈ Γ∪{[}, Y ∈ Γ
        // X is encoded 0..n-1 for work letters, n for the left bracket
        auto st = [&](int X, int Y) {
            int xi = X == lb ? n : X;
            return 1 + xi * n + Y;
        };
        std::vector<TransducerTransition> trans;
        trans.push_back({0, lb_l, a_vertex, st(lb, a)});
        for (Letter b : c.sigma())
            trans.push_back({0, gamma->require(c.work()->name(b)), a_vertex, st(b, a)});
        // left border: rules ([, A, B, A') read the bracket column
        for (int A = 0; A < n; ++A)
            for (size_t i : by_left.count({lb, A}) ? by_left[{lb, A}] : std::vector<size_t>{}) {
                const auto& d1 = c.rules()[i];
                trans.push_back({st(lb, A), lb_l, rule_letter(i), st(lb, d1[3])});
            }
        // interior: d1 = (A,B,C,B') read from the left tape, d2 = (B,C,D,C')
        // written on this tape
        for (int B = 0; B < n; ++B)
            for (int C = 0; C < n; ++C) {
                auto it1 = by_mid.find({B, C});
                auto it2 = by_left.find({B, C});
                if (it1 == by_mid.end() || it2 == by_left.end())
                    continue;
                for (size_t i : it1->second) {
                    const auto& d1 = c.rules()[i];
                    for (size_t j : it2->second) {
                        const auto& d2 = c.rules()[j];
                        trans.push_back(
                            {st(B, C), rule_letter(i), rule_letter(j), st(d1[3], d2[3])});
                    }
                }
            }
        std::vector<int> finals;
        for (int Y = 0; Y < n; ++Y) {
            if (!c.is_accepting(Y))
                continue;
            finals.push_back(st(lb, Y));
            for (int X = 0; X < n; ++X)
                if (c.is_accepting(X))
                    finals.push_back(st(X, Y));
        }
        Transducer t(gamma, 1 + (n + 1) * n, 0, std::move(finals), std::move(trans));
        rel.push_back(t_canonicalize(t));
    }

    Nfa initial = nfa_letter_star(gamma, lb_l);
    Nfa final_set = [&]() {
        // Σ · R* with R the rules whose right context is the closing bracket
        std::vector<NfaTransition> trans;
        for (Letter a : c.sigma())
            trans.push_back({0, gamma->require(c.work()->name(a)), 1});
        for (size_t i = 0; i < c.rules().size(); ++i)
            if (c.rules()[i][2] == rb)
                trans.push_back({1, rule_letter(i), 1});
        return Nfa(gamma, 2, 0, {1}, std::move(trans));
    }();

    GraphConversion out{
        InfiniteAutomaton{RationalGraph(gamma, labels, std::move(rel)), initial, final_set}, {}};
    out.report.conversion = "ca2graph";
    out.report.output_kind = "graph";
    out.report.fresh_symbols = {c.lbracket_name(), c.rbracket_name()};
    for (const auto& name : labels->names())
        out.report.class_claims.emplace_back(name, claim_synchronous());
    out.report.oracle_bound = 6;
    out.report.notes.emplace_back("globally_deterministic", "checkable via check-globdet");
    return out;
}

// ------------------------------------------------- sequential + a* ⇒ det tiling

TilingSystem seq_from_astar_is_det(const InfiniteAutomaton& m, int probe_width) {
    for (Letter a = 0; a < m.graph.edge_labels()->size(); ++a) {
        TransducerClass cls = t_classify(m.graph.relation(a));
        require(cls.sequential && cls.synchronous,
                "this construction needs sequential synchronous edge relations");
    }
    bool star_initial = false;
    for (Letter x = 0; x < m.graph.vertex_alphabet()->size() && !star_initial; ++x)
        star_initial = nfa_equal(m.initial, nfa_letter_star(m.graph.vertex_alphabet(), x));
    require(star_initial, "this construction needs an initial set of the form x*");
    TilingConversion conv = synch2ts(m);
    if (!ts_det_probe(conv.system, probe_width))
        throw class_error("construction did not yield a deterministic tiling system");
    return conv.system;
}

} // namespace ratg
