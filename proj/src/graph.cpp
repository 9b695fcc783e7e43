#include "ratgraph/graph.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace ratg {

RationalGraph::RationalGraph(AlphabetRef vertex_alphabet, AlphabetRef edge_labels,
                             std::vector<Transducer> relations)
    : vertex_alphabet_(std::move(vertex_alphabet)),
      edge_labels_(std::move(edge_labels)),
      relations_(std::move(relations)) {
    if (edge_labels_->size() == 0)
        throw input_error("a rational graph needs at least one edge label");
    if (static_cast<int>(relations_.size()) != edge_labels_->size())
        throw input_error("one transducer per edge label required");
    for (auto& t : relations_)
        if (!same_alphabet(t.alphabet(), vertex_alphabet_))
            t = t_with_alphabet(t, vertex_alphabet_);
}

const Transducer& RationalGraph::relation(Letter label) const {
    if (label < 0 || label >= edge_labels_->size())
        throw input_error("edge label out of range");
    return relations_[label];
}

std::vector<std::pair<Letter, Word>> g_out_edges(const RationalGraph& g, const Word& v,
                                                 int max_target_len) {
    std::vector<std::pair<Letter, Word>> out;
    for (Letter a = 0; a < g.edge_labels()->size(); ++a) {
        Nfa image = t_apply_word(g.relation(a), v);
        for (Word& w : nfa_enumerate(image, max_target_len))
            out.emplace_back(a, std::move(w));
    }
    std::sort(out.begin(), out.end());
    return out;
}

Cardinality g_out_degree(const RationalGraph& g, const Word& v) {
    Cardinality total;
    for (Letter a = 0; a < g.edge_labels()->size(); ++a) {
        Nfa image = t_apply_word(g.relation(a), v);
        auto count = nfa_count_words(image);
        if (!count) {
            total.infinite = true;
            return total;
        }
        total.value += *count;
    }
    return total;
}

namespace {

void check_word(const InfiniteAutomaton& m, const Word& w) {
    for (Letter l : w)
        if (l < 0 || l >= m.graph.edge_labels()->size())
            throw input_error("word letter outside the edge-label alphabet");
}

} // namespace

bool g_member(const InfiniteAutomaton& m, const Word& w) {
    check_word(m, w);
    Nfa cur = nfa_determinize_minimize(m.initial);
    for (Letter a : w) {
        if (nfa_is_empty(cur))
            return false;
        cur = nfa_determinize_minimize(t_apply_lang(m.graph.relation(a), cur));
    }
    return !nfa_is_empty(nfa_intersect(cur, m.final));
}

std::vector<Word> g_enumerate_language(const InfiniteAutomaton& m, int max_len) {
    if (max_len < 0)
        throw input_error("max_len must be nonnegative");
    std::vector<Word> out;
    Word prefix;
    Nfa start = nfa_determinize_minimize(m.initial);
    std::function<void(const Nfa&, int)> dfs = [&](const Nfa& image, int remaining) {
        if (!nfa_is_empty(nfa_intersect(image, m.final)))
            out.push_back(prefix);
        if (remaining == 0)
            return;
        for (Letter a = 0; a < m.graph.edge_labels()->size(); ++a) {
            Nfa next = nfa_determinize_minimize(t_apply_lang(m.graph.relation(a), image));
            if (nfa_is_empty(next))
                continue;
            prefix.push_back(a);
            dfs(next, remaining - 1);
            prefix.pop_back();
        }
    };
    dfs(start, max_len);
    std::stable_sort(out.begin(), out.end(), [](const Word& x, const Word& y) {
        if (x.size() != y.size())
            return x.size() < y.size();
        return x < y;
    });
    return out;
}

namespace {

Nfa length_cap(const AlphabetRef& alphabet, int max_len) {
    // all words of length ≤ max_len
    std::vector<NfaTransition> trans;
    std::vector<int> finals;
    for (int i = 0; i <= max_len; ++i) {
        finals.push_back(i);
        if (i < max_len)
            for (Letter l = 0; l < alphabet->size(); ++l)
                trans.push_back({i, l, i + 1});
    }
    return Nfa(alphabet, max_len + 1, 0, std::move(finals), std::move(trans));
}

} // namespace

std::optional<PathWitness> g_witness(const InfiniteAutomaton& m, const Word& w,
                                     int max_vertex_len) {
    check_word(m, w);
    Nfa cap = length_cap(m.graph.vertex_alphabet(), max_vertex_len);
    std::vector<Nfa> layers;
    layers.push_back(nfa_determinize_minimize(nfa_intersect(m.initial, cap)));
    for (Letter a : w) {
        if (nfa_is_empty(layers.back()))
            return std::nullopt;
        Nfa img = t_apply_lang(m.graph.relation(a), layers.back());
        layers.push_back(nfa_determinize_minimize(nfa_intersect(img, cap)));
    }
    auto last = nfa_intersect(layers.back(), m.final);
    auto end = nfa_shortest(last);
    if (!end)
        return std::nullopt;
    PathWitness witness;
    witness.labels = w;
    witness.vertices.assign(w.size() + 1, Word{});
    witness.vertices.back() = *end;
    for (int j = static_cast<int>(w.size()) - 1; j >= 0; --j) {
        Transducer back = t_invert(m.graph.relation(w[j]));
        Nfa pre = t_apply_word(back, witness.vertices[j + 1]);
        auto v = nfa_shortest(nfa_intersect(pre, layers[j]));
        if (!v)
            return std::nullopt; // cannot happen: layers are forward-consistent
        witness.vertices[j] = *v;
    }
    return witness;
}

DetVerdict g_is_deterministic(const RationalGraph& g, int probe_len) {
    bool all_sync = true;
    for (const auto& t : g.relations())
        if (!t_classify(t).left_synchronized)
            all_sync = false;
    DetVerdict v;
    v.proved = all_sync;
    v.deterministic = true;
    for (const auto& t : g.relations()) {
        bool fn = all_sync ? t_is_functional_synchronized(t) : t_functional_probe(t, probe_len);
        if (!fn) {
            v.deterministic = false;
            break;
        }
    }
    return v;
}

bool g_det_member(const InfiniteAutomaton& m, const Word& start, const Word& w) {
    if (!g_is_deterministic(m.graph).deterministic)
        throw class_error("graph is not deterministic");
    check_word(m, w);
    Word cur = start;
    for (Letter a : w) {
        Nfa image = t_apply_word(m.graph.relation(a), cur);
        auto count = nfa_count_words(image);
        if (!count || *count > 1)
            throw class_error("edge relation produced several images; graph not deterministic");
        if (*count == 0)
            return false; // undefined image rejects
        cur = *nfa_shortest(image);
    }
    return nfa_member(m.final, cur);
}

std::uint64_t g_ambiguity_probe(const InfiniteAutomaton& m, int max_len, int max_vertex_len) {
    Nfa cap = length_cap(m.graph.vertex_alphabet(), max_vertex_len);
    std::uint64_t worst = 0;
    // enumerate words over the edge alphabet via the prefix tree of images
    struct Layer {
        std::vector<Word> vertices;
        std::vector<std::uint64_t> paths;
    };
    Layer start;
    start.vertices = nfa_enumerate(nfa_intersect(m.initial, cap), max_vertex_len);
    start.paths.assign(start.vertices.size(), 1);

    std::function<void(const Layer&, int)> dfs = [&](const Layer& layer, int remaining) {
        // accepting paths ending here
        std::uint64_t count = 0;
        for (size_t i = 0; i < layer.vertices.size(); ++i)
            if (nfa_member(m.final, layer.vertices[i]))
                count += layer.paths[i];
        worst = std::max(worst, count);
        if (remaining == 0)
            return;
        for (Letter a = 0; a < m.graph.edge_labels()->size(); ++a) {
            const Transducer& t = m.graph.relation(a);
            std::map<Word, std::uint64_t> next;
            for (size_t i = 0; i < layer.vertices.size(); ++i) {
                Nfa img = nfa_intersect(t_apply_word(t, layer.vertices[i]), cap);
                for (Word& v : nfa_enumerate(img, max_vertex_len))
                    next[std::move(v)] += layer.paths[i];
            }
            if (next.empty())
                continue;
            Layer nl;
            for (auto& [v, c] : next) {
                nl.vertices.push_back(v);
                nl.paths.push_back(c);
            }
            dfs(nl, remaining - 1);
        }
    };
    dfs(start, max_len);
    return worst;
}

RationalGraph g_project_labels(const RationalGraph& g,
                               const std::vector<std::pair<std::string, std::string>>& mapping) {
    std::map<std::string, std::string> map;
    for (const auto& [from, to] : mapping)
        map[from] = to;
    for (const auto& name : g.edge_labels()->names())
        if (!map.count(name))
            throw input_error("label projection must be total; missing: " + name);
    std::vector<std::string> new_names;
    for (const auto& name : g.edge_labels()->names()) {
        const std::string& img = map[name];
        if (std::find(new_names.begin(), new_names.end(), img) == new_names.end())
            new_names.push_back(img);
    }
    auto new_labels = make_alphabet(new_names);
    std::vector<std::optional<Transducer>> merged(new_names.size());
    for (Letter a = 0; a < g.edge_labels()->size(); ++a) {
        Letter target = new_labels->require(map[g.edge_labels()->name(a)]);
        if (!merged[target])
            merged[target] = g.relation(a);
        else
            merged[target] = t_union(*merged[target], g.relation(a));
    }
    std::vector<Transducer> relations;
    for (auto& t : merged)
        relations.push_back(std::move(*t));
    return RationalGraph(g.vertex_alphabet(), new_labels, std::move(relations));
}

std::vector<std::pair<int, Cardinality>> g_degree_table(const RationalGraph& g, const Word& v,
                                                        int radius) {
    std::vector<std::pair<int, Cardinality>> table;
    std::set<Word> seen{v};
    std::vector<Word> frontier{v};
    for (int dist = 0; dist <= radius; ++dist) {
        Cardinality worst;
        for (const Word& u : frontier) {
            Cardinality d = g_out_degree(g, u);
            if (d.infinite)
                worst.infinite = true;
            else if (!worst.infinite)
                worst.value = std::max(worst.value, d.value);
        }
        table.emplace_back(dist, worst);
        if (dist == radius)
            break;
        std::vector<Word> next;
        for (const Word& u : frontier)
            for (Letter a = 0; a < g.edge_labels()->size(); ++a) {
                Nfa image = t_apply_word(g.relation(a), u);
                auto longest = nfa_longest_length(image);
                if (!longest || *longest < 0)
                    continue; // infinite or empty image: nothing to expand
                for (Word& target : nfa_enumerate(image, *longest))
                    if (seen.insert(target).second)
                        next.push_back(std::move(target));
            }
        frontier = std::move(next);
        if (frontier.empty())
            break;
    }
    return table;
}

} // namespace ratg
