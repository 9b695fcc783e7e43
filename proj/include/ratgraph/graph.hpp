#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "ratgraph/transducer.hpp"

namespace ratg {

/// A finite count or "infinite".
struct Cardinality {
    bool infinite = false;
    std::uint64_t value = 0;
    bool operator==(const Cardinality& o) const {
        return infinite == o.infinite && (infinite || value == o.value);
    }
};

/// Answer of a determinism check, with whether it was proved exactly or only
/// probed up to a bound.
struct DetVerdict {
    bool deterministic = false;
    bool proved = false;
};

/// A concrete accepting path: vertices.size() == labels.size() + 1.
struct PathWitness {
    std::vector<Word> vertices;
    Word labels;
};

/// Infinite graph with word vertices; one transducer per edge label.
class RationalGraph {
public:
    RationalGraph(AlphabetRef vertex_alphabet, AlphabetRef edge_labels,
                  std::vector<Transducer> relations);

    const AlphabetRef& vertex_alphabet() const { return vertex_alphabet_; }
    const AlphabetRef& edge_labels() const { return edge_labels_; }
    const Transducer& relation(Letter label) const;
    const std::vector<Transducer>& relations() const { return relations_; }

private:
    AlphabetRef vertex_alphabet_;
    AlphabetRef edge_labels_;
    std::vector<Transducer> relations_;
};

/// A rational graph together with rational initial and final vertex sets.
struct InfiniteAutomaton {
    RationalGraph graph;
    Nfa initial;
    Nfa final;
};

/// All edges from v whose target length is ≤ max_target_len, sorted.
std::vector<std::pair<Letter, Word>> g_out_edges(const RationalGraph& g, const Word& v,
                                                 int max_target_len);

/// Labeled out-degree of a vertex (sum over labels of image sizes).
Cardinality g_out_degree(const RationalGraph& g, const Word& v);

/// Exact membership in the path language L(G, I, F) by iterated rational
/// images, determinize-minimized between steps.
bool g_member(const InfiniteAutomaton& m, const Word& w);

/// All words of L(G,I,F) with length ≤ max_len, length-lex ordered.
std::vector<Word> g_enumerate_language(const InfiniteAutomaton& m, int max_len);

/// A concrete accepting path for w with all vertex lengths ≤ max_vertex_len,
/// when one exists within that bound.
std::optional<PathWitness> g_witness(const InfiniteAutomaton& m, const Word& w,
                                     int max_vertex_len);

/// Deterministic iff every edge relation is functional: exact when all
/// relations are left-synchronized, otherwise probed to probe_len.
DetVerdict g_is_deterministic(const RationalGraph& g, int probe_len = 4);

/// Membership for deterministic graphs from a single start vertex: applies
/// each edge function in turn, rejecting on undefined images.
bool g_det_member(const InfiniteAutomaton& m, const Word& start, const Word& w);

/// Smallest c with (x,y) ∈ T ⇒ |x| ≤ |y| + c (nullopt = ∞).
inline std::optional<int> g_imbalance_bound(const Transducer& t) {
    return t_imbalance_bound(t);
}

/// Max over words |w| ≤ max_len of the number of distinct accepting paths
/// whose vertices all have length ≤ max_vertex_len.
std::uint64_t g_ambiguity_probe(const InfiniteAutomaton& m, int max_len, int max_vertex_len);

/// Merge edge labels through a total relabeling of Σ; transducers sharing an
/// image label are unioned.
RationalGraph g_project_labels(const RationalGraph& g,
                               const std::vector<std::pair<std::string, std::string>>& mapping);

/// Vertices at exactly each BFS distance 0..radius from v, with the max
/// out-degree per distance (degree experiments). Finite images are explored
/// exhaustively; a vertex of infinite out-degree stops the expansion of its
/// component (its row still reports "infinite").
std::vector<std::pair<int, Cardinality>> g_degree_table(const RationalGraph& g, const Word& v,
                                                        int radius);

} // namespace ratg
