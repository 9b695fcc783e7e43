#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ratgraph/cellular.hpp"
#include "ratgraph/graph.hpp"
#include "ratgraph/tiling.hpp"

namespace ratg {

/// Machine-checkable certificate hook emitted by every conversion: which
/// fresh symbols were introduced, which class flags each output edge relation
/// is expected to satisfy, and a suggested bound for equality testing.
struct ConversionReport {
    std::string conversion;
    std::string output_kind; // "graph" | "tiling"
    std::vector<std::string> fresh_symbols;
    std::vector<std::pair<std::string, TransducerClass>> class_claims;
    int oracle_bound = 6;
    std::vector<std::pair<std::string, std::string>> notes;
};

struct GraphConversion {
    InfiniteAutomaton automaton;
    ConversionReport report;
};

struct TilingConversion {
    TilingSystem system;
    ConversionReport report;
};

/// Pad every transducer with a fresh two-sided padding symbol so all edge
/// relations become synchronous; initial/final sets gain padding loops.
/// Trace-equivalent to the input.
GraphConversion rat2synch(const InfiniteAutomaton& m, const std::string& pad_name = "#");

/// Synchronous graph whose path language is the frontier language of the
/// tiling system: vertices are picture columns, read left to right.
GraphConversion ts2synch(const TilingSystem& s);

/// Replace rational initial/final sets of a synchronous graph by fresh
/// one-letter star languages, preserving the path language exactly.
GraphConversion startostar(const InfiniteAutomaton& m);

/// Tiling system accepting the path language of a synchronous graph; picture
/// heights equal the vertex lengths of the corresponding accepting paths.
TilingConversion synch2ts(const InfiniteAutomaton& m);

/// Sequential synchronous graph for the frontier language of a tiling
/// system: vertices encode whole bordered pictures with a marked column, and
/// the single edge relation shifts all marks one letter right while checking
/// tiles.
GraphConversion ts2seq(const TilingSystem& s);

/// Single fresh initial vertex replacing a rational initial set;
/// synchronized inputs stay synchronized.
GraphConversion onepoint(const InfiniteAutomaton& m);

/// Finite out-degree graph with one initial vertex, trace-equivalent to a
/// synchronous graph with disjoint rational I and F.
GraphConversion synch2ratfd(const InfiniteAutomaton& m);

/// Variant of synch2ratfd for tiling systems whose language is recognized in
/// height ≤ c·width (caller-asserted): the stretch relation becomes the
/// synchronized (#^n, #^{n+c}), so every edge relation is left-synchronized.
GraphConversion squarets2synchgraph(const TilingSystem& s, int c);

/// Square-picture tiling system for a left-synchronized finite-out-degree
/// graph with a single initial vertex (pads then builds tiles); the report
/// carries the measured linear height constant.
TilingConversion synchfd2squarets(const InfiniteAutomaton& m);

/// Global determinism of a set of synchronous transducers with respect to
/// rational I and F: each transducer label-deterministic, and for every
/// state pair at most one letter can both be output by the first and read by
/// the second (I and F entering through their minimal identity transducers).
bool check_global_det(const RationalGraph& g, const Nfa& initial, const Nfa& final);

/// Globally deterministic synchronous graph accepting the language of a
/// deterministic cellular automaton; vertices are space-time columns.
GraphConversion ca2graph(const CellularAutomaton& c);

/// For sequential synchronous graphs with initial set x*: the synch2ts image
/// is a deterministic tiling system (checked by ts_det_probe at the width).
TilingSystem seq_from_astar_is_det(const InfiniteAutomaton& m, int probe_width = 4);

} // namespace ratg
