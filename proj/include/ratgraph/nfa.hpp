#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ratgraph/alphabet.hpp"

namespace ratg {

struct NfaTransition {
    int src;
    Letter letter; // EPS for ε-moves
    int dst;
    bool operator==(const NfaTransition& o) const {
        return src == o.src && letter == o.letter && dst == o.dst;
    }
};

/// Nondeterministic finite automaton with a single initial state.
/// Immutable after construction; all operations below are pure functions.
class Nfa {
public:
    Nfa(AlphabetRef alphabet, int num_states, int initial, std::vector<int> finals,
        std::vector<NfaTransition> transitions);

    const AlphabetRef& alphabet() const { return alphabet_; }
    int num_states() const { return num_states_; }
    int initial() const { return initial_; }
    const std::vector<int>& finals() const { return finals_; }
    bool is_final(int s) const { return final_mask_[s]; }
    const std::vector<NfaTransition>& transitions() const { return transitions_; }
    /// Outgoing (letter, dst) pairs of a state, ε first, then sorted by letter.
    const std::vector<std::pair<Letter, int>>& out(int s) const { return adj_[s]; }

    bool has_epsilon() const { return has_epsilon_; }
    /// One (letter,dst) per (state,letter) and no ε-moves.
    bool is_deterministic() const;

private:
    AlphabetRef alphabet_;
    int num_states_;
    int initial_;
    std::vector<int> finals_;
    std::vector<bool> final_mask_;
    std::vector<NfaTransition> transitions_;
    std::vector<std::vector<std::pair<Letter, int>>> adj_;
    bool has_epsilon_ = false;
};

// ---- constructions ----

/// Automaton of the empty language.
Nfa nfa_empty(AlphabetRef alphabet);
/// Automaton of {ε}.
Nfa nfa_epsilon(AlphabetRef alphabet);
/// Automaton of a single word.
Nfa nfa_word(AlphabetRef alphabet, const Word& w);
/// Automaton of Σ* over the given alphabet.
Nfa nfa_universal(AlphabetRef alphabet);
/// Automaton of {x}* for one letter.
Nfa nfa_letter_star(AlphabetRef alphabet, Letter x);
/// Automaton of {x}^{≥ n}.
Nfa nfa_letter_at_least(AlphabetRef alphabet, Letter x, int n);

// ---- boolean / rational operations ----

Nfa nfa_union(const Nfa& a, const Nfa& b);
Nfa nfa_concat(const Nfa& a, const Nfa& b);
Nfa nfa_star(const Nfa& a);
Nfa nfa_intersect(const Nfa& a, const Nfa& b);
Nfa nfa_difference(const Nfa& a, const Nfa& b);

/// Exact membership; throws input_error if w uses letters outside A's alphabet.
bool nfa_member(const Nfa& a, const Word& w);

/// Useful-state restriction (reachable and co-accessible).
Nfa nfa_trim(const Nfa& a);
/// Subset construction (on ε-closures); result is deterministic and trim.
Nfa nfa_determinize(const Nfa& a);
/// Hopcroft minimization; input is determinized first if needed.
/// With complete=true the result carries an explicit sink so every state has
/// one transition per letter.
Nfa nfa_determinize_minimize(const Nfa& a, bool complete = false);

bool nfa_is_empty(const Nfa& a);
/// Exact language equality (canonical minimal forms compared).
bool nfa_equal(const Nfa& a, const Nfa& b);
/// L(a) ⊆ L(b), exact.
bool nfa_subset(const Nfa& a, const Nfa& b);

/// Number of words in the language: the count, or nullopt when infinite.
std::optional<std::uint64_t> nfa_count_words(const Nfa& a);

/// Length of the longest accepted word, or nullopt when the language is
/// infinite (-1 for the empty language).
std::optional<int> nfa_longest_length(const Nfa& a);

/// Words of the language with length ≤ max_len, in length-lexicographic order
/// (letter order = alphabet order).
std::vector<Word> nfa_enumerate(const Nfa& a, int max_len);

/// Shortest accepted word, if any (ties broken lexicographically).
std::optional<Word> nfa_shortest(const Nfa& a);

/// Same language over a wider alphabet.
Nfa nfa_with_alphabet(const Nfa& a, const AlphabetRef& wider);

} // namespace ratg
