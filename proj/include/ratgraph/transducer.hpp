#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ratgraph/nfa.hpp"

namespace ratg {

struct TransducerTransition {
    int src;
    Letter in;  // EPS allowed
    Letter out; // EPS allowed
    int dst;
    bool operator==(const TransducerTransition& o) const {
        return src == o.src && in == o.in && out == o.out && dst == o.dst;
    }
};

/// Class flags per the transducer hierarchy: synchronous (letter/letter
/// labels only), left/right-synchronized (two-sided prefix, one-sided tail,
/// in either order), sequential (input-deterministic).
struct TransducerClass {
    bool synchronous = false;
    bool left_synchronized = false;
    bool right_synchronized = false;
    bool sequential = false;
};

/// Finite word transducer: an automaton over pairs of optional letters.
/// Recognizes a rational relation on words over its alphabet. Immutable.
class Transducer {
public:
    Transducer(AlphabetRef alphabet, int num_states, int initial, std::vector<int> finals,
               std::vector<TransducerTransition> transitions);

    const AlphabetRef& alphabet() const { return alphabet_; }
    int num_states() const { return num_states_; }
    int initial() const { return initial_; }
    const std::vector<int>& finals() const { return finals_; }
    bool is_final(int s) const { return final_mask_[s]; }
    const std::vector<TransducerTransition>& transitions() const { return transitions_; }
    const std::vector<TransducerTransition>& out(int s) const { return adj_[s]; }

private:
    AlphabetRef alphabet_;
    int num_states_;
    int initial_;
    std::vector<int> finals_;
    std::vector<bool> final_mask_;
    std::vector<TransducerTransition> transitions_;
    std::vector<std::vector<TransducerTransition>> adj_;
};

// ---- constructions ----

/// Empty relation.
Transducer t_empty(AlphabetRef alphabet);
/// Identity relation over L(a); a is determinized first.
Transducer t_identity(const Nfa& a);
/// Identity relation over the full Σ*.
Transducer t_identity_all(AlphabetRef alphabet);
/// {(u,v)} for a single pair.
Transducer t_pair(AlphabetRef alphabet, const Word& u, const Word& v);
/// Same relation over a wider alphabet.
Transducer t_with_alphabet(const Transducer& t, const AlphabetRef& wider);

// ---- relation algebra ----

/// Automaton of { v | (u,v) ∈ T }.
Nfa t_apply_word(const Transducer& t, const Word& u);
/// Automaton of T(L(a)) — exact rational image.
Nfa t_apply_lang(const Transducer& t, const Nfa& a);
/// (u,w) ∈ result iff ∃v. (u,v) ∈ t1 ∧ (v,w) ∈ t2.
Transducer t_compose(const Transducer& t1, const Transducer& t2);
Transducer t_union(const Transducer& t1, const Transducer& t2);
Transducer t_concat(const Transducer& t1, const Transducer& t2);
/// Swap input and output sides.
Transducer t_invert(const Transducer& t);
Nfa t_domain(const Transducer& t);
Nfa t_range(const Transducer& t);
Transducer t_restrict_domain(const Transducer& t, const Nfa& a);
Transducer t_restrict_range(const Transducer& t, const Nfa& a);

/// Membership of one pair, by product run.
bool t_accepts(const Transducer& t, const Word& u, const Word& v);

/// Remove ε/ε-moves (closure) and useless states. Pure cleanup: the relation
/// is unchanged, runs may merge.
Transducer t_normalize(const Transducer& t);
Transducer t_trim(const Transducer& t);

/// Trim + determinize + minimize treating labels as opaque symbols. Preserves
/// the relation and never degrades class flags; used to keep pipeline
/// intermediates small.
Transducer t_canonicalize(const Transducer& t);

// ---- classification ----

/// Syntactic classification on the useful part of the transducer.
TransducerClass t_classify(const Transducer& t);

/// Subset construction over composite labels. Requires left-synchronized
/// input (class_error otherwise). Result: same relation, at most one
/// accepting run per accepted pair; synchronous stays synchronous.
Transducer t_unambiguize_synchronized(const Transducer& t);

/// Exact functionality for left-synchronized transducers (class_error if the
/// input is not); decided by a self-product delay search.
bool t_is_functional_synchronized(const Transducer& t);

/// Bounded functionality check: no input of length ≤ max_len has two images.
bool t_functional_probe(const Transducer& t, int max_len);

/// Number of accepting runs labeled (u,v) in the ε/ε-normalized transducer.
std::uint64_t t_run_count(const Transducer& t, const Word& u, const Word& v);

/// Smallest c with (x,y) ∈ T ⇒ |x| ≤ |y| + c, or nullopt when unbounded.
/// Requires left-synchronized input (class_error otherwise).
std::optional<int> t_imbalance_bound(const Transducer& t);

/// Rebuild an equivalent transducer whose every path is a two-sided prefix
/// followed by a one-sided tail (so classify reports left-synchronized).
/// max_delay bounds the in/out length skew any single run may accumulate;
/// throws class_error if the relation needs more skew than that.
Transducer t_resynchronize(const Transducer& t, int max_delay);

/// Test-friendly exhaustive pair set { (u,v) ∈ T : |u| ≤ max_u, |v| ≤ max_v }.
std::vector<std::pair<Word, Word>> t_pairs_up_to(const Transducer& t, int max_u, int max_v);

} // namespace ratg
