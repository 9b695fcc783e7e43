#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "ratgraph/alphabet.hpp"

namespace ratg {

/// Cellular word acceptor: bracketed fixed-length configurations [u] rewrite
/// by 4-tuple rules (left, self, right, next); a word is accepted when a
/// configuration over the accepting letters is reachable from [w].
///
/// Rule components use extended indexing: work letters, then the left
/// bracket (lbracket()), then the right bracket (rbracket()). Brackets may
/// appear in the first three components only.
class CellularAutomaton {
public:
    CellularAutomaton(AlphabetRef work, std::vector<Letter> sigma, std::vector<Letter> accepting,
                      std::string lbracket_name, std::string rbracket_name,
                      std::vector<std::array<int, 4>> rules);

    const AlphabetRef& work() const { return work_; }
    const std::vector<Letter>& sigma() const { return sigma_; }
    bool in_sigma(Letter l) const { return sigma_mask_[l]; }
    const std::vector<Letter>& accepting() const { return accepting_; }
    bool is_accepting(Letter l) const { return accepting_mask_[l]; }
    const std::string& lbracket_name() const { return lbracket_name_; }
    const std::string& rbracket_name() const { return rbracket_name_; }
    int lbracket() const { return work_->size(); }
    int rbracket() const { return work_->size() + 1; }
    const std::vector<std::array<int, 4>>& rules() const { return rules_; }
    /// Next letters for a (left, self, right) context.
    const std::vector<Letter>& next_letters(int left, int self, int right) const;

private:
    AlphabetRef work_;
    std::vector<Letter> sigma_;
    std::vector<bool> sigma_mask_;
    std::vector<Letter> accepting_;
    std::vector<bool> accepting_mask_;
    std::string lbracket_name_, rbracket_name_;
    std::vector<std::array<int, 4>> rules_;
    std::vector<std::vector<Letter>> by_context_;
    static const std::vector<Letter> none_;
};

/// All successor configurations of u (interior word, brackets implicit).
std::vector<Word> ca_successors(const CellularAutomaton& c, const Word& u);

/// Exact membership by breadth-first search over the finite configuration
/// space at |w| cells. allow_reflexive counts [w] itself when w is already
/// over accepting letters.
bool ca_member(const CellularAutomaton& c, const Word& w, bool allow_reflexive = true);

/// At most one next letter per context.
bool ca_is_deterministic(const CellularAutomaton& c);

} // namespace ratg
