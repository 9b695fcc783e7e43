#pragma once

#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "ratgraph/errors.hpp"

namespace ratg {

/// Letters are indices into an Alphabet; EPS marks the empty word on a
/// transition side and is never a member of any alphabet.
using Letter = int;
constexpr Letter EPS = -1;

/// A word over some alphabet. The empty word is the empty vector.
using Word = std::vector<Letter>;

/// An immutable, explicitly declared finite set of named symbols.
/// All automata carry one; implicit alphabet growth is not allowed, so fresh
/// symbols introduced by constructions are always visible in the result's
/// alphabet and can be audited.
class Alphabet {
public:
    Alphabet() = default;
    explicit Alphabet(std::vector<std::string> names);

    int size() const { return static_cast<int>(names_.size()); }
    const std::string& name(Letter id) const;
    std::optional<Letter> find(const std::string& name) const;
    bool contains(const std::string& name) const { return find(name).has_value(); }

    /// Letter id for `name`, or input_error if absent.
    Letter require(const std::string& name) const;

    const std::vector<std::string>& names() const { return names_; }

    bool operator==(const Alphabet& other) const { return names_ == other.names_; }
    bool operator!=(const Alphabet& other) const { return !(*this == other); }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, Letter> index_;
};

using AlphabetRef = std::shared_ptr<const Alphabet>;

AlphabetRef make_alphabet(std::vector<std::string> names);

/// Union of two alphabets; letters of `a` keep their ids.
AlphabetRef alphabet_union(const AlphabetRef& a, const AlphabetRef& b);

/// `base` extended with `extra` names (which must be fresh).
AlphabetRef alphabet_extend(const AlphabetRef& base, const std::vector<std::string>& extra);

/// True if the two refs denote the same letter set (by content).
bool same_alphabet(const AlphabetRef& a, const AlphabetRef& b);

/// Letter-id remap table from `from` into `to`; every letter of `from`
/// must exist in `to`.
std::vector<Letter> alphabet_embedding(const AlphabetRef& from, const AlphabetRef& to);

/// A name not present in `taken`, preferring `stem`, then `stem0`, `stem1`, ...
std::string fresh_name(const Alphabet& taken, const std::string& stem);

/// Render a word using an alphabet; multi-character letters are bracketed.
std::string format_word(const Alphabet& alphabet, const Word& word);

/// Parse "ab[xp]c" style text into a word; single UTF-8 code points are
/// letters, "[...]" escapes multi-character letter names.
Word parse_word(const Alphabet& alphabet, const std::string& text);

} // namespace ratg
