#include "ratgraph/alphabet.hpp"

#include <algorithm>

namespace ratg {

Alphabet::Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
    index_.reserve(names_.size());
    for (int i = 0; i < static_cast<int>(names_.size()); ++i) {
        if (names_[i].empty())
            throw input_error("alphabet letters must have nonempty names");
        auto [it, inserted] = index_.emplace(names_[i], i);
        (void)it;
        if (!inserted)
            throw input_error("duplicate letter in alphabet: " + names_[i]);
    }
}

const std::string& Alphabet::name(Letter id) const {
    if (id < 0 || id >= size())
        throw input_error("letter id out of range");
    return names_[id];
}

std::optional<Letter> Alphabet::find(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end())
        return std::nullopt;
    return it->second;
}

Letter Alphabet::require(const std::string& name) const {
    auto id = find(name);
    if (!id)
        throw input_error("letter not in alphabet: " + name);
    return *id;
}

AlphabetRef make_alphabet(std::vector<std::string> names) {
    return std::make_shared<const Alphabet>(std::move(names));
}

AlphabetRef alphabet_union(const AlphabetRef& a, const AlphabetRef& b) {
    if (same_alphabet(a, b))
        return a;
    std::vector<std::string> names = a->names();
    for (const auto& n : b->names())
        if (!a->contains(n))
            names.push_back(n);
    return make_alphabet(std::move(names));
}

AlphabetRef alphabet_extend(const AlphabetRef& base, const std::vector<std::string>& extra) {
    std::vector<std::string> names = base->names();
    for (const auto& n : extra) {
        if (base->contains(n))
            throw fresh_symbol_error("symbol already present in alphabet: " + n);
        names.push_back(n);
    }
    return make_alphabet(std::move(names));
}

bool same_alphabet(const AlphabetRef& a, const AlphabetRef& b) {
    return a == b || *a == *b;
}

std::vector<Letter> alphabet_embedding(const AlphabetRef& from, const AlphabetRef& to) {
    std::vector<Letter> map(from->size());
    for (int i = 0; i < from->size(); ++i)
        map[i] = to->require(from->name(i));
    return map;
}

std::string fresh_name(const Alphabet& taken, const std::string& stem) {
    if (!taken.contains(stem))
        return stem;
    for (int i = 0;; ++i) {
        std::string candidate = stem + std::to_string(i);
        if (!taken.contains(candidate))
            return candidate;
    }
}

std::string format_word(const Alphabet& alphabet, const Word& word) {
    std::string out;
    for (Letter l : word) {
        const std::string& n = alphabet.name(l);
        bool single_char = !n.empty() && (n.size() == 1 || (static_cast<unsigned char>(n[0]) >= 0x80));
        if (single_char) {
            // one UTF-8 code point?
            size_t cp_len = 1;
            unsigned char c = static_cast<unsigned char>(n[0]);
            if (c >= 0xF0) cp_len = 4;
            else if (c >= 0xE0) cp_len = 3;
            else if (c >= 0xC0) cp_len = 2;
            single_char = n.size() == cp_len;
        }
        if (single_char && n != "[" && n != "]")
            out += n;
        else
            out += "[" + n + "]";
    }
    return out;
}

Word parse_word(const Alphabet& alphabet, const std::string& text) {
    Word out;
    size_t i = 0;
    while (i < text.size()) {
        std::string name;
        if (text[i] == '[') {
            size_t close = text.find(']', i + 1);
            if (close == std::string::npos)
                throw input_error("unterminated letter escape in word: " + text);
            name = text.substr(i + 1, close - i - 1);
            i = close + 1;
        } else {
            size_t cp_len = 1;
            unsigned char c = static_cast<unsigned char>(text[i]);
            if (c >= 0xF0) cp_len = 4;
            else if (c >= 0xE0) cp_len = 3;
            else if (c >= 0xC0) cp_len = 2;
            name = text.substr(i, cp_len);
            i += cp_len;
        }
        out.push_back(alphabet.require(name));
    }
    return out;
}

} // namespace ratg
