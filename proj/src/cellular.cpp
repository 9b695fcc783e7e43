#include "ratgraph/cellular.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace ratg {

const std::vector<Letter> CellularAutomaton::none_{};

CellularAutomaton::CellularAutomaton(AlphabetRef work, std::vector<Letter> sigma,
                                     std::vector<Letter> accepting, std::string lbracket_name,
                                     std::string rbracket_name,
                                     std::vector<std::array<int, 4>> rules)
    : work_(std::move(work)),
      sigma_(std::move(sigma)),
      accepting_(std::move(accepting)),
      lbracket_name_(std::move(lbracket_name)),
      rbracket_name_(std::move(rbracket_name)),
      rules_(std::move(rules)) {
    if (work_->contains(lbracket_name_) || work_->contains(rbracket_name_) ||
        lbracket_name_ == rbracket_name_)
        throw input_error("brackets must be two distinct symbols outside the work alphabet");
    int n = work_->size();
    sigma_mask_.assign(n, false);
    for (Letter l : sigma_) {
        if (l < 0 || l >= n)
            throw input_error("input letter outside the work alphabet");
        sigma_mask_[l] = true;
    }
    accepting_mask_.assign(n, false);
    for (Letter l : accepting_) {
        if (l < 0 || l >= n)
            throw input_error("accepting letter outside the work alphabet");
        accepting_mask_[l] = true;
    }
    std::sort(rules_.begin(), rules_.end());
    rules_.erase(std::unique(rules_.begin(), rules_.end()), rules_.end());
    int ext = n + 2;
    by_context_.assign(static_cast<size_t>(ext) * ext * ext, {});
    for (const auto& r : rules_) {
        for (int i = 0; i < 3; ++i)
            if (r[i] < 0 || r[i] >= ext)
                throw input_error("rule context letter out of range");
        if (r[3] < 0 || r[3] >= n)
            throw input_error("rule result must be a work letter");
        by_context_[(static_cast<size_t>(r[0]) * ext + r[1]) * ext + r[2]].push_back(r[3]);
    }
    for (auto& v : by_context_) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    }
}

const std::vector<Letter>& CellularAutomaton::next_letters(int left, int self, int right) const {
    int ext = work_->size() + 2;
    if (left < 0 || left >= ext || self < 0 || self >= ext || right < 0 || right >= ext)
        return none_;
    return by_context_[(static_cast<size_t>(left) * ext + self) * ext + right];
}

std::vector<Word> ca_successors(const CellularAutomaton& c, const Word& u) {
    int n = static_cast<int>(u.size());
    for (Letter l : u)
        if (l < 0 || l >= c.work()->size())
            throw input_error("configuration letter outside the work alphabet");
    std::vector<Word> out;
    if (n == 0)
        return out;
    Word next(n, -1);
    std::function<void(int)> dfs = [&](int i) {
        if (i == n) {
            out.push_back(next);
            return;
        }
        int left = i == 0 ? c.lbracket() : u[i - 1];
        int right = i == n - 1 ? c.rbracket() : u[i + 1];
        for (Letter d : c.next_letters(left, u[i], right)) {
            next[i] = d;
            dfs(i + 1);
        }
    };
    dfs(0);
    return out;
}

bool ca_member(const CellularAutomaton& c, const Word& w, bool allow_reflexive) {
    if (w.empty())
        return false;
    for (Letter l : w) {
        if (l < 0 || l >= c.work()->size())
            throw input_error("word letter outside the work alphabet");
        if (!c.in_sigma(l))
            return false;
    }
    auto all_accepting = [&](const Word& u) {
        for (Letter l : u)
            if (!c.is_accepting(l))
                return false;
        return true;
    };
    if (allow_reflexive && all_accepting(w))
        return true;
    std::set<Word> seen{w};
    std::vector<Word> stack{w};
    while (!stack.empty()) {
        Word u = std::move(stack.back());
        stack.pop_back();
        for (Word& v : ca_successors(c, u)) {
            if (all_accepting(v))
                return true;
            if (seen.insert(v).second)
                stack.push_back(std::move(v));
        }
    }
    return false;
}

bool ca_is_deterministic(const CellularAutomaton& c) {
    int ext = c.work()->size() + 2;
    for (int a = 0; a < ext; ++a)
        for (int b = 0; b < c.work()->size(); ++b)
            for (int d = 0; d < ext; ++d)
                if (c.next_letters(a, b, d).size() > 1)
                    return false;
    return true;
}

} // namespace ratg
