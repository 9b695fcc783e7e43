#include "ratgraph/nfa.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <queue>
#include <unordered_map>
#include <unordered_set>

namespace ratg {

namespace {

struct VecHash {
    size_t operator()(const std::vector<int>& v) const {
        size_t h = 1469598103934665603ull;
        for (int x : v) {
            h ^= static_cast<size_t>(x) + 0x9e3779b97f4a7c15ull;
            h *= 1099511628211ull;
        }
        return h;
    }
};

} // namespace

Nfa::Nfa(AlphabetRef alphabet, int num_states, int initial, std::vector<int> finals,
         std::vector<NfaTransition> transitions)
    : alphabet_(std::move(alphabet)),
      num_states_(num_states),
      initial_(initial),
      finals_(std::move(finals)),
      transitions_(std::move(transitions)) {
    if (num_states_ <= 0)
        throw input_error("automaton needs at least one state");
    if (initial_ < 0 || initial_ >= num_states_)
        throw input_error("initial state out of range");
    final_mask_.assign(num_states_, false);
    for (int f : finals_) {
        if (f < 0 || f >= num_states_)
            throw input_error("final state out of range");
        final_mask_[f] = true;
    }
    std::sort(finals_.begin(), finals_.end());
    finals_.erase(std::unique(finals_.begin(), finals_.end()), finals_.end());
    adj_.assign(num_states_, {});
    for (const auto& t : transitions_) {
        if (t.src < 0 || t.src >= num_states_ || t.dst < 0 || t.dst >= num_states_)
            throw input_error("transition endpoint out of range");
        if (t.letter != EPS && (t.letter < 0 || t.letter >= alphabet_->size()))
            throw input_error("transition letter out of range");
        if (t.letter == EPS)
            has_epsilon_ = true;
        adj_[t.src].emplace_back(t.letter, t.dst);
    }
    for (auto& row : adj_)
        std::sort(row.begin(), row.end());
}

bool Nfa::is_deterministic() const {
    if (has_epsilon_)
        return false;
    for (const auto& row : adj_)
        for (size_t i = 1; i < row.size(); ++i)
            if (row[i].first == row[i - 1].first)
                return false;
    return true;
}

Nfa nfa_empty(AlphabetRef alphabet) {
    return Nfa(std::move(alphabet), 1, 0, {}, {});
}

Nfa nfa_epsilon(AlphabetRef alphabet) {
    return Nfa(std::move(alphabet), 1, 0, {0}, {});
}

Nfa nfa_word(AlphabetRef alphabet, const Word& w) {
    std::vector<NfaTransition> trans;
    for (int i = 0; i < static_cast<int>(w.size()); ++i)
        trans.push_back({i, w[i], i + 1});
    int n = static_cast<int>(w.size()) + 1;
    return Nfa(std::move(alphabet), n, 0, {n - 1}, std::move(trans));
}

Nfa nfa_universal(AlphabetRef alphabet) {
    std::vector<NfaTransition> trans;
    for (Letter l = 0; l < alphabet->size(); ++l)
        trans.push_back({0, l, 0});
    return Nfa(std::move(alphabet), 1, 0, {0}, std::move(trans));
}

Nfa nfa_letter_star(AlphabetRef alphabet, Letter x) {
    return Nfa(std::move(alphabet), 1, 0, {0}, {{0, x, 0}});
}

Nfa nfa_letter_at_least(AlphabetRef alphabet, Letter x, int n) {
    std::vector<NfaTransition> trans;
    for (int i = 0; i < n; ++i)
        trans.push_back({i, x, i + 1});
    trans.push_back({n, x, n});
    return Nfa(std::move(alphabet), n + 1, 0, {n}, std::move(trans));
}

namespace {

// Copy with a state offset and remapped letters.
void append_shifted(std::vector<NfaTransition>& out, const Nfa& src, int offset,
                    const std::vector<Letter>& letter_map) {
    for (const auto& t : src.transitions()) {
        Letter l = t.letter == EPS ? EPS : letter_map[t.letter];
        out.push_back({t.src + offset, l, t.dst + offset});
    }
}

} // namespace

Nfa nfa_union(const Nfa& a, const Nfa& b) {
    AlphabetRef sigma = alphabet_union(a.alphabet(), b.alphabet());
    auto ma = alphabet_embedding(a.alphabet(), sigma);
    auto mb = alphabet_embedding(b.alphabet(), sigma);
    // fresh initial, ε to both originals
    int na = a.num_states(), nb = b.num_states();
    std::vector<NfaTransition> trans;
    append_shifted(trans, a, 1, ma);
    append_shifted(trans, b, 1 + na, mb);
    trans.push_back({0, EPS, 1 + a.initial()});
    trans.push_back({0, EPS, 1 + na + b.initial()});
    std::vector<int> finals;
    for (int f : a.finals()) finals.push_back(1 + f);
    for (int f : b.finals()) finals.push_back(1 + na + f);
    return Nfa(sigma, 1 + na + nb, 0, std::move(finals), std::move(trans));
}

Nfa nfa_concat(const Nfa& a, const Nfa& b) {
    AlphabetRef sigma = alphabet_union(a.alphabet(), b.alphabet());
    auto ma = alphabet_embedding(a.alphabet(), sigma);
    auto mb = alphabet_embedding(b.alphabet(), sigma);
    int na = a.num_states();
    std::vector<NfaTransition> trans;
    append_shifted(trans, a, 0, ma);
    append_shifted(trans, b, na, mb);
    for (int f : a.finals())
        trans.push_back({f, EPS, na + b.initial()});
    std::vector<int> finals;
    for (int f : b.finals()) finals.push_back(na + f);
    return Nfa(sigma, na + b.num_states(), a.initial(), std::move(finals), std::move(trans));
}

Nfa nfa_star(const Nfa& a) {
    int n = a.num_states();
    std::vector<NfaTransition> trans;
    auto id = alphabet_embedding(a.alphabet(), a.alphabet());
    append_shifted(trans, a, 1, id);
    trans.push_back({0, EPS, 1 + a.initial()});
    for (int f : a.finals())
        trans.push_back({1 + f, EPS, 0});
    return Nfa(a.alphabet(), n + 1, 0, {0}, std::move(trans));
}

namespace {

std::vector<int> eps_closure(const Nfa& a, const std::vector<int>& seed) {
    std::vector<int> stack = seed;
    std::vector<bool> seen(a.num_states(), false);
    for (int s : seed) seen[s] = true;
    while (!stack.empty()) {
        int s = stack.back();
        stack.pop_back();
        for (const auto& [l, d] : a.out(s)) {
            if (l != EPS) break; // ε sorts first
            if (!seen[d]) { seen[d] = true; stack.push_back(d); }
        }
    }
    std::vector<int> out;
    for (int s = 0; s < a.num_states(); ++s)
        if (seen[s]) out.push_back(s);
    return out;
}

} // namespace

bool nfa_member(const Nfa& a, const Word& w) {
    for (Letter l : w)
        if (l < 0 || l >= a.alphabet()->size())
            throw input_error("word letter outside the automaton's alphabet");
    std::vector<int> cur = eps_closure(a, {a.initial()});
    for (Letter l : w) {
        std::vector<int> next;
        std::vector<bool> seen(a.num_states(), false);
        for (int s : cur)
            for (const auto& [x, d] : a.out(s))
                if (x == l && !seen[d]) { seen[d] = true; next.push_back(d); }
        if (next.empty())
            return false;
        cur = eps_closure(a, next);
    }
    for (int s : cur)
        if (a.is_final(s))
            return true;
    return false;
}

Nfa nfa_trim(const Nfa& a) {
    int n = a.num_states();
    std::vector<bool> reach(n, false);
    std::vector<int> stack{a.initial()};
    reach[a.initial()] = true;
    while (!stack.empty()) {
        int s = stack.back();
        stack.pop_back();
        for (const auto& [l, d] : a.out(s))
            if (!reach[d]) { reach[d] = true; stack.push_back(d); }
    }
    std::vector<std::vector<int>> rev(n);
    for (const auto& t : a.transitions())
        rev[t.dst].push_back(t.src);
    std::vector<bool> coacc(n, false);
    for (int f : a.finals())
        if (!coacc[f]) { coacc[f] = true; stack.push_back(f); }
    while (!stack.empty()) {
        int s = stack.back();
        stack.pop_back();
        for (int p : rev[s])
            if (!coacc[p]) { coacc[p] = true; stack.push_back(p); }
    }
    std::vector<int> remap(n, -1);
    int m = 0;
    for (int s = 0; s < n; ++s)
        if (reach[s] && coacc[s])
            remap[s] = m++;
    if (remap[a.initial()] == -1)
        return nfa_empty(a.alphabet());
    std::vector<NfaTransition> trans;
    for (const auto& t : a.transitions())
        if (remap[t.src] != -1 && remap[t.dst] != -1)
            trans.push_back({remap[t.src], t.letter, remap[t.dst]});
    std::vector<int> finals;
    for (int f : a.finals())
        if (remap[f] != -1)
            finals.push_back(remap[f]);
    return Nfa(a.alphabet(), m, remap[a.initial()], std::move(finals), std::move(trans));
}

Nfa nfa_determinize(const Nfa& a0) {
    Nfa a = nfa_trim(a0);
    if (a.is_deterministic())
        return a;
    int sigma = a.alphabet()->size();
    std::unordered_map<std::vector<int>, int, VecHash> ids;
    std::vector<std::vector<int>> subsets;
    std::vector<NfaTransition> trans;
    std::vector<int> finals;

    auto intern = [&](std::vector<int> set) {
        auto it = ids.find(set);
        if (it != ids.end())
            return it->second;
        int id = static_cast<int>(subsets.size());
        ids.emplace(set, id);
        subsets.push_back(std::move(set));
        return id;
    };

    int start = intern(eps_closure(a, {a.initial()}));
    for (int cur = 0; cur < static_cast<int>(subsets.size()); ++cur) {
        const auto subset = subsets[cur]; // copy: subsets may reallocate
        bool fin = false;
        std::vector<std::vector<int>> next(sigma);
        std::vector<bool> seen;
        for (Letter l = 0; l < sigma; ++l) {
            seen.assign(a.num_states(), false);
            for (int s : subset)
                for (const auto& [x, d] : a.out(s))
                    if (x == l && !seen[d]) { seen[d] = true; next[l].push_back(d); }
        }
        for (int s : subset)
            if (a.is_final(s)) { fin = true; break; }
        if (fin)
            finals.push_back(cur);
        for (Letter l = 0; l < sigma; ++l) {
            if (next[l].empty())
                continue;
            int d = intern(eps_closure(a, next[l]));
            trans.push_back({cur, l, d});
        }
    }
    Nfa det(a.alphabet(), static_cast<int>(subsets.size()), start, std::move(finals),
            std::move(trans));
    return nfa_trim(det);
}

namespace {

// Hopcroft partition refinement on a deterministic, trim automaton plus an
// implicit sink for missing transitions. Partition kept as a grouped state
// array with per-class ranges so splits cost O(|hit set|).
Nfa minimize_dfa(const Nfa& dfa, bool complete) {
    int n = dfa.num_states();
    int sigma = dfa.alphabet()->size();
    if (dfa.finals().empty()) {
        if (!complete)
            return nfa_empty(dfa.alphabet());
        std::vector<NfaTransition> loops;
        for (Letter l = 0; l < sigma; ++l)
            loops.push_back({0, l, 0});
        return Nfa(dfa.alphabet(), 1, 0, {}, std::move(loops));
    }

    // state n is the sink
    int total = n + 1;
    std::vector<int> delta(static_cast<size_t>(total) * sigma, n);
    for (const auto& t : dfa.transitions())
        delta[static_cast<size_t>(t.src) * sigma + t.letter] = t.dst;

    // reverse edges bucketed by (target, letter), CSR layout
    std::vector<int> rev_count(static_cast<size_t>(total) * sigma + 1, 0);
    for (int s = 0; s < total; ++s)
        for (Letter l = 0; l < sigma; ++l)
            ++rev_count[static_cast<size_t>(delta[static_cast<size_t>(s) * sigma + l]) * sigma + l + 1];
    for (size_t i = 1; i < rev_count.size(); ++i)
        rev_count[i] += rev_count[i - 1];
    std::vector<int> rev_data(static_cast<size_t>(total) * sigma);
    {
        std::vector<int> fill(rev_count.begin(), rev_count.end() - 1);
        for (int s = 0; s < total; ++s)
            for (Letter l = 0; l < sigma; ++l) {
                size_t key = static_cast<size_t>(delta[static_cast<size_t>(s) * sigma + l]) * sigma + l;
                rev_data[fill[key]++] = s;
            }
    }

    // partition structure
    std::vector<int> order(total), loc(total), cls(total), begin_of, end_of;
    {
        int fin_count = static_cast<int>(dfa.finals().size());
        std::vector<bool> is_fin(total, false);
        for (int f : dfa.finals())
            is_fin[f] = true;
        int nonfin_pos = 0, fin_pos = total - fin_count;
        for (int s = 0; s < total; ++s) {
            int pos = is_fin[s] ? fin_pos++ : nonfin_pos++;
            order[pos] = s;
            loc[s] = pos;
            cls[s] = is_fin[s] ? 1 : 0;
        }
        begin_of = {0, total - fin_count};
        end_of = {total - fin_count, total};
    }

    std::deque<std::pair<int, Letter>> work;
    for (Letter l = 0; l < sigma; ++l) {
        work.emplace_back(0, l);
        work.emplace_back(1, l);
    }

    std::vector<int> hit_classes;
    std::vector<int> moved_count; // per class, during one split round
    moved_count.assign(2, 0);

    while (!work.empty()) {
        auto [splitter, letter] = work.front();
        work.pop_front();
        hit_classes.clear();
        // states s with delta(s, letter) ∈ splitter; collected first since the
        // moves below may shuffle the splitter's own range
        std::vector<int> pre;
        for (int pos = begin_of[splitter]; pos < end_of[splitter]; ++pos) {
            int t = order[pos];
            size_t key = static_cast<size_t>(t) * sigma + letter;
            for (int i = rev_count[key]; i < rev_count[key + 1]; ++i)
                pre.push_back(rev_data[i]);
        }
        for (int s : pre) {
            int c = cls[s];
            if (moved_count[c] == 0)
                hit_classes.push_back(c);
            int dest = begin_of[c] + moved_count[c];
            ++moved_count[c];
            int other = order[dest];
            std::swap(order[loc[s]], order[dest]);
            loc[other] = loc[s];
            loc[s] = dest;
        }
        for (int c : hit_classes) {
            int k = moved_count[c];
            moved_count[c] = 0;
            int size = end_of[c] - begin_of[c];
            if (k == size)
                continue; // whole class hit, no split
            // split: [begin, begin+k) = hit part, rest keeps class id c
            int nc = static_cast<int>(begin_of.size());
            int hit_begin = begin_of[c], hit_end = begin_of[c] + k;
            if (k <= size - k) {
                // new class = hit part (smaller)
                begin_of.push_back(hit_begin);
                end_of.push_back(hit_end);
                begin_of[c] = hit_end;
            } else {
                // new class = rest (smaller)
                begin_of.push_back(hit_end);
                end_of.push_back(end_of[c]);
                end_of[c] = hit_end;
            }
            moved_count.push_back(0);
            for (int pos = begin_of[nc]; pos < end_of[nc]; ++pos)
                cls[order[pos]] = nc;
            for (Letter l = 0; l < sigma; ++l)
                work.emplace_back(nc, l);
        }
    }

    int sink_cls = cls[n];
    int num_classes = static_cast<int>(begin_of.size());
    std::vector<bool> fin_class(num_classes, false);
    for (int f : dfa.finals())
        fin_class[cls[f]] = true;

    // canonical BFS renumbering from the initial class, letters in order
    std::vector<int> number(num_classes, -1);
    std::vector<int> bfs{cls[dfa.initial()]};
    number[cls[dfa.initial()]] = 0;
    int next_id = 1;
    for (size_t i = 0; i < bfs.size(); ++i) {
        int c = bfs[i];
        int repr = order[begin_of[c]];
        for (Letter l = 0; l < sigma; ++l) {
            int dc = cls[delta[static_cast<size_t>(repr) * sigma + l]];
            if (!complete && dc == sink_cls)
                continue;
            if (number[dc] == -1) {
                number[dc] = next_id++;
                bfs.push_back(dc);
            }
        }
    }
    std::vector<NfaTransition> trans;
    std::vector<int> finals;
    for (int c : bfs) {
        int repr = order[begin_of[c]];
        for (Letter l = 0; l < sigma; ++l) {
            int dc = cls[delta[static_cast<size_t>(repr) * sigma + l]];
            if (!complete && dc == sink_cls)
                continue;
            trans.push_back({number[c], l, number[dc]});
        }
        if (fin_class[c])
            finals.push_back(number[c]);
    }
    return Nfa(dfa.alphabet(), next_id, 0, std::move(finals), std::move(trans));
}

} // namespace

Nfa nfa_determinize_minimize(const Nfa& a, bool complete) {
    Nfa det = nfa_determinize(a);
    return minimize_dfa(det, complete);
}

bool nfa_is_empty(const Nfa& a) {
    // reachability to a final state
    std::vector<bool> seen(a.num_states(), false);
    std::vector<int> stack{a.initial()};
    seen[a.initial()] = true;
    while (!stack.empty()) {
        int s = stack.back();
        stack.pop_back();
        if (a.is_final(s))
            return false;
        for (const auto& [l, d] : a.out(s))
            if (!seen[d]) { seen[d] = true; stack.push_back(d); }
    }
    return true;
}

Nfa nfa_intersect(const Nfa& a, const Nfa& b) {
    AlphabetRef sigma = alphabet_union(a.alphabet(), b.alphabet());
    auto ma = alphabet_embedding(a.alphabet(), sigma);
    auto mb = alphabet_embedding(b.alphabet(), sigma);
    // product with ε-interleaving
    std::unordered_map<std::uint64_t, int> ids;
    std::vector<std::pair<int, int>> states;
    auto intern = [&](int x, int y) {
        std::uint64_t key = (static_cast<std::uint64_t>(x) << 32) | static_cast<std::uint32_t>(y);
        auto it = ids.find(key);
        if (it != ids.end())
            return it->second;
        int id = static_cast<int>(states.size());
        ids.emplace(key, id);
        states.emplace_back(x, y);
        return id;
    };
    std::vector<NfaTransition> trans;
    std::vector<int> finals;
    intern(a.initial(), b.initial());
    for (int cur = 0; cur < static_cast<int>(states.size()); ++cur) {
        auto [x, y] = states[cur];
        if (a.is_final(x) && b.is_final(y))
            finals.push_back(cur);
        for (const auto& [l, d] : a.out(x)) {
            if (l == EPS)
                trans.push_back({cur, EPS, intern(d, y)});
            else
                for (const auto& [l2, d2] : b.out(y))
                    if (l2 != EPS && mb[l2] == ma[l])
                        trans.push_back({cur, ma[l], intern(d, d2)});
        }
        for (const auto& [l2, d2] : b.out(y))
            if (l2 == EPS)
                trans.push_back({cur, EPS, intern(x, d2)});
    }
    Nfa prod(sigma, static_cast<int>(states.size()), 0, std::move(finals), std::move(trans));
    return nfa_trim(prod);
}

Nfa nfa_difference(const Nfa& a, const Nfa& b) {
    AlphabetRef sigma = alphabet_union(a.alphabet(), b.alphabet());
    Nfa bw = nfa_with_alphabet(b, sigma);
    Nfa bd = nfa_determinize_minimize(bw, /*complete=*/true);
    // complement of complete DFA: flip finals
    std::vector<int> cfinals;
    for (int s = 0; s < bd.num_states(); ++s)
        if (!bd.is_final(s))
            cfinals.push_back(s);
    Nfa bcomp(sigma, bd.num_states(), bd.initial(), std::move(cfinals),
              bd.transitions());
    Nfa aw = nfa_with_alphabet(a, sigma);
    return nfa_intersect(aw, bcomp);
}

bool nfa_subset(const Nfa& a, const Nfa& b) {
    return nfa_is_empty(nfa_difference(a, b));
}

bool nfa_equal(const Nfa& a, const Nfa& b) {
    AlphabetRef sigma = alphabet_union(a.alphabet(), b.alphabet());
    Nfa ma = nfa_determinize_minimize(nfa_with_alphabet(a, sigma));
    Nfa mb = nfa_determinize_minimize(nfa_with_alphabet(b, sigma));
    // minimal DFAs with canonical BFS numbering: equality is structural
    if (ma.num_states() != mb.num_states() || ma.initial() != mb.initial())
        return false;
    if (ma.finals() != mb.finals())
        return false;
    auto ta = ma.transitions();
    auto tb = mb.transitions();
    auto key = [](const NfaTransition& t) { return std::tuple(t.src, t.letter, t.dst); };
    std::sort(ta.begin(), ta.end(), [&](auto& x, auto& y) { return key(x) < key(y); });
    std::sort(tb.begin(), tb.end(), [&](auto& x, auto& y) { return key(x) < key(y); });
    return ta == tb;
}

std::optional<std::uint64_t> nfa_count_words(const Nfa& a) {
    Nfa d = nfa_determinize(a); // trim + deterministic: word count = accepting-path count
    if (nfa_is_empty(d))
        return 0;
    int n = d.num_states();
    // cycle detection on the trim automaton ⇒ infinite language
    std::vector<int> color(n, 0);
    std::vector<std::pair<int, size_t>> stack{{d.initial(), 0}};
    color[d.initial()] = 1;
    while (!stack.empty()) {
        auto& [s, idx] = stack.back();
        if (idx < d.out(s).size()) {
            int dnext = d.out(s)[idx].second;
            ++idx;
            if (color[dnext] == 1)
                return std::nullopt;
            if (color[dnext] == 0) {
                color[dnext] = 1;
                stack.emplace_back(dnext, 0);
            }
        } else {
            color[s] = 2;
            stack.pop_back();
        }
    }
    // DAG: accumulate path counts in reverse topological order
    std::vector<int> order;
    order.reserve(n);
    {
        std::vector<std::pair<int, size_t>> dfs{{d.initial(), 0}};
        std::vector<bool> seen(n, false);
        seen[d.initial()] = true;
        while (!dfs.empty()) {
            auto& [s, idx] = dfs.back();
            if (idx < d.out(s).size()) {
                int t = d.out(s)[idx].second;
                ++idx;
                if (!seen[t]) {
                    seen[t] = true;
                    dfs.emplace_back(t, 0);
                }
            } else {
                order.push_back(s);
                dfs.pop_back();
            }
        }
    }
    std::vector<std::uint64_t> memo(n, 0);
    for (int s : order) {
        std::uint64_t c = d.is_final(s) ? 1 : 0;
        for (const auto& [l, t] : d.out(s))
            c += memo[t];
        memo[s] = c;
    }
    return memo[d.initial()];
}

std::optional<int> nfa_longest_length(const Nfa& a) {
    Nfa d = nfa_determinize(a); // trim: every state lies on an accepting path
    if (nfa_is_empty(d))
        return -1;
    int n = d.num_states();
    // longest path to a final state; any cycle in the trim automaton means
    // unbounded words
    std::vector<int> indegree(n, 0);
    for (const auto& t : d.transitions())
        ++indegree[t.dst];
    std::vector<int> topo;
    for (int s = 0; s < n; ++s)
        if (indegree[s] == 0)
            topo.push_back(s);
    for (size_t i = 0; i < topo.size(); ++i)
        for (const auto& [l, t] : d.out(topo[i]))
            if (--indegree[t] == 0)
                topo.push_back(t);
    if (static_cast<int>(topo.size()) != n)
        return std::nullopt; // cyclic
    std::vector<int> depth(n, 0);
    int best = 0;
    for (int s : topo) {
        if (d.is_final(s))
            best = std::max(best, depth[s]);
        for (const auto& [l, t] : d.out(s))
            depth[t] = std::max(depth[t], depth[s] + 1);
    }
    return best;
}

std::vector<Word> nfa_enumerate(const Nfa& a, int max_len) {
    if (max_len < 0)
        throw input_error("max_len must be nonnegative");
    Nfa d = nfa_determinize(a);
    if (nfa_is_empty(d))
        return {};
    int n = d.num_states();
    // min distance to a final state (for pruning)
    std::vector<int> dist(n, -1);
    {
        std::vector<std::vector<int>> rev(n);
        for (const auto& t : d.transitions())
            rev[t.dst].push_back(t.src);
        std::queue<int> q;
        for (int f : d.finals()) { dist[f] = 0; q.push(f); }
        while (!q.empty()) {
            int s = q.front();
            q.pop();
            for (int p : rev[s])
                if (dist[p] == -1) { dist[p] = dist[s] + 1; q.push(p); }
        }
    }
    std::vector<Word> out;
    Word cur;
    std::function<void(int, int)> dfs = [&](int s, int budget) {
        if (d.is_final(s))
            out.push_back(cur);
        if (budget == 0)
            return;
        for (const auto& [l, t] : d.out(s)) {
            if (dist[t] > budget - 1)
                continue;
            cur.push_back(l);
            dfs(t, budget - 1);
            cur.pop_back();
        }
    };
    dfs(d.initial(), max_len);
    std::stable_sort(out.begin(), out.end(), [](const Word& x, const Word& y) {
        if (x.size() != y.size())
            return x.size() < y.size();
        return x < y;
    });
    return out;
}

std::optional<Word> nfa_shortest(const Nfa& a) {
    Nfa d = nfa_determinize(a);
    if (nfa_is_empty(d))
        return std::nullopt;
    // BFS, exploring letters in order for lexicographic tie-break
    std::vector<bool> seen(d.num_states(), false);
    std::deque<std::pair<int, Word>> q;
    q.emplace_back(d.initial(), Word{});
    seen[d.initial()] = true;
    while (!q.empty()) {
        auto [s, w] = q.front();
        q.pop_front();
        if (d.is_final(s))
            return w;
        for (const auto& [l, t] : d.out(s)) {
            if (seen[t])
                continue;
            seen[t] = true;
            Word w2 = w;
            w2.push_back(l);
            q.emplace_back(t, std::move(w2));
        }
    }
    return std::nullopt;
}

Nfa nfa_with_alphabet(const Nfa& a, const AlphabetRef& wider) {
    if (same_alphabet(a.alphabet(), wider))
        return a;
    auto map = alphabet_embedding(a.alphabet(), wider);
    std::vector<NfaTransition> trans;
    trans.reserve(a.transitions().size());
    for (const auto& t : a.transitions())
        trans.push_back({t.src, t.letter == EPS ? EPS : map[t.letter], t.dst});
    return Nfa(wider, a.num_states(), a.initial(), a.finals(), std::move(trans));
}

} // namespace ratg
