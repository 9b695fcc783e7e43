#include "ratgraph/transducer.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
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

inline std::uint64_t pack(int a, int b) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
           static_cast<std::uint32_t>(b);
}

} // namespace

Transducer::Transducer(AlphabetRef alphabet, int num_states, int initial, std::vector<int> finals,
                       std::vector<TransducerTransition> transitions)
    : alphabet_(std::move(alphabet)),
      num_states_(num_states),
      initial_(initial),
      finals_(std::move(finals)),
      transitions_(std::move(transitions)) {
    if (num_states_ <= 0)
        throw input_error("transducer needs at least one state");
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
        for (Letter l : {t.in, t.out})
            if (l != EPS && (l < 0 || l >= alphabet_->size()))
                throw input_error("transition letter out of range");
        adj_[t.src].push_back(t);
    }
}

Transducer t_empty(AlphabetRef alphabet) {
    return Transducer(std::move(alphabet), 1, 0, {}, {});
}

Transducer t_identity(const Nfa& a) {
    Nfa d = nfa_determinize(a);
    std::vector<TransducerTransition> trans;
    for (const auto& t : d.transitions())
        trans.push_back({t.src, t.letter, t.letter, t.dst});
    return Transducer(d.alphabet(), d.num_states(), d.initial(), d.finals(), std::move(trans));
}

Transducer t_identity_all(AlphabetRef alphabet) {
    std::vector<TransducerTransition> trans;
    for (Letter l = 0; l < alphabet->size(); ++l)
        trans.push_back({0, l, l, 0});
    return Transducer(std::move(alphabet), 1, 0, {0}, std::move(trans));
}

Transducer t_pair(AlphabetRef alphabet, const Word& u, const Word& v) {
    // read u then emit v
    std::vector<TransducerTransition> trans;
    int n = 0;
    for (Letter x : u) {
        trans.push_back({n, x, EPS, n + 1});
        ++n;
    }
    for (Letter y : v) {
        trans.push_back({n, EPS, y, n + 1});
        ++n;
    }
    return Transducer(std::move(alphabet), n + 1, 0, {n}, std::move(trans));
}

Transducer t_with_alphabet(const Transducer& t, const AlphabetRef& wider) {
    if (same_alphabet(t.alphabet(), wider))
        return t;
    auto map = alphabet_embedding(t.alphabet(), wider);
    auto remap = [&](Letter l) { return l == EPS ? EPS : map[l]; };
    std::vector<TransducerTransition> trans;
    trans.reserve(t.transitions().size());
    for (const auto& tr : t.transitions())
        trans.push_back({tr.src, remap(tr.in), remap(tr.out), tr.dst});
    return Transducer(wider, t.num_states(), t.initial(), t.finals(), std::move(trans));
}

Nfa t_apply_lang(const Transducer& t, const Nfa& a) {
    AlphabetRef sigma = alphabet_union(t.alphabet(), a.alphabet());
    auto mt = alphabet_embedding(t.alphabet(), sigma);
    auto ma = alphabet_embedding(a.alphabet(), sigma);
    std::unordered_map<std::uint64_t, int> ids;
    std::vector<std::pair<int, int>> states; // (nfa state, transducer state)
    auto intern = [&](int x, int q) {
        std::uint64_t key = pack(x, q);
        auto it = ids.find(key);
        if (it != ids.end())
            return it->second;
        int id = static_cast<int>(states.size());
        ids.emplace(key, id);
        states.emplace_back(x, q);
        return id;
    };
    std::vector<NfaTransition> trans;
    std::vector<int> finals;
    intern(a.initial(), t.initial());
    for (int cur = 0; cur < static_cast<int>(states.size()); ++cur) {
        auto [x, q] = states[cur];
        if (a.is_final(x) && t.is_final(q))
            finals.push_back(cur);
        for (const auto& [l, d] : a.out(x))
            if (l == EPS)
                trans.push_back({cur, EPS, intern(d, q)});
        for (const auto& tr : t.out(q)) {
            Letter out = tr.out == EPS ? EPS : mt[tr.out];
            if (tr.in == EPS) {
                trans.push_back({cur, out, intern(x, tr.dst)});
            } else {
                for (const auto& [l, d] : a.out(x))
                    if (l != EPS && ma[l] == mt[tr.in])
                        trans.push_back({cur, out, intern(d, tr.dst)});
            }
        }
    }
    Nfa prod(sigma, static_cast<int>(states.size()), 0, std::move(finals), std::move(trans));
    return nfa_trim(prod);
}

Nfa t_apply_word(const Transducer& t, const Word& u) {
    for (Letter l : u)
        if (l < 0 || l >= t.alphabet()->size())
            throw input_error("word letter outside the transducer's alphabet");
    return t_apply_lang(t, nfa_word(t.alphabet(), u));
}

Transducer t_compose(const Transducer& t1, const Transducer& t2) {
    AlphabetRef sigma = alphabet_union(t1.alphabet(), t2.alphabet());
    auto m1 = alphabet_embedding(t1.alphabet(), sigma);
    auto m2 = alphabet_embedding(t2.alphabet(), sigma);
    auto re1 = [&](Letter l) { return l == EPS ? EPS : m1[l]; };
    auto re2 = [&](Letter l) { return l == EPS ? EPS : m2[l]; };
    std::unordered_map<std::uint64_t, int> ids;
    std::vector<std::pair<int, int>> states;
    auto intern = [&](int x, int y) {
        std::uint64_t key = pack(x, y);
        auto it = ids.find(key);
        if (it != ids.end())
            return it->second;
        int id = static_cast<int>(states.size());
        ids.emplace(key, id);
        states.emplace_back(x, y);
        return id;
    };
    std::vector<TransducerTransition> trans;
    std::vector<int> finals;
    intern(t1.initial(), t2.initial());
    for (int cur = 0; cur < static_cast<int>(states.size()); ++cur) {
        auto [x, y] = states[cur];
        if (t1.is_final(x) && t2.is_final(y))
            finals.push_back(cur);
        for (const auto& a : t1.out(x)) {
            if (a.out == EPS) {
                // t1 advances alone, nothing fed into t2
                trans.push_back({cur, re1(a.in), EPS, intern(a.dst, y)});
            } else {
                for (const auto& b : t2.out(y))
                    if (b.in != EPS && m2[b.in] == m1[a.out])
                        trans.push_back({cur, re1(a.in), re2(b.out), intern(a.dst, b.dst)});
            }
        }
        for (const auto& b : t2.out(y))
            if (b.in == EPS)
                trans.push_back({cur, EPS, re2(b.out), intern(x, b.dst)});
    }
    Transducer prod(sigma, static_cast<int>(states.size()), 0, std::move(finals),
                    std::move(trans));
    return t_trim(prod);
}

Transducer t_union(const Transducer& t1, const Transducer& t2) {
    AlphabetRef sigma = alphabet_union(t1.alphabet(), t2.alphabet());
    auto m1 = alphabet_embedding(t1.alphabet(), sigma);
    auto m2 = alphabet_embedding(t2.alphabet(), sigma);
    auto re = [](const std::vector<Letter>& m, Letter l) { return l == EPS ? EPS : m[l]; };
    int n1 = t1.num_states(), n2 = t2.num_states();
    // fresh initial that copies the outgoing transitions of both initials;
    // final if either initial is (avoids ε/ε glue)
    std::vector<TransducerTransition> trans;
    for (const auto& t : t1.transitions())
        trans.push_back({t.src + 1, re(m1, t.in), re(m1, t.out), t.dst + 1});
    for (const auto& t : t2.transitions())
        trans.push_back({t.src + 1 + n1, re(m2, t.in), re(m2, t.out), t.dst + 1 + n1});
    for (const auto& t : t1.out(t1.initial()))
        trans.push_back({0, re(m1, t.in), re(m1, t.out), t.dst + 1});
    for (const auto& t : t2.out(t2.initial()))
        trans.push_back({0, re(m2, t.in), re(m2, t.out), t.dst + 1 + n1});
    std::vector<int> finals;
    if (t1.is_final(t1.initial()) || t2.is_final(t2.initial()))
        finals.push_back(0);
    for (int f : t1.finals()) finals.push_back(f + 1);
    for (int f : t2.finals()) finals.push_back(f + 1 + n1);
    Transducer u(sigma, 1 + n1 + n2, 0, std::move(finals), std::move(trans));
    return t_trim(u);
}

Transducer t_concat(const Transducer& t1, const Transducer& t2) {
    AlphabetRef sigma = alphabet_union(t1.alphabet(), t2.alphabet());
    auto m1 = alphabet_embedding(t1.alphabet(), sigma);
    auto m2 = alphabet_embedding(t2.alphabet(), sigma);
    auto re = [](const std::vector<Letter>& m, Letter l) { return l == EPS ? EPS : m[l]; };
    int n1 = t1.num_states();
    std::vector<TransducerTransition> trans;
    for (const auto& t : t1.transitions())
        trans.push_back({t.src, re(m1, t.in), re(m1, t.out), t.dst});
    for (const auto& t : t2.transitions())
        trans.push_back({t.src + n1, re(m2, t.in), re(m2, t.out), t.dst + n1});
    for (int f : t1.finals())
        trans.push_back({f, EPS, EPS, n1 + t2.initial()});
    std::vector<int> finals;
    for (int f : t2.finals()) finals.push_back(f + n1);
    Transducer c(sigma, n1 + t2.num_states(), t1.initial(), std::move(finals), std::move(trans));
    return t_normalize(c);
}

Transducer t_invert(const Transducer& t) {
    std::vector<TransducerTransition> trans;
    trans.reserve(t.transitions().size());
    for (const auto& tr : t.transitions())
        trans.push_back({tr.src, tr.out, tr.in, tr.dst});
    return Transducer(t.alphabet(), t.num_states(), t.initial(), t.finals(), std::move(trans));
}

Nfa t_range(const Transducer& t) {
    std::vector<NfaTransition> trans;
    trans.reserve(t.transitions().size());
    for (const auto& tr : t.transitions())
        trans.push_back({tr.src, tr.out, tr.dst});
    Nfa n(t.alphabet(), t.num_states(), t.initial(), t.finals(), std::move(trans));
    return nfa_trim(n);
}

Nfa t_domain(const Transducer& t) {
    return t_range(t_invert(t));
}

Transducer t_restrict_domain(const Transducer& t, const Nfa& a) {
    AlphabetRef sigma = alphabet_union(t.alphabet(), a.alphabet());
    // deterministic complete restrictor keeps sequential inputs sequential
    Nfa d = nfa_determinize_minimize(nfa_with_alphabet(a, sigma), /*complete=*/true);
    Transducer tw = t_with_alphabet(t, sigma);
    std::unordered_map<std::uint64_t, int> ids;
    std::vector<std::pair<int, int>> states;
    auto intern = [&](int q, int s) {
        std::uint64_t key = pack(q, s);
        auto it = ids.find(key);
        if (it != ids.end())
            return it->second;
        int id = static_cast<int>(states.size());
        ids.emplace(key, id);
        states.emplace_back(q, s);
        return id;
    };
    // complete DFA: one successor per letter
    std::vector<int> delta(static_cast<size_t>(d.num_states()) * sigma->size(), -1);
    for (const auto& tr : d.transitions())
        delta[static_cast<size_t>(tr.src) * sigma->size() + tr.letter] = tr.dst;
    std::vector<TransducerTransition> trans;
    std::vector<int> finals;
    intern(tw.initial(), d.initial());
    for (int cur = 0; cur < static_cast<int>(states.size()); ++cur) {
        auto [q, s] = states[cur];
        if (tw.is_final(q) && d.is_final(s))
            finals.push_back(cur);
        for (const auto& tr : tw.out(q)) {
            int s2 = tr.in == EPS ? s : delta[static_cast<size_t>(s) * sigma->size() + tr.in];
            trans.push_back({cur, tr.in, tr.out, intern(tr.dst, s2)});
        }
    }
    Transducer r(sigma, static_cast<int>(states.size()), 0, std::move(finals), std::move(trans));
    return t_trim(r);
}

Transducer t_restrict_range(const Transducer& t, const Nfa& a) {
    return t_invert(t_restrict_domain(t_invert(t), a));
}

bool t_accepts(const Transducer& t, const Word& u, const Word& v) {
    // reachability over (i, j, state)
    int nu = static_cast<int>(u.size()), nv = static_cast<int>(v.size());
    std::unordered_set<std::uint64_t> seen;
    auto key = [&](int i, int j, int q) {
        return (static_cast<std::uint64_t>(i) << 42) | (static_cast<std::uint64_t>(j) << 21) |
               static_cast<std::uint64_t>(q);
    };
    std::vector<std::tuple<int, int, int>> stack{{0, 0, t.initial()}};
    seen.insert(key(0, 0, t.initial()));
    while (!stack.empty()) {
        auto [i, j, q] = stack.back();
        stack.pop_back();
        if (i == nu && j == nv && t.is_final(q))
            return true;
        for (const auto& tr : t.out(q)) {
            int i2 = i, j2 = j;
            if (tr.in != EPS) {
                if (i == nu || u[i] != tr.in)
                    continue;
                i2 = i + 1;
            }
            if (tr.out != EPS) {
                if (j == nv || v[j] != tr.out)
                    continue;
                j2 = j + 1;
            }
            if (seen.insert(key(i2, j2, tr.dst)).second)
                stack.emplace_back(i2, j2, tr.dst);
        }
    }
    return false;
}

Transducer t_trim(const Transducer& t) {
    int n = t.num_states();
    std::vector<bool> reach(n, false);
    std::vector<int> stack{t.initial()};
    reach[t.initial()] = true;
    while (!stack.empty()) {
        int s = stack.back();
        stack.pop_back();
        for (const auto& tr : t.out(s))
            if (!reach[tr.dst]) { reach[tr.dst] = true; stack.push_back(tr.dst); }
    }
    std::vector<std::vector<int>> rev(n);
    for (const auto& tr : t.transitions())
        rev[tr.dst].push_back(tr.src);
    std::vector<bool> coacc(n, false);
    for (int f : t.finals())
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
    if (remap[t.initial()] == -1)
        return t_empty(t.alphabet());
    std::vector<TransducerTransition> trans;
    for (const auto& tr : t.transitions())
        if (remap[tr.src] != -1 && remap[tr.dst] != -1)
            trans.push_back({remap[tr.src], tr.in, tr.out, remap[tr.dst]});
    std::vector<int> finals;
    for (int f : t.finals())
        if (remap[f] != -1)
            finals.push_back(remap[f]);
    return Transducer(t.alphabet(), m, remap[t.initial()], std::move(finals), std::move(trans));
}

Transducer t_normalize(const Transducer& t) {
    // ε/ε-closure per state
    int n = t.num_states();
    std::vector<std::vector<int>> closure(n);
    for (int s = 0; s < n; ++s) {
        std::vector<bool> seen(n, false);
        std::vector<int> stack{s};
        seen[s] = true;
        while (!stack.empty()) {
            int q = stack.back();
            stack.pop_back();
            for (const auto& tr : t.out(q))
                if (tr.in == EPS && tr.out == EPS && !seen[tr.dst]) {
                    seen[tr.dst] = true;
                    stack.push_back(tr.dst);
                }
        }
        for (int q = 0; q < n; ++q)
            if (seen[q])
                closure[s].push_back(q);
    }
    std::vector<TransducerTransition> trans;
    std::vector<int> finals;
    for (int s = 0; s < n; ++s) {
        bool fin = false;
        for (int q : closure[s]) {
            if (t.is_final(q))
                fin = true;
            for (const auto& tr : t.out(q))
                if (!(tr.in == EPS && tr.out == EPS))
                    trans.push_back({s, tr.in, tr.out, tr.dst});
        }
        if (fin)
            finals.push_back(s);
    }
    std::sort(trans.begin(), trans.end(), [](const auto& a, const auto& b) {
        return std::tuple(a.src, a.in, a.out, a.dst) < std::tuple(b.src, b.in, b.out, b.dst);
    });
    trans.erase(std::unique(trans.begin(), trans.end()), trans.end());
    Transducer r(t.alphabet(), n, t.initial(), std::move(finals), std::move(trans));
    return t_trim(r);
}

namespace {

// encode a label pair as one int for label-alphabet constructions
inline int label_code(const Transducer& t, Letter in, Letter out) {
    int k = t.alphabet()->size() + 1;
    return (in + 1) * k + (out + 1);
}
inline std::pair<Letter, Letter> label_decode(const Transducer& t, int code) {
    int k = t.alphabet()->size() + 1;
    return {code / k - 1, code % k - 1};
}

} // namespace

Transducer t_canonicalize(const Transducer& t0) {
    Transducer t = t_normalize(t0);
    if (nfa_is_empty(t_domain(t)))
        return t_empty(t.alphabet());
    // view as an automaton over composite labels
    std::map<int, Letter> code_to_sym;
    std::vector<std::string> names;
    std::vector<NfaTransition> ntrans;
    for (const auto& tr : t.transitions()) {
        int code = label_code(t, tr.in, tr.out);
        auto it = code_to_sym.find(code);
        if (it == code_to_sym.end()) {
            it = code_to_sym.emplace(code, static_cast<Letter>(names.size())).first;
            names.push_back(std::to_string(code));
        }
        ntrans.push_back({tr.src, it->second, tr.dst});
    }
    auto label_alpha = make_alphabet(names);
    Nfa as_nfa(label_alpha, t.num_states(), t.initial(), t.finals(), std::move(ntrans));
    Nfa md = nfa_determinize_minimize(as_nfa);
    std::vector<int> sym_to_code(names.size());
    for (const auto& [code, sym] : code_to_sym)
        sym_to_code[sym] = code;
    std::vector<TransducerTransition> trans;
    for (const auto& tr : md.transitions()) {
        auto [in, out] = label_decode(t, sym_to_code[tr.letter]);
        trans.push_back({tr.src, in, out, tr.dst});
    }
    return Transducer(t.alphabet(), md.num_states(), md.initial(), md.finals(),
                      std::move(trans));
}

TransducerClass t_classify(const Transducer& t0) {
    Transducer t = t_trim(t_normalize(t0));
    TransducerClass c;
    bool all_two_sided = true;
    for (const auto& tr : t.transitions())
        if (tr.in == EPS || tr.out == EPS)
            all_two_sided = false;
    c.synchronous = all_two_sided;

    // phase propagation: 0 = only two-sided so far, 1 = in an (x,ε) tail,
    // 2 = in an (ε,y) tail
    auto propagate_left = [&]() {
        std::vector<std::array<bool, 3>> phase(t.num_states(), {false, false, false});
        phase[t.initial()][0] = true;
        std::deque<std::pair<int, int>> q{{t.initial(), 0}};
        while (!q.empty()) {
            auto [s, ph] = q.front();
            q.pop_front();
            for (const auto& tr : t.out(s)) {
                int nph;
                if (tr.in != EPS && tr.out != EPS) {
                    if (ph != 0)
                        return false; // two-sided after a tail began
                    nph = 0;
                } else if (tr.out == EPS) { // (x, ε)
                    if (ph == 2)
                        return false;
                    nph = 1;
                } else { // (ε, y)
                    if (ph == 1)
                        return false;
                    nph = 2;
                }
                if (!phase[tr.dst][nph]) {
                    phase[tr.dst][nph] = true;
                    q.emplace_back(tr.dst, nph);
                }
            }
        }
        return true;
    };
    // mirrored: a one-sided uniform prefix, then two-sided to the end
    auto propagate_right = [&]() {
        // phases: 0 = nothing read, 1 = in (x,ε) prefix, 2 = in (ε,y) prefix,
        // 3 = two-sided part entered
        std::vector<std::array<bool, 4>> phase(t.num_states(), {false, false, false, false});
        phase[t.initial()][0] = true;
        std::deque<std::pair<int, int>> q{{t.initial(), 0}};
        while (!q.empty()) {
            auto [s, ph] = q.front();
            q.pop_front();
            for (const auto& tr : t.out(s)) {
                int nph;
                if (tr.in != EPS && tr.out != EPS) {
                    nph = 3;
                } else if (tr.out == EPS) { // (x, ε)
                    if (ph == 2 || ph == 3)
                        return false;
                    nph = 1;
                } else { // (ε, y)
                    if (ph == 1 || ph == 3)
                        return false;
                    nph = 2;
                }
                if (!phase[tr.dst][nph]) {
                    phase[tr.dst][nph] = true;
                    q.emplace_back(tr.dst, nph);
                }
            }
        }
        return true;
    };
    c.left_synchronized = all_two_sided || propagate_left();
    c.right_synchronized = all_two_sided || propagate_right();

    c.sequential = true;
    for (int s = 0; s < t.num_states() && c.sequential; ++s) {
        const auto& row = t.out(s);
        for (size_t i = 0; i < row.size() && c.sequential; ++i)
            for (size_t j = i + 1; j < row.size(); ++j) {
                const auto& a = row[i];
                const auto& b = row[j];
                bool same = a.in == b.in && a.out == b.out && a.dst == b.dst;
                bool split = a.in != EPS && b.in != EPS && a.in != b.in;
                if (!same && !split) {
                    c.sequential = false;
                    break;
                }
            }
    }
    return c;
}

Transducer t_unambiguize_synchronized(const Transducer& t0) {
    TransducerClass cls = t_classify(t0);
    if (!cls.left_synchronized)
        throw class_error("unambiguization needs a left-synchronized transducer");
    Transducer t = t_normalize(t0);
    if (nfa_is_empty(t_domain(t)))
        return t_empty(t.alphabet());
    // subset construction over composite labels: exactly one run per label
    // sequence, and left-synchronized label sequences determine the pair
    std::unordered_map<std::vector<int>, int, VecHash> ids;
    std::vector<std::vector<int>> subsets;
    auto intern = [&](std::vector<int> s) {
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        auto it = ids.find(s);
        if (it != ids.end())
            return it->second;
        int id = static_cast<int>(subsets.size());
        ids.emplace(s, id);
        subsets.push_back(std::move(s));
        return id;
    };
    intern({t.initial()});
    std::vector<TransducerTransition> trans;
    std::vector<int> finals;
    for (int cur = 0; cur < static_cast<int>(subsets.size()); ++cur) {
        auto subset = subsets[cur];
        bool fin = false;
        std::map<int, std::vector<int>> next; // label code → successor set
        for (int q : subset) {
            if (t.is_final(q))
                fin = true;
            for (const auto& tr : t.out(q))
                next[label_code(t, tr.in, tr.out)].push_back(tr.dst);
        }
        if (fin)
            finals.push_back(cur);
        for (auto& [code, set] : next) {
            auto [in, out] = label_decode(t, code);
            trans.push_back({cur, in, out, intern(std::move(set))});
        }
    }
    Transducer det(t.alphabet(), static_cast<int>(subsets.size()), 0, std::move(finals),
                   std::move(trans));
    return t_canonicalize(det); // DFA minimization keeps label-determinism
}

namespace {

struct Delay {
    int side = 0; // 0 none, 1 = first run's output is ahead, 2 = second's
    Word w;
    bool operator==(const Delay& o) const { return side == o.side && w == o.w; }
};

} // namespace

/// Exact functionality by the squared-transducer delay test.
static bool t_is_functional_exact(const Transducer& t0) {
    Transducer t = t_normalize(t0);
    if (nfa_is_empty(t_domain(t)))
        return true;
    // squared automaton over same-input run pairs
    std::unordered_map<std::uint64_t, int> ids;
    std::vector<std::pair<int, int>> states;
    auto intern = [&](int x, int y) {
        std::uint64_t key = pack(x, y);
        auto it = ids.find(key);
        if (it != ids.end())
            return it->second;
        int id = static_cast<int>(states.size());
        ids.emplace(key, id);
        states.emplace_back(x, y);
        return id;
    };
    struct Edge {
        int dst;
        Letter out1, out2;
    };
    std::vector<std::vector<Edge>> adj;
    std::vector<bool> fin;
    intern(t.initial(), t.initial());
    for (int cur = 0; cur < static_cast<int>(states.size()); ++cur) {
        auto [x, y] = states[cur];
        adj.resize(states.size());
        fin.resize(states.size(), false);
        fin[cur] = t.is_final(x) && t.is_final(y);
        for (const auto& a : t.out(x)) {
            if (a.in == EPS) {
                adj[cur].push_back({intern(a.dst, y), a.out, EPS});
            } else {
                for (const auto& b : t.out(y))
                    if (b.in == a.in)
                        adj[cur].push_back({intern(a.dst, b.dst), a.out, b.out});
            }
        }
        for (const auto& b : t.out(y))
            if (b.in == EPS)
                adj[cur].push_back({intern(x, b.dst), EPS, b.out});
        adj.resize(states.size());
        fin.resize(states.size(), false);
    }
    int n = static_cast<int>(states.size());
    // co-accessible restriction
    std::vector<std::vector<int>> rev(n);
    for (int s = 0; s < n; ++s)
        for (const auto& e : adj[s])
            rev[e.dst].push_back(s);
    std::vector<bool> useful(n, false);
    std::vector<int> stack;
    for (int s = 0; s < n; ++s)
        if (fin[s]) { useful[s] = true; stack.push_back(s); }
    while (!stack.empty()) {
        int s = stack.back();
        stack.pop_back();
        for (int p : rev[s])
            if (!useful[p]) { useful[p] = true; stack.push_back(p); }
    }
    if (!useful[0])
        return true;
    // delay labeling DFS; conflicting or mismatched delays on useful states
    // witness two outputs for one input
    std::vector<std::optional<Delay>> delay(n);
    delay[0] = Delay{};
    stack = {0};
    while (!stack.empty()) {
        int s = stack.back();
        stack.pop_back();
        Delay d = *delay[s];
        if (fin[s] && d.side != 0)
            return false;
        for (const auto& e : adj[s]) {
            if (!useful[e.dst])
                continue;
            // extend both outputs
            Word w1, w2;
            if (d.side == 1)
                w1 = d.w;
            else if (d.side == 2)
                w2 = d.w;
            if (e.out1 != EPS)
                w1.push_back(e.out1);
            if (e.out2 != EPS)
                w2.push_back(e.out2);
            size_t common = 0;
            while (common < w1.size() && common < w2.size() && w1[common] == w2[common])
                ++common;
            if (common < w1.size() && common < w2.size())
                return false; // genuine mismatch, completable
            Delay nd;
            if (common < w1.size()) {
                nd.side = 1;
                nd.w.assign(w1.begin() + common, w1.end());
            } else if (common < w2.size()) {
                nd.side = 2;
                nd.w.assign(w2.begin() + common, w2.end());
            }
            if (!delay[e.dst]) {
                delay[e.dst] = nd;
                stack.push_back(e.dst);
            } else if (!(*delay[e.dst] == nd)) {
                return false; // two distinct delays
            }
        }
    }
    for (int s = 0; s < n; ++s)
        if (fin[s] && delay[s] && delay[s]->side != 0)
            return false;
    return true;
}

bool t_is_functional_synchronized(const Transducer& t) {
    if (!t_classify(t).left_synchronized)
        throw class_error("exact functionality test needs a left-synchronized transducer");
    return t_is_functional_exact(t);
}

bool t_functional_probe(const Transducer& t, int max_len) {
    Nfa dom = t_domain(t);
    for (const Word& u : nfa_enumerate(dom, max_len)) {
        Nfa image = t_apply_word(t, u);
        auto count = nfa_count_words(image);
        if (!count || *count > 1)
            return false;
    }
    return true;
}

std::uint64_t t_run_count(const Transducer& t0, const Word& u, const Word& v) {
    Transducer t = t_normalize(t0);
    int nu = static_cast<int>(u.size()), nv = static_cast<int>(v.size());
    // DAG over (i, j, state): every transition advances i or j
    std::unordered_map<std::uint64_t, std::uint64_t> memo;
    auto key = [&](int i, int j, int q) {
        return (static_cast<std::uint64_t>(i) << 42) | (static_cast<std::uint64_t>(j) << 21) |
               static_cast<std::uint64_t>(q);
    };
    std::function<std::uint64_t(int, int, int)> runs = [&](int i, int j, int q) -> std::uint64_t {
        auto it = memo.find(key(i, j, q));
        if (it != memo.end())
            return it->second;
        std::uint64_t total = (i == nu && j == nv && t.is_final(q)) ? 1 : 0;
        for (const auto& tr : t.out(q)) {
            int i2 = i, j2 = j;
            if (tr.in != EPS) {
                if (i == nu || u[i] != tr.in)
                    continue;
                i2 = i + 1;
            }
            if (tr.out != EPS) {
                if (j == nv || v[j] != tr.out)
                    continue;
                j2 = j + 1;
            }
            total += runs(i2, j2, tr.dst);
        }
        memo.emplace(key(i, j, q), total);
        return total;
    };
    return runs(0, 0, t.initial());
}

std::optional<int> t_imbalance_bound(const Transducer& t0) {
    if (!t_classify(t0).left_synchronized)
        throw class_error("imbalance bound needs a left-synchronized transducer");
    Transducer t = t_trim(t_normalize(t0));
    if (nfa_is_empty(t_domain(t)))
        return 0;
    int n = t.num_states();
    // tails are maximal (x,ε)-only path suffixes ending at a final state;
    // restrict the (x,ε)-subgraph to states from which a final is reachable
    // inside it, then the bound is the longest path (∞ when cyclic)
    std::vector<std::vector<int>> fwd(n), rev(n);
    for (const auto& tr : t.transitions())
        if (tr.in != EPS && tr.out == EPS) {
            fwd[tr.src].push_back(tr.dst);
            rev[tr.dst].push_back(tr.src);
        }
    std::vector<bool> can_finish(n, false);
    std::vector<int> stack;
    for (int f : t.finals()) {
        can_finish[f] = true;
        stack.push_back(f);
    }
    while (!stack.empty()) {
        int s = stack.back();
        stack.pop_back();
        for (int p : rev[s])
            if (!can_finish[p]) { can_finish[p] = true; stack.push_back(p); }
    }
    // longest path to a final within the restricted subgraph
    std::vector<int> color(n, 0), tail(n, -1);
    bool cyclic = false;
    std::function<int(int)> visit = [&](int q) -> int {
        if (color[q] == 1) {
            cyclic = true;
            return 0;
        }
        if (color[q] == 2)
            return tail[q];
        color[q] = 1;
        int best = t.is_final(q) ? 0 : -1;
        for (int d : fwd[q]) {
            if (!can_finish[d])
                continue;
            int sub = visit(d);
            if (cyclic)
                return 0;
            if (sub >= 0)
                best = std::max(best, 1 + sub);
        }
        color[q] = 2;
        tail[q] = best;
        return best;
    };
    int c = 0;
    for (int q = 0; q < n; ++q) {
        if (!can_finish[q])
            continue;
        int v = visit(q);
        if (cyclic)
            return std::nullopt;
        c = std::max(c, v);
    }
    return c;
}

Transducer t_resynchronize(const Transducer& t0, int max_delay) {
    Transducer t = t_normalize(t0);
    if (nfa_is_empty(t_domain(t)))
        return t_empty(t.alphabet());
    // simulate t, buffering the surplus side; emit two-sided labels while
    // both sides have pending letters, flush one-sided tails at finals
    struct State {
        int q;
        int side; // 0 none, 1 input surplus, 2 output surplus
        Word buf;
        int flush; // 0 normal, 1 flushing (no more simulation)
        bool operator==(const State& o) const {
            return q == o.q && side == o.side && buf == o.buf && flush == o.flush;
        }
    };
    struct StateHash {
        size_t operator()(const State& s) const {
            size_t h = static_cast<size_t>(s.q) * 31 + s.side * 7 + s.flush;
            for (int x : s.buf)
                h = h * 131 + static_cast<size_t>(x + 2);
            return h;
        }
    };
    std::unordered_map<State, int, StateHash> ids;
    std::vector<State> states;
    auto intern = [&](State s) {
        auto it = ids.find(s);
        if (it != ids.end())
            return it->second;
        int id = static_cast<int>(states.size());
        ids.emplace(s, id);
        states.push_back(std::move(s));
        return id;
    };
    intern(State{t.initial(), 0, {}, 0});
    std::vector<TransducerTransition> trans;
    std::vector<int> finals;
    bool overflow = false;
    for (int cur = 0; cur < static_cast<int>(states.size()); ++cur) {
        State st = states[cur];
        if (st.flush == 1) {
            // emit remaining buffer one-sided
            if (st.buf.empty()) {
                finals.push_back(cur);
            } else {
                Word rest(st.buf.begin() + 1, st.buf.end());
                State nxt{st.q, rest.empty() ? 0 : st.side, rest, 1};
                if (st.side == 1)
                    trans.push_back({cur, st.buf[0], EPS, intern(nxt)});
                else
                    trans.push_back({cur, EPS, st.buf[0], intern(nxt)});
            }
            continue;
        }
        if (t.is_final(st.q)) {
            if (st.buf.empty())
                finals.push_back(cur);
            else
                trans.push_back({cur, EPS, EPS, intern(State{st.q, st.side, st.buf, 1})});
        }
        for (const auto& tr : t.out(st.q)) {
            // queues after this simulation step
            Word qin = st.side == 1 ? st.buf : Word{};
            Word qout = st.side == 2 ? st.buf : Word{};
            if (tr.in != EPS)
                qin.push_back(tr.in);
            if (tr.out != EPS)
                qout.push_back(tr.out);
            Letter emit_in = EPS, emit_out = EPS;
            if (!qin.empty() && !qout.empty()) {
                emit_in = qin.front();
                emit_out = qout.front();
                qin.erase(qin.begin());
                qout.erase(qout.begin());
            }
            State nxt{tr.dst, 0, {}, 0};
            if (!qin.empty()) {
                nxt.side = 1;
                nxt.buf = qin;
            } else if (!qout.empty()) {
                nxt.side = 2;
                nxt.buf = qout;
            }
            if (static_cast<int>(nxt.buf.size()) > max_delay) {
                overflow = true;
                continue;
            }
            trans.push_back({cur, emit_in, emit_out, intern(nxt)});
        }
    }
    Transducer out(t.alphabet(), static_cast<int>(states.size()), 0, std::move(finals),
                   std::move(trans));
    out = t_canonicalize(out);
    if (overflow) {
        // dropped runs are only a problem if they carried pairs nothing else
        // covers; the caller picked max_delay from an imbalance bound, so
        // treat overflow as a hard error to avoid silent under-approximation
        throw class_error("resynchronization delay bound exceeded");
    }
    return out;
}

std::vector<std::pair<Word, Word>> t_pairs_up_to(const Transducer& t, int max_u, int max_v) {
    std::vector<std::pair<Word, Word>> out;
    Nfa dom = t_domain(t);
    for (const Word& u : nfa_enumerate(dom, max_u)) {
        Nfa image = t_apply_word(t, u);
        for (const Word& v : nfa_enumerate(image, max_v))
            out.emplace_back(u, v);
    }
    return out;
}

} // namespace ratg
