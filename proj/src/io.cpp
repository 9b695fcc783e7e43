#include "ratgraph/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace ratg {

using json = nlohmann::json;

namespace {

json alphabet_json(const Alphabet& a) {
    json out = json::array();
    for (const auto& n : a.names())
        out.push_back(n);
    return out;
}

std::vector<std::string> string_list(const json& j, const std::string& what) {
    if (!j.is_array())
        throw parse_error(what + " must be an array of strings");
    std::vector<std::string> out;
    for (const auto& x : j) {
        if (!x.is_string())
            throw parse_error(what + " must be an array of strings");
        out.push_back(x.get<std::string>());
    }
    return out;
}

struct StateNames {
    std::vector<std::string> names;
    std::unordered_map<std::string, int> ids;
    int require(const std::string& n) const {
        auto it = ids.find(n);
        if (it == ids.end())
            throw parse_error("unknown state: " + n);
        return it->second;
    }
};

StateNames parse_states(const json& j) {
    StateNames s;
    s.names = string_list(j, "states");
    for (int i = 0; i < static_cast<int>(s.names.size()); ++i)
        if (!s.ids.emplace(s.names[i], i).second)
            throw parse_error("duplicate state name: " + s.names[i]);
    if (s.names.empty())
        throw parse_error("at least one state required");
    return s;
}

Letter parse_letter(const Alphabet& a, const json& j) {
    if (!j.is_string())
        throw parse_error("letters must be strings");
    std::string n = j.get<std::string>();
    if (n.empty())
        return EPS;
    auto id = a.find(n);
    if (!id)
        throw parse_error("letter not in alphabet: " + n);
    return *id;
}

Nfa parse_nfa(const json& j) {
    AlphabetRef alpha = make_alphabet(string_list(j.at("alphabet"), "alphabet"));
    StateNames st = parse_states(j.at("states"));
    int initial = st.require(j.at("initial").get<std::string>());
    std::vector<int> finals;
    for (const auto& f : string_list(j.at("finals"), "finals"))
        finals.push_back(st.require(f));
    std::vector<NfaTransition> trans;
    for (const auto& t : j.at("transitions")) {
        if (!t.is_array() || t.size() != 3)
            throw parse_error("automaton transitions are [src, letter, dst]");
        trans.push_back({st.require(t[0].get<std::string>()), parse_letter(*alpha, t[1]),
                         st.require(t[2].get<std::string>())});
    }
    return Nfa(alpha, static_cast<int>(st.names.size()), initial, std::move(finals),
               std::move(trans));
}

json nfa_json(const Nfa& a) {
    json out;
    out["kind"] = "nfa";
    out["alphabet"] = alphabet_json(*a.alphabet());
    json states = json::array();
    for (int i = 0; i < a.num_states(); ++i)
        states.push_back("s" + std::to_string(i));
    out["states"] = states;
    out["initial"] = "s" + std::to_string(a.initial());
    json finals = json::array();
    for (int f : a.finals())
        finals.push_back("s" + std::to_string(f));
    out["finals"] = finals;
    json trans = json::array();
    for (const auto& t : a.transitions())
        trans.push_back({"s" + std::to_string(t.src),
                         t.letter == EPS ? "" : a.alphabet()->name(t.letter),
                         "s" + std::to_string(t.dst)});
    out["transitions"] = trans;
    return out;
}

Transducer parse_transducer(const json& j) {
    AlphabetRef alpha = make_alphabet(string_list(j.at("alphabet"), "alphabet"));
    StateNames st = parse_states(j.at("states"));
    int initial = st.require(j.at("initial").get<std::string>());
    std::vector<int> finals;
    for (const auto& f : string_list(j.at("finals"), "finals"))
        finals.push_back(st.require(f));
    std::vector<TransducerTransition> trans;
    for (const auto& t : j.at("transitions")) {
        if (!t.is_array() || t.size() != 4)
            throw parse_error("transducer transitions are [src, in, out, dst]");
        trans.push_back({st.require(t[0].get<std::string>()), parse_letter(*alpha, t[1]),
                         parse_letter(*alpha, t[2]), st.require(t[3].get<std::string>())});
    }
    return Transducer(alpha, static_cast<int>(st.names.size()), initial, std::move(finals),
                      std::move(trans));
}

json transducer_json(const Transducer& t) {
    json out;
    out["kind"] = "transducer";
    out["alphabet"] = alphabet_json(*t.alphabet());
    json states = json::array();
    for (int i = 0; i < t.num_states(); ++i)
        states.push_back("s" + std::to_string(i));
    out["states"] = states;
    out["initial"] = "s" + std::to_string(t.initial());
    json finals = json::array();
    for (int f : t.finals())
        finals.push_back("s" + std::to_string(f));
    out["finals"] = finals;
    json trans = json::array();
    for (const auto& tr : t.transitions())
        trans.push_back({"s" + std::to_string(tr.src),
                         tr.in == EPS ? "" : t.alphabet()->name(tr.in),
                         tr.out == EPS ? "" : t.alphabet()->name(tr.out),
                         "s" + std::to_string(tr.dst)});
    out["transitions"] = trans;
    return out;
}

json read_file_json(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw parse_error("cannot open file: " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw parse_error("invalid syntax in " + path + ": " + e.what());
    }
    return j;
}

std::string dir_of(const std::string& path) {
    auto pos = path.find_last_of('/');
    return pos == std::string::npos ? std::string(".") : path.substr(0, pos);
}

// sub-object or sibling-file reference
json resolve(const json& j, const std::string& base_dir) {
    if (j.is_string())
        return read_file_json(base_dir + "/" + j.get<std::string>());
    return j;
}

InfiniteAutomaton parse_graph(const json& j, const std::string& base_dir) {
    AlphabetRef gamma = make_alphabet(string_list(j.at("vertex_alphabet"), "vertex_alphabet"));
    AlphabetRef labels = make_alphabet(string_list(j.at("edge_labels"), "edge_labels"));
    const json& rels = j.at("relations");
    std::vector<Transducer> ts;
    for (const auto& name : labels->names()) {
        if (!rels.contains(name))
            throw parse_error("missing relation for edge label: " + name);
        Transducer t = parse_transducer(resolve(rels.at(name), base_dir));
        ts.push_back(t_with_alphabet(t, gamma));
    }
    Nfa initial = nfa_with_alphabet(parse_nfa(resolve(j.at("initial"), base_dir)), gamma);
    Nfa final_set = nfa_with_alphabet(parse_nfa(resolve(j.at("final"), base_dir)), gamma);
    return InfiniteAutomaton{RationalGraph(gamma, labels, std::move(ts)), std::move(initial),
                             std::move(final_set)};
}

json graph_json(const InfiniteAutomaton& m) {
    json out;
    out["kind"] = "graph";
    out["vertex_alphabet"] = alphabet_json(*m.graph.vertex_alphabet());
    out["edge_labels"] = alphabet_json(*m.graph.edge_labels());
    json rels;
    for (Letter a = 0; a < m.graph.edge_labels()->size(); ++a) {
        json t = transducer_json(m.graph.relation(a));
        t.erase("kind");
        rels[m.graph.edge_labels()->name(a)] = t;
    }
    out["relations"] = rels;
    json ini = nfa_json(m.initial);
    ini.erase("kind");
    out["initial"] = ini;
    json fin = nfa_json(m.final);
    fin.erase("kind");
    out["final"] = fin;
    return out;
}

TilingSystem parse_tiling(const json& j) {
    AlphabetRef work = make_alphabet(string_list(j.at("gamma"), "gamma"));
    std::vector<Letter> sigma;
    for (const auto& n : string_list(j.at("sigma"), "sigma"))
        sigma.push_back(work->require(n));
    std::string frame = j.at("frame").get<std::string>();
    auto cell = [&](const json& x) {
        std::string n = x.get<std::string>();
        if (n == frame)
            return work->size();
        return work->require(n);
    };
    std::vector<Tile> tiles;
    for (const auto& t : j.at("tiles")) {
        if (!t.is_array() || t.size() != 2 || !t[0].is_array() || t[0].size() != 2 ||
            !t[1].is_array() || t[1].size() != 2)
            throw parse_error("tiles are [[tl,tr],[bl,br]]");
        tiles.push_back(Tile{{cell(t[0][0]), cell(t[0][1]), cell(t[1][0]), cell(t[1][1])}});
    }
    return TilingSystem(work, std::move(sigma), frame, std::move(tiles));
}

json tiling_json(const TilingSystem& s) {
    json out;
    out["kind"] = "tiling";
    out["gamma"] = alphabet_json(*s.work());
    json sigma = json::array();
    for (Letter l : s.sigma())
        sigma.push_back(s.work()->name(l));
    out["sigma"] = sigma;
    out["frame"] = s.frame_name();
    auto name = [&](int c) { return c == s.frame() ? s.frame_name() : s.work()->name(c); };
    json tiles = json::array();
    for (const Tile& t : s.tiles())
        tiles.push_back(json::array({json::array({name(t.c[0]), name(t.c[1])}),
                                     json::array({name(t.c[2]), name(t.c[3])})}));
    out["tiles"] = tiles;
    return out;
}

CellularAutomaton parse_ca(const json& j) {
    AlphabetRef work = make_alphabet(string_list(j.at("gamma"), "gamma"));
    std::vector<Letter> sigma, finals;
    for (const auto& n : string_list(j.at("sigma"), "sigma"))
        sigma.push_back(work->require(n));
    for (const auto& n : string_list(j.at("finals"), "finals"))
        finals.push_back(work->require(n));
    std::string lb = "[", rb = "]";
    if (j.contains("brackets")) {
        auto b = string_list(j.at("brackets"), "brackets");
        if (b.size() != 2)
            throw parse_error("brackets must list the two bracket symbols");
        lb = b[0];
        rb = b[1];
    }
    auto cell = [&](const json& x) {
        std::string n = x.get<std::string>();
        if (n == lb)
            return work->size();
        if (n == rb)
            return work->size() + 1;
        return work->require(n);
    };
    std::vector<std::array<int, 4>> rules;
    for (const auto& r : j.at("rules")) {
        if (!r.is_array() || r.size() != 4)
            throw parse_error("rules are [left, self, right, next]");
        rules.push_back({cell(r[0]), cell(r[1]), cell(r[2]), cell(r[3])});
    }
    return CellularAutomaton(work, std::move(sigma), std::move(finals), lb, rb,
                             std::move(rules));
}

json ca_json(const CellularAutomaton& c) {
    json out;
    out["kind"] = "ca";
    out["gamma"] = alphabet_json(*c.work());
    json sigma = json::array(), finals = json::array();
    for (Letter l : c.sigma())
        sigma.push_back(c.work()->name(l));
    for (Letter l : c.accepting())
        finals.push_back(c.work()->name(l));
    out["sigma"] = sigma;
    out["finals"] = finals;
    out["brackets"] = {c.lbracket_name(), c.rbracket_name()};
    auto name = [&](int x) {
        if (x == c.lbracket())
            return c.lbracket_name();
        if (x == c.rbracket())
            return c.rbracket_name();
        return c.work()->name(x);
    };
    json rules = json::array();
    for (const auto& r : c.rules())
        rules.push_back({name(r[0]), name(r[1]), name(r[2]), name(r[3])});
    out["rules"] = rules;
    return out;
}

} // namespace

std::string kind_of(const Formalism& f) {
    switch (f.index()) {
    case 0: return "nfa";
    case 1: return "transducer";
    case 2: return "graph";
    case 3: return "tiling";
    case 4: return "ca";
    }
    return "?";
}

Formalism parse_formalism(const std::string& text, const std::string& base_dir) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw parse_error(std::string("invalid syntax: ") + e.what());
    }
    if (!j.is_object() || !j.contains("kind"))
        throw parse_error("formalism objects carry a \"kind\" tag");
    std::string kind = j.at("kind").get<std::string>();
    try {
        if (kind == "nfa")
            return parse_nfa(j);
        if (kind == "transducer")
            return parse_transducer(j);
        if (kind == "graph")
            return parse_graph(j, base_dir);
        if (kind == "tiling")
            return parse_tiling(j);
        if (kind == "ca")
            return parse_ca(j);
    } catch (const json::exception& e) {
        throw parse_error(std::string("malformed ") + kind + ": " + e.what());
    }
    throw parse_error("unknown kind: " + kind);
}

Formalism load_formalism(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw parse_error("cannot open file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_formalism(buf.str(), dir_of(path));
}

std::string formalism_to_json(const Formalism& f) {
    json j = std::visit(
        [](const auto& v) -> json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Nfa>)
                return nfa_json(v);
            else if constexpr (std::is_same_v<T, Transducer>)
                return transducer_json(v);
            else if constexpr (std::is_same_v<T, InfiniteAutomaton>)
                return graph_json(v);
            else if constexpr (std::is_same_v<T, TilingSystem>)
                return tiling_json(v);
            else
                return ca_json(v);
        },
        f);
    return j.dump(2);
}

std::string class_to_json(const TransducerClass& c) {
    json j;
    j["synchronous"] = c.synchronous;
    j["left_synchronized"] = c.left_synchronized;
    j["right_synchronized"] = c.right_synchronized;
    j["sequential"] = c.sequential;
    return j.dump();
}

std::string report_to_json(const ConversionReport& r) {
    json j;
    j["conversion"] = r.conversion;
    j["output_kind"] = r.output_kind;
    j["fresh_symbols"] = r.fresh_symbols;
    json claims;
    for (const auto& [label, cls] : r.class_claims)
        claims[label] = json::parse(class_to_json(cls));
    j["class_claims"] = claims;
    j["oracle_bound"] = r.oracle_bound;
    json notes;
    for (const auto& [k, v] : r.notes)
        notes[k] = v;
    j["notes"] = notes;
    return j.dump(2);
}

} // namespace ratg
