#include "ratgraph.h"

#include <algorithm>
#include <cstring>
#include <optional>
#include <string>

#include <json.hpp>

#include "ratgraph/io.hpp"

using namespace ratg;
using json = nlohmann::json;

struct rg_object {
    Formalism value;
    std::string kind;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

template <typename Fn>
rg_status guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const parse_error& e) {
        g_last_error = e.what();
        return RG_ERR_PARSE;
    } catch (const class_error& e) {
        g_last_error = e.what();
        return RG_ERR_CLASS;
    } catch (const precondition_error& e) {
        g_last_error = e.what();
        return RG_ERR_PRECONDITION;
    } catch (const input_error& e) {
        g_last_error = e.what();
        return RG_ERR_INPUT;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return RG_ERR_INTERNAL;
    }
}

rg_object* wrap(Formalism f) {
    auto* obj = new rg_object{std::move(f), ""};
    obj->kind = kind_of(obj->value);
    return obj;
}

const AlphabetRef& word_alphabet(const Formalism& f) {
    switch (f.index()) {
    case 0: return std::get<Nfa>(f).alphabet();
    case 1: return std::get<Transducer>(f).alphabet();
    case 2: return std::get<InfiniteAutomaton>(f).graph.edge_labels();
    case 3: return std::get<TilingSystem>(f).work();
    default: return std::get<CellularAutomaton>(f).work();
    }
}

std::vector<Word> enumerate_language(const Formalism& f, int max_len) {
    switch (f.index()) {
    case 0:
        return nfa_enumerate(std::get<Nfa>(f), max_len);
    case 2:
        return g_enumerate_language(std::get<InfiniteAutomaton>(f), max_len);
    case 3: {
        const auto& s = std::get<TilingSystem>(f);
        // frontier languages never contain the empty word
        std::vector<Word> out;
        AlphabetRef sigma = [&]() {
            std::vector<std::string> names;
            for (Letter l : s.sigma())
                names.push_back(s.work()->name(l));
            return make_alphabet(names);
        }();
        for (const Word& w : nfa_enumerate(nfa_universal(sigma), max_len)) {
            Word tw;
            for (Letter l : w)
                tw.push_back(s.sigma()[l]);
            if (!tw.empty() && ts_member(s, tw))
                out.push_back(tw);
        }
        return out;
    }
    case 4: {
        const auto& c = std::get<CellularAutomaton>(f);
        std::vector<Word> out;
        AlphabetRef sigma = [&]() {
            std::vector<std::string> names;
            for (Letter l : c.sigma())
                names.push_back(c.work()->name(l));
            return make_alphabet(names);
        }();
        for (const Word& w : nfa_enumerate(nfa_universal(sigma), max_len)) {
            Word tw;
            for (Letter l : w)
                tw.push_back(c.sigma()[l]);
            if (!tw.empty() && ca_member(c, tw))
                out.push_back(tw);
        }
        return out;
    }
    default:
        throw input_error("enumeration is defined for automata, graphs, tiling systems and "
                          "cellular acceptors");
    }
}

std::string format_for(const Formalism& f, const Word& w) {
    return format_word(*word_alphabet(f), w);
}

} // namespace


namespace {

rg_status require_object(const rg_object* obj) {
    if (!obj) {
        g_last_error = "null object handle";
        return RG_ERR_INPUT;
    }
    return RG_OK;
}

} // namespace

extern "C" {

rg_status rg_parse(const char* json_text, rg_object** out) {
    *out = nullptr;
    return guarded([&] {
        *out = wrap(parse_formalism(json_text ? json_text : ""));
        return RG_OK;
    });
}

rg_status rg_load(const char* path, rg_object** out) {
    *out = nullptr;
    return guarded([&] {
        *out = wrap(load_formalism(path ? path : ""));
        return RG_OK;
    });
}

void rg_free(rg_object* obj) { delete obj; }
void rg_string_free(char* s) { std::free(s); }

const char* rg_kind(const rg_object* obj) { return obj ? obj->kind.c_str() : ""; }

rg_status rg_to_json(const rg_object* obj, char** out_json) {
    if (rg_status st = require_object(obj); st != RG_OK)
        return st;
    *out_json = nullptr;
    return guarded([&] {
        *out_json = dup_string(formalism_to_json(obj->value));
        return RG_OK;
    });
}

rg_status rg_member(const rg_object* obj, const char* word) {
    if (rg_status st = require_object(obj); st != RG_OK)
        return st;
    return guarded([&]() -> rg_status {
        Word w = parse_word(*word_alphabet(obj->value), word ? word : "");
        bool ok;
        switch (obj->value.index()) {
        case 0: ok = nfa_member(std::get<Nfa>(obj->value), w); break;
        case 2: ok = g_member(std::get<InfiniteAutomaton>(obj->value), w); break;
        case 3: ok = ts_member(std::get<TilingSystem>(obj->value), w); break;
        case 4: ok = ca_member(std::get<CellularAutomaton>(obj->value), w); break;
        default:
            throw input_error("membership is not defined for transducer files");
        }
        return ok ? RG_OK : RG_REJECT;
    });
}

rg_status rg_enumerate(const rg_object* obj, int max_len, char** out_json) {
    if (rg_status st = require_object(obj); st != RG_OK)
        return st;
    *out_json = nullptr;
    return guarded([&] {
        json arr = json::array();
        for (const Word& w : enumerate_language(obj->value, max_len))
            arr.push_back(format_for(obj->value, w));
        *out_json = dup_string(arr.dump());
        return RG_OK;
    });
}

rg_status rg_convert(const rg_object* obj, const char* conversion, int param, rg_object** out,
                     char** out_report_json) {
    if (rg_status st = require_object(obj); st != RG_OK)
        return st;
    *out = nullptr;
    *out_report_json = nullptr;
    return guarded([&]() -> rg_status {
        std::string name = conversion ? conversion : "";
        auto need_graph = [&]() -> const InfiniteAutomaton& {
            if (obj->value.index() != 2)
                throw precondition_error(name + " expects a graph input");
            return std::get<InfiniteAutomaton>(obj->value);
        };
        auto need_tiling = [&]() -> const TilingSystem& {
            if (obj->value.index() != 3)
                throw precondition_error(name + " expects a tiling-system input");
            return std::get<TilingSystem>(obj->value);
        };
        if (name == "check-globdet") {
            const auto& m = need_graph();
            bool verdict = check_global_det(m.graph, m.initial, m.final);
            json j;
            j["conversion"] = name;
            j["globally_deterministic"] = verdict;
            *out_report_json = dup_string(j.dump(2));
            return RG_OK;
        }
        std::optional<GraphConversion> gc_opt;
        auto& gc = gc_opt;
        if (name == "rat2synch") {
            gc = rat2synch(need_graph());
        } else if (name == "ts2synch") {
            gc = ts2synch(need_tiling());
        } else if (name == "startostar") {
            gc = startostar(need_graph());
        } else if (name == "onepoint") {
            gc = onepoint(need_graph());
        } else if (name == "synch2ratfd") {
            gc = synch2ratfd(need_graph());
        } else if (name == "ts2seq") {
            gc = ts2seq(need_tiling());
        } else if (name == "squarets2graph") {
            gc = squarets2synchgraph(need_tiling(), param > 0 ? param : 1);
        } else if (name == "ca2graph") {
            if (obj->value.index() != 4)
                throw precondition_error("ca2graph expects a cellular-acceptor input");
            gc = ca2graph(std::get<CellularAutomaton>(obj->value));
        } else if (name == "synch2ts") {
            TilingConversion tc = synch2ts(need_graph());
            *out = wrap(Formalism{std::move(tc.system)});
            *out_report_json = dup_string(report_to_json(tc.report));
            return RG_OK;
        } else if (name == "graph2squarets") {
            TilingConversion tc = synchfd2squarets(need_graph());
            *out = wrap(Formalism{std::move(tc.system)});
            *out_report_json = dup_string(report_to_json(tc.report));
            return RG_OK;
        } else {
            throw input_error("unknown conversion: " + name);
        }
        *out = wrap(Formalism{std::move(gc->automaton)});
        *out_report_json = dup_string(report_to_json(gc->report));
        return RG_OK;
    });
}

rg_status rg_equiv(const rg_object* a, const rg_object* b, int max_len, char** out_json) {
    if (!a || !b) {
        g_last_error = "null object handle";
        return RG_ERR_INPUT;
    }
    *out_json = nullptr;
    return guarded([&] {
        auto wa = enumerate_language(a->value, max_len);
        auto wb = enumerate_language(b->value, max_len);
        auto names = [&](const Formalism& f, const std::vector<Word>& ws) {
            std::vector<std::string> out;
            for (const auto& w : ws)
                out.push_back(format_for(f, w));
            std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
                return x.size() != y.size() ? x.size() < y.size() : x < y;
            });
            return out;
        };
        auto na = names(a->value, wa), nb = names(b->value, wb);
        json j;
        j["counts"] = {{"left", na.size()}, {"right", nb.size()}};
        std::string divergence;
        bool equal = true;
        size_t i = 0, k = 0;
        while (i < na.size() || k < nb.size()) {
            if (i < na.size() && k < nb.size() && na[i] == nb[k]) {
                ++i;
                ++k;
                continue;
            }
            equal = false;
            auto less = [](const std::string& x, const std::string& y) {
                return x.size() != y.size() ? x.size() < y.size() : x < y;
            };
            if (i < na.size() && (k == nb.size() || less(na[i], nb[k])))
                divergence = na[i];
            else
                divergence = nb[k];
            break;
        }
        j["equal_up_to"] = equal ? max_len : -1;
        if (equal)
            j["first_divergence"] = nullptr;
        else
            j["first_divergence"] = divergence;
        *out_json = dup_string(j.dump(2));
        return RG_OK;
    });
}

rg_status rg_classify(const rg_object* obj, char** out_json) {
    if (rg_status st = require_object(obj); st != RG_OK)
        return st;
    *out_json = nullptr;
    return guarded([&]() -> rg_status {
        json j;
        if (obj->value.index() == 1) {
            j = json::parse(class_to_json(t_classify(std::get<Transducer>(obj->value))));
        } else if (obj->value.index() == 2) {
            const auto& m = std::get<InfiniteAutomaton>(obj->value);
            for (Letter a = 0; a < m.graph.edge_labels()->size(); ++a)
                j[m.graph.edge_labels()->name(a)] =
                    json::parse(class_to_json(t_classify(m.graph.relation(a))));
        } else {
            throw input_error("classification applies to transducers and graphs");
        }
        *out_json = dup_string(j.dump(2));
        return RG_OK;
    });
}

rg_status rg_degree(const rg_object* obj, const char* vertex, int radius, char** out_json) {
    if (rg_status st = require_object(obj); st != RG_OK)
        return st;
    *out_json = nullptr;
    return guarded([&]() -> rg_status {
        if (obj->value.index() != 2)
            throw input_error("degree tables apply to graphs");
        const auto& m = std::get<InfiniteAutomaton>(obj->value);
        Word v = parse_word(*m.graph.vertex_alphabet(), vertex ? vertex : "");
        json j = json::array();
        for (auto [dist, card] : g_degree_table(m.graph, v, radius)) {
            json row;
            row["distance"] = dist;
            if (card.infinite)
                row["max_out_degree"] = "infinite";
            else
                row["max_out_degree"] = card.value;
            j.push_back(row);
        }
        *out_json = dup_string(j.dump(2));
        return RG_OK;
    });
}

rg_status rg_probe(const rg_object* obj, const char* kind, int max_len, int max_vertex_len,
                   char** out_json) {
    if (rg_status st = require_object(obj); st != RG_OK)
        return st;
    *out_json = nullptr;
    return guarded([&]() -> rg_status {
        std::string k = kind ? kind : "";
        json j;
        if (k == "ambiguity") {
            if (obj->value.index() != 2)
                throw input_error("ambiguity probes apply to graphs");
            j["max_accepting_paths"] = g_ambiguity_probe(std::get<InfiniteAutomaton>(obj->value),
                                                         max_len, max_vertex_len);
        } else if (k == "determinism") {
            if (obj->value.index() == 2) {
                auto v = g_is_deterministic(std::get<InfiniteAutomaton>(obj->value).graph,
                                            max_len > 0 ? max_len : 4);
                j["deterministic"] = v.deterministic;
                j["proved"] = v.proved;
            } else if (obj->value.index() == 3) {
                j["deterministic"] =
                    ts_det_probe(std::get<TilingSystem>(obj->value), max_len > 0 ? max_len : 4);
                j["proved"] = false;
            } else if (obj->value.index() == 4) {
                j["deterministic"] = ca_is_deterministic(std::get<CellularAutomaton>(obj->value));
                j["proved"] = true;
            } else {
                throw input_error("determinism probes apply to graphs, tiling systems and "
                                  "cellular acceptors");
            }
        } else if (k == "functional") {
            if (obj->value.index() != 1)
                throw input_error("functionality probes apply to transducers");
            const auto& t = std::get<Transducer>(obj->value);
            if (t_classify(t).left_synchronized) {
                j["functional"] = t_is_functional_synchronized(t);
                j["proved"] = true;
            } else {
                j["functional"] = t_functional_probe(t, max_len > 0 ? max_len : 4);
                j["proved"] = false;
            }
        } else {
            throw input_error("unknown probe kind: " + k);
        }
        *out_json = dup_string(j.dump(2));
        return RG_OK;
    });
}

const char* rg_last_error(void) { return g_last_error.c_str(); }

} // extern "C"
