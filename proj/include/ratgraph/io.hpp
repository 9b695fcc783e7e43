#pragma once

#include <string>
#include <variant>

#include "ratgraph/convert.hpp"

namespace ratg {

/// Any of the five formalisms the text formats can carry, with a kind tag.
using Formalism =
    std::variant<Nfa, Transducer, InfiniteAutomaton, TilingSystem, CellularAutomaton>;

std::string kind_of(const Formalism& f);

/// Parse the JSON text format. Sub-objects may be file references (strings),
/// resolved relative to base_dir.
Formalism parse_formalism(const std::string& json_text, const std::string& base_dir = ".");
Formalism load_formalism(const std::string& path);

std::string formalism_to_json(const Formalism& f);
std::string report_to_json(const ConversionReport& r);
std::string class_to_json(const TransducerClass& c);

} // namespace ratg
