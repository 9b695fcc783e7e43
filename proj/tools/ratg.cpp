// ratg -- command-line front end over the ratgraph shared library.
//
// Subcommands mirror the library surface: member, convert, equiv, classify,
// degree, probe, enumerate. Files use the JSON object formats; words on the
// command line are strings of single-character letters with [..] escapes for
// multi-character letter names.

#include <cstdio>
#include <fstream>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "ratgraph.h"

namespace {

struct ObjectDeleter {
    void operator()(rg_object* o) const { rg_free(o); }
};
using ObjectPtr = std::unique_ptr<rg_object, ObjectDeleter>;

struct StringDeleter {
    void operator()(char* s) const { rg_string_free(s); }
};
using StringPtr = std::unique_ptr<char, StringDeleter>;

int fail(rg_status st) {
    std::fprintf(stderr, "error: %s\n", rg_last_error());
    return static_cast<int>(st);
}

ObjectPtr load_or_exit(const std::string& path, int& rc) {
    rg_object* raw = nullptr;
    rg_status st = rg_load(path.c_str(), &raw);
    if (st != RG_OK) {
        rc = fail(st);
        return nullptr;
    }
    rc = 0;
    return ObjectPtr(raw);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"rational graphs, tiling systems and cellular acceptors"};
    app.require_subcommand(1);

    std::string file, file_b, word, vertex, out_path, probe_kind, conversion;
    int max_len = 6, max_vertex_len = 8, radius = 2, width = 4, param = 0;

    auto* c_member = app.add_subcommand("member", "exact membership of a word");
    c_member->add_option("file", file)->required();
    c_member->add_option("word", word);

    auto* c_enum = app.add_subcommand("enumerate", "accepted words up to a length");
    c_enum->add_option("file", file)->required();
    c_enum->add_option("--max-len", max_len);

    auto* c_convert = app.add_subcommand("convert", "apply a named construction");
    c_convert->add_option("name", conversion)->required();
    c_convert->add_option("file", file)->required();
    c_convert->add_option("--out", out_path);
    c_convert->add_option("--param", param, "numeric argument (height slope)");

    auto* c_equiv = app.add_subcommand("equiv", "bounded language comparison");
    c_equiv->add_option("a", file)->required();
    c_equiv->add_option("b", file_b)->required();
    c_equiv->add_option("--max-len", max_len);

    auto* c_classify = app.add_subcommand("classify", "transducer class flags");
    c_classify->add_option("file", file)->required();

    auto* c_degree = app.add_subcommand("degree", "out-degree by distance");
    c_degree->add_option("file", file)->required();
    c_degree->add_option("vertex", vertex);
    c_degree->add_option("--radius", radius);

    auto* c_probe = app.add_subcommand("probe", "ambiguity / determinism / functional");
    c_probe->add_option("file", file)->required();
    c_probe->add_option("kind", probe_kind)->required();
    c_probe->add_option("--max-len", max_len);
    c_probe->add_option("--max-vertex-len", max_vertex_len);
    c_probe->add_option("--width", width);

    CLI11_PARSE(app, argc, argv);

    int rc = 0;
    ObjectPtr obj = load_or_exit(file, rc);
    if (!obj)
        return rc;

    if (c_member->parsed()) {
        rg_status st = rg_member(obj.get(), word.c_str());
        if (st == RG_OK) {
            std::printf("accept\n");
            return 0;
        }
        if (st == RG_REJECT) {
            std::printf("reject\n");
            return 1;
        }
        return fail(st);
    }

    if (c_enum->parsed()) {
        char* raw = nullptr;
        rg_status st = rg_enumerate(obj.get(), max_len, &raw);
        if (st != RG_OK)
            return fail(st);
        StringPtr json(raw);
        std::printf("%s\n", json.get());
        return 0;
    }

    if (c_convert->parsed()) {
        rg_object* raw_out = nullptr;
        char* raw_report = nullptr;
        rg_status st = rg_convert(obj.get(), conversion.c_str(), param, &raw_out, &raw_report);
        if (st != RG_OK)
            return fail(st);
        ObjectPtr converted(raw_out);
        StringPtr report(raw_report);
        std::fprintf(stderr, "%s\n", report.get());
        if (converted) {
            char* raw_json = nullptr;
            st = rg_to_json(converted.get(), &raw_json);
            if (st != RG_OK)
                return fail(st);
            StringPtr json(raw_json);
            if (out_path.empty()) {
                std::printf("%s\n", json.get());
            } else {
                std::ofstream out(out_path);
                if (!out) {
                    std::fprintf(stderr, "error: cannot write %s\n", out_path.c_str());
                    return 2;
                }
                out << json.get() << "\n";
            }
        }
        return 0;
    }

    if (c_equiv->parsed()) {
        ObjectPtr other = load_or_exit(file_b, rc);
        if (!other)
            return rc;
        char* raw = nullptr;
        rg_status st = rg_equiv(obj.get(), other.get(), max_len, &raw);
        if (st != RG_OK)
            return fail(st);
        StringPtr json(raw);
        std::printf("%s\n", json.get());
        return 0;
    }

    if (c_classify->parsed()) {
        char* raw = nullptr;
        rg_status st = rg_classify(obj.get(), &raw);
        if (st != RG_OK)
            return fail(st);
        StringPtr json(raw);
        std::printf("%s\n", json.get());
        return 0;
    }

    if (c_degree->parsed()) {
        char* raw = nullptr;
        rg_status st = rg_degree(obj.get(), vertex.c_str(), radius, &raw);
        if (st != RG_OK)
            return fail(st);
        StringPtr json(raw);
        std::printf("%s\n", json.get());
        return 0;
    }

    if (c_probe->parsed()) {
        int a = max_len, b = max_vertex_len;
        if (probe_kind == "determinism" && c_probe->count("--width"))
            a = width;
        char* raw = nullptr;
        rg_status st = rg_probe(obj.get(), probe_kind.c_str(), a, b, &raw);
        if (st != RG_OK)
            return fail(st);
        StringPtr json(raw);
        std::printf("%s\n", json.get());
        return 0;
    }

    return 2;
}
