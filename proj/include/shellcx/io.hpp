#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "labeled.hpp"

namespace shellcx {

using json = nlohmann::json;

class ParseError : public Error {
public:
    ParseError(int line, const std::string& what)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line)
    {
    }
    int line() const { return line_; }

private:
    int line_;
};

inline bool parse_int_token(const std::string& tok, long long& out)
{
    if (tok.empty()) return false;
    std::size_t i = tok[0] == '-' || tok[0] == '+' ? 1 : 0;
    if (i == tok.size()) return false;
    for (std::size_t j = i; j < tok.size(); ++j)
        if (tok[j] < '0' || tok[j] > '9') return false;
    if (tok.size() - i > 10) return false;
    out = std::stoll(tok);
    return true;
}

/// One facet per line; `#` starts a comment; blank lines are skipped.
inline Complex parse_facet_list(const std::string& text)
{
    std::istringstream in(text);
    std::string line;
    std::vector<Simplex> facets;
    int no = 0;
    while (std::getline(in, line)) {
        ++no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string tok;
        Simplex f;
        while (ls >> tok) {
            long long v = 0;
            if (!parse_int_token(tok, v) || v < INT32_MIN || v > INT32_MAX)
                throw ParseError(no, "malformed vertex id '" + tok + "'");
            f.push_back(static_cast<Vertex>(v));
        }
        if (f.empty()) continue;
        std::sort(f.begin(), f.end());
        if (std::adjacent_find(f.begin(), f.end()) != f.end()) throw ParseError(no, "repeated vertex in facet");
        facets.push_back(f);
    }
    return Complex::from_facets(facets);
}

inline std::string write_facet_list(const Complex& k)
{
    std::ostringstream out;
    for (const auto& f : k.facets()) {
        for (std::size_t i = 0; i < f.size(); ++i) out << (i ? " " : "") << f[i];
        out << '\n';
    }
    return out.str();
}

inline json feature_to_json(const Feature& f)
{
    json v;
    switch (f.kind) {
    case Feature::Kind::vertex: v = f.verts.at(0); break;
    case Feature::Kind::edge:
    case Feature::Kind::path: v = f.verts; break;
    case Feature::Kind::subcomplex: v = f.facets; break;
    }
    return json{{"kind", to_string(f.kind)}, {"value", v}};
}

inline Feature feature_from_json(const json& j)
{
    Feature f;
    f.kind = feature_kind(j.at("kind").get<std::string>());
    const json& v = j.at("value");
    switch (f.kind) {
    case Feature::Kind::vertex: f.verts = {v.get<Vertex>()}; break;
    case Feature::Kind::edge:
    case Feature::Kind::path: f.verts = v.get<std::vector<Vertex>>(); break;
    case Feature::Kind::subcomplex: f.facets = v.get<std::vector<Simplex>>(); break;
    }
    return f;
}

inline json to_json(const LabeledComplex& lc)
{
    json verts = json::array();
    for (Vertex v : lc.complex.vertices()) {
        json e{{"id", v}};
        auto it = lc.names.find(v);
        if (it != lc.names.end()) e["label"] = it->second;
        verts.push_back(e);
    }
    json labels = json::object();
    for (const auto& [name, f] : lc.labels) labels[name] = feature_to_json(f);
    return json{{"vertices", verts}, {"facets", lc.complex.facets()}, {"labels", labels}};
}

inline LabeledComplex labeled_from_json(const json& j)
{
    LabeledComplex lc;
    if (!j.is_object() || !j.contains("facets")) throw ParseError(0, "JSON complex needs a facets array");
    std::vector<Simplex> fs;
    for (const auto& f : j.at("facets")) {
        Simplex s = f.get<Simplex>();
        if (s.empty()) throw ParseError(0, "empty facet");
        fs.push_back(make_simplex(s));
    }
    std::vector<Vertex> listed;
    if (j.contains("vertices")) {
        for (const auto& v : j.at("vertices")) {
            const Vertex id = v.at("id").get<Vertex>();
            listed.push_back(id);
            if (v.contains("label")) lc.names[id] = v.at("label").get<std::string>();
        }
    }
    for (Vertex v : listed) fs.push_back({v});
    lc.complex = Complex::from_facets(fs);
    if (j.contains("labels"))
        for (const auto& [name, f] : j.at("labels").items()) lc.labels[name] = feature_from_json(f);
    lc.validate();
    return lc;
}

inline std::string dump_json(const LabeledComplex& lc) { return to_json(lc).dump(1) + "\n"; }

inline LabeledComplex parse_json_complex(const std::string& text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(0, std::string("invalid JSON: ") + e.what());
    }
    try {
        return labeled_from_json(j);
    } catch (const json::exception& e) {
        throw ParseError(0, std::string("malformed complex JSON: ") + e.what());
    }
}

inline std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << text;
}

/// Reads either format; JSON is recognised by a leading brace.
inline LabeledComplex load_complex(const std::string& path)
{
    const std::string text = read_file(path);
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') return parse_json_complex(text);
    LabeledComplex lc;
    lc.complex = parse_facet_list(text);
    return lc;
}

}  // namespace shellcx
