#pragma once

#include <map>
#include <string>
#include <vector>

#include "complex.hpp"

namespace shellcx {

/// A named vertex, edge, path (vertex sequence) or subcomplex (facet list).
struct Feature {
    enum class Kind { vertex, edge, path, subcomplex };
    Kind kind = Kind::vertex;
    std::vector<Vertex> verts;
    std::vector<Simplex> facets;

    static Feature vertex(Vertex v) { return {Kind::vertex, {v}, {}}; }
    static Feature edge(Vertex a, Vertex b) { return {Kind::edge, {a, b}, {}}; }
    static Feature path(std::vector<Vertex> vs) { return {Kind::path, std::move(vs), {}}; }
    static Feature subcomplex(std::vector<Simplex> fs)
    {
        for (auto& f : fs) f = make_simplex(f);
        std::sort(fs.begin(), fs.end(), SimplexLess{});
        return {Kind::subcomplex, {}, std::move(fs)};
    }

    /// Edges traversed by an edge or path feature.
    std::vector<Simplex> edges() const
    {
        std::vector<Simplex> r;
        for (std::size_t i = 0; i + 1 < verts.size(); ++i) r.push_back(make_simplex({verts[i], verts[i + 1]}));
        return r;
    }

    /// Closure of the feature as a complex.
    Complex closure() const
    {
        if (kind == Kind::subcomplex) return Complex::from_facets(facets);
        if (kind == Kind::vertex) return Complex::from_facets({{verts[0]}});
        return Complex::from_facets(edges());
    }

    bool operator==(const Feature& o) const { return kind == o.kind && verts == o.verts && facets == o.facets; }
};

inline const char* to_string(Feature::Kind k)
{
    switch (k) {
    case Feature::Kind::vertex: return "vertex";
    case Feature::Kind::edge: return "edge";
    case Feature::Kind::path: return "path";
    default: return "subcomplex";
    }
}

inline Feature::Kind feature_kind(const std::string& s)
{
    if (s == "vertex") return Feature::Kind::vertex;
    if (s == "edge") return Feature::Kind::edge;
    if (s == "path") return Feature::Kind::path;
    if (s == "subcomplex") return Feature::Kind::subcomplex;
    throw Error("unknown feature kind: " + s);
}

struct LabeledComplex {
    Complex complex;
    std::map<std::string, Feature> labels;
    /// Optional human-readable vertex names.
    std::map<Vertex, std::string> names;

    const Feature& at(const std::string& name) const
    {
        auto it = labels.find(name);
        if (it == labels.end()) throw Error("no label named " + name);
        return it->second;
    }

    bool has(const std::string& name) const { return labels.count(name) != 0; }

    Vertex vertex(const std::string& name) const { return at(name).verts.at(0); }
    Simplex edge(const std::string& name) const
    {
        const auto& f = at(name);
        return make_simplex({f.verts.at(0), f.verts.at(1)});
    }
    const std::vector<Vertex>& path(const std::string& name) const { return at(name).verts; }
    Complex sub(const std::string& name) const { return at(name).closure(); }

    /// Throws if some label refers to faces missing from the complex or a path is not simple.
    void validate() const
    {
        for (const auto& [name, f] : labels) {
            switch (f.kind) {
            case Feature::Kind::vertex:
                if (f.verts.size() != 1 || !complex.contains({f.verts[0]}))
                    throw Error("label " + name + ": vertex missing");
                break;
            case Feature::Kind::edge:
            case Feature::Kind::path: {
                if (f.verts.size() < 2 || (f.kind == Feature::Kind::edge && f.verts.size() != 2))
                    throw Error("label " + name + ": wrong length");
                std::vector<Vertex> inner(f.verts.begin(), f.verts.end());
                const bool closed = inner.size() > 2 && inner.front() == inner.back();
                if (closed) inner.pop_back();
                std::sort(inner.begin(), inner.end());
                if (std::adjacent_find(inner.begin(), inner.end()) != inner.end())
                    throw Error("label " + name + ": path is not simple");
                for (const auto& e : f.edges())
                    if (!complex.contains(e)) throw Error("label " + name + ": edge missing");
                break;
            }
            case Feature::Kind::subcomplex:
                for (const auto& s : f.facets)
                    if (!complex.contains(s)) throw Error("label " + name + ": face missing");
                break;
            }
        }
    }
};

}  // namespace shellcx
