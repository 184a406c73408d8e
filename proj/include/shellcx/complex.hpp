#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace shellcx {

using Vertex = int;
/// Sorted, duplicate-free vertex list. The empty vector is the empty simplex.
using Simplex = std::vector<Vertex>;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline Simplex make_simplex(std::vector<Vertex> vs)
{
    std::sort(vs.begin(), vs.end());
    if (std::adjacent_find(vs.begin(), vs.end()) != vs.end())
        throw Error("simplex has a repeated vertex");
    return vs;
}

inline int dimension(const Simplex& s) { return static_cast<int>(s.size()) - 1; }

inline bool is_subset(const Simplex& a, const Simplex& b)
{
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline Simplex set_union(const Simplex& a, const Simplex& b)
{
    Simplex r;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
}

inline Simplex set_minus(const Simplex& a, const Simplex& b)
{
    Simplex r;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
}

inline bool disjoint(const Simplex& a, const Simplex& b)
{
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (*i == *j) return false;
        if (*i < *j) ++i; else ++j;
    }
    return true;
}

/// Orders by size first, then lexicographically.
struct SimplexLess {
    bool operator()(const Simplex& a, const Simplex& b) const
    {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    }
};

template <class F>
void for_each_subset(const Simplex& s, F&& f)
{
    const std::size_t n = s.size();
    Simplex sub;
    sub.reserve(n);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        sub.clear();
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1) sub.push_back(s[i]);
        f(sub);
    }
}

struct SimplexHash {
    std::size_t operator()(const Simplex& s) const noexcept
    {
        std::size_t h = 1469598103934665603ull;
        for (Vertex v : s) {
            h ^= static_cast<std::size_t>(static_cast<unsigned>(v)) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        return h ^ s.size();
    }
};

/// f_{-1}, f_0, ..., f_dim.
using FVector = std::vector<long long>;

enum class Pseudomanifold { closed, with_boundary, no };

inline const char* to_string(Pseudomanifold p)
{
    switch (p) {
    case Pseudomanifold::closed: return "closed";
    case Pseudomanifold::with_boundary: return "with_boundary";
    default: return "no";
    }
}

/**
 * Immutable abstract simplicial complex.
 *
 * Every face is stored, grouped by cardinality and sorted, together with
 * the cofaces one dimension up. The empty simplex is present iff the
 * complex is nonempty.
 */
class Complex {
public:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    Complex() = default;

    /// Downward closure of the given facets. Non-maximal inputs are absorbed.
    static Complex from_facets(const std::vector<Simplex>& facets)
    {
        for (const auto& f : facets)
            if (f.empty()) throw Error("empty facet");
        return closure(facets);
    }

    /// Like from_facets but accepts the empty simplex, so {∅} is expressible.
    static Complex closure(const std::vector<Simplex>& facets)
    {
        Complex k;
        std::size_t top = 0;
        std::vector<Simplex> fs;
        fs.reserve(facets.size());
        for (const auto& f : facets) {
            fs.push_back(make_simplex(f));
            top = std::max(top, fs.back().size());
        }
        if (fs.empty()) return k;
        if (top > 24) throw Error("facet too large");
        std::vector<std::vector<Simplex>> by(top + 1);
        for (const auto& f : fs)
            for_each_subset(f, [&](const Simplex& s) { by[s.size()].push_back(s); });
        for (auto& v : by) {
            std::sort(v.begin(), v.end());
            v.erase(std::unique(v.begin(), v.end()), v.end());
        }
        k.faces_ = std::move(by);
        k.index();
        return k;
    }

    static Complex simplex(const Simplex& s) { return closure({s}); }

    /// Boundary of the d-simplex on vertices 0..d.
    static Complex simplex_boundary(int d)
    {
        if (d < 1) throw Error("simplex_boundary needs d >= 1");
        Simplex all(d + 1);
        std::iota(all.begin(), all.end(), 0);
        std::vector<Simplex> fs;
        for (int i = 0; i <= d; ++i) {
            Simplex f;
            for (int v : all)
                if (v != i) f.push_back(v);
            fs.push_back(f);
        }
        return closure(fs);
    }

    bool empty() const { return faces_.empty(); }
    /// Dimension; -1 for {∅} and for the empty complex.
    int dim() const { return static_cast<int>(faces_.size()) - 2 < -1 ? -1 : static_cast<int>(faces_.size()) - 2; }

    /// Faces of the given dimension (d = -1 gives the empty simplex).
    const std::vector<Simplex>& faces(int d) const
    {
        static const std::vector<Simplex> none;
        const int c = d + 1;
        if (c < 0 || c >= static_cast<int>(faces_.size())) return none;
        return faces_[c];
    }

    std::size_t num_faces() const
    {
        std::size_t n = 0;
        for (const auto& v : faces_) n += v.size();
        return n;
    }

    /// Nonempty faces, the simplex count used for size bounds.
    std::size_t num_simplices() const { return empty() ? 0 : num_faces() - 1; }

    std::vector<Vertex> vertices() const
    {
        std::vector<Vertex> vs;
        for (const auto& s : faces(0)) vs.push_back(s[0]);
        return vs;
    }

    const std::vector<Simplex>& facets() const { return facets_; }

    std::size_t face_index(const Simplex& s) const
    {
        const std::size_t c = s.size();
        if (c >= faces_.size()) return npos;
        const auto& v = faces_[c];
        auto it = std::lower_bound(v.begin(), v.end(), s);
        if (it == v.end() || *it != s) return npos;
        return static_cast<std::size_t>(it - v.begin());
    }

    bool contains(const Simplex& s) const { return face_index(s) != npos; }

    /// Faces one dimension up that contain s (s must be a face).
    std::vector<Simplex> cofaces(const Simplex& s) const
    {
        std::vector<Simplex> r;
        const std::size_t i = face_index(s);
        if (i == npos) return r;
        const auto& off = up_off_[s.size()];
        for (std::size_t j = off[i]; j < off[i + 1]; ++j)
            r.push_back(faces_[s.size() + 1][up_[s.size()][j]]);
        return r;
    }

    std::size_t coface_count(const Simplex& s) const
    {
        const std::size_t i = face_index(s);
        if (i == npos) return 0;
        const auto& off = up_off_[s.size()];
        return off[i + 1] - off[i];
    }

    /// Raw coface index: ids (into faces of size c+1) above face id i of size c.
    std::pair<const int*, const int*> up_ids(std::size_t c, std::size_t i) const
    {
        const auto& off = up_off_[c];
        const int* base = up_[c].data();
        return {base + off[i], base + off[i + 1]};
    }

    FVector f_vector() const
    {
        FVector f;
        if (empty()) return {0};
        for (const auto& v : faces_) f.push_back(static_cast<long long>(v.size()));
        return f;
    }

    long long reduced_euler_characteristic() const
    {
        long long chi = 0;
        long long sign = -1;
        for (long long c : f_vector()) {
            chi += sign * c;
            sign = -sign;
        }
        return chi;
    }

    bool is_pure(int d) const
    {
        if (facets_.empty()) return false;
        for (const auto& f : facets_)
            if (dimension(f) != d) return false;
        return true;
    }

    bool is_pure() const { return !facets_.empty() && is_pure(dimension(facets_.front())); }

    Pseudomanifold pseudomanifold() const
    {
        if (!is_pure()) throw Error("pseudomanifold check needs a pure complex");
        const int d = dimension(facets_.front());
        if (d < 0) return Pseudomanifold::no;
        bool boundary = false;
        const auto& ridges = faces(d - 1);
        for (std::size_t i = 0; i < ridges.size(); ++i) {
            const std::size_t c = up_off_[d][i + 1] - up_off_[d][i];
            if (c > 2 || c == 0) return Pseudomanifold::no;
            if (c == 1) boundary = true;
        }
        return boundary ? Pseudomanifold::with_boundary : Pseudomanifold::closed;
    }

    Complex link(const Simplex& s) const
    {
        if (!contains(s)) throw Error("link: simplex not in complex");
        std::vector<Simplex> fs;
        for (const auto& f : facets_)
            if (is_subset(s, f)) fs.push_back(set_minus(f, s));
        return closure(fs);
    }

    /// Removes s and every face containing it.
    Complex deletion(const Simplex& s) const
    {
        if (!contains(s)) throw Error("delete: simplex not in complex");
        std::vector<Simplex> fs;
        for (const auto& f : facets_) {
            if (!is_subset(s, f)) {
                fs.push_back(f);
                continue;
            }
            for (Vertex v : s) {
                Simplex g;
                for (Vertex w : f)
                    if (w != v) g.push_back(w);
                fs.push_back(g);
            }
        }
        if (s.empty()) return Complex();
        return closure(fs);
    }

    /// Subcomplex of faces not containing any vertex of vs.
    Complex induced_without(const std::vector<Vertex>& vs) const
    {
        Simplex drop = make_simplex(vs);
        std::vector<Simplex> fs;
        for (const auto& s : all_faces())
            if (disjoint(s, drop)) fs.push_back(s);
        return from_face_set(fs);
    }

    /// Builds a complex from a downward-closed face list (closure is taken anyway).
    static Complex from_face_set(const std::vector<Simplex>& fs)
    {
        if (fs.empty()) return Complex();
        return closure(fs);
    }

    std::vector<Simplex> all_faces() const
    {
        std::vector<Simplex> r;
        for (const auto& v : faces_) r.insert(r.end(), v.begin(), v.end());
        return r;
    }

    bool operator==(const Complex& o) const { return faces_ == o.faces_; }
    bool operator!=(const Complex& o) const { return !(*this == o); }

    bool is_subcomplex_of(const Complex& o) const
    {
        for (const auto& f : facets_)
            if (!o.contains(f)) return false;
        return true;
    }

    Vertex max_vertex() const
    {
        const auto& v = faces(0);
        return v.empty() ? -1 : v.back()[0];
    }

    /// Connected components of the 1-skeleton, as a vertex -> component map.
    std::map<Vertex, int> components() const
    {
        std::map<Vertex, int> comp;
        std::map<Vertex, Vertex> parent;
        for (Vertex v : vertices()) parent[v] = v;
        std::function<Vertex(Vertex)> find = [&](Vertex x) {
            while (parent[x] != x) {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            return x;
        };
        for (const auto& e : faces(1)) parent[find(e[0])] = find(e[1]);
        std::map<Vertex, int> ids;
        for (Vertex v : vertices()) {
            Vertex r = find(v);
            auto it = ids.find(r);
            if (it == ids.end()) it = ids.emplace(r, static_cast<int>(ids.size())).first;
            comp[v] = it->second;
        }
        return comp;
    }

    bool is_connected() const
    {
        auto c = components();
        for (const auto& kv : c)
            if (kv.second != 0) return false;
        return true;
    }

private:
    std::vector<std::vector<Simplex>> faces_;
    std::vector<Simplex> facets_;
    std::vector<std::vector<std::size_t>> up_off_;
    std::vector<std::vector<int>> up_;

    void index()
    {
        const std::size_t n = faces_.size();
        up_off_.assign(n, {});
        up_.assign(n, {});
        for (std::size_t c = 0; c < n; ++c) {
            const auto& lo = faces_[c];
            std::vector<std::size_t> count(lo.size() + 1, 0);
            std::vector<std::pair<int, int>> pairs;
            if (c + 1 < n) {
                const auto& hi = faces_[c + 1];
                Simplex sub;
                for (std::size_t j = 0; j < hi.size(); ++j) {
                    for (std::size_t drop = 0; drop < hi[j].size(); ++drop) {
                        sub.clear();
                        for (std::size_t t = 0; t < hi[j].size(); ++t)
                            if (t != drop) sub.push_back(hi[j][t]);
                        auto it = std::lower_bound(lo.begin(), lo.end(), sub);
                        pairs.emplace_back(static_cast<int>(it - lo.begin()), static_cast<int>(j));
                    }
                }
            }
            std::sort(pairs.begin(), pairs.end());
            auto& off = up_off_[c];
            off.assign(lo.size() + 1, 0);
            for (const auto& p : pairs) ++off[p.first + 1];
            for (std::size_t i = 0; i < lo.size(); ++i) off[i + 1] += off[i];
            auto& data = up_[c];
            data.reserve(pairs.size());
            for (const auto& p : pairs) data.push_back(p.second);
        }
        facets_.clear();
        for (std::size_t c = 0; c < n; ++c)
            for (std::size_t i = 0; i < faces_[c].size(); ++i)
                if (up_off_[c][i + 1] == up_off_[c][i]) facets_.push_back(faces_[c][i]);
    }
};

inline FVector f_vector(const Complex& k) { return k.f_vector(); }
inline long long reduced_euler_characteristic(const Complex& k) { return k.reduced_euler_characteristic(); }
inline bool is_pure(const Complex& k, int d) { return k.is_pure(d); }
inline Pseudomanifold is_pseudomanifold(const Complex& k) { return k.pseudomanifold(); }
inline Complex link(const Complex& k, const Simplex& s) { return k.link(s); }
inline Complex deletion(const Complex& k, const Simplex& s) { return k.deletion(s); }

inline Complex join(const Complex& a, const Complex& b)
{
    if (a.empty() || b.empty()) return Complex();
    const auto va = a.vertices();
    const auto vb = b.vertices();
    if (!disjoint(va, vb)) throw Error("join: vertex sets overlap");
    std::vector<Simplex> fs;
    for (const auto& f : a.facets())
        for (const auto& g : b.facets()) fs.push_back(set_union(f, g));
    return Complex::closure(fs);
}

/// Join with a full l-simplex on fresh vertices.
inline Complex cone(const Complex& k, int l)
{
    if (l < 0) throw Error("cone: negative simplex dimension");
    Simplex apex;
    for (int i = 0; i <= l; ++i) apex.push_back(k.max_vertex() + 1 + i);
    return join(k, Complex::simplex(apex));
}

/// The complex together with the face of the original each new vertex lies in.
struct Subdivision {
    Complex complex;
    /// carrier[v] is the original face whose relative interior contains vertex v.
    std::map<Vertex, Simplex> carrier;

    /// The smallest original face containing the new face s.
    Simplex carrier_of(const Simplex& s) const
    {
        Simplex r;
        for (Vertex v : s) r = set_union(r, carrier.at(v));
        return r;
    }
};

inline Subdivision barycentric_subdivision(const Complex& k, int times = 1)
{
    if (times < 1) throw Error("subdivision count must be at least 1");
    Subdivision cur;
    cur.complex = k;
    for (Vertex v : k.vertices()) cur.carrier[v] = {v};
    for (int round = 0; round < times; ++round) {
        const Complex& K = cur.complex;
        if (K.empty() || K.dim() < 0) {
            Subdivision next;
            next.complex = K;
            cur = next;
            continue;
        }
        std::map<Simplex, Vertex, SimplexLess> id;
        std::map<Vertex, Simplex> carrier;
        Vertex next_id = 0;
        for (int d = 0; d <= K.dim(); ++d)
            for (const auto& s : K.faces(d)) {
                id[s] = next_id;
                carrier[next_id] = cur.carrier_of(s);
                ++next_id;
            }
        std::vector<Simplex> fs;
        for (const auto& f : K.facets()) {
            Simplex perm = f;
            do {
                Simplex chain;
                Simplex prefix;
                for (Vertex v : perm) {
                    prefix.insert(std::upper_bound(prefix.begin(), prefix.end(), v), v);
                    chain.push_back(id.at(prefix));
                }
                fs.push_back(chain);
            } while (std::next_permutation(perm.begin(), perm.end()));
        }
        Subdivision next;
        next.complex = Complex::closure(fs);
        next.carrier = std::move(carrier);
        cur = std::move(next);
    }
    return cur;
}

/// Vertices whose link has a disconnected 1-skeleton.
inline std::vector<Vertex> disconnected_links(const Complex& k)
{
    std::vector<Vertex> bad;
    std::map<Vertex, std::vector<Vertex>> nbr;
    for (const auto& e : k.faces(1)) {
        nbr[e[0]].push_back(e[1]);
        nbr[e[1]].push_back(e[0]);
    }
    std::map<Vertex, std::vector<std::pair<Vertex, Vertex>>> ledges;
    for (const auto& t : k.faces(2)) {
        ledges[t[0]].emplace_back(t[1], t[2]);
        ledges[t[1]].emplace_back(t[0], t[2]);
        ledges[t[2]].emplace_back(t[0], t[1]);
    }
    for (Vertex v : k.vertices()) {
        const auto& ns = nbr[v];
        if (ns.size() <= 1) continue;
        std::map<Vertex, Vertex> parent;
        for (Vertex w : ns) parent[w] = w;
        auto find = [&](Vertex x) {
            while (parent[x] != x) {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            return x;
        };
        std::size_t comps = ns.size();
        for (const auto& [a, b] : ledges[v]) {
            Vertex ra = find(a);
            Vertex rb = find(b);
            if (ra != rb) {
                parent[ra] = rb;
                --comps;
            }
        }
        if (comps != 1) bad.push_back(v);
    }
    return bad;
}

inline bool vertex_links_connected(const Complex& k) { return disconnected_links(k).empty(); }

using CanonicalKey = std::vector<int>;

struct KeyHash {
    std::size_t operator()(const CanonicalKey& k) const noexcept { return SimplexHash{}(k); }
};

/**
 * Relabel-stable key: vertices are renamed by a colour refinement seeded
 * with face-degree counts (ties broken by id), then the facets are
 * re-encoded. Distinct keys may describe isomorphic complexes; equal keys
 * always describe isomorphic ones.
 */
inline CanonicalKey canonical_form(const Complex& k)
{
    if (k.empty()) return {-2};
    const auto verts = k.vertices();
    std::map<Vertex, std::size_t> pos;
    for (std::size_t i = 0; i < verts.size(); ++i) pos[verts[i]] = i;
    std::vector<std::vector<long long>> sig(verts.size());
    for (int d = 0; d <= k.dim(); ++d) {
        for (auto& s : sig) s.push_back(0);
        for (const auto& f : k.faces(d))
            for (Vertex v : f) ++sig[pos[v]].back();
    }
    for (auto& s : sig) s.push_back(0);
    for (const auto& f : k.facets())
        for (Vertex v : f) ++sig[pos[v]].back();

    auto rank = [](const std::vector<std::vector<long long>>& s) {
        std::vector<std::vector<long long>> u = s;
        std::sort(u.begin(), u.end());
        u.erase(std::unique(u.begin(), u.end()), u.end());
        std::vector<long long> r(s.size());
        for (std::size_t i = 0; i < s.size(); ++i)
            r[i] = std::lower_bound(u.begin(), u.end(), s[i]) - u.begin();
        return std::make_pair(r, u.size());
    };
    auto [color, classes] = rank(sig);
    for (int round = 0; round < 8; ++round) {
        std::vector<std::vector<long long>> next(verts.size());
        for (std::size_t i = 0; i < verts.size(); ++i) next[i].push_back(color[i]);
        std::vector<std::vector<std::vector<long long>>> around(verts.size());
        for (const auto& f : k.facets()) {
            std::vector<long long> cs;
            for (Vertex v : f) cs.push_back(color[pos[v]]);
            std::sort(cs.begin(), cs.end());
            for (Vertex v : f) around[pos[v]].push_back(cs);
        }
        for (std::size_t i = 0; i < verts.size(); ++i) {
            std::sort(around[i].begin(), around[i].end());
            for (const auto& cs : around[i]) {
                next[i].push_back(-1);
                next[i].insert(next[i].end(), cs.begin(), cs.end());
            }
        }
        auto [c2, n2] = rank(next);
        color = c2;
        if (n2 == classes) break;
        classes = n2;
    }
    std::vector<std::size_t> order(verts.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return color[a] < color[b]; });
    std::map<Vertex, int> rename;
    for (std::size_t i = 0; i < order.size(); ++i) rename[verts[order[i]]] = static_cast<int>(i);
    std::vector<Simplex> fs;
    for (const auto& f : k.facets()) {
        Simplex g;
        for (Vertex v : f) g.push_back(rename[v]);
        std::sort(g.begin(), g.end());
        fs.push_back(g);
    }
    std::sort(fs.begin(), fs.end(), SimplexLess{});
    CanonicalKey key;
    key.push_back(static_cast<int>(verts.size()));
    for (const auto& f : fs) {
        key.push_back(-1);
        key.insert(key.end(), f.begin(), f.end());
    }
    return key;
}

}  // namespace shellcx
