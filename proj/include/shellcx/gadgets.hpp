#pragma once

#include <array>
#include <mutex>
#include <set>

#include "collapse.hpp"
#include "labeled.hpp"

namespace shellcx {

namespace mesh {

using Point = std::array<int, 3>;
using Square = std::array<Point, 4>;
using Key = std::string;
using Tri = std::array<Key, 3>;

/// Unit square normal to `axis` with minimal corner (a,b,c), corners in cyclic order.
inline Square sq(int axis, int a, int b, int c)
{
    static constexpr int dirs[3][2] = {{1, 2}, {0, 2}, {0, 1}};
    const int d1 = dirs[axis][0], d2 = dirs[axis][1];
    Square s{};
    const int steps[4][2] = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    for (int k = 0; k < 4; ++k) {
        Point q{a, b, c};
        q[d1] += steps[k][0];
        q[d2] += steps[k][1];
        s[k] = q;
    }
    return s;
}

/// All unit squares normal to `axis` filling the box lo..hi (lo[axis] == hi[axis]).
inline std::vector<Square> rect(int axis, Point lo, Point hi)
{
    static constexpr int dirs[3][2] = {{1, 2}, {0, 2}, {0, 1}};
    const int d1 = dirs[axis][0], d2 = dirs[axis][1];
    std::vector<Square> out;
    for (int i = lo[d1]; i < hi[d1]; ++i)
        for (int j = lo[d2]; j < hi[d2]; ++j) {
            Point p = lo;
            p[d1] = i;
            p[d2] = j;
            out.push_back(sq(axis, p[0], p[1], p[2]));
        }
    return out;
}

/**
 * Square-complex of a two-room box of footprint W x D. Tube A joins the
 * lower room to the outside through the floor, tube B the upper room
 * through the roof; each room has a wall attached to its tube, either a
 * single sheet or a hollow two-sheet slab.
 */
inline std::set<Square> house_squares(int w, int d, std::array<int, 2> ta, std::array<int, 2> tb, bool hollow_a,
                                      bool hollow_b)
{
    std::set<Square> s;
    const int ax = ta[0], ay = ta[1], bx = tb[0], by = tb[1];
    auto add = [&](const std::vector<Square>& v) { s.insert(v.begin(), v.end()); };
    for (int i = 0; i < w; ++i)
        for (int j = 0; j < d; ++j) {
            const bool in_a = i == ax && j == ay, in_b = i == bx && j == by;
            if (!in_a) s.insert(sq(2, i, j, 0));
            if (!in_a && !in_b) s.insert(sq(2, i, j, 1));
            if (!in_b) s.insert(sq(2, i, j, 2));
        }
    add(rect(0, {0, 0, 0}, {0, d, 2}));
    add(rect(0, {w, 0, 0}, {w, d, 2}));
    add(rect(1, {0, 0, 0}, {w, 0, 2}));
    add(rect(1, {0, d, 0}, {w, d, 2}));
    for (int a : {ax, ax + 1}) add(rect(0, {a, ay, 0}, {a, ay + 1, 1}));
    for (int b : {ay, ay + 1}) add(rect(1, {ax, b, 0}, {ax + 1, b, 1}));
    for (int a : {bx, bx + 1}) add(rect(0, {a, by, 1}, {a, by + 1, 2}));
    for (int b : {by, by + 1}) add(rect(1, {bx, b, 1}, {bx + 1, b, 2}));
    if (hollow_a) {
        add(rect(1, {0, ay, 0}, {ax, ay, 1}));
        add(rect(1, {0, ay + 1, 0}, {ax, ay + 1, 1}));
        for (int i = 0; i < ax; ++i) s.erase(sq(2, i, ay, 1));
    } else {
        add(rect(1, {0, ay, 0}, {ax, ay, 1}));
    }
    if (hollow_b) {
        add(rect(1, {0, by, 1}, {bx, by, 2}));
        add(rect(1, {0, by + 1, 1}, {bx, by + 1, 2}));
        for (int i = 0; i < bx; ++i) s.erase(sq(2, i, by, 1));
    } else {
        add(rect(1, {0, by + 1, 1}, {bx, by + 1, 2}));
    }
    return s;
}

inline Key point_key(const std::string& tag, const Point& p)
{
    return tag + "(" + std::to_string(p[0]) + "," + std::to_string(p[1]) + "," + std::to_string(p[2]) + ")";
}

/// Sequential fresh vertex names.
class Fresh {
public:
    explicit Fresh(std::string prefix) : prefix_(std::move(prefix)) {}
    Key operator()() { return prefix_ + "#" + std::to_string(++n_); }

private:
    std::string prefix_;
    int n_ = 0;
};

inline void triangulate_square(const Square& s, const std::function<Key(const Point&)>& key, std::vector<Tri>& out)
{
    out.push_back({key(s[0]), key(s[1]), key(s[2])});
    out.push_back({key(s[0]), key(s[2]), key(s[3])});
}

inline std::optional<Square> square_with_edge(const std::set<Square>& s, const Point& a, const Point& b)
{
    for (const auto& q : s)
        for (int k = 0; k < 4; ++k) {
            const Point& p0 = q[k];
            const Point& p1 = q[(k + 1) % 4];
            if ((p0 == a && p1 == b) || (p0 == b && p1 == a)) return q;
        }
    return std::nullopt;
}

/// The corners of q in cyclic order, starting at a and continuing with b.
inline std::vector<Point> cycle_from(const Square& q, const Point& a, const Point& b)
{
    int i = 0;
    while (q[i] != a) ++i;
    std::vector<Point> c;
    for (int k = 0; k < 4; ++k) c.push_back(q[(i + k) % 4]);
    if (c[1] != b) std::reverse(c.begin() + 1, c.end());
    return c;
}

/**
 * Retriangulates a polygonal wall so that it contains a prescribed tree
 * hanging from boundary[0]. The tree is surrounded by a thin ring of
 * triangles following its Euler tour; the rest of the polygon is coned
 * from a fresh apex. boundary[0], boundary[1] must span an edge of the
 * polygon; the tree touches the boundary only at boundary[0].
 */
inline std::vector<Tri> refine_wall(const std::vector<Key>& boundary,
                                    const std::map<Key, std::vector<Key>>& children, Fresh& fresh)
{
    const Key& x = boundary.at(0);
    std::vector<Key> tour{x};
    std::function<void(const Key&)> dfs = [&](const Key& u) {
        auto it = children.find(u);
        if (it == children.end()) return;
        for (const auto& c : it->second) {
            tour.push_back(c);
            dfs(c);
            tour.push_back(u);
        }
    };
    dfs(x);
    const std::size_t e2 = tour.size() - 1;
    if (e2 < 2) throw Error("refine_wall needs a nonempty tree");
    std::vector<Key> z;
    for (std::size_t i = 0; i < e2; ++i) z.push_back(fresh());
    std::vector<Tri> t;
    for (std::size_t i = 0; i < e2; ++i) t.push_back({tour[i], tour[i + 1], z[i]});
    for (std::size_t i = 1; i < e2; ++i) t.push_back({tour[i], z[i - 1], z[i]});
    t.push_back({x, boundary[1], z.front()});
    t.push_back({x, z.back(), boundary.back()});
    std::vector<Key> poly(boundary.begin() + 1, boundary.end());
    poly.insert(poly.end(), z.rbegin(), z.rend());
    const Key q = fresh();
    for (std::size_t i = 0; i < poly.size(); ++i) t.push_back({poly[i], poly[(i + 1) % poly.size()], q});
    return t;
}

/// A feature over vertex names, converted to ids when the mesh is finalised.
struct KeyFeature {
    Feature::Kind kind = Feature::Kind::vertex;
    std::vector<Key> verts;
    std::vector<Tri> facets;
};

/// Interns vertex names in sorted order and emits a labeled complex.
inline LabeledComplex finalize(const std::vector<Tri>& tris, const std::map<std::string, KeyFeature>& labels)
{
    std::set<Key> keys;
    for (const auto& t : tris) keys.insert(t.begin(), t.end());
    std::map<Key, Vertex> id;
    LabeledComplex lc;
    for (const auto& k : keys) {
        const Vertex v = static_cast<Vertex>(id.size());
        id[k] = v;
        lc.names[v] = k;
    }
    auto look = [&](const Key& k) {
        auto it = id.find(k);
        if (it == id.end()) throw Error("gadget label uses unknown vertex " + k);
        return it->second;
    };
    std::vector<Simplex> fs;
    std::set<Simplex> seen;
    for (const auto& t : tris) {
        Simplex s = make_simplex({look(t[0]), look(t[1]), look(t[2])});
        if (!seen.insert(s).second) throw Error("gadget mesh repeats a triangle");
        fs.push_back(s);
    }
    lc.complex = Complex::from_facets(fs);
    for (const auto& [name, kf] : labels) {
        Feature f;
        f.kind = kf.kind;
        for (const auto& k : kf.verts) f.verts.push_back(look(k));
        if (kf.kind == Feature::Kind::subcomplex) {
            std::vector<Simplex> sub;
            for (const auto& t : kf.facets) sub.push_back({look(t[0]), look(t[1]), look(t[2])});
            f = Feature::subcomplex(sub);
        }
        lc.labels[name] = f;
    }
    lc.validate();
    return lc;
}

inline KeyFeature key_vertex(Key k) { return {Feature::Kind::vertex, {std::move(k)}, {}}; }
inline KeyFeature key_path(std::vector<Key> ks)
{
    const auto kind = ks.size() == 2 ? Feature::Kind::edge : Feature::Kind::path;
    return {kind, std::move(ks), {}};
}
inline KeyFeature key_sub(std::vector<Tri> ts) { return {Feature::Kind::subcomplex, {}, std::move(ts)}; }

}  // namespace mesh

/// Postcondition failure of a gadget construction.
class GadgetError : public Error {
public:
    using Error::Error;
};

/// Edges of an edge or path label.
inline std::vector<Simplex> label_edges(const LabeledComplex& lc, const std::string& name)
{
    return lc.at(name).edges();
}

namespace detail {

inline void gadget_require(bool ok, const std::string& what)
{
    if (!ok) throw GadgetError("gadget self-check failed: " + what);
}

inline std::vector<Simplex> sorted_simplices(std::vector<Simplex> v)
{
    std::sort(v.begin(), v.end(), SimplexLess{});
    return v;
}

inline void check_common(const LabeledComplex& lc, const std::string& who)
{
    gadget_require(lc.complex.is_pure(2), who + " is pure 2-dimensional");
    gadget_require(vertex_links_connected(lc.complex), who + " has connected vertex links");
}

}  // namespace detail

struct OneHouseSpec {
    /// Number of edges the free edge f is subdivided into.
    int subdivisions = 1;
    /**
     * Named paths to embed in the lower wall. Each is a list of vertex
     * names starting at "x" (the endpoint of f it hangs from) or at a vertex
     * introduced by an earlier path; together they must form a tree.
     */
    std::vector<std::pair<std::string, std::vector<std::string>>> attachments;
};

/**
 * A Bing-type house with a single free edge f = [x, ..., y]. The lower
 * wall L is a square of the tube wall containing f, retriangulated to
 * carry the attachment tree. Labels: f, x, y, L, and one per attachment.
 */
inline LabeledComplex build_one_house(const OneHouseSpec& spec = {}, bool self_check = true)
{
    using namespace mesh;
    if (spec.subdivisions < 1) throw Error("one-house: subdivision count must be positive");
    const auto squares = house_squares(3, 4, {1, 2}, {1, 1}, false, true);
    const Point px{1, 1, 1}, py{1, 2, 1};
    const Square lsq = sq(0, 1, 1, 1);
    Fresh fresh("n");
    auto gk = [](const Point& p) { return point_key("g", p); };
    std::vector<Tri> tris;
    for (const auto& s : squares)
        if (s != lsq) triangulate_square(s, gk, tris);
    const auto cyc = cycle_from(lsq, px, py);
    std::vector<Key> boundary{gk(px)};
    std::vector<Key> fpath{gk(px)};
    for (int i = 1; i < spec.subdivisions; ++i) {
        Key m = fresh();
        boundary.push_back(m);
        fpath.push_back(m);
    }
    for (std::size_t i = 1; i < cyc.size(); ++i) boundary.push_back(gk(cyc[i]));
    fpath.push_back(gk(py));

    std::map<std::string, Key> named{{"x", gk(px)}};
    std::map<Key, std::vector<Key>> children;
    std::map<std::string, KeyFeature> labels;
    for (const auto& [name, path] : spec.attachments) {
        if (path.size() < 2) throw Error("one-house: attachment " + name + " needs at least two vertices");
        if (!named.count(path.front()))
            throw Error("one-house: attachment " + name + " must start at x or a known vertex");
        std::vector<Key> ks{named.at(path.front())};
        for (std::size_t i = 1; i < path.size(); ++i) {
            const std::string& vn = path[i];
            auto it = named.find(vn);
            if (it != named.end()) {
                const Key& prev = ks.back();
                auto& ch = children[prev];
                const bool is_child = std::find(ch.begin(), ch.end(), it->second) != ch.end();
                auto& back = children[it->second];
                const bool is_parent = std::find(back.begin(), back.end(), prev) != back.end();
                if (!is_child && !is_parent)
                    throw Error("one-house: attachment plan for " + name + " does not form a tree");
                ks.push_back(it->second);
                continue;
            }
            if (vn == "y") throw Error("one-house: attachments may not reach y");
            Key k = "t:" + vn;
            named[vn] = k;
            children[ks.back()].push_back(k);
            ks.push_back(k);
        }
        labels[name] = key_path(ks);
    }
    if (children.empty()) children[gk(px)].push_back(fresh());
    auto wall = refine_wall(boundary, children, fresh);
    tris.insert(tris.end(), wall.begin(), wall.end());
    labels["f"] = key_path(fpath);
    labels["x"] = key_vertex(gk(px));
    labels["y"] = key_vertex(gk(py));
    labels["L"] = key_sub(wall);
    LabeledComplex lc = finalize(tris, labels);
    if (self_check) {
        detail::check_common(lc, "one-house");
        detail::gadget_require(detail::sorted_simplices(free_faces(lc.complex)) ==
                                   detail::sorted_simplices(label_edges(lc, "f")),
                               "one-house free faces are exactly the edges of f");
        detail::gadget_require(lc.complex.reduced_euler_characteristic() == 0, "one-house has reduced Euler characteristic 0");
        detail::gadget_require(bool(is_collapsible_2d_greedy(lc.complex)), "one-house is collapsible");
    }
    return lc;
}

namespace detail {

inline LabeledComplex make_three_house()
{
    using namespace mesh;
    const auto s0 = house_squares(3, 5, {1, 3}, {1, 1}, true, true);
    const Point v{1, 2, 1}, vo{1, 1, 1}, x{1, 3, 1}, xo{1, 4, 1}, w{0, 2, 1};
    const Square la = *square_with_edge(s0, v, vo);
    const Square lb = *square_with_edge(s0, x, xo);
    Fresh fresh("n");
    std::array<Key, 3> ks{fresh(), fresh(), fresh()};
    const Key eend = fresh();
    std::vector<Tri> tris;
    std::map<std::string, KeyFeature> labels;
    for (int i = 0; i < 3; ++i) {
        const int prev = (i + 2) % 3;
        const std::string tag = "h" + std::to_string(i);
        auto gk = [&](const Point& p) -> Key {
            if (p == v) return "v";
            if (p == vo) return ks[prev];
            return point_key(tag, p);
        };
        for (const auto& s : s0)
            if (s != la && s != lb) triangulate_square(s, gk, tris);
        std::vector<Key> bb, ba;
        for (const auto& p : cycle_from(lb, x, xo)) bb.push_back(gk(p));
        for (const auto& p : cycle_from(la, v, vo)) ba.push_back(gk(p));
        std::map<Key, std::vector<Key>> cb{{bb[0], {fresh()}}};
        auto wb = refine_wall(bb, cb, fresh);
        std::map<Key, std::vector<Key>> ca{{"v", {ks[i]}}};
        if (i == 0) ca["v"].push_back(eend);
        auto wa = refine_wall(ba, ca, fresh);
        tris.insert(tris.end(), wb.begin(), wb.end());
        tris.insert(tris.end(), wa.begin(), wa.end());
        const std::string n = std::to_string(i + 1);
        labels["f" + n] = key_path({gk(x), gk(xo)});
        labels["p" + n] = key_path({"v", gk(w), gk(x)});
    }
    labels["v"] = key_vertex("v");
    labels["e"] = key_path({"v", eend});
    return finalize(tris, labels);
}

}  // namespace detail

/// Edges spanned by e, p1, p2, p3 and the free edges other than f_skip (1-based; 0 keeps all three).
inline Complex three_house_tree(const LabeledComplex& h, int skip)
{
    std::vector<Simplex> es = label_edges(h, "e");
    for (int i = 1; i <= 3; ++i) {
        const std::string n = std::to_string(i);
        for (const auto& e : label_edges(h, "p" + n)) es.push_back(e);
        if (i != skip)
            for (const auto& e : label_edges(h, "f" + n)) es.push_back(e);
    }
    return Complex::from_facets(es);
}

/**
 * A house with exactly three free edges f1, f2, f3, built from three
 * copies of a two-free-edge house arranged in a cycle: one free edge of
 * each copy is glued into a wall of the next. Labels: f1..f3, p1..p3
 * (paths [v, w_i, x_i] ending on f_i), v and e = [v, ...].
 */
inline LabeledComplex build_three_house(bool self_check = true)
{
    static std::once_flag once;
    static LabeledComplex cached;
    static std::string failure;
    std::call_once(once, [&] {
        cached = detail::make_three_house();
        if (!self_check) return;
        try {
            detail::check_common(cached, "three-house");
            std::vector<Simplex> fe;
            for (int i = 1; i <= 3; ++i)
                for (const auto& e : label_edges(cached, "f" + std::to_string(i))) fe.push_back(e);
            detail::gadget_require(detail::sorted_simplices(free_faces(cached.complex)) == detail::sorted_simplices(fe),
                                   "three-house free faces are exactly f1, f2, f3");
            detail::gadget_require(cached.complex.reduced_euler_characteristic() == 0,
                                   "three-house has reduced Euler characteristic 0");
            for (int skip = 1; skip <= 3; ++skip)
                detail::gadget_require(bool(collapses_to(cached.complex, three_house_tree(cached, skip))),
                                       "three-house collapses onto e, p1, p2, p3 and two free edges");
            Complex star = three_house_tree(cached, 0);
            detail::gadget_require(is_tree(star), "e, p1..p3, f1..f3 span a tree");
        } catch (const GadgetError& e) {
            failure = e.what();
        }
    });
    if (!failure.empty()) throw GadgetError(failure);
    return cached;
}

/**
 * Bipyramid over the triangle s = (v, s2, s3). D[u] is the cone from c,
 * D[-u] the cone from c'; f[u] = [v, c] and f[-u] = [v, c'].
 */
inline LabeledComplex build_variable_sphere()
{
    using namespace mesh;
    std::vector<Tri> dp{{{"c", "v", "s2"}}, {{"c", "s2", "s3"}}, {{"c", "s3", "v"}}};
    std::vector<Tri> dn{{{"c'", "v", "s2"}}, {{"c'", "s2", "s3"}}, {{"c'", "s3", "v"}}};
    std::vector<Tri> all = dp;
    all.insert(all.end(), dn.begin(), dn.end());
    std::map<std::string, KeyFeature> labels{
        {"D+", key_sub(dp)},
        {"D-", key_sub(dn)},
        {"s", key_path({"v", "s2", "s3", "v"})},
        {"v", key_vertex("v")},
        {"f+", key_path({"v", "c"})},
        {"f-", key_path({"v", "c'"})},
    };
    return finalize(all, labels);
}

/**
 * Annulus-like complex bounded by the circle s = (v, s2, s3) and the
 * triangle loop b ∪ p, where b = [a, v] and p = [v, m, a] share v and a.
 */
inline LabeledComplex build_O()
{
    using namespace mesh;
    std::vector<Tri> t{{{"v", "s2", "z1"}}, {{"v", "z1", "a"}},  {{"v", "s3", "z2"}},  {{"v", "z2", "m"}},
                       {{"s2", "s3", "z1"}}, {{"s3", "z2", "z1"}}, {{"z2", "m", "z1"}}, {{"z1", "m", "a"}}};
    std::map<std::string, KeyFeature> labels{
        {"s", key_path({"v", "s2", "s3", "v"})},
        {"b", key_path({"a", "v"})},
        {"p", key_path({"v", "m", "a"})},
        {"v", key_vertex("v")},
        {"v_and", key_vertex("a")},
    };
    return finalize(t, labels);
}

/// Declares that two labels of two named parts denote the same feature.
struct Identification {
    std::string a;
    std::string b;
};

struct Part {
    std::string name;
    LabeledComplex lc;
};

/**
 * Glues labeled parts along identified features. Labels are addressed as
 * "part/label". The result carries every part label as "part/label" and
 * every part as a subcomplex label "part". Faces may be shared by several
 * parts only when they come from identified features.
 */
inline LabeledComplex amalgamate(const std::vector<Part>& parts, const std::vector<Identification>& ids)
{
    std::map<std::string, std::size_t> pidx;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (parts[i].name.find('/') != std::string::npos) throw Error("part names may not contain '/'");
        if (!pidx.emplace(parts[i].name, i).second) throw Error("duplicate part name " + parts[i].name);
    }
    std::vector<std::map<Vertex, std::size_t>> local(parts.size());
    std::vector<std::vector<Vertex>> verts(parts.size());
    std::size_t total = 0;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        verts[i] = parts[i].lc.complex.vertices();
        for (Vertex v : verts[i]) local[i][v] = total++;
    }
    std::vector<std::size_t> parent(total);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    auto resolve = [&](const std::string& q) -> std::pair<std::size_t, const Feature*> {
        const auto slash = q.find('/');
        if (slash == std::string::npos) throw Error("identification label must be part/label: " + q);
        auto it = pidx.find(q.substr(0, slash));
        if (it == pidx.end()) throw Error("unknown part in " + q);
        return {it->second, &parts[it->second].lc.at(q.substr(slash + 1))};
    };
    std::vector<std::pair<std::size_t, Simplex>> declared_local;
    for (const auto& id : ids) {
        auto [pa, fa] = resolve(id.a);
        auto [pb, fb] = resolve(id.b);
        if (fa->kind != fb->kind) throw Error("identification " + id.a + " <-> " + id.b + ": kinds differ");
        if (fa->kind == Feature::Kind::subcomplex)
            throw Error("identification " + id.a + " <-> " + id.b + ": subcomplexes cannot be identified");
        if (fa->verts.size() != fb->verts.size())
            throw Error("identification " + id.a + " <-> " + id.b + ": lengths differ");
        for (std::size_t k = 0; k < fa->verts.size(); ++k)
            parent[find(local[pa].at(fa->verts[k]))] = find(local[pb].at(fb->verts[k]));
        for (auto [p, f] : {std::pair{pa, fa}, std::pair{pb, fb}}) {
            for (Vertex v : f->verts) declared_local.push_back({p, {v}});
            for (const auto& e : f->edges()) declared_local.push_back({p, e});
        }
    }
    std::map<std::size_t, Vertex> newid;
    for (std::size_t g = 0; g < total; ++g) {
        const std::size_t r = find(g);
        if (!newid.count(r)) newid.emplace(r, static_cast<Vertex>(newid.size()));
    }
    auto img = [&](std::size_t p, const Simplex& s) {
        Simplex t;
        for (Vertex v : s) t.push_back(newid.at(find(local[p].at(v))));
        std::sort(t.begin(), t.end());
        return t;
    };
    std::set<Simplex> declared;
    for (const auto& [p, s] : declared_local) declared.insert(img(p, s));
    std::map<Simplex, std::vector<std::size_t>> owners;
    std::vector<Simplex> facets;
    std::vector<std::string> problems;
    for (std::size_t p = 0; p < parts.size(); ++p) {
        std::set<Simplex> mine;
        for (const auto& s : parts[p].lc.complex.all_faces()) {
            if (s.empty()) continue;
            Simplex t = img(p, s);
            if (std::adjacent_find(t.begin(), t.end()) != t.end()) {
                problems.push_back(parts[p].name + " face " + describe_faces({s}) + " degenerates");
                continue;
            }
            if (!mine.insert(t).second)
                problems.push_back(parts[p].name + " faces merge into " + describe_faces({t}));
            owners[t].push_back(p);
        }
        for (const auto& f : parts[p].lc.complex.facets()) facets.push_back(img(p, f));
    }
    for (const auto& [t, ps] : owners)
        if (ps.size() > 1 && !declared.count(t))
            problems.push_back("face " + describe_faces({t}) + " shared by " + parts[ps[0]].name + " and " +
                               parts[ps[1]].name + " without identification");
    if (!problems.empty()) {
        std::string msg = "amalgamation collision:";
        for (std::size_t i = 0; i < problems.size() && i < 8; ++i) msg += " " + problems[i] + ";";
        throw Error(msg);
    }
    LabeledComplex out;
    out.complex = Complex::from_facets(facets);
    for (std::size_t p = 0; p < parts.size(); ++p) {
        const auto& lc = parts[p].lc;
        for (const auto& [name, f] : lc.labels) {
            Feature g = f;
            for (auto& v : g.verts) v = newid.at(find(local[p].at(v)));
            if (g.kind == Feature::Kind::subcomplex) {
                std::vector<Simplex> fs;
                for (const auto& s : f.facets) fs.push_back(img(p, s));
                g = Feature::subcomplex(fs);
            }
            out.labels[parts[p].name + "/" + name] = g;
        }
        std::vector<Simplex> fs;
        for (const auto& s : lc.complex.facets()) fs.push_back(img(p, s));
        out.labels[parts[p].name] = Feature::subcomplex(fs);
    }
    return out;
}

inline Complex modified_dunce_hat()
{
    return Complex::from_facets({{1, 2, 5}, {1, 2, 6}, {1, 2, 7}, {1, 3, 4}, {1, 4, 5}, {1, 6, 7}, {2, 3, 4},
                                 {2, 3, 5}, {2, 3, 6}, {2, 4, 7}, {3, 5, 6}, {4, 5, 7}, {5, 6, 7}});
}

/**
 * Dunce hat: a triangle with its sides glued by the word a a a^-1. Each
 * side is split in three (vertices 1, 2, 3), a collar of nine vertices
 * separates the boundary from a central cone with apex 4.
 */
inline Complex dunce_hat()
{
    const int b[9] = {1, 2, 3, 1, 2, 3, 1, 3, 2};
    std::vector<Simplex> fs;
    for (int k = 0; k < 9; ++k) {
        const int k1 = (k + 1) % 9;
        fs.push_back(make_simplex({b[k], b[k1], 5 + k}));
        fs.push_back(make_simplex({b[k1], 5 + k, 5 + k1}));
        fs.push_back(make_simplex({5 + k, 5 + k1, 4}));
    }
    return Complex::from_facets(fs);
}

/// Seven-vertex torus: {i, i+1, i+3} and {i, i+2, i+3} mod 7.
inline Complex torus7()
{
    std::vector<Simplex> fs;
    for (int i = 0; i < 7; ++i) {
        fs.push_back(make_simplex({i, (i + 1) % 7, (i + 3) % 7}));
        fs.push_back(make_simplex({i, (i + 2) % 7, (i + 3) % 7}));
    }
    return Complex::from_facets(fs);
}

inline std::map<std::string, LabeledComplex> fixtures()
{
    std::map<std::string, LabeledComplex> m;
    auto put = [&](const std::string& n, Complex c) {
        LabeledComplex lc;
        lc.complex = std::move(c);
        m[n] = std::move(lc);
    };
    put("modified_dunce_hat", modified_dunce_hat());
    put("dunce_hat", dunce_hat());
    put("torus7", torus7());
    for (int d = 1; d <= 4; ++d) put("boundary_simplex_" + std::to_string(d), Complex::simplex_boundary(d));
    return m;
}

}  // namespace shellcx
