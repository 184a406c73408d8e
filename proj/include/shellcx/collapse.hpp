#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <queue>
#include <sstream>
#include <unordered_set>

#include "complex.hpp"

namespace shellcx {

struct CollapsePair {
    Simplex free;
    Simplex coface;
    bool operator==(const CollapsePair& o) const { return free == o.free && coface == o.coface; }
};

using CollapseSequence = std::vector<CollapsePair>;

enum class Verdict { yes, no, budget_exceeded };

inline const char* to_string(Verdict v)
{
    switch (v) {
    case Verdict::yes: return "yes";
    case Verdict::no: return "no";
    default: return "budget_exceeded";
    }
}

constexpr long long default_budget = 1000000;

struct CollapseResult {
    Verdict verdict = Verdict::no;
    CollapseSequence witness;
    long long nodes = 0;
    explicit operator bool() const { return verdict == Verdict::yes; }
};

/**
 * Flat face lattice of a complex: every nonempty face gets an id, with
 * links one dimension up and down. Shared read-only by CollapseState.
 */
class FaceGraph {
public:
    explicit FaceGraph(const Complex& k) : complex_(k)
    {
        const int top = k.dim();
        base_.assign(top + 3, 0);
        for (int c = 1; c <= top + 1; ++c) base_[c + 1] = base_[c] + k.faces(c - 1).size();
        const std::size_t n = base_[top + 2];
        size_.assign(n, 0);
        up_off_.assign(n + 1, 0);
        down_off_.assign(n + 1, 0);
        for (int c = 1; c <= top + 1; ++c) {
            const auto& fs = k.faces(c - 1);
            for (std::size_t i = 0; i < fs.size(); ++i) {
                const std::size_t id = base_[c] + i;
                size_[id] = c;
                auto [b, e] = k.up_ids(c, i);
                up_off_[id + 1] = static_cast<std::size_t>(e - b);
                down_off_[id + 1] = c > 1 ? c : 0;
            }
        }
        for (std::size_t i = 0; i < n; ++i) {
            up_off_[i + 1] += up_off_[i];
            down_off_[i + 1] += down_off_[i];
        }
        up_.resize(up_off_[n]);
        down_.resize(down_off_[n]);
        std::vector<std::size_t> dfill(down_off_.begin(), down_off_.end() - 1);
        for (int c = 1; c <= top + 1; ++c) {
            const auto& fs = k.faces(c - 1);
            for (std::size_t i = 0; i < fs.size(); ++i) {
                const std::size_t id = base_[c] + i;
                auto [b, e] = k.up_ids(c, i);
                std::size_t w = up_off_[id];
                for (const int* p = b; p != e; ++p) {
                    const std::size_t hid = base_[c + 1] + static_cast<std::size_t>(*p);
                    up_[w++] = static_cast<int>(hid);
                    down_[dfill[hid]++] = static_cast<int>(id);
                }
            }
        }
    }

    const Complex& complex() const { return complex_; }
    std::size_t size() const { return size_.size(); }
    int card(std::size_t id) const { return size_[id]; }
    const Simplex& simplex(std::size_t id) const
    {
        const int c = size_[id];
        return complex_.faces(c - 1)[id - base_[c]];
    }
    std::size_t id(const Simplex& s) const
    {
        if (s.empty()) return Complex::npos;
        const std::size_t i = complex_.face_index(s);
        return i == Complex::npos ? i : base_[s.size()] + i;
    }
    std::pair<const int*, const int*> up(std::size_t id) const
    {
        return {up_.data() + up_off_[id], up_.data() + up_off_[id + 1]};
    }
    std::pair<const int*, const int*> down(std::size_t id) const
    {
        return {down_.data() + down_off_[id], down_.data() + down_off_[id + 1]};
    }
    /// Id range [first, last) of faces with the given cardinality.
    std::pair<std::size_t, std::size_t> range(int c) const
    {
        if (c < 1 || c + 1 >= static_cast<int>(base_.size())) return {0, 0};
        return {base_[c], base_[c + 1]};
    }

private:
    Complex complex_;
    std::vector<std::size_t> base_;
    std::vector<int> size_;
    std::vector<std::size_t> up_off_, down_off_;
    std::vector<int> up_, down_;
};

/// Mutable alive-set over a FaceGraph, supporting elementary collapses.
class CollapseState {
public:
    explicit CollapseState(std::shared_ptr<const FaceGraph> g) : g_(std::move(g))
    {
        alive_.assign(g_->size(), 1);
        up_alive_.assign(g_->size(), 0);
        for (std::size_t i = 0; i < g_->size(); ++i) {
            auto [b, e] = g_->up(i);
            up_alive_[i] = static_cast<int>(e - b);
        }
        count_ = g_->size();
    }

    const FaceGraph& graph() const { return *g_; }
    const std::shared_ptr<const FaceGraph>& graph_ptr() const { return g_; }
    bool alive(std::size_t id) const { return alive_[id] != 0; }
    int up_alive(std::size_t id) const { return up_alive_[id]; }
    std::size_t alive_count() const { return count_; }

    /// Removes a maximal face (used for triangle removals before collapsing).
    void remove_maximal(std::size_t id)
    {
        if (!alive_[id] || up_alive_[id] != 0) throw Error("only alive maximal faces can be removed");
        kill(id);
    }

    /// The unique alive coface of id, if id is free; npos otherwise.
    std::size_t free_partner(std::size_t id) const
    {
        if (!alive_[id] || up_alive_[id] != 1) return Complex::npos;
        auto [b, e] = g_->up(id);
        for (const int* p = b; p != e; ++p)
            if (alive_[*p]) return up_alive_[*p] == 0 ? static_cast<std::size_t>(*p) : Complex::npos;
        return Complex::npos;
    }

    bool can_collapse(std::size_t f, std::size_t c) const { return f != Complex::npos && free_partner(f) == c && c != Complex::npos; }

    void collapse(std::size_t f, std::size_t c)
    {
        if (!can_collapse(f, c)) throw Error("not a free pair");
        kill(c);
        kill(f);
    }

    bool apply(const CollapsePair& p)
    {
        const std::size_t f = g_->id(p.free);
        const std::size_t c = g_->id(p.coface);
        if (f == Complex::npos || c == Complex::npos || p.coface.size() != p.free.size() + 1) return false;
        if (!can_collapse(f, c)) return false;
        collapse(f, c);
        return true;
    }

    std::vector<Simplex> alive_facets() const
    {
        std::vector<Simplex> r;
        for (std::size_t i = 0; i < g_->size(); ++i)
            if (alive_[i] && up_alive_[i] == 0) r.push_back(g_->simplex(i));
        return r;
    }

    Complex current() const
    {
        if (count_ == 0) return Complex();
        return Complex::from_facets(alive_facets());
    }

    std::size_t alive_of_card(int c) const
    {
        auto [a, b] = g_->range(c);
        std::size_t n = 0;
        for (std::size_t i = a; i < b; ++i) n += alive_[i];
        return n;
    }

    const std::vector<std::uint8_t>& alive_mask() const { return alive_; }

private:
    std::shared_ptr<const FaceGraph> g_;
    std::vector<std::uint8_t> alive_;
    std::vector<int> up_alive_;
    std::size_t count_ = 0;

    void kill(std::size_t id)
    {
        alive_[id] = 0;
        --count_;
        auto [b, e] = g_->down(id);
        for (const int* p = b; p != e; ++p) --up_alive_[*p];
    }
};

/// Faces with exactly one coface one dimension up, that coface being maximal.
inline std::vector<Simplex> free_faces(const Complex& k)
{
    std::vector<Simplex> r;
    for (int d = 0; d < k.dim(); ++d)
        for (const auto& s : k.faces(d)) {
            auto cs = k.cofaces(s);
            if (cs.size() == 1 && k.coface_count(cs[0]) == 0) r.push_back(s);
        }
    return r;
}

inline Complex elementary_collapse(const Complex& k, const CollapsePair& p)
{
    if (p.free.empty() || p.coface.size() != p.free.size() + 1 || !is_subset(p.free, p.coface))
        throw Error("collapse pair has wrong shape");
    auto cs = k.cofaces(p.free);
    if (!k.contains(p.free) || cs.size() != 1 || cs[0] != p.coface || k.coface_count(p.coface) != 0)
        throw Error("stale collapse: face is not free with that coface");
    std::vector<Simplex> rest;
    for (const auto& f : k.facets())
        if (f != p.coface) rest.push_back(f);
    for (const auto& s : k.faces(dimension(p.free)))
        if (s != p.free && is_subset(s, p.coface)) rest.push_back(s);
    return Complex::from_face_set(rest);
}

struct ReplayResult {
    bool ok = false;
    /// Index of the first pair that fails; equals the sequence length when only the target differs.
    long long failing_index = -1;
    explicit operator bool() const { return ok; }
};

inline ReplayResult verify_collapse_sequence(const Complex& k, const CollapseSequence& seq, const Complex& target)
{
    CollapseState st(std::make_shared<FaceGraph>(k));
    for (std::size_t i = 0; i < seq.size(); ++i)
        if (!st.apply(seq[i])) return {false, static_cast<long long>(i)};
    if (st.current() != target) return {false, static_cast<long long>(seq.size())};
    return {true, -1};
}

namespace detail {

using FacePred = std::function<bool(std::size_t)>;

/**
 * Greedy triangle removal through free edges (smallest edge first),
 * followed by leaf pruning. Faces for which `keep` holds are never used
 * as free faces.
 */
inline void greedy_2d(CollapseState& st, const FacePred& keep, CollapseSequence* out)
{
    const FaceGraph& g = st.graph();
    using MinHeap = std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>>;
    MinHeap edges;
    auto [ea, eb] = g.range(2);
    for (std::size_t i = ea; i < eb; ++i)
        if (st.alive(i) && st.up_alive(i) == 1) edges.push(i);
    while (!edges.empty()) {
        const std::size_t e = edges.top();
        edges.pop();
        const std::size_t t = st.free_partner(e);
        if (t == Complex::npos || g.card(t) != 3 || (keep && keep(e))) continue;
        st.collapse(e, t);
        if (out) out->push_back({g.simplex(e), g.simplex(t)});
        auto [b, en] = g.down(t);
        for (const int* p = b; p != en; ++p)
            if (st.alive(*p) && st.up_alive(*p) == 1) edges.push(*p);
    }
    MinHeap leaves;
    auto [va, vb] = g.range(1);
    for (std::size_t i = va; i < vb; ++i)
        if (st.alive(i) && st.up_alive(i) == 1) leaves.push(i);
    while (!leaves.empty()) {
        const std::size_t v = leaves.top();
        leaves.pop();
        const std::size_t e = st.free_partner(v);
        if (e == Complex::npos || (keep && keep(v))) continue;
        st.collapse(v, e);
        if (out) out->push_back({g.simplex(v), g.simplex(e)});
        auto [b, en] = g.down(e);
        for (const int* p = b; p != en; ++p)
            if (st.alive(*p) && st.up_alive(*p) == 1) leaves.push(*p);
    }
}

inline bool single_vertex(const CollapseState& st)
{
    return st.alive_count() == 1 && st.alive_of_card(1) == 1;
}

}  // namespace detail

/// Greedy collapsibility test on a prepared state; fills the witness when requested.
inline bool greedy_collapsible(CollapseState& st, CollapseSequence* witness = nullptr)
{
    detail::greedy_2d(st, nullptr, witness);
    return detail::single_vertex(st);
}

inline CollapseResult is_collapsible_2d_greedy(const Complex& k)
{
    if (k.dim() > 2) throw Error("greedy collapsibility needs dimension at most 2");
    CollapseResult r;
    if (k.dim() < 0) return r;
    CollapseState st(std::make_shared<FaceGraph>(k));
    r.verdict = greedy_collapsible(st, &r.witness) ? Verdict::yes : Verdict::no;
    if (r.verdict == Verdict::no) r.witness.clear();
    return r;
}

namespace detail {

struct DfsSearch {
    const FacePred* keep = nullptr;
    std::function<bool(const CollapseState&)> done;
    std::function<CanonicalKey(const CollapseState&)> key;
    std::unordered_set<CanonicalKey, KeyHash> dead;
    long long budget = default_budget;
    long long nodes = 0;
    bool exhausted = false;
    CollapseSequence path;

    bool run(CollapseState& st)
    {
        if (done(st)) return true;
        if (++nodes > budget) {
            exhausted = true;
            return false;
        }
        CanonicalKey k = key(st);
        if (dead.count(k)) return false;
        const FaceGraph& g = st.graph();
        for (std::size_t f = 0; f < g.size(); ++f) {
            const std::size_t c = st.free_partner(f);
            if (c == Complex::npos || (*keep && (*keep)(f))) continue;
            CollapseState next = st;
            next.collapse(f, c);
            path.push_back({g.simplex(f), g.simplex(c)});
            if (run(next)) return true;
            path.pop_back();
            if (exhausted) return false;
        }
        dead.insert(std::move(k));
        return false;
    }
};

inline CanonicalKey mask_key(const CollapseState& st)
{
    const auto& m = st.alive_mask();
    CanonicalKey k((m.size() + 30) / 31, 0);
    for (std::size_t i = 0; i < m.size(); ++i)
        if (m[i]) k[i / 31] |= 1 << (i % 31);
    return k;
}

}  // namespace detail

/// Exhaustive search over collapse orders, memoised on canonical forms of failed states.
/// Disconnected complexes and those with nonzero reduced Euler characteristic are rejected up front.
inline CollapseResult is_collapsible_dfs(const Complex& k, long long budget = default_budget)
{
    CollapseResult r;
    if (k.dim() < 0) return r;
    if (k.reduced_euler_characteristic() != 0 || !k.is_connected()) return r;
    CollapseState st(std::make_shared<FaceGraph>(k));
    detail::FacePred none;
    detail::DfsSearch s;
    s.keep = &none;
    s.budget = budget;
    s.done = detail::single_vertex;
    s.key = [](const CollapseState& x) { return canonical_form(x.current()); };
    const bool ok = s.run(st);
    r.nodes = s.nodes;
    r.verdict = ok ? Verdict::yes : (s.exhausted ? Verdict::budget_exceeded : Verdict::no);
    if (ok) r.witness = s.path;
    return r;
}

/// Collapses of K that never touch faces of L and end exactly at L.
inline CollapseResult collapses_to(const Complex& k, const Complex& l, long long budget = default_budget)
{
    if (!l.is_subcomplex_of(k)) throw Error("collapses_to: target is not a subcomplex");
    auto g = std::make_shared<FaceGraph>(k);
    std::vector<std::uint8_t> in_l(g->size(), 0);
    for (int d = 0; d <= l.dim(); ++d)
        for (const auto& s : l.faces(d)) in_l[g->id(s)] = 1;
    const std::size_t target = l.num_simplices();
    detail::FacePred keep = [&](std::size_t id) { return in_l[id] != 0; };
    CollapseResult r;
    CollapseState st(g);
    if (k.dim() <= 2) {
        detail::greedy_2d(st, keep, &r.witness);
        r.verdict = st.alive_count() == target ? Verdict::yes : Verdict::no;
        if (r.verdict == Verdict::no) r.witness.clear();
        return r;
    }
    detail::DfsSearch s;
    s.keep = &keep;
    s.budget = budget;
    s.done = [target](const CollapseState& x) { return x.alive_count() == target; };
    s.key = detail::mask_key;
    const bool ok = s.run(st);
    r.nodes = s.nodes;
    r.verdict = ok ? Verdict::yes : (s.exhausted ? Verdict::budget_exceeded : Verdict::no);
    if (ok) r.witness = s.path;
    return r;
}

/// Γ(K,M): faces of M lying in some face of K outside M.
inline Complex constrain_complex(const Complex& k, const Complex& m)
{
    if (!m.is_subcomplex_of(k)) throw Error("constrain_complex: M is not a subcomplex of K");
    std::vector<Simplex> out;
    for (int d = 0; d <= k.dim(); ++d)
        for (const auto& eta : k.faces(d)) {
            if (m.contains(eta)) continue;
            for_each_subset(eta, [&](const Simplex& s) {
                if (!s.empty() && s.size() < eta.size() && m.contains(s)) out.push_back(s);
            });
        }
    std::sort(out.begin(), out.end(), SimplexLess{});
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return Complex::from_face_set(out);
}

/// (K \ M) ∪ M' as a complex.
inline Complex replace_subcomplex(const Complex& k, const Complex& m, const Complex& m2)
{
    std::vector<Simplex> fs;
    for (int d = 0; d <= k.dim(); ++d)
        for (const auto& s : k.faces(d))
            if (!m.contains(s) || m2.contains(s)) fs.push_back(s);
    return Complex::from_face_set(fs);
}

inline std::string describe_faces(const std::vector<Simplex>& fs)
{
    std::ostringstream o;
    for (std::size_t i = 0; i < fs.size(); ++i) {
        o << (i ? " " : "") << '{';
        for (std::size_t j = 0; j < fs[i].size(); ++j) o << (j ? "," : "") << fs[i][j];
        o << '}';
    }
    return o.str();
}

/// Lifts a collapse of M onto M' to a collapse of K, after checking Γ(K,M) ⊆ M'.
inline CollapseSequence glue_local_collapse(const Complex& k, const Complex& m, const Complex& m2,
                                            const CollapseSequence& local)
{
    const Complex gamma = constrain_complex(k, m);
    std::vector<Simplex> missing;
    for (const auto& s : gamma.all_faces())
        if (!s.empty() && !m2.contains(s)) missing.push_back(s);
    if (!missing.empty()) throw Error("constrain complex not inside target: " + describe_faces(missing));
    if (!verify_collapse_sequence(m, local, m2)) throw Error("local sequence does not collapse M to M'");
    if (!verify_collapse_sequence(k, local, replace_subcomplex(k, m, m2)))
        throw Error("local sequence does not lift to K");
    return local;
}

inline bool is_tree(const Complex& t)
{
    if (t.dim() > 1 || t.faces(0).empty()) return false;
    return t.is_connected() && t.faces(1).size() + 1 == t.faces(0).size();
}

/// Boundary edges of a 2-complex (edges in exactly one triangle).
inline std::vector<Simplex> boundary_edges(const Complex& d)
{
    std::vector<Simplex> r;
    for (const auto& e : d.faces(1))
        if (d.coface_count(e) == 1) r.push_back(e);
    return r;
}

inline bool is_disk(const Complex& d)
{
    if (!d.is_pure(2) || d.pseudomanifold() != Pseudomanifold::with_boundary) return false;
    if (d.reduced_euler_characteristic() != 0 || !d.is_connected()) return false;
    const auto bd = boundary_edges(d);
    Complex c = Complex::from_facets(bd);
    for (const auto& v : c.faces(0))
        if (c.coface_count(v) != 2) return false;
    return c.is_connected();
}

/// Collapses a triangulated disk onto a tree of its 1-skeleton.
inline CollapseSequence collapse_disk_to_tree(const Complex& d, const Complex& t)
{
    if (!is_disk(d)) throw Error("collapse_disk_to_tree: input is not a triangulated disk");
    if (!is_tree(t)) throw Error("collapse_disk_to_tree: target is not a tree");
    if (!t.is_subcomplex_of(d)) throw Error("collapse_disk_to_tree: tree is not in the disk");
    auto r = collapses_to(d, t);
    if (!r) throw Error("collapse_disk_to_tree: greedy strategy failed");
    return r.witness;
}

}  // namespace shellcx
