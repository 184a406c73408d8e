#pragma once

#include <memory>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "collapse.hpp"
#include "parallel.hpp"

namespace shellcx {

using ShellingOrder = std::vector<Simplex>;

struct ShellingCheck {
    bool ok = false;
    /// First index (0-based) whose attachment is not pure of codimension one; -1 when ok.
    long long failing_index = -1;
    explicit operator bool() const { return ok; }
};

namespace detail {

inline void require_pure(const Complex& k, const char* who)
{
    if (!k.is_pure()) throw Error(std::string(who) + ": complex is not pure");
}

/// Vertices v of s such that s minus v lies in the union so far.
template <class InUnion>
Simplex restriction_face(const Simplex& s, InUnion&& in_union)
{
    Simplex r;
    Simplex ridge;
    for (std::size_t i = 0; i < s.size(); ++i) {
        ridge.clear();
        for (std::size_t j = 0; j < s.size(); ++j)
            if (j != i) ridge.push_back(s[j]);
        if (in_union(ridge)) r.push_back(s[i]);
    }
    return r;
}

}  // namespace detail

/**
 * Checks that each facet meets the union of the earlier ones in a pure
 * complex of codimension one. That happens exactly when the set R of
 * vertices whose opposite ridge is already present is nonempty and R
 * itself is not yet present.
 */
inline ShellingCheck verify_shelling(const Complex& k, const ShellingOrder& order)
{
    detail::require_pure(k, "verify_shelling");
    std::vector<Simplex> sorted;
    for (const auto& f : order) sorted.push_back(make_simplex(f));
    std::vector<Simplex> given = sorted;
    std::sort(sorted.begin(), sorted.end());
    std::vector<Simplex> facets = k.facets();
    std::sort(facets.begin(), facets.end());
    if (sorted != facets) throw Error("verify_shelling: order is not a permutation of the facets");
    std::unordered_set<Simplex, SimplexHash> present;
    for (std::size_t i = 0; i < given.size(); ++i) {
        const Simplex& s = given[i];
        if (i > 0) {
            Simplex r = detail::restriction_face(s, [&](const Simplex& x) { return present.count(x) != 0; });
            if (r.empty() || present.count(r)) return {false, static_cast<long long>(i)};
        }
        for_each_subset(s, [&](const Simplex& x) { present.insert(x); });
    }
    return {true, -1};
}

struct ShellOptions {
    long long budget = default_budget;
    /// Cheap necessary conditions (strong connectivity, connected vertex links, sign of χ̃).
    bool prechecks = true;
};

struct ShellResult {
    Verdict verdict = Verdict::no;
    ShellingOrder order;
    long long nodes = 0;
    std::string reason;
    explicit operator bool() const { return verdict == Verdict::yes; }
};

/// Facets graph connected through shared ridges.
inline bool strongly_connected(const Complex& k)
{
    const auto& fs = k.facets();
    if (fs.empty()) return false;
    const int d = dimension(fs.front());
    if (d <= 0) return true;
    std::map<Simplex, std::size_t> idx;
    for (std::size_t i = 0; i < fs.size(); ++i) idx[fs[i]] = i;
    std::vector<std::size_t> parent(fs.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& r : k.faces(d - 1)) {
        auto cs = k.cofaces(r);
        for (std::size_t j = 1; j < cs.size(); ++j) parent[find(idx[cs[j]])] = find(idx[cs[0]]);
    }
    for (std::size_t i = 0; i < fs.size(); ++i)
        if (find(i) != find(0)) return false;
    return true;
}

/// A reason the complex cannot be shellable, or empty if none of the quick tests fire.
inline std::string shellability_obstruction(const Complex& k)
{
    const int d = k.dim();
    if (!strongly_connected(k)) return "facets are not connected through ridges";
    if (d >= 2 && !vertex_links_connected(k)) return "some vertex link is disconnected";
    const long long chi = k.reduced_euler_characteristic();
    if ((d % 2 == 0 ? chi : -chi) < 0) return "reduced Euler characteristic has the wrong sign";
    return {};
}

/**
 * Backtracking over facet orders. Failed sets of already-placed facets are
 * memoised as bitmasks, since the union depends only on the set.
 */
inline ShellResult decide_shellable(const Complex& k, const ShellOptions& opt = {})
{
    detail::require_pure(k, "decide_shellable");
    ShellResult res;
    const auto& fs = k.facets();
    const std::size_t n = fs.size();
    if (n == 1) {
        res.verdict = Verdict::yes;
        res.order = fs;
        return res;
    }
    if (opt.prechecks) {
        res.reason = shellability_obstruction(k);
        if (!res.reason.empty()) return res;
    }
    const int c = static_cast<int>(fs.front().size());
    std::vector<std::vector<std::size_t>> sub(n);
    std::vector<std::vector<std::size_t>> ridges(n);
    std::map<Simplex, std::size_t> fid;
    auto id_of = [&](const Simplex& s) {
        auto it = fid.find(s);
        if (it == fid.end()) it = fid.emplace(s, fid.size()).first;
        return it->second;
    };
    for (std::size_t i = 0; i < n; ++i)
        for_each_subset(fs[i], [&](const Simplex& s) {
            const std::size_t id = id_of(s);
            sub[i].push_back(id);
            if (static_cast<int>(s.size()) == c - 1) ridges[i].push_back(id);
        });
    std::vector<int> count(fid.size(), 0);
    std::vector<std::uint8_t> placed(n, 0);
    const std::size_t words = (n + 63) / 64;
    std::vector<std::uint64_t> mask(words, 0);
    struct MaskHash {
        std::size_t operator()(const std::vector<std::uint64_t>& m) const noexcept
        {
            std::size_t h = 0;
            for (auto w : m) h = h * 1000003u ^ std::hash<std::uint64_t>{}(w);
            return h;
        }
    };
    std::unordered_set<std::vector<std::uint64_t>, MaskHash> dead;
    ShellingOrder order;
    bool exhausted = false;

    auto attachable = [&](std::size_t i, int& shared) {
        Simplex r;
        shared = 0;
        const Simplex& s = fs[i];
        Simplex ridge;
        for (std::size_t a = 0; a < s.size(); ++a) {
            ridge.clear();
            for (std::size_t b = 0; b < s.size(); ++b)
                if (b != a) ridge.push_back(s[b]);
            auto it = fid.find(ridge);
            if (count[it->second] > 0) {
                r.push_back(s[a]);
                ++shared;
            }
        }
        if (r.empty()) return false;
        return count[fid.at(r)] == 0;
    };
    auto place = [&](std::size_t i, int delta) {
        for (std::size_t id : sub[i]) count[id] += delta;
        placed[i] = delta > 0;
        mask[i / 64] ^= std::uint64_t{1} << (i % 64);
    };

    std::function<bool(std::size_t)> go = [&](std::size_t depth) -> bool {
        if (depth == n) return true;
        if (++res.nodes > opt.budget) {
            exhausted = true;
            return false;
        }
        if (dead.count(mask)) return false;
        std::vector<std::pair<int, std::size_t>> cand;
        for (std::size_t i = 0; i < n; ++i) {
            if (placed[i]) continue;
            int shared = 0;
            if (depth == 0 || attachable(i, shared)) cand.emplace_back(-shared, i);
        }
        std::stable_sort(cand.begin(), cand.end());
        for (const auto& [neg, i] : cand) {
            place(i, +1);
            order.push_back(fs[i]);
            if (go(depth + 1)) return true;
            order.pop_back();
            place(i, -1);
            if (exhausted) return false;
        }
        dead.insert(mask);
        return false;
    };
    const bool ok = go(0);
    res.verdict = ok ? Verdict::yes : (exhausted ? Verdict::budget_exceeded : Verdict::no);
    if (ok) res.order = order;
    return res;
}

/// One step of a k-decomposition: shed σ, recurse into its link and its deletion.
struct DecompositionNode {
    /// Set on leaves: the complex is this single simplex.
    std::optional<Simplex> simplex;
    Simplex sigma;
    std::shared_ptr<const DecompositionNode> link;
    std::shared_ptr<const DecompositionNode> rest;
};

using DecompositionTree = std::shared_ptr<const DecompositionNode>;

struct DecompResult {
    Verdict verdict = Verdict::no;
    DecompositionTree tree;
    long long nodes = 0;
    explicit operator bool() const { return verdict == Verdict::yes; }
};

inline bool is_single_simplex(const Complex& k) { return k.facets().size() == 1; }

/**
 * k-decomposability by recursive search. |σ| counts vertices, so the link
 * of σ must be pure of dimension d - |σ|; a facet has link {∅}, which is
 * the (-1)-simplex and counts as a base case.
 */
inline DecompResult decide_k_decomposable(const Complex& k, int kk, long long budget = default_budget)
{
    if (k.empty()) throw Error("decide_k_decomposable: empty complex");
    detail::require_pure(k, "decide_k_decomposable");
    if (kk < 0) throw Error("decide_k_decomposable: k must be nonnegative");
    DecompResult res;
    std::unordered_set<CanonicalKey, KeyHash> dead;
    std::map<std::vector<Simplex>, DecompositionTree> solved;
    bool exhausted = false;

    std::function<DecompositionTree(const Complex&)> go = [&](const Complex& c) -> DecompositionTree {
        if (is_single_simplex(c)) {
            auto leaf = std::make_shared<DecompositionNode>();
            leaf->simplex = c.facets().front();
            return leaf;
        }
        if (++res.nodes > budget) {
            exhausted = true;
            return nullptr;
        }
        auto hit = solved.find(c.facets());
        if (hit != solved.end()) return hit->second;
        CanonicalKey key = canonical_form(c);
        if (dead.count(key)) return nullptr;
        const int d = c.dim();
        for (int sd = 0; sd <= std::min(kk, d); ++sd) {
            for (const auto& sigma : c.faces(sd)) {
                const int want = d - static_cast<int>(sigma.size());
                Complex lk = c.link(sigma);
                if (!lk.is_pure(want)) continue;
                Complex del = c.deletion(sigma);
                if (del.empty() || !del.is_pure(d)) continue;
                DecompositionTree a = go(lk);
                if (exhausted) return nullptr;
                if (!a) continue;
                DecompositionTree b = go(del);
                if (exhausted) return nullptr;
                if (!b) continue;
                auto node = std::make_shared<DecompositionNode>();
                node->sigma = sigma;
                node->link = a;
                node->rest = b;
                solved[c.facets()] = node;
                return node;
            }
        }
        dead.insert(std::move(key));
        return nullptr;
    };
    res.tree = go(k);
    res.verdict = res.tree ? Verdict::yes : (exhausted ? Verdict::budget_exceeded : Verdict::no);
    return res;
}

/// Replays a decomposition tree against K.
inline bool verify_decomposition(const Complex& k, int kk, const DecompositionTree& t)
{
    if (!t) return false;
    if (t->simplex) return is_single_simplex(k) && k.facets().front() == *t->simplex;
    if (!k.is_pure()) return false;
    const int d = k.dim();
    const Simplex& s = t->sigma;
    if (s.empty() || dimension(s) > kk || !k.contains(s)) return false;
    Complex lk = k.link(s);
    Complex del = k.deletion(s);
    if (!lk.is_pure(d - static_cast<int>(s.size()))) return false;
    if (del.empty() || !del.is_pure(d)) return false;
    return verify_decomposition(lk, kk, t->link) && verify_decomposition(del, kk, t->rest);
}

enum class HachimoriStatus { shellable, not_shellable, budget_exceeded };

inline const char* to_string(HachimoriStatus s)
{
    switch (s) {
    case HachimoriStatus::shellable: return "shellable";
    case HachimoriStatus::not_shellable: return "not_shellable";
    default: return "budget_exceeded";
    }
}

struct HachimoriOptions {
    /// Triangles allowed in the removal set; all triangles when empty.
    std::vector<Simplex> pool;
    /// Maximum number of removal sets tried.
    long long budget = default_budget;
    int jobs = 1;
};

struct HachimoriResult {
    HachimoriStatus status = HachimoriStatus::not_shellable;
    std::vector<Simplex> removed;
    CollapseSequence witness;
    long long tried = 0;
    std::string reason;
};

/**
 * Shellability of the second barycentric subdivision, decided on K itself:
 * connected vertex links, plus χ̃(K) triangles whose removal leaves a
 * collapsible complex. Removal sets are tried in lexicographic order.
 */
inline HachimoriResult hachimori_decide_sd2(const Complex& k, const HachimoriOptions& opt = {})
{
    if (k.dim() != 2) throw Error("hachimori_decide_sd2 needs a 2-dimensional complex");
    HachimoriResult res;
    auto bad = disconnected_links(k);
    if (!bad.empty()) {
        res.reason = "vertex " + std::to_string(bad.front()) + " has a disconnected link";
        return res;
    }
    const long long chi = k.reduced_euler_characteristic();
    if (chi < 0) {
        res.reason = "negative reduced Euler characteristic";
        return res;
    }
    auto g = std::make_shared<const FaceGraph>(k);
    std::vector<std::size_t> pool;
    if (opt.pool.empty()) {
        auto [a, b] = g->range(3);
        for (std::size_t i = a; i < b; ++i) pool.push_back(i);
    } else {
        for (const auto& t : opt.pool) {
            const std::size_t id = g->id(make_simplex(t));
            if (id == Complex::npos || g->card(id) != 3) throw Error("pool entry is not a triangle of K");
            pool.push_back(id);
        }
        std::sort(pool.begin(), pool.end());
        pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
    }
    const CollapseState base(g);
    const std::size_t r = static_cast<std::size_t>(chi);
    if (r > pool.size()) {
        res.reason = "fewer candidate triangles than the reduced Euler characteristic";
        return res;
    }
    std::vector<std::size_t> comb(r);
    std::iota(comb.begin(), comb.end(), 0);
    bool more = true;
    auto advance = [&] {
        if (r == 0) return false;
        std::size_t i = r;
        while (i > 0) {
            --i;
            if (comb[i] < pool.size() - r + i) {
                ++comb[i];
                for (std::size_t j = i + 1; j < r; ++j) comb[j] = comb[j - 1] + 1;
                return true;
            }
        }
        return false;
    };
    const std::size_t batch = 256;
    while (more) {
        std::vector<std::vector<std::size_t>> sets;
        while (more && sets.size() < batch) {
            if (res.tried + static_cast<long long>(sets.size()) >= opt.budget) break;
            sets.push_back(comb);
            more = advance();
        }
        if (sets.empty()) {
            res.status = HachimoriStatus::budget_exceeded;
            return res;
        }
        const std::size_t hit = parallel_find_first(sets.size(), opt.jobs, [&](std::size_t i) {
            CollapseState st = base;
            for (std::size_t p : sets[i]) st.remove_maximal(pool[p]);
            return greedy_collapsible(st);
        });
        if (hit < sets.size()) {
            res.tried += static_cast<long long>(hit) + 1;
            CollapseState st = base;
            for (std::size_t p : sets[hit]) {
                st.remove_maximal(pool[p]);
                res.removed.push_back(g->simplex(pool[p]));
            }
            greedy_collapsible(st, &res.witness);
            res.status = HachimoriStatus::shellable;
            return res;
        }
        res.tried += static_cast<long long>(sets.size());
        if (more && res.tried >= opt.budget) {
            res.status = HachimoriStatus::budget_exceeded;
            return res;
        }
    }
    res.reason = "no removal set of the required size leaves a collapsible complex";
    return res;
}

}  // namespace shellcx
