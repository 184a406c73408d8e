#pragma once

#include <random>
#include <set>

#include <shellcx/complex.hpp>

namespace testsupport {

using shellcx::Simplex;

/// All nonempty subsets of the given facets, computed by bit enumeration.
inline std::set<Simplex> brute_faces(const std::vector<Simplex>& facets)
{
    std::set<Simplex> out;
    for (const auto& f : facets) {
        const unsigned n = static_cast<unsigned>(f.size());
        for (unsigned m = 1; m < (1u << n); ++m) {
            Simplex s;
            for (unsigned i = 0; i < n; ++i)
                if (m & (1u << i)) s.push_back(f[i]);
            out.insert(s);
        }
    }
    return out;
}

inline long long brute_chi(const std::vector<Simplex>& facets)
{
    auto fs = brute_faces(facets);
    long long chi = facets.empty() ? 0 : -1;
    for (const auto& s : fs) chi += (s.size() % 2 == 1) ? 1 : -1;
    return chi;
}

inline Simplex random_subset(std::mt19937_64& rng, int nverts, int size)
{
    std::vector<int> vs(nverts);
    std::iota(vs.begin(), vs.end(), 0);
    std::shuffle(vs.begin(), vs.end(), rng);
    Simplex s(vs.begin(), vs.begin() + size);
    std::sort(s.begin(), s.end());
    return s;
}

/// Random complex given by facets of dimension 0..maxdim on nverts vertices.
inline std::vector<Simplex> random_facets(std::mt19937_64& rng, int nverts, int nfacets, int maxdim)
{
    std::uniform_int_distribution<int> dim(0, maxdim);
    std::vector<Simplex> fs;
    for (int i = 0; i < nfacets; ++i) fs.push_back(random_subset(rng, nverts, std::min(nverts, dim(rng) + 1)));
    return fs;
}

/// Random pure 2-complex with exactly ntris distinct triangles.
inline std::vector<Simplex> random_triangles(std::mt19937_64& rng, int nverts, int ntris)
{
    std::set<Simplex> s;
    while (static_cast<int>(s.size()) < ntris) s.insert(random_subset(rng, nverts, 3));
    return {s.begin(), s.end()};
}

/// Random pure complex of dimension d with up to nfacets facets.
inline std::vector<Simplex> random_pure(std::mt19937_64& rng, int nverts, int nfacets, int d)
{
    std::set<Simplex> s;
    for (int i = 0; i < nfacets; ++i) s.insert(random_subset(rng, nverts, d + 1));
    return {s.begin(), s.end()};
}

}  // namespace testsupport
