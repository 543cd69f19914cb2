#pragma once

// Root combinatorics on positive definite lattices: norm-2 shells filtered
// by orthogonality constraints, and ADE classification of root subsystems
// via connected components of the non-orthogonality graph.

#include <klat/enumerate.hpp>
#include <klat/errors.hpp>
#include <klat/lattice.hpp>

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace klat {

// Sublist of vectors_of_norm(L, 2) pairing to zero with every member of S.
inline std::vector<LatticeVector> roots_orthogonal_to(const IntegralLattice& L,
                                                      const std::vector<LatticeVector>& S) {
    std::vector<LatticeVector> roots = vectors_of_norm(L, 2);
    std::vector<LatticeVector> out;
    for (const LatticeVector& r : roots) {
        bool orth = true;
        for (const LatticeVector& s : S)
            if (bilinear(r.coords, L.gram(), s.coords) != 0) { orth = false; break; }
        if (orth) out.push_back(r);
    }
    return out;
}

struct RootSubsystemDescriptor {
    // (family, rank) per irreducible component, sorted by family letter then
    // rank descending; repeats are kept (e.g. three A1 entries).
    std::vector<std::pair<char, std::size_t>> components;
    std::size_t total_roots = 0;

    // Root count of one irreducible ADE system.
    static std::size_t component_roots(char family, std::size_t rank) {
        if (family == 'A') return rank * (rank + 1);
        if (family == 'D') return 2 * rank * (rank - 1);
        if (rank == 6) return 72;
        if (rank == 7) return 126;
        return 240;
    }

    // Compact form like "A2+3A1", "2A2", "E8"; "0" for the empty system.
    std::string to_string() const {
        if (components.empty()) return "0";
        std::string out;
        std::size_t i = 0;
        while (i < components.size()) {
            std::size_t j = i;
            while (j < components.size() && components[j] == components[i]) ++j;
            if (!out.empty()) out += "+";
            if (j - i > 1) out += std::to_string(j - i);
            out += components[i].first + std::to_string(components[i].second);
            i = j;
        }
        return out;
    }

    bool operator==(const RootSubsystemDescriptor& o) const {
        return components == o.components && total_roots == o.total_roots;
    }
};

namespace detail {

// Rank of a set of integer vectors, by exact elimination over Q.
inline std::size_t span_rank(const std::vector<const IVec*>& vecs, std::size_t dim) {
    QMat m(vecs.size(), dim);
    for (std::size_t i = 0; i < vecs.size(); ++i)
        for (std::size_t j = 0; j < dim; ++j) m(i, j) = Rational((*vecs[i])[j]);
    std::size_t rank = 0;
    for (std::size_t col = 0; col < dim && rank < vecs.size(); ++col) {
        std::size_t p = rank;
        while (p < vecs.size() && m(p, col) == 0) ++p;
        if (p == vecs.size()) continue;
        m.swap_rows(rank, p);
        for (std::size_t i = rank + 1; i < vecs.size(); ++i) {
            if (m(i, col) == 0) continue;
            Rational f = m(i, col) / m(rank, col);
            for (std::size_t j = col; j < dim; ++j) m(i, j) -= f * m(rank, j);
        }
        ++rank;
    }
    return rank;
}

}  // namespace detail

// Identifies the ADE type of a closed root set (norm 2, negation-closed):
// one vector per +/- pair, connected components of the non-orthogonality
// graph, each component recognised by its (rank, root count) pair.  Among
// ADE systems of rank <= 8 that key is unambiguous — the lone collision
// D3 = A3 is normalised to A3 by never emitting D below rank 4.
inline RootSubsystemDescriptor classify_root_subsystem(const std::vector<LatticeVector>& roots) {
    RootSubsystemDescriptor desc;
    if (roots.empty()) return desc;

    const IntegralLattice& L = *roots[0].lattice;
    std::map<IVec, std::size_t> index;
    for (const LatticeVector& r : roots) {
        check(r.lattice == roots[0].lattice, errc::not_a_root_set,
              "roots from different lattices");
        check(r.norm() == 2, errc::not_a_root_set, "root set contains a vector of norm != 2");
        index.emplace(r.coords, index.size());
    }
    check(index.size() == roots.size(), errc::not_a_root_set, "duplicate vectors in root set");
    for (const LatticeVector& r : roots) {
        IVec neg(r.coords.size());
        for (std::size_t i = 0; i < neg.size(); ++i) neg[i] = -r.coords[i];
        check(index.count(neg) == 1, errc::not_a_root_set, "root set not closed under negation");
    }

    // One representative per +/- pair: first nonzero coordinate positive.
    std::vector<const IVec*> reps;
    for (const auto& [coords, idx] : index) {
        for (const Integer& c : coords) {
            if (c == 0) continue;
            if (c > 0) reps.push_back(&coords);
            break;
        }
    }
    assert_internal(reps.size() * 2 == roots.size(), "asymmetric root set after +/- pairing");
    desc.total_roots = roots.size();

    // Union-find over the non-orthogonality graph of representatives.
    std::vector<std::size_t> parent(reps.size());
    for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t i = 0; i < reps.size(); ++i)
        for (std::size_t j = i + 1; j < reps.size(); ++j)
            if (bilinear(*reps[i], L.gram(), *reps[j]) != 0) parent[find(i)] = find(j);

    std::map<std::size_t, std::vector<const IVec*>> comps;
    for (std::size_t i = 0; i < reps.size(); ++i) comps[find(i)].push_back(reps[i]);

    for (const auto& [root, members] : comps) {
        std::size_t rank = detail::span_rank(members, L.rank());
        std::size_t count = 2 * members.size();
        char family = 0;
        if (count == rank * (rank + 1)) family = 'A';
        else if (rank >= 4 && count == 2 * rank * (rank - 1)) family = 'D';
        else if ((rank == 6 && count == 72) || (rank == 7 && count == 126) ||
                 (rank == 8 && count == 240)) family = 'E';
        check(family != 0, errc::unrecognised_component,
              "component of rank " + std::to_string(rank) + " with " +
                  std::to_string(count) + " roots matches no ADE system");
        desc.components.emplace_back(family, rank);
    }
    std::sort(desc.components.begin(), desc.components.end(),
              [](const auto& a, const auto& b) {
                  if (a.first != b.first) return a.first < b.first;
                  return a.second > b.second;
              });
    return desc;
}

}  // namespace klat
