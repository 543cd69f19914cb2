#pragma once

// Witness searches behind the Kodaira-dimension classification: scan a
// positive-definite shell for a vector whose orthogonal root count lands in
// a target window, describe the root subsystem, and report the weight of
// the induced cusp form.

#include <klat/e8.hpp>
#include <klat/enumerate.hpp>
#include <klat/errors.hpp>
#include <klat/lattice.hpp>
#include <klat/roots.hpp>

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace klat {

// Weight bookkeeping for the quasi-pullback of a weight-12 form along an
// embedding whose complement holds `root_count` roots: each root pair
// raises the weight by one.  The form is cuspidal as soon as at least one
// root is divided out.
struct QpbReport {
    long long root_count = 0;
    long long weight = 0;
    bool is_cusp = false;
    long long domain_dim = 0;
    bool low_weight = false;        // weight <  domain_dim
    bool canonical_weight = false;  // weight == domain_dim
};

inline QpbReport qpb_report(long long root_count, long long domain_dim) {
    check(root_count >= 0 && root_count % 2 == 0, errc::odd_root_count,
          "root systems have evenly many roots");
    check(domain_dim >= 3, errc::invalid_argument, "domain dimension must be >= 3");
    QpbReport r;
    r.root_count = root_count;
    r.weight = 12 + root_count / 2;
    r.is_cusp = root_count >= 2;
    r.domain_dim = domain_dim;
    r.low_weight = r.weight < domain_dim;
    r.canonical_weight = r.weight == domain_dim;
    return r;
}

struct SearchWitness {
    std::vector<LatticeVector> vectors;       // spanning the sublattice divided out
    RootSubsystemDescriptor orthogonal_roots;  // roots orthogonal to all of them
    QpbReport report;
};

namespace detail {

// Shell-scan listener that maintains, for every root representative, the
// running inner product with the partial coordinate vector, and at each
// leaf counts the representatives orthogonal to the full vector.  The scan
// aborts at the first leaf whose doubled count lands in [min, max].
class OrthRootCounter {
public:
    // pairing_rows[c][j] = (G * root_j)[c]; counts are in representatives,
    // so the reported root count is twice the zero count.
    OrthRootCounter(const std::vector<std::vector<std::int32_t>>& pairing_rows,
                    long long min_roots, long long max_roots)
        : n_(pairing_rows.size()), nroots_(pairing_rows.empty() ? 0 : pairing_rows[0].size()),
          min_(min_roots), max_(max_roots) {
        stride_ = (nroots_ + 7) / 8 * 8;
        w_.assign(n_ * stride_, 0);
        for (std::size_t c = 0; c < n_; ++c)
            for (std::size_t j = 0; j < nroots_; ++j)
                w_[c * stride_ + j] = pairing_rows[c][j];
        part_.assign((n_ + 1) * stride_, 0);
        cur_.assign(n_, 0);
    }

    // The wide-integer scan path instantiates this too, though the searches
    // assert up front that the 64-bit path is taken.
    void push(std::size_t level, const Integer& y) { push(level, to_int64(y)); }

    void push(std::size_t level, long long y) {
        cur_[level] = y;
        const std::int32_t yy = static_cast<std::int32_t>(y);
        const std::int32_t* prev = part_.data() + level * stride_;
        const std::int32_t* row = w_.data() + level * stride_;
        std::int32_t* next = part_.data() + (level + 1) * stride_;
        for (std::size_t j = 0; j < stride_; ++j) next[j] = prev[j] + yy * row[j];
    }

    void pop(std::size_t) {}

    bool leaf() {
        const std::int32_t* full = part_.data() + n_ * stride_;
        std::size_t zeros = 0;
        for (std::size_t j = 0; j < nroots_; ++j) zeros += (full[j] == 0);
        long long count = 2 * static_cast<long long>(zeros);
        if (count >= min_ && count <= max_) {
            found_ = true;
            hit_coords_.assign(cur_.begin(), cur_.end());
            hit_count_ = count;
            return false;
        }
        return true;
    }

    bool found() const { return found_; }
    long long hit_count() const { return hit_count_; }
    IVec hit_coords() const {
        IVec v(n_);
        for (std::size_t i = 0; i < n_; ++i) v[i] = hit_coords_[i];
        return v;
    }

private:
    std::size_t n_, nroots_, stride_ = 0;
    long long min_, max_;
    std::vector<std::int32_t> w_;
    std::vector<std::int32_t> part_;
    std::vector<long long> cur_;
    bool found_ = false;
    std::vector<long long> hit_coords_;
    long long hit_count_ = 0;
};

inline std::vector<std::vector<std::int32_t>> pairing_rows_for(const IntegralLattice& L,
                                                               const std::vector<IVec>& roots) {
    std::vector<std::vector<std::int32_t>> rows(L.rank(), std::vector<std::int32_t>(roots.size()));
    for (std::size_t j = 0; j < roots.size(); ++j) {
        IVec w = mul(L.gram(), roots[j]);
        for (std::size_t c = 0; c < L.rank(); ++c) rows[c][j] = to_int64(w[c]);
    }
    return rows;
}

inline void validate_root_window(long long min_roots, long long max_roots) {
    check(min_roots >= 2 && min_roots % 2 == 0, errc::invalid_argument,
          "min_roots must be a positive even integer");
    check(max_roots >= min_roots && max_roots % 2 == 0, errc::invalid_argument,
          "max_roots must be an even integer >= min_roots");
}

// First leaf (over representatives, ascending lex) of the given norm shell
// whose orthogonal-root count lies in the window; nullopt when none does.
inline std::optional<std::pair<IVec, long long>> scan_for_witness(
    const IntegralLattice& L, const std::vector<IVec>& root_reps, const Integer& norm,
    long long min_roots, long long max_roots) {
    ShellContext cx(L);
    assert_internal(cx.fits_int64(norm), "witness scan exceeds the 64-bit coordinate budget");
    OrthRootCounter counter(pairing_rows_for(L, root_reps), min_roots, max_roots);
    scan_norm_shell(cx, norm, /*representatives=*/true, counter);
    if (!counter.found()) return std::nullopt;
    return std::make_pair(counter.hit_coords(), counter.hit_count());
}

// Cross-check a claimed witness with the generic machinery and package it.
inline SearchWitness make_witness(const IntegralLattice& L, std::vector<LatticeVector> vectors,
                                  long long claimed_count, long long domain_dim) {
    std::vector<LatticeVector> roots = roots_orthogonal_to(L, vectors);
    assert_internal(static_cast<long long>(roots.size()) == claimed_count,
                    "orthogonal root recount disagrees with the scan");
    SearchWitness w;
    w.vectors = std::move(vectors);
    w.orthogonal_roots = classify_root_subsystem(roots);
    w.report = qpb_report(claimed_count, domain_dim);
    return w;
}

}  // namespace detail

// First vector l of norm 2d (ascending lex over sign representatives) whose
// orthogonal complement holds between min_roots and max_roots roots.
inline std::optional<SearchWitness> k3_search(long long d, long long min_roots,
                                              long long max_roots) {
    check(d >= 1, errc::invalid_argument, "the polarisation degree must be positive");
    detail::validate_root_window(min_roots, max_roots);
    const IntegralLattice& L = E8Frame::instance().lattice();
    std::vector<IVec> reps;
    for (const LatticeVector& r : shell_representatives(L, 2)) reps.push_back(r.coords);
    auto hit = detail::scan_for_witness(L, reps, Integer(2) * d, min_roots, max_roots);
    if (!hit) return std::nullopt;
    return detail::make_witness(L, {LatticeVector(L, hit->first)}, hit->second, 19);
}

// Fix the lex-first root r; scan its orthogonal complement (a copy of the
// 126-root lattice) for l of norm 2d with the window counted among the
// roots orthogonal to both r and l.
inline std::optional<SearchWitness> hilb2_split_search(long long d, long long max_roots,
                                                       long long min_roots = 2) {
    check(d >= 1, errc::invalid_argument, "the polarisation degree must be positive");
    detail::validate_root_window(min_roots, max_roots);
    const IntegralLattice& L = E8Frame::instance().lattice();
    static const LatticeVector r = shell_representatives(L, 2).front();
    static const OrthogonalComplement comp = orthogonal_complement(L, {r});
    const IntegralLattice& M = *comp.sublattice;

    // Representatives of the roots orthogonal to r, in complement coordinates:
    // (B x, rho) = x . (B^T G rho), so hand the counter B^T G rho per root.
    static const std::vector<std::vector<std::int32_t>> rows = [&] {
        std::vector<IVec> orth;
        for (const LatticeVector& rho : shell_representatives(L, 2))
            if (rho.pair(r) == 0) orth.push_back(rho.coords);
        IMat bt = transpose(comp.embedding);
        std::vector<std::vector<std::int32_t>> out(M.rank(),
                                                   std::vector<std::int32_t>(orth.size()));
        for (std::size_t j = 0; j < orth.size(); ++j) {
            IVec w = mul(bt, mul(L.gram(), orth[j]));
            for (std::size_t c = 0; c < M.rank(); ++c) out[c][j] = to_int64(w[c]);
        }
        return out;
    }();

    ShellContext cx(M);
    assert_internal(cx.fits_int64(Integer(2) * d), "witness scan exceeds the 64-bit budget");
    detail::OrthRootCounter counter(rows, min_roots, max_roots);
    scan_norm_shell(cx, Integer(2) * d, /*representatives=*/true, counter);
    if (!counter.found()) return std::nullopt;
    IVec l8 = mul(comp.embedding, counter.hit_coords());
    return detail::make_witness(L, {r, LatticeVector(L, l8)}, counter.hit_count(), 20);
}

// Half-integer route for d = 3 mod 4: candidates are v = (e1 - e2 + sum x_i e_i)/2
// with the x_i odd, nonincreasing, sum of squares 8c - 2 and sum divisible
// by 4, paired with u = e2 - e1; taken in ascending lex order of (x_3..x_8).
inline std::optional<SearchWitness> nonsplit_search(long long d, long long max_roots,
                                                    long long min_roots = 2) {
    check(d >= 1, errc::invalid_argument, "the polarisation degree must be positive");
    check(d % 4 == 3, errc::bad_residue, "the half-integer construction needs d = 3 mod 4");
    detail::validate_root_window(min_roots, max_roots);
    const E8Frame& frame = E8Frame::instance();
    const IntegralLattice& L = frame.lattice();
    const long long c = (d + 1) / 4;
    const long long target = 8 * c - 2;  // sum of the six odd squares

    // Doubled Euclidean coordinates of the full root system, for direct dots.
    static const std::vector<IVec> roots2 = [&] {
        std::vector<IVec> out;
        for (const LatticeVector& rho : vectors_of_norm(L, 2))
            out.push_back(frame.to_euclid2(rho.coords));
        return out;
    }();

    IVec u2(8, Integer(0));
    u2[0] = -2;
    u2[1] = 2;

    std::vector<long long> xs;
    std::optional<std::pair<IVec, long long>> hit;
    // Nonincreasing positive odd tuples in ascending lex order.
    auto rec = [&](auto&& self, std::size_t idx, long long prev_max, long long remaining,
                   long long parity_sum) -> bool {
        if (idx == 6) {
            if (remaining != 0 || parity_sum % 4 != 0) return true;
            IVec v2(8);
            v2[0] = 1;
            v2[1] = -1;
            for (std::size_t i = 0; i < 6; ++i) v2[2 + i] = xs[i];
            assert_internal(E8Frame::in_e8(v2), "half-integer candidate left the lattice");
            long long zeros = 0;
            for (const IVec& rho2 : roots2) {
                // (v, rho) and (u, rho) via doubled coordinates: dot/4 each.
                Integer pv = 0, pu = 0;
                for (std::size_t k = 0; k < 8; ++k) {
                    pv += v2[k] * rho2[k];
                    pu += u2[k] * rho2[k];
                }
                if (pv == 0 && pu == 0) ++zeros;
            }
            if (zeros >= min_roots && zeros <= max_roots) {
                hit = std::make_pair(v2, zeros);
                return false;
            }
            return true;
        }
        // x_idx odd, 1 <= x <= prev_max, x^2 <= remaining, and small enough
        // that the remaining slots can absorb the rest: ascending lex.
        for (long long x = 1; x <= prev_max && x * x <= remaining; x += 2) {
            if (remaining - x * x > (5 - static_cast<long long>(idx)) * x * x) continue;
            xs.push_back(x);
            bool keep = self(self, idx + 1, x, remaining - x * x, parity_sum + x);
            xs.pop_back();
            if (!keep) return false;
        }
        return true;
    };
    // Lex order on (x_3,...,x_8) ascends with the first coordinate, so try
    // the leading value upward; the recursion above already does that.
    rec(rec, 0, target, target, 0);
    if (!hit) return std::nullopt;

    LatticeVector u(L, frame.to_alpha(u2));
    LatticeVector v(L, frame.to_alpha(hit->first));
    assert_internal(u.norm() == 2 && v.norm() == Integer(2) * c && u.pair(v) == -1,
                    "half-integer witness pair has the wrong Gram matrix");
    assert_internal(Integer(4) * c - 1 == d, "pair determinant mismatch");
    return detail::make_witness(L, {u, v}, hit->second, 20);
}

enum class ModuliCase { K3, Hilb2Split, Hilb2NonSplit };

enum class VerdictKind { GeneralType, KodairaNonNegative, Inconclusive };

inline const char* to_string(VerdictKind k) {
    switch (k) {
        case VerdictKind::GeneralType:        return "GeneralType";
        case VerdictKind::KodairaNonNegative: return "KodairaNonNegative";
        case VerdictKind::Inconclusive:       return "Inconclusive";
    }
    return "?";
}

struct Verdict {
    VerdictKind kind = VerdictKind::Inconclusive;
    std::optional<SearchWitness> witness;
};

// Two-stage test: a low-weight cusp form (2..dim-14 roots... expressed via
// the window below) forces general type; a canonical-weight form (exact
// window top) shows the Kodaira dimension is nonnegative.
inline Verdict classify(ModuliCase mc, long long d) {
    Verdict v;
    auto run = [&](auto&& search, long long gt_max, long long knn) {
        if (auto w = search(2, gt_max)) {
            v.kind = VerdictKind::GeneralType;
            v.witness = std::move(w);
        } else if (auto w2 = search(knn, knn)) {
            v.kind = VerdictKind::KodairaNonNegative;
            v.witness = std::move(w2);
        }
    };
    switch (mc) {
        case ModuliCase::K3:
            run([&](long long lo, long long hi) { return k3_search(d, lo, hi); }, 12, 14);
            break;
        case ModuliCase::Hilb2Split:
            run([&](long long lo, long long hi) { return hilb2_split_search(d, hi, lo); }, 14, 16);
            break;
        case ModuliCase::Hilb2NonSplit:
            check(d % 4 == 3, errc::bad_residue, "the non-split series needs d = 3 mod 4");
            run([&](long long lo, long long hi) { return nonsplit_search(d, hi, lo); }, 14, 16);
            break;
    }
    return v;
}

}  // namespace klat
