#pragma once

// Shared helpers for the test suite: deterministic RNG, random unimodular
// basis changes, independent brute-force shell counters (used as oracles for
// the production enumerator), and a popen-based runner for the CLI binary.

#include <klat/enumerate.hpp>
#include <klat/errors.hpp>
#include <klat/lattice.hpp>
#include <klat/matrix.hpp>
#include <klat/numeric.hpp>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace testsupport {

// True when f() throws a klat::error carrying exactly the expected code.
inline bool throws_code(klat::errc expected, const std::function<void()>& f) {
    try {
        f();
    } catch (const klat::error& e) {
        return e.code() == expected;
    }
    return false;
}

inline std::mt19937_64 make_rng(std::uint64_t seed) { return std::mt19937_64(seed); }

// Random unimodular matrix built from elementary row operations with small
// coefficients, so entries stay modest.
inline klat::IMat random_unimodular(std::size_t n, std::mt19937_64& gen, int ops = 10) {
    klat::IMat t = klat::IMat::identity(n);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::uniform_int_distribution<int> coeff(-2, 2);
    std::uniform_int_distribution<int> kind(0, 2);
    for (int k = 0; k < ops; ++k) {
        std::size_t i = pick(gen), j = pick(gen);
        switch (kind(gen)) {
            case 0: {
                if (i == j) break;
                int c = coeff(gen);
                for (std::size_t col = 0; col < n; ++col) t(i, col) += klat::Integer(c) * t(j, col);
                break;
            }
            case 1:
                t.swap_rows(i, j);
                break;
            default:
                for (std::size_t col = 0; col < n; ++col) t(i, col) = -t(i, col);
                break;
        }
    }
    return t;
}

// Exact inverse of a unimodular integer matrix.
inline klat::IMat unimodular_inverse(const klat::IMat& t) {
    klat::QMat qi = klat::inverse(klat::to_rational(t));
    klat::IMat out(t.rows(), t.cols());
    for (std::size_t i = 0; i < t.rows(); ++i)
        for (std::size_t j = 0; j < t.cols(); ++j) {
            if (klat::denominator(qi(i, j)) != 1)
                throw std::logic_error("unimodular_inverse: matrix was not unimodular");
            out(i, j) = klat::numerator(qi(i, j));
        }
    return out;
}

// Dumb exact shell counter: walks the full coordinate box derived from the
// diagonal of the inverse Gram matrix and tests x^T G x == n directly.  No
// recursion tricks, no pruning beyond the box; use only for small rank/norm.
inline long long brute_shell_count(const klat::IntegralLattice& L, long long n) {
    const std::size_t r = L.rank();
    klat::QMat gi = klat::inverse(klat::to_rational(L.gram()));
    std::vector<long long> box(r);
    for (std::size_t i = 0; i < r; ++i) {
        klat::Rational b = klat::Rational(n) * gi(i, i);
        box[i] = klat::to_int64(klat::isqrt(klat::floor_rat(b))) + 1;
    }
    klat::IVec x(r, 0);
    long long count = 0;
    std::vector<long long> cursor(r);
    for (std::size_t i = 0; i < r; ++i) cursor[i] = -box[i];
    while (true) {
        for (std::size_t i = 0; i < r; ++i) x[i] = cursor[i];
        if (klat::bilinear(x, L.gram(), x) == n) ++count;
        std::size_t pos = 0;
        while (pos < r && cursor[pos] == box[pos]) {
            cursor[pos] = -box[pos];
            ++pos;
        }
        if (pos == r) break;
        ++cursor[pos];
    }
    return count;
}

// Independent counter for the standard model of D_k: integer vectors with an
// even coordinate sum and squared length n.
inline long long euclid_Dk_count(int k, long long n) {
    long long count = 0;
    std::vector<long long> y(static_cast<std::size_t>(k));
    auto rec = [&](auto&& self, int idx, long long rem, long long parity) -> void {
        if (idx == k) {
            if (rem == 0 && parity % 2 == 0) ++count;
            return;
        }
        long long b = 0;
        while ((b + 1) * (b + 1) <= rem) ++b;
        for (long long v = -b; v <= b; ++v) self(self, idx + 1, rem - v * v, parity + v);
    };
    rec(rec, 0, n, 0);
    return count;
}

// Independent counter for the standard model of E8 in doubled coordinates:
// z in Z^8 with all z_i of equal parity, sum z_i divisible by 4, and
// sum z_i^2 == 4n.  (z = 2y for the integer part, z odd for the half part.)
inline long long euclid_E8_count(long long n) {
    const long long target = 4 * n;
    long long count = 0;
    auto rec = [&](auto&& self, int idx, long long rem, long long sum, int parity) -> void {
        if (idx == 8) {
            if (rem == 0 && sum % 4 == 0) ++count;
            return;
        }
        long long b = 0;
        while ((b + 1) * (b + 1) <= rem) ++b;
        for (long long v = -b; v <= b; ++v) {
            if (((v % 2) + 2) % 2 != parity) continue;
            self(self, idx + 1, rem - v * v, sum + v, parity);
        }
    };
    rec(rec, 0, target, 0, 0);  // all even
    rec(rec, 0, target, 0, 1);  // all odd
    return count;
}

// Storage-free shell counter built on the production scanner; lets tests
// compare large shells against oracles without materialising the vectors.
struct CountingListener {
    long long count = 0;
    template <class T>
    void push(std::size_t, const T&) {}
    void pop(std::size_t) {}
    bool leaf() {
        ++count;
        return true;
    }
};

inline long long scanned_shell_count(const klat::ShellContext& cx, const klat::Integer& n,
                                     bool representatives = false) {
    CountingListener lis;
    klat::scan_norm_shell(cx, n, representatives, lis);
    return lis.count;
}

struct CliResult {
    std::string out;
    int status = -1;
};

inline const char* cli_path() { return std::getenv("KLAT_CLI"); }

// Runs the CLI with a shell-quoted argument string.  By default captures
// stdout and discards stderr; with capture_stderr the roles are swapped.
// env, when given, is prepended verbatim (e.g. "KLAT_THREADS=3").
inline CliResult run_cli(const std::string& args, bool capture_stderr = false,
                         const std::string& env = {}) {
    const char* path = cli_path();
    if (path == nullptr) throw std::runtime_error("KLAT_CLI is not set");
    std::string cmd = env.empty() ? std::string() : env + " ";
    cmd += std::string("'") + path + "' " + args;
    cmd += capture_stderr ? " 2>&1 1>/dev/null" : " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (pipe == nullptr) throw std::runtime_error("popen failed");
    CliResult res;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) res.out.append(buf, got);
    int rc = pclose(pipe);
    res.status = (rc != -1 && WIFEXITED(rc)) ? WEXITSTATUS(rc) : -1;
    return res;
}

inline std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string::npos) end = text.size();
        if (end > start) lines.push_back(text.substr(start, end - start));
        start = end + 1;
    }
    return lines;
}

}  // namespace testsupport
