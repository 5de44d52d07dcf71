#pragma once

// Test-only brute-force oracles, independent of the library's optimized
// paths: the assignment minimum is enumerated over all injective
// assignments, the exact weight over all subsets with a nonzero rational
// determinant, and torus verdicts over a box of primitive normalized
// weight vectors.

#include "gitstab/forms.hpp"
#include "gitstab/lattice.hpp"
#include "gitstab/linalg.hpp"
#include "gitstab/weights.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

namespace gitstab::testing {

// Minimum of sum_i aff(I_i) over distinct tuples with I_i in Supp(f_i),
// by full enumeration.
inline std::optional<Int> oracle_omega_combinatorial(const TuplePoint& tuple,
                                                     const NormalizedOps& lambda)
{
    auto tuples = distinct_support_tuples(tuple);
    std::optional<Int> best;
    for (const auto& tup : tuples) {
        Int sum = 0;
        for (const auto& mono : tup)
            sum += affine_weight_monomial(mono, lambda);
        if (!best || sum < *best)
            best = sum;
    }
    return best;
}

// Minimum subset affine weight over k-subsets of the union support with
// nonvanishing coefficient minor, by full enumeration.
inline std::optional<Int> oracle_omega_exact(const TuplePoint& tuple, const NormalizedOps& lambda)
{
    const int k = tuple.k();
    std::vector<ExponentVector> columns = tuple.union_support();
    const int m = static_cast<int>(columns.size());
    std::optional<Int> best;
    std::vector<int> idx;
    std::function<void(int)> rec = [&](int start) {
        if (static_cast<int>(idx.size()) == k) {
            RationalMatrix mat(static_cast<std::size_t>(k), std::vector<Rational>(static_cast<std::size_t>(k)));
            for (int r = 0; r < k; ++r)
                for (int c = 0; c < k; ++c)
                    mat[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
                        tuple.generator(r).coefficient(columns[static_cast<std::size_t>(idx[static_cast<std::size_t>(c)])]);
            if (determinant(std::move(mat)) != 0) {
                Int sum = 0;
                for (int c : idx)
                    sum += affine_weight_monomial(columns[static_cast<std::size_t>(c)], lambda);
                if (!best || sum < *best)
                    best = sum;
            }
            return;
        }
        for (int i = start; i < m; ++i) {
            idx.push_back(i);
            rec(i + 1);
            idx.pop_back();
        }
    };
    rec(0);
    return best;
}

// All normalized weight vectors (not necessarily primitive; classification
// is scale-invariant) with entries bounded by `bound`, enumerated
// recursively: a_0 >= ... >= a_n, sum zero, not all zero.
inline std::vector<std::vector<Int>> enumerate_normalized_box(int n, long long bound)
{
    std::vector<std::vector<Int>> out;
    std::vector<long long> acc(static_cast<std::size_t>(n + 1));
    std::function<void(int, long long, long long)> rec = [&](int pos, long long prev, long long sum) {
        if (pos == n) {
            long long last = -sum;
            if (last > prev || last < -bound)
                return;
            acc[static_cast<std::size_t>(n)] = last;
            bool nonzero = false;
            for (long long v : acc)
                if (v != 0)
                    nonzero = true;
            if (!nonzero)
                return;
            long long g = 0;
            for (long long v : acc)
                g = std::gcd(g, v);
            if (g != 1)
                return; // keep one representative per ray
            out.emplace_back(acc.begin(), acc.end());
            return;
        }
        for (long long v = std::min(prev, bound); v >= -bound; --v) {
            acc[static_cast<std::size_t>(pos)] = v;
            rec(pos + 1, v, sum + v);
        }
    };
    rec(0, bound, 0);
    return out;
}

// Deterministic small-integer draws (the stream must not depend on the
// standard library's distribution implementations).
struct Rng {
    std::mt19937_64 engine;
    explicit Rng(std::uint64_t seed) : engine(seed) {}
    long long below(long long m) { return static_cast<long long>(engine() % static_cast<std::uint64_t>(m)); }
    long long range(long long lo, long long hi) { return lo + below(hi - lo + 1); }
};

inline ExponentVector random_monomial(Rng& rng, int n, int d)
{
    // Random composition of d into n+1 parts.
    std::vector<int> exps(static_cast<std::size_t>(n + 1), 0);
    for (int unit = 0; unit < d; ++unit)
        exps[static_cast<std::size_t>(rng.below(n + 1))] += 1;
    return ExponentVector(std::move(exps));
}

inline HypersurfaceForm random_form(Rng& rng, int n, int d, int max_terms)
{
    while (true) {
        HypersurfaceForm::TermMap terms;
        int want = static_cast<int>(rng.range(1, max_terms));
        for (int i = 0; i < want; ++i) {
            Rational coeff(rng.range(-4, 4));
            if (coeff == 0)
                coeff = 1;
            terms[random_monomial(rng, n, d)] = coeff;
        }
        if (!terms.empty())
            return HypersurfaceForm(n, d, std::move(terms));
    }
}

inline TuplePoint random_tuple(Rng& rng, int n, int d, int k, int max_terms)
{
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::vector<HypersurfaceForm> gens;
        for (int i = 0; i < k; ++i)
            gens.push_back(random_form(rng, n, d, max_terms));
        try {
            return TuplePoint(n, d, std::move(gens));
        } catch (const DependentGenerators&) {
            continue;
        }
    }
    throw std::runtime_error("random_tuple: could not reach rank k");
}

// Members of the system with pairwise distinct lambda-minimal monomials:
// the rows of the generator matrix echelonized with columns in ascending
// lambda-order (weight, then lex).
inline std::vector<HypersurfaceForm> distinct_min_members(const TuplePoint& tuple,
                                                          const NormalizedOps& lambda)
{
    std::vector<ExponentVector> columns = tuple.union_support();
    std::sort(columns.begin(), columns.end(),
              [&](const ExponentVector& a, const ExponentVector& b) {
                  return lambda_order_less(a, b, lambda);
              });
    RationalMatrix m(static_cast<std::size_t>(tuple.k()),
                     std::vector<Rational>(columns.size()));
    for (int i = 0; i < tuple.k(); ++i)
        for (std::size_t j = 0; j < columns.size(); ++j)
            m[static_cast<std::size_t>(i)][j] = tuple.generator(i).coefficient(columns[j]);
    rref(m);
    std::vector<HypersurfaceForm> members;
    for (std::size_t r = 0; r < m.size(); ++r) {
        HypersurfaceForm::TermMap terms;
        for (std::size_t j = 0; j < columns.size(); ++j)
            if (m[r][j] != 0)
                terms.emplace(columns[j], m[r][j]);
        members.emplace_back(tuple.ambient(), tuple.degree(), std::move(terms));
    }
    return members;
}

inline NormalizedOps random_lambda(Rng& rng, int n, long long spread = 4)
{
    while (true) {
        std::vector<Int> raw(static_cast<std::size_t>(n + 1));
        Int sum = 0;
        for (int i = 0; i < n; ++i) {
            raw[static_cast<std::size_t>(i)] = Int(rng.range(-spread, spread));
            sum += raw[static_cast<std::size_t>(i)];
        }
        raw[static_cast<std::size_t>(n)] = -sum;
        bool nonzero = false;
        for (const Int& v : raw)
            if (v != 0)
                nonzero = true;
        if (!nonzero)
            continue;
        return make_normalized_ops(raw).first;
    }
}

} // namespace gitstab::testing
