#pragma once

#include "gitstab/rational.hpp"

#include <compare>
#include <utility>
#include <vector>

namespace gitstab {

// A degree-d monomial x_0^{e_0} ... x_n^{e_n} stored as its exponent tuple.
class ExponentVector {
public:
    explicit ExponentVector(std::vector<int> exponents);

    int ambient() const { return static_cast<int>(exps_.size()) - 1; }
    int degree() const { return degree_; }
    int operator[](int j) const { return exps_[static_cast<std::size_t>(j)]; }
    const std::vector<int>& exponents() const { return exps_; }

    std::string to_string() const; // "x0^2*x1" style

    friend auto operator<=>(const ExponentVector& a, const ExponentVector& b)
    {
        return a.exps_ <=> b.exps_;
    }
    friend bool operator==(const ExponentVector& a, const ExponentVector& b)
    {
        return a.exps_ == b.exps_;
    }

private:
    std::vector<int> exps_;
    int degree_;
};

// A bijection of {0,...,n}; image[i] is where position i goes.
class Permutation {
public:
    explicit Permutation(std::vector<int> image);
    static Permutation identity(int size);

    int size() const { return static_cast<int>(image_.size()); }
    int operator()(int i) const { return image_[static_cast<std::size_t>(i)]; }
    const std::vector<int>& image() const { return image_; }
    Permutation inverse() const;
    bool is_identity() const;

    friend bool operator==(const Permutation&, const Permutation&) = default;

private:
    std::vector<int> image_;
};

// A normalized one-parameter subgroup of the diagonal torus: integer
// weights a_0 >= ... >= a_n with sum zero, stored as the primitive (gcd 1)
// representative. Every stability predicate here is invariant under
// positive rescaling of the weights, so the primitive vector is canonical.
class NormalizedOps {
public:
    explicit NormalizedOps(std::vector<Int> weights);

    int ambient() const { return static_cast<int>(weights_.size()) - 1; }
    const Int& operator[](int i) const { return weights_[static_cast<std::size_t>(i)]; }
    const std::vector<Int>& weights() const { return weights_; }

    std::string to_string() const; // "(1,0,-1)"

    friend auto operator<=>(const NormalizedOps& a, const NormalizedOps& b)
    {
        return a.weights_ <=> b.weights_;
    }
    friend bool operator==(const NormalizedOps& a, const NormalizedOps& b)
    {
        return a.weights_ == b.weights_;
    }

private:
    std::vector<Int> weights_;
};

// <x^I, lambda> = sum_i e_i * a_i.
Int pairing(const ExponentVector& mono, const NormalizedOps& lambda);

// The affine weight of a single monomial: sum_{j<n} e_j * (a_j - a_n).
// Equals pairing(mono, lambda) - d * a_n, and is >= 0 for normalized lambda.
Int affine_weight_monomial(const ExponentVector& mono, const NormalizedOps& lambda);

// Lambda(lambda) = sum_{j<n} a_j - n * a_n = -(n+1) * a_n; strictly positive
// for every nontrivial normalized lambda.
Int lambda_factor(const NormalizedOps& lambda);

// Sorts raw weights into normalized order, divides out the gcd, and records
// the coordinate permutation that was applied (original position -> sorted
// position). Throws on nonzero sum or an all-zero vector.
std::pair<NormalizedOps, Permutation> make_normalized_ops(const std::vector<Int>& raw);

} // namespace gitstab
