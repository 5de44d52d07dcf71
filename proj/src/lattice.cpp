#include "gitstab/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace gitstab {

ExponentVector::ExponentVector(std::vector<int> exponents)
    : exps_(std::move(exponents)), degree_(0)
{
    if (exps_.size() < 2)
        throw std::invalid_argument("exponent vector needs at least two coordinates");
    for (int e : exps_) {
        if (e < 0)
            throw std::invalid_argument("negative exponent in monomial");
        degree_ += e;
    }
    if (degree_ == 0)
        throw std::invalid_argument("monomial of degree zero");
}

std::string ExponentVector::to_string() const
{
    std::ostringstream out;
    bool first = true;
    for (std::size_t i = 0; i < exps_.size(); ++i) {
        if (exps_[i] == 0)
            continue;
        if (!first)
            out << "*";
        out << "x" << i;
        if (exps_[i] > 1)
            out << "^" << exps_[i];
        first = false;
    }
    return out.str();
}

Permutation::Permutation(std::vector<int> image) : image_(std::move(image))
{
    std::vector<char> seen(image_.size(), 0);
    for (int v : image_) {
        if (v < 0 || v >= static_cast<int>(image_.size()) || seen[static_cast<std::size_t>(v)])
            throw std::invalid_argument("permutation image is not a bijection");
        seen[static_cast<std::size_t>(v)] = 1;
    }
}

Permutation Permutation::identity(int size)
{
    std::vector<int> image(static_cast<std::size_t>(size));
    std::iota(image.begin(), image.end(), 0);
    return Permutation(std::move(image));
}

Permutation Permutation::inverse() const
{
    std::vector<int> inv(image_.size());
    for (std::size_t i = 0; i < image_.size(); ++i)
        inv[static_cast<std::size_t>(image_[i])] = static_cast<int>(i);
    return Permutation(std::move(inv));
}

bool Permutation::is_identity() const
{
    for (std::size_t i = 0; i < image_.size(); ++i)
        if (image_[i] != static_cast<int>(i))
            return false;
    return true;
}

NormalizedOps::NormalizedOps(std::vector<Int> weights) : weights_(std::move(weights))
{
    if (weights_.size() < 2)
        throw std::invalid_argument("one-parameter subgroup needs at least two weights");
    Int sum = 0;
    Int g = 0;
    bool nonzero = false;
    for (std::size_t i = 0; i < weights_.size(); ++i) {
        if (i + 1 < weights_.size() && weights_[i] < weights_[i + 1])
            throw std::invalid_argument("weights are not nonincreasing");
        sum += weights_[i];
        g = boost::multiprecision::gcd(g, weights_[i]);
        if (weights_[i] != 0)
            nonzero = true;
    }
    if (sum != 0)
        throw std::invalid_argument("weights do not sum to zero");
    if (!nonzero)
        throw std::invalid_argument("trivial one-parameter subgroup");
    if (g != 1)
        throw std::invalid_argument("weights are not primitive (gcd != 1)");
}

std::string NormalizedOps::to_string() const
{
    std::ostringstream out;
    out << "(";
    for (std::size_t i = 0; i < weights_.size(); ++i) {
        if (i)
            out << ",";
        out << weights_[i].str();
    }
    out << ")";
    return out.str();
}

Int pairing(const ExponentVector& mono, const NormalizedOps& lambda)
{
    if (mono.ambient() != lambda.ambient())
        throw std::invalid_argument("pairing: monomial and 1-PS live in different ambients");
    Int value = 0;
    for (int j = 0; j <= mono.ambient(); ++j)
        value += Int(mono[j]) * lambda[j];
    return value;
}

Int affine_weight_monomial(const ExponentVector& mono, const NormalizedOps& lambda)
{
    if (mono.ambient() != lambda.ambient())
        throw std::invalid_argument("affine weight: monomial and 1-PS live in different ambients");
    const int n = mono.ambient();
    Int value = 0;
    for (int j = 0; j < n; ++j)
        value += Int(mono[j]) * (lambda[j] - lambda[n]);
    return value;
}

Int lambda_factor(const NormalizedOps& lambda)
{
    const int n = lambda.ambient();
    Int value = 0;
    for (int j = 0; j < n; ++j)
        value += lambda[j];
    value -= Int(n) * lambda[n];
    return value;
}

std::pair<NormalizedOps, Permutation> make_normalized_ops(const std::vector<Int>& raw)
{
    if (raw.size() < 2)
        throw std::invalid_argument("one-parameter subgroup needs at least two weights");
    Int sum = 0;
    bool nonzero = false;
    for (const Int& v : raw) {
        sum += v;
        if (v != 0)
            nonzero = true;
    }
    if (sum != 0)
        throw std::invalid_argument("weights do not sum to zero");
    if (!nonzero)
        throw std::invalid_argument("all-zero weight vector");

    std::vector<int> order(raw.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return raw[static_cast<std::size_t>(a)] > raw[static_cast<std::size_t>(b)];
    });

    Int g = 0;
    for (const Int& v : raw)
        g = boost::multiprecision::gcd(g, v);

    std::vector<Int> sorted(raw.size());
    std::vector<int> image(raw.size());
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
        sorted[pos] = raw[static_cast<std::size_t>(order[pos])] / g;
        image[static_cast<std::size_t>(order[pos])] = static_cast<int>(pos);
    }
    return {NormalizedOps(std::move(sorted)), Permutation(std::move(image))};
}

} // namespace gitstab
