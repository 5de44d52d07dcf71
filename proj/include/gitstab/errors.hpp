#pragma once

#include "gitstab/rational.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace gitstab {

// Generators of a tuple are linearly dependent; carries a witnessing
// relation sum_i relation[i] * f_i = 0.
class DependentGenerators : public std::runtime_error {
public:
    DependentGenerators(std::string what, std::vector<Rational> relation)
        : std::runtime_error(std::move(what)), relation_(std::move(relation))
    {
    }
    const std::vector<Rational>& relation() const { return relation_; }

private:
    std::vector<Rational> relation_;
};

class MemberNotInSystem : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NoFeasibleAssignment : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class PointNotOnHypersurface : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class OutsideRegime : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The recursive construction behind the omega decomposition can fail on
// special supports; the failure is surfaced instead of guessing.
class DecompositionFailed : public std::runtime_error {
public:
    enum class Reason { EmptySetDifference, MonomialNotRealizable, SumMismatch };

    DecompositionFailed(Reason reason, std::string what)
        : std::runtime_error(std::move(what)), reason_(reason)
    {
    }
    Reason reason() const { return reason_; }

    static const char* reason_name(Reason r)
    {
        switch (r) {
        case Reason::EmptySetDifference: return "empty_set_difference";
        case Reason::MonomialNotRealizable: return "monomial_not_realizable";
        case Reason::SumMismatch: return "sum_mismatch";
        }
        return "unknown";
    }

private:
    Reason reason_;
};

} // namespace gitstab
