#pragma once

#include "gitstab/errors.hpp"
#include "gitstab/lattice.hpp"
#include "gitstab/rational.hpp"

#include <map>
#include <set>
#include <utility>
#include <vector>

namespace gitstab {

// Monomials are iterated in descending lexicographic order (leading
// monomial first), which fixes every matrix column order and sign
// convention in the library.
struct LexDescending {
    bool operator()(const ExponentVector& a, const ExponentVector& b) const { return b < a; }
};

// A nonzero degree-d form in x_0..x_n with exact rational coefficients.
class HypersurfaceForm {
public:
    using TermMap = std::map<ExponentVector, Rational, LexDescending>;

    HypersurfaceForm(int ambient, int degree, TermMap terms);

    // Convenience builder from (exponents, coefficient) pairs; zero
    // coefficients and cancelling repeats are dropped.
    static HypersurfaceForm from_terms(int ambient, int degree,
                                       const std::vector<std::pair<std::vector<int>, Rational>>& terms);

    int ambient() const { return ambient_; }
    int degree() const { return degree_; }
    const TermMap& terms() const { return terms_; }

    std::set<ExponentVector> support() const;
    Rational coefficient(const ExponentVector& mono) const; // 0 when absent
    Rational evaluate(const std::vector<Rational>& point) const;
    HypersurfaceForm scaled(const Rational& factor) const;

    std::string to_string() const;

    friend bool operator==(const HypersurfaceForm& a, const HypersurfaceForm& b)
    {
        return a.ambient_ == b.ambient_ && a.degree_ == b.degree_ && a.terms_ == b.terms_;
    }

private:
    int ambient_;
    int degree_;
    TermMap terms_;
};

// h_0 x_0 + ... + h_n x_n, not all coefficients zero.
class HyperplaneForm {
public:
    explicit HyperplaneForm(std::vector<Rational> coeffs);

    int ambient() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<Rational>& coeffs() const { return coeffs_; }
    HypersurfaceForm as_form() const; // degree-1 HypersurfaceForm

    // Proportionality test ("distinct hyperplanes" means non-proportional).
    bool proportional_to(const HyperplaneForm& other) const;

private:
    std::vector<Rational> coeffs_;
};

// A point of projective space, stored with first nonzero coordinate 1.
class ProjectivePoint {
public:
    explicit ProjectivePoint(std::vector<Rational> coords);
    static ProjectivePoint coordinate_point(int ambient, int index);

    int ambient() const { return static_cast<int>(coords_.size()) - 1; }
    const std::vector<Rational>& coords() const { return coords_; }
    bool is_coordinate_point(int* index = nullptr) const;

    std::string to_string() const; // "(0:0:1)"

    friend bool operator==(const ProjectivePoint&, const ProjectivePoint&) = default;

private:
    std::vector<Rational> coords_;
};

// An invertible rational matrix acting on forms by A.f(x) = f(Ax). The
// underlying group action is by SL(n+1); any invertible matrix is accepted
// here because all predicates in use are invariant under rescaling, and
// determinant-1 normalization over Q would force irrational entries.
class ProjectiveTransform {
public:
    explicit ProjectiveTransform(std::vector<std::vector<Rational>> matrix);
    static ProjectiveTransform identity(int ambient);
    // Matrix with (Ax)_i = x_{image(i)}.
    static ProjectiveTransform coordinate_permutation(const Permutation& perm);

    int ambient() const { return static_cast<int>(matrix_.size()) - 1; }
    const std::vector<std::vector<Rational>>& matrix() const { return matrix_; }
    const Rational& determinant() const { return det_; }

    ProjectiveTransform inverse() const;
    ProjectiveTransform compose(const ProjectiveTransform& inner) const; // this * inner
    std::vector<Rational> apply(const std::vector<Rational>& column) const;

private:
    std::vector<std::vector<Rational>> matrix_;
    Rational det_;
};

// An ordered list of k generators spanning a k-dimensional space of
// degree-d forms: a point of Gr(k, Sym^d). Construction verifies the rank
// and reports a dependency relation otherwise.
class TuplePoint {
public:
    TuplePoint(int ambient, int degree, std::vector<HypersurfaceForm> generators);

    int ambient() const { return ambient_; }
    int degree() const { return degree_; }
    int k() const { return static_cast<int>(generators_.size()); }
    const std::vector<HypersurfaceForm>& generators() const { return generators_; }
    const HypersurfaceForm& generator(int i) const
    {
        return generators_[static_cast<std::size_t>(i)];
    }

    // Union of the generator supports in descending lex order; every
    // matrix over the tuple uses these columns.
    std::vector<ExponentVector> union_support() const;

private:
    int ambient_;
    int degree_;
    std::vector<HypersurfaceForm> generators_;
};

// The exact Pluecker data of a tuple: every k-subset of the union support
// whose k x k coefficient minor is nonzero, with the minor value. Columns
// of each subset are listed in descending lex order.
struct PluckerSupport {
    struct Entry {
        std::vector<ExponentVector> monomials;
        Rational minor;
    };
    std::vector<Entry> entries;
};

std::set<ExponentVector> support(const HypersurfaceForm& f);

// The member sum z_1 f_1 + ... + z_k f_k of the linear system.
HypersurfaceForm member(const TuplePoint& tuple, const ProjectivePoint& z);

PluckerSupport plucker_support(const TuplePoint& tuple);

// All tuples (I_1,...,I_k) of pairwise distinct monomials with
// I_i in Supp(f_i), in deterministic product order. Intended for small
// supports; the weight computations use an assignment solver instead.
std::vector<std::vector<ExponentVector>> distinct_support_tuples(const TuplePoint& tuple);

HypersurfaceForm apply_transform(const HypersurfaceForm& f, const ProjectiveTransform& a);
TuplePoint apply_transform(const TuplePoint& tuple, const ProjectiveTransform& a);
HyperplaneForm apply_transform(const HyperplaneForm& h, const ProjectiveTransform& a);

bool is_base_point(const TuplePoint& tuple, const ProjectivePoint& p);

// Chooses a transform A with A(0:...:0:1) = p (a permutation when p is a
// coordinate point, a triangular completion otherwise) and returns
// (A.tuple, A); the transformed tuple has the base point at the last
// coordinate point.
std::pair<TuplePoint, ProjectiveTransform>
move_point_to_last_coordinate(const TuplePoint& tuple, const ProjectivePoint& p);

} // namespace gitstab
