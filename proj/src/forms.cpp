#include "gitstab/forms.hpp"

#include "gitstab/linalg.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

namespace gitstab {

namespace {

// Sparse product helper used by apply_transform; keys are raw exponent
// rows so intermediate degrees below d are representable.
using RawPoly = std::map<std::vector<int>, Rational>;

RawPoly raw_multiply(const RawPoly& a, const RawPoly& b)
{
    RawPoly out;
    for (const auto& [ea, ca] : a) {
        for (const auto& [eb, cb] : b) {
            std::vector<int> e(ea.size());
            for (std::size_t i = 0; i < e.size(); ++i)
                e[i] = ea[i] + eb[i];
            Rational& slot = out[e];
            slot += ca * cb;
            if (slot == 0)
                out.erase(e);
        }
    }
    return out;
}

RawPoly raw_power(const RawPoly& base, int exp, std::size_t nvars)
{
    RawPoly result{{std::vector<int>(nvars, 0), Rational(1)}};
    for (int i = 0; i < exp; ++i)
        result = raw_multiply(result, base);
    return result;
}

RationalMatrix coefficient_matrix(const std::vector<HypersurfaceForm>& gens,
                                  const std::vector<ExponentVector>& columns)
{
    RationalMatrix m(gens.size(), std::vector<Rational>(columns.size(), Rational(0)));
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::size_t j = 0; j < columns.size(); ++j)
            m[i][j] = gens[i].coefficient(columns[j]);
    return m;
}

} // namespace

HypersurfaceForm::HypersurfaceForm(int ambient, int degree, TermMap terms)
    : ambient_(ambient), degree_(degree), terms_(std::move(terms))
{
    if (ambient_ < 1)
        throw std::invalid_argument("form needs ambient dimension >= 1");
    if (degree_ < 1)
        throw std::invalid_argument("form needs degree >= 1");
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (it->second == 0) {
            it = terms_.erase(it);
            continue;
        }
        if (it->first.ambient() != ambient_)
            throw std::invalid_argument("term ambient mismatch in form");
        if (it->first.degree() != degree_)
            throw std::invalid_argument("term degree mismatch in form");
        ++it;
    }
    if (terms_.empty())
        throw std::invalid_argument("form is identically zero");
}

HypersurfaceForm HypersurfaceForm::from_terms(
    int ambient, int degree, const std::vector<std::pair<std::vector<int>, Rational>>& terms)
{
    TermMap map;
    for (const auto& [exps, coeff] : terms) {
        ExponentVector mono{exps};
        Rational& slot = map[mono];
        slot += coeff;
        if (slot == 0)
            map.erase(mono);
    }
    return HypersurfaceForm(ambient, degree, std::move(map));
}

std::set<ExponentVector> HypersurfaceForm::support() const
{
    std::set<ExponentVector> s;
    for (const auto& [mono, coeff] : terms_)
        s.insert(mono);
    return s;
}

Rational HypersurfaceForm::coefficient(const ExponentVector& mono) const
{
    auto it = terms_.find(mono);
    return it == terms_.end() ? Rational(0) : it->second;
}

Rational HypersurfaceForm::evaluate(const std::vector<Rational>& point) const
{
    if (static_cast<int>(point.size()) != ambient_ + 1)
        throw std::invalid_argument("evaluate: point dimension mismatch");
    Rational total = 0;
    for (const auto& [mono, coeff] : terms_) {
        Rational v = coeff;
        for (int j = 0; j <= ambient_; ++j)
            for (int rep = 0; rep < mono[j]; ++rep)
                v *= point[static_cast<std::size_t>(j)];
        total += v;
    }
    return total;
}

HypersurfaceForm HypersurfaceForm::scaled(const Rational& factor) const
{
    if (factor == 0)
        throw std::invalid_argument("scaling a form by zero");
    TermMap map = terms_;
    for (auto& [mono, coeff] : map)
        coeff *= factor;
    return HypersurfaceForm(ambient_, degree_, std::move(map));
}

std::string HypersurfaceForm::to_string() const
{
    std::ostringstream out;
    bool first = true;
    for (const auto& [mono, coeff] : terms_) {
        if (first) {
            if (coeff == 1) {
            } else if (coeff == -1) {
                out << "-";
            } else {
                out << gitstab::to_string(coeff) << "*";
            }
        } else if (coeff > 0) {
            out << " + ";
            if (coeff != 1)
                out << gitstab::to_string(coeff) << "*";
        } else {
            out << " - ";
            if (coeff != -1)
                out << gitstab::to_string(-coeff) << "*";
        }
        out << mono.to_string();
        first = false;
    }
    return out.str();
}

HyperplaneForm::HyperplaneForm(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs))
{
    if (coeffs_.size() < 2)
        throw std::invalid_argument("hyperplane needs ambient dimension >= 1");
    bool nonzero = false;
    for (const Rational& c : coeffs_)
        if (c != 0)
            nonzero = true;
    if (!nonzero)
        throw std::invalid_argument("hyperplane with all coefficients zero");
}

HypersurfaceForm HyperplaneForm::as_form() const
{
    HypersurfaceForm::TermMap map;
    const int n = ambient();
    for (int j = 0; j <= n; ++j) {
        if (coeffs_[static_cast<std::size_t>(j)] == 0)
            continue;
        std::vector<int> exps(static_cast<std::size_t>(n + 1), 0);
        exps[static_cast<std::size_t>(j)] = 1;
        map.emplace(ExponentVector(std::move(exps)), coeffs_[static_cast<std::size_t>(j)]);
    }
    return HypersurfaceForm(n, 1, std::move(map));
}

bool HyperplaneForm::proportional_to(const HyperplaneForm& other) const
{
    if (ambient() != other.ambient())
        return false;
    // Cross-ratios: h_i * g_j == h_j * g_i for all i, j.
    const std::size_t m = coeffs_.size();
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            if (coeffs_[i] * other.coeffs_[j] != coeffs_[j] * other.coeffs_[i])
                return false;
    return true;
}

ProjectivePoint::ProjectivePoint(std::vector<Rational> coords) : coords_(std::move(coords))
{
    if (coords_.size() < 2)
        throw std::invalid_argument("projective point needs ambient dimension >= 1");
    std::size_t lead = 0;
    while (lead < coords_.size() && coords_[lead] == 0)
        ++lead;
    if (lead == coords_.size())
        throw std::invalid_argument("projective point with all coordinates zero");
    Rational inv = Rational(1) / coords_[lead];
    for (auto& c : coords_)
        c *= inv;
}

ProjectivePoint ProjectivePoint::coordinate_point(int ambient, int index)
{
    std::vector<Rational> coords(static_cast<std::size_t>(ambient + 1), Rational(0));
    coords.at(static_cast<std::size_t>(index)) = 1;
    return ProjectivePoint(std::move(coords));
}

bool ProjectivePoint::is_coordinate_point(int* index) const
{
    int nonzero = -1;
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (coords_[i] != 0) {
            if (nonzero >= 0)
                return false;
            nonzero = static_cast<int>(i);
        }
    }
    if (index)
        *index = nonzero;
    return true;
}

std::string ProjectivePoint::to_string() const
{
    std::ostringstream out;
    out << "(";
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (i)
            out << ":";
        out << gitstab::to_string(coords_[i]);
    }
    out << ")";
    return out.str();
}

ProjectiveTransform::ProjectiveTransform(std::vector<std::vector<Rational>> matrix)
    : matrix_(std::move(matrix))
{
    if (matrix_.size() < 2)
        throw std::invalid_argument("transform needs ambient dimension >= 1");
    for (const auto& row : matrix_)
        if (row.size() != matrix_.size())
            throw std::invalid_argument("transform matrix is not square");
    det_ = gitstab::determinant(matrix_);
    if (det_ == 0)
        throw std::invalid_argument("transform matrix is singular");
}

ProjectiveTransform ProjectiveTransform::identity(int ambient)
{
    std::vector<std::vector<Rational>> m(static_cast<std::size_t>(ambient + 1),
                                         std::vector<Rational>(static_cast<std::size_t>(ambient + 1), Rational(0)));
    for (std::size_t i = 0; i < m.size(); ++i)
        m[i][i] = 1;
    return ProjectiveTransform(std::move(m));
}

ProjectiveTransform ProjectiveTransform::coordinate_permutation(const Permutation& perm)
{
    const int size = perm.size();
    std::vector<std::vector<Rational>> m(static_cast<std::size_t>(size),
                                         std::vector<Rational>(static_cast<std::size_t>(size), Rational(0)));
    for (int i = 0; i < size; ++i)
        m[static_cast<std::size_t>(i)][static_cast<std::size_t>(perm(i))] = 1;
    return ProjectiveTransform(std::move(m));
}

ProjectiveTransform ProjectiveTransform::inverse() const
{
    return ProjectiveTransform(gitstab::inverse(matrix_));
}

ProjectiveTransform ProjectiveTransform::compose(const ProjectiveTransform& inner) const
{
    const std::size_t n = matrix_.size();
    if (inner.matrix_.size() != n)
        throw std::invalid_argument("compose: dimension mismatch");
    std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t l = 0; l < n; ++l)
                m[i][j] += matrix_[i][l] * inner.matrix_[l][j];
    return ProjectiveTransform(std::move(m));
}

std::vector<Rational> ProjectiveTransform::apply(const std::vector<Rational>& column) const
{
    const std::size_t n = matrix_.size();
    if (column.size() != n)
        throw std::invalid_argument("apply: dimension mismatch");
    std::vector<Rational> out(n, Rational(0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            out[i] += matrix_[i][j] * column[j];
    return out;
}

TuplePoint::TuplePoint(int ambient, int degree, std::vector<HypersurfaceForm> generators)
    : ambient_(ambient), degree_(degree), generators_(std::move(generators))
{
    if (generators_.empty())
        throw std::invalid_argument("tuple needs at least one generator");
    for (const auto& g : generators_)
        if (g.ambient() != ambient_ || g.degree() != degree_)
            throw std::invalid_argument("tuple generators disagree on ambient or degree");

    const std::vector<ExponentVector> columns = union_support();
    RationalMatrix m = coefficient_matrix(generators_, columns);
    // Left kernel of the row space = kernel of the transpose.
    RationalMatrix mt(columns.size(), std::vector<Rational>(generators_.size()));
    for (std::size_t r = 0; r < columns.size(); ++r)
        for (std::size_t c = 0; c < generators_.size(); ++c)
            mt[r][c] = m[c][r];
    auto relation = kernel_vector(mt, static_cast<int>(generators_.size()));
    if (relation) {
        std::ostringstream out;
        out << "tuple generators are linearly dependent: ";
        bool first = true;
        for (std::size_t i = 0; i < relation->size(); ++i) {
            if ((*relation)[i] == 0)
                continue;
            if (!first)
                out << " + ";
            out << "(" << gitstab::to_string((*relation)[i]) << ")*f" << (i + 1);
            first = false;
        }
        out << " = 0";
        throw DependentGenerators(out.str(), std::move(*relation));
    }
}

std::vector<ExponentVector> TuplePoint::union_support() const
{
    std::set<ExponentVector, LexDescending> all;
    for (const auto& g : generators_)
        for (const auto& [mono, coeff] : g.terms())
            all.insert(mono);
    return std::vector<ExponentVector>(all.begin(), all.end());
}

std::set<ExponentVector> support(const HypersurfaceForm& f)
{
    return f.support();
}

HypersurfaceForm member(const TuplePoint& tuple, const ProjectivePoint& z)
{
    if (z.ambient() + 1 != tuple.k())
        throw std::invalid_argument("member: z must have k coordinates");
    HypersurfaceForm::TermMap map;
    for (int i = 0; i < tuple.k(); ++i) {
        const Rational& zi = z.coords()[static_cast<std::size_t>(i)];
        if (zi == 0)
            continue;
        for (const auto& [mono, coeff] : tuple.generator(i).terms()) {
            Rational& slot = map[mono];
            slot += zi * coeff;
            if (slot == 0)
                map.erase(mono);
        }
    }
    if (map.empty())
        throw std::domain_error("member of the linear system is identically zero");
    return HypersurfaceForm(tuple.ambient(), tuple.degree(), std::move(map));
}

PluckerSupport plucker_support(const TuplePoint& tuple)
{
    const int k = tuple.k();
    const std::vector<ExponentVector> columns = tuple.union_support();
    const int m = static_cast<int>(columns.size());
    if (m < k)
        throw DependentGenerators("support too small for rank k", {});
    RationalMatrix coef = coefficient_matrix(tuple.generators(), columns);

    PluckerSupport out;
    std::vector<int> idx(static_cast<std::size_t>(k));
    std::iota(idx.begin(), idx.end(), 0);
    // Lexicographic k-subset enumeration over column indices.
    while (true) {
        RationalMatrix minor_mat(static_cast<std::size_t>(k), std::vector<Rational>(static_cast<std::size_t>(k)));
        for (int r = 0; r < k; ++r)
            for (int c = 0; c < k; ++c)
                minor_mat[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
                    coef[static_cast<std::size_t>(r)][static_cast<std::size_t>(idx[static_cast<std::size_t>(c)])];
        Rational minor = determinant(std::move(minor_mat));
        if (minor != 0) {
            PluckerSupport::Entry entry;
            for (int c = 0; c < k; ++c)
                entry.monomials.push_back(columns[static_cast<std::size_t>(idx[static_cast<std::size_t>(c)])]);
            entry.minor = std::move(minor);
            out.entries.push_back(std::move(entry));
        }
        int pos = k - 1;
        while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == m - k + pos)
            --pos;
        if (pos < 0)
            break;
        ++idx[static_cast<std::size_t>(pos)];
        for (int c = pos + 1; c < k; ++c)
            idx[static_cast<std::size_t>(c)] = idx[static_cast<std::size_t>(c - 1)] + 1;
    }
    if (out.entries.empty())
        throw DependentGenerators("all Pluecker minors vanish (rank < k)", {});
    return out;
}

std::vector<std::vector<ExponentVector>> distinct_support_tuples(const TuplePoint& tuple)
{
    const int k = tuple.k();
    std::vector<std::vector<ExponentVector>> supports;
    for (int i = 0; i < k; ++i) {
        auto s = tuple.generator(i).support();
        supports.emplace_back(s.begin(), s.end()); // ascending lex within each slot
    }
    std::vector<std::vector<ExponentVector>> out;
    std::vector<const ExponentVector*> current(static_cast<std::size_t>(k), nullptr);
    std::function<void(int)> rec = [&](int slot) {
        if (slot == k) {
            std::vector<ExponentVector> tup;
            tup.reserve(static_cast<std::size_t>(k));
            for (const auto* p : current)
                tup.push_back(*p);
            out.push_back(std::move(tup));
            return;
        }
        for (const auto& mono : supports[static_cast<std::size_t>(slot)]) {
            bool used = false;
            for (int j = 0; j < slot; ++j)
                if (*current[static_cast<std::size_t>(j)] == mono)
                    used = true;
            if (used)
                continue;
            current[static_cast<std::size_t>(slot)] = &mono;
            rec(slot + 1);
        }
    };
    rec(0);
    return out;
}

HypersurfaceForm apply_transform(const HypersurfaceForm& f, const ProjectiveTransform& a)
{
    const int n = f.ambient();
    if (a.ambient() != n)
        throw std::invalid_argument("apply_transform: dimension mismatch");
    const std::size_t nvars = static_cast<std::size_t>(n + 1);

    // Substituted variable x_i -> (Ax)_i = sum_j a[i][j] x_j as a RawPoly.
    std::vector<RawPoly> images(nvars);
    for (std::size_t i = 0; i < nvars; ++i) {
        for (std::size_t j = 0; j < nvars; ++j) {
            if (a.matrix()[i][j] == 0)
                continue;
            std::vector<int> e(nvars, 0);
            e[j] = 1;
            images[i][std::move(e)] = a.matrix()[i][j];
        }
    }

    RawPoly total;
    for (const auto& [mono, coeff] : f.terms()) {
        RawPoly term{{std::vector<int>(nvars, 0), coeff}};
        for (std::size_t i = 0; i < nvars; ++i)
            if (mono[static_cast<int>(i)] > 0)
                term = raw_multiply(term, raw_power(images[i], mono[static_cast<int>(i)], nvars));
        for (const auto& [e, c] : term) {
            Rational& slot = total[e];
            slot += c;
            if (slot == 0)
                total.erase(e);
        }
    }
    HypersurfaceForm::TermMap map;
    for (auto& [e, c] : total)
        map.emplace(ExponentVector(e), std::move(c));
    return HypersurfaceForm(n, f.degree(), std::move(map));
}

TuplePoint apply_transform(const TuplePoint& tuple, const ProjectiveTransform& a)
{
    std::vector<HypersurfaceForm> gens;
    gens.reserve(static_cast<std::size_t>(tuple.k()));
    for (const auto& g : tuple.generators())
        gens.push_back(apply_transform(g, a));
    return TuplePoint(tuple.ambient(), tuple.degree(), std::move(gens));
}

HyperplaneForm apply_transform(const HyperplaneForm& h, const ProjectiveTransform& a)
{
    // h(Ax): coefficient of x_j is sum_i h_i a[i][j].
    const std::size_t n1 = h.coeffs().size();
    if (a.matrix().size() != n1)
        throw std::invalid_argument("apply_transform: dimension mismatch");
    std::vector<Rational> out(n1, Rational(0));
    for (std::size_t j = 0; j < n1; ++j)
        for (std::size_t i = 0; i < n1; ++i)
            out[j] += h.coeffs()[i] * a.matrix()[i][j];
    return HyperplaneForm(std::move(out));
}

bool is_base_point(const TuplePoint& tuple, const ProjectivePoint& p)
{
    if (p.ambient() != tuple.ambient())
        throw std::invalid_argument("is_base_point: dimension mismatch");
    for (const auto& g : tuple.generators())
        if (g.evaluate(p.coords()) != 0)
            return false;
    return true;
}

std::pair<TuplePoint, ProjectiveTransform>
move_point_to_last_coordinate(const TuplePoint& tuple, const ProjectivePoint& p)
{
    const int n = tuple.ambient();
    if (p.ambient() != n)
        throw std::invalid_argument("move_point_to_last_coordinate: dimension mismatch");

    int coord_index = -1;
    if (p.is_coordinate_point(&coord_index)) {
        std::vector<int> image(static_cast<std::size_t>(n + 1));
        std::iota(image.begin(), image.end(), 0);
        std::swap(image[static_cast<std::size_t>(coord_index)], image[static_cast<std::size_t>(n)]);
        ProjectiveTransform a = ProjectiveTransform::coordinate_permutation(Permutation(image));
        return {apply_transform(tuple, a), a};
    }

    // Complete p to a basis: columns e_{c_0}, ..., e_{c_{n-1}}, p where the
    // c_j skip the pivot coordinate of p; the determinant is +-1.
    std::size_t pivot = 0;
    while (p.coords()[pivot] == 0)
        ++pivot;
    std::vector<std::vector<Rational>> m(static_cast<std::size_t>(n + 1),
                                         std::vector<Rational>(static_cast<std::size_t>(n + 1), Rational(0)));
    int col = 0;
    for (int j = 0; j <= n; ++j) {
        if (static_cast<std::size_t>(j) == pivot)
            continue;
        m[static_cast<std::size_t>(j)][static_cast<std::size_t>(col)] = 1;
        ++col;
    }
    for (int i = 0; i <= n; ++i)
        m[static_cast<std::size_t>(i)][static_cast<std::size_t>(n)] = p.coords()[static_cast<std::size_t>(i)];
    ProjectiveTransform a{std::move(m)};
    return {apply_transform(tuple, a), a};
}

} // namespace gitstab
