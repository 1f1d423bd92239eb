#include "hodge/geometry.hpp"

#include <set>

namespace hodge {

namespace {

std::string mat_key(const Mat& m)
{
    std::string s;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
            s += m.at(i, j).str();
            s += ',';
        }
    return s;
}

} // namespace

bool Line::operator<(const Line& o) const { return mat_key(rref) < mat_key(o.rref); }
bool KPoint::operator<(const KPoint& o) const { return mat_key(span_rref) < mat_key(o.span_rref); }

Line line_through(const FieldPtr& F, const Vec& u, const Vec& v)
{
    Mat m(F, 2, static_cast<int>(u.size()));
    for (std::size_t j = 0; j < u.size(); ++j) {
        m.at(0, static_cast<int>(j)) = u[j];
        m.at(1, static_cast<int>(j)) = v[j];
    }
    if (m.rank() != 2) throw std::invalid_argument("line_through: points coincide");
    return Line{m.rref()};
}

std::vector<Line> all_lines(const FieldPtr& F)
{
    auto pts = projective_points(F, 4);
    std::set<Line> seen;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) seen.insert(line_through(F, pts[i], pts[j]));
    return std::vector<Line>(seen.begin(), seen.end());
}

Line perp_line(const HermitianSpace& space, const Line& L)
{
    const FieldPtr& F = space.field();
    const int n = space.dim();
    Mat rows(F, 2, n);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < n; ++j) rows.at(i, j) = space.h(L.point(i), unit_vec(F, n, j));
    Mat ker = rows.kernel();
    if (ker.cols() != 2) throw std::logic_error("perp_line: perp is not a line");
    return line_through(F, ker.col(0), ker.col(1));
}

KPoint lambda_point(const KModule& km, const Line& L)
{
    const FieldPtr& F = km.space().field();
    ExtVector X = ExtVector::wedge_of(F, {L.point(0), L.point(1)});
    ExtVector JX = km.J().apply(X);
    Mat span(F, 2, X.size());
    for (int j = 0; j < X.size(); ++j) {
        span.at(0, j) = X[j];
        span.at(1, j) = JX[j];
    }
    int r = span.rank();
    Mat red = span.rref();
    Mat out(F, r, X.size());
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < X.size(); ++j) out.at(i, j) = red.at(i, j);
    return KPoint{out, r == 2};
}

PolarityReport check_J_polarity(const KModule& km)
{
    PolarityReport rep;
    const FieldPtr& F = km.space().field();
    for (const auto& L : all_lines(F)) {
        ExtVector X = ExtVector::wedge_of(F, {L.point(0), L.point(1)});
        ExtVector JX = km.J().apply(X);
        Line P = perp_line(km.space(), L);
        ExtVector W = ExtVector::wedge_of(F, {P.point(0), P.point(1)});
        Mat pair(F, 2, X.size());
        for (int j = 0; j < X.size(); ++j) {
            pair.at(0, j) = JX[j];
            pair.at(1, j) = W[j];
        }
        ++rep.lines_checked;
        if (pair.rank() != 1) {
            rep.pass = false;
            rep.counterexample = L;
            return rep;
        }
    }
    return rep;
}

std::pair<Vec, Vec> factor_isotropic(const KModule& km, const ExtVector& Z)
{
    const FieldPtr& F = km.space().field();
    if (Z.is_zero()) throw std::invalid_argument("factor_isotropic: zero input");
    if (!km.g(Z, Z).is_zero()) throw std::invalid_argument("factor_isotropic: g(Z,Z) != 0");
    if (!klein_quadratic(km.top_form(), Z).is_zero())
        throw std::invalid_argument("factor_isotropic: Z is not decomposable");

    // columns of the alternating coefficient matrix span the factor plane
    Mat A(F, 4, 4);
    for (int i = 1; i <= 4; ++i)
        for (int j = i + 1; j <= 4; ++j) {
            Scalar c = Z.coeff((1u << (i - 1)) | (1u << (j - 1)));
            A.at(i - 1, j - 1) = c;
            A.at(j - 1, i - 1) = -c;
        }
    std::vector<Vec> span;
    for (int c = 0; c < 4 && span.size() < 2; ++c) {
        Vec col = A.col(c);
        if (is_zero(col)) continue;
        if (span.empty()) {
            span.push_back(col);
            continue;
        }
        if (mat_from_cols(F, {span[0], col}).rank() == 2) span.push_back(col);
    }
    if (span.size() != 2) throw std::logic_error("factor_isotropic: rank of coefficient matrix is not 2");

    // radical of h restricted to the plane provides z
    const HermitianSpace& sp = km.space();
    Mat gram(F, 2, 2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) gram.at(i, j) = sp.h(span[static_cast<std::size_t>(i)], span[static_cast<std::size_t>(j)]);
    Mat ker = gram.kernel();
    if (ker.cols() == 0) throw std::logic_error("factor_isotropic: restriction of h is non-degenerate");
    Vec z = scaled(span[0], ker.at(0, 0)) + scaled(span[1], ker.at(1, 0));
    Vec w = mat_from_cols(F, {z, span[0]}).rank() == 2 ? span[0] : span[1];
    // rescale w so that z ^ w = Z exactly
    ExtVector zw = ExtVector::wedge_of(F, {z, w});
    Scalar ratio;
    for (int i = 0; i < Z.size(); ++i)
        if (!Z[i].is_zero()) {
            ratio = zw[i] / Z[i];
            break;
        }
    w = scaled(w, ratio.inverse());
    if (!(ExtVector::wedge_of(F, {z, w}) == Z)) throw std::logic_error("factor_isotropic: replay failed");
    if (!sp.h(z, z).is_zero() || !sp.h(z, w).is_zero())
        throw std::logic_error("factor_isotropic: factor conditions violated");
    return {z, w};
}

std::vector<Vec> absolute_points_h(const HermitianSpace& space) { return isotropic_points(space); }

namespace {

std::vector<ExtVector> all_nonzero_ext(const FieldPtr& F, int n, int deg)
{
    std::vector<ExtVector> out;
    ExtVector x(F, n, deg);
    long q = F->order();
    std::vector<long> idx(static_cast<std::size_t>(x.size()), 0);
    while (true) {
        bool nonzero = false;
        for (int i = 0; i < x.size(); ++i) {
            x[i] = F->element_by_index(idx[static_cast<std::size_t>(i)]);
            nonzero = nonzero || idx[static_cast<std::size_t>(i)] != 0;
        }
        if (nonzero) out.push_back(x);
        int k = 0;
        while (k < x.size() && ++idx[static_cast<std::size_t>(k)] == q) idx[static_cast<std::size_t>(k++)] = 0;
        if (k == x.size()) break;
    }
    return out;
}

KPoint span_point(const KModule& km, const ExtVector& X)
{
    const FieldPtr& F = km.space().field();
    ExtVector JX = km.J().apply(X);
    Mat span(F, 2, X.size());
    for (int j = 0; j < X.size(); ++j) {
        span.at(0, j) = X[j];
        span.at(1, j) = JX[j];
    }
    int r = span.rank();
    Mat red = span.rref();
    Mat out(F, r, X.size());
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < X.size(); ++j) out.at(i, j) = red.at(i, j);
    return KPoint{out, r == 2};
}

} // namespace

std::vector<KPoint> absolute_points_g(const KModule& km)
{
    const FieldPtr& F = km.space().field();
    std::set<KPoint> seen;
    for (const auto& X : all_nonzero_ext(F, 4, 2)) {
        if (!km.g(X, X).is_zero()) continue;
        KPoint p = span_point(km, X);
        if (p.free) seen.insert(p);
    }
    return std::vector<KPoint>(seen.begin(), seen.end());
}

FiberData lambda_fibers(const KModule& km)
{
    const FieldPtr& F = km.space().field();
    FiberData data;
    std::map<KPoint, std::vector<Line>> fibers;
    for (const auto& L : all_lines(F)) {
        KPoint p = lambda_point(km, L);
        if (!p.free) {
            ++data.non_free_lines;
            continue;
        }
        fibers[p].push_back(L);
    }
    for (const auto& entry : fibers) {
        const auto& lines = entry.second;
        ++data.size_histogram[lines.size()];
        for (const auto& L : lines) {
            Mat gram(F, 2, 2);
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) gram.at(i, j) = km.space().h(L.point(i), L.point(j));
            bool degenerate = gram.det().is_zero();
            bool expect_deg = lines.size() != 2;
            if (degenerate != expect_deg) data.degenerate_matches = false;
        }
        if (lines.size() != 2 && lines.size() != static_cast<std::size_t>(F->order() + 1))
            data.degenerate_matches = false;
    }
    // every isotropic free K-point is a lambda image
    for (const auto& p : absolute_points_g(km))
        if (fibers.find(p) == fibers.end()) data.abs_g_covered = false;
    return data;
}

GeneratedGroup half_turn_subgroup(const KModule& km, std::size_t cap)
{
    const HermitianSpace& sp = km.space();
    const FieldPtr& F = sp.field();
    if (F->galois() || F->characteristic() == 2)
        throw std::invalid_argument("half_turn_subgroup: needs sigma = id, char != 2");
    if (!F->is_finite()) throw std::invalid_argument("half_turn_subgroup: finite fields only");
    auto pts = projective_points(F, sp.dim());
    std::vector<SemiMap> gens;
    GeneratedGroup seen(F, binomial(sp.dim(), km.deg()));
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (sp.h(pts[i], pts[i]).is_zero()) continue;
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            if (sp.h(pts[j], pts[j]).is_zero()) continue;
            if (!sp.h(pts[i], pts[j]).is_zero()) continue;
            SemiMap rot = reflection(sp, pts[i]).compose(reflection(sp, pts[j]));
            SemiMap half_turn = ext_power_map(rot, km.deg());
            if (seen.insert(half_turn)) gens.push_back(half_turn);
        }
    }
    return generate_group(F, binomial(sp.dim(), km.deg()), gens, cap);
}

namespace {

// isotropy of the ternary form <a, b, c> over all completions of Q
Tri ternary_isotropic(const Integer& a, const Integer& b, const Integer& c)
{
    // real place
    bool pos = a > 0 || b > 0 || c > 0;
    bool neg = a < 0 || b < 0 || c < 0;
    if (!(pos && neg)) return Tri::No;
    // <a,b,c> ~ a<1, b/a, c/a>: isotropic over Q_p iff (-ab, -ac)_p = 1
    Integer m1 = squarefree_part(-a * b);
    Integer m2 = squarefree_part(-a * c);
    std::vector<Integer> places{2};
    for (const Integer& m : {m1, m2}) {
        Integer n = boost::multiprecision::abs(m);
        for (Integer d = 3; d * d <= n; d += 2)
            if (n % d == 0) {
                if (std::find(places.begin(), places.end(), d) == places.end()) places.push_back(d);
                while (n % d == 0) n /= d;
            }
        if (n > 1 && n != 2 && std::find(places.begin(), places.end(), n) == places.end()) places.push_back(n);
    }
    for (const auto& p : places)
        if (hilbert_symbol(m1, m2, p) != 1) return Tri::No;
    return Tri::Yes;
}

} // namespace

Tri represents(const Vec& diag, const Scalar& c)
{
    if (diag.size() != 2) throw std::invalid_argument("represents: binary forms only");
    const FieldPtr& F = diag[0].field();
    if (F->kind() != FieldKind::Rationals) throw std::invalid_argument("represents: rational forms only");
    if (c.is_zero()) return Tri::Yes;
    // d1 x^2 + d2 y^2 = c solvable over Q iff <D1, D2, -C> is isotropic
    auto to_int = [](const Scalar& s) {
        return boost::multiprecision::numerator(s.rat0()) * boost::multiprecision::denominator(s.rat0());
    };
    return ternary_isotropic(to_int(diag[0]), to_int(diag[1]), -to_int(c));
}

} // namespace hodge
