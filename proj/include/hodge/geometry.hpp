#pragma once

#include "hodge/groups.hpp"

#include <map>

namespace hodge {

/// A line of PG(3, F): canonical reduced row-echelon 2 x 4 representative of
/// the row space, so equality is decidable by comparing matrices.
struct Line
{
    Mat rref; // 2 x 4
    bool operator==(const Line& o) const { return rref == o.rref; }
    bool operator<(const Line& o) const;
    Vec point(int i) const { return rref.row(i); }
};

Line line_through(const FieldPtr& F, const Vec& u, const Vec& v);
std::vector<Line> all_lines(const FieldPtr& F); // PG(3, F), finite F

/// Orthogonal complement of a line under h, as a line.
Line perp_line(const HermitianSpace& space, const Line& L);

/// Image of a line under the map into rank-one K-submodules: the F-span of
/// {u^v, J(u^v)}, canonicalized by row reduction. The submodule is a free
/// K-point precisely when that span has dimension 2.
struct KPoint
{
    Mat span_rref; // rows span the orbit of u^v under K
    bool free = false;
    bool operator==(const KPoint& o) const { return span_rref == o.span_rref; }
    bool operator<(const KPoint& o) const;
};
KPoint lambda_point(const KModule& km, const Line& L);

struct PolarityReport
{
    bool pass = true;
    std::size_t lines_checked = 0;
    std::optional<Line> counterexample;
};
/// For every line L of PG(3, F): J(u ^ v) spans the wedge of the h-perp
/// line (the polarity induced by J).
PolarityReport check_J_polarity(const KModule& km);

/// Factor an isotropic Z (g(Z,Z) = 0) as z ^ w with h(z,z) = 0 = h(z,w).
std::pair<Vec, Vec> factor_isotropic(const KModule& km, const ExtVector& Z);

/// Isotropic projective points of h.
std::vector<Vec> absolute_points_h(const HermitianSpace& space);
/// Isotropic free K-points (canonical spans) of g.
std::vector<KPoint> absolute_points_g(const KModule& km);

struct FiberData
{
    std::map<std::size_t, std::size_t> size_histogram; // over free K-points
    std::size_t non_free_lines = 0;                    // lines with L = perp(L)
    bool degenerate_matches = true; // fiber size 2 <-> h|L non-degenerate, q+1 <-> degenerate
    bool abs_g_covered = true;      // isotropic free K-points all lie in the lambda image
};
FiberData lambda_fibers(const KModule& km);

/// Subgroup generated by the half-turn images eta(rho_u rho_v) over pairs of
/// orthogonal anisotropic vectors (axes meeting the Klein quadric);
/// sigma = id, char != 2, finite fields.
GeneratedGroup half_turn_subgroup(const KModule& km, std::size_t cap = 2000000);

/// Does the binary diagonal rational form represent the value c?
/// Exact: bounded search for a witness, p-adic obstruction for refutation.
Tri represents(const Vec& diag, const Scalar& c);

} // namespace hodge
