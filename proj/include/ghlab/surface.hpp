#ifndef GHLAB_SURFACE_HPP
#define GHLAB_SURFACE_HPP

#include <array>
#include <string>
#include <vector>

#include "ghlab/entire.hpp"
#include "ghlab/linalg.hpp"

namespace ghlab {

/// Chart of the fibration over C. `mid` charts sit between consecutive
/// critical points over one cluster: cluster index k (0 = the origin
/// prefactor cluster, k >= 1 the k-th nonzero zero) and sheet 1 <= l <= m-1.
struct ChartLabel {
    enum class Kind { minus, plus, mid };

    Kind kind = Kind::minus;
    int k = -1;
    int l = 0;

    static ChartLabel minus() { return {Kind::minus, -1, 0}; }
    static ChartLabel plus() { return {Kind::plus, -1, 0}; }
    static ChartLabel mid(int k, int l) { return {Kind::mid, k, l}; }

    bool operator==(const ChartLabel&) const = default;
    std::string name() const;
};

/// Chart atlas of the hypersurface model u1 u2 = P(u3). Transitions and the
/// chi maps are generated by one family of section functions
///   W_alpha(u) = u^{J_0(alpha)} prod_k E_{l_k}(u/b_k)^{J_k(alpha)}
/// with the index table J_r(minus) = 0, J_r(plus) = m_r, J_k(mid(k,l)) = l,
/// J_r(mid(k,l)) = 0 for r != k. Then f_{alpha beta} = W_alpha / W_beta is
/// the multiplier converting v_alpha into v_beta, and W_plus = P.
struct ChartAtlas {
    EntireProduct product;
    std::vector<ChartLabel> charts;

    /// Number of cluster slots: index 0 is the origin, 1..N the truncated zeros.
    int num_clusters() const { return product.truncation + 1; }

    /// m_r; r = 0 gives the origin multiplicity (delta).
    int multiplicity(int r) const;

    Complex cluster_point(int r) const; // b_r (0 for r = 0)

    /// J_r(alpha) per the index table.
    int j_index(int r, const ChartLabel& alpha) const;

    /// Section function W_alpha(u).
    ScaledComplex section(const ChartLabel& alpha, Complex u) const;
};

/// Charts: minus, every mid(k, l) with m_k >= 2 in cluster order, plus.
ChartAtlas make_atlas(const EntireProduct& product);

/// Chart pairs consecutive in the sweep over one cluster's critical points:
/// (minus, plus) and per cluster minus -> mid(k,1) -> ... -> mid(k,m-1) -> plus.
std::vector<std::pair<ChartLabel, ChartLabel>> adjacent_chart_pairs(const ChartAtlas& atlas);

/// |u1 u2 - P(u3)|.
double surface_residual(const EntireProduct& p, Complex u1, Complex u2, Complex u3);

struct SingularPoint {
    int cluster = 0; // r index
    Complex b;
    int multiplicity = 0;
    std::string type; // "A1", "A2", ...
};

struct ExceptionalChain {
    int cluster = 0;
    Complex b;
    std::vector<std::string> curves; // "E_<k>_<l>", path-adjacent in order
    int self_intersection = -2;      // adjunction metadata, not recomputed
};

struct SingularityReport {
    std::vector<SingularPoint> points;
    std::vector<ExceptionalChain> chains;
};

/// Singular points of {u1 u2 = P(u3)} are exactly (0, 0, b_k) for clusters
/// of multiplicity >= 2 (grad F = (u2, u1, -P'(u3)) vanishes on the surface
/// iff u1 = u2 = 0 and u3 is a repeated zero). Type A_{m-1}, chain of m-1
/// exceptional curves.
SingularityReport singular_points(const EntireProduct& p);

/// f_{alpha beta}(u): multiplier with (u, v)_alpha ~ (u, f_{alpha beta}(u) v)_beta.
/// Throws pole_at_u when u hits a cluster point carrying a negative exponent.
Complex transition(const ChartAtlas& atlas, const ChartLabel& alpha, const ChartLabel& beta, Complex u);
ScaledComplex transition_scaled(const ChartAtlas& atlas, const ChartLabel& alpha, const ChartLabel& beta,
                                Complex u);

/// |f_ab f_bc - f_ac| / |f_ac|; exponent additivity makes this rounding-level.
double cocycle_check(const ChartAtlas& atlas, const ChartLabel& alpha, const ChartLabel& beta,
                     const ChartLabel& gamma, Complex u);

/// Signed winding of f_{alpha beta} around cluster point r on a small circle
/// inside the zero separation; equals J_r(alpha) - J_r(beta).
int pole_order(const ChartAtlas& atlas, const ChartLabel& alpha, const ChartLabel& beta, int cluster);

/// chi(alpha): (u, v) -> (P(u)/(W_alpha v), W_alpha v, u). Images lie on the
/// surface; cross-chart images of ~-equivalent points coincide.
std::array<Complex, 3> chi_map(const ChartAtlas& atlas, const ChartLabel& alpha, Complex u, Complex v);

/// Scaled form of chi for audits whose intermediate magnitudes leave the
/// double range (high-genus products far from the origin). Ratios of these
/// components cancel shared factors exactly.
std::array<ScaledComplex, 3> chi_map_scaled(const ChartAtlas& atlas, const ChartLabel& alpha, Complex u,
                                            const ScaledComplex& v);

/// Largest |u| at which every factor's log magnitude stays within the
/// scaled exponent budget (conservative; used to pick audit disks).
double representable_radius(const EntireProduct& p);

/// Two-center fixture: blow-up of {u1 u2 = u3^2} at the origin with the
/// explicit three-chart maps, checked on a 20 x 20 (u, v) grid per chart.
struct BlowupCheckReport {
    double max_surface_eq = 0.0;   // u1 u2 - u3^2 on images
    double max_blowup_eq = 0.0;    // u_j U_k - u_k U_j and U1 U2 - U3^2
    double max_overlap = 0.0;      // chart formulas compared on overlaps
    double max_roundtrip = 0.0;    // Theta0 . chi0 vs identity
    double limit_to_0_1_0 = 0.0;   // chart 1 fibre limit toward [0:1:0]
    double limit_to_1_0_0 = 0.0;   // chart 3 fibre limit toward [1:0:0]
    bool passed = false;
    std::vector<std::string> failures;
};

BlowupCheckReport blowup_fixture_check();

} // namespace ghlab

#endif
