#ifndef GHLAB_ENTIRE_HPP
#define GHLAB_ENTIRE_HPP

#include <functional>
#include <utility>
#include <vector>

#include "ghlab/directions.hpp"
#include "ghlab/linalg.hpp"

namespace ghlab {

/// Complex number in the form mant * 2^exp2. Keeps long products of
/// elementary factors (and their integer powers) away from overflow and
/// underflow; an exact zero is tracked as a flag so that products through a
/// vanishing factor stay exactly zero.
struct ScaledComplex {
    Complex mant{1.0, 0.0};
    long long exp2 = 0;
    bool is_zero = false;

    static ScaledComplex one() { return {}; }
    static ScaledComplex zero() { return {{0.0, 0.0}, 0, true}; }
    static ScaledComplex from(Complex c);

    ScaledComplex& normalize();
    ScaledComplex& mul(const ScaledComplex& o);
    ScaledComplex& mul(Complex c) { return mul(from(c)); }
    ScaledComplex& mul_exp(Complex s); // multiply by e^s
    ScaledComplex inverse() const;     // requires !is_zero
    ScaledComplex pow(long long k) const;

    Complex to_complex() const; // saturates to inf/0 outside double range
    double log_abs() const;     // natural log of |value|; -inf when zero
};

/// E_0(z) = 1 - z,  E_m(z) = (1 - z) exp(z + z^2/2 + ... + z^m/m).
Complex weierstrass_factor(int m, Complex z);
ScaledComplex weierstrass_factor_scaled(int m, Complex z);

enum class GenusMode { paper_index, minimal_genus };

struct ZeroEntry {
    Complex b;            // nonzero
    int multiplicity = 1; // m_k >= 1
    int genus = 0;        // l_k
};

/// P(u) = u^delta * prod_{k <= N} E_{l_k}(u / b_k)^{m_k}, with a certified
/// bound on the log-magnitude contribution of the factors beyond N on the
/// working disk |u| <= radius (minimal_genus mode).
struct EntireProduct {
    int delta = 0;
    std::vector<ZeroEntry> zeros;
    GenusMode mode = GenusMode::paper_index;
    int truncation = 0; // N: number of leading zeros eval uses
    double radius = 0.0;
    double tol = 0.0;
    double tail_log_bound = 0.0;
};

using ZeroList = std::vector<std::pair<Complex, int>>;

/// Explicit zero list (b_k, m_k); entries with b = 0 fold into delta.
/// paper_index assigns genus l_k = k over the nonzero zeros in the given
/// order and uses every factor. minimal_genus sorts by modulus, assigns
/// genus 0 everywhere and picks the smallest truncation N for which the
/// elementary-factor estimate |log E_0(z)| <= 2|z| (valid for |z| <= 1/2)
/// certifies the dropped factors within tol on |u| <= R. Throws
/// convergence_unattainable when the zero moduli accumulate.
EntireProduct build_product(const ZeroList& zeros, GenusMode mode,
                            double R = 0.0, double tol = 0.0);

/// Same, from a projection report: delta = m0, zeros from the non-origin
/// clusters in report order. Refuses reports with the accumulation flag.
EntireProduct build_product(const ProjectionReport& report, GenusMode mode, double R = 0.0,
                            double tol = 0.0);

struct ProductValue {
    Complex value;
    double log_abs_error_bound = 0.0; // bound on |log| error from dropped factors
    bool certified = true;            // false outside the working disk
};

ProductValue eval_product(const EntireProduct& p, Complex u);

/// truncation_override < 0 uses p.truncation; otherwise evaluates the
/// partial product over the first min(truncation_override, zeros) entries.
ScaledComplex eval_product_scaled(const EntireProduct& p, Complex u, int truncation_override = -1);

/// Discrete argument principle along |u - center| = radius: sums
/// principal-value phase increments of f. Sample count starts at
/// max(samples, 4096) and doubles while any increment exceeds pi/2 or the
/// total misses an integer turn count. Throws contour_through_zero when f
/// vanishes on a sample.
int winding_number(const std::function<ScaledComplex(Complex)>& f, Complex center, double radius,
                   int samples = 4096);

/// Winding of the product along the circle. Throws contour_through_zero
/// when a zero of the truncated product lies within 1e-6 * radius of the
/// contour.
int zero_audit(const EntireProduct& p, Complex center, double radius, int samples = 4096);

} // namespace ghlab

#endif
