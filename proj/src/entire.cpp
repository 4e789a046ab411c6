#include "ghlab/entire.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "ghlab/error.hpp"

namespace ghlab {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kLn2 = 0.6931471805599453094;
constexpr double kZeroGapRel = 1e-6; // accumulation gate on pairwise zero gaps

} // namespace

ScaledComplex ScaledComplex::from(Complex c) {
    if (c == Complex{0.0, 0.0}) return zero();
    ScaledComplex s;
    s.mant = c;
    s.normalize();
    return s;
}

ScaledComplex& ScaledComplex::normalize() {
    if (is_zero) return *this;
    const double a = std::max(std::abs(mant.real()), std::abs(mant.imag()));
    if (a == 0.0) {
        *this = zero();
        return *this;
    }
    int e = 0;
    std::frexp(a, &e);
    mant = {std::ldexp(mant.real(), -e), std::ldexp(mant.imag(), -e)};
    exp2 += e;
    return *this;
}

ScaledComplex& ScaledComplex::mul(const ScaledComplex& o) {
    if (is_zero || o.is_zero) {
        *this = zero();
        return *this;
    }
    mant *= o.mant;
    exp2 += o.exp2;
    return normalize();
}

ScaledComplex& ScaledComplex::mul_exp(Complex s) {
    if (is_zero) return *this;
    const double t = s.real() / kLn2;
    // saturate instead of overflowing the exponent; values this far out are
    // only ever used through ratios of identical factors
    const double k = std::clamp(std::floor(t), -4.0e18, 4.0e18);
    const double rem = s.real() - k * kLn2;
    mant *= std::polar(std::exp(std::clamp(rem, -700.0, 700.0)), s.imag());
    exp2 += static_cast<long long>(k);
    return normalize();
}

ScaledComplex ScaledComplex::inverse() const {
    ScaledComplex r;
    r.mant = 1.0 / mant;
    r.exp2 = -exp2;
    r.normalize();
    return r;
}

ScaledComplex ScaledComplex::pow(long long k) const {
    if (is_zero) {
        if (k <= 0) throw Error(ErrCode::pole_at_u, "zero base raised to non-positive power");
        return zero();
    }
    ScaledComplex base = (k < 0) ? inverse() : *this;
    unsigned long long e = static_cast<unsigned long long>(k < 0 ? -k : k);
    ScaledComplex acc = one();
    while (e > 0) {
        if (e & 1ULL) acc.mul(base);
        ScaledComplex sq = base;
        sq.mul(base);
        base = sq;
        e >>= 1;
    }
    return acc;
}

Complex ScaledComplex::to_complex() const {
    if (is_zero) return {0.0, 0.0};
    const int e = static_cast<int>(std::clamp<long long>(exp2, -4000, 4000));
    return {std::ldexp(mant.real(), e), std::ldexp(mant.imag(), e)};
}

double ScaledComplex::log_abs() const {
    if (is_zero) return -std::numeric_limits<double>::infinity();
    return std::log(std::abs(mant)) + static_cast<double>(exp2) * kLn2;
}

ScaledComplex weierstrass_factor_scaled(int m, Complex z) {
    if (z == Complex{1.0, 0.0}) return ScaledComplex::zero();
    Complex s{0.0, 0.0};
    Complex zp{1.0, 0.0};
    for (int k = 1; k <= m; ++k) {
        zp *= z;
        s += zp / static_cast<double>(k);
    }
    ScaledComplex r = ScaledComplex::from(Complex{1.0, 0.0} - z);
    r.mul_exp(s);
    return r;
}

Complex weierstrass_factor(int m, Complex z) { return weierstrass_factor_scaled(m, z).to_complex(); }

namespace {

void check_zero_gaps(const std::vector<ZeroEntry>& zeros, int delta) {
    // gaps are judged against the local modulus, so wide dynamic ranges
    // (geometric ladders) pass while genuine pile-ups fail
    for (std::size_t i = 0; i < zeros.size(); ++i) {
        if (delta > 0 && std::abs(zeros[i].b) < kZeroGapRel)
            throw Error(ErrCode::convergence_unattainable, "zero collides with the origin prefactor",
                        static_cast<int>(i));
        for (std::size_t j = i + 1; j < zeros.size(); ++j) {
            const double local = std::max(std::abs(zeros[i].b), std::abs(zeros[j].b));
            if (std::abs(zeros[i].b - zeros[j].b) < kZeroGapRel * local) {
                std::ostringstream os;
                os << "zeros " << i << " and " << j << " are closer than " << kZeroGapRel * local
                   << "; moduli do not diverge";
                throw Error(ErrCode::convergence_unattainable, os.str(), static_cast<int>(i),
                            static_cast<int>(j));
            }
        }
    }
}

EntireProduct assemble(std::vector<ZeroEntry> zeros, int delta, GenusMode mode, double R, double tol) {
    EntireProduct p;
    p.delta = delta;
    p.mode = mode;
    p.radius = R;
    p.tol = tol;

    check_zero_gaps(zeros, delta);

    if (mode == GenusMode::paper_index) {
        int k = 0;
        for (ZeroEntry& z : zeros) z.genus = ++k;
        p.zeros = std::move(zeros);
        p.truncation = static_cast<int>(p.zeros.size());
        p.tail_log_bound = 0.0;
        return p;
    }

    if (!(R > 0.0) || !(tol > 0.0))
        throw Error(ErrCode::invalid_parameter, "minimal_genus mode needs a working radius and tolerance");

    std::stable_sort(zeros.begin(), zeros.end(),
                     [](const ZeroEntry& a, const ZeroEntry& b) { return std::abs(a.b) < std::abs(b.b); });
    for (ZeroEntry& z : zeros) z.genus = 0;

    const int k_total = static_cast<int>(zeros.size());
    int n_min = 0;
    while (n_min < k_total && std::abs(zeros[static_cast<std::size_t>(n_min)].b) < 2.0 * R) ++n_min;

    // |log E_0(u/b)| <= 2 |u/b| for |u/b| <= 1/2: suffix sums of the bound
    std::vector<double> suffix(static_cast<std::size_t>(k_total) + 1, 0.0);
    for (int k = k_total - 1; k >= 0; --k)
        suffix[static_cast<std::size_t>(k)] =
            suffix[static_cast<std::size_t>(k) + 1] +
            2.0 * zeros[static_cast<std::size_t>(k)].multiplicity * (R / std::abs(zeros[static_cast<std::size_t>(k)].b));

    int n = n_min;
    while (n < k_total && suffix[static_cast<std::size_t>(n)] > tol) ++n;

    p.zeros = std::move(zeros);
    p.truncation = n;
    p.tail_log_bound = suffix[static_cast<std::size_t>(n)];
    return p;
}

} // namespace

EntireProduct build_product(const ZeroList& zero_list, GenusMode mode, double R,
                            double tol) {
    std::vector<ZeroEntry> zeros;
    int delta = 0;
    for (const auto& [b, m] : zero_list) {
        if (m < 1) throw Error(ErrCode::invalid_parameter, "zero multiplicity must be >= 1");
        if (b == Complex{0.0, 0.0})
            delta += m;
        else
            zeros.push_back({b, m, 0});
    }
    return assemble(std::move(zeros), delta, mode, R, tol);
}

EntireProduct build_product(const ProjectionReport& report, GenusMode mode, double R, double tol) {
    if (report.accumulation_flag)
        throw Error(ErrCode::convergence_unattainable,
                    "projection report carries the accumulation flag; no convergent product");
    std::vector<ZeroEntry> zeros;
    int delta = 0;
    for (const Cluster& c : report.clusters) {
        if (c.contains_origin)
            delta += c.multiplicity;
        else
            zeros.push_back({c.b, c.multiplicity, 0});
    }
    return assemble(std::move(zeros), delta, mode, R, tol);
}

ScaledComplex eval_product_scaled(const EntireProduct& p, Complex u, int truncation_override) {
    const int n = truncation_override < 0
                      ? p.truncation
                      : std::min(truncation_override, static_cast<int>(p.zeros.size()));
    ScaledComplex acc = ScaledComplex::one();
    if (p.delta > 0) {
        acc = ScaledComplex::from(u).pow(p.delta);
        if (acc.is_zero) return acc;
    }
    for (int k = 0; k < n; ++k) {
        const ZeroEntry& z = p.zeros[static_cast<std::size_t>(k)];
        if (u == z.b) return ScaledComplex::zero();
        const ScaledComplex f = weierstrass_factor_scaled(z.genus, u / z.b);
        if (f.is_zero) return ScaledComplex::zero();
        acc.mul(f.pow(z.multiplicity));
    }
    return acc;
}

ProductValue eval_product(const EntireProduct& p, Complex u) {
    ProductValue out;
    out.value = eval_product_scaled(p, u).to_complex();
    if (p.mode == GenusMode::minimal_genus) {
        out.certified = std::abs(u) <= p.radius;
        out.log_abs_error_bound =
            out.certified ? p.tail_log_bound : std::numeric_limits<double>::infinity();
    } else {
        out.certified = true;
        out.log_abs_error_bound = 0.0;
    }
    return out;
}

int winding_number(const std::function<ScaledComplex(Complex)>& f, Complex center, double radius,
                   int samples) {
    if (!(radius > 0.0)) throw Error(ErrCode::invalid_parameter, "contour radius must be > 0");
    int s = std::max(samples, 4096);
    constexpr int kMaxSamples = 1 << 20;
    while (true) {
        double total = 0.0;
        double max_step = 0.0;
        const ScaledComplex first = f(center + Complex{radius, 0.0});
        if (first.is_zero) throw Error(ErrCode::contour_through_zero, "function vanishes on the contour");
        ScaledComplex prev = first;
        for (int i = 1; i <= s; ++i) {
            const double phi = 2.0 * kPi * static_cast<double>(i % s) / static_cast<double>(s);
            const ScaledComplex w = (i == s) ? first : f(center + std::polar(radius, phi));
            if (w.is_zero) throw Error(ErrCode::contour_through_zero, "function vanishes on the contour");
            const double step = std::arg(w.mant * std::conj(prev.mant));
            total += step;
            max_step = std::max(max_step, std::abs(step));
            prev = w;
        }
        const double turns = total / (2.0 * kPi);
        const long long w = std::llround(turns);
        if (max_step <= kPi / 2.0 && std::abs(turns - static_cast<double>(w)) < 0.25)
            return static_cast<int>(w);
        if (s >= kMaxSamples)
            throw Error(ErrCode::contour_through_zero,
                        "winding did not stabilize; contour likely passes near a zero");
        s *= 2;
    }
}

int zero_audit(const EntireProduct& p, Complex center, double radius, int samples) {
    if (!(radius > 0.0)) throw Error(ErrCode::invalid_parameter, "contour radius must be > 0");

    const double clearance = 1e-6 * radius;
    auto check_clearance = [&](Complex b, int idx) {
        const double d = std::abs(std::abs(b - center) - radius);
        if (d < clearance) {
            std::ostringstream os;
            os << "zero " << idx << " within " << d << " of the contour";
            throw Error(ErrCode::contour_through_zero, os.str(), idx, -1, d);
        }
    };
    if (p.delta > 0) check_clearance({0.0, 0.0}, -1);
    for (int k = 0; k < p.truncation; ++k) check_clearance(p.zeros[static_cast<std::size_t>(k)].b, k);

    return winding_number([&](Complex u) { return eval_product_scaled(p, u); }, center, radius, samples);
}

} // namespace ghlab
