#pragma once

// Conformal geometry of the unit disk: normalized Moebius factors,
// pseudohyperbolic distance and pseudohyperbolic disks.

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "errors.hpp"

namespace diskinterp {

using complex = std::complex<double>;

/// Points closer than this to the unit circle are rejected.
inline constexpr double kInteriorGuard = 1e-9;

/// Below this modulus b_lambda is taken to be the identity.
inline constexpr double kOriginCutoff = 1e-14;

/// A point strictly inside the unit disk, |value| < 1 - kInteriorGuard.
class DiskPoint {
public:
    constexpr DiskPoint() = default;

    explicit DiskPoint(complex value) : value_(value) {
        if (!(std::abs(value) < 1.0 - kInteriorGuard)) {
            throw domain_error("point outside the interior guard band of the unit disk");
        }
    }
    DiskPoint(double re, double im = 0.0) : DiskPoint(complex{re, im}) {}  // NOLINT

    [[nodiscard]] constexpr complex value() const noexcept { return value_; }
    [[nodiscard]] double modulus() const noexcept { return std::abs(value_); }

    friend bool operator==(const DiskPoint&, const DiskPoint&) = default;

private:
    complex value_{0.0, 0.0};
};

/// b_lambda(z) = (|lambda|/lambda) (z - lambda) / (1 - conj(lambda) z),
/// with b_0(z) = z.
[[nodiscard]] inline complex mobius_transform(DiskPoint lambda, complex z) {
    const complex l = lambda.value();
    const double r = std::abs(l);
    if (r < kOriginCutoff) return z;
    const complex unit = r / l;
    return unit * (z - l) / (1.0 - std::conj(l) * z);
}

/// |b_w(z)|. Arguments are put in a canonical order first so that the result
/// is bitwise symmetric.
[[nodiscard]] inline double pseudohyperbolic_distance(DiskPoint z, DiskPoint w) {
    complex a = z.value();
    complex b = w.value();
    if (a.real() > b.real() || (a.real() == b.real() && a.imag() > b.imag())) std::swap(a, b);
    return std::abs(a - b) / std::abs(1.0 - std::conj(b) * a);
}

/// log|b_lambda(z)| for interior z. Uses the identity
///   1 - |b|^2 = (1 - |z|^2)(1 - |lambda|^2) / |1 - conj(lambda) z|^2
/// so that factors close to modulus 1 do not lose digits.
[[nodiscard]] inline double log_mobius_modulus(DiskPoint lambda, complex z) {
    const complex l = lambda.value();
    const complex denom = 1.0 - std::conj(l) * z;
    const double q = (1.0 - std::norm(z)) * (1.0 - std::norm(l)) / std::norm(denom);
    if (q > 0.0 && q < 0.5) return 0.5 * std::log1p(-q);
    return std::log(std::abs(z - l) / std::abs(denom));
}

/// The pseudohyperbolic disk D(lambda, delta) = { z : |b_lambda(z)| < delta }
/// together with its Euclidean center and radius.
struct PseudoDisk {
    DiskPoint center_param;
    double radius_param = 0.0;
    complex euclid_center;
    double euclid_radius = 0.0;

    [[nodiscard]] bool contains(complex z) const {
        return std::abs(z - euclid_center) < euclid_radius;
    }
};

[[nodiscard]] inline PseudoDisk pseudo_disk_euclidean(DiskPoint lambda, double delta) {
    if (!(delta > 0.0 && delta < 1.0)) throw domain_error("pseudo-disk radius must lie in (0, 1)");
    const complex l = lambda.value();
    const double d2 = delta * delta;
    const double denom = 1.0 - d2 * std::norm(l);
    return PseudoDisk{lambda, delta, l * (1.0 - d2) / denom,
                      delta * (1.0 - std::norm(l)) / denom};
}

/// m points equally spaced in Euclidean angle on the boundary circle of
/// D(lambda, delta), starting at angle 0.
[[nodiscard]] inline std::vector<complex> sample_pseudo_circle(DiskPoint lambda, double delta,
                                                                std::size_t m) {
    if (m == 0) throw domain_error("sample count must be positive");
    const PseudoDisk disk = pseudo_disk_euclidean(lambda, delta);
    std::vector<complex> out;
    out.reserve(m);
    for (std::size_t k = 0; k < m; ++k) {
        const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(m);
        out.push_back(disk.euclid_center + std::polar(disk.euclid_radius, theta));
    }
    return out;
}

}  // namespace diskinterp
