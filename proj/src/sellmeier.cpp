#include "pdcm/error.hpp"
#include "pdcm/materials.hpp"

#include <cmath>
#include <span>

#include <fmt/format.h>

namespace pdcm {
namespace {

constexpr double kCelsiusOffset = 273.15;

// Relative permittivity n^2 and its wavelength derivative.
struct Permittivity {
    double eps = 0.0;
    double deps = 0.0;
};

// Shared body of the two pole families: A - K l^2 + sum of pole terms.
Permittivity pole_sum(std::span<const double> c, double lambda, bool lambda2_numerator) {
    const double l2 = lambda * lambda;
    Permittivity p{c[0] - c[1] * l2, -2.0 * c[1] * lambda};
    for (std::size_t k = 2; k + 1 < c.size(); k += 2) {
        const double b = c[k];
        const double pole = c[k + 1];
        const double den = l2 - pole;
        if (lambda2_numerator) {
            p.eps += b * l2 / den;
            p.deps += -2.0 * b * pole * lambda / (den * den);
        } else {
            p.eps += b / den;
            p.deps += -2.0 * b * lambda / (den * den);
        }
    }
    return p;
}

Permittivity gayer(std::span<const double> c, double lambda, double temperature_k) {
    const double t = temperature_k - kCelsiusOffset;
    const double f = (t - 24.5) * (t + 570.82);
    const double a1 = c[0], a2 = c[1], a3 = c[2], a4 = c[3], a5 = c[4], a6 = c[5];
    const double b1 = c[6], b2 = c[7], b3 = c[8], b4 = c[9];
    const double l2 = lambda * lambda;
    const double uv_pole = a3 + b3 * f;
    const double den1 = l2 - uv_pole * uv_pole;
    const double den2 = l2 - a5 * a5;
    const double num1 = a2 + b2 * f;
    const double num2 = a4 + b4 * f;
    Permittivity p;
    p.eps = a1 + b1 * f + num1 / den1 + num2 / den2 - a6 * l2;
    p.deps = -2.0 * lambda * num1 / (den1 * den1) - 2.0 * lambda * num2 / (den2 * den2) - 2.0 * a6 * lambda;
    return p;
}

// Terms of the form B / (lambda_0^-2 - lambda^-2).
Permittivity skauli(std::span<const double> c, double lambda, double temperature_k) {
    const double dt = temperature_k - c[13];
    const double l1 = c[2] + c[3] * dt;
    const double b2 = c[4] + c[5] * dt + c[6] * dt * dt;
    const double l2 = c[7] + c[8] * dt + c[9] * dt * dt;
    const double l3 = c[11] + c[12] * dt;
    const double strengths[3] = {c[1], b2, c[10]};
    const double resonances[3] = {l1, l2, l3};

    const double inv_l2 = 1.0 / (lambda * lambda);
    const double d_inv_l2 = -2.0 / (lambda * lambda * lambda);
    Permittivity p{c[0], 0.0};
    for (int k = 0; k < 3; ++k) {
        const double den = 1.0 / (resonances[k] * resonances[k]) - inv_l2;
        p.eps += strengths[k] / den;
        p.deps += strengths[k] * d_inv_l2 / (den * den);
    }
    return p;
}

struct IndexEval {
    double n = 0.0;
    double dn = 0.0;
};

IndexEval from_permittivity(const Permittivity& p) {
    const double n = std::sqrt(p.eps);
    return {n, p.deps / (2.0 * n)};
}

IndexEval evaluate(const SellmeierForm& s, double lambda, double temperature_k) {
    const std::span<const double> c{s.coefficients};
    switch (s.form) {
    case FormId::constant:
        return {c[0], 0.0};
    case FormId::pole_lambda2:
        return from_permittivity(pole_sum(c, lambda, true));
    case FormId::pole_inverse:
        return from_permittivity(pole_sum(c, lambda, false));
    case FormId::pole_inverse_thermo: {
        const std::size_t n_sellmeier = c.size() - 5;
        const IndexEval base = from_permittivity(pole_sum(c.first(n_sellmeier), lambda, false));
        const double t_ref = c[n_sellmeier];
        const double a3 = c[n_sellmeier + 1], a2 = c[n_sellmeier + 2];
        const double a1 = c[n_sellmeier + 3], a0 = c[n_sellmeier + 4];
        const double inv = 1.0 / lambda;
        const double dn_dt = (a3 * inv * inv * inv + a2 * inv * inv + a1 * inv + a0) * 1e-5;
        const double d_dn_dt = (-3.0 * a3 * inv * inv * inv * inv - 2.0 * a2 * inv * inv * inv - a1 * inv * inv) * 1e-5;
        const double dt = temperature_k - t_ref;
        return {base.n + dn_dt * dt, base.dn + d_dn_dt * dt};
    }
    case FormId::gayer_lithium_niobate:
        return from_permittivity(gayer(c, lambda, temperature_k));
    case FormId::skauli_gallium_arsenide:
        return from_permittivity(skauli(c, lambda, temperature_k));
    }
    throw DomainError("unknown dispersion form");
}

IndexEval checked_evaluate(const SellmeierForm& s, double lambda, double temperature_k) {
    if (!(temperature_k > 0.0)) {
        throw DomainError(fmt::format("temperature must be positive, got {} K", temperature_k));
    }
    if (!s.valid_range.contains(lambda)) {
        throw DomainError(fmt::format("wavelength {} um outside valid range [{}, {}] um of Sellmeier set '{}'",
                                      lambda, s.valid_range.lo, s.valid_range.hi, s.source_tag));
    }
    const IndexEval e = evaluate(s, lambda, temperature_k);
    if (!std::isfinite(e.n) || !std::isfinite(e.dn) || e.n <= 1.0) {
        throw DomainError(fmt::format("Sellmeier set '{}' gives no real index > 1 at {} um", s.source_tag, lambda));
    }
    return e;
}

}  // namespace

double SellmeierForm::index(double lambda_um, double temperature_k) const {
    return checked_evaluate(*this, lambda_um, temperature_k).n;
}

double SellmeierForm::dn_dlambda(double lambda_um, double temperature_k) const {
    return checked_evaluate(*this, lambda_um, temperature_k).dn;
}

bool SellmeierForm::has_analytic_derivative() const { return true; }

}  // namespace pdcm
