#include "lamwave/materials.hpp"

#include "lamwave/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

namespace lamwave {

namespace {

constexpr double gent_margin = 1e-9;

double gent_factor(const HyperelasticModel& m, double I1)
{
    const double f = 1.0 - m.beta * (I1 - 3.0);
    if (f <= gent_margin) {
        std::ostringstream os;
        os << "Gent locking: 1 - beta (I1 - 3) = " << f << " at I1 = " << I1
           << " (beta = " << m.beta << ")";
        throw GentLocking(os.str());
    }
    return f;
}

void check_invariant(double I1)
{
    // Uniaxial invariants equal 3 only up to rounding near lambda = 1.
    if (!(I1 >= 3.0 - 1e-12)) {
        throw DomainError("I1 = " + std::to_string(I1) + " is below 3");
    }
}

} // namespace

std::string_view to_string(ModelKind kind)
{
    switch (kind) {
    case ModelKind::NeoHookean: return "neo_hookean";
    case ModelKind::Yeoh: return "yeoh";
    case ModelKind::FungDemiray: return "fung_demiray";
    case ModelKind::Gent: return "gent";
    }
    return "unknown";
}

ModelKind model_kind_from_string(std::string_view name)
{
    if (name == "neo_hookean" || name == "neohookean") return ModelKind::NeoHookean;
    if (name == "yeoh") return ModelKind::Yeoh;
    if (name == "fung_demiray" || name == "fung") return ModelKind::FungDemiray;
    if (name == "gent") return ModelKind::Gent;
    throw DomainError("unknown model kind '" + std::string(name) + "'");
}

void HyperelasticModel::validate() const
{
    if (!(shear_modulus > 0.0) || !std::isfinite(shear_modulus)) {
        throw DomainError("shear modulus must be positive");
    }
    if (!(beta >= 0.0) || !std::isfinite(beta)) {
        throw DomainError("beta must be non-negative");
    }
}

HyperelasticModel make_model(ModelKind kind, double shear_modulus, double beta)
{
    HyperelasticModel m{kind, shear_modulus, kind == ModelKind::NeoHookean ? 0.0 : beta};
    m.validate();
    return m;
}

double generalized_shear_modulus(const HyperelasticModel& m, double I1)
{
    check_invariant(I1);
    const double x = I1 - 3.0;
    switch (m.kind) {
    case ModelKind::NeoHookean: return m.shear_modulus;
    case ModelKind::Yeoh: return m.shear_modulus * (1.0 + m.beta * x);
    case ModelKind::FungDemiray: return m.shear_modulus * std::exp(m.beta * x);
    case ModelKind::Gent: return m.shear_modulus / gent_factor(m, I1);
    }
    return m.shear_modulus;
}

double generalized_shear_modulus_derivative(const HyperelasticModel& m, double I1)
{
    check_invariant(I1);
    const double x = I1 - 3.0;
    switch (m.kind) {
    case ModelKind::NeoHookean: return 0.0;
    case ModelKind::Yeoh: return m.shear_modulus * m.beta;
    case ModelKind::FungDemiray: return m.shear_modulus * m.beta * std::exp(m.beta * x);
    case ModelKind::Gent: {
        const double f = gent_factor(m, I1);
        return m.shear_modulus * m.beta / (f * f);
    }
    }
    return 0.0;
}

double strain_energy(const HyperelasticModel& m, double I1)
{
    check_invariant(I1);
    const double x = I1 - 3.0;
    const double G = m.shear_modulus;
    switch (m.kind) {
    case ModelKind::NeoHookean: return 0.5 * G * x;
    case ModelKind::Yeoh: return 0.5 * G * (x + 0.5 * m.beta * x * x);
    case ModelKind::FungDemiray:
        if (m.beta == 0.0) return 0.5 * G * x;
        return G / (2.0 * m.beta) * std::expm1(m.beta * x);
    case ModelKind::Gent:
        if (m.beta == 0.0) return 0.5 * G * x;
        return -G / (2.0 * m.beta) * std::log(gent_factor(m, I1));
    }
    return 0.0;
}

double uniaxial_invariant(double lambda)
{
    if (!(lambda > 0.0)) throw DomainError("stretch must be positive");
    return lambda * lambda + 2.0 / lambda;
}

ShearCoefficients shear_coefficients(const HyperelasticModel& model, double lambda)
{
    const double I = uniaxial_invariant(lambda);
    const double l2 = lambda * lambda;
    return {l2 * generalized_shear_modulus(model, I),
            3.0 * l2 * l2 * generalized_shear_modulus_derivative(model, I)};
}

HyperelasticModel calibrate_from_gh(ModelKind kind, double g, double h, double lambda)
{
    if (!(g > 0.0) || !(h >= 0.0)) throw DomainError("calibration needs g > 0 and h >= 0");
    const double I = uniaxial_invariant(lambda);
    const double x = I - 3.0;
    const double l2 = lambda * lambda;
    const double bf = h / (3.0 * l2 * g); // Fung-Demiray beta
    HyperelasticModel m{kind, 0.0, 0.0};
    switch (kind) {
    case ModelKind::NeoHookean:
        if (h != 0.0) throw InversionFailure("neo-Hookean phases have h = 0");
        m.shear_modulus = g / l2;
        break;
    case ModelKind::Yeoh:
        if (bf == 0.0) {
            m.shear_modulus = g / l2;
            break;
        }
        {
            const double den = 1.0 / bf - x;
            if (!(den > 0.0)) throw InversionFailure("Yeoh inverse singular: 1/beta_F <= I1 - 3");
            m.beta = 1.0 / den;
            m.shear_modulus = g / l2 * (1.0 - bf * x);
        }
        break;
    case ModelKind::FungDemiray:
        m.beta = bf;
        m.shear_modulus = g / l2 * std::exp(-bf * x);
        break;
    case ModelKind::Gent:
        if (bf == 0.0) {
            m.shear_modulus = g / l2;
            break;
        }
        m.beta = 1.0 / (1.0 / bf + x);
        m.shear_modulus = g / l2 / (1.0 + bf * x);
        break;
    }
    if (!(m.shear_modulus > 0.0) || !std::isfinite(m.beta)) {
        throw InversionFailure("calibration produced an inadmissible model");
    }
    return m;
}

double stiffness_ratio_curve(ModelKind kind, double r)
{
    const double q = r * r / 3.0;
    switch (kind) {
    case ModelKind::NeoHookean: return 1.0;
    case ModelKind::Yeoh: return 1.0 + q;
    case ModelKind::FungDemiray: return std::exp(q);
    case ModelKind::Gent:
        if (1.0 - q <= gent_margin) throw GentLocking("Gent stiffness curve requires r^2 < 3");
        return 1.0 / (1.0 - q);
    }
    return 1.0;
}

void Phase::validate() const
{
    model.validate();
    if (!(density > 0.0)) throw DomainError("density must be positive");
    if (!(volume_fraction > 0.0 && volume_fraction < 1.0)) {
        throw DomainError("volume fraction must lie in (0, 1)");
    }
    if (!(permeability >= mu0 * (1.0 - 1e-12))) throw DomainError("permeability below mu0");
    if (!std::isfinite(remnant_induction)) throw DomainError("remnant induction not finite");
}

Laminate::Laminate(Phase phase1, Phase phase2, double period)
    : p1_(phase1), p2_(phase2), period_(period)
{
    p1_.validate();
    p2_.validate();
    if (std::abs(p1_.volume_fraction + p2_.volume_fraction - 1.0) > 1e-12) {
        throw DomainError("volume fractions must sum to one");
    }
    if (!(period > 0.0)) throw DomainError("period must be positive");
}

bool Laminate::equal_nonlinearity() const
{
    return p1_.model.kind == p2_.model.kind && p1_.model.beta == p2_.model.beta;
}

MagnetoCoefficients magneto_coefficients(const Laminate& lam)
{
    const Phase& a = lam.phase1();
    const Phase& b = lam.phase2();
    const double inv = a.volume_fraction / a.permeability + b.volume_fraction / b.permeability;
    MagnetoCoefficients mc;
    mc.mu_breve = 1.0 / inv;
    mc.br_check = mc.mu_breve * (a.volume_fraction * a.remnant_induction / a.permeability
                                 + b.volume_fraction * b.remnant_induction / b.permeability);
    return mc;
}

double average_shear_modulus(const Laminate& lam, double lambda)
{
    const double I = uniaxial_invariant(lambda);
    return lam.phase1().volume_fraction * generalized_shear_modulus(lam.phase1().model, I)
           + lam.phase2().volume_fraction * generalized_shear_modulus(lam.phase2().model, I);
}

double average_shear_modulus_derivative(const Laminate& lam, double lambda)
{
    const double I = uniaxial_invariant(lambda);
    return lam.phase1().volume_fraction * generalized_shear_modulus_derivative(lam.phase1().model, I)
           + lam.phase2().volume_fraction * generalized_shear_modulus_derivative(lam.phase2().model, I);
}

double arithmetic_modulus(const Laminate& lam)
{
    return lam.phase1().volume_fraction * lam.phase1().model.shear_modulus
           + lam.phase2().volume_fraction * lam.phase2().model.shear_modulus;
}

MagneticLoad MagneticLoad::induction(double b_tesla)
{
    if (!std::isfinite(b_tesla)) throw DomainError("applied induction not finite");
    return {Form::Induction, b_tesla, 0.0};
}

MagneticLoad MagneticLoad::normalized(double b_n, double br_n)
{
    if (!std::isfinite(b_n) || !std::isfinite(br_n)) throw DomainError("normalised load not finite");
    return {Form::Normalized, b_n, br_n};
}

MagneticLoad MagneticLoad::product(double bn_br)
{
    if (!std::isfinite(bn_br)) throw DomainError("load product not finite");
    return {Form::Product, bn_br, 0.0};
}

double MagneticLoad::balance_rhs(const Laminate& lam) const
{
    const MagnetoCoefficients mc = magneto_coefficients(lam);
    const double ratio = mu0 / mc.mu_breve;
    const double scale = mu0 * arithmetic_modulus(lam);
    switch (form_) {
    case Form::Induction:
        return (1.0 - ratio) * a_ * a_ + 2.0 * a_ * mc.br_check * ratio;
    case Form::Normalized:
        return scale * ((1.0 - ratio) * a_ * a_ + a_ * b_);
    case Form::Product:
        if (std::abs(ratio - 1.0) > 1e-12) {
            throw DomainError("a load product alone requires mu_breve = mu0");
        }
        return scale * a_;
    }
    return 0.0;
}

NormalizedLoad normalize_load(const Laminate& lam, double b_tesla)
{
    const MagnetoCoefficients mc = magneto_coefficients(lam);
    const double s = std::sqrt(mu0 * arithmetic_modulus(lam));
    return {b_tesla / s, 2.0 * mc.br_check * (mu0 / mc.mu_breve) / s};
}

double balance_lhs(const Laminate& lam, double lambda)
{
    return mu0 * average_shear_modulus(lam, lambda) * (lambda * lambda - 1.0 / lambda);
}

namespace {

double balance_lhs_derivative(const Laminate& lam, double l)
{
    const double dI = 2.0 * l - 2.0 / (l * l);
    return mu0 * (average_shear_modulus_derivative(lam, l) * dI * (l * l - 1.0 / l)
                  + average_shear_modulus(lam, l) * (2.0 * l + 1.0 / (l * l)));
}

// Stretch at which lambda^2 + 2/lambda = 3 + x, on the requested side of 1.
double stretch_for_invariant(double x, bool above)
{
    double lo = above ? 1.0 : 1e-300;
    double hi = above ? 2.0 : 1.0;
    if (above) {
        while (uniaxial_invariant(hi) - 3.0 < x) hi *= 2.0;
    } else {
        lo = 0.5;
        while (uniaxial_invariant(lo) - 3.0 < x) lo *= 0.5;
    }
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        const bool inside = uniaxial_invariant(mid) - 3.0 < x;
        if (above == inside) lo = mid; else hi = mid;
    }
    return above ? lo : hi;
}

bool admissible(const Laminate& lam, double l)
{
    if (!(l > 0.0) || !std::isfinite(l)) return false;
    const double I = uniaxial_invariant(l);
    for (int a = 1; a <= 2; ++a) {
        const HyperelasticModel& m = lam.phase(a).model;
        if (m.kind == ModelKind::Gent && 1.0 - m.beta * (I - 3.0) <= gent_margin) return false;
    }
    return true;
}

std::vector<double> real_cubic_roots(double a, double b, double c, double d)
{
    std::vector<double> roots;
    if (std::abs(a) < 1e-14 * (std::abs(b) + std::abs(c) + std::abs(d))) {
        if (std::abs(b) > 0.0) {
            const double disc = c * c - 4.0 * b * d;
            if (disc >= 0.0) {
                const double q = -0.5 * (c + std::copysign(std::sqrt(disc), c));
                roots.push_back(q / b);
                if (q != 0.0) roots.push_back(d / q);
            }
        } else if (c != 0.0) {
            roots.push_back(-d / c);
        }
        return roots;
    }
    const double B = b / a, C = c / a, D = d / a;
    const double Q = (B * B - 3.0 * C) / 9.0;
    const double R = (2.0 * B * B * B - 9.0 * B * C + 27.0 * D) / 54.0;
    if (R * R < Q * Q * Q) {
        const double th = std::acos(std::clamp(R / std::sqrt(Q * Q * Q), -1.0, 1.0));
        const double s = -2.0 * std::sqrt(Q);
        for (int k = 0; k < 3; ++k) {
            roots.push_back(s * std::cos((th + 2.0 * std::numbers::pi * (k - 1)) / 3.0) - B / 3.0);
        }
    } else {
        const double A = -std::copysign(std::cbrt(std::abs(R) + std::sqrt(R * R - Q * Q * Q)), R);
        const double Bq = (A == 0.0) ? 0.0 : Q / A;
        roots.push_back(A + Bq - B / 3.0);
    }
    for (double& x : roots) {
        for (int it = 0; it < 4; ++it) {
            const double f = ((a * x + b) * x + c) * x + d;
            const double df = (3.0 * a * x + 2.0 * b) * x + c;
            if (df == 0.0) break;
            x -= f / df;
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

} // namespace

StretchRange admissible_stretch_range(const Laminate& lam)
{
    StretchRange r{0.0, std::numeric_limits<double>::infinity()};
    for (int a = 1; a <= 2; ++a) {
        const HyperelasticModel& m = lam.phase(a).model;
        if (m.kind != ModelKind::Gent || m.beta == 0.0) continue;
        const double x = (1.0 - gent_margin) / m.beta;
        r.lo = std::max(r.lo, stretch_for_invariant(x, false));
        r.hi = std::min(r.hi, stretch_for_invariant(x, true));
    }
    return r;
}

std::vector<double> gent_cubic_roots(const Laminate& lam, double rhs)
{
    const HyperelasticModel& m1 = lam.phase1().model;
    if (m1.kind != ModelKind::Gent || !lam.equal_nonlinearity()) {
        throw DomainError("the cubic applies to Gent phases with equal beta");
    }
    const double beta = m1.beta;
    const double R = rhs / (mu0 * arithmetic_modulus(lam));
    std::vector<double> out;
    for (double l : real_cubic_roots(1.0 + R * beta, 0.0, -R * (1.0 + 3.0 * beta), 2.0 * R * beta - 1.0)) {
        if (admissible(lam, l)) out.push_back(l);
    }
    return out;
}

StretchSolution stretch_from_rhs(const Laminate& lam, double rhs)
{
    if (!std::isfinite(rhs)) throw DomainError("load is not finite");
    StretchSolution sol;
    sol.rhs = rhs;
    if (lam.phase1().model.kind == ModelKind::Gent && lam.equal_nonlinearity()) {
        sol.multiple_roots = gent_cubic_roots(lam, rhs).size() > 1;
    }
    if (rhs == 0.0) return sol;

    const StretchRange range = admissible_stretch_range(lam);
    double lam_cur = 1.0;
    double reached = 0.0;
    double step = rhs;
    const double floor = 1e-15 * std::abs(rhs);
    while (reached != rhs) {
        double next = reached + step;
        if ((rhs > 0.0 && next > rhs) || (rhs < 0.0 && next < rhs)) next = rhs;
        bool ok = false;
        double l = lam_cur;
        try {
            const double pred = lam_cur + (next - reached) / balance_lhs_derivative(lam, lam_cur);
            if (admissible(lam, pred)) l = pred;
            for (int it = 0; it < 60; ++it) {
                const double f = balance_lhs(lam, l) - next;
                const double dl = f / balance_lhs_derivative(lam, l);
                double trial = l - dl;
                if (!admissible(lam, trial)) break;
                l = trial;
                if (std::abs(dl) <= 1e-12 * l) {
                    const double f2 = balance_lhs(lam, l) - next;
                    l -= f2 / balance_lhs_derivative(lam, l);
                    ok = admissible(lam, l);
                    break;
                }
            }
        } catch (const GentLocking&) {
            ok = false;
        }
        if (ok) {
            reached = next;
            lam_cur = l;
            step *= 2.0;
        } else {
            step *= 0.5;
            if (std::abs(step) < floor) {
                const double lock = rhs > 0.0 ? range.hi : range.lo;
                std::ostringstream os;
                os << "stretch continuation stalled at lambda = " << lam_cur
                   << " (locking stretch " << lock << ")";
                throw NoRoot(os.str(), lock);
            }
        }
    }
    sol.lambda = lam_cur;
    return sol;
}

StretchSolution stretch_from_field(const Laminate& lam, const MagneticLoad& load)
{
    return stretch_from_rhs(lam, load.balance_rhs(lam));
}

} // namespace lamwave
