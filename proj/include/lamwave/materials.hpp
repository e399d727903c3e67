#pragma once

#include <numbers>
#include <string_view>
#include <vector>

namespace lamwave {

/// Vacuum permeability (N/A^2).
inline constexpr double mu0 = 4.0e-7 * std::numbers::pi;

enum class ModelKind { NeoHookean, Yeoh, FungDemiray, Gent };

std::string_view to_string(ModelKind kind);
ModelKind model_kind_from_string(std::string_view name);

/// Incompressible energy W(I1). beta is ignored for NeoHookean.
struct HyperelasticModel {
    ModelKind kind = ModelKind::NeoHookean;
    double shear_modulus = 1.0; // Pa
    double beta = 0.0;

    /// Throws DomainError when shear_modulus <= 0 or beta < 0.
    void validate() const;
};

HyperelasticModel make_model(ModelKind kind, double shear_modulus, double beta = 0.0);

/// G = 2 dW/dI1.
double generalized_shear_modulus(const HyperelasticModel& model, double I1);
/// dG/dI1.
double generalized_shear_modulus_derivative(const HyperelasticModel& model, double I1);
double strain_energy(const HyperelasticModel& model, double I1);

/// Invariant of the uniaxial stretch lambda^2 + 2/lambda.
double uniaxial_invariant(double lambda);

struct ShearCoefficients {
    double g = 0.0; // Pa
    double h = 0.0; // Pa
};

ShearCoefficients shear_coefficients(const HyperelasticModel& model, double lambda);

/// Inverse of shear_coefficients for a given kind.
HyperelasticModel calibrate_from_gh(ModelKind kind, double g, double h, double lambda);

/// lambda^2 G / g as a function of the normalised shear strain r.
double stiffness_ratio_curve(ModelKind kind, double r);

struct Phase {
    HyperelasticModel model;
    double density = 1.0;          // kg/m^3
    double volume_fraction = 0.5;
    double permeability = mu0;     // N/A^2
    double remnant_induction = 0.0; // T

    void validate() const;
};

class Laminate {
public:
    Laminate(Phase phase1, Phase phase2, double period);

    const Phase& phase(int alpha) const { return alpha == 1 ? p1_ : p2_; }
    const Phase& phase1() const { return p1_; }
    const Phase& phase2() const { return p2_; }
    double period() const { return period_; }

    /// Both phases share the kind and beta (closed-form Gent path).
    bool equal_nonlinearity() const;

private:
    Phase p1_;
    Phase p2_;
    double period_;
};

struct MagnetoCoefficients {
    double mu_breve = mu0;  // N/A^2
    double br_check = 0.0;  // T
};

MagnetoCoefficients magneto_coefficients(const Laminate& laminate);

/// nu1 G1(I) + nu2 G2(I) at I = lambda^2 + 2/lambda.
double average_shear_modulus(const Laminate& laminate, double lambda);
double average_shear_modulus_derivative(const Laminate& laminate, double lambda);

/// nu1 G1 + nu2 G2 of the undeformed phases.
double arithmetic_modulus(const Laminate& laminate);

/// Applied field either as induction, dimensionless pair, or their product (mu_breve = mu0 only).
class MagneticLoad {
public:
    enum class Form { Induction, Normalized, Product };

    static MagneticLoad induction(double b_tesla);
    static MagneticLoad normalized(double b_n, double br_n);
    static MagneticLoad product(double bn_br);

    Form form() const { return form_; }
    double value() const { return a_; }

    /// Right-hand side of the stretch balance (Pa).
    double balance_rhs(const Laminate& laminate) const;

private:
    MagneticLoad(Form f, double a, double b) : form_(f), a_(a), b_(b) {}
    Form form_;
    double a_;
    double b_;
};

struct NormalizedLoad {
    double b_n = 0.0;
    double br_n = 0.0;
};

NormalizedLoad normalize_load(const Laminate& laminate, double b_tesla);

/// Left-hand side mu0 Gbar(lambda) (lambda^2 - 1/lambda).
double balance_lhs(const Laminate& laminate, double lambda);

struct StretchSolution {
    double lambda = 1.0;
    double rhs = 0.0;
    /// Set when the Gent cubic has more than one admissible root.
    bool multiple_roots = false;
};

/// Physical stretch by continuation in the load from lambda = 1.
StretchSolution stretch_from_field(const Laminate& laminate, const MagneticLoad& load);
StretchSolution stretch_from_rhs(const Laminate& laminate, double rhs);

/// Admissible roots of the equal-beta Gent cubic, ascending.
std::vector<double> gent_cubic_roots(const Laminate& laminate, double rhs);

/// Stretch range (lo, hi) where every phase stays below Gent locking.
struct StretchRange {
    double lo = 0.0;
    double hi = 0.0;
};
StretchRange admissible_stretch_range(const Laminate& laminate);

} // namespace lamwave
