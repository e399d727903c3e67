#include "lamwave/soliton.hpp"

#include "lamwave/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace lamwave {

std::string_view to_string(WaveModelVariant v)
{
    switch (v) {
    case WaveModelVariant::FullHomogenized: return "full";
    case WaveModelVariant::SlowSpace: return "slow_space";
    case WaveModelVariant::SlowTime: return "slow_time";
    }
    return "unknown";
}

WaveModelVariant variant_from_string(std::string_view name)
{
    if (name == "full") return WaveModelVariant::FullHomogenized;
    if (name == "slow_space") return WaveModelVariant::SlowSpace;
    if (name == "slow_time") return WaveModelVariant::SlowTime;
    throw DomainError("unknown wave model variant '" + std::string(name) + "'");
}

OscillatorCoeffs oscillator_coeffs(const EffectiveModel& e, WaveModelVariant v, double speed)
{
    const double S = speed / e.c;
    const double S2 = S * S;
    OscillatorCoeffs oc;
    switch (v) {
    case WaveModelVariant::FullHomogenized:
        oc.c3 = 1.0 / (e.eta_y - e.eta_m * S2 - e.eta_t * S2 * S2);
        oc.c1 = (S2 - 1.0) * oc.c3;
        break;
    case WaveModelVariant::SlowSpace:
        oc.c3 = 1.0 / e.eta;
        oc.c1 = 2.0 * (S - 1.0) * oc.c3 / (S2 * S);
        break;
    case WaveModelVariant::SlowTime:
        oc.c3 = 1.0 / e.eta;
        oc.c1 = 2.0 * (S - 1.0) * oc.c3;
        break;
    }
    return oc;
}

SolitonSolution solve_soliton(const EffectiveModel& e, WaveModelVariant v, double speed, int sign)
{
    const OscillatorCoeffs oc = oscillator_coeffs(e, v, speed);
    if (!(oc.c1 > 0.0) || !(oc.c3 > 0.0) || !std::isfinite(oc.c3)) {
        throw NoSoliton("no sech soliton at s/c = " + std::to_string(speed / e.c)
                        + " (c1 = " + std::to_string(oc.c1) + ", c3 = " + std::to_string(oc.c3) + ")");
    }
    if (!(e.zeta > 0.0)) throw NoSoliton("solitary waves need zeta > 0");
    SolitonSolution s;
    s.speed = speed;
    s.c1 = oc.c1;
    s.c3 = oc.c3;
    s.sign = sign >= 0 ? 1 : -1;
    s.length = e.ell / std::sqrt(oc.c1);
    s.disp_amplitude = s.sign * e.ell * std::sqrt(6.0 / (oc.c3 * e.zeta));
    s.delta = s.disp_amplitude / s.length;
    return s;
}

double gudermannian(double x)
{
    return std::atan(std::sinh(x));
}

Waveform soliton_waveform(const SolitonSolution& s, double ell, const std::vector<double>& xi)
{
    Waveform w;
    w.strain.reserve(xi.size());
    w.displacement.reserve(xi.size());
    for (double x : xi) {
        const double z = ell * x / s.length;
        w.strain.push_back(s.delta / std::cosh(z));
        w.displacement.push_back(s.disp_amplitude * gudermannian(z));
    }
    return w;
}

double delta_squared(const EffectiveModel& e, WaveModelVariant v, double S)
{
    // c1 / c3 is finite on both sides of a pole of c3.
    switch (v) {
    case WaveModelVariant::FullHomogenized: return 6.0 * (S * S - 1.0) / e.zeta;
    case WaveModelVariant::SlowSpace: return 12.0 * (S - 1.0) / (S * S * S * e.zeta);
    case WaveModelVariant::SlowTime: return 12.0 * (S - 1.0) / e.zeta;
    }
    return 0.0;
}

SpeedBound existence_bound(const EffectiveModel& e)
{
    // Positivity of eta - (eta_m + 2 eta_t) X - eta_t X^2 for X = s^2/c^2 - 1 > 0.
    const double a = -e.eta_t;
    const double b = -(e.eta_m + 2.0 * e.eta_t);
    const double c = e.eta;
    SpeedBound out;
    double root = -1.0;
    if (a == 0.0) {
        if (b >= 0.0) {
            out.reason = UnboundedCase::Degenerate;
            return out;
        }
        root = -c / b;
    } else {
        const double disc = b * b - 4.0 * a * c;
        if (disc < 0.0) {
            out.reason = UnboundedCase::NoRealRoot;
            return out;
        }
        const double s = std::sqrt(disc);
        const double q = -0.5 * (b + std::copysign(s, b));
        const double r1 = q / a;
        const double r2 = q != 0.0 ? c / q : r1;
        root = -1.0;
        for (double r : {r1, r2}) {
            if (r >= 0.0 && (root < 0.0 || r < root)) root = r;
        }
        if (root < 0.0) {
            out.reason = UnboundedCase::NegativeRoots;
            return out;
        }
    }
    out.max_speed_ratio = std::sqrt(1.0 + root);
    return out;
}

double max_strain_amplitude(const EffectiveModel& e)
{
    const SpeedBound b = existence_bound(e);
    if (!b.max_speed_ratio) throw NoBound("soliton speed is unbounded");
    const double S = *b.max_speed_ratio;
    return std::sqrt((S * S - 1.0) * 6.0 / e.zeta);
}

ValidityCrossing mkdv_validity_speed(const EffectiveModel& e, WaveModelVariant v, double rel_err, double search_max)
{
    if (v == WaveModelVariant::FullHomogenized) throw DomainError("validity speed compares a reduction with the full model");
    if (!(rel_err >= 0.0)) throw DomainError("relative error must be non-negative");
    auto f = [&](double S) {
        return std::abs(std::sqrt(delta_squared(e, v, S) / delta_squared(e, WaveModelVariant::FullHomogenized, S)) - 1.0)
               - rel_err;
    };
    ValidityCrossing out;
    if (rel_err == 0.0) return out;
    const int n = 20000;
    const double dS = (search_max - 1.0) / n;
    double lo = 1.0 + 1e-9;
    if (f(lo) >= 0.0) {
        out.speed_ratio = lo;
        return out;
    }
    double hi = lo;
    bool found = false;
    for (int k = 1; k <= n; ++k) {
        hi = 1.0 + k * dS;
        if (f(hi) >= 0.0) {
            found = true;
            break;
        }
        lo = hi;
    }
    if (!found) throw NotReached("relative amplitude error never reaches the requested level");
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) >= 0.0) hi = mid; else lo = mid;
    }
    out.speed_ratio = 0.5 * (lo + hi);
    const SpeedBound b = existence_bound(e);
    out.beyond_existence_bound = b.max_speed_ratio && out.speed_ratio >= *b.max_speed_ratio;
    return out;
}

double shock_distance(const EffectiveModel& e, double V, double kappa)
{
    if (!(e.zeta > 0.0) || !(V > 0.0) || !(kappa > 0.0)) {
        throw DomainError("shock distance needs zeta, V and kappa positive");
    }
    return 16.0 * std::sqrt(3.0) / (9.0 * e.zeta * kappa) * e.c * e.c / (V * V);
}

double max_abs_time_derivative(std::span<const double> t, std::span<const double> v)
{
    if (t.size() != v.size()) throw DomainError("time and value series differ in length");
    double g = 0.0;
    for (std::size_t i = 1; i + 1 < t.size(); ++i) {
        g = std::max(g, std::abs((v[i + 1] - v[i - 1]) / (t[i + 1] - t[i - 1])));
    }
    return g;
}

std::optional<double> extrapolate_blowup(std::span<const GradientSample> samples, double G0, double lo, double hi)
{
    double sy = 0.0, sr = 0.0, syy = 0.0, syr = 0.0;
    int n = 0;
    for (const GradientSample& s : samples) {
        if (!(s.max_vt > 0.0)) continue;
        const double r = G0 / s.max_vt;
        if (r < lo) break;
        if (r > hi) continue;
        sy += s.y;
        sr += r;
        syy += s.y * s.y;
        syr += s.y * r;
        ++n;
    }
    if (n < 2) return std::nullopt;
    const double den = n * syy - sy * sy;
    if (den == 0.0) return std::nullopt;
    const double slope = (n * syr - sy * sr) / den;
    const double icpt = (sr - slope * sy) / n;
    if (!(slope < 0.0)) return std::nullopt;
    return -icpt / slope;
}

} // namespace lamwave
