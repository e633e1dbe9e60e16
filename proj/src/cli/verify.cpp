#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <random>

#include "hyperdelta/cli.hpp"
#include "hyperdelta/geometry.hpp"
#include "hyperdelta/scattering.hpp"
#include "hyperdelta/specfun.hpp"
#include "hyperdelta/sturmian.hpp"
#include "hyperdelta/wavefunction.hpp"

namespace hyperdelta::cli {

namespace {

using scattering::ChannelEnergy;
using scattering::ScatteringSolution;

struct Check {
    std::string name;
    double residual;
    double tolerance;
};

struct Channel {
    ChannelEnergy energy;
    ScatteringSolution sol;
};

// Momentum set and hyperradii of the default suite; momenta scale with |c|.
constexpr double base_momenta[] = {0.0, 0.1, 0.3, 0.45};
constexpr double radii[] = {0.5, 1.0, 2.0, 5.0};

double max_over(double acc, double v) {
    return std::isnan(v) ? v : std::max(acc, v);
}

std::vector<Channel> channels(const ModelParams& params, bool inverse_s) {
    std::vector<Channel> out;
    for (const double k0 : base_momenta) {
        const double k = k0 * std::abs(params.c());
        Channel ch{scattering::channel_energy(k, params), scattering::solve_channel(k, params)};
        if (inverse_s) {
            ch.sol.S = 1.0 / ch.sol.S;
        }
        out.push_back(ch);
    }
    return out;
}

std::vector<cplx> recurrence_grid() {
    std::vector<cplx> grid;
    for (int i = 0; i <= 100; ++i) {
        grid.emplace_back(0.0, 0.1 * i);
    }
    std::mt19937_64 rng(20240601);
    std::uniform_real_distribution<double> radius(0.0, 5.0), angle(-pi, pi);
    for (int i = 0; i < 50; ++i) {
        grid.push_back(std::polar(radius(rng), angle(rng)));
    }
    return grid;
}

Check bessel_evenness() {
    double worst = 0.0;
    for (const double t : {0.5, 1.0, 2.0, 5.0, 10.0}) {
        for (const double x : {0.1, 0.5, 1.0, 5.0, 20.0}) {
            const cplx plus = specfun::bessel_k(cplx{0.0, t}, x).value;
            const cplx minus = specfun::bessel_k(cplx{0.0, -t}, x).value;
            worst = max_over(worst, std::abs(plus - minus) / std::abs(plus));
        }
    }
    return {"bessel_evenness", worst, 1e-12};
}

Check bessel_realness() {
    double worst = 0.0;
    for (const double t : {0.5, 1.0, 2.0, 5.0, 10.0}) {
        for (const double x : {0.1, 0.5, 1.0, 5.0, 20.0}) {
            worst = max_over(worst, std::abs(specfun::bessel_k(cplx{0.0, t}, x).value.imag()));
        }
    }
    return {"bessel_realness", worst, specfun::BesselEvalSpec{}.abs_floor};
}

Check bessel_recurrence() {
    double worst = 0.0;
    for (int i = 1; i <= 20; ++i) {
        for (const double x : {0.1, 0.2, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0}) {
            worst = max_over(worst, specfun::bessel_recurrence_residual(0.5 * i, x));
        }
    }
    return {"bessel_recurrence", worst, 1e-8};
}

Check bessel_half_order() {
    double worst = 0.0;
    for (const double x : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0}) {
        const double exact = std::sqrt(pi / (2.0 * x)) * std::exp(-x);
        worst = max_over(worst, std::abs(specfun::bessel_k_real_order(0.5, x) - exact) / exact);
    }
    return {"bessel_half_order", worst, 1e-12};
}

Check sturmian_boundary() {
    double worst = 0.0;
    for (const double c : {-1.0, -0.3, 0.7}) {
        const ModelParams params(c);
        for (int n = 0; n < 20; ++n) {
            worst = max_over(worst, sturmian::boundary_residual(cplx{0.35 + 0.45 * n, 0.0}, params));
            worst = max_over(worst, sturmian::boundary_residual(cplx{0.0, 0.25 + 0.5 * n}, params));
        }
    }
    return {"sturmian_boundary", worst, 1e-8};
}

Check rho_real_on_imaginary_axis(const ModelParams& params) {
    double worst = 0.0;
    for (int n = 0; n <= 100; ++n) {
        worst = max_over(worst, std::abs(sturmian::rho(cplx{0.0, 0.1 * n}, params).imag()));
    }
    return {"rho_real_on_imaginary_axis", worst, 1e-12};
}

std::vector<Check> recurrence_checks(const std::vector<Channel>& chans, const ModelParams& params) {
    const std::vector<cplx> grid = recurrence_grid();
    double direct = 0.0;
    double b_form = 0.0;
    double cosine = 0.0;
    for (const auto& ch : chans) {
        const scattering::Coefficient A = [&](cplx nu) { return scattering::coefficient_A(nu, ch.sol); };
        for (const cplx nu : grid) {
            direct = max_over(direct, scattering::recurrence_residual(A, nu, ch.energy, params));
            b_form = max_over(b_form, scattering::recurrence_residual_b_form(A, nu, ch.energy, params));
            const cplx a = A(nu);
            cosine = max_over(cosine, std::abs(scattering::coefficient_A_cosine(nu, ch.sol) - a) / std::abs(a));
        }
    }
    return {{"recurrence_closed_form", direct, 1e-10},
            {"recurrence_b_form", b_form, 1e-10},
            {"coefficient_cosine_form", cosine, 1e-10}};
}

std::vector<Check> s_matrix_checks(const ModelParams& params) {
    const double threshold = pi * std::abs(params.c()) / 6.0;
    double unitarity = 0.0;
    double forms = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double k = threshold * i / 100.0;
        const cplx S = scattering::s_matrix(k, params);
        const cplx S3 = scattering::s3_coefficient(k, params);
        const double beta = scattering::beta_of(scattering::channel_energy(k, params), params);
        unitarity = max_over(unitarity, std::abs(std::abs(S) - 1.0));
        forms = max_over(forms, std::abs(scattering::s_matrix_factored(k, params) - S));
        forms = max_over(forms, std::abs(scattering::s_matrix_from_beta(beta) - S));
        forms = max_over(forms, std::abs(scattering::s3_from_beta(beta) - S3) / std::abs(S3));
    }
    const auto pole = scattering::s_matrix_pole(params);
    const cplx expected{0.0, pi * std::abs(params.c()) / (6.0 * std::sqrt(3.0))};
    return {{"s_matrix_unitarity", unitarity, 1e-12},
            {"s_matrix_form_equivalence", forms, 1e-12},
            {"s_matrix_pole", std::abs(pole.k - expected), 1e-10}};
}

std::vector<Check> adiabatic_checks(const ModelParams& params) {
    std::vector<cplx> grid;
    for (int n = 1; n <= 100; ++n) {
        grid.emplace_back(0.0, 0.1 * n);
        grid.emplace_back(0.09 * n, 0.0);
    }
    double relation = 0.0;
    for (const auto& p : sturmian::rho_curve(grid, params)) {
        if (p.relation_residual) {
            relation = max_over(relation, *p.relation_residual);
        }
    }
    double bound = 0.0;
    if (params.attractive()) {
        const double R_prime = 1e3 * 6.0 / (pi * std::abs(params.c()));
        const double target = -params.inverse_a() * params.inverse_a();
        bound = std::abs(sturmian::adiabatic_root(R_prime, params, 0).Lambda - target) / std::abs(target);
    }
    double free_limit = 0.0;
    const double R_prime = 1e-3;
    for (const double c : {-1e-6, 1e-6}) {
        for (const auto& root : sturmian::adiabatic_roots(R_prime, ModelParams(c), 12)) {
            const double kappa = root.kappa;
            const double expected = (kappa * kappa - 0.25) / (R_prime * R_prime);
            free_limit = max_over(free_limit, std::abs(root.Lambda - expected) / std::abs(expected));
        }
    }
    return {{"adiabatic_relation", relation, 1e-10},
            {"adiabatic_bound_limit", bound, 1e-6},
            {"adiabatic_free_limit", free_limit, 1e-8}};
}

std::vector<Check> wavefunction_checks(const std::vector<Channel>& chans, const ModelParams& params) {
    double boundary = 0.0;
    double symmetry = 0.0;
    double plane = 0.0;
    double momenta = 0.0;
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> coord(-3.0, 3.0);
    std::uniform_real_distribution<double> angle(-pi / 6.0, pi / 6.0);
    for (const auto& ch : chans) {
        for (const double R : radii) {
            for (int j = 0; j < 6; ++j) {
                boundary = max_over(
                    boundary, wavefunction::boundary_condition_residual(R, ch.energy, ch.sol, params, j));
            }
            const double theta = angle(rng);
            const cplx base = wavefunction::psi_closed_form({R, theta, 0}, ch.energy, ch.sol, params);
            for (int j = 1; j < 6; ++j) {
                const cplx shifted =
                    wavefunction::psi_closed_form({R, theta + j * pi / 3.0, j}, ch.energy, ch.sol, params);
                symmetry = max_over(symmetry, std::abs(shifted - base) / std::abs(base));
            }
        }
        std::optional<cplx> reference;
        for (int n = 0; n < 20;) {
            const geometry::ParticleConfig cfg{coord(rng), coord(rng), coord(rng)};
            if (std::min({std::abs(cfg.x1 - cfg.x2), std::abs(cfg.x2 - cfg.x3), std::abs(cfg.x1 - cfg.x3)}) < 1e-3) {
                continue;
            }
            const auto p = geometry::to_hyperspherical(geometry::to_jacobi(cfg));
            const cplx ratio = wavefunction::psi_closed_form(p, ch.energy, ch.sol, params) /
                               wavefunction::psi_plane_wave(cfg, ch.energy, ch.sol, params);
            if (!reference) {
                reference = ratio;
            }
            plane = max_over(plane, std::abs(ratio / *reference - 1.0));
            ++n;
        }
        const auto m = wavefunction::plane_wave_momenta(ch.energy, params);
        momenta = max_over(momenta, std::abs(m.k1 + m.k2 + m.k3));
        momenta = max_over(momenta, std::abs(m.k1 * m.k1 + m.k2 * m.k2 + m.k3 * m.k3 - ch.energy.E));
    }
    return {{"wavefunction_boundary", boundary, 1e-6},
            {"wavefunction_sector_symmetry", symmetry, 1e-12},
            {"plane_wave_equivalence", plane, 1e-10},
            {"momentum_identities", momenta, 1e-14}};
}

std::vector<Check> kl_checks(const std::vector<Channel>& chans, const ModelParams& params,
                             const wavefunction::QuadratureSpec& q, std::size_t& nodes) {
    const Channel& ch = chans[2];
    std::optional<cplx> reference;
    double spread = 0.0;
    for (int n = 0; n < 6; ++n) {
        const double R = radii[n % 4] * (1.0 + 0.05 * n);
        const double theta = n * pi / 3.0 + (n - 2.5) * pi / 90.0;
        const geometry::HyperPoint p = geometry::make_point(R, theta);
        const auto kl = wavefunction::kl_integral(p, ch.energy, ch.sol, params, q);
        nodes += kl.nodes;
        const cplx ratio = kl.value / wavefunction::psi_closed_form(p, ch.energy, ch.sol, params);
        if (!reference) {
            reference = ratio;
        }
        spread = max_over(spread, std::abs(ratio / *reference - 1.0));
    }
    const cplx a{0.3, 0.2};
    const double z = 1.5;
    const auto pair = wavefunction::kl_cosh_transform(a, z, q);
    nodes += pair.nodes;
    const cplx exact = I * pi * std::exp(-z * std::cosh(a));
    return {{"kl_inversion_ratio", spread, 1e-6},
            {"kl_cosh_pair", std::abs(pair.value - exact) / std::abs(exact), 1e-6}};
}

}  // namespace

ResultEnvelope cmd_verify(const RunConfig& config) {
    const double c = config.number("c");
    if (!(c < 0.0)) {
        throw ConfigError("verify needs an attractive coupling c < 0");
    }
    const ModelParams params(c);
    const bool inverse_s = config.text("fault") == "inverse_s";
    std::optional<double> tol_override;
    if (const std::string& text = config.text("tol_override"); !text.empty()) {
        char* end = nullptr;
        const double v = std::strtod(text.c_str(), &end);
        if (end != text.c_str() + text.size() || !(v > 0.0) || !std::isfinite(v)) {
            throw ConfigError("tol_override must be a positive number");
        }
        tol_override = v;
    }
    wavefunction::QuadratureSpec q;
    q.t_max = config.number("t_max");
    q.rel_tol = config.number("rel_tol");
    if (!(q.t_max > 0.0 && q.t_max <= specfun::max_imag_order) || !(q.rel_tol > 0.0 && q.rel_tol < 1.0)) {
        throw ConfigError("t_max must lie in (0, 50] and rel_tol in (0, 1)");
    }

    const std::vector<Channel> chans = channels(params, inverse_s);
    std::vector<Check> checks{bessel_evenness(), bessel_realness(), bessel_recurrence(), bessel_half_order(),
                              sturmian_boundary(), rho_real_on_imaginary_axis(params)};
    auto append = [&](std::vector<Check> more) { checks.insert(checks.end(), more.begin(), more.end()); };
    append(recurrence_checks(chans, params));
    append(s_matrix_checks(params));
    append(adiabatic_checks(params));
    append(wavefunction_checks(chans, params));
    std::size_t nodes = 0;
    append(kl_checks(chans, params, q, nodes));

    ResultEnvelope env{"verify", config, {"name", "max_residual", "tolerance", "pass"}, {}, {}};
    long long failed = 0;
    for (const auto& check : checks) {
        const double tol = tol_override.value_or(check.tolerance);
        const bool pass = check.residual <= tol;
        failed += pass ? 0 : 1;
        env.rows.push_back({check.name, check.residual, tol, pass});
    }
    env.passed = failed == 0;
    env.diagnostics = {{"checks", std::to_string(checks.size())},
                       {"failed", std::to_string(failed)},
                       {"fault", config.text("fault")},
                       {"quadrature_nodes", std::to_string(nodes)}};
    return env;
}

}  // namespace hyperdelta::cli
