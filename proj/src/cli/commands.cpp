#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <optional>

#include "CLI11.hpp"
#include "hyperdelta/cli.hpp"
#include "hyperdelta/geometry.hpp"
#include "hyperdelta/scattering.hpp"
#include "hyperdelta/specfun.hpp"
#include "hyperdelta/sturmian.hpp"
#include "hyperdelta/wavefunction.hpp"
#include "hyperdelta_cli_internal.hpp"

namespace hyperdelta::cli {

namespace {

constexpr double unitarity_tolerance = 1e-12;

std::string sci(double v) {
    return format_number(v);
}

ModelParams coupling(const RunConfig& config) {
    const double c = config.number("c");
    if (c == 0.0) {
        throw ConfigError("c must be non-zero");
    }
    return ModelParams(c);
}

void require_open_channel(double k, const ModelParams& params) {
    if (!params.attractive()) {
        throw ConfigError("the dimer + particle channel needs c < 0");
    }
    const double threshold = pi * std::abs(params.c()) / 6.0;
    if (!(k >= 0.0 && k < threshold)) {
        char msg[160];
        std::snprintf(msg, sizeof msg, "k = %.17g outside the open channel [0, %.17g)", k, threshold);
        throw ConfigError(msg);
    }
}

Cell optional_cell(const std::optional<double>& v) {
    return v ? Cell{*v} : Cell{};
}

}  // namespace

ResultEnvelope cmd_smatrix(const RunConfig& config) {
    const ModelParams params = coupling(config);
    const std::vector<double> grid = linspace(config, "k");
    for (const double k : grid) {
        require_open_channel(k, params);
    }
    ResultEnvelope env{"smatrix", config, {"k", "re_S", "im_S", "abs_S", "delta", "re_S3", "im_S3"}, {}, {}};
    double max_defect = 0.0;
    double max_form_gap = 0.0;
    double previous = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double k = grid[i];
        const cplx S = scattering::s_matrix(k, params);
        const cplx S3 = scattering::s3_coefficient(k, params);
        double delta = scattering::delta_of(S);
        if (i > 0) {
            // delta is defined mod pi; keep the branch closest to the previous row.
            delta += pi * std::round((previous - delta) / pi);
        }
        previous = delta;
        max_defect = std::max(max_defect, std::abs(std::abs(S) - 1.0));
        max_form_gap = std::max(max_form_gap, std::abs(scattering::s_matrix_factored(k, params) - S));
        env.rows.push_back({k, S.real(), S.imag(), std::abs(S), delta, S3.real(), S3.imag()});
    }
    if (max_defect > unitarity_tolerance) {
        throw AccuracyError("smatrix: |S| departs from 1 by " + sci(max_defect));
    }
    env.diagnostics = {{"rows", std::to_string(env.rows.size())},
                       {"max_unitarity_defect", sci(max_defect)},
                       {"max_form_difference", sci(max_form_gap)}};
    return env;
}

ResultEnvelope cmd_sturmian(const RunConfig& config) {
    const ModelParams params = coupling(config);
    const bool imaginary = config.text("axis") == "imag";
    const int kappa_max = config.integer("kappa_max");
    if (kappa_max < 0) {
        throw ConfigError("kappa_max must be non-negative");
    }
    std::vector<cplx> nu_grid;
    for (const double v : linspace(config, "nu")) {
        nu_grid.push_back(imaginary ? cplx{0.0, v} : cplx{v, 0.0});
    }
    std::vector<double> r_grid = linspace(config, "R");
    if (r_grid.front() <= 0.0) {
        throw ConfigError("R_min must be positive for adiabatic roots");
    }

    ResultEnvelope env{"sturmian",
                       config,
                       {"kind", "nu_re", "nu_im", "value_re", "value_im", "R_prime", "kappa", "Lambda",
                        "residual", "flag"},
                       {},
                       {}};
    double max_imag = 0.0;
    double max_relation = 0.0;
    long long poles = 0;
    for (const auto& p : sturmian::rho_curve(nu_grid, params)) {
        if (p.flag == sturmian::CurveFlag::pole) {
            ++poles;
        } else if (imaginary) {
            max_imag = std::max(max_imag, std::abs(p.value.rho.imag()));
        }
        if (p.relation_residual) {
            max_relation = std::max(max_relation, *p.relation_residual);
        }
        const bool pole = p.flag == sturmian::CurveFlag::pole;
        env.rows.push_back({std::string("rho"), p.value.nu.real(), p.value.nu.imag(),
                            pole ? Cell{} : Cell{p.value.rho.real()}, pole ? Cell{} : Cell{p.value.rho.imag()},
                            Cell{}, p.kappa ? Cell{static_cast<long long>(*p.kappa)} : Cell{},
                            optional_cell(p.Lambda), optional_cell(p.relation_residual),
                            sturmian::to_string(p.flag)});
    }
    double max_root_residual = 0.0;
    for (const double R_prime : r_grid) {
        for (const auto& root : sturmian::adiabatic_roots(R_prime, params, kappa_max)) {
            const cplx q = root.q;
            const cplx lhs = q * std::tan(pi * q / 6.0);
            const double residual = std::abs(lhs - pi * R_prime * params.c() / 6.0);
            max_root_residual = std::max(max_root_residual, residual);
            env.rows.push_back({std::string("root"), q.real(), q.imag(), Cell{}, Cell{}, R_prime,
                                static_cast<long long>(root.kappa), root.Lambda, residual, std::string("ok")});
        }
    }
    env.diagnostics = {{"rows", std::to_string(env.rows.size())},
                       {"pole_rows", std::to_string(poles)},
                       {"max_rho_imag_on_imag_axis", sci(max_imag)},
                       {"max_relation_residual", sci(max_relation)},
                       {"max_root_residual", sci(max_root_residual)}};
    return env;
}

ResultEnvelope cmd_wavefunction(const RunConfig& config) {
    const ModelParams params = coupling(config);
    const double k = config.number("k");
    require_open_channel(k, params);
    const std::string repr = config.text("representation");
    wavefunction::QuadratureSpec q;
    q.t_max = config.number("t_max");
    q.rel_tol = config.number("rel_tol");
    if (!(q.t_max > 0.0 && q.t_max <= specfun::max_imag_order)) {
        throw ConfigError("t_max must lie in (0, " + sci(specfun::max_imag_order) + "]");
    }
    if (!(q.rel_tol > 0.0 && q.rel_tol < 1.0)) {
        throw ConfigError("rel_tol must lie in (0, 1)");
    }
    const std::vector<double> r_grid = linspace(config, "R");
    if (r_grid.front() < 0.0) {
        throw ConfigError("R_min must be non-negative");
    }
    const std::vector<double> theta_grid = linspace(config, "theta");

    const auto energy = scattering::channel_energy(k, params);
    const auto sol = scattering::solve_channel(k, params);

    ResultEnvelope env{"wavefunction", config, {"R", "theta", "j", "re", "im", "abs", "repr"}, {}, {}};
    const bool both = repr == "both";
    if (both) {
        for (const char* extra : {"closed_re", "closed_im", "ratio_re", "ratio_im"}) {
            env.schema.emplace_back(extra);
        }
    }
    long long fallbacks = 0;
    long long cap_fallbacks = 0;
    std::size_t nodes = 0;
    std::optional<cplx> reference;
    double ratio_spread = 0.0;
    for (const double R : r_grid) {
        for (const double theta : theta_grid) {
            const geometry::HyperPoint p = geometry::make_point(R, theta);
            const cplx closed = wavefunction::psi_closed_form(p, energy, sol, params);
            std::vector<Cell> row{R, p.theta, static_cast<long long>(p.j)};
            if (repr == "closed") {
                row.insert(row.end(), {closed.real(), closed.imag(), std::abs(closed), std::string("closed")});
                env.rows.push_back(std::move(row));
                continue;
            }
            const double offset = std::abs(geometry::sector_offset(p.theta, p.j));
            std::optional<wavefunction::KlResult> kl;
            if (R == 0.0 || offset >= pi / 6.0 - q.margin) {
                ++fallbacks;
            } else {
                try {
                    kl = wavefunction::kl_integral(p, energy, sol, params, q);
                    nodes += kl->nodes;
                } catch (const AccuracyError&) {
                    ++cap_fallbacks;
                }
            }
            if (!kl) {
                row.insert(row.end(),
                           {closed.real(), closed.imag(), std::abs(closed), std::string("closed_fallback")});
                if (both) {
                    row.insert(row.end(), {closed.real(), closed.imag(), Cell{}, Cell{}});
                }
                env.rows.push_back(std::move(row));
                continue;
            }
            row.insert(row.end(), {kl->value.real(), kl->value.imag(), std::abs(kl->value), std::string("kl")});
            if (both) {
                const cplx ratio = kl->value / closed;
                if (!reference) {
                    reference = ratio;
                }
                ratio_spread = std::max(ratio_spread, std::abs(ratio / *reference - 1.0));
                row.insert(row.end(), {closed.real(), closed.imag(), ratio.real(), ratio.imag()});
            }
            env.rows.push_back(std::move(row));
        }
    }
    env.diagnostics = {{"rows", std::to_string(env.rows.size())}};
    if (repr != "closed") {
        env.diagnostics.emplace_back("quadrature_nodes", std::to_string(nodes));
        env.diagnostics.emplace_back("closed_fallback_rows", std::to_string(fallbacks));
        env.diagnostics.emplace_back("closed_fallback_cap_rows", std::to_string(cap_fallbacks));
        if (fallbacks + cap_fallbacks > 0) {
            env.diagnostics.emplace_back("note",
                                         "rows at R = 0, within the quadrature margin of a coalescence line, or "
                                         "whose integrand had not decayed by t_max use the closed form");
        }
    }
    if (both) {
        env.diagnostics.emplace_back("max_ratio_spread", sci(ratio_spread));
    }
    return env;
}

ResultEnvelope run(const RunConfig& config) {
    const std::string& name = config.command();
    if (name == "smatrix") {
        return cmd_smatrix(config);
    }
    if (name == "sturmian") {
        return cmd_sturmian(config);
    }
    if (name == "wavefunction") {
        return cmd_wavefunction(config);
    }
    if (name == "verify") {
        return cmd_verify(config);
    }
    throw ConfigError("unknown command '" + name + "'");
}

int main_entry(int argc, const char* const* argv) {
    CLI::App app{"Exact three-body delta-interaction scattering on the line", "hyperdelta"};
    app.set_version_flag("--version", std::string(HYPERDELTA_VERSION));
    app.require_subcommand(1, 1);

    struct Slot {
        CLI::App* sub = nullptr;
        std::string config_path;
        std::map<std::string, std::string> values;
        std::map<std::string, CLI::Option*> options;
    };
    std::map<std::string, Slot> slots;
    const std::map<std::string, std::string> descriptions{
        {"smatrix", "S-matrix and S3 over a momentum sweep"},
        {"sturmian", "rho(nu) along one axis and adiabatic roots over an R' sweep"},
        {"wavefunction", "wavefunction on an (R, theta) grid"},
        {"verify", "run every invariant check"},
    };
    for (const auto& name : commands()) {
        Slot& slot = slots[name];
        slot.sub = app.add_subcommand(name, descriptions.at(name));
        slot.sub->add_option("--config", slot.config_path, "flat key = value file")->check(CLI::ExistingFile);
        for (const auto& [key, def] : default_values(name)) {
            slot.options[key] =
                slot.sub->add_option("--" + key, slot.values[key], "default: " + (def.empty() ? "(none)" : def));
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int status = app.exit(e);
        return status == 0 ? 0 : 2;
    }

    const auto start = std::chrono::steady_clock::now();
    try {
        for (auto& [name, slot] : slots) {
            if (!slot.sub->parsed()) {
                continue;
            }
            std::map<std::string, std::string> overrides;
            for (const auto& [key, option] : slot.options) {
                if (option->count() > 0) {
                    overrides[key] = slot.values[key];
                }
            }
            const RunConfig config = load_config(name, slot.config_path, overrides);
            const ResultEnvelope env = run(config);
            emit(env);
            const double wall =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            std::fprintf(stderr, "%s: %zu rows, wall time %.3f s\n", name.c_str(), env.rows.size(), wall);
            if (!env.passed) {
                std::fprintf(stderr, "%s: one or more checks failed\n", name.c_str());
                return 1;
            }
            return 0;
        }
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const Error& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 1;
    }
    return 2;
}

}  // namespace hyperdelta::cli
