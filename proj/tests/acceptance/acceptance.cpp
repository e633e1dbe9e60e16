// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all pass.
// Usage: acceptance <path-to-hyperdelta-tool> <scratch-dir>

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hyperdelta/geometry.hpp"
#include "hyperdelta/scattering.hpp"
#include "hyperdelta/specfun.hpp"
#include "hyperdelta/sturmian.hpp"
#include "hyperdelta/wavefunction.hpp"

using namespace hyperdelta;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = true;
    std::string detail;
};

struct Criterion {
    int id;
    std::string title;
    double time_limit;
    std::function<Outcome()> body;
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

// Append "name value < tol" and fold the comparison into the outcome.
void expect_below(Outcome& o, const std::string& name, double value, double tol) {
    const bool ok = value < tol;
    o.pass = o.pass && ok;
    if (!o.detail.empty()) {
        o.detail += "; ";
    }
    o.detail += name + " " + fmt("%.2e", value) + (ok ? " < " : " >= ") + fmt("%.0e", tol);
}

void expect_true(Outcome& o, const std::string& name, bool ok) {
    o.pass = o.pass && ok;
    if (!o.detail.empty()) {
        o.detail += "; ";
    }
    o.detail += name + (ok ? " ok" : " FAILED");
}

struct Channel {
    ModelParams params;
    scattering::ChannelEnergy energy;
    scattering::ScatteringSolution sol;
};

Channel channel(double k, double c = -1.0) {
    const ModelParams params(c);
    return {params, scattering::channel_energy(k, params), scattering::solve_channel(k, params)};
}

constexpr double momenta[] = {0.0, 0.1, 0.3, 0.45};
constexpr double radii[] = {0.5, 1.0, 2.0, 5.0};

Outcome recurrence_exactness() {
    std::vector<cplx> grid;
    for (int i = 0; i <= 100; ++i) {
        grid.emplace_back(0.0, 0.1 * i);
    }
    std::mt19937_64 rng(1001);
    std::uniform_real_distribution<double> radius(0.0, 5.0), angle(-pi, pi);
    for (int i = 0; i < 50; ++i) {
        grid.push_back(std::polar(radius(rng), angle(rng)));
    }
    double worst = 0.0;
    for (const double k : momenta) {
        const Channel ch = channel(k);
        const scattering::Coefficient A = [&](cplx nu) { return scattering::coefficient_A(nu, ch.sol); };
        for (const cplx nu : grid) {
            worst = std::max(worst, scattering::recurrence_residual(A, nu, ch.energy, ch.params));
        }
    }
    Outcome o;
    expect_below(o, "max residual", worst, 1e-10);
    return o;
}

Outcome s_matrix_unitarity() {
    const ModelParams params(-1.0);
    const double threshold = pi / 6.0;
    double defect = 0.0;
    double gap = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double k = threshold * (i + 0.5) / 100.0;
        const cplx S = scattering::s_matrix(k, params);
        defect = std::max(defect, std::abs(std::abs(S) - 1.0));
        gap = std::max(gap, std::abs(scattering::s_matrix_factored(k, params) - S));
    }
    Outcome o;
    expect_below(o, "max ||S|-1|", defect, 1e-12);
    expect_below(o, "max |factored - k-form|", gap, 1e-12);
    return o;
}

Outcome kl_inversion() {
    const Channel ch = channel(0.3);
    std::mt19937_64 rng(2002);
    std::uniform_real_distribution<double> uR(0.5, 5.0), uoff(-pi / 24.0, pi / 24.0);
    std::uniform_int_distribution<int> usector(0, 5);
    cplx reference;
    double spread = 0.0;
    for (int n = 0; n < 20; ++n) {
        const double R = uR(rng);
        const double off = uoff(rng);
        const int j = usector(rng);
        const geometry::HyperPoint p = geometry::make_point(R, j * pi / 3.0 + off);
        const auto kl = wavefunction::kl_integral(p, ch.energy, ch.sol, ch.params);
        const cplx ratio = kl.value / wavefunction::psi_closed_form(p, ch.energy, ch.sol, ch.params);
        if (n == 0) {
            reference = ratio;
        }
        spread = std::max(spread, std::abs(ratio / reference - 1.0));
    }
    const cplx a{0.3, 0.2};
    const double z = 1.5;
    const cplx exact = I * pi * std::exp(-z * std::cosh(a));
    const double pair = std::abs(wavefunction::kl_cosh_transform(a, z).value - exact) / std::abs(exact);
    Outcome o;
    expect_below(o, "ratio spread over 20 points", spread, 1e-6);
    expect_below(o, "single cosh pair", pair, 1e-6);
    return o;
}

Outcome boundary_condition() {
    double worst = 0.0;
    for (const double k : momenta) {
        const Channel ch = channel(k);
        for (const double R : radii) {
            for (int j = 0; j < 6; ++j) {
                worst = std::max(worst, wavefunction::boundary_condition_residual(R, ch.energy, ch.sol, ch.params, j));
            }
        }
    }
    Outcome o;
    expect_below(o, "max |log-derivative + pi c/6| over 16 x 6", worst, 1e-6);
    return o;
}

Outcome sturmian_residuals() {
    double worst = 0.0;
    for (const double c : {-1.0, -0.3, 0.7}) {
        const ModelParams params(c);
        for (int n = 0; n < 20; ++n) {
            worst = std::max(worst, sturmian::boundary_residual(cplx{0.35 + 0.45 * n, 0.0}, params));
            worst = std::max(worst, sturmian::boundary_residual(cplx{0.0, 0.25 + 0.5 * n}, params));
        }
    }
    Outcome o;
    expect_below(o, "max boundary residual", worst, 1e-8);
    return o;
}

Outcome plane_wave_equivalence() {
    const Channel ch = channel(0.3);
    std::mt19937_64 rng(3003);
    std::uniform_real_distribution<double> u(-4.0, 4.0);
    cplx reference;
    double spread = 0.0;
    for (int n = 0; n < 20;) {
        const geometry::ParticleConfig cfg{u(rng), u(rng), u(rng)};
        if (cfg.x1 == cfg.x2 || cfg.x2 == cfg.x3 || cfg.x1 == cfg.x3) {
            continue;
        }
        const auto p = geometry::to_hyperspherical(geometry::to_jacobi(cfg));
        const cplx ratio = wavefunction::psi_closed_form(p, ch.energy, ch.sol, ch.params) /
                           wavefunction::psi_plane_wave(cfg, ch.energy, ch.sol, ch.params);
        if (n == 0) {
            reference = ratio;
        }
        spread = std::max(spread, std::abs(ratio / reference - 1.0));
        ++n;
    }
    double identity = 0.0;
    for (const double k : momenta) {
        const Channel c = channel(k);
        const auto m = wavefunction::plane_wave_momenta(c.energy, c.params);
        identity = std::max(identity, std::abs(m.k1 + m.k2 + m.k3));
        identity = std::max(identity, std::abs(m.k1 * m.k1 + m.k2 * m.k2 + m.k3 * m.k3 - c.energy.E));
    }
    Outcome o;
    expect_below(o, "proportionality spread", spread, 1e-10);
    expect_below(o, "momentum identities", identity, 1e-14);
    return o;
}

Outcome adiabatic_limits() {
    const ModelParams params(-1.0);
    const double R_far = 1e3 * 6.0 / pi;
    const double bound_target = -std::pow(pi / 6.0, 2);
    const double bound =
        std::abs(sturmian::adiabatic_root(R_far, params, 0).Lambda - bound_target) / std::abs(bound_target);

    double free_limit = 0.0;
    const double R_prime = 1e-3;
    for (const double c : {-1e-6, 1e-6}) {
        for (const auto& root : sturmian::adiabatic_roots(R_prime, ModelParams(c), 12)) {
            const double expected = (root.kappa * root.kappa - 0.25) / (R_prime * R_prime);
            free_limit = std::max(free_limit, std::abs(root.Lambda - expected) / std::abs(expected));
        }
    }

    std::vector<cplx> grid;
    for (int n = 1; n <= 100; ++n) {
        grid.emplace_back(0.0, 0.1 * n);
        grid.emplace_back(0.09 * n, 0.0);
    }
    double relation = 0.0;
    int related = 0;
    for (const auto& point : sturmian::rho_curve(grid, params)) {
        if (point.relation_residual) {
            relation = std::max(relation, *point.relation_residual);
            ++related;
        }
    }
    Outcome o;
    expect_below(o, "Lambda0 vs -(pi c/6)^2 (relative)", bound, 1e-6);
    expect_below(o, "Lambda_kappa vs (kappa^2-1/4)/R'^2 (relative)", free_limit, 1e-8);
    expect_below(o, "nu^2 - (Lambda rho^2 + 1/4)", relation, 1e-10);
    expect_true(o, "relation sampled at " + std::to_string(related) + " points", related >= 50);
    return o;
}

Outcome s_matrix_pole() {
    double worst_k = 0.0;
    double worst_e = 0.0;
    for (const double c : {-1.0, -0.5, -2.0}) {
        const ModelParams params(c);
        const auto pole = scattering::s_matrix_pole(params);
        worst_k = std::max(worst_k, std::abs(pole.k - cplx{0.0, pi * std::abs(c) / (6.0 * std::sqrt(3.0))}));
        const double expected_e = -std::pow(pi * c, 2) / 27.0;
        worst_e = std::max(worst_e, std::abs(pole.E - expected_e) / std::abs(expected_e));
    }
    Outcome o;
    expect_below(o, "|k_pole - i pi|c|/(6 sqrt 3)|", worst_k, 1e-10);
    expect_below(o, "pole energy vs -(pi c)^2/27 (relative)", worst_e, 1e-10);
    return o;
}

Outcome special_functions() {
    const specfun::BesselEvalSpec spec;
    double evenness = 0.0;
    double realness = 0.0;
    double recurrence = 0.0;
    const double xs[] = {0.1, 0.2, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0};
    for (int i = 1; i <= 100; ++i) {
        const double t = 0.1 * i;
        for (const double x : xs) {
            recurrence = std::max(recurrence, specfun::bessel_recurrence_residual(t, x, spec));
            if (i % 10 == 0) {
                const cplx plus = specfun::bessel_k(cplx{0.0, t}, x, spec).value;
                const cplx minus = specfun::bessel_k(cplx{0.0, -t}, x, spec).value;
                evenness = std::max(evenness, std::abs(plus - minus) / (spec.rel_tol * std::abs(plus)));
                realness = std::max(realness, std::abs(plus.imag()));
            }
        }
    }
    double half = 0.0;
    for (const double x : {0.01, 0.1, 1.0, 5.0, 20.0}) {
        const double exact = std::sqrt(pi / (2.0 * x)) * std::exp(-x);
        half = std::max(half, std::abs(specfun::bessel_k_real_order(0.5, x) - exact) / exact);
    }
    Outcome o;
    expect_below(o, "evenness in units of rel_tol*|K|", evenness, 1.0);
    expect_below(o, "imaginary part", realness, spec.abs_floor);
    expect_below(o, "recurrence residual", recurrence, 1e-8);
    expect_below(o, "K_1/2 relative error", half, 1e-12);
    return o;
}

int run_tool(const std::string& tool, const std::string& args) {
    const std::string command = "\"" + tool + "\" " + args + " 2>/dev/null";
    const int status = std::system(command.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Outcome cli_contract(const std::string& tool, const fs::path& work) {
    fs::create_directories(work);
    Outcome o;
    auto twice_identical = [&](const std::string& name, const std::string& args) {
        const fs::path out = work / name;
        std::string first;
        bool status_ok = true;
        for (int pass = 0; pass < 2; ++pass) {
            fs::remove(out);
            status_ok = status_ok && run_tool(tool, args + " --out \"" + out.string() + "\"") == 0;
            if (pass == 0) {
                first = slurp(out);
            }
        }
        expect_true(o, name + " byte-identical", status_ok && !first.empty() && first == slurp(out));
    };
    twice_identical("verify.csv", "verify");
    twice_identical("smatrix.csv", "smatrix");
    twice_identical("smatrix.json", "smatrix --format json");

    const fs::path pass_out = work / "pass.csv";
    expect_true(o, "pass scenario exit 0", run_tool(tool, "verify --out \"" + pass_out.string() + "\"") == 0);

    const fs::path fault_out = work / "fault.csv";
    fs::remove(fault_out);
    const int fault_status = run_tool(tool, "verify --fault inverse_s --out \"" + fault_out.string() + "\"");
    const std::string fault_text = slurp(fault_out);
    expect_true(o, "injected fault exit 1 with envelope",
                fault_status == 1 && fault_text.find("recurrence_closed_form,") != std::string::npos &&
                    fault_text.find(",false\n") != std::string::npos);

    const fs::path bad_out = work / "bad.csv";
    fs::remove(bad_out);
    const int bad_status = run_tool(tool, "smatrix --c 0 --out \"" + bad_out.string() + "\"");
    expect_true(o, "bad config exit 2, no file", bad_status == 2 && !fs::exists(bad_out));
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 3) {
        std::fprintf(stderr, "usage: acceptance <hyperdelta-tool> <scratch-dir>\n");
        return 2;
    }
    const std::string tool = argv[1];
    const fs::path work = argv[2];
    const auto suite_start = Clock::now();

    const std::vector<Criterion> criteria{
        {1, "recurrence exactness of the closed-form coefficient", 1.0, recurrence_exactness},
        {2, "S-matrix unitarity and form equivalence", 0.1, s_matrix_unitarity},
        {3, "Kontorovich-Lebedev inversion", 30.0, kl_inversion},
        {4, "boundary condition on the coalescence lines", 5.0, boundary_condition},
        {5, "pseudo-Sturmian boundary residuals", 1.0, sturmian_residuals},
        {6, "plane-wave equivalence", 1.0, plane_wave_equivalence},
        {7, "adiabatic limits", 1.0, adiabatic_limits},
        {8, "S-matrix pole", 0.1, s_matrix_pole},
        {9, "special functions", 5.0, special_functions},
        {10, "CLI determinism and exit codes", 60.0, [&] { return cli_contract(tool, work); }},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = Clock::now();
        Outcome o;
        try {
            o = c.body();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        double seconds = std::chrono::duration<double>(Clock::now() - start).count();
        if (c.id == 10) {
            // the CLI limit applies to the whole suite
            seconds = std::chrono::duration<double>(Clock::now() - suite_start).count();
        }
        const bool in_time = seconds < c.time_limit;
        const bool pass = o.pass && in_time;
        failures += pass ? 0 : 1;
        std::printf("%s criterion %2d: %s | %s | %.3f s (limit %g s)%s\n", pass ? "PASS" : "FAIL", c.id,
                    c.title.c_str(), o.detail.c_str(), seconds, c.time_limit, in_time ? "" : " TOO SLOW");
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
