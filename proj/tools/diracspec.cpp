// diracspec: command-line driver for the dirac library.
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include "dirac/cli.hpp"
#include "dirac/clifford.hpp"
#include "dirac/discretize.hpp"
#include "dirac/green.hpp"
#include "dirac/numerics.hpp"
#include "dirac/potential.hpp"
#include "dirac/regdet.hpp"
#include "dirac/resolvalg.hpp"
#include "dirac/specfun.hpp"
#include "dirac/ssf.hpp"

using namespace dirac;
using cli::json;
using cli::UsageError;

namespace {

struct Outcome {
    json result;
    int exit_code = 0;
    std::string csv;  // set when the command produced CSV instead of JSON
};

json rvec_json(const RVec& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

json nan_to_null(const std::vector<double>& v) {
    json a = json::array();
    for (double x : v) a.push_back(std::isnan(x) ? json(nullptr) : json(x));
    return a;
}

json config_of(const CLI::App* sub) {
    json c;
    for (const CLI::Option* o : sub->get_options()) {
        if (o->get_lnames().empty()) continue;
        const std::string name = o->get_lnames().front();
        if (name == "help") continue;
        if (o->count() > 0) {
            if (o->get_type_size() == 0) c[name] = true;
            else if (o->results().size() == 1) c[name] = o->results().front();
            else c[name] = o->results();
        } else if (!o->get_default_str().empty()) {
            c[name] = o->get_default_str();
        }
    }
    return c;
}

potential::MatrixPotential load_potential(const std::string& path, int n) {
    json spec = cli::read_json_file(path);
    if (spec.is_object() && !spec.contains("n")) spec["n"] = n;
    potential::MatrixPotential V = potential::from_json(spec);
    if (V.n != n) throw UsageError("potential dimension " + std::to_string(V.n) + " differs from --n " + std::to_string(n));
    return V;
}

struct PiecewiseXi {
    std::vector<double> breakpoints;  // increasing
    std::vector<double> values;       // breakpoints.size() + 1 pieces
    std::string description;
    double operator()(double nu) const {
        std::size_t i = 0;
        while (i < breakpoints.size() && nu >= breakpoints[i]) ++i;
        return values[i];
    }
};

PiecewiseXi load_xi(const std::string& what) {
    PiecewiseXi xi;
    xi.description = what;
    if (what == "one") xi.values = {1.0};
    else if (what == "step") xi = {{0.0}, {0.0, 1.0}, what};
    else if (what == "sign") xi = {{0.0}, {-1.0, 1.0}, what};
    else if (what.rfind("indicator:", 0) == 0) {
        const std::string rest = what.substr(10);
        const auto colon = rest.find(':');
        if (colon == std::string::npos) throw UsageError("indicator builtin must look like indicator:a:b");
        const double a = std::stod(rest.substr(0, colon)), b = std::stod(rest.substr(colon + 1));
        if (!(b > a)) throw UsageError("indicator:a:b needs a < b");
        xi = {{a, b}, {0.0, 1.0, 0.0}, what};
    } else {
        const json j = cli::read_json_file(what);
        if (!j.is_object() || !j.contains("breakpoints") || !j["breakpoints"].is_array())
            throw UsageError("/breakpoints: expected an array of numbers");
        if (!j.contains("values") || !j["values"].is_array()) throw UsageError("/values: expected an array of numbers");
        for (std::size_t i = 0; i < j["breakpoints"].size(); ++i) {
            if (!j["breakpoints"][i].is_number()) throw UsageError("/breakpoints/" + std::to_string(i) + ": expected a number");
            xi.breakpoints.push_back(j["breakpoints"][i].get<double>());
            if (i && !(xi.breakpoints[i] > xi.breakpoints[i - 1]))
                throw UsageError("/breakpoints/" + std::to_string(i) + ": breakpoints must increase");
        }
        for (std::size_t i = 0; i < j["values"].size(); ++i) {
            if (!j["values"][i].is_number()) throw UsageError("/values/" + std::to_string(i) + ": expected a number");
            xi.values.push_back(j["values"][i].get<double>());
        }
        if (xi.values.size() != xi.breakpoints.size() + 1)
            throw UsageError("/values: need exactly one more value than breakpoints");
    }
    return xi;
}

ssf::MatrixPair load_pair(const std::string& path) {
    const json j = cli::read_json_file(path);
    if (!j.is_object()) throw UsageError("/: expected an object with S0 and V");
    if (!j.contains("S0")) throw UsageError("/S0: missing");
    if (!j.contains("V")) throw UsageError("/V: missing");
    const Mat S0 = cli::matrix_from_json(j["S0"], "/S0");
    const Mat V = cli::matrix_from_json(j["V"], "/V");
    try {
        return ssf::make_pair(S0, V);
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("/: ") + e.what());
    }
}

json threshold_json(const resolvalg::ThresholdReport& t) {
    json j;
    j["classification"] = t.classification();
    j["tol"] = t.tol;
    j["min_abs_eigenvalue"] = t.min_abs_eigenvalue;
    j["near_eigenvalues"] = t.near_eigenvalues;
    j["hermitian_residual"] = t.hermitian_residual;
    j["candidates"] = t.phi.size();
    j["psi_l2"] = t.psi_l2;
    j["psi_l2_inner"] = t.psi_l2_inner;
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    if (const char* w = std::getenv("DIRAC_WORKERS")) {
#ifdef _OPENMP
        const int k = std::atoi(w);
        if (k > 0) omp_set_num_threads(k);
#else
        (void)w;
#endif
    }

    CLI::App app{"Free Dirac kernels, Birman-Schwinger operators, regularized determinants and spectral shift tools"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "TOML/INI file with option overrides");
    unsigned long long seed = 0;
    std::string out_path;
    app.add_option("--seed", seed, "Random seed")->capture_default_str();
    app.add_option("--out", out_path, "Write the artifact to this file (atomic rename)");

    std::function<Outcome()> run;
    CLI::App* chosen = nullptr;
    auto bind = [&](CLI::App* sub, std::function<Outcome()> fn) {
        sub->callback([&, sub, fn] {
            chosen = sub;
            run = fn;
        });
    };

    // clifford
    int cl_n = 0;
    bool cl_check = false;
    auto* s_cl = app.add_subcommand("clifford", "Alpha matrices and relation check");
    s_cl->add_option("--n", cl_n, "Spatial dimension")->required();
    s_cl->add_flag("--check", cl_check, "Run the exact relation check");
    bind(s_cl, [&] {
        const auto rep = clifford::build_clifford(cl_n);
        Outcome o;
        o.result["n"] = rep.n;
        o.result["N"] = rep.N;
        json al = json::array();
        for (const Mat& a : rep.alphas) al.push_back(cli::matrix_to_json(a));
        o.result["alphas"] = al;
        if (cl_check) {
            const auto rr = clifford::check_relations(rep);
            o.result["check"] = {{"entries_gaussian_integer", rr.entries_gaussian_integer},
                                 {"hermitian", rr.hermitian},
                                 {"anticommute", rr.anticommute},
                                 {"max_float_residual", rr.max_float_residual}};
            if (!(rr.entries_gaussian_integer && rr.hermitian && rr.anticommute)) o.exit_code = 1;
        }
        return o;
    });

    // green
    int g_n = 0, g_r = 0;
    std::string g_z, g_x, g_y;
    auto* s_g = app.add_subcommand("green", "Green's matrix G_0(z;x,y) or its z-derivative");
    s_g->add_option("--n", g_n, "Spatial dimension")->required();
    s_g->add_option("--z", g_z, "Spectral parameter a+bi (0 selects the zero-energy limit, --deriv 0 only)")->required();
    s_g->add_option("--x", g_x, "Point x, comma separated")->required();
    s_g->add_option("--y", g_y, "Point y, comma separated")->required();
    s_g->add_option("--deriv", g_r, "Derivative order r (0..n)")->capture_default_str();
    bind(s_g, [&] {
        const auto rep = clifford::build_clifford(g_n);
        const cplx z = cli::parse_complex(g_z);
        const RVec x = cli::parse_vector(g_x), y = cli::parse_vector(g_y);
        if (x.size() != g_n || y.size() != g_n) throw UsageError("--x and --y need n components");
        Outcome o;
        o.result["n"] = g_n;
        o.result["N"] = rep.N;
        o.result["z"] = cli::complex_to_json(z);
        o.result["x"] = rvec_json(x);
        o.result["y"] = rvec_json(y);
        o.result["deriv"] = g_r;
        if (g_r == 0) {
            const auto k = z == cplx(0.0, 0.0) ? green::green0_limit0(rep, x, y) : green::green0(rep, z, x, y);
            o.result["regime"] = green::regime_name(k.regime);
            o.result["matrix"] = cli::matrix_to_json(k.value);
        } else {
            const auto k = green::green0_deriv(rep, g_r, z, x, y);
            o.result["regime"] = green::regime_name(k.regime);
            o.result["matrix"] = cli::matrix_to_json(k.value);
        }
        return o;
    });

    // scan
    int sc_n = 0, sc_r = 0;
    std::string sc_z, sc_rho, sc_format = "json";
    double sc_delta = 0.5;
    auto* s_sc = app.add_subcommand("scan", "Kernel coefficients and envelope along |x-y|");
    s_sc->add_option("--n", sc_n, "Spatial dimension")->required();
    s_sc->add_option("--z", sc_z, "Spectral parameter")->required();
    s_sc->add_option("--rho", sc_rho, "Radii a:b:steps")->required();
    s_sc->add_option("--deriv", sc_r, "Derivative order")->capture_default_str();
    s_sc->add_option("--delta", sc_delta, "Envelope parameter for even n")->capture_default_str();
    s_sc->add_option("--format", sc_format, "json or csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
    bind(s_sc, [&] {
        const cplx z = cli::parse_complex(sc_z);
        const std::vector<double> rhos = cli::parse_range(sc_rho);
        Outcome o;
        json rows = json::array();
        std::ostringstream csv;
        csv << "rho,a_re,a_im,b_re,b_im,norm,envelope,regime\n";
        csv.precision(17);
        for (double rho : rhos) {
            if (!(rho > 0.0)) throw UsageError("--rho values must be positive");
            green::KernelCoeffs c;
            green::Regime reg = green::Regime::Series;
            if (sc_r == 0 && z == cplx(0.0, 0.0)) {
                c = green::green0_limit0_coeffs(sc_n, rho);
                reg = green::Regime::ZeroLimit;
            } else if (sc_r == 0) {
                c = green::green0_coeffs(sc_n, z, rho);
                reg = sc_n % 2 ? green::Regime::ClosedForm
                               : (std::abs(z * rho) >= specfun::kAsymptoticRadius ? green::Regime::Asymptotic
                                                                                   : green::Regime::Series);
            } else {
                c = green::deriv_coeffs(sc_n, sc_r, z, rho, &reg);
            }
            const double norm = std::max(std::abs(c.a + c.b), std::abs(c.a - c.b));
            const double env = z == cplx(0.0, 0.0) ? std::nan("") : green::envelope(sc_n, sc_r, z, rho, sc_delta);
            rows.push_back({{"rho", rho},
                            {"a", cli::complex_to_json(c.a)},
                            {"b", cli::complex_to_json(c.b)},
                            {"norm", norm},
                            {"envelope", std::isnan(env) ? json(nullptr) : json(env)},
                            {"regime", green::regime_name(reg)}});
            csv << rho << ',' << c.a.real() << ',' << c.a.imag() << ',' << c.b.real() << ',' << c.b.imag() << ','
                << norm << ',' << env << ',' << green::regime_name(reg) << '\n';
        }
        o.result["rows"] = rows;
        if (sc_format == "csv") o.csv = csv.str();
        return o;
    });

    // bs
    int bs_n = 0, bs_m = 8, bs_eig = 6;
    std::string bs_pot, bs_z = "0+1i", bs_export;
    double bs_R = 0.0, bs_delta = 0.0, bs_p = 0.0;
    auto* s_bs = app.add_subcommand("bs", "Discretized Birman-Schwinger or weighted resolvent operator");
    s_bs->add_option("--n", bs_n, "Spatial dimension")->required();
    s_bs->add_option("--potential", bs_pot, "Potential JSON file");
    s_bs->add_option("--delta", bs_delta, "Weighted resolvent exponent (used when no potential is given)");
    s_bs->add_option("--z", bs_z, "Spectral parameter (0 selects the zero-energy limit)")->capture_default_str();
    s_bs->add_option("--m", bs_m, "Nodes per axis")->capture_default_str();
    s_bs->add_option("--R", bs_R, "Box half-width (default from the potential decay)");
    s_bs->add_option("--eig", bs_eig, "Number of eigenvalues to report")->capture_default_str();
    s_bs->add_option("--schatten", bs_p, "Schatten exponent p (default n+1)");
    s_bs->add_option("--export", bs_export, "Dump the matrix as JSON to this file");
    bind(s_bs, [&] {
        const auto rep = clifford::build_clifford(bs_n);
        const cplx z = cli::parse_complex(bs_z);
        if (bs_pot.empty() && !(bs_delta > 0.0)) throw UsageError("missing required parameter: --potential or --delta");
        Outcome o;
        discretize::DiscretizedOperator op;
        double R = bs_R;
        if (!bs_pot.empty()) {
            const auto V = load_potential(bs_pot, bs_n);
            if (!(R > 0.0)) R = discretize::default_box(V);
            const auto grid = discretize::build_grid(bs_n, R, bs_m, rep.N);
            op = discretize::assemble_bs(rep, grid, z, V);
            o.result["potential"] = V.description;
        } else {
            if (!(R > 0.0)) R = 4.0;
            const auto grid = discretize::build_grid(bs_n, R, bs_m, rep.N);
            op = discretize::assemble_weighted_resolvent(rep, grid, z, bs_delta);
            o.result["delta"] = bs_delta;
        }
        const double p = bs_p > 0.0 ? bs_p : bs_n + 1.0;
        Eigen::ComplexEigenSolver<Mat> es(op.matrix, false);
        std::vector<cplx> ev(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
        std::stable_sort(ev.begin(), ev.end(), [](cplx a, cplx b) { return std::abs(a) > std::abs(b); });
        json evj = json::array();
        for (int i = 0; i < bs_eig && i < static_cast<int>(ev.size()); ++i) evj.push_back(cli::complex_to_json(ev[i]));
        o.result["kernel"] = op.kernel;
        o.result["nodes"] = op.nodes;
        o.result["N"] = op.N;
        o.result["R"] = R;
        o.result["m"] = bs_m;
        o.result["z"] = cli::complex_to_json(z);
        o.result["operator_norm"] = discretize::operator_norm(op.matrix);
        o.result["schatten"] = {{"p", p}, {"value", discretize::schatten_norm(op.matrix, p)}};
        o.result["spectral_radius"] = ev.empty() ? 0.0 : std::abs(ev.front());
        o.result["eigenvalues"] = evj;
        if (!bs_export.empty()) cli::atomic_write(bs_export, cli::matrix_to_json(op.matrix).dump());
        return o;
    });

    // det-audit
    int da_k = 0, da_dim = 6, da_trials = 100;
    double da_radius = 0.9;
    auto* s_da = app.add_subcommand("det-audit", "Randomized audit of the regularized determinant product formula");
    s_da->add_option("--k", da_k, "Determinant order (1..4)")->required();
    s_da->add_option("--dim", da_dim, "Matrix size")->capture_default_str();
    s_da->add_option("--trials", da_trials, "Number of random pairs")->capture_default_str();
    s_da->add_option("--radius", da_radius, "Operator-norm bound of the random factors")->capture_default_str();
    bind(s_da, [&] {
        if (da_k < 1 || da_k > 4) throw UsageError("--k must be in 1..4");
        const auto r = regdet::det_audit(da_k, da_dim, da_trials, seed, da_radius);
        Outcome o;
        o.result = {{"k", r.k},
                    {"dim", r.dim},
                    {"trials", r.trials},
                    {"seed", r.seed},
                    {"radius", r.radius},
                    {"max_residual", r.max_residual},
                    {"mean_residual", r.mean_residual}};
        o.exit_code = r.max_residual <= 1e-9 ? 0 : 1;
        return o;
    });

    // ssf
    std::string ss_pair, ss_grid, ss_method = "krein";
    int ss_m = 1;
    double ss_gap = 0.05;
    std::vector<double> ss_eps = ssf::kDefaultEpsSchedule;
    auto* s_ss = app.add_subcommand("ssf", "Spectral shift function of a Hermitian matrix pair");
    s_ss->add_option("--pair", ss_pair, "Pair JSON {S0, V}")->required();
    s_ss->add_option("--grid", ss_grid, "Grid a:b:steps")->required();
    s_ss->add_option("--method", ss_method, "krein, eqmain or counting")
        ->check(CLI::IsMember({"krein", "eqmain", "counting"}))
        ->capture_default_str();
    s_ss->add_option("--m", ss_m, "Regularization order for eqmain")->capture_default_str();
    s_ss->add_option("--eps", ss_eps, "Decreasing eps schedule")->capture_default_str();
    s_ss->add_option("--min-gap", ss_gap, "Flag grid points this close to an eigenvalue")->capture_default_str();
    bind(s_ss, [&] {
        const auto pair = load_pair(ss_pair);
        const auto grid = cli::parse_range(ss_grid);
        const auto t = ssf::ssf_boundary(pair, grid, ss_eps, ssf::parse_method(ss_method), ss_m, ss_gap);
        int agree = 0, safe = 0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            if (t.flags[i]) continue;
            ++safe;
            agree += std::lround(t.xi[i]) == ssf::ssf_count_oracle(pair, grid[i]);
        }
        Outcome o;
        o.result["lambda"] = t.lambdas;
        o.result["xi"] = nan_to_null(t.xi);
        o.result["method"] = ssf::method_name(t.method);
        o.result["m"] = t.m;
        o.result["eps"] = t.eps;
        o.result["flags"] = t.flags;
        o.result["branch_log"] = t.branch_log;
        o.result["anchor"] = t.anchor;
        o.result["oracle_agreement"] = {{"safe_points", safe}, {"matching", agree}};
        return o;
    });

    // abel
    std::string ab_xi;
    std::vector<double> ab_lambda;
    bool ab_zero = false;
    auto* s_ab = app.add_subcommand("abel", "Abel transform of a piecewise-constant xi");
    s_ab->add_option("--xi", ab_xi, "one | step | sign | indicator:a:b | JSON file {breakpoints, values}")->required();
    s_ab->add_option("--lambda", ab_lambda, "Positive lambda values")->delimiter(',');
    s_ab->add_flag("--zero-limit", ab_zero, "Also report the lambda -> 0+ limit");
    bind(s_ab, [&] {
        const PiecewiseXi xi = load_xi(ab_xi);
        if (ab_lambda.empty() && !ab_zero) throw UsageError("missing required parameter: --lambda or --zero-limit");
        Outcome o;
        o.result["xi"] = xi.description;
        o.result["lambda"] = ab_lambda;
        json vals = json::array();
        for (double l : ab_lambda) vals.push_back(ssf::abel_transform(xi, l, xi.breakpoints));
        o.result["values"] = vals;
        if (ab_zero) {
            std::vector<double> bps = xi.breakpoints;
            bps.push_back(0.0);
            const auto z = ssf::abel_zero_limit(xi, bps);
            o.result["zero_limit"] = {{"value", z.value}, {"converged", z.converged}, {"lambdas", z.lambdas}, {"values", z.values}};
        }
        return o;
    });

    // witten
    int w_rows = 0, w_cols = 0, w_k = 1, w_rank = -1;
    std::vector<double> w_sched = ssf::kDefaultWittenSchedule;
    auto* s_w = app.add_subcommand("witten", "Resolvent-regularized Witten index of a random matrix");
    s_w->add_option("--rows", w_rows, "Rows of T")->required();
    s_w->add_option("--cols", w_cols, "Columns of T")->required();
    s_w->add_option("--k", w_k, "Resolvent power")->capture_default_str();
    s_w->add_option("--rank", w_rank, "Force rank (default full)");
    s_w->add_option("--schedule", w_sched, "Negative lambda values")->capture_default_str();
    bind(s_w, [&] {
        if (w_rows < 0 || w_cols < 0) throw UsageError("--rows and --cols must be >= 0");
        std::mt19937_64 rng(seed);
        Mat T = numerics::ginibre(w_rows, w_cols, rng);
        if (w_rank >= 0) {
            if (w_rank > std::min(w_rows, w_cols)) throw UsageError("--rank exceeds min(rows, cols)");
            T = numerics::ginibre(w_rows, w_rank, rng) * numerics::ginibre(w_rank, w_cols, rng);
        }
        const auto r = ssf::witten_index(T, w_k, w_sched);
        Outcome o;
        o.result = {{"k", r.k},
                    {"rows", w_rows},
                    {"cols", w_cols},
                    {"lambda_schedule", r.lambda_schedule},
                    {"scaled_traces", r.scaled_traces},
                    {"extrapolated", r.extrapolated},
                    {"variance", r.variance},
                    {"exact", r.exact}};
        return o;
    });

    // threshold
    int th_n = 0, th_m = 8;
    std::string th_pot, th_sweep;
    double th_R = 0.0, th_tol = 1e-3;
    bool th_refine = false;
    auto* s_th = app.add_subcommand("threshold", "Zero-energy classification from the self-adjoint Birman-Schwinger operator");
    s_th->add_option("--n", th_n, "Spatial dimension")->required();
    s_th->add_option("--potential", th_pot, "Potential JSON file")->required();
    s_th->add_option("--m", th_m, "Nodes per axis")->capture_default_str();
    s_th->add_option("--R", th_R, "Box half-width (default from the potential decay)");
    s_th->add_option("--tol", th_tol, "Exceptional if some |eigenvalue| < tol")->capture_default_str();
    s_th->add_option("--sweep", th_sweep, "Coupling sweep a0:a1:steps");
    s_th->add_flag("--refine", th_refine, "Repeat on the 2m grid and flag classification flips");
    bind(s_th, [&] {
        const auto rep = clifford::build_clifford(th_n);
        const auto V = load_potential(th_pot, th_n);
        const double R = th_R > 0.0 ? th_R : discretize::default_box(V);
        Outcome o;
        o.result["R"] = R;
        o.result["m"] = th_m;
        if (th_refine) {
            const auto r = resolvalg::threshold_classify_refined(rep, V, R, th_m, th_tol);
            o.result["report"] = threshold_json(r.coarse);
            o.result["refinement_available"] = r.refinement_available;
            if (r.refinement_available) o.result["refined"] = threshold_json(r.fine);
            o.result["grid_too_coarse"] = r.grid_too_coarse;
        } else {
            const auto grid = discretize::build_grid(th_n, R, th_m, rep.N);
            o.result["report"] = threshold_json(resolvalg::threshold_classify(rep, grid, discretize::factorize_on_grid(V, grid), th_tol));
        }
        if (!th_sweep.empty()) {
            const auto amps = cli::parse_range(th_sweep);
            const auto grid = discretize::build_grid(th_n, R, th_m, rep.N);
            json sw = json::array();
            for (const auto& p : resolvalg::amplitude_sweep(rep, grid, V, amps, th_tol))
                sw.push_back({{"amplitude", p.amplitude}, {"min_abs_eigenvalue", p.min_abs_eigenvalue}, {"exceptional", p.exceptional}});
            o.result["sweep"] = sw;
        }
        return o;
    });

    // bench
    int be_reps = 1000;
    auto* s_be = app.add_subcommand("bench", "Timings of representative kernels (not deterministic)");
    s_be->add_option("--reps", be_reps, "Repetitions per kernel")->capture_default_str();
    bind(s_be, [&] {
        using clock = std::chrono::steady_clock;
        auto time_it = [&](const std::function<void()>& f) {
            const auto t0 = clock::now();
            for (int i = 0; i < be_reps; ++i) f();
            return std::chrono::duration<double, std::micro>(clock::now() - t0).count() / be_reps;
        };
        volatile double sink = 0.0;
        Outcome o;
        o.result["hankel1_n0_us"] = time_it([&] { sink = sink + std::abs(specfun::hankel1(0.0, cplx(3.0, 1.0))); });
        o.result["hankel1_asymptotic_us"] = time_it([&] { sink = sink + std::abs(specfun::hankel1(1.0, cplx(30.0, 2.0))); });
        o.result["green0_coeffs_n2_us"] = time_it([&] { sink = sink + std::abs(green::green0_coeffs(2, cplx(0.0, 1.0), 0.7).a); });
        o.result["green0_coeffs_n3_us"] = time_it([&] { sink = sink + std::abs(green::green0_coeffs_n3(cplx(0.0, 1.0), 0.7).a); });
        std::mt19937_64 rng(seed);
        const Mat A = numerics::ginibre(6, 6, rng) * 0.1;
        o.result["regdet_k3_6x6_us"] = time_it([&] { sink = sink + std::abs(regdet::regdet(3, A)); });
        o.result["reps"] = be_reps;
        return o;
    });

    auto emit_error = [](const std::string& msg, const std::string& detail, int code) {
        json e{{"error", msg}, {"code", code}};
        if (!detail.empty()) e["detail"] = detail;
        std::cout << e.dump() << std::endl;
        return code;
    };

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::RequiredError& e) {
        return emit_error("missing required parameter", e.what(), 2);
    } catch (const CLI::ParseError& e) {
        return emit_error("invalid arguments", e.what(), 2);
    }
    if (!run) return emit_error("no subcommand given", "", 2);

    Outcome o;
    try {
        o = run();
    } catch (const UsageError& e) {
        const std::string msg = e.what();
        const bool missing = msg.rfind("missing required parameter", 0) == 0;
        return emit_error(missing ? "missing required parameter" : "validation failed", msg, 2);
    } catch (const std::invalid_argument& e) {
        return emit_error("validation failed", e.what(), 2);
    } catch (const std::domain_error& e) {
        return emit_error("validation failed", e.what(), 2);
    } catch (const std::length_error& e) {
        return emit_error("validation failed", e.what(), 2);
    } catch (const std::out_of_range& e) {
        return emit_error("validation failed", e.what(), 2);
    } catch (const std::exception& e) {
        return emit_error("computation failed", e.what(), 1);
    }

    json config = config_of(chosen);
    config["command"] = chosen->get_name();
    config["seed"] = seed;
    std::string text;
    if (!o.csv.empty()) {
        text = "# version=" + std::string(cli::kVersion) + " seed=" + std::to_string(seed) + " config=" + config.dump() + "\n" + o.csv;
    } else {
        text = cli::artifact(chosen->get_name(), seed, config, o.result).dump(2) + "\n";
    }
    try {
        if (out_path.empty()) std::cout << text;
        else cli::atomic_write(out_path, text);
    } catch (const std::exception& e) {
        return emit_error("output failed", e.what(), 2);
    }
    return o.exit_code;
}
