// Command-line front end: parse an equation config, dispatch an analysis,
// emit text / CSV / JSON reports with the numerics embedded.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "abel/report.hpp"

namespace {

using abel::report::json;

struct RunConfig {
    std::string command;
    std::optional<abel::BasisFamily> family;
    std::optional<abel::Vec3> lambda, mu;
    abel::NumericsConfig numerics;
    std::optional<double> window_lo, window_hi;
    abel::SweepParam sweep_param = abel::SweepParam::Lambda0;
    double sweep_lo = 0.0, sweep_hi = 0.0;
    int sweep_steps = 0;
    std::string format = "text";
    std::string out_path;
    long long seed = 0;

    abel::AbelEquation equation() const {
        if (!family) throw abel::validation_error("equation family missing", "family");
        if (!lambda || !mu)
            throw abel::validation_error("equation coefficients missing", "lambda/mu");
        return abel::AbelEquation{*family, *lambda, *mu};
    }
};

std::vector<double> parse_numbers(const std::string& text, int line_no) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used])))
                ++used;
            if (used != item.size()) throw std::invalid_argument("trailing characters");
        } catch (const std::exception&) {
            throw abel::parse_error("bad number '" + item + "'", line_no);
        }
    }
    return out;
}

void apply_key(RunConfig& rc, const std::string& key, const std::string& value, int line_no,
               std::optional<std::array<int, 3>>& m, std::optional<double>& alpha,
               std::optional<double>& beta) {
    auto one = [&](const char* field) {
        const auto v = parse_numbers(value, line_no);
        if (v.size() != 1) throw abel::validation_error("expected one value", field);
        return v[0];
    };
    auto three = [&](const char* field) {
        const auto v = parse_numbers(value, line_no);
        if (v.size() != 3) throw abel::validation_error("expected three values", field);
        return abel::Vec3{v[0], v[1], v[2]};
    };

    if (key == "family") {
        if (value == "trig")
            rc.family = abel::BasisFamily::trigonometric();
        else if (value == "quadratic")
            rc.family = abel::BasisFamily::quadratic();
        else if (value == "trinomial" || value == "shifted")
            ; // deferred until m / alpha,beta are seen
        else
            throw abel::validation_error("unknown family '" + value + "'", "family");
        if (value == "trinomial") m = std::array<int, 3>{-1, -1, -1};
        if (value == "shifted") alpha = -1.0;
    } else if (key == "m") {
        const auto v = parse_numbers(value, line_no);
        if (v.size() != 3) throw abel::validation_error("expected m0, m1, m2", "m");
        m = std::array<int, 3>{static_cast<int>(v[0]), static_cast<int>(v[1]),
                               static_cast<int>(v[2])};
    } else if (key == "alpha") {
        alpha = one("alpha");
    } else if (key == "beta") {
        beta = one("beta");
    } else if (key == "lambda") {
        rc.lambda = three("lambda");
    } else if (key == "mu") {
        rc.mu = three("mu");
    } else if (key == "window") {
        const auto v = parse_numbers(value, line_no);
        if (v.size() != 2) throw abel::validation_error("expected lo, hi", "window");
        rc.window_lo = v[0];
        rc.window_hi = v[1];
    } else if (key == "param") {
        if (value == "lambda0")
            rc.sweep_param = abel::SweepParam::Lambda0;
        else if (value == "mu0")
            rc.sweep_param = abel::SweepParam::Mu0;
        else
            throw abel::validation_error("param must be lambda0 or mu0", "param");
    } else if (key == "range") {
        const auto v = parse_numbers(value, line_no);
        if (v.size() != 2) throw abel::validation_error("expected lo, hi", "range");
        rc.sweep_lo = v[0];
        rc.sweep_hi = v[1];
    } else if (key == "steps") {
        rc.sweep_steps = static_cast<int>(one("steps"));
    } else if (key == "command") {
        rc.command = value;
    } else if (key == "ode_rel_tol") {
        rc.numerics.ode_rel_tol = one(key.c_str());
    } else if (key == "ode_abs_tol") {
        rc.numerics.ode_abs_tol = one(key.c_str());
    } else if (key == "blowup_threshold") {
        rc.numerics.blowup_threshold = one(key.c_str());
    } else if (key == "quad_tol") {
        rc.numerics.quad_tol = one(key.c_str());
    } else if (key == "grid_points") {
        rc.numerics.grid_points = static_cast<int>(one(key.c_str()));
    } else if (key == "newton_tol") {
        rc.numerics.newton_tol = one(key.c_str());
    } else if (key == "newton_max_iter") {
        rc.numerics.newton_max_iter = static_cast<int>(one(key.c_str()));
    } else if (key == "double_cycle_tol") {
        rc.numerics.double_cycle_tol = one(key.c_str());
    } else if (key == "boundary_margin") {
        rc.numerics.boundary_margin = one(key.c_str());
    } else if (key == "origin_exclusion") {
        rc.numerics.origin_exclusion = one(key.c_str());
    } else {
        throw abel::parse_error("unknown key '" + key + "'", line_no);
    }
}

RunConfig parse_config(const std::string& text) {
    RunConfig rc;
    std::optional<std::array<int, 3>> m;
    std::optional<double> alpha, beta;
    std::stringstream ss(text);
    std::string line;
    int line_no = 0;
    while (std::getline(ss, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw abel::parse_error("expected key = value", line_no);
        apply_key(rc, trim(line.substr(0, eq)), trim(line.substr(eq + 1)), line_no, m, alpha,
                  beta);
    }
    if (m && alpha)
        throw abel::validation_error("m and alpha/beta belong to different families", "family");
    if (m) {
        if ((*m)[0] < 0) throw abel::validation_error("trinomial family needs m = m0, m1, m2", "m");
        rc.family = abel::BasisFamily::trinomial((*m)[0], (*m)[1], (*m)[2]);
    }
    if (alpha) {
        if (!beta || *alpha <= 0.0)
            throw abel::validation_error("shifted family needs alpha and beta", "alpha/beta");
        rc.family = abel::BasisFamily::shifted_power(*alpha, *beta);
    }
    rc.numerics.validate();
    return rc;
}

void write_output(const RunConfig& rc, const std::string& body) {
    if (rc.out_path.empty()) {
        std::cout << body;
        if (!body.empty() && body.back() != '\n') std::cout << '\n';
    } else {
        std::ofstream out(rc.out_path, std::ios::binary);
        if (!out) throw abel::error("cannot open output path " + rc.out_path);
        out << body;
    }
}

json report_header(const RunConfig& rc) {
    return json{{"command", rc.command}, {"seed", rc.seed},
                {"numerics", abel::report::to_json(rc.numerics)}};
}

// Text reports carry the numerics too, so any result is reproducible from
// the artifact alone.
std::string numerics_line(const RunConfig& rc) {
    std::ostringstream os;
    const abel::NumericsConfig& c = rc.numerics;
    os << "numerics: ode_rel_tol=" << c.ode_rel_tol << " ode_abs_tol=" << c.ode_abs_tol
       << " blowup_threshold=" << c.blowup_threshold << " quad_tol=" << c.quad_tol
       << " grid_points=" << c.grid_points << " newton_tol=" << c.newton_tol
       << " newton_max_iter=" << c.newton_max_iter
       << " double_cycle_tol=" << c.double_cycle_tol
       << " boundary_margin=" << c.boundary_margin
       << " origin_exclusion=" << c.origin_exclusion << " seed=" << rc.seed << "\n";
    return os.str();
}

int run(const RunConfig& rc) {
    const abel::NumericsConfig& cfg = rc.numerics;
    const double wlo = rc.window_lo.value_or(-cfg.window_hi);
    const double whi = rc.window_hi.value_or(cfg.window_hi);

    if (rc.command == "classify") {
        const abel::AbelEquation eq = rc.equation();
        const abel::ClassificationResult r = abel::classify(eq);
        if (rc.format == "json") {
            json j = report_header(rc);
            j["equation"] = abel::report::to_json(eq);
            j["result"] = abel::report::to_json(r);
            write_output(rc, j.dump(2));
        } else {
            write_output(rc, abel::report::classification_text(eq, r) + numerics_line(rc));
        }
        return 0;
    }
    if (rc.command == "lyapunov") {
        const abel::AbelEquation eq = rc.equation();
        const abel::LyapunovReport r = abel::lyapunov_constants(eq, cfg);
        const abel::LyapunovDirect d = abel::lyapunov_direct(eq, cfg);
        if (rc.format == "json") {
            json j = report_header(rc);
            j["equation"] = abel::report::to_json(eq);
            j["result"] = abel::report::to_json(r);
            j["direct_quadrature"] = {{"V2", d.V2}, {"V3", d.V3}, {"V4", d.V4}};
            write_output(rc, j.dump(2));
        } else {
            write_output(rc, abel::report::lyapunov_text(eq, r) + numerics_line(rc));
        }
        return 0;
    }
    if (rc.command == "cycles") {
        const abel::AbelEquation eq = rc.equation();
        const abel::CycleCensus census = abel::find_cycles(eq, wlo, whi, cfg);
        if (rc.format == "json") {
            json j = report_header(rc);
            j["equation"] = abel::report::to_json(eq);
            j["result"] = abel::report::to_json(census);
            write_output(rc, j.dump(2));
        } else if (rc.format == "csv") {
            write_output(rc, abel::report::census_csv(census));
        } else {
            write_output(rc, abel::report::census_text(eq, census) + numerics_line(rc));
        }
        if (!census.bound_satisfied) {
            json bundle = report_header(rc);
            bundle["equation"] = abel::report::to_json(eq);
            bundle["census"] = abel::report::to_json(census);
            std::cerr << "bound violation; reproduction bundle:\n" << bundle.dump(2) << "\n";
            return 3;
        }
        return 0;
    }
    if (rc.command == "chebyshev") {
        if (!rc.family) throw abel::validation_error("family missing", "family");
        const abel::EctCertificate cert = abel::ect_certificate(*rc.family);
        json j = report_header(rc);
        j["basis"] = abel::report::to_json(*rc.family);
        j["certificate"] = abel::report::to_json(cert);
        std::optional<abel::EtCounterexample> cx;
        if (rc.lambda && rc.mu) {
            cx = abel::et_accuracy_falsifier(rc.equation());
            if (cx)
                j["falsifier"] = {{"lambda", cx->lambda}, {"mu", cx->mu}, {"zeros", cx->zeros}};
            else
                j["falsifier"] = nullptr;
        }
        if (rc.format == "json") {
            write_output(rc, j.dump(2));
        } else {
            std::ostringstream os;
            os << "basis: " << rc.family->name() << "\n";
            os << "certificate ok: " << (cert.ok ? "true" : "false") << "\n";
            os << "min |W| per order: " << cert.min_abs_wronskian[0] << ", "
               << cert.min_abs_wronskian[1] << ", " << cert.min_abs_wronskian[2] << "\n";
            if (rc.lambda && rc.mu) {
                if (cx)
                    os << "accuracy-one counterexample: (" << cx->lambda << ", " << cx->mu
                       << ") with " << cx->zeros << " zeros\n";
                else
                    os << "accuracy-one counterexample: none found\n";
            }
            write_output(rc, os.str());
        }
        return 0;
    }
    if (rc.command == "sweep") {
        const abel::AbelEquation eq = rc.equation();
        if (rc.sweep_steps < 8) throw abel::validation_error("steps must be >= 8", "steps");
        if (!(rc.sweep_hi > rc.sweep_lo))
            throw abel::validation_error("range must be increasing", "range");
        const abel::SweepResult r =
            abel::sweep(eq, rc.sweep_param, rc.sweep_lo, rc.sweep_hi, rc.sweep_steps, wlo, whi,
                        cfg);
        if (rc.format == "json") {
            json j = report_header(rc);
            j["equation"] = abel::report::to_json(eq);
            j["result"] = abel::report::to_json(r);
            write_output(rc, j.dump(2));
        } else if (rc.format == "csv") {
            write_output(rc, abel::report::sweep_csv(r));
        } else {
            std::ostringstream os;
            os << "sweep of " << to_string(r.parameter) << ": " << r.samples.size()
               << " samples, " << r.branches.size() << " branches, " << r.events.size()
               << " events\n";
            for (const abel::BifurcationEvent& e : r.events)
                os << "  " << to_string(e.kind) << " in [" << e.param_lo << ", " << e.param_hi
                   << "] near x0 = " << e.x0 << "\n";
            write_output(rc, os.str() + numerics_line(rc));
        }
        for (const abel::SweepSample& s : r.samples)
            if (!s.census.bound_satisfied) return 3;
        return 0;
    }
    if (rc.command == "sharpness") {
        if (!rc.family) throw abel::validation_error("family missing", "family");
        abel::BasisFamily family = *rc.family;
        std::optional<abel::AbelEquation> pullback;
        if (family.kind() == abel::BasisKind::MonomialTrinomial) {
            // Run the construction on the normalized family and report the
            // equivalent trinomial coefficients alongside.
            const double scale = -(family.m0() + 1.0);
            abel::AbelEquation probe{family, {1.0, 0.0, 0.0}, {0.0, 0.0, 0.0}};
            family = abel::normalize_trinomial(probe).basis;
            const abel::SharpnessResult r = abel::sharpness_demo(family, cfg);
            pullback = abel::AbelEquation{*rc.family,
                                          {scale * r.perturbed.lambda[0],
                                           scale * r.perturbed.lambda[1],
                                           scale * r.perturbed.lambda[2]},
                                          {scale * r.perturbed.mu[0], scale * r.perturbed.mu[1],
                                           scale * r.perturbed.mu[2]}};
            json j = report_header(rc);
            j["result"] = abel::report::to_json(r);
            j["trinomial_pullback"] = abel::report::to_json(*pullback);
            write_output(rc, rc.format == "json" ? j.dump(2)
                                                 : "sharpness (via normalization) found 2 "
                                                   "non-zero cycles\n");
            return 0;
        }
        const abel::SharpnessResult r = abel::sharpness_demo(family, cfg);
        if (rc.format == "json") {
            json j = report_header(rc);
            j["result"] = abel::report::to_json(r);
            write_output(rc, j.dump(2));
        } else {
            std::ostringstream os;
            os << "eta* = (";
            for (int i = 0; i < 6; ++i) os << (i ? ", " : "") << r.eta_star[i];
            os << ")\nV4 at eta* = " << r.V4_at_star << "\n";
            os << "perturbation: eps_lambda = " << r.eps_lambda
               << ", eps_mu = " << r.eps_mu << "\n";
            os << abel::report::census_text(r.perturbed, r.census);
            write_output(rc, os.str() + numerics_line(rc));
        }
        return 0;
    }
    throw abel::validation_error("unknown command '" + rc.command + "'", "command");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Limit-cycle analysis of Abel equations with Chebyshev-system coefficients"};
    std::string command, config_path, format, out_path;
    long long seed = 0;
    int grid = 0;
    double tol = 0.0;

    app.add_option("command", command,
                   "one of: classify, lyapunov, cycles, chebyshev, sweep, sharpness");
    app.add_option("--config", config_path, "equation config file (key = value lines)");
    app.add_option("--format", format, "text, csv or json");
    app.add_option("--out", out_path, "output path (default stdout)");
    app.add_option("--seed", seed, "seed recorded in reports");
    app.add_option("--grid", grid, "override grid_points");
    app.add_option("--tol", tol, "override ode_rel_tol");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? 2 : 2;
    }

    try {
        std::string text;
        if (!config_path.empty()) {
            namespace fs = std::filesystem;
            fs::path p = config_path;
            if (!fs::exists(p)) {
                if (const char* dir = std::getenv("ABEL_CONFIG_DIR"))
                    if (fs::exists(fs::path(dir) / p)) p = fs::path(dir) / p;
            }
            std::ifstream in(p);
            if (!in) throw abel::validation_error("cannot read config " + p.string(), "config");
            std::stringstream ss;
            ss << in.rdbuf();
            text = ss.str();
        }
        RunConfig rc = parse_config(text);
        if (!command.empty()) rc.command = command;
        if (rc.command.empty())
            throw abel::validation_error("no command given", "command");
        if (!format.empty()) rc.format = format;
        if (rc.format != "text" && rc.format != "csv" && rc.format != "json")
            throw abel::validation_error("format must be text, csv or json", "format");
        if ((rc.format == "csv") && rc.command != "cycles" && rc.command != "sweep")
            throw abel::validation_error("csv output is defined for cycles and sweep", "format");
        rc.out_path = out_path;
        rc.seed = seed;
        if (grid > 0) rc.numerics.grid_points = grid;
        if (tol > 0.0) rc.numerics.ode_rel_tol = tol;
        rc.numerics.validate();
        return run(rc);
    } catch (const abel::parse_error& e) {
        std::cerr << "parse error (line " << e.line << "): " << e.what() << "\n";
        return 2;
    } catch (const abel::validation_error& e) {
        std::cerr << "invalid " << e.field << ": " << e.what() << "\n";
        return 2;
    } catch (const abel::indeterminate_error& e) {
        std::cerr << "indeterminate: " << e.what() << "\n";
        return 1;
    } catch (const abel::error& e) {
        std::cerr << "analysis error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
