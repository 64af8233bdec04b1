#pragma once

#include <CLI11.hpp>
#include <cmath>
#include <cstring>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <ostream>
#include <sstream>
#include <string>

#include "fvoigt/analysis.hpp"
#include "fvoigt/creep.hpp"
#include "fvoigt/expression.hpp"
#include "fvoigt/mittag_leffler.hpp"
#include "fvoigt/problem_io.hpp"
#include "fvoigt/solver.hpp"

namespace fvoigt {
namespace cli {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::domain_error("cannot open file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::size_t steps_for(double horizon, double step) {
    if (!(step > 0.0) || !std::isfinite(step))
        throw std::domain_error("step must be positive");
    auto n = static_cast<long long>(std::llround(horizon / step));
    if (n < 1) n = 1;
    return static_cast<std::size_t>(n);
}

inline void print_kv(std::ostream& os, const char* key, const std::string& value) {
    os << key;
    for (std::size_t n = std::strlen(key); n < 18; ++n) os << ' ';
    os << value << "\n";
}

inline void print_kv(std::ostream& os, const char* key, double value) {
    print_kv(os, key, detail::format_g12(value));
}

inline void print_kv(std::ostream& os, const char* key, bool value) {
    print_kv(os, key, std::string(value ? "true" : "false"));
}

inline void emit_condition(std::ostream& os, const ConditionReport& r, bool as_json) {
    if (as_json) {
        nlohmann::json j;
        j["contraction_lhs"] = r.contraction_lhs;
        j["contraction_rhs"] = r.contraction_rhs;
        j["margin"] = r.margin;
        j["unique_solution"] = r.unique_solution;
        j["ulam_k"] = r.ulam_k ? nlohmann::json(*r.ulam_k) : nlohmann::json(nullptr);
        j["dependence_coeff"] =
            r.dependence_coeff ? nlohmann::json(*r.dependence_coeff) : nlohmann::json(nullptr);
        os << j.dump(2) << "\n";
        return;
    }
    print_kv(os, "contraction_lhs", r.contraction_lhs);
    print_kv(os, "contraction_rhs", r.contraction_rhs);
    print_kv(os, "margin", r.margin);
    print_kv(os, "unique_solution", r.unique_solution);
    print_kv(os, "ulam_k", r.ulam_k ? detail::format_g12(*r.ulam_k) : "n/a");
    print_kv(os, "dependence_coeff",
             r.dependence_coeff ? detail::format_g12(*r.dependence_coeff) : "n/a");
}

inline void emit_dependence(std::ostream& os, const DependenceReport& r, bool as_json) {
    if (as_json) {
        nlohmann::json j;
        j["history_gap"] = r.history_gap;
        j["measured"] = r.measured;
        j["bound"] = r.bound;
        j["slack"] = r.slack;
        j["passed"] = r.passed;
        os << j.dump(2) << "\n";
        return;
    }
    print_kv(os, "history_gap", r.history_gap);
    print_kv(os, "measured", r.measured);
    print_kv(os, "bound", r.bound);
    print_kv(os, "slack", r.slack);
    print_kv(os, "passed", r.passed);
}

inline void emit_ulam(std::ostream& os, const UlamReport& r, bool as_json) {
    if (as_json) {
        nlohmann::json j;
        j["epsilon"] = r.epsilon;
        j["measured"] = r.measured;
        j["bound"] = r.bound;
        j["slack"] = r.slack;
        j["defect"] = r.defect;
        j["defect_bound"] = r.defect_bound;
        j["passed"] = r.passed;
        j["defect_ok"] = r.defect_ok;
        os << j.dump(2) << "\n";
        return;
    }
    print_kv(os, "epsilon", r.epsilon);
    print_kv(os, "measured", r.measured);
    print_kv(os, "bound", r.bound);
    print_kv(os, "slack", r.slack);
    print_kv(os, "defect", r.defect);
    print_kv(os, "defect_bound", r.defect_bound);
    print_kv(os, "passed", r.passed);
    print_kv(os, "defect_ok", r.defect_ok);
}

// Shared scratch for option values; one instance lives per invocation.
struct Options {
    double alpha = 0.5;
    double beta = 1.0;
    double z = 0.0;
    double tol = 1e-10;
    double tol_eval = 1e-13;  // direct function values print 12 digits, so dig deeper
    double modulus = 1.0;
    double viscosity = 1.0;
    double horizon = 1.0;
    double step = 0.0;
    double epsilon = 0.0;
    std::size_t iterations = 12;
    std::string file;
    std::string out_path;
    std::string history2;
    std::string perturbation;
    bool as_json = false;
};

class OutputTarget {
  public:
    OutputTarget(const std::string& path, std::ostream& fallback) {
        if (path.empty()) {
            os_ = &fallback;
            return;
        }
        file_.open(path, std::ios::binary);
        if (!file_) throw std::domain_error("cannot open output file '" + path + "'");
        os_ = &file_;
    }
    std::ostream& stream() { return *os_; }

  private:
    std::ofstream file_;
    std::ostream* os_ = nullptr;
};

inline void warn_lint(const ProblemSpec& p, std::ostream& err) {
    for (const auto& note : p.lint()) err << "note: " << note << "\n";
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"fractional viscoelastic creep toolkit"};
    app.require_subcommand(1);
    Options o;

    auto* mlf = app.add_subcommand("mlf", "Mittag-Leffler function utilities");
    mlf->require_subcommand(1);
    auto* mlf_eval = mlf->add_subcommand("eval", "evaluate E_{alpha,beta}(z)");
    mlf_eval->add_option("--alpha", o.alpha, "first parameter")->required();
    mlf_eval->add_option("--beta", o.beta, "second parameter (default 1)");
    mlf_eval->add_option("--z", o.z, "argument")->required();
    mlf_eval->add_option("--tol", o.tol_eval, "requested absolute tolerance");
    mlf_eval->callback([&] {
        const MlResult r = mittag_leffler({o.alpha, o.beta, o.z, o.tol_eval});
        if (!r.guaranteed)
            err << "warning: error bound " << detail::format_g12(r.error_bound)
                << " exceeds the requested tolerance\n";
        out << detail::format_g12(r.value) << "\n";
    });

    auto* creep = app.add_subcommand("creep", "creep compliance utilities");
    creep->require_subcommand(1);
    auto* creep_table = creep->add_subcommand("table", "tabulate fractional and classical creep");
    creep_table->add_option("--alpha", o.alpha, "fractional order in (0, 1]")->required();
    creep_table->add_option("--modulus", o.modulus, "elastic modulus (default 1)");
    creep_table->add_option("--viscosity", o.viscosity, "viscosity (default 1)");
    creep_table->add_option("--horizon", o.horizon, "table end time")->required();
    auto* creep_step = creep_table->add_option("--step", o.step, "grid step (default horizon/256)");
    creep_table->add_option("--tol", o.tol_eval, "kernel evaluation tolerance");
    creep_table->add_option("--out", o.out_path, "write CSV here instead of stdout");
    creep_table->callback([&] {
        const Material m{o.modulus, o.viscosity, o.alpha};
        m.validate();
        const double step = creep_step->count() > 0 ? o.step : o.horizon / 256.0;
        const std::size_t n = steps_for(o.horizon, step);
        OutputTarget target(o.out_path, out);
        target.stream() << "t,k_alpha,k_classical\n";
        for (std::size_t i = 0; i <= n; ++i) {
            const double t = o.horizon * static_cast<double>(i) / static_cast<double>(n);
            target.stream() << detail::format_g12(t) << ","
                            << detail::format_g12(fractional_creep(m, t, o.tol_eval)) << ","
                            << detail::format_g12(classical_creep(m, t)) << "\n";
        }
    });

    auto* solve = app.add_subcommand("solve", "solve a delay problem file");
    solve->add_option("file", o.file, "problem file (JSON)")->required();
    auto* solve_step = solve->add_option("--step", o.step, "grid step (default from file)");
    solve->add_option("--tol", o.tol, "kernel evaluation tolerance");
    solve->add_option("--out", o.out_path, "write CSV here instead of stdout");
    solve->callback([&] {
        const ProblemFile f = parse_problem_file(read_file(o.file));
        const ProblemSpec p = compile_problem(f);
        warn_lint(p, err);
        const double step = solve_step->count() > 0 ? o.step : resolved_step(f);
        const DelaySolveResult res = solve_delay(p, steps_for(p.horizon, step), o.tol);
        if (!res.unique_guaranteed)
            err << "warning: contraction condition fails, uniqueness not guaranteed\n";
        OutputTarget target(o.out_path, out);
        write_csv(target.stream(), res.x, "x");
    });

    auto* picard = app.add_subcommand("picard", "run Picard iteration on a problem file");
    picard->add_option("file", o.file, "problem file (JSON)")->required();
    picard->add_option("--iterations", o.iterations, "number of iterations (default 12)");
    auto* picard_step = picard->add_option("--step", o.step, "grid step (default from file)");
    picard->add_option("--tol", o.tol, "kernel evaluation tolerance");
    picard->add_option("--out", o.out_path, "write the table here instead of stdout");
    picard->callback([&] {
        const ProblemFile f = parse_problem_file(read_file(o.file));
        const ProblemSpec p = compile_problem(f);
        warn_lint(p, err);
        const double step = picard_step->count() > 0 ? o.step : resolved_step(f);
        const PicardResult res = picard_iterate(p, steps_for(p.horizon, step), o.iterations, o.tol);
        OutputTarget target(o.out_path, out);
        target.stream() << "iteration,distance,ratio\n";
        for (std::size_t m = 0; m < res.distances.size(); ++m) {
            target.stream() << (m + 1) << "," << detail::format_g12(res.distances[m]) << ",";
            if (m >= 1) target.stream() << detail::format_g12(res.ratios[m - 1]);
            target.stream() << "\n";
        }
    });

    auto* check = app.add_subcommand("check", "report the contraction condition");
    check->add_option("file", o.file, "problem file (JSON)")->required();
    check->add_flag("--json", o.as_json, "emit JSON instead of text");
    check->callback([&] {
        const ProblemSpec p = compile_problem(parse_problem_file(read_file(o.file)));
        warn_lint(p, err);
        emit_condition(out, contraction_check(p), o.as_json);
    });

    auto* dep = app.add_subcommand("verify-dependence",
                                   "check the continuous dependence bound for a history change");
    dep->add_option("file", o.file, "problem file (JSON)")->required();
    dep->add_option("--history2", o.history2, "second history, expression in t")->required();
    auto* dep_step = dep->add_option("--step", o.step, "grid step (default from file)");
    dep->add_option("--tol", o.tol, "kernel evaluation tolerance");
    dep->add_flag("--json", o.as_json, "emit JSON instead of text");
    dep->callback([&] {
        const ProblemFile f = parse_problem_file(read_file(o.file));
        const ProblemSpec p = compile_problem(f);
        const Expression psi2 = Expression::parse(o.history2, "t");
        const double step = dep_step->count() > 0 ? o.step : resolved_step(f);
        const DependenceReport r = verify_dependence(
            p, [psi2](double t) { return psi2(t); }, steps_for(p.horizon, step), o.tol);
        emit_dependence(out, r, o.as_json);
    });

    auto* ulam = app.add_subcommand("verify-ulam",
                                    "check the stability bound under a bounded perturbation");
    ulam->add_option("file", o.file, "problem file (JSON)")->required();
    ulam->add_option("--epsilon", o.epsilon, "perturbation budget")->required();
    ulam->add_option("--perturbation", o.perturbation,
                     "forcing perturbation, expression in t (default the constant epsilon)");
    auto* ulam_step = ulam->add_option("--step", o.step, "grid step (default from file)");
    ulam->add_option("--tol", o.tol, "kernel evaluation tolerance");
    ulam->add_flag("--json", o.as_json, "emit JSON instead of text");
    ulam->callback([&] {
        const ProblemFile f = parse_problem_file(read_file(o.file));
        const ProblemSpec p = compile_problem(f);
        std::function<double(double)> hfun;
        if (o.perturbation.empty()) {
            const double eps = o.epsilon;
            hfun = [eps](double) { return eps; };
        } else {
            const Expression e = Expression::parse(o.perturbation, "t");
            hfun = [e](double t) { return e(t); };
        }
        const double step = ulam_step->count() > 0 ? o.step : resolved_step(f);
        const UlamReport r =
            verify_ulam(p, o.epsilon, hfun, steps_for(p.horizon, step), o.tol);
        emit_ulam(out, r, o.as_json);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

}  // namespace cli
}  // namespace fvoigt
