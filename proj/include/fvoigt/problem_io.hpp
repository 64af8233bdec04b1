#pragma once

#include <cmath>
#include <json.hpp>
#include <stdexcept>
#include <string>
#include <vector>

#include "fvoigt/expression.hpp"
#include "fvoigt/problem.hpp"

namespace fvoigt {

/// On-disk form of a delay problem. Functions live as expression strings;
/// negative b_sup and lipschitz mean "not declared".
struct ProblemFileTerm {
    std::string b;
    double b_sup = -1.0;
    std::string g;
    double lipschitz = -1.0;
    double delay = 0.0;
};

struct ProblemFile {
    int schema_version = 1;
    double alpha = 0.5;
    double lambda = 1.0;
    double horizon = 1.0;
    double grid_step = -1.0;  // negative: default to horizon / 1024
    std::vector<ProblemFileTerm> terms;
    std::string history;
};

inline double resolved_step(const ProblemFile& f) {
    return f.grid_step > 0.0 ? f.grid_step : f.horizon / 1024.0;
}

namespace detail {

inline const nlohmann::json& require_field(const nlohmann::json& j, const char* name,
                                           const std::string& where) {
    const auto it = j.find(name);
    if (it == j.end())
        throw std::domain_error("problem file: missing field '" + where + name + "'");
    return *it;
}

inline double require_number(const nlohmann::json& j, const char* name,
                             const std::string& where = "") {
    const auto& v = require_field(j, name, where);
    if (!v.is_number())
        throw std::domain_error("problem file: field '" + where + name + "' must be a number");
    return v.get<double>();
}

inline std::string require_string(const nlohmann::json& j, const char* name,
                                  const std::string& where = "") {
    const auto& v = require_field(j, name, where);
    if (!v.is_string())
        throw std::domain_error("problem file: field '" + where + name + "' must be a string");
    return v.get<std::string>();
}

}  // namespace detail

inline ProblemFile parse_problem_file(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::domain_error(std::string("problem file: invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw std::domain_error("problem file: top level must be an object");

    ProblemFile f;
    const auto& ver = detail::require_field(j, "schema_version", "");
    if (!ver.is_number_integer() || ver.get<int>() != 1)
        throw std::domain_error("problem file: unsupported schema_version");
    f.schema_version = 1;
    f.alpha = detail::require_number(j, "alpha");
    f.lambda = detail::require_number(j, "lambda");
    f.horizon = detail::require_number(j, "horizon");
    if (j.contains("grid_step")) {
        if (!j["grid_step"].is_number())
            throw std::domain_error("problem file: field 'grid_step' must be a number");
        f.grid_step = j["grid_step"].get<double>();
        if (!(f.grid_step > 0.0) || !(f.grid_step <= f.horizon))
            throw std::domain_error("problem file: grid_step must lie in (0, horizon]");
    }
    f.history = detail::require_string(j, "history");

    const auto& terms = detail::require_field(j, "terms", "");
    if (!terms.is_array()) throw std::domain_error("problem file: field 'terms' must be an array");
    if (terms.empty()) throw std::domain_error("problem file: at least one delay term required");
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const std::string where = "terms[" + std::to_string(i) + "].";
        const auto& tj = terms[i];
        if (!tj.is_object())
            throw std::domain_error("problem file: terms entries must be objects");
        ProblemFileTerm t;
        t.b = detail::require_string(tj, "b", where);
        t.g = detail::require_string(tj, "g", where);
        t.delay = detail::require_number(tj, "delay", where);
        if (tj.contains("b_sup")) {
            if (!tj["b_sup"].is_number() || !(tj["b_sup"].get<double>() >= 0.0))
                throw std::domain_error("problem file: field '" + where +
                                        "b_sup' must be a nonnegative number");
            t.b_sup = tj["b_sup"].get<double>();
        }
        if (tj.contains("lipschitz")) {
            if (!tj["lipschitz"].is_number())
                throw std::domain_error("problem file: field '" + where +
                                        "lipschitz' must be a number");
            t.lipschitz = tj["lipschitz"].get<double>();
        }
        f.terms.push_back(std::move(t));
    }
    return f;
}

/// Canonical emission: alphabetical keys, two-space indent, trailing
/// newline, optional fields dropped when undeclared. Loading the output
/// and emitting again reproduces it byte for byte.
inline std::string format_problem_file(const ProblemFile& f) {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["alpha"] = f.alpha;
    j["lambda"] = f.lambda;
    j["horizon"] = f.horizon;
    if (f.grid_step > 0.0) j["grid_step"] = f.grid_step;
    j["history"] = f.history;
    j["terms"] = nlohmann::json::array();
    for (const auto& t : f.terms) {
        nlohmann::json tj;
        tj["b"] = t.b;
        tj["g"] = t.g;
        tj["delay"] = t.delay;
        if (t.b_sup >= 0.0) tj["b_sup"] = t.b_sup;
        if (t.lipschitz >= 0.0) tj["lipschitz"] = t.lipschitz;
        j["terms"].push_back(std::move(tj));
    }
    return j.dump(2) + "\n";
}

/// Compiles the expressions and fills in Lipschitz constants that can be
/// read off an affine g. Validation of the assembled problem runs before
/// returning, so a bad file fails here and not at first use.
inline ProblemSpec compile_problem(const ProblemFile& f) {
    ProblemSpec p;
    p.alpha = f.alpha;
    p.lambda = f.lambda;
    p.horizon = f.horizon;
    for (std::size_t i = 0; i < f.terms.size(); ++i) {
        const auto& t = f.terms[i];
        const std::string where = "problem file: terms[" + std::to_string(i) + "]";
        DelayTerm term;
        try {
            Expression b = Expression::parse(t.b, "t");
            term.coefficient = [b](double s) { return b(s); };
            Expression g = Expression::parse(t.g, "x");
            if (t.lipschitz >= 0.0) {
                term.lipschitz = t.lipschitz;
            } else if (g.affine() && g.affine_slope() != 0.0) {
                term.lipschitz = std::fabs(g.affine_slope());
            } else if (g.affine()) {
                throw std::domain_error(where + ": lipschitz required, g is constant");
            } else {
                throw std::domain_error(where + ": lipschitz required for a non-affine g");
            }
            term.nonlinearity = [g](double x) { return g(x); };
        } catch (const std::domain_error& e) {
            const std::string msg = e.what();
            if (msg.rfind("expression:", 0) == 0) throw std::domain_error(where + ": " + msg);
            throw;
        }
        term.delay = t.delay;
        term.coefficient_sup = t.b_sup;
        p.terms.push_back(std::move(term));
    }
    try {
        Expression h = Expression::parse(f.history, "t");
        p.history = [h](double s) { return h(s); };
    } catch (const std::domain_error& e) {
        const std::string msg = e.what();
        if (msg.rfind("expression:", 0) == 0)
            throw std::domain_error("problem file: history: " + msg);
        throw;
    }
    p.validate();
    return p;
}

}  // namespace fvoigt
