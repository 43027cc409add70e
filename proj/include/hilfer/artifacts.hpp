// Run artifacts: the full-precision trajectory table and structured JSON
// documents for certificates, strong-solution reports, iteration diagnostics,
// and errors. All writers are deterministic (fixed key order, fixed number
// formatting, \n line ends), so identical runs produce byte-identical files.
#pragma once

#include <hilfer/certifier.hpp>
#include <hilfer/errors.hpp>
#include <hilfer/gronwall.hpp>
#include <hilfer/picard.hpp>
#include <hilfer/problem_io.hpp>
#include <hilfer/trajectory.hpp>

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <string>

namespace hilfer {

using ordered_json = nlohmann::ordered_json;

namespace detail {

// 17 significant digits: enough to reproduce any double exactly.
inline std::string format_full(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

// JSON has no literals for non-finite numbers; encode them as strings so the
// documents stay loadable.
inline ordered_json json_number(double x) {
    if (std::isfinite(x)) return x;
    if (std::isnan(x)) return "nan";
    return x > 0.0 ? "inf" : "-inf";
}

inline ordered_json json_estimate(const ConstantEstimate& e) {
    return ordered_json{{"value", json_number(e.value)}, {"proved", e.proved}};
}

}  // namespace detail

/// CSV with header t,weight,xw_1..xw_d,x_1..x_d. The x columns repeat the
/// unweighted state and are left empty at the first node when the weight
/// exponent is below one (the state is unbounded there; the xw columns hold
/// its finite weighted limit).
inline std::string trajectory_csv(const Trajectory& traj) {
    traj.validate();
    const Eigen::Index d = traj.dim();
    std::string out = "t,weight";
    for (Eigen::Index i = 0; i < d; ++i) out += ",xw_" + std::to_string(i + 1);
    for (Eigen::Index i = 0; i < d; ++i) out += ",x_" + std::to_string(i + 1);
    out += "\n";
    for (std::size_t j = 0; j < traj.grid.nodes.size(); ++j) {
        out += detail::format_full(traj.grid.nodes[j]);
        out += ",";
        out += detail::format_full(traj.weight(j));
        for (Eigen::Index i = 0; i < d; ++i) {
            out += ",";
            out += detail::format_full(traj.weighted_values[j](i));
        }
        if (j == 0 && traj.gamma < 1.0) {
            for (Eigen::Index i = 0; i < d; ++i) out += ",";
        } else {
            const Eigen::VectorXd x = traj.value_at(j);
            for (Eigen::Index i = 0; i < d; ++i) {
                out += ",";
                out += detail::format_full(x(i));
            }
        }
        out += "\n";
    }
    return out;
}

inline ordered_json certificate_document(const Certificate& cert, const CertReport& rep) {
    ordered_json doc;
    doc["constants"] = ordered_json{
        {"zeta1", detail::json_estimate(cert.zeta1)},
        {"zeta2", detail::json_estimate(cert.zeta2)},
        {"zeta3", detail::json_estimate(cert.zeta3)},
        {"delta", detail::json_estimate(cert.delta)},
        {"lambda", detail::json_estimate(cert.lambda)},
        {"b", detail::json_estimate(cert.b)},
    };
    doc["radius"] = detail::json_number(cert.r);
    doc["q"] = detail::json_number(cert.q);
    doc["q_proof_form"] = detail::json_number(cert.q_proof_form);
    doc["cond6_lhs"] = detail::json_number(cert.cond6_lhs);
    doc["feasible_r"] = detail::json_number(cert.feasible_r);
    doc["horizon"] = detail::json_number(cert.horizon);
    doc["xi0_norm"] = detail::json_number(cert.xi0_norm);
    doc["sampling_budget"] = cert.sampling_budget;
    ordered_json conds = ordered_json::array();
    for (std::size_t i = 0; i < rep.passes.size(); ++i)
        conds.push_back(ordered_json{{"index", i + 1},
                                     {"pass", rep.passes[i]},
                                     {"message", rep.messages[i]}});
    doc["conditions"] = conds;
    doc["margin"] = detail::json_number(rep.margin);
    doc["overall"] = rep.overall;
    return doc;
}

inline ordered_json strong_report_document(const StrongReport& rep) {
    ordered_json doc;
    auto arr = [](const std::vector<double>& v) {
        ordered_json a = ordered_json::array();
        for (double x : v) a.push_back(detail::json_number(x));
        return a;
    };
    doc["h_values"] = arr(rep.h_values);
    doc["increments"] = arr(rep.increments);
    doc["theta"] = arr(rep.theta);
    doc["theta_variant"] = arr(rep.theta_variant);
    doc["gronwall_rhs"] = arr(rep.gronwall_rhs);
    ordered_json dom = ordered_json::array();
    for (std::size_t i = 0; i < rep.increments.size(); ++i)
        dom.push_back(rep.increments[i] <= rep.gronwall_rhs[i]);
    doc["dominated"] = dom;
    doc["lipschitz_modulus"] = detail::json_number(rep.lipschitz_modulus);
    doc["R_tilde"] = detail::json_number(rep.R_tilde);
    doc["c_tilde"] = detail::json_number(rep.c_tilde);
    doc["residual_eq"] = detail::json_number(rep.residual_eq);
    doc["residual_ic"] = detail::json_number(rep.residual_ic);
    return doc;
}

inline ordered_json diagnostics_document(const IterationDiagnostics& diag,
                                         const NumericsConfig& numerics) {
    ordered_json doc;
    doc["iterations"] = diag.iterations;
    doc["converged"] = diag.converged;
    doc["final_residual"] = detail::json_number(diag.final_residual);
    auto arr = [](const std::vector<double>& v) {
        ordered_json a = ordered_json::array();
        for (double x : v) a.push_back(detail::json_number(x));
        return a;
    };
    doc["differences"] = arr(diag.differences);
    doc["ratios"] = arr(diag.ratios);
    doc["iterate_norms"] = arr(diag.iterate_norms);
    doc["numerics"] = ordered_json{{"grid_n", numerics.grid_n},
                                   {"tol", numerics.tol},
                                   {"max_iter", numerics.max_iter},
                                   {"ml_tol", numerics.ml_tol},
                                   {"seed", numerics.seed}};
    return doc;
}

inline ordered_json error_document(const std::string& kind, const std::string& message) {
    ordered_json doc;
    doc["error"] = ordered_json{{"kind", kind}, {"message", message}};
    return doc;
}

/// Structured form of a library error; subtype payloads (line, field, last
/// residuals) are included when present.
inline ordered_json error_document(const Error& e) {
    ordered_json doc = error_document(e.kind(), e.what());
    if (const auto* pe = dynamic_cast<const ParseError*>(&e); pe && pe->line)
        doc["error"]["line"] = pe->line;
    if (const auto* ve = dynamic_cast<const ValidationError*>(&e))
        doc["error"]["field"] = ve->field;
    if (const auto* nc = dynamic_cast<const NonConvergence*>(&e)) {
        doc["error"]["last_bound"] = detail::json_number(nc->last_bound);
        doc["error"]["terms"] = nc->terms;
    }
    if (const auto* mi = dynamic_cast<const MaxIterExceeded*>(&e)) {
        doc["error"]["last_residual"] = detail::json_number(mi->last_residual);
        doc["error"]["iterations"] = mi->iterations;
    }
    return doc;
}

inline std::string document_text(const ordered_json& doc) { return doc.dump(2) + "\n"; }

inline void write_document(const ordered_json& doc, const std::string& path) {
    detail::write_text_file(path, document_text(doc));
}

}  // namespace hilfer
