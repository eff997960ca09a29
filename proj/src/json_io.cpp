#include "covkit/json_io.hpp"

namespace covkit {

nlohmann::json to_json(const Point& p) {
    nlohmann::json arr = nlohmann::json::array();
    for (int i = 0; i < p.dim(); ++i) arr.push_back(p[i]);
    return arr;
}

nlohmann::json to_json(const Jacobian& j) {
    nlohmann::json rows = nlohmann::json::array();
    for (int r = 0; r < j.rows(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (int c = 0; c < j.cols(); ++c) row.push_back(j(r, c));
        rows.push_back(row);
    }
    return rows;
}

nlohmann::json to_json(const DifferentiabilityReport& report) {
    nlohmann::json doc;
    doc["point"] = to_json(report.point);
    doc["jacobian_used"] = to_json(report.jacobian_used);
    doc["radii"] = report.radii;
    doc["worst_residual_per_radius"] = report.worst_residual_per_radius;
    doc["verdict"] = to_string(report.verdict);
    return doc;
}

nlohmann::json to_json(const LimsupProbeReport& report) {
    nlohmann::json doc;
    doc["base_point"] = to_json(report.base_point);
    doc["covector"] = to_json(report.covector);
    doc["candidate"] = to_json(report.candidate);
    nlohmann::json rays = nlohmann::json::array();
    for (const RayEstimate& r : report.probe_rays) {
        rays.push_back({{"direction", to_json(r.direction)},
                        {"limit_estimate", r.limit_estimate}});
    }
    doc["probe_rays"] = rays;
    nlohmann::json skipped = nlohmann::json::array();
    for (const Point& r : report.skipped_rays) skipped.push_back(to_json(r));
    doc["skipped_rays"] = skipped;
    doc["random_probe_max"] = report.random_probe_max;
    doc["tol"] = report.tol;
    doc["verdict"] = to_string(report.verdict);
    return doc;
}

nlohmann::json to_json(const CoveringReport& report) {
    nlohmann::json doc;
    doc["base_point"] = to_json(report.base_point);
    doc["image_point"] = to_json(report.image_point);
    nlohmann::json levels = nlohmann::json::array();
    for (const EtaLevel& level : report.per_eta_inf) {
        nlohmann::json l;
        l["eta"] = level.eta;
        if (level.empty) {
            l["inf_estimate"] = nullptr;  // inf over the empty set
        } else {
            l["inf_estimate"] = level.inf_estimate;
        }
        l["sample_count"] = level.sample_count;
        l["accepted_count"] = level.accepted_count;
        l["empty"] = level.empty;
        levels.push_back(l);
    }
    doc["per_eta_inf"] = levels;
    doc["final_estimate"] = report.final_estimate;
    doc["final_estimate_raw"] = report.final_estimate_raw;
    doc["monotone"] = report.monotone;
    doc["any_level_empty"] = report.any_level_empty;
    return doc;
}

nlohmann::json to_json(const CoincidenceCertificate& cert) {
    nlohmann::json doc;
    doc["parameter"] = to_json(cert.parameter);
    doc["solution"] = to_json(cert.solution);
    doc["base_point"] = to_json(cert.base_point);
    doc["base_image"] = to_json(cert.base_image);
    doc["alpha"] = cert.alpha;
    doc["beta"] = cert.beta;
    doc["residual"] = cert.residual;
    doc["bound_rhs"] = cert.bound_rhs;
    doc["bound_holds"] = cert.bound_holds;
    doc["converged"] = cert.converged;
    doc["iterations"] = cert.iterations;
    nlohmann::json trace = nlohmann::json::array();
    for (const IterationRecord& rec : cert.trace) {
        trace.push_back({{"residual_before", rec.residual_before},
                         {"residual_after", rec.residual_after},
                         {"step_norm", rec.step_norm},
                         {"step_budget", rec.step_budget}});
    }
    doc["trace"] = trace;
    if (cert.radial_identity_residual) {
        doc["radial_identity_residual"] = *cert.radial_identity_residual;
    }
    return doc;
}

}  // namespace covkit
