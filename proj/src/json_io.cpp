#include "coslab/json_io.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

#include "coslab/errors.hpp"

namespace coslab {

namespace {

std::string timestamp_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

json base_document(const char* kind, bool reproducible) {
    json doc;
    doc["schema_version"] = 1;
    doc["report"] = kind;
    if (!reproducible)
        doc["generated_at"] = timestamp_now();
    return doc;
}

double require_finite(const json& j, const char* what) {
    if (!j.is_number())
        throw config_error(std::string(what) + ": expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v))
        throw config_error(std::string(what) + ": must be finite");
    return v;
}

json sample_to_json(const SampleRef& s) {
    json j;
    j["kind"] = s.is_group ? "group" : "real";
    j["t"] = s.t;
    if (s.is_group) {
        j["p"] = s.p;
        j["q"] = s.q;
    }
    j["overflowed"] = s.overflowed;
    j["gap"] = s.overflowed ? json() : json(s.gap);
    return j;
}

} // namespace

ReportFormat report_format_from_name(const std::string& name) {
    if (name == "json")
        return ReportFormat::Json;
    if (name == "csv")
        return ReportFormat::Csv;
    if (name == "text")
        return ReportFormat::Text;
    throw config_error("unknown format '" + name + "'; expected json, csv or text");
}

json matrix_to_json(const Matrix& m) {
    json re = json::array();
    json im = json::array();
    for (int i = 0; i < m.dim(); ++i) {
        json re_row = json::array();
        json im_row = json::array();
        for (int j = 0; j < m.dim(); ++j) {
            re_row.push_back(m(i, j).real());
            im_row.push_back(m(i, j).imag());
        }
        re.push_back(std::move(re_row));
        im.push_back(std::move(im_row));
    }
    return json{{"dim", m.dim()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

Matrix matrix_from_json(const json& j) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("re") || !j.contains("im"))
        throw config_error("matrix: expected {dim, re, im}");
    if (!j["dim"].is_number_integer())
        throw config_error("matrix: dim must be an integer");
    const int dim = j["dim"].get<int>();
    if (dim < 1 || dim > 64)
        throw config_error("matrix: dim must lie in [1, 64]");
    const json& re = j["re"];
    const json& im = j["im"];
    if (!re.is_array() || !im.is_array() || re.size() != static_cast<std::size_t>(dim) ||
        im.size() != static_cast<std::size_t>(dim))
        throw config_error("matrix: re/im must be dim x dim arrays");
    Matrix m(dim);
    for (int i = 0; i < dim; ++i) {
        const json& re_row = re[i];
        const json& im_row = im[i];
        if (!re_row.is_array() || !im_row.is_array() ||
            re_row.size() != static_cast<std::size_t>(dim) ||
            im_row.size() != static_cast<std::size_t>(dim))
            throw config_error("matrix: re/im must be dim x dim arrays");
        for (int k = 0; k < dim; ++k)
            m(i, k) = cdouble(require_finite(re_row[k], "matrix.re"),
                              require_finite(im_row[k], "matrix.im"));
    }
    return m;
}

json family_to_json(const CosineFamily& f) {
    json j;
    switch (f.realization()) {
    case CosineFamily::Realization::Generator:
        j["kind"] = "generator";
        j["matrix"] = matrix_to_json(f.generator_matrix());
        break;
    case CosineFamily::Realization::ScalarCos:
        j["kind"] = "scalar_cos";
        j["a"] = {{"re", f.scalar_parameter().real()}, {"im", f.scalar_parameter().imag()}};
        break;
    case CosineFamily::Realization::ScalarCosh:
        j["kind"] = "scalar_cosh";
        j["a"] = {{"re", f.scalar_parameter().real()}, {"im", f.scalar_parameter().imag()}};
        break;
    case CosineFamily::Realization::Hamel: {
        const HamelSpec& h = f.hamel_spec();
        j["kind"] = "hamel";
        j["b1"] = h.b1;
        j["xi"] = irrational_name(h.xi);
        j["mu"] = h.mu;
        j["nu"] = h.nu;
        j["func"] = h.kind == HamelSpec::Kind::Cos ? "cos" : "cosh";
        break;
    }
    }
    return j;
}

CosineFamily family_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
        throw config_error("family: expected an object with a 'kind' string");
    const std::string kind = j["kind"].get<std::string>();
    if (kind == "generator") {
        if (!j.contains("matrix"))
            throw config_error("family: generator requires a 'matrix' payload");
        return CosineFamily::generator(matrix_from_json(j["matrix"]));
    }
    if (kind == "scalar_cos" || kind == "scalar_cosh") {
        if (!j.contains("a") || !j["a"].is_object())
            throw config_error("family: scalar realizations require a = {re, im}");
        const cdouble a(require_finite(j["a"].value("re", json()), "family.a.re"),
                        require_finite(j["a"].value("im", json(0.0)), "family.a.im"));
        return kind == "scalar_cos" ? CosineFamily::scalar_cos(a)
                                    : CosineFamily::scalar_cosh(a);
    }
    if (kind == "hamel") {
        HamelSpec spec;
        spec.b1 = j.contains("b1") ? require_finite(j["b1"], "family.b1") : 1.0;
        if (!j.contains("xi") || !j["xi"].is_string())
            throw config_error("family: hamel requires 'xi' (whitelisted irrational name)");
        spec.xi = irrational_from_name(j["xi"].get<std::string>());
        spec.mu = j.contains("mu") ? require_finite(j["mu"], "family.mu") : 0.0;
        spec.nu = j.contains("nu") ? require_finite(j["nu"], "family.nu") : 1.0;
        const std::string func = j.value("func", "cos");
        if (func == "cos")
            spec.kind = HamelSpec::Kind::Cos;
        else if (func == "cosh")
            spec.kind = HamelSpec::Kind::Cosh;
        else
            throw config_error("family: hamel func must be 'cos' or 'cosh'");
        return CosineFamily::hamel(spec);
    }
    throw config_error("family: unknown kind '" + kind + "'");
}

CosineFamily load_family_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw config_error("cannot open family file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw config_error("malformed family file " + path + ": " + e.what());
    }
    return family_from_json(j);
}

Matrix load_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw config_error("cannot open matrix file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw config_error("malformed matrix file " + path + ": " + e.what());
    }
    return matrix_from_json(j);
}

void save_matrix_file(const Matrix& m, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw config_error("cannot write matrix file: " + path);
    out << matrix_to_json(m).dump(2) << '\n';
}

json trichotomy_report_to_json(const TrichotomyReport& report, bool reproducible) {
    json doc = base_document("classify", reproducible);
    doc["branch"] = branch_name(report.branch);
    doc["l_estimate"] = report.l_estimate;
    doc["m_estimate"] = report.m_estimate;
    doc["overflow_seen"] = report.overflow_seen;
    if (!report.note.empty())
        doc["note"] = report.note;
    doc["witness"] = sample_to_json(report.witness);
    json profile = json::array();
    for (const TrichotomyWindow& w : report.sup_profile)
        profile.push_back(json{{"delta", w.delta}, {"n_samples", w.n_samples}, {"sup", w.sup}});
    doc["sup_profile"] = std::move(profile);
    doc["config"] = json{{"zero_hi", report.config.zero_hi},
                         {"two_lo", report.config.two_lo},
                         {"two_hi", report.config.two_hi},
                         {"inf_threshold", report.config.inf_threshold},
                         {"min_window_samples", report.config.min_window_samples},
                         {"plateau_windows", report.config.plateau_windows}};
    return doc;
}

json refinement_trace_to_json(const RefinementTrace& trace, bool reproducible) {
    json doc = base_document("halve", reproducible);
    doc["t0"] = trace.t0;
    doc["eta"] = trace.eta;
    doc["truncated"] = trace.truncated;
    json steps = json::array();
    for (const RefinementStep& s : trace.steps) {
        steps.push_back(json{{"n", s.n},
                             {"t", s.t},
                             {"deviation", s.deviation},
                             {"norm_gap", s.norm_gap},
                             {"envelope", s.envelope},
                             {"precondition_rho", s.precondition_rho},
                             {"precondition_ok", s.precondition_ok},
                             {"flagged", s.flagged},
                             {"reconstructed", matrix_to_json(s.reconstructed)},
                             {"ground_truth", matrix_to_json(s.ground_truth)}});
    }
    doc["steps"] = std::move(steps);
    return doc;
}

json contraction_table_to_json(const ContractionSequence& seq, bool reproducible) {
    json doc = base_document("converge", reproducible);
    json rows = json::array();
    for (std::size_t n = 0; n < seq.values.size(); ++n) {
        json row{{"n", n}, {"u", seq.values[n]}};
        if (n + 1 < seq.values.size())
            row["ratio"] = seq.values[n + 1] / seq.values[n];
        rows.push_back(std::move(row));
    }
    doc["rows"] = std::move(rows);
    return doc;
}

namespace {

std::string bool_str(bool b) { return b ? "true" : "false"; }

std::string dump_double(double v) {
    // Shortest round-trip decimal, same as the JSON writer.
    return json(v).dump();
}

} // namespace

std::string render_trichotomy_report(const TrichotomyReport& report, ReportFormat format,
                                     bool reproducible) {
    if (format == ReportFormat::Json)
        return trichotomy_report_to_json(report, reproducible).dump(2) + "\n";
    std::ostringstream out;
    if (format == ReportFormat::Csv) {
        out << "# branch=" << branch_name(report.branch)
            << " l_estimate=" << dump_double(report.l_estimate)
            << " m_estimate=" << dump_double(report.m_estimate)
            << " overflow_seen=" << bool_str(report.overflow_seen) << "\n";
        out << "delta,n_samples,sup\n";
        for (const TrichotomyWindow& w : report.sup_profile)
            out << dump_double(w.delta) << ',' << w.n_samples << ',' << dump_double(w.sup)
                << "\n";
        return out.str();
    }
    out << "branch: " << branch_name(report.branch) << "\n";
    out << "l_estimate: " << dump_double(report.l_estimate) << "\n";
    out << "m_estimate: " << dump_double(report.m_estimate) << "\n";
    out << "overflow_seen: " << bool_str(report.overflow_seen) << "\n";
    if (!report.note.empty())
        out << "note: " << report.note << "\n";
    if (report.witness.is_group)
        out << "witness: group point (p, q) = (" << report.witness.p << ", "
            << report.witness.q << "), |t| = " << dump_double(report.witness.t) << "\n";
    else
        out << "witness: t = " << dump_double(report.witness.t) << "\n";
    out << "windows (delta, n_samples, sup):\n";
    for (const TrichotomyWindow& w : report.sup_profile)
        out << "  " << dump_double(w.delta) << "  " << w.n_samples << "  "
            << dump_double(w.sup) << "\n";
    return out.str();
}

std::string render_refinement_trace(const RefinementTrace& trace, ReportFormat format,
                                    bool reproducible) {
    if (format == ReportFormat::Json)
        return refinement_trace_to_json(trace, reproducible).dump(2) + "\n";
    std::ostringstream out;
    if (format == ReportFormat::Csv) {
        out << "# t0=" << dump_double(trace.t0) << " eta=" << dump_double(trace.eta)
            << " truncated=" << bool_str(trace.truncated) << "\n";
        out << "n,t,deviation,norm_gap,envelope,precondition_rho,precondition_ok,flagged\n";
        for (const RefinementStep& s : trace.steps)
            out << s.n << ',' << dump_double(s.t) << ',' << dump_double(s.deviation) << ','
                << dump_double(s.norm_gap) << ',' << dump_double(s.envelope) << ','
                << dump_double(s.precondition_rho) << ',' << bool_str(s.precondition_ok)
                << ',' << bool_str(s.flagged) << "\n";
        return out.str();
    }
    out << "t0: " << dump_double(trace.t0) << "  eta: " << dump_double(trace.eta)
        << "  truncated: " << bool_str(trace.truncated) << "\n";
    out << "  n            t      deviation       norm_gap       envelope  rho(C(t/2)-1)\n";
    char line[160];
    for (const RefinementStep& s : trace.steps) {
        std::snprintf(line, sizeof(line), "%3d %12.6g %14.6g %14.6g %14.6g %14.6g%s%s\n",
                      s.n, s.t, s.deviation, s.norm_gap, s.envelope, s.precondition_rho,
                      s.precondition_ok ? "" : "  [hypothesis violated]",
                      s.flagged ? "  [flagged]" : "");
        out << line;
    }
    return out.str();
}

std::string render_contraction_table(const ContractionSequence& seq, ReportFormat format,
                                     bool reproducible) {
    if (format == ReportFormat::Json)
        return contraction_table_to_json(seq, reproducible).dump(2) + "\n";
    std::ostringstream out;
    if (format == ReportFormat::Csv) {
        out << "n,u,ratio\n";
        for (std::size_t n = 0; n < seq.values.size(); ++n) {
            out << n << ',' << dump_double(seq.values[n]) << ',';
            if (n + 1 < seq.values.size())
                out << dump_double(seq.values[n + 1] / seq.values[n]);
            out << "\n";
        }
        return out.str();
    }
    out << "  n              u_n      u_{n+1}/u_n\n";
    char line[96];
    for (std::size_t n = 0; n < seq.values.size(); ++n) {
        if (n + 1 < seq.values.size())
            std::snprintf(line, sizeof(line), "%3zu %16.10g %16.10g\n", n, seq.values[n],
                          seq.values[n + 1] / seq.values[n]);
        else
            std::snprintf(line, sizeof(line), "%3zu %16.10g\n", n, seq.values[n]);
        out << line;
    }
    return out.str();
}

} // namespace coslab
