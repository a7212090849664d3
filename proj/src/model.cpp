#include "sklr/model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "sklr/errors.hpp"

namespace sklr {

using json = nlohmann::ordered_json;

double compute_intercept(const DualState& s, const Hyperparams& h) {
    const double lo = h.lo(), hi = h.hi();
    double max_up = -std::numeric_limits<double>::infinity();
    double min_low = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < s.size(); ++i) {
        const int y = s.y(i);
        const double g = -y * (y * s.m[i] + entropy_Gp(s.alpha[i] / h.C) - h.lambda);
        if ((y == 1 && s.alpha[i] < hi) || (y == -1 && s.alpha[i] > lo))
            max_up = std::max(max_up, g);
        if ((y == -1 && s.alpha[i] < hi) || (y == 1 && s.alpha[i] > lo))
            min_low = std::min(min_low, g);
    }
    if (!std::isfinite(max_up) || !std::isfinite(min_low))
        throw contract_error("intercept: empty I_up or I_low");
    // the interval brackets the equality multiplier; the decision-function
    // intercept is its negative (see primal_diagnostics for the check)
    return -0.5 * (max_up + min_low);
}

TrainedModel finalize(const Dataset& d, const DualState& s, const Hyperparams& h,
                      const ScalingParams& scaling) {
    TrainedModel m;
    m.kernel = s.cache->spec();
    m.scaling = scaling;
    m.hyperparams = h;
    m.n_train = d.n;
    m.intercept = compute_intercept(s, h);

    for (std::size_t i = 0; i < d.n; ++i) {
        if (s.alpha[i] > h.selection_threshold) {
            auto r = d.row(i);
            m.support_points.emplace_back(r.begin(), r.end());
            m.coefficients.push_back(s.alpha[i] * s.y(i));
        }
    }
    m.selection_ratio = d.n == 0 ? 0.0
                                 : static_cast<double>(m.support_points.size()) /
                                       static_cast<double>(d.n);
    return m;
}

double decision_value(const TrainedModel& m, std::span<const double> x_raw) {
    std::vector<double> x;
    apply_scaling_row(x_raw, m.scaling, x);
    double sum = 0.0;
    for (std::size_t i = 0; i < m.support_points.size(); ++i)
        sum += m.coefficients[i] * kernel_eval(m.kernel, m.support_points[i], x);
    return sum - m.intercept;
}

double stable_sigmoid(double z) {
    if (z >= 0.0) {
        return 1.0 / (1.0 + std::exp(-z));
    }
    const double e = std::exp(z);
    return e / (1.0 + e);
}

double predict_proba(const TrainedModel& m, std::span<const double> x_raw) {
    return stable_sigmoid(decision_value(m, x_raw));
}

PrimalDiagnostics primal_diagnostics(const DualState& s, const Hyperparams& h) {
    // rho + y_i b = Gp(alpha_i/C) + y_i m_i =: r_i, least squares in (rho, b)
    const std::size_t n = s.size();
    double sum_y = 0.0, sum_r = 0.0, sum_yr = 0.0;
    std::vector<double> r(n);
    for (std::size_t i = 0; i < n; ++i) {
        r[i] = entropy_Gp(s.alpha[i] / h.C) + s.y(i) * s.m[i];
        sum_y += s.y(i);
        sum_r += r[i];
        sum_yr += s.y(i) * r[i];
    }
    const double nn = static_cast<double>(n);
    const double det = nn * nn - sum_y * sum_y;
    PrimalDiagnostics diag;
    if (det == 0.0) throw contract_error("primal diagnostics: single-class state");
    diag.rho_recovered = (nn * sum_r - sum_y * sum_yr) / det;
    diag.b_recovered = (nn * sum_yr - sum_y * sum_r) / det;
    for (std::size_t i = 0; i < n; ++i) {
        const double resid = diag.rho_recovered + s.y(i) * diag.b_recovered - r[i];
        diag.rho_residual = std::max(diag.rho_residual, std::abs(resid));
    }
    double omega = 0.0;
    for (std::size_t i = 0; i < n; ++i) omega += s.alpha[i] * s.y(i) * s.m[i];
    diag.omega_norm_sq = omega;
    return diag;
}

namespace {

json kernel_to_json(const KernelSpec& k) {
    json j;
    j["kind"] = k.name();
    switch (k.kind) {
        case KernelSpec::Kind::gaussian: j["sigma"] = k.sigma; break;
        case KernelSpec::Kind::linear: break;
        case KernelSpec::Kind::polynomial:
            j["degree"] = k.degree;
            j["coef"] = k.coef;
            break;
    }
    return j;
}

KernelSpec kernel_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "gaussian") return KernelSpec::gaussian(j.at("sigma").get<double>());
    if (kind == "linear") return KernelSpec::linear();
    if (kind == "polynomial")
        return KernelSpec::polynomial(j.at("degree").get<int>(), j.at("coef").get<double>());
    throw input_error("model: unknown kernel kind '" + kind + "'");
}

} // namespace

std::string model_to_json(const TrainedModel& m) {
    json j;
    j["schema_version"] = TrainedModel::kSchemaVersion;
    j["kernel"] = kernel_to_json(m.kernel);
    j["scaling"] = {{"min", m.scaling.min}, {"max", m.scaling.max}};
    j["intercept"] = m.intercept;
    j["coefficients"] = m.coefficients;
    j["support_points"] = m.support_points;
    j["hyperparams"] = {{"C", m.hyperparams.C},
                        {"lambda", m.hyperparams.lambda},
                        {"gamma", m.hyperparams.gamma},
                        {"kkt_tol", m.hyperparams.kkt_tol},
                        {"max_iter", m.hyperparams.max_iter},
                        {"selection_threshold", m.hyperparams.selection_threshold}};
    j["selection_ratio"] = m.selection_ratio;
    j["n_train"] = m.n_train;
    j["converged"] = m.converged;
    return j.dump(2);
}

TrainedModel model_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw input_error(std::string("model: malformed JSON: ") + e.what());
    }
    try {
        const int version = j.at("schema_version").get<int>();
        if (version != TrainedModel::kSchemaVersion)
            throw input_error("model: unsupported schema_version " + std::to_string(version) +
                              " (this build reads version " +
                              std::to_string(TrainedModel::kSchemaVersion) + ")");
        TrainedModel m;
        m.kernel = kernel_from_json(j.at("kernel"));
        m.scaling.min = j.at("scaling").at("min").get<std::vector<double>>();
        m.scaling.max = j.at("scaling").at("max").get<std::vector<double>>();
        m.intercept = j.at("intercept").get<double>();
        m.coefficients = j.at("coefficients").get<std::vector<double>>();
        m.support_points = j.at("support_points").get<std::vector<std::vector<double>>>();
        const auto& hp = j.at("hyperparams");
        m.hyperparams.C = hp.at("C").get<double>();
        m.hyperparams.lambda = hp.at("lambda").get<double>();
        m.hyperparams.gamma = hp.at("gamma").get<double>();
        m.hyperparams.kkt_tol = hp.at("kkt_tol").get<double>();
        m.hyperparams.max_iter = hp.at("max_iter").get<long>();
        m.hyperparams.selection_threshold = hp.at("selection_threshold").get<double>();
        m.selection_ratio = j.at("selection_ratio").get<double>();
        m.n_train = j.at("n_train").get<std::size_t>();
        m.converged = j.at("converged").get<bool>();
        if (m.coefficients.size() != m.support_points.size())
            throw input_error("model: coefficient/support size mismatch");
        for (const auto& sp : m.support_points)
            if (sp.size() != m.scaling.min.size())
                throw input_error("model: support point dimension mismatch");
        return m;
    } catch (const json::exception& e) {
        throw input_error(std::string("model: missing or mistyped field: ") + e.what());
    }
}

void save_model(const TrainedModel& m, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw input_error("cannot write model file: " + path);
    out << model_to_json(m) << "\n";
}

TrainedModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open model file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return model_from_json(ss.str());
}

} // namespace sklr
