#include "sparsesel/json_io.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "sparsesel/error.hpp"

namespace sparsesel {

namespace {

template <class E, std::size_t N>
void enum_to(json& j, E v, const std::pair<E, const char*> (&table)[N])
{
    for (const auto& [e, name] : table)
        if (e == v) {
            j = name;
            return;
        }
    throw Error(Errc::invalid_argument, "unnamed enum value");
}

template <class E, std::size_t N>
void enum_from(const json& j, E& v, const std::pair<E, const char*> (&table)[N], const char* what)
{
    if (!j.is_string()) throw Error(Errc::parse_error, std::string(what) + " must be a string");
    const auto s = j.get<std::string>();
    for (const auto& [e, name] : table)
        if (s == name) {
            v = e;
            return;
        }
    throw Error(Errc::parse_error, "unknown " + std::string(what) + " '" + s + "'");
}

json vec_to(const Eigen::VectorXd& v)
{
    json a = json::array();
    for (Index i = 0; i < v.size(); ++i) a.push_back(number(v(i)));
    return a;
}

Eigen::VectorXd vec_from(const json& j)
{
    if (!j.is_array()) throw Error(Errc::parse_error, "expected an array of numbers");
    Eigen::VectorXd v(static_cast<Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Index>(i)) = as_number(j[i]);
    return v;
}

// Reads key into out when present.
template <class T>
void opt_get(const json& j, const char* key, T& out)
{
    if (auto it = j.find(key); it != j.end()) it->get_to(out);
}

void opt_num(const json& j, const char* key, double& out)
{
    if (auto it = j.find(key); it != j.end()) out = as_number(*it);
}

void opt_num(const json& j, const char* key, std::optional<double>& out)
{
    if (auto it = j.find(key); it != j.end()) {
        if (it->is_null())
            out.reset();
        else
            out = as_number(*it);
    }
}

json opt_out(const std::optional<double>& v) { return v ? number(*v) : json(nullptr); }

} // namespace

json number(double v)
{
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

double as_number(const json& j)
{
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
        if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    }
    throw Error(Errc::parse_error, "expected a number, got " + j.dump());
}

constexpr std::pair<ResponseKind, const char*> kResponseKinds[] = {
    {ResponseKind::binary, "binary"}, {ResponseKind::real, "real"}};
constexpr std::pair<Loss, const char*> kLosses[] = {{Loss::squared, "squared"},
                                                    {Loss::logistic, "logistic"}};
constexpr std::pair<Method, const char*> kMethods[] = {{Method::lasso_ls, "lasso_ls"},
                                                       {Method::enet_ls, "enet_ls"},
                                                       {Method::lasso_logistic, "lasso_logistic"},
                                                       {Method::enet_logistic, "enet_logistic"}};

void to_json(json& j, ResponseKind v) { enum_to(j, v, kResponseKinds); }
void from_json(const json& j, ResponseKind& v) { enum_from(j, v, kResponseKinds, "response kind"); }
void to_json(json& j, Loss v) { enum_to(j, v, kLosses); }
void from_json(const json& j, Loss& v) { enum_from(j, v, kLosses, "loss"); }
void to_json(json& j, Method v) { enum_to(j, v, kMethods); }
void from_json(const json& j, Method& v) { enum_from(j, v, kMethods, "method"); }

void to_json(json& j, const FitResult& v)
{
    j = json{{"beta_hat", vec_to(v.beta_hat)},
             {"support", v.support},
             {"objective", number(v.objective)},
             {"kkt_residual", number(v.kkt_residual)},
             {"iterations", v.iterations},
             {"converged", v.converged}};
}

void from_json(const json& j, FitResult& v)
{
    v.beta_hat = vec_from(j.at("beta_hat"));
    j.at("support").get_to(v.support);
    v.objective = as_number(j.at("objective"));
    v.kkt_residual = as_number(j.at("kkt_residual"));
    j.at("iterations").get_to(v.iterations);
    j.at("converged").get_to(v.converged);
}

void to_json(json& j, const KKTReport& v)
{
    json coords = json::array();
    for (const auto& c : v.per_coord)
        coords.push_back(
            {{"gradient", number(c.gradient)}, {"active", c.active}, {"violation", number(c.violation)}});
    j = json{{"per_coord", coords}, {"max_violation", number(v.max_violation)}};
}

void from_json(const json& j, KKTReport& v)
{
    v.per_coord.clear();
    for (const auto& c : j.at("per_coord"))
        v.per_coord.push_back(
            {as_number(c.at("gradient")), c.at("active").get<bool>(), as_number(c.at("violation"))});
    v.max_violation = as_number(j.at("max_violation"));
}

namespace tuning {

constexpr std::pair<Regime, const char*> kRegimes[] = {{Regime::large, "large"},
                                                       {Regime::weak, "weak"}};

void to_json(json& j, Regime v) { enum_to(j, v, kRegimes); }
void from_json(const json& j, Regime& v) { enum_from(j, v, kRegimes, "regime"); }

void to_json(json& j, const TuningBundle& v)
{
    j = json{{"method", v.method},
             {"r", number(v.r)},
             {"c", number(v.c)},
             {"epsilon", number(v.epsilon)},
             {"s", number(v.s)},
             {"b", number(v.b)},
             {"delta", number(v.delta)},
             {"k_upper", number(v.k_upper)},
             {"ball_radius", number(v.ball_radius)},
             {"signal_threshold_large", number(v.signal_threshold_large)},
             {"signal_threshold_weak", number(v.signal_threshold_weak)},
             {"d_limit", number(v.d_limit)}};
}

void from_json(const json& j, TuningBundle& v)
{
    j.at("method").get_to(v.method);
    v.r = as_number(j.at("r"));
    v.c = as_number(j.at("c"));
    v.epsilon = as_number(j.at("epsilon"));
    v.s = as_number(j.at("s"));
    v.b = as_number(j.at("b"));
    v.delta = as_number(j.at("delta"));
    v.k_upper = as_number(j.at("k_upper"));
    v.ball_radius = as_number(j.at("ball_radius"));
    v.signal_threshold_large = as_number(j.at("signal_threshold_large"));
    v.signal_threshold_weak = as_number(j.at("signal_threshold_weak"));
    v.d_limit = as_number(j.at("d_limit"));
}

} // namespace tuning

namespace diagnostics {

constexpr std::pair<StabilVerdict, const char*> kStabilVerdicts[] = {
    {StabilVerdict::certified_pass, "certified_pass"},
    {StabilVerdict::certified_fail, "certified_fail"},
    {StabilVerdict::not_falsified, "not_falsified"}};

void to_json(json& j, StabilVerdict v) { enum_to(j, v, kStabilVerdicts); }
void from_json(const json& j, StabilVerdict& v) { enum_from(j, v, kStabilVerdicts, "stabil verdict"); }

void to_json(json& j, const CoherenceReport& v)
{
    j = json{{"max_coherence", number(v.max_coherence)},
             {"d_requested", number(v.d_requested)},
             {"threshold", number(v.threshold)},
             {"passes", v.passes},
             {"margin", number(v.margin)}};
}

void from_json(const json& j, CoherenceReport& v)
{
    v.max_coherence = as_number(j.at("max_coherence"));
    v.d_requested = as_number(j.at("d_requested"));
    v.threshold = as_number(j.at("threshold"));
    j.at("passes").get_to(v.passes);
    v.margin = as_number(j.at("margin"));
}

void to_json(json& j, const StabilReport& v)
{
    j = json{{"b", number(v.b)},
             {"alpha", number(v.alpha)},
             {"epsilon", number(v.epsilon)},
             {"min_eig", number(v.min_eig)},
             {"sufficient_eig_ok", v.sufficient_eig_ok},
             {"sample_count", v.sample_count},
             {"sample_violations", v.sample_violations},
             {"worst_slack", number(v.worst_slack)},
             {"witness", v.witness ? vec_to(*v.witness) : json(nullptr)},
             {"verdict", v.verdict}};
}

void from_json(const json& j, StabilReport& v)
{
    v.b = as_number(j.at("b"));
    v.alpha = as_number(j.at("alpha"));
    v.epsilon = as_number(j.at("epsilon"));
    v.min_eig = as_number(j.at("min_eig"));
    j.at("sufficient_eig_ok").get_to(v.sufficient_eig_ok);
    j.at("sample_count").get_to(v.sample_count);
    j.at("sample_violations").get_to(v.sample_violations);
    v.worst_slack = as_number(j.at("worst_slack"));
    if (const auto& w = j.at("witness"); w.is_null())
        v.witness.reset();
    else
        v.witness = vec_from(w);
    j.at("verdict").get_to(v.verdict);
}

void to_json(json& j, const LidentifReport& v)
{
    j = json{{"center_max", number(v.center_max)},
             {"adjusted_max", number(v.adjusted_max)},
             {"threshold", number(v.threshold)},
             {"passes_center", v.passes_center},
             {"passes_adjusted", v.passes_adjusted}};
}

void from_json(const json& j, LidentifReport& v)
{
    v.center_max = as_number(j.at("center_max"));
    v.adjusted_max = as_number(j.at("adjusted_max"));
    v.threshold = as_number(j.at("threshold"));
    j.at("passes_center").get_to(v.passes_center);
    j.at("passes_adjusted").get_to(v.passes_adjusted);
}

} // namespace diagnostics

namespace experiments {

constexpr std::pair<DesignKind, const char*> kDesignKinds[] = {
    {DesignKind::orthogonalized, "orthogonalized"},
    {DesignKind::equicorrelated, "equicorrelated"},
    {DesignKind::block, "block"}};
constexpr std::pair<NoiseModel, const char*> kNoiseModels[] = {
    {NoiseModel::squared_real, "squared_real"},
    {NoiseModel::squared_binary, "squared_binary"},
    {NoiseModel::binary_noise, "binary_noise"},
    {NoiseModel::logistic, "logistic"}};
constexpr std::pair<SignalKind, const char*> kSignalKinds[] = {
    {SignalKind::at_threshold, "at_threshold"}, {SignalKind::fixed, "fixed"}};
constexpr std::pair<TuningMode, const char*> kTuningModes[] = {{TuningMode::ball, "ball"},
                                                               {TuningMode::selection, "selection"}};
constexpr std::pair<CiMethod, const char*> kCiMethods[] = {{CiMethod::normal, "normal"},
                                                           {CiMethod::exact, "exact"}};
constexpr std::pair<Verdict, const char*> kVerdicts[] = {
    {Verdict::meets, "meets"}, {Verdict::fails, "fails"}, {Verdict::inconclusive, "inconclusive"}};

void to_json(json& j, DesignKind v) { enum_to(j, v, kDesignKinds); }
void from_json(const json& j, DesignKind& v) { enum_from(j, v, kDesignKinds, "design kind"); }
void to_json(json& j, NoiseModel v) { enum_to(j, v, kNoiseModels); }
void from_json(const json& j, NoiseModel& v) { enum_from(j, v, kNoiseModels, "noise model"); }
void to_json(json& j, SignalKind v) { enum_to(j, v, kSignalKinds); }
void from_json(const json& j, SignalKind& v) { enum_from(j, v, kSignalKinds, "signal kind"); }
void to_json(json& j, TuningMode v) { enum_to(j, v, kTuningModes); }
void from_json(const json& j, TuningMode& v) { enum_from(j, v, kTuningModes, "tuning mode"); }
void to_json(json& j, CiMethod v) { enum_to(j, v, kCiMethods); }
void from_json(const json& j, CiMethod& v) { enum_from(j, v, kCiMethods, "ci method"); }
void to_json(json& j, Verdict v) { enum_to(j, v, kVerdicts); }
void from_json(const json& j, Verdict& v) { enum_from(j, v, kVerdicts, "verdict"); }

void to_json(json& j, Guarantee v) { j = std::string(to_string(v)); }
void from_json(const json& j, Guarantee& v)
{
    if (!j.is_string()) throw Error(Errc::parse_error, "guarantee must be a string");
    v = parse_guarantee(j.get<std::string>());
}

void to_json(json& j, const DesignSpec& v)
{
    j = json{{"kind", v.kind},
             {"rho", number(v.rho)},
             {"rho_in", number(v.rho_in)},
             {"rho_out", number(v.rho_out)},
             {"block_size", v.block_size}};
}

void from_json(const json& j, DesignSpec& v)
{
    opt_get(j, "kind", v.kind);
    opt_num(j, "rho", v.rho);
    opt_num(j, "rho_in", v.rho_in);
    opt_num(j, "rho_out", v.rho_out);
    opt_get(j, "block_size", v.block_size);
}

void to_json(json& j, const ResponseModel& v)
{
    j = json{{"model", v.model}, {"sigma", number(v.sigma)}, {"gaussian", v.gaussian}};
}

void from_json(const json& j, ResponseModel& v)
{
    opt_get(j, "model", v.model);
    opt_num(j, "sigma", v.sigma);
    opt_get(j, "gaussian", v.gaussian);
}

void to_json(json& j, const SignalSpec& v)
{
    j = json{{"kind", v.kind}, {"value", number(v.value)}, {"regime", v.regime}};
}

void from_json(const json& j, SignalSpec& v)
{
    opt_get(j, "kind", v.kind);
    opt_num(j, "value", v.value);
    opt_get(j, "regime", v.regime);
}

void to_json(json& j, const ExperimentConfig& v)
{
    j = json{{"n", v.n},
             {"num_predictors", v.num_predictors},
             {"k_star", v.k_star},
             {"design", v.design},
             {"response", v.response},
             {"signal", v.signal},
             {"delta", number(v.delta)},
             {"replications", v.replications},
             {"seed", v.seed},
             {"method", v.method},
             {"auto_penalty", v.auto_penalty},
             {"r", number(v.r)},
             {"c", number(v.c)},
             {"tuning_mode", v.tuning_mode},
             {"k_upper", opt_out(v.k_upper)},
             {"b", opt_out(v.b)},
             {"b_big", opt_out(v.b_big)},
             {"d_big", opt_out(v.d_big)},
             {"l_target", opt_out(v.l_target)},
             {"guarantee", v.guarantee},
             {"ci", v.ci}};
}

void from_json(const json& j, ExperimentConfig& v)
{
    if (!j.is_object()) throw Error(Errc::parse_error, "experiment config must be a JSON object");
    opt_get(j, "n", v.n);
    opt_get(j, "num_predictors", v.num_predictors);
    opt_get(j, "k_star", v.k_star);
    opt_get(j, "design", v.design);
    opt_get(j, "response", v.response);
    opt_get(j, "signal", v.signal);
    opt_num(j, "delta", v.delta);
    opt_get(j, "replications", v.replications);
    opt_get(j, "seed", v.seed);
    opt_get(j, "method", v.method);
    opt_get(j, "auto_penalty", v.auto_penalty);
    opt_num(j, "r", v.r);
    opt_num(j, "c", v.c);
    opt_get(j, "tuning_mode", v.tuning_mode);
    opt_num(j, "k_upper", v.k_upper);
    opt_num(j, "b", v.b);
    opt_num(j, "b_big", v.b_big);
    opt_num(j, "d_big", v.d_big);
    opt_num(j, "l_target", v.l_target);
    opt_get(j, "guarantee", v.guarantee);
    opt_get(j, "ci", v.ci);
}

void to_json(json& j, const ReplicationRecord& v)
{
    j = json{{"rep", v.rep},
             {"contains", v.contains},
             {"contained", v.contained},
             {"exact", v.exact},
             {"in_ball", v.in_ball},
             {"l1_error", number(v.l1_error)},
             {"converged", v.converged},
             {"identif_ok", v.identif_ok},
             {"lidentif_ok", v.lidentif_ok},
             {"r", number(v.r)},
             {"radius", number(v.radius)},
             {"threshold", number(v.threshold)},
             {"coherence", number(v.coherence)},
             {"error", v.error}};
}

void from_json(const json& j, ReplicationRecord& v)
{
    j.at("rep").get_to(v.rep);
    j.at("contains").get_to(v.contains);
    j.at("contained").get_to(v.contained);
    j.at("exact").get_to(v.exact);
    j.at("in_ball").get_to(v.in_ball);
    v.l1_error = as_number(j.at("l1_error"));
    j.at("converged").get_to(v.converged);
    j.at("identif_ok").get_to(v.identif_ok);
    j.at("lidentif_ok").get_to(v.lidentif_ok);
    v.r = as_number(j.at("r"));
    v.radius = as_number(j.at("radius"));
    v.threshold = as_number(j.at("threshold"));
    v.coherence = as_number(j.at("coherence"));
    j.at("error").get_to(v.error);
}

void to_json(json& j, const ExperimentReport& v)
{
    j = json{{"replications", v.replications},
             {"p_contains", number(v.p_contains)},
             {"p_contained", number(v.p_contained)},
             {"p_exact", number(v.p_exact)},
             {"ball_coverage", number(v.ball_coverage)},
             {"mean_l1_error", number(v.mean_l1_error)},
             {"ci_half_width", number(v.ci_half_width)},
             {"ci_contains", number(v.ci_contains)},
             {"ci_contained", number(v.ci_contained)},
             {"ci_exact", number(v.ci_exact)},
             {"ci_ball", number(v.ci_ball)},
             {"identif_fraction", number(v.identif_fraction)},
             {"lidentif_fraction", number(v.lidentif_fraction)},
             {"mean_r", number(v.mean_r)},
             {"mean_radius", number(v.mean_radius)},
             {"mean_threshold", number(v.mean_threshold)},
             {"nonconverged", v.nonconverged},
             {"errors", v.errors},
             {"guarantee_kind", v.guarantee_kind},
             {"guarantee", number(v.guarantee)},
             {"observed", number(v.observed)},
             {"verdict", v.verdict},
             {"records", v.records}};
}

void from_json(const json& j, ExperimentReport& v)
{
    j.at("replications").get_to(v.replications);
    v.p_contains = as_number(j.at("p_contains"));
    v.p_contained = as_number(j.at("p_contained"));
    v.p_exact = as_number(j.at("p_exact"));
    v.ball_coverage = as_number(j.at("ball_coverage"));
    v.mean_l1_error = as_number(j.at("mean_l1_error"));
    v.ci_half_width = as_number(j.at("ci_half_width"));
    v.ci_contains = as_number(j.at("ci_contains"));
    v.ci_contained = as_number(j.at("ci_contained"));
    v.ci_exact = as_number(j.at("ci_exact"));
    v.ci_ball = as_number(j.at("ci_ball"));
    v.identif_fraction = as_number(j.at("identif_fraction"));
    v.lidentif_fraction = as_number(j.at("lidentif_fraction"));
    v.mean_r = as_number(j.at("mean_r"));
    v.mean_radius = as_number(j.at("mean_radius"));
    v.mean_threshold = as_number(j.at("mean_threshold"));
    j.at("nonconverged").get_to(v.nonconverged);
    j.at("errors").get_to(v.errors);
    j.at("guarantee_kind").get_to(v.guarantee_kind);
    v.guarantee = as_number(j.at("guarantee"));
    v.observed = as_number(j.at("observed"));
    j.at("verdict").get_to(v.verdict);
    v.records.clear();
    if (auto it = j.find("records"); it != j.end()) it->get_to(v.records);
}

void to_json(json& j, const SweepPoint& v)
{
    j = json{{"multiplier", number(v.multiplier)},
             {"p_exact", number(v.p_exact)},
             {"ci_half_width", number(v.ci_half_width)}};
}

void from_json(const json& j, SweepPoint& v)
{
    v.multiplier = as_number(j.at("multiplier"));
    v.p_exact = as_number(j.at("p_exact"));
    v.ci_half_width = as_number(j.at("ci_half_width"));
}

} // namespace experiments

} // namespace sparsesel
