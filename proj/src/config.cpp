#include "sac/config.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace sac {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

double to_double(const std::string& s, const std::string& key) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error("config: invalid number '" + s + "' for key '" + key + "'");
    }
}

int to_int(const std::string& s, const std::string& key) {
    const double v = to_double(s, key);
    const int i = static_cast<int>(v);
    if (static_cast<double>(i) != v)
        throw std::runtime_error("config: expected integer for key '" + key + "'");
    return i;
}

double default_epsilon(const std::string& scheme, const std::string& eval) {
    if (eval == "equal") return 0.45;
    if (eval == "complex_circle") return 0.15;
    if (scheme == "layer_sac_lagrange") return 0.0333;
    if (scheme == "layer_sac_chebyshev") return 0.0125;
    return 1.0;  // chebyshev point sets ignore epsilon
}

std::string default_eval(const std::string& scheme) {
    if (scheme == "matdot" || scheme == "eps_amd" || scheme == "group_sac")
        return "complex_circle";
    if (scheme == "layer_sac_chebyshev" || scheme == "layer_sac_lagrange") return "cluster";
    return "chebyshev";  // orthomatdot, lagrange
}

EvaluationSet chebyshev_point_set(int n) {
    EvaluationSet set;
    for (double r : chebyshev_roots(n)) set.points.emplace_back(r, 0.0);
    set.validate();
    return set;
}

}  // namespace

CodingScheme build_scheme(const SchemeParams& p) {
    if (p.k < 1) throw std::invalid_argument("scheme: k must be a positive integer");
    if (p.n < 1) throw std::invalid_argument("scheme: n must be a positive integer");
    SchemeParams q = p;
    if (q.eval.empty()) q.eval = default_eval(q.name);
    if (q.epsilon <= 0.0) q.epsilon = default_epsilon(q.name, q.eval);

    CodingScheme scheme;
    scheme.k_total = q.k;

    if (q.name == "matdot") {
        scheme.variant = MatDot{};
    } else if (q.name == "eps_amd") {
        scheme.variant = EpsApproxMatDot{q.shuffle};
    } else if (q.name == "group_sac") {
        if (q.groups.empty()) throw std::invalid_argument("group_sac: 'groups' is required");
        scheme.variant = GroupSac{q.groups, q.shuffle};
    } else if (q.name == "orthomatdot") {
        scheme.variant = OrthoMatDot{};
    } else if (q.name == "lagrange") {
        std::vector<double> anchors = q.anchors;
        if (anchors.empty()) anchors = chebyshev_roots(q.k);
        scheme.variant = LagrangeCode{anchors};
    } else if (q.name == "layer_sac_chebyshev" || q.name == "layer_sac_lagrange") {
        std::vector<int> sizes = q.cluster_sizes;
        if (sizes.empty()) {
            if (q.n % q.k != 0)
                throw std::invalid_argument(
                    "layer_sac: k must divide n when cluster_sizes is omitted");
            sizes.assign(q.k, q.n / q.k);
        }
        if (q.name == "layer_sac_chebyshev") {
            scheme.variant = make_layer_sac_chebyshev(q.k, sizes);
        } else {
            std::vector<double> anchors = q.anchors;
            if (anchors.empty())
                for (int i = 1; i <= q.k; ++i) anchors.push_back(i);
            scheme.variant = make_layer_sac_lagrange(anchors, sizes);
        }
        const auto& ls = std::get<LayerSac>(scheme.variant);
        scheme.eval_set = make_cluster_set(ls.anchors, ls.cluster_sizes, q.epsilon);
        scheme.validate();
        return scheme;
    } else {
        throw std::invalid_argument("scheme: unknown scheme '" + q.name + "'");
    }

    if (q.eval == "equal") {
        scheme.eval_set = make_equal_real_set(q.n, q.epsilon);
    } else if (q.eval == "complex_circle") {
        scheme.eval_set = make_complex_circle_set(q.n, q.epsilon);
    } else if (q.eval == "chebyshev") {
        scheme.eval_set = chebyshev_point_set(q.n);
    } else {
        throw std::invalid_argument("scheme: unknown eval set '" + q.eval + "'");
    }
    scheme.validate();
    return scheme;
}

SweepSpec parse_config(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config line " + std::to_string(lineno) +
                                     ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw std::runtime_error("config line " + std::to_string(lineno) +
                                     ": empty key or value");
        if (kv.count(key))
            throw std::runtime_error("config line " + std::to_string(lineno) +
                                     ": duplicate key '" + key + "'");
        kv[key] = value;
    }

    static const std::vector<std::string> known = {
        "scheme", "k",      "n",       "nx",      "nz",    "ny",    "groups",
        "anchors", "cluster_sizes", "eval", "epsilon", "shuffle", "input",
        "lambda", "beta",   "trials",  "seed",    "sweep", "out"};
    for (const auto& [key, value] : kv)
        if (std::find(known.begin(), known.end(), key) == known.end())
            throw std::runtime_error("config: unknown key '" + key + "'");

    auto get = [&](const std::string& key, const std::string& fallback) {
        auto it = kv.find(key);
        return it == kv.end() ? fallback : it->second;
    };
    auto require = [&](const std::string& key) {
        auto it = kv.find(key);
        if (it == kv.end()) throw std::runtime_error("config: missing required key '" + key + "'");
        return it->second;
    };

    SweepSpec spec;
    SchemeParams& sp = spec.scheme_params;
    sp.name = require("scheme");
    sp.k = to_int(require("k"), "k");
    sp.n = to_int(require("n"), "n");
    sp.eval = get("eval", "");
    sp.epsilon = to_double(get("epsilon", "0"), "epsilon");
    for (const auto& g : split_list(get("groups", ""))) sp.groups.push_back(to_int(g, "groups"));
    for (const auto& a : split_list(get("anchors", ""))) sp.anchors.push_back(to_double(a, "anchors"));
    for (const auto& c : split_list(get("cluster_sizes", "")))
        sp.cluster_sizes.push_back(to_int(c, "cluster_sizes"));
    const std::string shuffle = get("shuffle", "on");
    if (shuffle != "on" && shuffle != "off")
        throw std::runtime_error("config: 'shuffle' must be on or off");
    sp.shuffle = shuffle == "on";

    ExperimentConfig& cfg = spec.base;
    cfg.scheme = build_scheme(sp);
    cfg.nx = static_cast<std::size_t>(to_int(require("nx"), "nx"));
    cfg.nz = static_cast<std::size_t>(to_int(require("nz"), "nz"));
    cfg.ny = static_cast<std::size_t>(to_int(require("ny"), "ny"));
    const std::string input = get("input", "iid");
    if (input == "iid") {
        cfg.input_model = InputModel::IidGaussian;
    } else if (input == "correlated") {
        cfg.input_model = InputModel::Correlated;
    } else {
        throw std::runtime_error("config: 'input' must be iid or correlated");
    }
    cfg.lambda = to_double(get("lambda", "0"), "lambda");
    const std::string beta = get("beta", "one");
    if (beta == "one") cfg.beta_policy = BetaPolicy::One;
    else if (beta == "unbiased") cfg.beta_policy = BetaPolicy::Unbiased;
    else if (beta == "oracle") cfg.beta_policy = BetaPolicy::TheoremOracle;
    else if (beta == "case_correlated") cfg.beta_policy = BetaPolicy::CaseCorrelated;
    else throw std::runtime_error("config: unknown beta policy '" + beta + "'");
    cfg.trials = to_int(get("trials", "1"), "trials");
    cfg.seed = static_cast<std::uint64_t>(to_int(get("seed", "0"), "seed"));

    spec.out_prefix = get("out", "results");

    const std::string sweep = get("sweep", "");
    if (!sweep.empty()) {
        const auto colon = sweep.find(':');
        if (colon == std::string::npos)
            throw std::runtime_error("config: 'sweep' must be '<axis>: v1, v2, ...'");
        const std::string axis = trim(sweep.substr(0, colon));
        const auto items = split_list(sweep.substr(colon + 1));
        if (items.empty()) throw std::runtime_error("config: empty sweep list");
        if (axis == "epsilon" || axis == "lambda") {
            spec.axis = axis == "epsilon" ? SweepAxis::Epsilon : SweepAxis::Lambda;
            for (const auto& v : items) spec.values.push_back(to_double(v, "sweep"));
        } else if (axis == "scheme") {
            spec.axis = SweepAxis::Scheme;
            spec.scheme_names = items;
            for (const auto& name : items) {
                SchemeParams probe = sp;
                probe.name = name;
                build_scheme(probe);  // validate every swept scheme up front
            }
        } else {
            throw std::runtime_error("config: sweep axis must be epsilon, lambda, or scheme");
        }
    }

    cfg.validate();
    return spec;
}

SweepSpec parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void append_run(std::ostream& raw, std::ostream& mean, const std::string& scheme_label,
                double sweep_value, const ErrorReport& report) {
    for (const auto& rec : report.records)
        raw << scheme_label << ',' << fmt17(sweep_value) << ',' << rec.trial << ',' << rec.m << ','
            << fmt17(rec.beta) << ',' << fmt17(rec.rel_approx) << ',' << fmt17(rec.rel_comp) << ','
            << fmt17(rec.rel_total) << '\n';
    for (const auto& st : report.per_m)
        mean << scheme_label << ',' << fmt17(sweep_value) << ',' << st.m << ','
             << fmt17(st.mean_beta) << ',' << fmt17(st.mean_approx) << ',' << fmt17(st.mean_comp)
             << ',' << fmt17(st.mean_total) << ',' << fmt17(st.se_approx) << ','
             << fmt17(st.se_comp) << ',' << fmt17(st.se_total) << '\n';
}

}  // namespace

int run_sweep(const SweepSpec& spec, const std::string& out_dir) {
    const std::string raw_path = out_dir + "/" + spec.out_prefix + ".csv";
    const std::string mean_path = out_dir + "/" + spec.out_prefix + "_mean.csv";
    std::ofstream raw(raw_path);
    std::ofstream mean(mean_path);
    if (!raw || !mean) throw std::runtime_error("cannot open output files under " + out_dir);
    raw << "scheme,sweep_value,trial,m,beta,rel_approx_err,rel_comp_err,rel_total_err\n";
    mean << "scheme,sweep_value,m,beta,rel_approx_err,rel_comp_err,rel_total_err,"
            "se_approx_err,se_comp_err,se_total_err\n";

    if (spec.axis == SweepAxis::None) {
        const ErrorReport report = run_experiment(spec.base);
        append_run(raw, mean, scheme_name(spec.base.scheme), 0.0, report);
    } else if (spec.axis == SweepAxis::Epsilon) {
        for (double eps : spec.values) {
            ExperimentConfig cfg = spec.base;
            SchemeParams sp = spec.scheme_params;
            sp.epsilon = eps;
            cfg.scheme = build_scheme(sp);
            append_run(raw, mean, scheme_name(cfg.scheme), eps, run_experiment(cfg));
        }
    } else if (spec.axis == SweepAxis::Lambda) {
        for (double lambda : spec.values) {
            ExperimentConfig cfg = spec.base;
            cfg.lambda = lambda;
            append_run(raw, mean, scheme_name(cfg.scheme), lambda, run_experiment(cfg));
        }
    } else {
        for (const auto& name : spec.scheme_names) {
            ExperimentConfig cfg = spec.base;
            SchemeParams sp = spec.scheme_params;
            sp.name = name;
            cfg.scheme = build_scheme(sp);
            append_run(raw, mean, scheme_name(cfg.scheme), 0.0, run_experiment(cfg));
        }
    }
    return 0;
}

}  // namespace sac
