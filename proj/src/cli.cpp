#include "e8/cli.hpp"

#include "e8/graded_algebra.hpp"
#include "e8/models.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

namespace e8 {

namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string model;
    std::string scalars = "canonical";
    std::vector<std::string> sets;
    std::string jacobi = "exhaustive";
    std::uint64_t samples = 0;
    std::uint64_t seed = 1;
    std::size_t max_failures = 8;
    std::vector<std::string> focus;
    int threads = 0;
    std::string out;
    std::string format = "scalars";
    std::vector<int> indices;
    bool all = false;
};

ScalarAssignment read_scalar_file(ModelId id, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open scalar file '" + path + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw UsageError("scalar file '" + path + "' is not valid JSON: " + e.what());
    }
    if (!doc.is_object()) throw UsageError("scalar file must be a JSON object of name -> \"num/den\"");
    auto names = scalar_names(id);
    ScalarAssignment s;
    for (const auto& [name, value] : doc.items()) {
        if (std::find(names.begin(), names.end(), name) == names.end())
            throw UsageError("scalar '" + name + "' does not belong to model " + model_key(id));
        if (!value.is_string()) throw UsageError("scalar '" + name + "' must be a \"num/den\" string");
        try {
            s[name] = parse_scalar(value.get<std::string>());
        } catch (const ScalarError& e) {
            throw UsageError(e.what());
        }
    }
    return s;
}

ScalarAssignment resolve_scalars(ModelId id, const Options& o) {
    ScalarAssignment s = o.scalars == "canonical" ? canonical_scalars(id) : read_scalar_file(id, o.scalars);
    auto names = scalar_names(id);
    for (const auto& kv : o.sets) {
        auto eq = kv.find('=');
        if (eq == std::string::npos) throw UsageError("--set expects name=num/den, got '" + kv + "'");
        std::string name = kv.substr(0, eq);
        if (std::find(names.begin(), names.end(), name) == names.end())
            throw UsageError("scalar '" + name + "' does not belong to model " + model_key(id));
        try {
            s[name] = parse_scalar(kv.substr(eq + 1));
        } catch (const ScalarError& e) {
            throw UsageError(e.what());
        }
    }
    for (const auto& n : names)
        if (!s.count(n)) throw UsageError("scalar '" + n + "' is not bound");
    return s;
}

GradedAlgebra build(ModelId id, const ScalarAssignment& s) {
    try {
        return assemble(model_spec(id, s));
    } catch (const ModelError& e) {
        throw UsageError(e.what());
    }
}

json element_json(const Element& e) {
    json out = json::array();
    for (const auto& [k, c] : e) out.push_back(json::array({k, to_string(c)}));
    return out;
}

void emit(const std::string& text, const Options& o, std::ostream& out) {
    if (o.out.empty()) {
        out << text;
        return;
    }
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw UsageError("cannot open '" + o.out + "' for writing");
    f << text;
    if (!f) throw UsageError("write to '" + o.out + "' failed");
}

void emit(const json& doc, const Options& o, std::ostream& out) { emit(doc.dump(2) + "\n", o, out); }

long long binomial(int n, int k) {
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

int cmd_dims(ModelId id, const Options& o, std::ostream& out) {
    ModelSpec spec = model_skeleton(id);
    json comps = json::array();
    int total = 0;
    for (const auto& g : spec.group.elements()) {
        json c;
        c["degree"] = g.residues;
        int dim = 0;
        if (g.is_zero()) {
            for (int n : spec.slot_dims) dim += n * n - 1;
            c["shape"] = "neutral";
        } else {
            const auto& d = spec.shape.at(g);
            long long p = 1;
            for (size_t s = 0; s < d.size(); ++s) p *= binomial(spec.slot_dims[s], d[s]);
            dim = static_cast<int>(p);
            c["shape"] = d;
        }
        c["dim"] = dim;
        total += dim;
        comps.push_back(c);
    }
    json doc;
    doc["model"] = model_key(id);
    doc["group"] = spec.group.moduli;
    doc["slot_dims"] = spec.slot_dims;
    doc["components"] = comps;
    doc["dimension"] = total;
    emit(doc, o, out);
    return 0;
}

int cmd_constraints(ModelId id, const Options& o, std::ostream& out) {
    ScalarAssignment s = resolve_scalars(id, o);
    json report = json::array();
    bool ok = true;
    for (const Constraint& c : constraints(id)) {
        Scalar l = c.lhs.eval(s), r = c.rhs.eval(s);
        if (l != r) ok = false;
        if (l != r || o.all) report.push_back({{"id", c.id}, {"lhs_value", to_string(l)}, {"rhs_value", to_string(r)}});
    }
    emit(report, o, out);
    return ok ? 0 : 1;
}

int cmd_build(ModelId id, const Options& o, std::ostream& out) {
    emit(export_constants(build(id, resolve_scalars(id, o))), o, out);
    return 0;
}

int cmd_export(ModelId id, const Options& o, std::ostream& out) {
    ScalarAssignment s = resolve_scalars(id, o);
    if (o.format == "constants") return cmd_build(id, o, out);
    if (o.format == "basis") {
        GradedAlgebra a = build(id, s);
        emit(json(a.labels), o, out);
        return 0;
    }
    json doc = json::object();
    for (const auto& [name, v] : s) doc[name] = to_string(v);
    emit(doc, o, out);
    return 0;
}

int cmd_verify(ModelId id, const Options& o, std::ostream& out) {
    ScalarAssignment s = resolve_scalars(id, o);
    ModelSpec spec;
    try {
        spec = model_spec(id, s);
    } catch (const ModelError& e) {
        throw UsageError(e.what());
    }
    GradedAlgebra a = assemble(spec);

    JacobiOptions opt;
    opt.mode = o.jacobi == "sampled" ? JacobiMode::Sampled : JacobiMode::Exhaustive;
    opt.max_failures = o.max_failures;
    opt.seed = o.seed;
    if (o.samples) opt.samples = o.samples;
    if (!o.focus.empty()) {
        auto names = scalar_names(id);
        for (const auto& n : o.focus)
            if (std::find(names.begin(), names.end(), n) == names.end()) throw UsageError("unknown focus scalar '" + n + "'");
        opt.focus = focus_pairs(spec, a, {o.focus.begin(), o.focus.end()});
    }
    JacobiReport jr = verify_jacobi(a, opt);
    GradingReport gr = verify_grading(a);

    json failures = json::array();
    for (const auto& f : jr.failures)
        failures.push_back({{"triple", {f.i, f.j, f.k}},
                            {"labels", {a.labels[static_cast<size_t>(f.i)], a.labels[static_cast<size_t>(f.j)], a.labels[static_cast<size_t>(f.k)]}},
                            {"residual", element_json(f.residual)}});
    json bad_pairs = json::array();
    for (const auto& p : gr.pairs)
        if (!p.closed || (p.required && !p.full()))
            bad_pairs.push_back({{"left", p.left}, {"right", p.right}, {"target", p.target}, {"closed", p.closed},
                                 {"rank", p.rank}, {"target_dim", p.target_dim}});

    json doc;
    doc["model"] = model_key(id);
    doc["dimension"] = a.dim();
    doc["jacobi"] = {{"mode", o.jacobi},
                     {"seed", o.jacobi == "sampled" ? json(o.seed) : json(nullptr)},
                     {"triples_checked", jr.triples_checked},
                     {"failure_count", jr.failure_count},
                     {"failures", failures},
                     {"passed", jr.passed}};
    doc["grading"] = {{"closure", gr.closure}, {"fullness", gr.fullness}, {"failing_pairs", bad_pairs}};
    bool ok = jr.passed && gr.passed();
    doc["passed"] = ok;
    emit(doc, o, out);
    return ok ? 0 : 1;
}

int cmd_killing(ModelId id, const Options& o, std::ostream& out) {
    GradedAlgebra a = build(id, resolve_scalars(id, o));
    KillingReport r = check_killing(a, o.samples ? o.samples : 1000, o.seed);
    json doc;
    doc["model"] = model_key(id);
    doc["dimension"] = a.dim();
    doc["symmetric"] = r.symmetric;
    doc["invariant"] = r.invariant;
    doc["triples_checked"] = r.triples_checked;
    doc["seed"] = o.seed;
    doc["rank"] = r.rank;
    doc["passed"] = r.passed(a.dim());
    emit(doc, o, out);
    return r.passed(a.dim()) ? 0 : 1;
}

int cmd_ideal(ModelId id, const Options& o, std::ostream& out) {
    GradedAlgebra a = build(id, resolve_scalars(id, o));
    json rows = json::array();
    int smallest = a.dim();
    if (o.indices.empty()) {
        auto sizes = ideal_closure_of_basis(a);
        for (int i = 0; i < a.dim(); ++i) {
            rows.push_back({{"index", i}, {"label", a.labels[static_cast<size_t>(i)]}, {"closure", sizes[static_cast<size_t>(i)]}});
            smallest = std::min(smallest, sizes[static_cast<size_t>(i)]);
        }
    } else {
        for (int i : o.indices) {
            if (i < 0 || i >= a.dim()) throw UsageError("basis index " + std::to_string(i) + " out of range");
            int c = ideal_closure(a, basis_element(i));
            rows.push_back({{"index", i}, {"label", a.labels[static_cast<size_t>(i)]}, {"closure", c}});
            smallest = std::min(smallest, c);
        }
    }
    json doc;
    doc["model"] = model_key(id);
    doc["dimension"] = a.dim();
    doc["seeds"] = rows;
    doc["min_closure"] = smallest;
    doc["passed"] = smallest == a.dim();
    emit(doc, o, out);
    return smallest == a.dim() ? 0 : 1;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Build and verify graded models of e8 in exact arithmetic", "e8forge"};
    app.require_subcommand(1, 1);
    Options o;

    auto common = [&](CLI::App* sub, bool needs_scalars) {
        sub->add_option("--model", o.model, "z3, z5, z4, z6, z3sq or z2z4")->required();
        if (needs_scalars) {
            sub->add_option("--scalars", o.scalars, "'canonical' or a JSON file of name -> \"num/den\"");
            sub->add_option("--set", o.sets, "override one scalar, name=num/den (repeatable)");
        }
        sub->add_option("--threads", o.threads, "worker threads (default: E8FORGE_THREADS or all cores)")
            ->check(CLI::PositiveNumber);
        sub->add_option("--out", o.out, "write the report here instead of stdout");
    };

    auto* build_cmd = app.add_subcommand("build", "assemble a model and write its structure constants");
    common(build_cmd, true);

    auto* verify_cmd = app.add_subcommand("verify", "check the Jacobi identity and the grading");
    common(verify_cmd, true);
    verify_cmd->add_option("--jacobi", o.jacobi, "exhaustive or sampled")->check(CLI::IsMember({"exhaustive", "sampled"}));
    auto* samples_opt = verify_cmd->add_option("--samples", o.samples, "number of sampled triples")->check(CLI::PositiveNumber);
    auto* seed_opt = verify_cmd->add_option("--seed", o.seed, "sampling seed");
    auto* focus_opt = verify_cmd->add_option("--focus", o.focus, "bias sampling towards rules using this scalar (repeatable)");
    verify_cmd->add_option("--max-failures", o.max_failures, "failing triples to report");

    auto* constraints_cmd = app.add_subcommand("constraints", "evaluate the scalar constraint system");
    common(constraints_cmd, true);
    constraints_cmd->add_flag("--all", o.all, "list satisfied constraints too");

    auto* killing_cmd = app.add_subcommand("killing", "Killing form symmetry, invariance and rank");
    common(killing_cmd, true);
    killing_cmd->add_option("--samples", o.samples, "random triples for the invariance check")->check(CLI::PositiveNumber);
    killing_cmd->add_option("--seed", o.seed, "sampling seed");

    auto* ideal_cmd = app.add_subcommand("ideal", "ideal generated by basis vectors");
    common(ideal_cmd, true);
    ideal_cmd->add_option("--index", o.indices, "basis index to use as seed (repeatable; default all)");

    auto* export_cmd = app.add_subcommand("export", "write the scalar assignment, basis labels or constants");
    common(export_cmd, true);
    export_cmd->add_option("--format", o.format, "scalars, basis or constants")
        ->check(CLI::IsMember({"scalars", "basis", "constants"}));

    auto* dims_cmd = app.add_subcommand("dims", "component dimensions from the shape map");
    common(dims_cmd, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "e8forge: " << e.what() << "\n";
        return 2;
    }

    try {
        if (verify_cmd->parsed() && o.jacobi == "exhaustive" &&
            (samples_opt->count() || seed_opt->count() || focus_opt->count()))
            throw UsageError("--samples, --seed and --focus only apply to --jacobi sampled");
        if (verify_cmd->parsed() && o.jacobi == "sampled" && !samples_opt->count()) o.samples = 10000;

        if (o.threads == 0) {
            if (const char* env = std::getenv("E8FORGE_THREADS"); env && *env) {
                try {
                    size_t used = 0;
                    o.threads = std::stoi(env, &used);
                    if (used != std::string(env).size() || o.threads < 1) throw std::invalid_argument(env);
                } catch (const std::exception&) {
                    throw UsageError(std::string("E8FORGE_THREADS must be a positive integer, got '") + env + "'");
                }
            }
        }
        set_threads(o.threads);

        ModelId id;
        try {
            id = parse_model(o.model);
        } catch (const ModelError& e) {
            throw UsageError(e.what());
        }

        int rc = 0;
        if (build_cmd->parsed()) rc = cmd_build(id, o, out);
        else if (verify_cmd->parsed()) rc = cmd_verify(id, o, out);
        else if (constraints_cmd->parsed()) rc = cmd_constraints(id, o, out);
        else if (killing_cmd->parsed()) rc = cmd_killing(id, o, out);
        else if (ideal_cmd->parsed()) rc = cmd_ideal(id, o, out);
        else if (export_cmd->parsed()) rc = cmd_export(id, o, out);
        else if (dims_cmd->parsed()) rc = cmd_dims(id, o, out);
        set_threads(0);
        return rc;
    } catch (const UsageError& e) {
        set_threads(0);
        err << "e8forge: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        set_threads(0);
        err << "e8forge: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace e8
