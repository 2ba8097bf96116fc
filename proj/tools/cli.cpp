#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "hyperego/classifier.hpp"
#include "hyperego/egonet.hpp"
#include "hyperego/error.hpp"
#include "hyperego/features.hpp"
#include "hyperego/isect_search.hpp"
#include "hyperego/random.hpp"
#include "hyperego/reconstruct.hpp"
#include "hyperego/simplex.hpp"
#include "hyperego/synthetic.hpp"

namespace fs = std::filesystem;

namespace hyperego::cli {
namespace {

/// Raised by a pipeline stage; carries the exit code to report.
struct StageFailure : std::runtime_error {
    StageFailure(int code, const std::string& what) : std::runtime_error(what), code(code) {}
    int code;
};

struct Options {
    std::string dataset_prefix;
    std::string kind = "star";
    std::string style;
    std::optional<std::size_t> min_length;
    std::optional<std::size_t> max_length;
    std::optional<std::size_t> min_alters;
    std::optional<bool> majority_filter;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> ego;
    std::size_t sample = 0;
    std::size_t restarts = 10;
    std::size_t folds = 10;
    std::string tie_policy = "exclude";
    std::string format = "csv";
    std::size_t jobs = 0;
    std::string out_dir = ".";

    // stats
    std::vector<std::string> measures;
    std::vector<std::string> variants{"ordered", "shuffled"};

    // training
    std::vector<std::size_t> hidden{100, 24};
    bool logistic = false;
    std::size_t epochs = 200;
    std::size_t minibatch = 200;
    double learning_rate = 1e-3;
    std::vector<std::string> feature_subset;
    std::string model_path;

    // reconstruction
    bool traces = false;
    bool no_timing = false;

    // theorem
    std::size_t max_simplices = 5;
    std::size_t universe = 4;

    // synth
    std::size_t synth_egos = 500;
    std::size_t synth_min_length = 10;
    std::size_t synth_max_length = 20;
};

std::string dataset_name(const std::string& prefix) {
    return fs::path(prefix).filename().string();
}

SimplexDataset load(const Options& o) {
    if (o.dataset_prefix.empty()) {
        throw CLI::ValidationError("--dataset-prefix", "required for this command");
    }
    return load_dataset(DatasetFiles::from_prefix(o.dataset_prefix), dataset_name(o.dataset_prefix));
}

std::uint64_t require_seed(const Options& o) {
    if (!o.seed) {
        throw CLI::ValidationError("--seed", "required for randomized commands");
    }
    return *o.seed;
}

EligibilityConfig eligibility(const Options& o) {
    EligibilityConfig cfg = o.style.empty() ? EligibilityConfig{10, 0, true} : default_eligibility(parse_dataset_style(o.style));
    if (o.min_length) cfg.min_length = *o.min_length;
    if (o.min_alters) cfg.min_alters = *o.min_alters;
    if (o.majority_filter) cfg.majority_identical_filter = *o.majority_filter;
    if (cfg.min_length < 1) cfg.min_length = 1;
    return cfg;
}

/// Eligible egos of the requested kind, ascending by node id, optionally
/// limited to a length window and a seeded sample.
std::vector<EgoNetwork> select_egos(const SimplexDataset& dataset, const Options& o) {
    const EgoKind kind = parse_ego_kind(o.kind);
    const EligibilityConfig cfg = eligibility(o);
    EgoExtractor extractor(dataset);
    std::vector<NodeId> candidates;
    if (o.ego) {
        candidates.push_back(*o.ego);
    } else {
        candidates = extractor.nodes();
    }
    std::vector<EgoNetwork> egos;
    for (NodeId u : candidates) {
        // Star length bounds the length of every kind from below.
        if (!o.ego && extractor.star_length(u) < 2) continue;
        if (!o.ego && kind == EgoKind::star) {
            auto len = extractor.star_length(u);
            if (len < cfg.min_length || (o.max_length && len > *o.max_length)) continue;
        }
        EgoNetwork ego = extractor.extract(u, kind);
        if (o.max_length && ego.length() > *o.max_length) continue;
        if (!is_eligible(ego, cfg) || ego.length() < 2) continue;
        egos.push_back(std::move(ego));
    }
    if (o.sample > 0 && egos.size() > o.sample) {
        Rng rng(derive_seed(o.seed.value_or(0), 0x5a3b1e));
        auto order = random_permutation(egos.size(), rng);
        order.resize(o.sample);
        std::sort(order.begin(), order.end());
        std::vector<EgoNetwork> picked;
        for (auto i : order) picked.push_back(std::move(egos[i]));
        egos = std::move(picked);
    }
    if (egos.empty()) {
        throw StageFailure(kNoEligibleEgos, "no eligible " + o.kind + " ego-networks");
    }
    return egos;
}

fs::path out_path(const Options& o, const std::string& file) {
    fs::create_directories(o.out_dir);
    return fs::path(o.out_dir) / file;
}

std::ofstream open_out(const fs::path& path) {
    std::ofstream f(path);
    if (!f) throw Error("cannot write " + path.string());
    return f;
}

TrainConfig train_config(const Options& o) {
    TrainConfig cfg;
    cfg.hidden_sizes = o.logistic ? std::vector<std::size_t>{} : o.hidden;
    cfg.max_epochs = o.epochs;
    cfg.minibatch = o.minibatch;
    cfg.learning_rate = o.learning_rate;
    cfg.seed = require_seed(o);
    return cfg;
}

std::vector<std::size_t> feature_columns(const Options& o, EgoKind kind) {
    const auto names = feature_names(kind);
    std::vector<std::size_t> cols;
    for (const auto& want : o.feature_subset) {
        auto it = std::find(names.begin(), names.end(), want);
        if (it == names.end()) throw CLI::ValidationError("--features", "unknown feature '" + want + "'");
        cols.push_back(static_cast<std::size_t>(it - names.begin()));
    }
    return cols;
}

std::vector<LabeledExample> training_examples(const std::vector<EgoNetwork>& egos, const Options& o) {
    const EgoKind kind = parse_ego_kind(o.kind);
    auto examples = make_training_set(egos, kind, derive_seed(require_seed(o), 0x7a1));
    if (!o.feature_subset.empty()) {
        auto cols = feature_columns(o, kind);
        examples = select_features(examples, cols);
    }
    return examples;
}

OrderingModel train_stage(const std::vector<LabeledExample>& examples, const Options& o) {
    try {
        return train(examples, train_config(o));
    } catch (const Error& e) {
        throw StageFailure(kTrainingFailed, e.what());
    }
}

CrossValidationReport cv_stage(const std::vector<LabeledExample>& examples, const Options& o) {
    try {
        return cross_validate(examples, o.folds, train_config(o));
    } catch (const Error& e) {
        throw StageFailure(kTrainingFailed, e.what());
    }
}

void write_cv(const CrossValidationReport& cv, const Options& o) {
    if (o.format == "json") {
        nlohmann::json j{{"folds", cv.fold_accuracy}, {"mean", cv.mean}, {"stddev", cv.stddev}};
        open_out(out_path(o, "cv.json")) << j.dump(2) << '\n';
        return;
    }
    auto f = open_out(out_path(o, "cv.csv"));
    f << std::setprecision(17) << "fold,accuracy\n";
    for (std::size_t i = 0; i < cv.fold_accuracy.size(); ++i) f << i << ',' << cv.fold_accuracy[i] << '\n';
}

void save_model_file(const OrderingModel& model, const Options& o) {
    auto f = open_out(out_path(o, "model.txt"));
    save_model(f, model);
}

ReconstructionReport reconstruct_stage(const std::vector<EgoNetwork>& egos, const OrderingModel& model,
                                       const Options& o) {
    SearchConfig search;
    search.restarts = o.restarts;
    search.seed = derive_seed(require_seed(o), 0x2ec);
    EvaluationOptions eval{o.jobs, !o.no_timing};
    try {
        return evaluate_reconstruction(egos, model, search, parse_tie_policy(o.tie_policy), eval);
    } catch (const Error& e) {
        throw StageFailure(kReconstructionFailed, e.what());
    }
}

void write_reconstruction(const ReconstructionReport& report, const std::vector<EgoNetwork>& egos,
                          const Options& o, std::ostream& out) {
    {
        auto f = open_out(out_path(o, "reconstruction.csv"));
        write_report_csv(f, report);
    }
    if (o.format == "json") {
        nlohmann::json j = nlohmann::json::array();
        for (const auto& s : report.summary) {
            j.push_back({{"method", s.method}, {"mean", s.mean}, {"stddev", s.stddev}, {"count", s.count}});
        }
        open_out(out_path(o, "reconstruction-summary.json")) << j.dump(2) << '\n';
    }
    if (o.traces) {
        fs::create_directories(fs::path(o.out_dir) / "traces");
        for (std::size_t i = 0; i < egos.size(); ++i) {
            auto f = open_out(fs::path(o.out_dir) / "traces" / ("ego-" + std::to_string(egos[i].ego) + ".json"));
            write_trace_json(f, egos[i].ego, report.traces[i]);
        }
    }
    auto cmp = compare_methods(report, "hill_climb", "random");
    out << std::fixed << std::setprecision(4);
    for (const auto& s : report.summary) {
        out << s.method << ": " << s.mean << " +/- " << s.stddev << " over " << s.count << " egos\n";
    }
    out << "hill_climb vs random: " << cmp.wins << " wins, " << cmp.losses << " losses, " << cmp.ties
        << " ties, sign-test p=" << std::setprecision(6) << cmp.p_value << '\n';
    out << std::defaultfloat;
}

// ---------------------------------------------------------------------------

int cmd_validate(const Options& o, std::ostream& out) {
    auto ds = load(o);
    Timestamp lo = 0;
    Timestamp hi = 0;
    if (!ds.simplices.empty()) {
        lo = ds.simplices.front().real_time;
        hi = ds.simplices.back().real_time;
    }
    out << ds.simplices.size() << " simplices, " << ds.node_count << " nodes, " << ds.trivial_count()
        << " trivial\n";
    out << "timestamps " << lo << ".." << hi << '\n';
    if (ds.duplicate_nodes_collapsed > 0) {
        out << ds.duplicate_nodes_collapsed << " duplicate node entries collapsed\n";
    }
    return kOk;
}

int cmd_extract(const Options& o, std::ostream& out) {
    auto ds = load(o);
    auto egos = select_egos(ds, o);
    auto f = open_out(out_path(o, "egos-" + o.kind + ".txt"));
    for (const auto& ego : egos) write_ego(f, ego);
    out << egos.size() << ' ' << o.kind << " ego-networks written\n";
    return kOk;
}

int cmd_stats(const Options& o, std::ostream& out) {
    const std::uint64_t seed = require_seed(o);
    auto ds = load(o);
    auto egos = select_egos(ds, o);
    std::vector<std::string> measures = o.measures;
    if (measures.empty()) {
        measures = {"intersection", "density", "spread", "novelty", "simplex_size"};
        if (o.kind != "star") measures.emplace_back("arrival");
    }
    std::vector<CurveVariant> variants;
    for (const auto& v : o.variants) variants.push_back(parse_curve_variant(v));

    std::size_t files = 0;
    for (const auto& name : measures) {
        const Measure measure = parse_measure(name);
        auto curve = aggregate_curves(egos, measure, variants, seed);
        for (CurveVariant v : variants) {
            StatCurve part;
            std::copy_if(curve.begin(), curve.end(), std::back_inserter(part),
                         [&](const CurvePoint& p) { return p.variant == v; });
            const std::string stem = o.kind + "-" + name + "-" + std::string(to_string(v));
            auto f = open_out(out_path(o, stem + (o.format == "json" ? ".json" : ".csv")));
            if (o.format == "json") {
                write_curve_json(f, part, measure);
            } else {
                write_curve_csv(f, part);
            }
            ++files;
        }
    }
    {
        auto f = open_out(out_path(o, o.kind + "-degree-arrival.csv"));
        f << std::setprecision(17) << "degree_bucket,mean_normalized_arrival,count\n";
        for (const auto& row : degree_arrival(egos, ds)) {
            f << row.degree_bucket << ',' << row.mean_normalized_arrival << ',' << row.count << '\n';
        }
    }
    out << egos.size() << " egos, " << files << " curve files written\n";
    return kOk;
}

int cmd_trainset(const Options& o, std::ostream& out) {
    auto ds = load(o);
    auto egos = select_egos(ds, o);
    auto examples = training_examples(egos, o);
    auto f = open_out(out_path(o, "trainset-" + o.kind + ".csv"));
    write_examples_csv(f, examples);
    out << examples.size() << " examples from " << egos.size() << " egos\n";
    return kOk;
}

int cmd_train(const Options& o, std::ostream& out) {
    auto ds = load(o);
    auto egos = select_egos(ds, o);
    auto examples = training_examples(egos, o);
    auto model = train_stage(examples, o);
    save_model_file(model, o);
    out << "trained on " << examples.size() << " examples, training accuracy " << std::fixed << std::setprecision(4)
        << accuracy(model, examples) << std::defaultfloat << '\n';
    return kOk;
}

int cmd_cv(const Options& o, std::ostream& out) {
    auto ds = load(o);
    auto egos = select_egos(ds, o);
    auto examples = training_examples(egos, o);
    auto cv = cv_stage(examples, o);
    write_cv(cv, o);
    out << o.folds << "-fold accuracy " << std::fixed << std::setprecision(4) << cv.mean << " +/- " << cv.stddev
        << std::defaultfloat << " (" << egos.size() << " egos)\n";
    return kOk;
}

OrderingModel load_model_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error("cannot open model " + path);
    return load_model(f);
}

int cmd_reconstruct(const Options& o, std::ostream& out) {
    auto ds = load(o);
    auto egos = select_egos(ds, o);
    OrderingModel model;
    if (!o.model_path.empty()) {
        model = load_model_file(o.model_path);
    } else {
        model = train_stage(training_examples(egos, o), o);
    }
    auto report = reconstruct_stage(egos, model, o);
    write_reconstruction(report, egos, o, out);
    return kOk;
}

int cmd_transfer(const Options& o, std::ostream& out) {
    if (o.model_path.empty()) throw CLI::ValidationError("--model", "required for transfer");
    auto model = load_model_file(o.model_path);
    auto ds = load(o);
    auto egos = select_egos(ds, o);
    auto examples = training_examples(egos, o);
    double acc = transfer_evaluate(model, examples);
    out << "transfer accuracy " << std::fixed << std::setprecision(4) << acc << std::defaultfloat << " on "
        << examples.size() << " examples\n";
    return kOk;
}

int cmd_pipeline(const Options& o, std::ostream& out) {
    auto ds = load(o);
    auto egos = select_egos(ds, o);
    auto examples = training_examples(egos, o);
    auto cv = cv_stage(examples, o);
    write_cv(cv, o);
    out << o.folds << "-fold accuracy " << std::fixed << std::setprecision(4) << cv.mean << " +/- " << cv.stddev
        << std::defaultfloat << " (" << egos.size() << " egos)\n";
    auto model = train_stage(examples, o);
    save_model_file(model, o);
    auto report = reconstruct_stage(egos, model, o);
    write_reconstruction(report, egos, o, out);
    return kOk;
}

int cmd_theorem(const Options& o, std::ostream& out) {
    auto instances = enumerate_small_instances(o.max_simplices, o.universe);
    auto sweep = theorem_sweep(instances, o.jobs);
    auto f = open_out(out_path(o, "theorem.csv"));
    write_sweep_csv(f, sweep);
    out << instances.size() << " instances checked, " << sweep.violations << " violations\n";
    return sweep.violations == 0 ? kOk : kBoundViolated;
}

int cmd_synth(const Options& o, std::ostream& out) {
    synthetic::LocalityConfig cfg;
    cfg.egos = o.synth_egos;
    cfg.min_length = o.synth_min_length;
    cfg.max_length = std::max(o.synth_max_length, o.synth_min_length);
    auto generated = synthetic::locality_dataset(cfg, require_seed(o));
    if (o.dataset_prefix.empty()) throw CLI::ValidationError("--dataset-prefix", "required for synth");
    auto parent = fs::path(o.dataset_prefix).parent_path();
    if (!parent.empty()) fs::create_directories(parent);
    write_dataset(generated.dataset, DatasetFiles::from_prefix(o.dataset_prefix));
    out << generated.dataset.simplices.size() << " simplices for " << generated.egos.size() << " egos written\n";
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Hypergraph ego-network analysis and temporal reconstruction", "hyperego"};
    app.require_subcommand(1);
    app.set_config("--config", "", "TOML/INI file of option defaults (flags take precedence)");
    Options o;

    auto dataset_flags = [&](CLI::App* cmd) {
        cmd->add_option("--dataset-prefix", o.dataset_prefix, "Path prefix of the -nverts/-simplices/-times files");
    };
    auto ego_flags = [&](CLI::App* cmd) {
        dataset_flags(cmd);
        cmd->add_option("--kind", o.kind, "Ego-network kind")->check(CLI::IsMember({"star", "radial", "contracted"}));
        cmd->add_option("--style", o.style, "Per-dataset eligibility defaults")
            ->check(CLI::IsMember({"coauth", "email", "threads"}));
        cmd->add_option("--min-length", o.min_length, "Minimum ego-network length");
        cmd->add_option("--max-length", o.max_length, "Maximum ego-network length");
        cmd->add_option("--min-alters", o.min_alters, "Minimum number of alters");
        cmd->add_option("--majority-filter", o.majority_filter, "Drop egos whose majority of simplices are identical");
        cmd->add_option("--ego", o.ego, "Restrict to one user node");
        cmd->add_option("--sample", o.sample, "Seeded sample of at most this many egos (0 = all)");
        cmd->add_option("--seed", o.seed, "Random seed");
        cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
        cmd->add_option("--jobs", o.jobs, "Worker threads (0 = all cores)");
        cmd->add_option("--out", o.out_dir, "Output directory");
    };
    auto train_flags = [&](CLI::App* cmd) {
        cmd->add_option("--hidden", o.hidden, "Hidden layer sizes")->delimiter(',');
        cmd->add_flag("--logistic", o.logistic, "Logistic-regression baseline instead of the network");
        cmd->add_option("--epochs", o.epochs, "Maximum training epochs");
        cmd->add_option("--minibatch", o.minibatch, "Minibatch size");
        cmd->add_option("--learning-rate", o.learning_rate, "Initial learning rate");
        cmd->add_option("--features", o.feature_subset, "Train on this subset of features")->delimiter(',');
    };
    auto search_flags = [&](CLI::App* cmd) {
        cmd->add_option("--restarts", o.restarts, "Hill-climbing restarts T")->check(CLI::PositiveNumber);
        cmd->add_option("--tie-policy", o.tie_policy, "Handling of same-time pairs in the metric")
            ->check(CLI::IsMember({"exclude", "ordinal"}));
        cmd->add_flag("--traces", o.traces, "Write one JSON search trace per ego");
        cmd->add_flag("--no-timing", o.no_timing, "Write 0 in the seconds column");
    };

    auto* validate = app.add_subcommand("validate", "Check a dataset and print a summary");
    dataset_flags(validate);
    auto* extract = app.add_subcommand("extract", "Write eligible ego-networks in text form");
    ego_flags(extract);
    auto* stats = app.add_subcommand("stats", "Write per-length measure curves");
    ego_flags(stats);
    stats->add_option("--measure", o.measures, "Measures to aggregate")->delimiter(',');
    stats->add_option("--variants", o.variants, "ordered, shuffled, first20")->delimiter(',');
    auto* trainset = app.add_subcommand("trainset", "Write the labeled feature table");
    ego_flags(trainset);
    train_flags(trainset);
    auto* train_cmd = app.add_subcommand("train", "Train and save an ordering model");
    ego_flags(train_cmd);
    train_flags(train_cmd);
    auto* cv = app.add_subcommand("cv", "k-fold cross-validation of the ordering classifier");
    ego_flags(cv);
    train_flags(cv);
    cv->add_option("--folds", o.folds, "Number of folds");
    auto* reconstruct = app.add_subcommand("reconstruct", "Hill-climbing reconstruction with baselines");
    ego_flags(reconstruct);
    train_flags(reconstruct);
    search_flags(reconstruct);
    reconstruct->add_option("--model", o.model_path, "Saved model (trained on the fly when omitted)");
    auto* transfer = app.add_subcommand("transfer", "Evaluate a saved model on another dataset");
    ego_flags(transfer);
    transfer->add_option("--model", o.model_path, "Saved model")->required();
    auto* pipeline = app.add_subcommand("pipeline", "Cross-validate, train, and reconstruct end to end");
    ego_flags(pipeline);
    train_flags(pipeline);
    search_flags(pipeline);
    pipeline->add_option("--folds", o.folds, "Number of folds");
    auto* theorem = app.add_subcommand("theorem", "Exhaustive local-search ratio check on small instances");
    theorem->add_option("--max-simplices", o.max_simplices, "Largest instance size")->check(CLI::Range(1, 6));
    theorem->add_option("--universe", o.universe, "Node universe size")->check(CLI::Range(1, 6));
    theorem->add_option("--jobs", o.jobs, "Worker threads (0 = all cores)");
    theorem->add_option("--out", o.out_dir, "Output directory");
    auto* synth = app.add_subcommand("synth", "Generate a locality-biased synthetic dataset");
    synth->add_option("--dataset-prefix", o.dataset_prefix, "Output path prefix")->required();
    synth->add_option("--egos", o.synth_egos, "Number of ego-networks");
    synth->add_option("--min-length", o.synth_min_length, "Shortest ego length");
    synth->add_option("--max-length", o.synth_max_length, "Longest ego length");
    synth->add_option("--seed", o.seed, "Random seed");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty()) reversed.pop_back();
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kOk : kUsage;
    }

    try {
        if (validate->parsed()) return cmd_validate(o, out);
        if (extract->parsed()) return cmd_extract(o, out);
        if (stats->parsed()) return cmd_stats(o, out);
        if (trainset->parsed()) return cmd_trainset(o, out);
        if (train_cmd->parsed()) return cmd_train(o, out);
        if (cv->parsed()) return cmd_cv(o, out);
        if (reconstruct->parsed()) return cmd_reconstruct(o, out);
        if (transfer->parsed()) return cmd_transfer(o, out);
        if (pipeline->parsed()) return cmd_pipeline(o, out);
        if (theorem->parsed()) return cmd_theorem(o, out);
        if (synth->parsed()) return cmd_synth(o, out);
    } catch (const CLI::ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const StageFailure& e) {
        err << "error: " << e.what() << '\n';
        return e.code;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kMalformedInput;
    } catch (const StructuralError& e) {
        err << "error: " << e.what() << '\n';
        return kMalformedInput;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kMalformedInput;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}

}  // namespace hyperego::cli
