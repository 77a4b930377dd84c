#include "zeekml/cli/commands.hpp"

#include "zeekml/dataset_io.hpp"
#include "zeekml/eval/correlation.hpp"
#include "zeekml/eval/cross_validation.hpp"
#include "zeekml/eval/multiclass.hpp"
#include "zeekml/manifest.hpp"
#include "zeekml/ml/adaboost.hpp"
#include "zeekml/ml/serialize.hpp"
#include "zeekml/zeek_log_parser.hpp"

#include <json.hpp>

#include <fstream>
#include <iostream>

namespace zeekml::cli {

using nlohmann::ordered_json;

namespace {

void write_json(const std::filesystem::path& path, const ordered_json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open for writing: " + path.string());
    out << j.dump(2) << '\n';
}

ordered_json metrics_json(const eval::Metrics& m) {
    return ordered_json{
        {"accuracy", m.accuracy},
        {"precision", m.precision},
        {"precision_defined", m.precision_defined},
        {"recall", m.recall},
        {"recall_defined", m.recall_defined},
        {"f1", m.f1},
        {"f1_defined", m.f1_defined},
    };
}

ordered_json cv_report_json(const eval::CvReport& report) {
    return ordered_json{
        {"model", report.model_name},
        {"folds", report.n_folds},
        {"seed", report.seed},
        {"fold_digest", report.folds_digest},
        {"fold_accuracy", report.fold_accuracy},
        {"mean_accuracy", report.mean_accuracy},
        {"confusion",
         {{"tp", report.pooled_counts.tp},
          {"tn", report.pooled_counts.tn},
          {"fp", report.pooled_counts.fp},
          {"fn", report.pooled_counts.fn}}},
        {"metrics", metrics_json(report.pooled)},
        {"auc", report.roc.auc},
        {"roc_points", report.roc.points.size()},
    };
}

} // namespace

ml::TrainConfig effective_config(ml::ModelKind kind, std::optional<int> n_estimators,
                                 std::optional<int> max_depth, uint64_t seed) {
    ml::TrainConfig config;
    switch (kind) {
    case ml::ModelKind::forest: config = ml::TrainConfig::forest_defaults(); break;
    case ml::ModelKind::boosting: config = ml::TrainConfig::boosting_defaults(); break;
    case ml::ModelKind::svm: config = ml::TrainConfig::svm_defaults(); break;
    }
    if (n_estimators)
        config.n_estimators = *n_estimators;
    if (max_depth)
        config.max_depth = *max_depth;
    config.seed = seed;
    return config;
}

int cmd_extract(const ExtractArgs& args) {
    std::filesystem::create_directories(args.out_dir);
    Manifest manifest = load_manifest(args.manifest);

    features::LabeledDataset dataset;
    dataset.names.assign(features::feature_names().begin(), features::feature_names().end());

    ordered_json captures = ordered_json::array();
    ordered_json errors = ordered_json::array();

    for (const CaptureSpec& capture : manifest.captures) {
        try {
            auto conns = zeeklog::parse_conn_log_file(capture.conn_log.string());
            auto ssls = zeeklog::parse_ssl_log_file(capture.ssl_log.string());
            auto x509s = zeeklog::parse_x509_log_file(capture.x509_log.string());

            auto flows = flow::join_records(conns.records, ssls.records, x509s.records);
            flow::GroupResult grouped = flow::group_by_key(flows);

            flow::LabelSource labels;
            labels.infected_ips.insert(capture.infected_ips.begin(), capture.infected_ips.end());
            labels.family_by_ip = capture.family_by_ip;
            flow::label_aggregates(grouped.aggregates, labels);

            std::size_t benign = 0, malicious = 0;
            for (const auto& agg : grouped.aggregates)
                agg.label == flow::Label::malicious ? ++malicious : ++benign;

            features::LabeledDataset part = features::make_dataset(grouped.aggregates);
            for (auto& row : part.rows)
                dataset.rows.push_back(std::move(row));

            captures.push_back(ordered_json{
                {"name", capture.name},
                {"conn_records", conns.records.size()},
                {"ssl_records", ssls.records.size()},
                {"x509_records", x509s.records.size()},
                {"skipped_lines",
                 {{"conn", conns.skipped}, {"ssl", ssls.skipped}, {"x509", x509s.skipped}}},
                {"aggregates", grouped.aggregates.size()},
                {"benign_aggregates", benign},
                {"malicious_aggregates", malicious},
                {"dropped_non_ssl_aggregates", grouped.dropped_aggregates},
                {"dropped_non_ssl_flows", grouped.dropped_flows},
            });
        } catch (const std::exception& e) {
            errors.push_back(ordered_json{{"capture", capture.name}, {"error", e.what()}});
            std::cerr << "extract: capture " << capture.name << " failed: " << e.what() << "\n";
        }
    }

    const std::filesystem::path csv_path = args.out_dir / "features.csv";
    const bool have_rows = !dataset.rows.empty();
    if (have_rows) {
        features::write_dataset_csv(csv_path.string(), dataset);
        features::write_dataset_jsonl((args.out_dir / "features.jsonl").string(), dataset);
    }

    ordered_json summary;
    summary["captures"] = captures;
    summary["errors"] = errors;
    summary["rows"] = dataset.rows.size();
    summary["features_csv"] = have_rows ? csv_path.filename().string() : "";
    write_json(args.out_dir / "extract_summary.json", summary);

    return (!errors.empty() && !have_rows) ? 1 : 0;
}

int cmd_train_eval(const TrainEvalArgs& args) {
    std::filesystem::create_directories(args.out_dir);
    auto csv = args.features_csv.empty() ? args.out_dir / "features.csv" : args.features_csv;
    features::LabeledDataset dataset = features::read_dataset_csv(csv.string());

    ml::Matrix x = features::feature_matrix(dataset);
    std::vector<int> y = features::binary_labels(dataset);

    ml::TrainConfig config = effective_config(args.model, args.n_estimators, args.max_depth,
                                              args.seed);
    auto trainer = ml::make_trainer(args.model, config);
    eval::CvReport report = eval::cross_validate(*trainer, x, y, args.n_folds, args.seed);

    write_json(args.out_dir / "report.json", cv_report_json(report));

    {
        std::ofstream roc(args.out_dir / "roc.csv", std::ios::binary);
        roc << "fpr,tpr\n";
        for (const auto& p : report.roc.points)
            roc << features::format_double(p.fpr) << ',' << features::format_double(p.tpr)
                << '\n';
    }

    // Deployable artifact: one model trained on the full dataset.
    auto final_model = trainer->train(x, y, fnv1a64("final-model", args.seed));
    ml::save_model((args.out_dir / "model.json").string(), *final_model);

    std::cout << "train-eval: " << trainer->name() << " mean accuracy "
              << report.mean_accuracy << ", AUC " << report.roc.auc << "\n";
    return 0;
}

int cmd_rfe(const RfeArgs& args) {
    std::filesystem::create_directories(args.out_dir);
    auto csv = args.features_csv.empty() ? args.out_dir / "features.csv" : args.features_csv;
    features::LabeledDataset dataset = features::read_dataset_csv(csv.string());

    ml::Matrix x = features::feature_matrix(dataset);
    std::vector<int> y = features::binary_labels(dataset);

    ml::TrainConfig config = effective_config(args.model, args.n_estimators, std::nullopt,
                                              args.seed);
    auto trainer = ml::make_trainer(args.model, config);

    eval::RfeOptions options;
    options.n_folds = args.n_folds;
    options.seed = args.seed;
    options.step = args.step;
    eval::RfeResult result = eval::rfe(*trainer, x, y, options);

    ordered_json j;
    j["model"] = std::string(trainer->name());
    j["folds"] = args.n_folds;
    j["seed"] = args.seed;
    ordered_json ranking = ordered_json::array();
    for (int feature : result.ranking)
        ranking.push_back(dataset.names[static_cast<std::size_t>(feature)]);
    j["ranking"] = ranking;
    j["elimination_order"] = result.elimination_order;
    j["accuracy_at_k"] = result.accuracy_at_k;
    write_json(args.out_dir / "rfe.json", j);

    {
        std::ofstream out(args.out_dir / "accuracy_vs_k.csv", std::ios::binary);
        out << "k,accuracy\n";
        for (std::size_t k = 1; k <= result.accuracy_at_k.size(); ++k)
            if (!result.features_at_k[k - 1].empty() || k == 1)
                out << k << ',' << features::format_double(result.accuracy_at_k[k - 1]) << '\n';
    }

    std::cout << "rfe: top feature " << (result.ranking.empty()
                                             ? std::string("?")
                                             : dataset.names[result.ranking.front()])
              << "\n";
    return 0;
}

int cmd_correlate(const CorrelateArgs& args) {
    std::filesystem::create_directories(args.out_dir);
    auto csv = args.features_csv.empty() ? args.out_dir / "features.csv" : args.features_csv;
    features::LabeledDataset dataset = features::read_dataset_csv(csv.string());

    eval::CorrelationMatrix matrix = eval::pearson_matrix(features::feature_matrix(dataset));

    {
        std::ofstream out(args.out_dir / "correlation.csv", std::ios::binary);
        out << "feature";
        for (const auto& name : dataset.names)
            out << ',' << name;
        out << '\n';
        for (std::size_t i = 0; i < matrix.r.size(); ++i) {
            out << dataset.names[i];
            for (double v : matrix.r[i])
                out << ',' << features::format_double(v);
            out << '\n';
        }
    }

    ordered_json j;
    j["features"] = dataset.names;
    j["constant_columns"] = matrix.constant_columns;
    j["matrix"] = matrix.r;
    write_json(args.out_dir / "correlation.json", j);
    return 0;
}

int cmd_multiclass(const MulticlassArgs& args) {
    std::filesystem::create_directories(args.out_dir);
    auto csv = args.features_csv.empty() ? args.out_dir / "features.csv" : args.features_csv;
    features::LabeledDataset dataset = features::read_dataset_csv(csv.string());

    ml::TrainConfig config = effective_config(args.model, args.n_estimators, std::nullopt,
                                              args.seed);
    eval::MulticlassReport report =
        eval::multiclass_experiment(dataset, args.model, config, args.n_folds, args.seed);

    ordered_json j;
    j["model"] = std::string(ml::model_kind_name(args.model));
    j["families"] = report.families;
    j["family_counts"] = report.family_counts;
    ordered_json pairs = ordered_json::array();
    for (const auto& p : report.pairwise)
        pairs.push_back(ordered_json{{"families", {p.family_a, p.family_b}},
                                     {"folds", p.n_folds},
                                     {"mean_accuracy", p.mean_accuracy},
                                     {"fold_accuracy", p.fold_accuracy}});
    j["pairwise"] = pairs;
    j["all_family"] = ordered_json{{"folds", report.all_family_folds},
                                   {"mean_accuracy", report.all_family_accuracy},
                                   {"fold_accuracy", report.all_family_fold_accuracy}};
    j["warnings"] = report.warnings;
    write_json(args.out_dir / "multiclass.json", j);

    std::cout << "multiclass: " << report.pairwise.size() << " pairwise experiments, all-family "
              << "accuracy " << report.all_family_accuracy << "\n";
    return 0;
}

int cmd_boost_demo(const BoostDemoArgs& args) {
    std::filesystem::create_directories(args.out_dir);

    Rng rng = derive_rng(args.seed, "boost-demo-pool");
    ml::WeakClassifierPool pool =
        ml::make_weak_pool(args.pool_size, args.sample_count, 0.51, 0.52, rng);

    std::vector<ml::BoostDemoCurve> curves;
    for (int l : args.l_values)
        curves.push_back(ml::adaboost_demo(pool, l, args.iterations));

    {
        std::ofstream out(args.out_dir / "boost_demo.csv", std::ios::binary);
        out << "iteration";
        for (int l : args.l_values)
            out << ",acc_L" << l;
        out << '\n';
        for (int i = 0; i < args.iterations; ++i) {
            out << (i + 1);
            for (const auto& curve : curves)
                out << ',' << features::format_double(curve.accuracy[i]);
            out << '\n';
        }
    }

    ordered_json j;
    j["pool_size"] = args.pool_size;
    j["sample_count"] = args.sample_count;
    j["iterations"] = args.iterations;
    j["seed"] = args.seed;
    ordered_json per_l = ordered_json::array();
    for (std::size_t i = 0; i < curves.size(); ++i)
        per_l.push_back(ordered_json{{"L", args.l_values[i]},
                                     {"final_accuracy", curves[i].accuracy.back()},
                                     {"best_accuracy",
                                      *std::max_element(curves[i].accuracy.begin(),
                                                        curves[i].accuracy.end())}});
    j["curves"] = per_l;
    write_json(args.out_dir / "boost_demo.json", j);
    return 0;
}

int cmd_synth(const SynthArgs& args) {
    synth::SynthResult result = synth::write_synthetic_capture(args.spec, args.out_dir);
    std::cout << "synth: wrote " << result.n_conn << " conn, " << result.n_ssl << " ssl, "
              << result.n_x509 << " x509 records under " << args.out_dir.string() << "\n";
    return 0;
}

} // namespace zeekml::cli
