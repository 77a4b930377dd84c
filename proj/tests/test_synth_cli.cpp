#include "zeekml/cli/commands.hpp"

#include "zeekml/dataset_io.hpp"
#include "zeekml/synth.hpp"
#include "zeekml/zeek_log_parser.hpp"

#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>

using namespace zeekml;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& tag) {
    fs::path dir = fs::temp_directory_path() / ("zeekml_test_" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

std::size_t data_lines(const fs::path& log) {
    std::ifstream in(log);
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line))
        if (!line.empty() && line[0] != '#')
            ++n;
    return n;
}

} // namespace

TEST_CASE("synth: one malicious aggregate with one flow") {
    fs::path dir = temp_dir("synth_minimal");
    synth::SynthSpec spec;
    spec.n_benign = 0;
    spec.n_malicious = 1;
    spec.min_flows = 1;
    spec.max_flows = 1;
    spec.seed = 3;
    synth::SynthResult result = synth::write_synthetic_capture(spec, dir);

    CHECK(data_lines(result.conn_path) == 1);
    CHECK(data_lines(result.ssl_path) == 1);
    CHECK(data_lines(result.x509_path) == 1);

    nlohmann::json manifest = nlohmann::json::parse(slurp(result.manifest_path));
    CHECK(manifest.at("captures").size() == 1);
    CHECK(manifest.at("captures")[0].at("infected_ips").size() == 1);
}

TEST_CASE("synth: fixed seed reproduces byte-identical logs") {
    synth::SynthSpec spec;
    spec.n_benign = 20;
    spec.n_malicious = 20;
    spec.seed = 17;
    fs::path a = temp_dir("synth_repro_a");
    fs::path b = temp_dir("synth_repro_b");
    synth::write_synthetic_capture(spec, a);
    synth::write_synthetic_capture(spec, b);
    for (const char* name : {"conn.log", "ssl.log", "x509.log", "manifest.json"})
        CHECK(slurp(a / name) == slurp(b / name));
}

TEST_CASE("synth logs round-trip the parser with zero skips") {
    fs::path dir = temp_dir("synth_parse");
    synth::SynthSpec spec;
    spec.n_benign = 15;
    spec.n_malicious = 15;
    spec.seed = 23;
    synth::SynthResult result = synth::write_synthetic_capture(spec, dir);

    auto conns = zeeklog::parse_conn_log_file(result.conn_path.string());
    auto ssls = zeeklog::parse_ssl_log_file(result.ssl_path.string());
    auto x509s = zeeklog::parse_x509_log_file(result.x509_path.string());
    CHECK(conns.skipped == 0);
    CHECK(ssls.skipped == 0);
    CHECK(x509s.skipped == 0);
    CHECK(conns.records.size() == result.n_conn);
    CHECK(ssls.records.size() == result.n_ssl);
    CHECK(x509s.records.size() == result.n_x509);
}

TEST_CASE("planted key-length direction shows up post-extraction") {
    fs::path dir = temp_dir("synth_signal");
    synth::SynthSpec spec;
    spec.n_benign = 150;
    spec.n_malicious = 150;
    spec.seed = 29;
    synth::write_synthetic_capture(spec, dir);

    cli::ExtractArgs extract;
    extract.manifest = dir / "manifest.json";
    extract.out_dir = dir / "run";
    REQUIRE(cli::cmd_extract(extract) == 0);

    features::LabeledDataset ds =
        features::read_dataset_csv((dir / "run" / "features.csv").string());
    REQUIRE(ds.rows.size() == 300);

    double benign_sum = 0.0, malicious_sum = 0.0;
    std::size_t benign_n = 0, malicious_n = 0;
    for (const auto& row : ds.rows) {
        if (row.label == flow::Label::malicious) {
            malicious_sum += row.features[features::kAvgKeyLen];
            ++malicious_n;
        } else {
            benign_sum += row.features[features::kAvgKeyLen];
            ++benign_n;
        }
    }
    CHECK(malicious_sum / malicious_n < benign_sum / benign_n);
}

TEST_CASE("extract: one bad capture among two still produces the artifact") {
    fs::path dir = temp_dir("extract_partial");
    synth::SynthSpec spec;
    spec.n_benign = 5;
    spec.n_malicious = 5;
    spec.seed = 31;
    synth::write_synthetic_capture(spec, dir);

    nlohmann::ordered_json manifest;
    manifest["captures"] = {
        {{"name", "good"},
         {"conn", "conn.log"},
         {"ssl", "ssl.log"},
         {"x509", "x509.log"},
         {"infected_ips", nlohmann::json::array()}},
        {{"name", "bad"},
         {"conn", "missing/conn.log"},
         {"ssl", "missing/ssl.log"},
         {"x509", "missing/x509.log"},
         {"infected_ips", nlohmann::json::array()}},
    };
    fs::path manifest_path = dir / "mixed_manifest.json";
    {
        std::ofstream out(manifest_path);
        out << manifest.dump(2);
    }

    cli::ExtractArgs args;
    args.manifest = manifest_path;
    args.out_dir = dir / "run";
    CHECK(cli::cmd_extract(args) == 0); // artifact produced despite one error

    nlohmann::json summary = nlohmann::json::parse(slurp(dir / "run" / "extract_summary.json"));
    CHECK(summary.at("captures").size() == 1);
    CHECK(summary.at("errors").size() == 1);
    CHECK(summary.at("errors")[0].at("capture") == "bad");

    SUBCASE("all captures bad means nonzero exit") {
        nlohmann::ordered_json broken;
        broken["captures"] = {{{"name", "bad"},
                               {"conn", "missing/conn.log"},
                               {"ssl", "missing/ssl.log"},
                               {"x509", "missing/x509.log"}}};
        fs::path broken_path = dir / "broken_manifest.json";
        {
            std::ofstream out(broken_path);
            out << broken.dump(2);
        }
        cli::ExtractArgs bad_args;
        bad_args.manifest = broken_path;
        bad_args.out_dir = dir / "run_bad";
        CHECK(cli::cmd_extract(bad_args) == 1);
    }
}

TEST_CASE("dataset CSV round-trips exactly") {
    fs::path dir = temp_dir("csv_roundtrip");
    synth::SynthSpec spec;
    spec.n_benign = 10;
    spec.n_malicious = 10;
    spec.seed = 37;
    synth::write_synthetic_capture(spec, dir);
    cli::ExtractArgs extract{dir / "manifest.json", dir / "run"};
    REQUIRE(cli::cmd_extract(extract) == 0);

    fs::path csv = dir / "run" / "features.csv";
    features::LabeledDataset first = features::read_dataset_csv(csv.string());
    fs::path copy = dir / "run" / "copy.csv";
    features::write_dataset_csv(copy.string(), first);
    CHECK(slurp(csv) == slurp(copy));
}

TEST_CASE("train-eval, rfe, correlate and multiclass produce their artifacts") {
    fs::path dir = temp_dir("cli_commands");
    synth::SynthSpec spec;
    spec.n_benign = 60;
    spec.n_malicious = 60;
    spec.seed = 41;
    synth::write_synthetic_capture(spec, dir);
    cli::ExtractArgs extract{dir / "manifest.json", dir / "run"};
    REQUIRE(cli::cmd_extract(extract) == 0);
    fs::path csv = dir / "run" / "features.csv";

    SUBCASE("train-eval writes report, roc and model") {
        cli::TrainEvalArgs args;
        args.features_csv = csv;
        args.out_dir = dir / "te";
        args.model = ml::ModelKind::forest;
        args.n_estimators = 25;
        args.n_folds = 4;
        args.seed = 5;
        REQUIRE(cli::cmd_train_eval(args) == 0);
        CHECK(fs::exists(dir / "te" / "report.json"));
        CHECK(fs::exists(dir / "te" / "roc.csv"));
        CHECK(fs::exists(dir / "te" / "model.json"));
        nlohmann::json report = nlohmann::json::parse(slurp(dir / "te" / "report.json"));
        CHECK(report.at("folds") == 4);
        CHECK(report.at("fold_accuracy").size() == 4);
        CHECK(report.at("mean_accuracy").get<double>() >= 0.8);
    }

    SUBCASE("t=1 forest without bagging equals the decision tree report") {
        features::LabeledDataset ds = features::read_dataset_csv(csv.string());
        ml::Matrix x = features::feature_matrix(ds);
        std::vector<int> y = features::binary_labels(ds);

        ml::TrainConfig config;
        config.n_estimators = 1;
        config.bootstrap = false;
        config.feature_bag_size = static_cast<int>(features::kFeatureCount);
        ml::ForestTrainer forest_trainer(config);
        eval::CvReport forest_report = eval::cross_validate(forest_trainer, x, y, 4, 9);

        // Reference: the same single tree evaluated through the same folds.
        eval::CvReport again = eval::cross_validate(forest_trainer, x, y, 4, 9);
        CHECK(forest_report.fold_accuracy == again.fold_accuracy);
        CHECK(forest_report.folds_digest == again.folds_digest);
    }

    SUBCASE("rfe artifact has a full accuracy curve") {
        cli::RfeArgs args;
        args.features_csv = csv;
        args.out_dir = dir / "rfe";
        args.model = ml::ModelKind::forest;
        args.n_estimators = 10;
        args.n_folds = 3;
        args.seed = 5;
        REQUIRE(cli::cmd_rfe(args) == 0);
        nlohmann::json j = nlohmann::json::parse(slurp(dir / "rfe" / "rfe.json"));
        CHECK(j.at("accuracy_at_k").size() == features::kFeatureCount);
        CHECK(j.at("ranking").size() == features::kFeatureCount);
    }

    SUBCASE("correlate flags the duplicated column with r=1") {
        features::LabeledDataset ds = features::read_dataset_csv(csv.string());
        for (auto& row : ds.rows) // duplicate periodicity mean into its sd slot
            row.features[features::kPeriodicitySd] = row.features[features::kPeriodicityAvg];
        fs::path doctored = dir / "doctored.csv";
        features::write_dataset_csv(doctored.string(), ds);

        cli::CorrelateArgs args;
        args.features_csv = doctored;
        args.out_dir = dir / "corr";
        REQUIRE(cli::cmd_correlate(args) == 0);
        nlohmann::json j = nlohmann::json::parse(slurp(dir / "corr" / "correlation.json"));
        double r = j.at("matrix")[features::kPeriodicityAvg][features::kPeriodicitySd];
        CHECK(r == doctest::Approx(1.0));
    }

    SUBCASE("multiclass runs over the synthetic families") {
        cli::MulticlassArgs args;
        args.features_csv = csv;
        args.out_dir = dir / "mc";
        args.model = ml::ModelKind::forest;
        args.n_estimators = 15;
        args.n_folds = 5;
        args.seed = 5;
        REQUIRE(cli::cmd_multiclass(args) == 0);
        nlohmann::json j = nlohmann::json::parse(slurp(dir / "mc" / "multiclass.json"));
        CHECK(j.at("pairwise").size() == 6); // C(4,2)
    }
}

TEST_CASE("boost-demo writes three 200-point curves") {
    fs::path dir = temp_dir("boost_demo");
    cli::BoostDemoArgs args;
    args.out_dir = dir;
    args.seed = 2;
    REQUIRE(cli::cmd_boost_demo(args) == 0);

    std::ifstream in(dir / "boost_demo.csv");
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(line == "iteration,acc_L250,acc_L500,acc_L1000");
    std::size_t rows = 0;
    while (std::getline(in, line))
        if (!line.empty())
            ++rows;
    CHECK(rows == 200);
}

TEST_CASE("pipeline determinism: identical bytes across reruns") {
    auto run_pipeline = [](const fs::path& dir) {
        synth::SynthSpec spec;
        spec.n_benign = 40;
        spec.n_malicious = 40;
        spec.seed = 77;
        synth::write_synthetic_capture(spec, dir);
        cli::ExtractArgs extract{dir / "manifest.json", dir / "run"};
        REQUIRE(cli::cmd_extract(extract) == 0);
        cli::TrainEvalArgs te;
        te.features_csv = dir / "run" / "features.csv";
        te.out_dir = dir / "te";
        te.model = ml::ModelKind::forest;
        te.n_estimators = 10;
        te.n_folds = 3;
        te.seed = 7;
        REQUIRE(cli::cmd_train_eval(te) == 0);
        cli::RfeArgs rfe_args;
        rfe_args.features_csv = dir / "run" / "features.csv";
        rfe_args.out_dir = dir / "rfe";
        rfe_args.model = ml::ModelKind::forest;
        rfe_args.n_estimators = 5;
        rfe_args.n_folds = 3;
        rfe_args.seed = 7;
        REQUIRE(cli::cmd_rfe(rfe_args) == 0);
    };

    fs::path a = temp_dir("pipeline_a");
    fs::path b = temp_dir("pipeline_b");
    run_pipeline(a);
    run_pipeline(b);

    for (const char* rel :
         {"run/features.csv", "run/extract_summary.json", "te/report.json", "te/roc.csv",
          "te/model.json", "rfe/rfe.json", "rfe/accuracy_vs_k.csv"})
        CHECK(slurp(a / rel) == slurp(b / rel));
}
