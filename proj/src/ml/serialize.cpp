#include "zeekml/ml/serialize.hpp"

#include <fstream>

namespace zeekml::ml {

using nlohmann::json;
using nlohmann::ordered_json;

ordered_json to_json(const TrainConfig& config) {
    return ordered_json{
        {"seed", config.seed},
        {"n_estimators", config.n_estimators},
        {"max_depth", config.max_depth},
        {"min_samples_split", config.min_samples_split},
        {"feature_bag_size", config.feature_bag_size},
        {"feature_bag_mode",
         config.feature_bag_mode == FeatureBagMode::per_split ? "per_split" : "per_tree"},
        {"bootstrap", config.bootstrap},
        {"split_criterion",
         config.split_criterion == SplitCriterion::entropy ? "entropy" : "gini"},
        {"learning_rate", config.learning_rate},
        {"l2_leaf_reg", config.l2_leaf_reg},
        {"svm_c", config.svm_c},
        {"svm_epochs", config.svm_epochs},
        {"svm_step_schedule", config.svm_step_schedule},
        {"tie_predict_malicious", config.tie_predict_malicious},
    };
}

TrainConfig train_config_from_json(const json& j) {
    TrainConfig c;
    c.seed = j.value("seed", c.seed);
    c.n_estimators = j.value("n_estimators", c.n_estimators);
    c.max_depth = j.value("max_depth", c.max_depth);
    c.min_samples_split = j.value("min_samples_split", c.min_samples_split);
    c.feature_bag_size = j.value("feature_bag_size", c.feature_bag_size);
    c.feature_bag_mode = j.value("feature_bag_mode", "per_split") == std::string("per_tree")
                             ? FeatureBagMode::per_tree
                             : FeatureBagMode::per_split;
    c.bootstrap = j.value("bootstrap", c.bootstrap);
    c.split_criterion = j.value("split_criterion", "entropy") == std::string("gini")
                            ? SplitCriterion::gini
                            : SplitCriterion::entropy;
    c.learning_rate = j.value("learning_rate", c.learning_rate);
    c.l2_leaf_reg = j.value("l2_leaf_reg", c.l2_leaf_reg);
    c.svm_c = j.value("svm_c", c.svm_c);
    c.svm_epochs = j.value("svm_epochs", c.svm_epochs);
    c.svm_step_schedule = j.value("svm_step_schedule", c.svm_step_schedule);
    c.tie_predict_malicious = j.value("tie_predict_malicious", c.tie_predict_malicious);
    return c;
}

ordered_json to_json(const TreeModel& tree) {
    ordered_json nodes = ordered_json::array();
    for (const TreeNode& n : tree.nodes) {
        // Compact row: [feature, threshold, left, right, value, gain, n, probs]
        ordered_json row = ordered_json::array(
            {n.feature, n.threshold, n.left, n.right, n.value, n.gain, n.n_samples});
        if (!n.probs.empty())
            row.push_back(n.probs);
        nodes.push_back(std::move(row));
    }
    return ordered_json{
        {"n_classes", tree.n_classes}, {"n_features", tree.n_features}, {"nodes", nodes}};
}

TreeModel tree_from_json(const json& j) {
    TreeModel tree;
    tree.n_classes = j.at("n_classes").get<int>();
    tree.n_features = j.at("n_features").get<std::size_t>();
    for (const auto& row : j.at("nodes")) {
        TreeNode n;
        n.feature = row.at(0).get<int>();
        n.threshold = row.at(1).get<double>();
        n.left = row.at(2).get<int>();
        n.right = row.at(3).get<int>();
        n.value = row.at(4).get<double>();
        n.gain = row.at(5).get<double>();
        n.n_samples = row.at(6).get<std::size_t>();
        if (row.size() > 7)
            n.probs = row.at(7).get<std::vector<double>>();
        tree.nodes.push_back(std::move(n));
    }
    return tree;
}

namespace {

ordered_json scaler_to_json(const features::ScalerParams& scaler) {
    std::vector<int> constant(scaler.constant.begin(), scaler.constant.end());
    return ordered_json{{"mean", scaler.mean}, {"sd", scaler.sd}, {"constant", constant}};
}

features::ScalerParams scaler_from_json(const json& j) {
    features::ScalerParams scaler;
    scaler.mean = j.at("mean").get<std::vector<double>>();
    scaler.sd = j.at("sd").get<std::vector<double>>();
    auto constant = j.at("constant").get<std::vector<int>>();
    scaler.constant.assign(constant.begin(), constant.end());
    return scaler;
}

} // namespace

ordered_json model_to_json(const Model& model) {
    ordered_json j;
    j["format_version"] = kModelFormatVersion;
    j["kind"] = model_kind_name(model.kind());
    if (const auto* forest = dynamic_cast<const ForestClassifier*>(&model)) {
        j["config"] = to_json(forest->model.config);
        j["n_classes"] = forest->model.n_classes;
        j["n_features"] = forest->model.n_features;
        if (forest->model.oob_accuracy)
            j["oob_accuracy"] = *forest->model.oob_accuracy;
        ordered_json trees = ordered_json::array();
        for (const TreeModel& t : forest->model.trees)
            trees.push_back(to_json(t));
        j["trees"] = std::move(trees);
        j["tree_feature_subsets"] = forest->model.tree_feature_subsets;
    } else if (const auto* boosted = dynamic_cast<const BoostedClassifier*>(&model)) {
        j["config"] = to_json(boosted->model.config);
        j["n_features"] = boosted->model.n_features;
        j["base_score"] = boosted->model.base_score;
        j["learning_rate"] = boosted->model.learning_rate;
        ordered_json trees = ordered_json::array();
        for (const TreeModel& t : boosted->model.trees)
            trees.push_back(to_json(t));
        j["trees"] = std::move(trees);
    } else if (const auto* svm = dynamic_cast<const SvmClassifier*>(&model)) {
        j["config"] = to_json(svm->model.config);
        j["weights"] = svm->model.weights;
        j["bias"] = svm->model.bias;
        j["trained_on_scaled"] = svm->model.trained_on_scaled;
        j["scaler"] = scaler_to_json(svm->scaler);
    } else {
        throw std::invalid_argument("unserializable model type");
    }
    return j;
}

std::unique_ptr<Model> model_from_json(const json& j) {
    if (j.at("format_version").get<int>() != kModelFormatVersion)
        throw std::runtime_error("unsupported model format version");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "forest") {
        auto out = std::make_unique<ForestClassifier>();
        out->model.config = train_config_from_json(j.at("config"));
        out->model.n_classes = j.at("n_classes").get<int>();
        out->model.n_features = j.at("n_features").get<std::size_t>();
        if (j.contains("oob_accuracy"))
            out->model.oob_accuracy = j.at("oob_accuracy").get<double>();
        for (const auto& t : j.at("trees"))
            out->model.trees.push_back(tree_from_json(t));
        out->model.tree_feature_subsets =
            j.at("tree_feature_subsets").get<std::vector<std::vector<int>>>();
        return out;
    }
    if (kind == "boosting") {
        auto out = std::make_unique<BoostedClassifier>();
        out->model.config = train_config_from_json(j.at("config"));
        out->model.n_features = j.at("n_features").get<std::size_t>();
        out->model.base_score = j.at("base_score").get<double>();
        out->model.learning_rate = j.at("learning_rate").get<double>();
        for (const auto& t : j.at("trees"))
            out->model.trees.push_back(tree_from_json(t));
        return out;
    }
    if (kind == "svm") {
        auto out = std::make_unique<SvmClassifier>();
        out->model.config = train_config_from_json(j.at("config"));
        out->model.weights = j.at("weights").get<std::vector<double>>();
        out->model.bias = j.at("bias").get<double>();
        out->model.trained_on_scaled = j.at("trained_on_scaled").get<bool>();
        out->scaler = scaler_from_json(j.at("scaler"));
        return out;
    }
    throw std::runtime_error("unknown model kind: " + kind);
}

void save_model(const std::string& path, const Model& model) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open for writing: " + path);
    out << model_to_json(model).dump(2) << '\n';
}

std::unique_ptr<Model> load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open model: " + path);
    json j = json::parse(in);
    return model_from_json(j);
}

} // namespace zeekml::ml
