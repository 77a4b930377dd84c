#include "zeekml/dataset_io.hpp"

#include "zeekml/errors.hpp"

#include <json.hpp>

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace zeekml::features {

std::vector<std::vector<double>> feature_matrix(const LabeledDataset& ds) {
    std::vector<std::vector<double>> m;
    m.reserve(ds.rows.size());
    for (const auto& row : ds.rows)
        m.emplace_back(row.features.values.begin(), row.features.values.end());
    return m;
}

std::vector<int> binary_labels(const LabeledDataset& ds) {
    std::vector<int> y;
    y.reserve(ds.rows.size());
    for (const auto& row : ds.rows)
        y.push_back(row.label == flow::Label::malicious ? 1 : 0);
    return y;
}

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

double parse_double(const std::string& s) {
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size() || s.empty())
        throw TypeDecodeError("bad numeric cell: " + s);
    return v;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (true) {
        std::size_t end = line.find(',', pos);
        if (end == std::string::npos) {
            out.push_back(line.substr(pos));
            break;
        }
        out.push_back(line.substr(pos, end - pos));
        pos = end + 1;
    }
    return out;
}

} // namespace

void write_dataset_csv(const std::string& path, const LabeledDataset& ds) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open for writing: " + path);
    for (const auto& name : ds.names)
        out << name << ',';
    out << "label,family,key\n";
    for (const auto& row : ds.rows) {
        for (double v : row.features.values)
            out << format_double(v) << ',';
        out << flow::label_name(row.label) << ',' << row.family.value_or("") << ','
            << row.key << '\n';
    }
}

LabeledDataset read_dataset_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open dataset: " + path);
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("empty dataset file: " + path);
    std::vector<std::string> header = split_csv_line(line);
    if (header.size() != kFeatureCount + 3)
        throw DimensionMismatch("dataset header has " + std::to_string(header.size()) +
                                " columns, expected " + std::to_string(kFeatureCount + 3));
    for (std::size_t i = 0; i < kFeatureCount; ++i)
        if (header[i] != feature_names()[i])
            throw DimensionMismatch("unexpected feature column: " + header[i]);

    LabeledDataset ds;
    ds.names.assign(feature_names().begin(), feature_names().end());
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        std::vector<std::string> cells = split_csv_line(line);
        if (cells.size() != kFeatureCount + 3)
            throw DimensionMismatch("dataset row has wrong column count");
        DatasetRow row;
        for (std::size_t i = 0; i < kFeatureCount; ++i)
            row.features[i] = parse_double(cells[i]);
        const std::string& label = cells[kFeatureCount];
        if (label == "malicious")
            row.label = flow::Label::malicious;
        else if (label == "benign")
            row.label = flow::Label::benign;
        else
            throw TypeDecodeError("unknown label: " + label);
        if (!cells[kFeatureCount + 1].empty())
            row.family = cells[kFeatureCount + 1];
        row.key = cells[kFeatureCount + 2];
        ds.rows.push_back(std::move(row));
    }
    return ds;
}

void write_dataset_jsonl(const std::string& path, const LabeledDataset& ds) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open for writing: " + path);
    for (const auto& row : ds.rows) {
        nlohmann::ordered_json j;
        for (std::size_t i = 0; i < kFeatureCount; ++i)
            j[ds.names[i]] = row.features[i];
        j["label"] = flow::label_name(row.label);
        if (row.family)
            j["family"] = *row.family;
        j["key"] = row.key;
        out << j.dump() << '\n';
    }
}

} // namespace zeekml::features
