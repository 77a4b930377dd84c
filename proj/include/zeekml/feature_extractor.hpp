#pragma once

#include "zeekml/flow_assembler.hpp"

#include <array>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace zeekml::features {

inline constexpr std::size_t kFeatureCount = 38;

// Column order is fixed; exported CSV/JSONL headers use exactly these names.
const std::array<std::string, kFeatureCount>& feature_names();
int feature_index(std::string_view name); // -1 if unknown

// Indexes (0-based) for the features referenced around the codebase.
inline constexpr int kNoOfFlows = 0;
inline constexpr int kAvgDuration = 1;
inline constexpr int kSdDuration = 2;
inline constexpr int kPercentSdDuration = 3;
inline constexpr int kSizeOrigFlows = 4;
inline constexpr int kSizeRespFlows = 5;
inline constexpr int kRatioOfSizes = 6;
inline constexpr int kPercentEstablished = 7;
inline constexpr int kInboundPckts = 8;
inline constexpr int kOutboundPckts = 9;
inline constexpr int kPeriodicityAvg = 10;
inline constexpr int kPeriodicitySd = 11;
inline constexpr int kSslRatio = 12;
inline constexpr int kAvgKeyLen = 13;
inline constexpr int kTlsVersionRatio = 14;
inline constexpr int kAvgCertLen = 15;
inline constexpr int kSdCertLen = 16;
inline constexpr int kIsValidCertificate = 17;
inline constexpr int kAmountDiffCertificates = 18;
inline constexpr int kNoOfDomainsInCert = 19;
inline constexpr int kNoOfCertPath = 20;
inline constexpr int kX509SslRatio = 21;
inline constexpr int kSniSslRatio = 22;
inline constexpr int kSelfSignedRatio = 23;
inline constexpr int kIsSnisInSanDns = 24;
inline constexpr int kIsCnsInSanDns = 25;
inline constexpr int kDifferSniInSsl = 26;
inline constexpr int kDifferSubjectInSsl = 27;
inline constexpr int kDifferIssuerInSsl = 28;
inline constexpr int kDifferSubjectInCert = 29;
inline constexpr int kDifferIssuerInCert = 30;
inline constexpr int kDifferSandnsInCert = 31;
inline constexpr int kRatioSameSubjects = 32;
inline constexpr int kRatioSameIssuer = 33;
inline constexpr int kIsSameCnAndSni = 34;
inline constexpr int kAvgCertificateExpo = 35;
inline constexpr int kIsSniTopLevelDomain = 36;
inline constexpr int kRatioCertPathError = 37;

struct FeatureVector {
    std::array<double, kFeatureCount> values{};

    double operator[](std::size_t i) const { return values[i]; }
    double& operator[](std::size_t i) { return values[i]; }
};

// Computes all 38 features of one aggregate. Degenerate inputs fall back to
// documented defaults; the output is always finite, ratios stay in [0,1] and
// boolean features in {0,1}.
FeatureVector extract_features(const flow::ConnectionAggregate& agg);

// Mean and population standard deviation of consecutive first differences of
// the given (ascending) start times. Fewer than two timestamps -> (0, 0).
std::pair<double, double> compute_periodicity(std::span<const double> start_times);

// Single-label wildcard match: "*.example.com" covers "a.example.com" but not
// "a.b.example.com" nor "example.com". Non-wildcard patterns match exactly.
bool wildcard_match(std::string_view name, std::string_view pattern);

struct DatasetRow {
    FeatureVector features;
    flow::Label label = flow::Label::benign;
    std::optional<std::string> family;
    std::string key; // provenance: 4-tuple string of the aggregate
};

struct LabeledDataset {
    std::vector<DatasetRow> rows;
    std::vector<std::string> names; // always the 38 names, fixed order
};

LabeledDataset make_dataset(std::span<const flow::ConnectionAggregate> aggregates);

// Per-feature standardization, fit on training rows only. Constant columns
// (sd == 0) are flagged and pass through as 0 when applied.
struct ScalerParams {
    std::vector<double> mean;
    std::vector<double> sd;
    std::vector<bool> constant;
};

ScalerParams fit_scaler(std::span<const std::vector<double>> train_rows);
std::vector<double> apply_scaler(const ScalerParams& params, std::span<const double> row);
std::vector<std::vector<double>> apply_scaler(const ScalerParams& params,
                                              std::span<const std::vector<double>> rows);

} // namespace zeekml::features
