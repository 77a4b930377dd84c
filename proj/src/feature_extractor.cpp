#include "zeekml/feature_extractor.hpp"

#include "zeekml/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

namespace zeekml::features {

const std::array<std::string, kFeatureCount>& feature_names() {
    static const std::array<std::string, kFeatureCount> names = {
        "no_of_flows",
        "avg_of_duration",
        "standard_deviation_duration",
        "percent_sd_of_duration",
        "size_of_orig_flows",
        "size_of_resp_flows",
        "ratio_of_sizes",
        "percent_of_established_states",
        "inbound_pckts",
        "outbound_pckts",
        "periodicity_average",
        "periodicity_standard_deviation",
        "ssl_ratio",
        "avg_key_len",
        "tls_version_ratio",
        "avg_of_certificate_len",
        "standard_deviation_cert_len",
        "is_valid_certificate",
        "amount_diff_certificates",
        "no_of_domains_in_cert",
        "no_of_cert_path",
        "x509_ssl_ratio",
        "SNI_ssl_ratio",
        "self_signed_ratio",
        "is_SNIs_in_SAN_dns",
        "is_CNs_in_SAN_dns",
        "differ_SNI_in_ssl_log",
        "differ_subject_in_ssl_log",
        "differ_issuer_in_ssl_log",
        "differ_subject_in_cert",
        "differ_issuer_in_cert",
        "differ_sandns_in_cert",
        "ratio_of_same_subjects",
        "ratio_of_same_issuer",
        "is_same_CN_and_SNI",
        "average_certificate_expo",
        "is_SNI_top_level_domain",
        "ratio_certificate_path_error",
    };
    return names;
}

int feature_index(std::string_view name) {
    const auto& names = feature_names();
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == name)
            return static_cast<int>(i);
    return -1;
}

namespace {

double mean_of(std::span<const double> xs) {
    if (xs.empty())
        return 0.0;
    return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

// Population standard deviation; empty input -> 0.
double pop_sd(std::span<const double> xs) {
    if (xs.size() < 2)
        return 0.0;
    double mu = mean_of(xs);
    double acc = 0.0;
    for (double x : xs)
        acc += (x - mu) * (x - mu);
    return std::sqrt(acc / static_cast<double>(xs.size()));
}

double safe_ratio(double num, double den) {
    return den > 0.0 ? num / den : 0.0;
}

// Absent optional values collapse to one sentinel so that distinct-value
// ratios stay well defined over partially populated records.
const std::string kAbsentSentinel = "\x01<unset>";

std::string value_or_sentinel(const std::optional<std::string>& v) {
    return v ? *v : kAbsentSentinel;
}

// Frequency of the most common value; ties resolved toward the
// lexicographically smallest value. std::map iteration makes that implicit.
std::size_t modal_frequency(const std::map<std::string, std::size_t>& counts) {
    std::size_t best = 0;
    for (const auto& [value, n] : counts)
        if (n > best)
            best = n;
    return best;
}

bool established_state(const std::string& conn_state) {
    // Zeek codes where the TCP handshake completed.
    static const std::set<std::string> established = {"SF", "S1", "S2", "S3", "RSTO", "RSTR"};
    return established.count(conn_state) > 0;
}

bool name_in_san(const std::string& name, const std::vector<std::string>& san_dns) {
    return std::any_of(san_dns.begin(), san_dns.end(),
                       [&](const std::string& entry) { return wildcard_match(name, entry); });
}

bool plausible_tld(const std::string& sni) {
    std::size_t dot = sni.rfind('.');
    std::string_view last = dot == std::string::npos
                                ? std::string_view(sni)
                                : std::string_view(sni).substr(dot + 1);
    if (last.size() < 2)
        return false;
    return std::all_of(last.begin(), last.end(), [](unsigned char c) { return std::isalpha(c); });
}

} // namespace

bool wildcard_match(std::string_view name, std::string_view pattern) {
    if (pattern.rfind("*.", 0) != 0)
        return name == pattern;
    std::string_view suffix = pattern.substr(1); // ".example.com"
    if (name.size() <= suffix.size())
        return false;
    if (name.substr(name.size() - suffix.size()) != suffix)
        return false;
    std::string_view label = name.substr(0, name.size() - suffix.size());
    return !label.empty() && label.find('.') == std::string_view::npos;
}

std::pair<double, double> compute_periodicity(std::span<const double> start_times) {
    if (start_times.size() < 2)
        return {0.0, 0.0};
    std::vector<double> gaps;
    gaps.reserve(start_times.size() - 1);
    for (std::size_t i = 1; i < start_times.size(); ++i)
        gaps.push_back(start_times[i] - start_times[i - 1]);
    return {mean_of(gaps), pop_sd(gaps)};
}

FeatureVector extract_features(const flow::ConnectionAggregate& agg) {
    FeatureVector f;
    const auto& flows = agg.flows;
    const double n_flows = static_cast<double>(flows.size());

    // conn.log side -----------------------------------------------------

    std::vector<double> durations;
    std::vector<double> start_times;
    double orig_bytes = 0.0, resp_bytes = 0.0;
    double orig_pkts = 0.0, resp_pkts = 0.0;
    std::size_t established = 0;
    for (const auto& flow : flows) {
        start_times.push_back(flow.conn.ts);
        if (flow.conn.duration)
            durations.push_back(*flow.conn.duration);
        orig_bytes += static_cast<double>(flow.conn.orig_bytes.value_or(0));
        resp_bytes += static_cast<double>(flow.conn.resp_bytes.value_or(0));
        orig_pkts += static_cast<double>(flow.conn.orig_pkts.value_or(0));
        resp_pkts += static_cast<double>(flow.conn.resp_pkts.value_or(0));
        if (established_state(flow.conn.conn_state))
            ++established;
    }
    std::sort(start_times.begin(), start_times.end());

    f[kNoOfFlows] = n_flows;
    f[kAvgDuration] = mean_of(durations);
    f[kSdDuration] = pop_sd(durations);
    {
        // Fraction of flows whose duration leaves the +-1 sigma band.
        double mu = f[kAvgDuration];
        double sd = f[kSdDuration];
        std::size_t outside = 0;
        for (double d : durations)
            if (std::abs(d - mu) > sd)
                ++outside;
        f[kPercentSdDuration] = safe_ratio(static_cast<double>(outside),
                                           static_cast<double>(durations.size()));
    }
    f[kSizeOrigFlows] = orig_bytes;
    f[kSizeRespFlows] = resp_bytes;
    f[kRatioOfSizes] = safe_ratio(resp_bytes, orig_bytes + resp_bytes);
    f[kPercentEstablished] = safe_ratio(static_cast<double>(established), n_flows);
    f[kInboundPckts] = resp_pkts;
    f[kOutboundPckts] = orig_pkts;
    auto [gap_mean, gap_sd] = compute_periodicity(start_times);
    f[kPeriodicityAvg] = gap_mean;
    f[kPeriodicitySd] = gap_sd;

    // ssl.log side ------------------------------------------------------

    std::size_t n_ssl = 0, sni_present = 0, tls_version = 0, nonempty_chain = 0;
    std::size_t path_error = 0;
    double chain_len_total = 0.0;
    std::map<std::string, std::size_t> sni_counts, ssl_subject_counts, ssl_issuer_counts;
    for (const auto& flow : flows) {
        if (!flow.ssl)
            continue;
        ++n_ssl;
        const auto& ssl = *flow.ssl;
        if (ssl.server_name)
            ++sni_present;
        if (ssl.version && ssl.version->rfind("TLS", 0) == 0)
            ++tls_version;
        if (!ssl.cert_chain_ids.empty())
            ++nonempty_chain;
        chain_len_total += static_cast<double>(ssl.cert_chain_ids.size());
        if (ssl.validation_status && *ssl.validation_status != "ok")
            ++path_error;
        sni_counts[value_or_sentinel(ssl.server_name)]++;
        ssl_subject_counts[value_or_sentinel(ssl.subject)]++;
        ssl_issuer_counts[value_or_sentinel(ssl.issuer)]++;
    }
    const double n_ssl_d = static_cast<double>(n_ssl);

    f[kSslRatio] = safe_ratio(n_ssl_d, n_flows);
    f[kTlsVersionRatio] = safe_ratio(static_cast<double>(tls_version), n_ssl_d);
    f[kNoOfCertPath] = safe_ratio(chain_len_total, n_ssl_d);
    f[kX509SslRatio] = safe_ratio(static_cast<double>(nonempty_chain), n_ssl_d);
    f[kSniSslRatio] = safe_ratio(static_cast<double>(sni_present), n_ssl_d);
    f[kRatioCertPathError] = safe_ratio(static_cast<double>(path_error), n_ssl_d);
    f[kDifferSniInSsl] = safe_ratio(static_cast<double>(sni_counts.size()), n_ssl_d);
    f[kDifferSubjectInSsl] = safe_ratio(static_cast<double>(ssl_subject_counts.size()), n_ssl_d);
    f[kDifferIssuerInSsl] = safe_ratio(static_cast<double>(ssl_issuer_counts.size()), n_ssl_d);
    f[kRatioSameSubjects] =
        safe_ratio(static_cast<double>(modal_frequency(ssl_subject_counts)), n_ssl_d);
    f[kRatioSameIssuer] =
        safe_ratio(static_cast<double>(modal_frequency(ssl_issuer_counts)), n_ssl_d);

    // x509 side: statistics run over flow-attached end-user certificates,
    // one observation per flow that carries one.
    std::vector<double> key_lengths, validity_days, exponents, san_counts;
    std::size_t n_certs = 0, self_signed = 0;
    bool any_cert = false, all_time_valid = true;
    std::set<std::string> distinct_cert_ids, cert_subjects, cert_issuers, cert_san_sets;
    bool any_sni_pair = false, all_sni_in_san = true;
    bool any_cn = false, all_cn_in_san = true;
    bool any_cn_sni_pair = false, all_cn_match_sni = true;
    for (const auto& flow : flows) {
        if (!flow.cert)
            continue;
        const auto& cert = *flow.cert;
        any_cert = true;
        ++n_certs;
        distinct_cert_ids.insert(cert.cert_id);
        cert_subjects.insert(cert.subject);
        cert_issuers.insert(cert.issuer);
        {
            std::vector<std::string> sorted_san = cert.san_dns;
            std::sort(sorted_san.begin(), sorted_san.end());
            std::string joined;
            for (const auto& s : sorted_san) {
                joined += s;
                joined += '\n';
            }
            cert_san_sets.insert(joined);
        }
        if (cert.key_length)
            key_lengths.push_back(static_cast<double>(*cert.key_length));
        if (cert.not_before && cert.not_after)
            validity_days.push_back((*cert.not_after - *cert.not_before) / 86400.0);
        if (cert.exponent)
            exponents.push_back(static_cast<double>(*cert.exponent));
        san_counts.push_back(static_cast<double>(cert.san_dns.size()));
        if (cert.subject == cert.issuer)
            ++self_signed;
        if (cert.not_before && cert.not_after) {
            if (flow.conn.ts < *cert.not_before || flow.conn.ts > *cert.not_after)
                all_time_valid = false;
        }
        const auto& sni = flow.ssl ? flow.ssl->server_name : std::nullopt;
        if (sni) {
            any_sni_pair = true;
            if (!name_in_san(*sni, cert.san_dns))
                all_sni_in_san = false;
        }
        if (cert.common_name) {
            any_cn = true;
            if (!name_in_san(*cert.common_name, cert.san_dns))
                all_cn_in_san = false;
            if (sni) {
                any_cn_sni_pair = true;
                if (!wildcard_match(*sni, *cert.common_name))
                    all_cn_match_sni = false;
            }
        }
    }
    const double n_certs_d = static_cast<double>(n_certs);

    f[kAvgKeyLen] = mean_of(key_lengths);
    f[kAvgCertLen] = mean_of(validity_days);
    f[kSdCertLen] = pop_sd(validity_days);
    f[kIsValidCertificate] = (any_cert && all_time_valid) ? 1.0 : 0.0;
    f[kAmountDiffCertificates] = static_cast<double>(distinct_cert_ids.size());
    f[kNoOfDomainsInCert] = mean_of(san_counts);
    f[kSelfSignedRatio] = safe_ratio(static_cast<double>(self_signed), n_certs_d);
    f[kIsSnisInSanDns] = (any_sni_pair && all_sni_in_san) ? 1.0 : 0.0;
    f[kIsCnsInSanDns] = (any_cn && all_cn_in_san) ? 1.0 : 0.0;
    f[kDifferSubjectInCert] = safe_ratio(static_cast<double>(cert_subjects.size()), n_certs_d);
    f[kDifferIssuerInCert] = safe_ratio(static_cast<double>(cert_issuers.size()), n_certs_d);
    f[kDifferSandnsInCert] = safe_ratio(static_cast<double>(cert_san_sets.size()), n_certs_d);
    f[kIsSameCnAndSni] = (any_cn_sni_pair && all_cn_match_sni) ? 1.0 : 0.0;
    f[kAvgCertificateExpo] = mean_of(exponents);
    {
        std::size_t sni_tld = 0;
        std::size_t sni_total = 0;
        for (const auto& flow : flows) {
            if (flow.ssl && flow.ssl->server_name) {
                ++sni_total;
                if (plausible_tld(*flow.ssl->server_name))
                    ++sni_tld;
            }
        }
        f[kIsSniTopLevelDomain] = (sni_total > 0 && sni_tld == sni_total) ? 1.0 : 0.0;
    }

    for (double v : f.values) {
        if (!std::isfinite(v))
            throw std::logic_error("non-finite feature value");
    }
    return f;
}

LabeledDataset make_dataset(std::span<const flow::ConnectionAggregate> aggregates) {
    LabeledDataset ds;
    ds.names.assign(feature_names().begin(), feature_names().end());
    ds.rows.reserve(aggregates.size());
    for (const auto& agg : aggregates) {
        DatasetRow row;
        row.features = extract_features(agg);
        row.label = agg.label.value_or(flow::Label::benign);
        row.family = agg.family;
        row.key = agg.key.to_string();
        ds.rows.push_back(std::move(row));
    }
    return ds;
}

ScalerParams fit_scaler(std::span<const std::vector<double>> train_rows) {
    if (train_rows.empty())
        throw EmptyTrainingSet("fit_scaler needs at least one row");
    const std::size_t dim = train_rows.front().size();
    ScalerParams params;
    params.mean.assign(dim, 0.0);
    params.sd.assign(dim, 0.0);
    params.constant.assign(dim, false);
    const double n = static_cast<double>(train_rows.size());
    for (const auto& row : train_rows)
        for (std::size_t j = 0; j < dim; ++j)
            params.mean[j] += row[j];
    for (std::size_t j = 0; j < dim; ++j)
        params.mean[j] /= n;
    for (const auto& row : train_rows)
        for (std::size_t j = 0; j < dim; ++j) {
            double d = row[j] - params.mean[j];
            params.sd[j] += d * d;
        }
    for (std::size_t j = 0; j < dim; ++j) {
        params.sd[j] = std::sqrt(params.sd[j] / n);
        if (params.sd[j] == 0.0)
            params.constant[j] = true;
    }
    return params;
}

std::vector<double> apply_scaler(const ScalerParams& params, std::span<const double> row) {
    std::vector<double> out(row.size());
    for (std::size_t j = 0; j < row.size(); ++j)
        out[j] = params.constant[j] ? 0.0 : (row[j] - params.mean[j]) / params.sd[j];
    return out;
}

std::vector<std::vector<double>> apply_scaler(const ScalerParams& params,
                                              std::span<const std::vector<double>> rows) {
    std::vector<std::vector<double>> out;
    out.reserve(rows.size());
    for (const auto& row : rows)
        out.push_back(apply_scaler(params, row));
    return out;
}

} // namespace zeekml::features
