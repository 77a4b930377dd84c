#pragma once

// Randomized fixtures shared across the test suites.

#include "zeekml/flow_assembler.hpp"
#include "zeekml/rng.hpp"
#include "zeekml/zeek_log.hpp"
#include "zeekml/zeek_log_writer.hpp"

#include <string>
#include <vector>

namespace testgen {

using zeekml::Rng;
using zeekml::zeeklog::ConnRecord;
using zeekml::zeeklog::Proto;
using zeekml::zeeklog::quantize_seconds;
using zeekml::zeeklog::SslRecord;
using zeekml::zeeklog::X509Record;

inline std::string token(Rng& rng, const char* prefix) {
    return std::string(prefix) + std::to_string(rng.uniform_index(1000000));
}

inline std::string random_ip(Rng& rng) {
    return std::to_string(1 + rng.uniform_index(223)) + "." +
           std::to_string(rng.uniform_index(256)) + "." +
           std::to_string(rng.uniform_index(256)) + "." +
           std::to_string(1 + rng.uniform_index(254));
}

// Record generators stay within what the writer round-trips exactly: second
// values quantized to 1e-6, marker-free strings, nonempty set elements.
inline ConnRecord random_conn(Rng& rng, std::size_t uid_counter) {
    ConnRecord r;
    r.ts = quantize_seconds(1.5e9 + rng.uniform_real(0.0, 1e6));
    r.uid = "C" + std::to_string(uid_counter) + token(rng, "u");
    r.orig_ip = random_ip(rng);
    r.resp_ip = random_ip(rng);
    r.resp_port = static_cast<uint16_t>(rng.uniform_index(65536));
    r.proto = rng.bernoulli(0.8) ? Proto::tcp : (rng.bernoulli(0.5) ? Proto::udp : Proto::icmp);
    if (rng.bernoulli(0.7))
        r.service = rng.bernoulli(0.5) ? "ssl" : "http";
    if (rng.bernoulli(0.8))
        r.duration = quantize_seconds(rng.uniform_real(0.0, 500.0));
    if (rng.bernoulli(0.85))
        r.orig_bytes = rng.uniform_index(1000000);
    if (rng.bernoulli(0.85))
        r.resp_bytes = rng.uniform_index(1000000);
    const char* states[] = {"SF", "S0", "S1", "REJ", "RSTO", "OTH", ""};
    r.conn_state = states[rng.uniform_index(7)];
    if (rng.bernoulli(0.85))
        r.orig_pkts = rng.uniform_index(5000);
    if (rng.bernoulli(0.85))
        r.resp_pkts = rng.uniform_index(5000);
    return r;
}

inline SslRecord random_ssl(Rng& rng, const std::string& uid) {
    SslRecord r;
    r.ts = quantize_seconds(1.5e9 + rng.uniform_real(0.0, 1e6));
    r.uid = uid;
    if (rng.bernoulli(0.9))
        r.version = rng.bernoulli(0.7) ? "TLSv12" : "SSLv3";
    if (rng.bernoulli(0.8))
        r.cipher = token(rng, "TLS_CIPHER_");
    if (rng.bernoulli(0.7))
        r.server_name = token(rng, "host") + ".example.com";
    if (rng.bernoulli(0.6))
        r.subject = "CN=" + token(rng, "srv") + ".example.org";
    if (rng.bernoulli(0.6))
        r.issuer = "CN=" + token(rng, "ca");
    const std::size_t chain = rng.uniform_index(4);
    for (std::size_t i = 0; i < chain; ++i)
        r.cert_chain_ids.push_back(token(rng, "F"));
    if (rng.bernoulli(0.7))
        r.validation_status = rng.bernoulli(0.6) ? "ok" : "self signed certificate";
    return r;
}

inline X509Record random_x509(Rng& rng, const std::string& cert_id) {
    X509Record r;
    r.cert_id = cert_id;
    double nb = quantize_seconds(1.4e9 + rng.uniform_real(0.0, 1e8));
    if (rng.bernoulli(0.95)) {
        r.not_before = nb;
        r.not_after = quantize_seconds(nb + rng.uniform_real(86400.0, 8e7));
    }
    std::string host = token(rng, "www") + ".example.net";
    r.subject = rng.bernoulli(0.85) ? "CN=" + host : "O=NoCommonName";
    r.issuer = rng.bernoulli(0.3) ? r.subject : "CN=" + token(rng, "ca");
    if (rng.bernoulli(0.8))
        r.key_type = rng.bernoulli(0.8) ? "rsa" : "ecdsa";
    if (rng.bernoulli(0.85))
        r.key_length = 512 + 256 * rng.uniform_index(15);
    if (rng.bernoulli(0.7))
        r.exponent = rng.bernoulli(0.8) ? 65537 : 3;
    const std::size_t sans = rng.uniform_index(4);
    for (std::size_t i = 0; i < sans; ++i)
        r.san_dns.push_back(rng.bernoulli(0.25) ? "*." + host : token(rng, "alt") + ".example.net");
    r.common_name = zeekml::zeeklog::subject_common_name(r.subject);
    return r;
}

// A random but invariant-satisfying aggregate: >=1 SSL flow, shared 4-tuple.
inline zeekml::flow::ConnectionAggregate random_aggregate(Rng& rng) {
    zeekml::flow::ConnectionAggregate agg;
    agg.key.src_ip = random_ip(rng);
    agg.key.dst_ip = random_ip(rng);
    agg.key.dst_port = 443;
    agg.key.proto = Proto::tcp;

    const std::size_t n_flows = 1 + rng.uniform_index(10);
    double ts = quantize_seconds(1.5e9 + rng.uniform_real(0.0, 1e5));
    for (std::size_t i = 0; i < n_flows; ++i) {
        zeekml::flow::JoinedFlow flow;
        flow.conn = random_conn(rng, i);
        flow.conn.orig_ip = agg.key.src_ip;
        flow.conn.resp_ip = agg.key.dst_ip;
        flow.conn.resp_port = agg.key.dst_port;
        flow.conn.proto = agg.key.proto;
        ts = quantize_seconds(ts + rng.uniform_real(0.0, 600.0));
        flow.conn.ts = ts;
        const bool with_ssl = i == 0 || rng.bernoulli(0.7);
        if (with_ssl) {
            flow.ssl = random_ssl(rng, flow.conn.uid);
            flow.ssl->ts = ts;
            if (!flow.ssl->cert_chain_ids.empty() && rng.bernoulli(0.8))
                flow.cert = random_x509(rng, flow.ssl->cert_chain_ids.front());
        }
        agg.flows.push_back(std::move(flow));
    }
    return agg;
}

// Two well-separated Gaussian clusters in `dim` features; label = cluster.
inline void two_cluster_dataset(Rng& rng, std::size_t n, std::size_t dim,
                                std::vector<std::vector<double>>& x, std::vector<int>& y) {
    x.clear();
    y.clear();
    for (std::size_t i = 0; i < n; ++i) {
        int label = rng.bernoulli(0.5) ? 1 : 0;
        std::vector<double> row(dim);
        for (std::size_t j = 0; j < dim; ++j)
            row[j] = rng.normal(label == 1 ? 4.0 : -4.0, 1.0);
        x.push_back(std::move(row));
        y.push_back(label);
    }
}

// One informative feature (index `signal`), everything else pure noise.
inline void planted_signal_dataset(Rng& rng, std::size_t n, std::size_t dim, std::size_t signal,
                                   std::vector<std::vector<double>>& x, std::vector<int>& y) {
    x.clear();
    y.clear();
    for (std::size_t i = 0; i < n; ++i) {
        int label = rng.bernoulli(0.5) ? 1 : 0;
        std::vector<double> row(dim);
        for (std::size_t j = 0; j < dim; ++j)
            row[j] = rng.normal(0.0, 1.0);
        row[signal] += label == 1 ? 3.0 : -3.0;
        x.push_back(std::move(row));
        y.push_back(label);
    }
}

} // namespace testgen
