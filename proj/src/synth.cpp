#include "zeekml/synth.hpp"

#include "zeekml/rng.hpp"
#include "zeekml/zeek_log_writer.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>

namespace zeekml::synth {

namespace {

using zeeklog::ConnRecord;
using zeeklog::Proto;
using zeeklog::SslRecord;
using zeeklog::X509Record;
using zeeklog::quantize_seconds;

constexpr double kBaseTs = 1500000000.0; // capture epoch

const char* kFamilies[] = {"Dridex", "Trickbot", "WannaCry", "Zbot"};

std::string uid_for(std::size_t counter) {
    // Zeek-looking connection uid.
    char buf[32];
    std::snprintf(buf, sizeof(buf), "Cs%06zuXy", counter);
    return buf;
}

std::string cert_id_for(std::size_t counter) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "F%08zx", counter);
    return buf;
}

struct AggregatePlan {
    bool malicious = false;
    bool weak_crypto = false;
    bool beacon = false;   // behavior axis (sizes)
    bool periodic = false; // timing axis
    std::string src_ip;
    std::string dst_ip;
    std::optional<std::string> family;
};

struct CertProfile {
    X509Record record;
    std::string host; // CN host name
    bool self_signed = false;
};

} // namespace

SynthCapture generate_capture(const SynthSpec& spec) {
    SynthCapture capture;
    Rng rng = derive_rng(spec.seed, "synth");

    const int total = spec.n_benign + spec.n_malicious;
    std::size_t uid_counter = 0;
    std::size_t cert_counter = 0;
    int family_cursor = 0;

    for (int agg_index = 0; agg_index < total; ++agg_index) {
        AggregatePlan plan;
        plan.malicious = agg_index >= spec.n_benign;

        const double weak_p =
            plan.malicious ? spec.weak_crypto_malicious : 1.0 - spec.weak_crypto_malicious;
        plan.weak_crypto = rng.bernoulli(weak_p);
        // XOR corners: benign = matched axes, malicious = mismatched.
        plan.beacon = plan.malicious ? !plan.weak_crypto : plan.weak_crypto;
        if (rng.bernoulli(spec.corner_noise))
            plan.beacon = !plan.beacon;
        plan.periodic =
            rng.bernoulli(plan.malicious ? spec.periodic_malicious : spec.periodic_benign);

        const int subnet = plan.malicious ? 9 : 1;
        plan.src_ip = "10." + std::to_string(subnet) + "." + std::to_string(agg_index / 250) +
                      "." + std::to_string(agg_index % 250 + 2);
        plan.dst_ip = "93.184." + std::to_string(1 + static_cast<int>(rng.uniform_index(250))) +
                      "." + std::to_string(1 + static_cast<int>(rng.uniform_index(250)));
        if (plan.malicious) {
            capture.infected_ips.insert(plan.src_ip);
            if (spec.assign_families) {
                plan.family = kFamilies[family_cursor % 4];
                capture.family_by_ip[plan.src_ip] = *plan.family;
                ++family_cursor;
            }
        }

        const int n_flows =
            static_cast<int>(rng.uniform_int(spec.min_flows, std::max(spec.min_flows,
                                                                      spec.max_flows)));

        // Certificate profiles for this aggregate (usually one, sometimes a
        // rotation pair; flows reuse them so cert ids repeat across flows).
        const int n_certs = n_flows >= 4 && rng.bernoulli(0.25) ? 2 : 1;
        const double validity_days =
            plan.weak_crypto ? std::max(10.0, rng.normal(90.0, 20.0))
                             : std::max(30.0, rng.normal(365.0, 45.0));
        const uint64_t key_bits = plan.weak_crypto ? (rng.bernoulli(0.15) ? 512 : 1024) : 2048;
        const bool expired = rng.bernoulli(plan.malicious ? spec.expired_cert_malicious
                                                          : spec.expired_cert_benign);

        const double ts0 = quantize_seconds(kBaseTs + rng.uniform_real(0.0, 86400.0));
        std::vector<CertProfile> certs;
        for (int c = 0; c < n_certs; ++c) {
            CertProfile profile;
            profile.host = "host" + std::to_string(agg_index) + (c ? "b" : "") + ".example" +
                           std::to_string(1 + rng.uniform_index(40)) +
                           (rng.bernoulli(0.5) ? ".com" : ".net");
            profile.self_signed = plan.weak_crypto;
            X509Record& cert = profile.record;
            cert.cert_id = cert_id_for(cert_counter++);
            cert.subject = "CN=" + profile.host;
            cert.issuer = profile.self_signed
                              ? cert.subject
                              : "CN=Example Trust CA " + std::to_string(1 + rng.uniform_index(8));
            double not_after = expired ? ts0 - 86400.0
                                       : ts0 + rng.uniform_real(0.3, 0.9) * validity_days * 86400.0;
            cert.not_after = quantize_seconds(not_after);
            cert.not_before = quantize_seconds(not_after - validity_days * 86400.0);
            cert.key_type = "rsa";
            cert.key_length = key_bits;
            cert.exponent = plan.weak_crypto && rng.bernoulli(0.5) ? 3 : 65537;
            if (!profile.self_signed) {
                cert.san_dns.push_back(profile.host);
                if (rng.bernoulli(0.5))
                    cert.san_dns.push_back("www." + profile.host);
            }
            cert.common_name = zeeklog::subject_common_name(cert.subject);
            certs.push_back(std::move(profile));
            capture.x509s.push_back(certs.back().record);
        }

        const bool sni_mismatch =
            plan.malicious && rng.bernoulli(spec.sni_mismatch_malicious);
        const bool ip_literal_sni =
            plan.malicious && rng.bernoulli(spec.ip_literal_sni_malicious);
        const double sni_present_p =
            plan.malicious ? spec.sni_present_malicious : spec.sni_present_benign;
        const double chainless_p =
            plan.malicious ? spec.chainless_ssl_malicious : spec.chainless_ssl_benign;
        const double established_p =
            plan.malicious ? spec.established_malicious : spec.established_benign;
        const double path_error_p =
            plan.malicious ? spec.path_error_malicious : spec.path_error_benign;

        const double period = rng.uniform_real(20.0, 90.0);
        const double aperiodic_mean = rng.uniform_real(20.0, 90.0);

        double ts = ts0;
        for (int flow = 0; flow < n_flows; ++flow) {
            if (flow > 0) {
                double gap = plan.periodic
                                 ? std::max(1.0, period + rng.normal(0.0, period * 0.02))
                                 : 1.0 + rng.exponential(aperiodic_mean);
                ts = quantize_seconds(ts + gap);
            }

            ConnRecord conn;
            conn.ts = ts;
            conn.uid = uid_for(uid_counter++);
            conn.orig_ip = plan.src_ip;
            conn.resp_ip = plan.dst_ip;
            conn.resp_port = 443;
            conn.proto = Proto::tcp;

            double orig_b, resp_b;
            if (plan.beacon) {
                orig_b = std::max(60.0, rng.normal(420.0, 90.0));
                resp_b = std::max(20.0, rng.normal(130.0, 50.0));
            } else {
                orig_b = std::exp(rng.normal(std::log(700.0), 0.5));
                resp_b = std::exp(rng.normal(std::log(12000.0), 0.8));
            }
            // Family texture: volumes and dwell times scale by family, which
            // keeps the timing features out of the family signal.
            double family_scale = 1.0;
            if (plan.family) {
                int fi = static_cast<int>(std::find(std::begin(kFamilies), std::end(kFamilies),
                                                    *plan.family) -
                                          std::begin(kFamilies));
                family_scale = 1.0 + 0.8 * fi;
                resp_b *= family_scale;
                orig_b *= 1.0 + 0.5 * fi;
            }
            conn.orig_bytes = static_cast<uint64_t>(orig_b);
            conn.resp_bytes = static_cast<uint64_t>(resp_b);
            conn.orig_pkts = static_cast<uint64_t>(orig_b / 550.0) + 2;
            conn.resp_pkts = static_cast<uint64_t>(resp_b / 1200.0) + 1;
            conn.duration = quantize_seconds(family_scale *
                                             (plan.beacon ? rng.uniform_real(0.2, 3.0)
                                                          : 0.05 + rng.exponential(25.0)));
            conn.conn_state = rng.bernoulli(established_p)
                                  ? "SF"
                                  : (rng.bernoulli(0.7) ? "S0" : "REJ");

            const bool with_ssl = flow == 0 || rng.bernoulli(spec.ssl_flow_fraction);
            if (!with_ssl) {
                capture.conns.push_back(std::move(conn));
                continue;
            }
            conn.service = "ssl";

            const CertProfile& cert = certs[certs.size() == 2 && flow >= n_flows / 2 ? 1 : 0];
            SslRecord ssl;
            ssl.ts = conn.ts;
            ssl.uid = conn.uid;
            ssl.version = plan.weak_crypto ? (rng.bernoulli(0.5) ? "SSLv3" : "TLSv10")
                                           : "TLSv12";
            ssl.cipher = plan.weak_crypto ? "TLS_RSA_WITH_RC4_128_SHA"
                                          : "TLS_ECDHE_RSA_WITH_AES_128_GCM_SHA256";
            if (rng.bernoulli(sni_present_p)) {
                if (ip_literal_sni)
                    ssl.server_name = "203.0.113." + std::to_string(1 + rng.uniform_index(200));
                else if (sni_mismatch)
                    ssl.server_name = "cdn" + std::to_string(rng.uniform_index(5000)) +
                                      ".weblayer.info";
                else
                    ssl.server_name = cert.host;
            }
            if (!rng.bernoulli(chainless_p)) {
                ssl.cert_chain_ids.push_back(cert.record.cert_id);
                if (!cert.self_signed) {
                    ssl.cert_chain_ids.push_back("Fca" + std::to_string(rng.uniform_index(8)));
                    if (rng.bernoulli(0.5))
                        ssl.cert_chain_ids.push_back("Froot" + std::to_string(rng.uniform_index(3)));
                }
                ssl.subject = cert.record.subject;
                ssl.issuer = cert.record.issuer;
                if (cert.self_signed)
                    ssl.validation_status = "self signed certificate";
                else
                    ssl.validation_status = rng.bernoulli(path_error_p)
                                                ? "unable to get local issuer certificate"
                                                : "ok";
            }
            capture.conns.push_back(std::move(conn));
            capture.ssls.push_back(std::move(ssl));
        }
    }

    // Logs arrive time-ordered on disk.
    std::stable_sort(capture.conns.begin(), capture.conns.end(),
                     [](const ConnRecord& a, const ConnRecord& b) {
                         return a.ts != b.ts ? a.ts < b.ts : a.uid < b.uid;
                     });
    std::stable_sort(capture.ssls.begin(), capture.ssls.end(),
                     [](const SslRecord& a, const SslRecord& b) {
                         return a.ts != b.ts ? a.ts < b.ts : a.uid < b.uid;
                     });
    return capture;
}

SynthResult write_synthetic_capture(const SynthSpec& spec,
                                    const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    SynthCapture capture = generate_capture(spec);

    SynthResult result;
    result.conn_path = out_dir / "conn.log";
    result.ssl_path = out_dir / "ssl.log";
    result.x509_path = out_dir / "x509.log";
    result.manifest_path = out_dir / "manifest.json";
    result.metadata_path = out_dir / "synth_meta.json";
    result.n_conn = capture.conns.size();
    result.n_ssl = capture.ssls.size();
    result.n_x509 = capture.x509s.size();

    zeeklog::write_conn_log_file(result.conn_path.string(), capture.conns);
    zeeklog::write_ssl_log_file(result.ssl_path.string(), capture.ssls);
    zeeklog::write_x509_log_file(result.x509_path.string(), capture.x509s);

    nlohmann::ordered_json manifest;
    nlohmann::ordered_json cap;
    cap["name"] = "synthetic";
    cap["conn"] = "conn.log";
    cap["ssl"] = "ssl.log";
    cap["x509"] = "x509.log";
    cap["infected_ips"] = capture.infected_ips;
    if (!capture.family_by_ip.empty())
        cap["families"] = capture.family_by_ip;
    manifest["captures"] = nlohmann::ordered_json::array({cap});
    {
        std::ofstream out(result.manifest_path, std::ios::binary);
        out << manifest.dump(2) << '\n';
    }

    nlohmann::ordered_json meta;
    meta["seed"] = spec.seed;
    meta["n_benign"] = spec.n_benign;
    meta["n_malicious"] = spec.n_malicious;
    meta["flows_per_aggregate"] = {spec.min_flows, spec.max_flows};
    meta["effects"] = {
        {"weak_crypto_malicious", spec.weak_crypto_malicious},
        {"weak_crypto_benign", 1.0 - spec.weak_crypto_malicious},
        {"corner_noise", spec.corner_noise},
        {"periodic_malicious", spec.periodic_malicious},
        {"periodic_benign", spec.periodic_benign},
        {"path_error_malicious", spec.path_error_malicious},
        {"path_error_benign", spec.path_error_benign},
        {"established_malicious", spec.established_malicious},
        {"established_benign", spec.established_benign},
        {"sni_present_malicious", spec.sni_present_malicious},
        {"sni_present_benign", spec.sni_present_benign},
        {"expired_cert_malicious", spec.expired_cert_malicious},
        {"expired_cert_benign", spec.expired_cert_benign},
        {"sni_mismatch_malicious", spec.sni_mismatch_malicious},
        {"ip_literal_sni_malicious", spec.ip_literal_sni_malicious},
        {"chainless_ssl_malicious", spec.chainless_ssl_malicious},
        {"chainless_ssl_benign", spec.chainless_ssl_benign},
    };
    {
        std::ofstream out(result.metadata_path, std::ios::binary);
        out << meta.dump(2) << '\n';
    }
    return result;
}

} // namespace zeekml::synth
