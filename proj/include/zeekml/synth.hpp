#pragma once

#include "zeekml/flow_assembler.hpp"

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace zeekml::synth {

// Desk-scale stand-in for the multi-gigabyte public capture corpora: writes a
// well-formed conn/ssl/x509 log triple with planted, documented signal.
//
// Signal layout. Two latent per-aggregate axes drive the discriminative
// structure:
//   crypto   weak (short keys, short validity, self-signed, no SAN) vs strong
//   behavior beacon (tiny responses) vs interactive (bulky responses)
// The label is the XOR of the two axes plus corner_noise: benign traffic is
// strong+interactive or weak+beacon (legacy self-hosted telemetry), malware
// is weak+interactive or strong+beacon. Marginally the axes are nearly
// class-neutral (the weak-crypto rate differs by class so malware has shorter
// keys on average), which keeps linear models well behind the tree ensembles.
// Mild per-class shifts are added on validation failures, established states,
// SNI presence, expiry and timing regularity. Key length and certificate
// validity ride the same crypto axis, so they correlate strongly with each
// other while the timing features stay nearly uncorrelated with everything.
struct SynthSpec {
    int n_benign = 1000;
    int n_malicious = 1000;
    int min_flows = 3;
    int max_flows = 12;
    double ssl_flow_fraction = 0.85; // at least one SSL flow is forced

    // Effect-size knobs (all documented in the emitted metadata file).
    double weak_crypto_malicious = 0.6; // benign gets 1 - this
    double corner_noise = 0.03;         // XOR label noise
    double periodic_malicious = 0.62;   // P(regular timing | malicious)
    double periodic_benign = 0.38;
    double path_error_malicious = 0.30; // CA-signed validation failure rate
    double path_error_benign = 0.05;
    double established_malicious = 0.80;
    double established_benign = 0.95;
    double sni_present_malicious = 0.70;
    double sni_present_benign = 0.95;
    double expired_cert_malicious = 0.10;
    double expired_cert_benign = 0.01;
    double sni_mismatch_malicious = 0.25; // SNI unrelated to certificate CN
    double ip_literal_sni_malicious = 0.15;
    double chainless_ssl_malicious = 0.25; // SSL record without cert chain
    double chainless_ssl_benign = 0.10;

    bool assign_families = true; // cycle Dridex/Trickbot/WannaCry/Zbot
    uint64_t seed = 1;
};

struct SynthCapture {
    std::vector<zeeklog::ConnRecord> conns;
    std::vector<zeeklog::SslRecord> ssls;
    std::vector<zeeklog::X509Record> x509s; // unique by cert id
    std::set<std::string> infected_ips;
    std::map<std::string, std::string> family_by_ip;
};

// In-memory generation; deterministic in the spec seed.
SynthCapture generate_capture(const SynthSpec& spec);

struct SynthResult {
    std::filesystem::path conn_path;
    std::filesystem::path ssl_path;
    std::filesystem::path x509_path;
    std::filesystem::path manifest_path;
    std::filesystem::path metadata_path;
    std::size_t n_conn = 0;
    std::size_t n_ssl = 0;
    std::size_t n_x509 = 0;
};

// Writes the log triple plus manifest.json and synth_meta.json into out_dir.
SynthResult write_synthetic_capture(const SynthSpec& spec,
                                    const std::filesystem::path& out_dir);

} // namespace zeekml::synth
