#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace zeekml::zeeklog {

enum class LogKind { conn, ssl, x509 };

std::string_view log_kind_name(LogKind kind);

enum class Proto { tcp, udp, icmp };

std::string_view proto_name(Proto p);
std::optional<Proto> proto_from_string(std::string_view s);

// Preamble of a Zeek TSV log: `#separator`, `#fields`, `#types` and friends.
struct LogHeader {
    char separator = '\t';
    std::vector<std::string> fields;
    std::vector<std::string> types;
    std::string unset_marker = "-";
    std::string empty_marker = "(empty)";
    std::string set_separator = ",";
    std::optional<std::string> path; // value of #path when present

    // Index of the column with the given name, or -1.
    int column_index(std::string_view name) const;
};

struct ConnRecord {
    double ts = 0.0; // fractional seconds since epoch, as on disk
    std::string uid;
    std::string orig_ip;
    std::string resp_ip;
    uint16_t resp_port = 0;
    Proto proto = Proto::tcp;
    std::optional<std::string> service;
    std::optional<double> duration;
    std::optional<uint64_t> orig_bytes;
    std::optional<uint64_t> resp_bytes;
    std::string conn_state;
    std::optional<uint64_t> orig_pkts;
    std::optional<uint64_t> resp_pkts;

    bool operator==(const ConnRecord&) const = default;
};

struct SslRecord {
    double ts = 0.0;
    std::string uid;
    std::optional<std::string> version;
    std::optional<std::string> cipher;
    std::optional<std::string> server_name; // SNI
    std::optional<std::string> subject;
    std::optional<std::string> issuer;
    std::vector<std::string> cert_chain_ids; // cert_chain_fuids, file order
    std::optional<std::string> validation_status;

    bool operator==(const SslRecord&) const = default;
};

struct X509Record {
    std::string cert_id; // the `id` column
    std::optional<double> not_before;
    std::optional<double> not_after;
    std::string subject;
    std::string issuer;
    std::optional<std::string> key_type;
    std::optional<uint64_t> key_length; // bits
    std::optional<uint64_t> exponent;
    std::vector<std::string> san_dns;
    std::optional<std::string> common_name; // CN component of subject

    bool operator==(const X509Record&) const = default;
};

// Extracts the CN= component from a distinguished-name string such as
// "CN=example.com,OU=Ops,O=Example". Returns nullopt when no CN is present.
std::optional<std::string> subject_common_name(const std::string& subject);

} // namespace zeekml::zeeklog
