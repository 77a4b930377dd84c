#pragma once

#include "zeekml/zeek_log.hpp"

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace zeekml::flow {

using zeeklog::ConnRecord;
using zeeklog::Proto;
using zeeklog::SslRecord;
using zeeklog::X509Record;

enum class Label { benign, malicious };

std::string_view label_name(Label l);

// The 4-tuple used to group flows into connection aggregates.
struct ConnKey {
    std::string src_ip;
    std::string dst_ip;
    uint16_t dst_port = 0;
    Proto proto = Proto::tcp;

    auto operator<=>(const ConnKey&) const = default;

    std::string to_string() const;
};

// One conn.log record linked to its ssl.log record (by uid) and the first
// certificate of that SSL record's chain.
struct JoinedFlow {
    ConnRecord conn;
    std::optional<SslRecord> ssl;
    std::optional<X509Record> cert;

    bool has_ssl() const { return ssl.has_value(); }
    ConnKey key() const;
};

struct ConnectionAggregate {
    ConnKey key;
    std::vector<JoinedFlow> flows; // sorted by (conn.ts, conn.uid)
    std::optional<Label> label;
    std::optional<std::string> family;
};

struct LabelSource {
    std::set<std::string> infected_ips;
    std::map<std::string, std::string> family_by_ip; // keys must be infected
};

// Joins the three record streams of one capture. Every conn record yields one
// JoinedFlow; duplicate ssl uids resolve to the first occurrence; dangling
// cert ids leave cert absent.
std::vector<JoinedFlow> join_records(std::span<const ConnRecord> conns,
                                     std::span<const SslRecord> ssls,
                                     std::span<const X509Record> x509s);

struct GroupResult {
    std::vector<ConnectionAggregate> aggregates; // sorted by key
    std::size_t dropped_flows = 0;               // flows in all-non-SSL groups
    std::size_t dropped_aggregates = 0;          // groups with zero SSL flows
};

// Groups flows by 4-tuple. Aggregates need at least one SSL flow; groups
// without any are dropped and counted. Within an aggregate flows are ordered
// by timestamp, ties broken by uid.
GroupResult group_by_key(std::span<const JoinedFlow> flows);

// label = malicious iff key.src_ip is infected; family attached when mapped.
void label_aggregates(std::vector<ConnectionAggregate>& aggregates, const LabelSource& source);

} // namespace zeekml::flow
