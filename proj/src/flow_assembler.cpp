#include "zeekml/flow_assembler.hpp"

#include <algorithm>
#include <unordered_map>

namespace zeekml::flow {

std::string_view label_name(Label l) {
    return l == Label::benign ? "benign" : "malicious";
}

std::string ConnKey::to_string() const {
    std::string s = src_ip;
    s += '|';
    s += dst_ip;
    s += '|';
    s += std::to_string(dst_port);
    s += '|';
    s += zeeklog::proto_name(proto);
    return s;
}

ConnKey JoinedFlow::key() const {
    return ConnKey{conn.orig_ip, conn.resp_ip, conn.resp_port, conn.proto};
}

std::vector<JoinedFlow> join_records(std::span<const ConnRecord> conns,
                                     std::span<const SslRecord> ssls,
                                     std::span<const X509Record> x509s) {
    std::unordered_map<std::string, const SslRecord*> ssl_by_uid;
    ssl_by_uid.reserve(ssls.size());
    for (const SslRecord& s : ssls)
        ssl_by_uid.emplace(s.uid, &s); // emplace keeps the first occurrence

    std::unordered_map<std::string, const X509Record*> cert_by_id;
    cert_by_id.reserve(x509s.size());
    for (const X509Record& c : x509s)
        cert_by_id.emplace(c.cert_id, &c);

    std::vector<JoinedFlow> flows;
    flows.reserve(conns.size());
    for (const ConnRecord& c : conns) {
        JoinedFlow flow;
        flow.conn = c;
        auto ssl_it = ssl_by_uid.find(c.uid);
        if (ssl_it != ssl_by_uid.end()) {
            flow.ssl = *ssl_it->second;
            if (!flow.ssl->cert_chain_ids.empty()) {
                auto cert_it = cert_by_id.find(flow.ssl->cert_chain_ids.front());
                if (cert_it != cert_by_id.end())
                    flow.cert = *cert_it->second;
            }
        }
        flows.push_back(std::move(flow));
    }
    return flows;
}

GroupResult group_by_key(std::span<const JoinedFlow> flows) {
    std::map<ConnKey, std::vector<JoinedFlow>> groups;
    for (const JoinedFlow& f : flows)
        groups[f.key()].push_back(f);

    GroupResult result;
    for (auto& [key, members] : groups) {
        bool any_ssl = std::any_of(members.begin(), members.end(),
                                   [](const JoinedFlow& f) { return f.has_ssl(); });
        if (!any_ssl) {
            result.dropped_flows += members.size();
            ++result.dropped_aggregates;
            continue;
        }
        std::sort(members.begin(), members.end(), [](const JoinedFlow& a, const JoinedFlow& b) {
            if (a.conn.ts != b.conn.ts)
                return a.conn.ts < b.conn.ts;
            return a.conn.uid < b.conn.uid;
        });
        ConnectionAggregate agg;
        agg.key = key;
        agg.flows = std::move(members);
        result.aggregates.push_back(std::move(agg));
    }
    return result;
}

void label_aggregates(std::vector<ConnectionAggregate>& aggregates, const LabelSource& source) {
    for (ConnectionAggregate& agg : aggregates) {
        bool infected = source.infected_ips.count(agg.key.src_ip) > 0;
        agg.label = infected ? Label::malicious : Label::benign;
        agg.family.reset();
        if (infected) {
            auto it = source.family_by_ip.find(agg.key.src_ip);
            if (it != source.family_by_ip.end())
                agg.family = it->second;
        }
    }
}

} // namespace zeekml::flow
