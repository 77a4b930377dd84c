#include "zeekml/flow_assembler.hpp"

#include "support/generators.hpp"

#include <doctest.h>

#include <algorithm>

using namespace zeekml;
using namespace zeekml::flow;

namespace {

ConnRecord make_conn(const std::string& uid, const std::string& src, const std::string& dst,
                     uint16_t port, double ts) {
    ConnRecord c;
    c.ts = ts;
    c.uid = uid;
    c.orig_ip = src;
    c.resp_ip = dst;
    c.resp_port = port;
    c.proto = Proto::tcp;
    c.conn_state = "SF";
    return c;
}

SslRecord make_ssl(const std::string& uid, std::vector<std::string> chain) {
    SslRecord s;
    s.ts = 1.0;
    s.uid = uid;
    s.cert_chain_ids = std::move(chain);
    return s;
}

X509Record make_cert(const std::string& id) {
    X509Record x;
    x.cert_id = id;
    x.subject = "CN=host.example.com";
    x.issuer = "CN=ca";
    return x;
}

} // namespace

TEST_CASE("join_records: complete link, missing ssl, dangling cert") {
    std::vector<ConnRecord> conns = {make_conn("C1", "10.0.0.1", "1.2.3.4", 443, 1.0),
                                     make_conn("C2", "10.0.0.1", "1.2.3.4", 443, 2.0),
                                     make_conn("C3", "10.0.0.1", "1.2.3.4", 443, 3.0)};
    std::vector<SslRecord> ssls = {make_ssl("C1", {"F1"}), make_ssl("C3", {"F9"})};
    std::vector<X509Record> certs = {make_cert("F1")};

    auto flows = join_records(conns, ssls, certs);
    REQUIRE(flows.size() == 3);

    CHECK(flows[0].ssl.has_value());
    CHECK(flows[0].cert.has_value());
    CHECK(flows[0].cert->cert_id == "F1");

    CHECK(!flows[1].ssl.has_value());
    CHECK(!flows[1].cert.has_value());

    CHECK(flows[2].ssl.has_value()); // dangling F9: ssl kept, cert absent
    CHECK(!flows[2].cert.has_value());
}

TEST_CASE("join_records: duplicate ssl uid resolves to first occurrence") {
    std::vector<ConnRecord> conns = {make_conn("C1", "10.0.0.1", "1.2.3.4", 443, 1.0)};
    SslRecord first = make_ssl("C1", {});
    first.server_name = "first.example.com";
    SslRecord second = make_ssl("C1", {});
    second.server_name = "second.example.com";
    std::vector<SslRecord> ssls = {first, second};

    auto flows = join_records(conns, ssls, {});
    REQUIRE(flows.size() == 1);
    CHECK(*flows[0].ssl->server_name == "first.example.com");
}

TEST_CASE("group_by_key: same tuple collapses, different port separates") {
    std::vector<ConnRecord> conns = {make_conn("C1", "10.0.0.1", "1.2.3.4", 443, 3.0),
                                     make_conn("C2", "10.0.0.1", "1.2.3.4", 443, 1.0),
                                     make_conn("C3", "10.0.0.1", "1.2.3.4", 443, 2.0)};
    std::vector<SslRecord> ssls = {make_ssl("C2", {})};
    auto flows = join_records(conns, ssls, {});

    SUBCASE("three flows, one ssl -> one aggregate of three") {
        auto grouped = group_by_key(flows);
        REQUIRE(grouped.aggregates.size() == 1);
        CHECK(grouped.aggregates[0].flows.size() == 3);
        CHECK(grouped.dropped_flows == 0);
        // flows ordered by ts
        CHECK(grouped.aggregates[0].flows[0].conn.uid == "C2");
        CHECK(grouped.aggregates[0].flows[2].conn.uid == "C1");
    }

    SUBCASE("differing dst_port splits the aggregate") {
        std::vector<ConnRecord> two_ports = {make_conn("C1", "10.0.0.1", "1.2.3.4", 443, 1.0),
                                             make_conn("C2", "10.0.0.1", "1.2.3.4", 8443, 2.0)};
        std::vector<SslRecord> both = {make_ssl("C1", {}), make_ssl("C2", {})};
        auto grouped = group_by_key(join_records(two_ports, both, {}));
        CHECK(grouped.aggregates.size() == 2);
    }
}

TEST_CASE("group_by_key: non-SSL groups dropped and counted") {
    // Five distinct keys; keys 4 and 5 carry no ssl records at all.
    std::vector<ConnRecord> conns;
    std::vector<SslRecord> ssls;
    int uid = 0;
    for (int key = 0; key < 5; ++key) {
        const std::string dst = "1.2.3." + std::to_string(key + 1);
        for (int i = 0; i < 2 + key % 2; ++i) {
            std::string u = "C" + std::to_string(uid++);
            conns.push_back(make_conn(u, "10.0.0.1", dst, 443, uid));
            if (key < 3 && i == 0)
                ssls.push_back(make_ssl(u, {}));
        }
    }
    // Hand count: keys 0..4 have 2,3,2,3,2 flows; keys 3 and 4 are all-non-SSL.
    auto grouped = group_by_key(join_records(conns, ssls, {}));
    CHECK(grouped.aggregates.size() == 3);
    CHECK(grouped.dropped_aggregates == 2);
    CHECK(grouped.dropped_flows == 5);

    // Partition invariant.
    std::size_t kept = 0;
    for (const auto& agg : grouped.aggregates)
        kept += agg.flows.size();
    CHECK(kept + grouped.dropped_flows == conns.size());
}

TEST_CASE("label_aggregates: infected source IP rule") {
    std::vector<ConnRecord> conns = {make_conn("C1", "10.9.0.5", "1.2.3.4", 443, 1.0),
                                     make_conn("C2", "10.1.0.7", "1.2.3.4", 443, 2.0)};
    std::vector<SslRecord> ssls = {make_ssl("C1", {}), make_ssl("C2", {})};
    auto grouped = group_by_key(join_records(conns, ssls, {}));
    REQUIRE(grouped.aggregates.size() == 2);

    LabelSource source;
    source.infected_ips = {"10.9.0.5"};
    source.family_by_ip = {{"10.9.0.5", "Dridex"}};
    label_aggregates(grouped.aggregates, source);

    for (const auto& agg : grouped.aggregates) {
        if (agg.key.src_ip == "10.9.0.5") {
            CHECK(agg.label == Label::malicious);
            CHECK(*agg.family == "Dridex");
        } else {
            CHECK(agg.label == Label::benign);
            CHECK(!agg.family.has_value());
        }
    }
}

TEST_CASE("determinism: input order does not matter") {
    Rng rng = derive_rng(99, "assembler-determinism");
    std::vector<ConnRecord> conns;
    std::vector<SslRecord> ssls;
    for (int i = 0; i < 60; ++i) {
        std::string uid = "C" + std::to_string(i);
        std::string dst = "1.2.3." + std::to_string(1 + i % 7);
        conns.push_back(make_conn(uid, "10.0.0.1", dst, 443, 1000.0 + i));
        if (rng.bernoulli(0.6))
            ssls.push_back(make_ssl(uid, {}));
    }

    auto grouped_a = group_by_key(join_records(conns, ssls, {}));

    std::vector<ConnRecord> shuffled = conns;
    rng.shuffle(shuffled);
    auto grouped_b = group_by_key(join_records(shuffled, ssls, {}));

    REQUIRE(grouped_a.aggregates.size() == grouped_b.aggregates.size());
    for (std::size_t i = 0; i < grouped_a.aggregates.size(); ++i) {
        CHECK(grouped_a.aggregates[i].key == grouped_b.aggregates[i].key);
        REQUIRE(grouped_a.aggregates[i].flows.size() == grouped_b.aggregates[i].flows.size());
        for (std::size_t k = 0; k < grouped_a.aggregates[i].flows.size(); ++k)
            CHECK(grouped_a.aggregates[i].flows[k].conn.uid ==
                  grouped_b.aggregates[i].flows[k].conn.uid);
    }
}

TEST_CASE("key closure: every member flow reconstructs its aggregate key") {
    Rng rng = derive_rng(123, "assembler-closure");
    for (int iter = 0; iter < 20; ++iter) {
        auto agg = testgen::random_aggregate(rng);
        for (const auto& flow : agg.flows)
            CHECK(flow.key() == agg.key);
    }
}
