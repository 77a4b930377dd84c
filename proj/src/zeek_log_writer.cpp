#include "zeekml/zeek_log_writer.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace zeekml::zeeklog {

std::string format_seconds(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

double quantize_seconds(double v) {
    return std::round(v * 1e6) / 1e6;
}

namespace {

constexpr char kSep = '\t';

void check_text(const std::string& s) {
    if (s.find_first_of("\t\n\r,") != std::string::npos)
        throw std::invalid_argument("string field contains separator byte: " + s);
    if (s == "-" || s == "(empty)")
        throw std::invalid_argument("string field collides with a marker: " + s);
}

std::string text_cell(const std::string& s) {
    if (s.empty())
        return "(empty)";
    check_text(s);
    return s;
}

std::string opt_text_cell(const std::optional<std::string>& s) {
    return s ? text_cell(*s) : "-";
}

std::string opt_real_cell(const std::optional<double>& v) {
    return v ? format_seconds(*v) : "-";
}

std::string opt_count_cell(const std::optional<uint64_t>& v) {
    return v ? std::to_string(*v) : "-";
}

std::string set_cell(const std::vector<std::string>& v) {
    if (v.empty())
        return "(empty)";
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i].empty())
            throw std::invalid_argument("set element may not be empty");
        check_text(v[i]);
        if (i)
            out += ',';
        out += v[i];
    }
    return out;
}

void write_preamble(std::ostream& out, std::string_view path, std::string_view fields,
                    std::string_view types) {
    out << "#separator \\x09\n";
    out << "#set_separator\t,\n";
    out << "#empty_field\t(empty)\n";
    out << "#unset_field\t-\n";
    out << "#path\t" << path << "\n";
    out << "#fields\t" << fields << "\n";
    out << "#types\t" << types << "\n";
}

template <typename T>
void join_row(std::ostream& out, const T& cells) {
    bool first = true;
    for (const std::string& c : cells) {
        if (!first)
            out << kSep;
        out << c;
        first = false;
    }
    out << '\n';
}

} // namespace

void write_conn_log(std::ostream& out, std::span<const ConnRecord> records) {
    write_preamble(out, "conn",
                   "ts\tuid\tid.orig_h\tid.orig_p\tid.resp_h\tid.resp_p\tproto\tservice\t"
                   "duration\torig_bytes\tresp_bytes\tconn_state\tlocal_orig\tlocal_resp\t"
                   "missed_bytes\thistory\torig_pkts\torig_ip_bytes\tresp_pkts\tresp_ip_bytes\t"
                   "tunnel_parents",
                   "time\tstring\taddr\tport\taddr\tport\tenum\tstring\tinterval\tcount\tcount\t"
                   "string\tbool\tbool\tcount\tstring\tcount\tcount\tcount\tcount\tset[string]");
    for (const ConnRecord& r : records) {
        std::vector<std::string> cells = {
            format_seconds(r.ts),
            text_cell(r.uid),
            text_cell(r.orig_ip),
            "-",
            text_cell(r.resp_ip),
            std::to_string(r.resp_port),
            std::string(proto_name(r.proto)),
            opt_text_cell(r.service),
            opt_real_cell(r.duration),
            opt_count_cell(r.orig_bytes),
            opt_count_cell(r.resp_bytes),
            r.conn_state.empty() ? std::string("-") : text_cell(r.conn_state),
            "-",
            "-",
            "-",
            "-",
            opt_count_cell(r.orig_pkts),
            "-",
            opt_count_cell(r.resp_pkts),
            "-",
            "-",
        };
        join_row(out, cells);
    }
}

void write_ssl_log(std::ostream& out, std::span<const SslRecord> records) {
    write_preamble(out, "ssl",
                   "ts\tuid\tversion\tcipher\tserver_name\tresumed\testablished\t"
                   "cert_chain_fuids\tsubject\tissuer\tvalidation_status",
                   "time\tstring\tstring\tstring\tstring\tbool\tbool\tvector[string]\tstring\t"
                   "string\tstring");
    for (const SslRecord& r : records) {
        std::vector<std::string> cells = {
            format_seconds(r.ts),
            text_cell(r.uid),
            opt_text_cell(r.version),
            opt_text_cell(r.cipher),
            opt_text_cell(r.server_name),
            "-",
            "-",
            set_cell(r.cert_chain_ids),
            opt_text_cell(r.subject),
            opt_text_cell(r.issuer),
            opt_text_cell(r.validation_status),
        };
        join_row(out, cells);
    }
}

void write_x509_log(std::ostream& out, std::span<const X509Record> records) {
    write_preamble(out, "x509",
                   "ts\tid\tcertificate.version\tcertificate.serial\tcertificate.subject\t"
                   "certificate.issuer\tcertificate.not_valid_before\tcertificate.not_valid_after\t"
                   "certificate.key_alg\tcertificate.sig_alg\tcertificate.key_type\t"
                   "certificate.key_length\tcertificate.exponent\tcertificate.curve\tsan.dns\t"
                   "basic_constraints.ca",
                   "time\tstring\tcount\tstring\tstring\tstring\ttime\ttime\tstring\tstring\t"
                   "string\tcount\tcount\tstring\tvector[string]\tbool");
    for (const X509Record& r : records) {
        std::vector<std::string> cells = {
            "-",
            text_cell(r.cert_id),
            "-",
            "-",
            r.subject.empty() ? std::string("(empty)") : text_cell(r.subject),
            r.issuer.empty() ? std::string("(empty)") : text_cell(r.issuer),
            opt_real_cell(r.not_before),
            opt_real_cell(r.not_after),
            "-",
            "-",
            opt_text_cell(r.key_type),
            opt_count_cell(r.key_length),
            opt_count_cell(r.exponent),
            "-",
            set_cell(r.san_dns),
            "-",
        };
        join_row(out, cells);
    }
}

namespace {

template <typename Record>
void write_to_path(const std::string& path, std::span<const Record> records,
                   void (*writer)(std::ostream&, std::span<const Record>)) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open for writing: " + path);
    writer(out, records);
}

} // namespace

void write_conn_log_file(const std::string& path, std::span<const ConnRecord> records) {
    write_to_path<ConnRecord>(path, records, &write_conn_log);
}

void write_ssl_log_file(const std::string& path, std::span<const SslRecord> records) {
    write_to_path<SslRecord>(path, records, &write_ssl_log);
}

void write_x509_log_file(const std::string& path, std::span<const X509Record> records) {
    write_to_path<X509Record>(path, records, &write_x509_log);
}

} // namespace zeekml::zeeklog
