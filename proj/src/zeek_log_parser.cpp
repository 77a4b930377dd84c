#include "zeekml/zeek_log_parser.hpp"

#include "zeekml/errors.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace zeekml::zeeklog {

std::string_view log_kind_name(LogKind kind) {
    switch (kind) {
    case LogKind::conn: return "conn";
    case LogKind::ssl: return "ssl";
    case LogKind::x509: return "x509";
    }
    return "?";
}

std::string_view proto_name(Proto p) {
    switch (p) {
    case Proto::tcp: return "tcp";
    case Proto::udp: return "udp";
    case Proto::icmp: return "icmp";
    }
    return "?";
}

std::optional<Proto> proto_from_string(std::string_view s) {
    if (s == "tcp")
        return Proto::tcp;
    if (s == "udp")
        return Proto::udp;
    if (s == "icmp")
        return Proto::icmp;
    return std::nullopt;
}

int LogHeader::column_index(std::string_view name) const {
    for (std::size_t i = 0; i < fields.size(); ++i)
        if (fields[i] == name)
            return static_cast<int>(i);
    return -1;
}

std::optional<std::string> subject_common_name(const std::string& subject) {
    std::size_t pos = 0;
    while (pos < subject.size()) {
        std::size_t end = subject.find(',', pos);
        if (end == std::string::npos)
            end = subject.size();
        std::string_view comp(subject.data() + pos, end - pos);
        while (!comp.empty() && comp.front() == ' ')
            comp.remove_prefix(1);
        if (comp.size() > 3 && comp.substr(0, 3) == "CN=")
            return std::string(comp.substr(3));
        pos = end + 1;
    }
    return std::nullopt;
}

namespace {

std::vector<std::string> split_on(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (true) {
        std::size_t end = s.find(sep, pos);
        if (end == std::string::npos) {
            out.push_back(s.substr(pos));
            break;
        }
        out.push_back(s.substr(pos, end - pos));
        pos = end + 1;
    }
    return out;
}

// `#separator \x09` uses a space and may quote the separator as \xHH.
char decode_separator(const std::string& value) {
    if (value.size() == 1)
        return value[0];
    if (value.size() == 4 && value[0] == '\\' && value[1] == 'x') {
        auto hex = [](char c) -> int {
            if (c >= '0' && c <= '9')
                return c - '0';
            if (c >= 'a' && c <= 'f')
                return c - 'a' + 10;
            if (c >= 'A' && c <= 'F')
                return c - 'A' + 10;
            return -1;
        };
        int hi = hex(value[2]);
        int lo = hex(value[3]);
        if (hi >= 0 && lo >= 0)
            return static_cast<char>(hi * 16 + lo);
    }
    throw MissingDirective("unrecognized #separator value: " + value);
}

} // namespace

LogHeader parse_header(std::span<const std::string> lines, std::size_t* consumed) {
    LogHeader header;
    bool saw_separator = false;
    bool saw_fields = false;
    bool saw_types = false;
    std::size_t used = 0;

    for (const std::string& line : lines) {
        if (line.empty() || line[0] != '#')
            break;
        ++used;
        if (line.rfind("#separator", 0) == 0) {
            std::size_t space = line.find(' ');
            if (space == std::string::npos)
                throw MissingDirective("#separator has no value");
            header.separator = decode_separator(line.substr(space + 1));
            saw_separator = true;
            continue;
        }
        std::vector<std::string> parts = split_on(line, header.separator);
        const std::string& directive = parts[0];
        if (directive == "#set_separator" && parts.size() > 1) {
            header.set_separator = parts[1];
        } else if (directive == "#empty_field" && parts.size() > 1) {
            header.empty_marker = parts[1];
        } else if (directive == "#unset_field" && parts.size() > 1) {
            header.unset_marker = parts[1];
        } else if (directive == "#path" && parts.size() > 1) {
            header.path = parts[1];
        } else if (directive == "#fields") {
            header.fields.assign(parts.begin() + 1, parts.end());
            saw_fields = true;
        } else if (directive == "#types") {
            header.types.assign(parts.begin() + 1, parts.end());
            saw_types = true;
        }
        // #open, #close and unknown directives vary across Zeek versions;
        // they are tolerated and ignored.
    }

    if (!saw_separator)
        throw MissingDirective("missing #separator directive");
    if (!saw_fields)
        throw MissingDirective("missing #fields directive");
    if (!saw_types)
        throw MissingDirective("missing #types directive");
    if (header.fields.size() != header.types.size())
        throw ArityMismatch("#fields has " + std::to_string(header.fields.size()) +
                            " columns but #types has " + std::to_string(header.types.size()));
    if (consumed)
        *consumed = used;
    return header;
}

std::vector<std::string> split_line(const std::string& line, const LogHeader& header) {
    std::vector<std::string> cells = split_on(line, header.separator);
    if (cells.size() != header.fields.size())
        throw ColumnCountMismatch("expected " + std::to_string(header.fields.size()) +
                                  " columns, got " + std::to_string(cells.size()));
    return cells;
}

bool cell_is_unset(const std::string& cell, const LogHeader& header) {
    return cell == header.unset_marker;
}

std::optional<double> decode_real(const std::string& cell, const LogHeader& header) {
    if (cell_is_unset(cell, header))
        return std::nullopt;
    errno = 0;
    char* end = nullptr;
    double v = std::strtod(cell.c_str(), &end);
    if (end != cell.c_str() + cell.size() || cell.empty() || errno == ERANGE)
        throw TypeDecodeError("bad real value: " + cell);
    return v;
}

std::optional<uint64_t> decode_count(const std::string& cell, const LogHeader& header) {
    if (cell_is_unset(cell, header))
        return std::nullopt;
    if (cell.empty() || cell.find_first_not_of("0123456789") != std::string::npos)
        throw TypeDecodeError("bad count value: " + cell);
    errno = 0;
    char* end = nullptr;
    unsigned long long v = std::strtoull(cell.c_str(), &end, 10);
    if (end != cell.c_str() + cell.size() || errno == ERANGE)
        throw TypeDecodeError("bad count value: " + cell);
    return static_cast<uint64_t>(v);
}

std::optional<std::string> decode_string(const std::string& cell, const LogHeader& header) {
    if (cell_is_unset(cell, header))
        return std::nullopt;
    if (cell == header.empty_marker)
        return std::string();
    return cell;
}

std::vector<std::string> decode_string_vector(const std::string& cell, const LogHeader& header) {
    if (cell_is_unset(cell, header) || cell == header.empty_marker)
        return {};
    if (header.set_separator.empty())
        return {cell};
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (true) {
        std::size_t end = cell.find(header.set_separator, pos);
        if (end == std::string::npos) {
            out.push_back(cell.substr(pos));
            break;
        }
        out.push_back(cell.substr(pos, end - pos));
        pos = end + header.set_separator.size();
    }
    return out;
}

namespace {

// Column accessor bound to one header; returns unset for missing columns so
// the parser stays tolerant of Zeek version drift.
struct Row {
    const std::vector<std::string>& cells;
    const LogHeader& header;

    const std::string* cell(std::string_view name) const {
        int idx = header.column_index(name);
        if (idx < 0)
            return nullptr;
        return &cells[static_cast<std::size_t>(idx)];
    }

    std::string required_string(std::string_view name) const {
        const std::string* c = cell(name);
        if (!c)
            throw MissingColumn("required column missing: " + std::string(name));
        auto v = decode_string(*c, header);
        if (!v || v->empty())
            throw TypeDecodeError("required column unset or empty: " + std::string(name));
        return *v;
    }

    double required_time(std::string_view name) const {
        const std::string* c = cell(name);
        if (!c)
            throw MissingColumn("required column missing: " + std::string(name));
        auto v = decode_real(*c, header);
        if (!v)
            throw TypeDecodeError("required column unset: " + std::string(name));
        return *v;
    }

    std::optional<double> opt_real(std::string_view name) const {
        const std::string* c = cell(name);
        return c ? decode_real(*c, header) : std::nullopt;
    }

    std::optional<uint64_t> opt_count(std::string_view name) const {
        const std::string* c = cell(name);
        return c ? decode_count(*c, header) : std::nullopt;
    }

    std::optional<std::string> opt_string(std::string_view name) const {
        const std::string* c = cell(name);
        return c ? decode_string(*c, header) : std::nullopt;
    }

    std::vector<std::string> string_vector(std::string_view name) const {
        const std::string* c = cell(name);
        return c ? decode_string_vector(*c, header) : std::vector<std::string>{};
    }
};

} // namespace

ConnRecord parse_conn_record(const std::string& line, const LogHeader& header) {
    std::vector<std::string> cells = split_line(line, header);
    Row row{cells, header};
    ConnRecord rec;
    rec.ts = row.required_time("ts");
    rec.uid = row.required_string("uid");
    rec.orig_ip = row.required_string("id.orig_h");
    rec.resp_ip = row.required_string("id.resp_h");
    auto port = row.opt_count("id.resp_p");
    if (!port)
        throw TypeDecodeError("id.resp_p unset");
    if (*port > 65535)
        throw TypeDecodeError("port out of range: " + std::to_string(*port));
    rec.resp_port = static_cast<uint16_t>(*port);
    auto proto = proto_from_string(row.required_string("proto"));
    if (!proto)
        throw TypeDecodeError("unknown proto");
    rec.proto = *proto;
    rec.service = row.opt_string("service");
    rec.duration = row.opt_real("duration");
    rec.orig_bytes = row.opt_count("orig_bytes");
    rec.resp_bytes = row.opt_count("resp_bytes");
    rec.conn_state = row.opt_string("conn_state").value_or("");
    rec.orig_pkts = row.opt_count("orig_pkts");
    rec.resp_pkts = row.opt_count("resp_pkts");
    return rec;
}

SslRecord parse_ssl_record(const std::string& line, const LogHeader& header) {
    std::vector<std::string> cells = split_line(line, header);
    Row row{cells, header};
    SslRecord rec;
    rec.ts = row.required_time("ts");
    rec.uid = row.required_string("uid");
    rec.version = row.opt_string("version");
    rec.cipher = row.opt_string("cipher");
    rec.server_name = row.opt_string("server_name");
    rec.subject = row.opt_string("subject");
    rec.issuer = row.opt_string("issuer");
    rec.cert_chain_ids = row.string_vector("cert_chain_fuids");
    rec.validation_status = row.opt_string("validation_status");
    return rec;
}

X509Record parse_x509_record(const std::string& line, const LogHeader& header) {
    std::vector<std::string> cells = split_line(line, header);
    Row row{cells, header};
    X509Record rec;
    rec.cert_id = row.required_string("id");
    rec.not_before = row.opt_real("certificate.not_valid_before");
    rec.not_after = row.opt_real("certificate.not_valid_after");
    rec.subject = row.opt_string("certificate.subject").value_or("");
    rec.issuer = row.opt_string("certificate.issuer").value_or("");
    rec.key_type = row.opt_string("certificate.key_type");
    rec.key_length = row.opt_count("certificate.key_length");
    rec.exponent = row.opt_count("certificate.exponent");
    rec.san_dns = row.string_vector("san.dns");
    rec.common_name = subject_common_name(rec.subject);
    if (rec.not_before && rec.not_after && *rec.not_after < *rec.not_before)
        throw TypeDecodeError("certificate not_after precedes not_before");
    return rec;
}

namespace {

template <typename Record>
ParseResult<Record> parse_log(std::istream& in, LogKind kind,
                              Record (*decode)(const std::string&, const LogHeader&)) {
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        lines.push_back(line);
    }

    std::size_t consumed = 0;
    ParseResult<Record> result;
    result.header = parse_header(lines, &consumed);
    if (result.header.path && *result.header.path != log_kind_name(kind))
        throw WrongLogKind("expected " + std::string(log_kind_name(kind)) + " log, #path says " +
                           *result.header.path);

    for (std::size_t i = consumed; i < lines.size(); ++i) {
        const std::string& l = lines[i];
        if (l.empty())
            continue;
        if (l[0] == '#') // trailing #close and friends
            continue;
        ++result.data_lines;
        try {
            result.records.push_back(decode(l, result.header));
        } catch (const ColumnCountMismatch&) {
            ++result.skipped;
        } catch (const TypeDecodeError&) {
            ++result.skipped;
        }
    }
    return result;
}

template <typename Record>
ParseResult<Record> parse_log_from_path(const std::string& path, LogKind kind,
                                        Record (*decode)(const std::string&, const LogHeader&)) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open log file: " + path);
    return parse_log<Record>(in, kind, decode);
}

} // namespace

ParseResult<ConnRecord> parse_conn_log(std::istream& in) {
    return parse_log<ConnRecord>(in, LogKind::conn, &parse_conn_record);
}

ParseResult<SslRecord> parse_ssl_log(std::istream& in) {
    return parse_log<SslRecord>(in, LogKind::ssl, &parse_ssl_record);
}

ParseResult<X509Record> parse_x509_log(std::istream& in) {
    return parse_log<X509Record>(in, LogKind::x509, &parse_x509_record);
}

ParseResult<ConnRecord> parse_conn_log_file(const std::string& path) {
    return parse_log_from_path<ConnRecord>(path, LogKind::conn, &parse_conn_record);
}

ParseResult<SslRecord> parse_ssl_log_file(const std::string& path) {
    return parse_log_from_path<SslRecord>(path, LogKind::ssl, &parse_ssl_record);
}

ParseResult<X509Record> parse_x509_log_file(const std::string& path) {
    return parse_log_from_path<X509Record>(path, LogKind::x509, &parse_x509_record);
}

} // namespace zeekml::zeeklog
