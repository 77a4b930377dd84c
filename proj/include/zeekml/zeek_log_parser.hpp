#pragma once

#include "zeekml/zeek_log.hpp"

#include <cstddef>
#include <istream>
#include <span>
#include <string>
#include <vector>

namespace zeekml::zeeklog {

// Builds a LogHeader from the directive lines at the top of a log. Consumes
// only `#`-prefixed lines; `consumed` (when non-null) receives how many lines
// were eaten. Throws MissingDirective / ArityMismatch.
LogHeader parse_header(std::span<const std::string> lines, std::size_t* consumed = nullptr);

// Splits a data line into cells. Throws ColumnCountMismatch when the cell
// count disagrees with the header.
std::vector<std::string> split_line(const std::string& line, const LogHeader& header);

// Cell-level decoding per Zeek type. Unset marker -> nullopt; the typed
// decoders throw TypeDecodeError on garbage.
bool cell_is_unset(const std::string& cell, const LogHeader& header);
std::optional<double> decode_real(const std::string& cell, const LogHeader& header);
std::optional<uint64_t> decode_count(const std::string& cell, const LogHeader& header);
std::optional<std::string> decode_string(const std::string& cell, const LogHeader& header);
std::vector<std::string> decode_string_vector(const std::string& cell, const LogHeader& header);

// Typed per-line decoders. Columns are looked up by name so extra columns and
// Zeek version drift are harmless; missing optional columns decode as absent.
// Throw ColumnCountMismatch / TypeDecodeError (both skippable at file level).
ConnRecord parse_conn_record(const std::string& line, const LogHeader& header);
SslRecord parse_ssl_record(const std::string& line, const LogHeader& header);
X509Record parse_x509_record(const std::string& line, const LogHeader& header);

template <typename Record>
struct ParseResult {
    LogHeader header;
    std::vector<Record> records; // file order
    std::size_t skipped = 0;     // malformed data lines
    std::size_t data_lines = 0;  // records.size() + skipped
};

// Parses a whole log of the expected kind. Malformed data lines are skipped
// and counted, never fatal. Throws WrongLogKind when the file carries a
// conflicting #path, and MissingColumn when a required column is absent.
ParseResult<ConnRecord> parse_conn_log(std::istream& in);
ParseResult<SslRecord> parse_ssl_log(std::istream& in);
ParseResult<X509Record> parse_x509_log(std::istream& in);

ParseResult<ConnRecord> parse_conn_log_file(const std::string& path);
ParseResult<SslRecord> parse_ssl_log_file(const std::string& path);
ParseResult<X509Record> parse_x509_log_file(const std::string& path);

} // namespace zeekml::zeeklog
