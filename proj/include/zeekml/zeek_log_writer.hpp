#pragma once

#include "zeekml/zeek_log.hpp"

#include <ostream>
#include <span>
#include <string>

namespace zeekml::zeeklog {

// Serialize records back to Zeek TSV with the stock markers (tab separator,
// `-` unset, `(empty)` empty, `,` set separator). Every modeled field
// round-trips exactly through the parser; columns the record types do not
// model are written unset. String content containing a tab, newline or comma
// is rejected, since Zeek-style escaping is out of scope.
void write_conn_log(std::ostream& out, std::span<const ConnRecord> records);
void write_ssl_log(std::ostream& out, std::span<const SslRecord> records);
void write_x509_log(std::ostream& out, std::span<const X509Record> records);

void write_conn_log_file(const std::string& path, std::span<const ConnRecord> records);
void write_ssl_log_file(const std::string& path, std::span<const SslRecord> records);
void write_x509_log_file(const std::string& path, std::span<const X509Record> records);

// Fixed-point second formatting used across the writers ("%.6f"), public so
// generators can quantize timestamps to what survives a round-trip.
std::string format_seconds(double v);
double quantize_seconds(double v);

} // namespace zeekml::zeeklog
