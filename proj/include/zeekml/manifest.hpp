#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace zeekml {

// Dataset manifest: one entry per capture, log paths relative to the manifest
// file unless absolute, plus the infected source IPs (and optional per-IP
// malware family names) used for labeling.
struct CaptureSpec {
    std::string name;
    std::filesystem::path conn_log;
    std::filesystem::path ssl_log;
    std::filesystem::path x509_log;
    std::vector<std::string> infected_ips;
    std::map<std::string, std::string> family_by_ip;
};

struct Manifest {
    std::vector<CaptureSpec> captures;
};

Manifest load_manifest(const std::filesystem::path& path);

} // namespace zeekml
