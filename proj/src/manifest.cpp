#include "zeekml/manifest.hpp"

#include <json.hpp>

#include <fstream>

namespace zeekml {

Manifest load_manifest(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open manifest: " + path.string());
    nlohmann::json j = nlohmann::json::parse(in);

    const std::filesystem::path base = path.parent_path();
    auto resolve = [&](const std::string& p) {
        std::filesystem::path fp(p);
        return fp.is_absolute() ? fp : base / fp;
    };

    Manifest manifest;
    for (const auto& cap : j.at("captures")) {
        CaptureSpec spec;
        spec.name = cap.value("name", "capture" + std::to_string(manifest.captures.size()));
        spec.conn_log = resolve(cap.at("conn").get<std::string>());
        spec.ssl_log = resolve(cap.at("ssl").get<std::string>());
        spec.x509_log = resolve(cap.at("x509").get<std::string>());
        if (cap.contains("infected_ips"))
            spec.infected_ips = cap.at("infected_ips").get<std::vector<std::string>>();
        if (cap.contains("families"))
            spec.family_by_ip = cap.at("families").get<std::map<std::string, std::string>>();
        manifest.captures.push_back(std::move(spec));
    }
    return manifest;
}

} // namespace zeekml
