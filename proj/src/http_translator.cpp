#include "pcl/augment.hpp"
#include "pcl/error.hpp"

#include <httplib.h>
#include <json.hpp>

#include <thread>

namespace pcl::augment {

HttpTranslator::HttpTranslator(HttpTranslatorOptions options) : options_(std::move(options)) {
    const auto& url = options_.url;
    const auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) {
        throw UsageError("MT service URL '" + url + "' must start with http://");
    }
    const auto scheme = url.substr(0, scheme_end);
    if (scheme != "http") {
        throw UsageError("MT service URL '" + url + "': only plain http is supported");
    }
    const auto path_start = url.find('/', scheme_end + 3);
    scheme_host_port_ = url.substr(0, path_start);
    path_ = path_start == std::string::npos ? "/" : url.substr(path_start);
    if (scheme_host_port_.size() <= scheme_end + 3) throw UsageError("MT service URL '" + url + "' has no host");
}

std::string HttpTranslator::id() const { return "http:" + options_.url; }

std::string HttpTranslator::translate(std::string_view text, std::string_view source, std::string_view target) {
    const nlohmann::json request = {
        {"text", std::string(text)},
        {"source", std::string(source)},
        {"target", std::string(target)},
    };
    const std::string body = request.dump();

    std::string last_error;
    for (int attempt = 0; attempt <= options_.retries; ++attempt) {
        if (attempt > 0) std::this_thread::sleep_for(std::chrono::milliseconds(100 * attempt));
        httplib::Client client(scheme_host_port_);
        client.set_connection_timeout(options_.timeout);
        client.set_read_timeout(options_.timeout);
        client.set_write_timeout(options_.timeout);
        const auto result = client.Post(path_, body, "application/json");
        if (!result) {
            last_error = "request failed: " + httplib::to_string(result.error());
            continue;
        }
        if (result->status >= 500) {
            last_error = "server returned HTTP " + std::to_string(result->status);
            continue;
        }
        if (result->status != 200) {
            // Client errors will not improve on retry.
            throw std::runtime_error("server returned HTTP " + std::to_string(result->status));
        }
        const auto reply = nlohmann::json::parse(result->body, nullptr, false);
        if (reply.is_discarded() || !reply.is_object() || !reply.contains("text") || !reply["text"].is_string()) {
            throw std::runtime_error("response is not a JSON object with a string 'text' field");
        }
        return reply["text"].get<std::string>();
    }
    throw std::runtime_error(last_error);
}

}  // namespace pcl::augment
