#pragma once

#include <string>

#include "../common/app.hpp"

namespace httplib {
class Server;
}

namespace nutrilp::service {

struct Response {
    int status = 200;
    std::string body;
};

/// Routes one request without any network I/O. Bodies are the same
/// documents `nutrilp ... --json` prints; errors are {"error": message}.
Response handle(const app::Registry& registry, const std::string& method, const std::string& path,
                const std::string& body);

/// Installs the API routes (and CORS headers) on `server`. `registry` must
/// outlive the server.
void mount(httplib::Server& server, const app::Registry& registry, std::string allowed_origin = "*");

}  // namespace nutrilp::service
