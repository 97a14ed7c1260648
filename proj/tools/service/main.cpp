#include <httplib.h>

#include <CLI11.hpp>
#include <iostream>

#include "service.hpp"

int main(int argc, char** argv) {
    CLI::App cli{"JSON API for least-cost diet exploration"};
    std::string bind = "127.0.0.1";
    int port = 8080;
    std::string data_dir;
    std::string origin = "*";
    std::string static_dir;
    cli.add_option("--bind", bind, "Address to listen on")->capture_default_str();
    cli.add_option("--port", port, "TCP port")->capture_default_str();
    cli.add_option("--data-dir", data_dir, "Directory with foods/ and requirements/ (default $NUTRILP_DATA_DIR)");
    cli.add_option("--cors-origin", origin, "Access-Control-Allow-Origin value")->capture_default_str();
    cli.add_option("--static", static_dir, "Serve a static UI bundle from this directory");
    CLI11_PARSE(cli, argc, argv);

    nutrilp::app::Registry registry;
    try {
        registry = nutrilp::app::Registry::load(data_dir.empty() ? nutrilp::app::default_data_dir() : std::filesystem::path(data_dir));
    } catch (const std::exception& e) {
        std::cerr << "nutrilp-server: " << e.what() << "\n";
        return 1;
    }

    httplib::Server server;
    nutrilp::service::mount(server, registry, origin);
    if (!static_dir.empty() && !server.set_mount_point("/", static_dir)) {
        std::cerr << "nutrilp-server: cannot serve '" << static_dir << "'\n";
        return 1;
    }
    std::cerr << "nutrilp-server: " << registry.datasets.size() << " dataset(s), " << registry.requirements.size()
              << " requirement set(s); listening on http://" << bind << ":" << port << "\n";
    if (!server.listen(bind, port)) {
        std::cerr << "nutrilp-server: cannot listen on " << bind << ":" << port << "\n";
        return 1;
    }
    return 0;
}
