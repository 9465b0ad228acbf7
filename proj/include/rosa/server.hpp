#pragma once

#include "rosa/api.hpp"
#include "rosa/config.hpp"

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

namespace httplib {
class Server;
}

namespace rosa {

// Binds an Api to an HTTP listener.
class HttpService {
public:
    explicit HttpService(const Api & api, std::optional<std::filesystem::path> ui_dir = std::nullopt);
    ~HttpService();

    // Port 0 picks a free port. Returns the bound port; throws IoError.
    int bind(const std::string & host, int port);
    // Blocks until stop() is called.
    void listen();
    void stop();

private:
    std::unique_ptr<httplib::Server> server_;
};

// Loads the KB, starts the writer and serves until SIGINT/SIGTERM.
int serve(const Config & config);

} // namespace rosa
