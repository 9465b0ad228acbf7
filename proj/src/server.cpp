#include "rosa/server.hpp"

#include "rosa/error.hpp"
#include "rosa/kb_io.hpp"
#include "rosa/store.hpp"

#include <csignal>
#include <iostream>

#include <httplib.h>

namespace rosa {

HttpService::HttpService(const Api & api, std::optional<std::filesystem::path> ui_dir) :
    server_(std::make_unique<httplib::Server>())
{
    auto route = [&api](const httplib::Request & req, httplib::Response & res) {
        auto reply = api.handle(req.method, req.path, req.body);
        res.status = reply.status;
        res.set_content(reply.body.dump(2), "application/json; charset=utf-8");
    };
    server_->Get("/api/.*", route);
    server_->Post("/api/.*", route);
    server_->Put("/api/.*", route);
    if (ui_dir)
        server_->set_mount_point("/", ui_dir->string());
}

HttpService::~HttpService() = default;

int HttpService::bind(const std::string & host, int port)
{
    int bound = port == 0 ? server_->bind_to_any_port(host) : (server_->bind_to_port(host, port) ? port : -1);
    if (bound < 0)
        fail(ErrorCode::IoError, "cannot listen on " + host + ":" + std::to_string(port));
    return bound;
}

void HttpService::listen()
{
    server_->listen_after_bind();
}

void HttpService::stop()
{
    server_->stop();
}

namespace {

HttpService * running_service = nullptr;

extern "C" void handle_signal(int)
{
    if (running_service)
        running_service->stop();
}

} // namespace

int serve(const Config & config)
{
    KnowledgeBase kb;
    try {
        kb = load_kb(config.kb_path);
    } catch (const Error & e) {
        std::cerr << "rosa serve: cannot load knowledge base: " << e.what() << "\n";
        return 2;
    }
    if (config.default_policy)
        check_policy(kb.taxonomy, *config.default_policy);

    KbStore store(std::move(kb), config.kb_path);
    Api api(store, config.default_policy, config.limits);
    HttpService service(api, config.ui_dir);
    int port = 0;
    try {
        port = service.bind(config.host, config.port);
    } catch (const Error & e) {
        std::cerr << "rosa serve: " << e.what() << "\n";
        return 1;
    }

    running_service = &service;
    std::signal(SIGINT, handle_signal);
    std::signal(SIGTERM, handle_signal);
    std::cerr << "rosa serve: " << config.kb_path.string() << " (version " << store.snapshot()->version
              << ") on http://" << config.host << ":" << port << "\n";
    service.listen();
    running_service = nullptr;
    return 0;
}

} // namespace rosa
