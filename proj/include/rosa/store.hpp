#pragma once

#include "rosa/case_base.hpp"

#include <condition_variable>
#include <deque>
#include <filesystem>
#include <functional>
#include <future>
#include <memory>
#include <mutex>
#include <optional>
#include <thread>

namespace rosa {

using Snapshot = std::shared_ptr<const KnowledgeBase>;

// Single-writer, multi-reader holder of the knowledge base. Readers take
// immutable snapshots; mutations are queued to one writer thread, persisted
// (when a path is set) and only then published.
class KbStore {
public:
    using Mutation = std::function<KnowledgeBase(const KnowledgeBase &)>;

    explicit KbStore(KnowledgeBase kb, std::optional<std::filesystem::path> persist_to = std::nullopt);
    ~KbStore();

    KbStore(const KbStore &) = delete;
    KbStore & operator=(const KbStore &) = delete;

    Snapshot snapshot() const;

    std::future<Snapshot> submit(Mutation mutation);

    // Blocking submit; rethrows whatever the mutation or persistence threw.
    Snapshot apply(Mutation mutation) { return submit(std::move(mutation)).get(); }

private:
    void run();

    std::optional<std::filesystem::path> persist_to_;

    mutable std::mutex snapshot_mutex_;
    Snapshot current_;

    std::mutex queue_mutex_;
    std::condition_variable queue_cv_;
    std::deque<std::packaged_task<Snapshot()>> queue_;
    bool stopping_ = false;
    std::thread writer_;
};

} // namespace rosa
