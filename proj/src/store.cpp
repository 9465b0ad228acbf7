#include "rosa/store.hpp"

#include "rosa/kb_io.hpp"

namespace rosa {

KbStore::KbStore(KnowledgeBase kb, std::optional<std::filesystem::path> persist_to) :
    persist_to_(std::move(persist_to)),
    current_(std::make_shared<const KnowledgeBase>(std::move(kb)))
{
    writer_ = std::thread([this] { run(); });
}

KbStore::~KbStore()
{
    {
        std::lock_guard lock(queue_mutex_);
        stopping_ = true;
    }
    queue_cv_.notify_all();
    writer_.join();
}

Snapshot KbStore::snapshot() const
{
    std::lock_guard lock(snapshot_mutex_);
    return current_;
}

std::future<Snapshot> KbStore::submit(Mutation mutation)
{
    std::packaged_task<Snapshot()> task([this, mutation = std::move(mutation)] {
        auto next = std::make_shared<const KnowledgeBase>(mutation(*snapshot()));
        if (persist_to_)
            save_kb(*next, *persist_to_);
        std::lock_guard lock(snapshot_mutex_);
        current_ = next;
        return next;
    });
    auto result = task.get_future();
    {
        std::lock_guard lock(queue_mutex_);
        queue_.push_back(std::move(task));
    }
    queue_cv_.notify_one();
    return result;
}

void KbStore::run()
{
    for (;;) {
        std::packaged_task<Snapshot()> task;
        {
            std::unique_lock lock(queue_mutex_);
            queue_cv_.wait(lock, [this] { return stopping_ || !queue_.empty(); });
            if (queue_.empty())
                return;
            task = std::move(queue_.front());
            queue_.pop_front();
        }
        task();
    }
}

} // namespace rosa
