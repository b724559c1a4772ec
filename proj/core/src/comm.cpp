#include "tetdec/comm.hpp"

#include <stdexcept>

namespace tetdec {

namespace {
int checked_rank_count(int n_ranks) {
    if (n_ranks < 1) throw std::invalid_argument("communicator needs at least one rank");
    return n_ranks;
}
} // namespace

Communicator::Communicator(int n_ranks)
    : n_ranks_(checked_rank_count(n_ranks)),
      slots_(static_cast<std::size_t>(n_ranks), 0.0), sync_(n_ranks) {
    boxes_.reserve(static_cast<std::size_t>(n_ranks) * n_ranks);
    for (int i = 0; i < n_ranks * n_ranks; ++i) boxes_.push_back(std::make_unique<Mailbox>());
}

void Communicator::send(int from, int to, std::vector<double> buffer) {
    Mailbox& mb = box(from, to);
    {
        std::lock_guard<std::mutex> lock(mb.mutex);
        mb.queue.push_back(std::move(buffer));
    }
    mb.ready.notify_one();
}

std::vector<double> Communicator::recv(int to, int from) {
    Mailbox& mb = box(from, to);
    std::unique_lock<std::mutex> lock(mb.mutex);
    mb.ready.wait(lock, [&] { return !mb.queue.empty(); });
    std::vector<double> buffer = std::move(mb.queue.front());
    mb.queue.pop_front();
    return buffer;
}

double Communicator::allreduce_sum(int rank, double value) {
    slots_[static_cast<std::size_t>(rank)] = value;
    sync_.arrive_and_wait();
    double sum = 0.0;
    for (int r = 0; r < n_ranks_; ++r) sum += slots_[static_cast<std::size_t>(r)];
    // Second phase keeps the slots alive until every rank has read them.
    sync_.arrive_and_wait();
    return sum;
}

void Communicator::barrier() { sync_.arrive_and_wait(); }

} // namespace tetdec
