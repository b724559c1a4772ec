#pragma once

#include <barrier>
#include <condition_variable>
#include <deque>
#include <memory>
#include <mutex>
#include <vector>

namespace tetdec {

// Message passing between ranks realized as threads of one process. Sends
// are buffered and never block; receives block until a message from the
// named peer arrives. Messages between a fixed (from, to) pair are delivered
// in send order, so matching is positional, exactly like a tagless
// point-to-point protocol with one channel per ordered pair.
//
// allreduce_sum is collective and deterministic: every rank deposits its
// value, waits, and accumulates the slots in rank order, so all ranks
// compute bitwise identical sums regardless of thread scheduling.
class Communicator {
  public:
    explicit Communicator(int n_ranks);

    int n_ranks() const { return n_ranks_; }

    void send(int from, int to, std::vector<double> buffer);
    std::vector<double> recv(int to, int from);

    double allreduce_sum(int rank, double value);
    void barrier();

  private:
    struct Mailbox {
        std::mutex mutex;
        std::condition_variable ready;
        std::deque<std::vector<double>> queue;
    };

    Mailbox& box(int from, int to) { return *boxes_[from * n_ranks_ + to]; }

    int n_ranks_;
    std::vector<std::unique_ptr<Mailbox>> boxes_;
    std::vector<double> slots_;
    std::barrier<> sync_;
};

} // namespace tetdec
