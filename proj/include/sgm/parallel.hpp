#ifndef SGM_PARALLEL_HPP
#define SGM_PARALLEL_HPP

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace sgm {

/// Runs f(k) for k in [0, ntasks) on a bounded pool. Tasks write to
/// preallocated slots keyed by k, so results do not depend on the schedule;
/// the first exception is rethrown after all workers join.
template <typename F>
void parallel_for(int ntasks, int workers, F&& f) {
    if (ntasks <= 0) return;
    if (workers < 1) workers = 1;
    if (workers > ntasks) workers = ntasks;
    if (workers == 1) {
        for (int k = 0; k < ntasks; ++k) f(k);
        return;
    }
    std::atomic<int> next{0};
    std::mutex err_mutex;
    std::exception_ptr first_error;
    auto body = [&] {
        for (;;) {
            const int k = next.fetch_add(1);
            if (k >= ntasks) return;
            {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (first_error) return;
            }
            try {
                f(k);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(body);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

} // namespace sgm

#endif
