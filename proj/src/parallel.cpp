#include "smalelab/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <thread>
#include <vector>

namespace smalelab {

int worker_count(int requested) {
    if (requested > 0)
        return requested;
    if (const char* env = std::getenv("SMALE_LAB_THREADS")) {
        int n = std::atoi(env);
        if (n > 0)
            return n;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

void parallel_for(size_t count, const std::function<void(size_t)>& fn, int workers) {
    if (count == 0)
        return;
    const size_t nw = std::min<size_t>(static_cast<size_t>(worker_count(workers)), count);
    if (nw <= 1) {
        for (size_t i = 0; i < count; ++i)
            fn(i);
        return;
    }
    std::atomic<size_t> next{0};
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    auto body = [&]() {
        const size_t chunk = std::max<size_t>(1, count / (nw * 8));
        for (;;) {
            size_t begin = next.fetch_add(chunk);
            if (begin >= count || failed.load())
                return;
            size_t end = std::min(count, begin + chunk);
            try {
                for (size_t i = begin; i < end; ++i)
                    fn(i);
            } catch (...) {
                if (!failed.exchange(true))
                    error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(nw);
    for (size_t w = 0; w < nw; ++w)
        pool.emplace_back(body);
    for (std::thread& t : pool)
        t.join();
    if (failed.load() && error)
        std::rethrow_exception(error);
}

}  // namespace smalelab
