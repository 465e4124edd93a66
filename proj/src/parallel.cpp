#include "magbloch/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>
#include <vector>

namespace magbloch {

namespace {
std::atomic<unsigned> g_threads{1};
thread_local bool t_in_region = false;
}

void set_thread_count(unsigned n)
{
    if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
    g_threads.store(n);
}

unsigned thread_count() { return g_threads.load(); }

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body)
{
    const unsigned t = static_cast<unsigned>(std::min<std::size_t>(thread_count(), n));
    if (t <= 1 || t_in_region) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        t_in_region = true;
        for (std::size_t i; (i = next.fetch_add(1)) < n;) {
            try {
                body(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned k = 0; k < t; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

} // namespace magbloch
