#include "sphcap/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace sphcap {

namespace {
    std::atomic<unsigned> g_threads{0};

    unsigned default_threads()
    {
        if (const char* env = std::getenv("SPHCAP_THREADS")) {
            try {
                const long v = std::stol(env);
                if (v > 0)
                    return static_cast<unsigned>(v);
            } catch (const std::exception&) {
            }
        }
        return std::max(1u, std::thread::hardware_concurrency());
    }
} // namespace

void set_thread_count(unsigned count) { g_threads = count; }

unsigned thread_count()
{
    const unsigned t = g_threads;
    return t > 0 ? t : default_threads();
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body)
{
    const std::size_t workers = std::min<std::size_t>(thread_count(), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i)
            body(i);
        return;
    }

    std::vector<std::exception_ptr> errors(workers);
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                const std::size_t begin = n * w / workers;
                const std::size_t end = n * (w + 1) / workers;
                try {
                    for (std::size_t i = begin; i < end; ++i)
                        body(i);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
    }
    for (const auto& e : errors)
        if (e)
            std::rethrow_exception(e);
}

} // namespace sphcap
