#pragma once

#include <cstdint>
#include <cstdlib>
#include <thread>

namespace adseq {

// Worker-thread resolution: explicit request, then the ADSEQ_THREADS
// environment variable, then hardware parallelism.
inline std::uint32_t resolve_threads(std::uint32_t requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("ADSEQ_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<std::uint32_t>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

} // namespace adseq
