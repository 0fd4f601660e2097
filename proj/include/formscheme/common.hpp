#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace formscheme {

/// Error categories used across the library. Tests match on these rather
/// than on message text.
enum class errc {
    division_by_zero,
    singular_basis,
    inconsistent_system,
    odd_char_required,
    cap_exceeded,
    inadmissible_index,
    classification_inconsistency,
    dimension_mismatch,
    singular_transform,
    orthogonality_violation,
    eigen_consistency,
    non_integral_sum,
    negative_dual,
    not_additive,
    unsupported_case,
    parity_mismatch,
    odd_characteristic,
    bad_subspace,
    degenerate_set,
    bad_argument,
    io_error,
};

class error : public std::runtime_error {
   public:
    error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    errc code() const noexcept { return code_; }

   private:
    errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& what) { throw error(code, what); }

inline void check(bool ok, errc code, const std::string& what) {
    if (!ok) raise(code, what);
}

/// Global enumeration cap (number of objects a brute-force pass may visit).
/// Overridable through the FORMSCHEME_CAP environment variable; individual
/// operations may pass a tighter cap.
inline std::uint64_t global_cap() {
    static const std::uint64_t cap = [] {
        if (const char* s = std::getenv("FORMSCHEME_CAP")) {
            char* end = nullptr;
            unsigned long long v = std::strtoull(s, &end, 10);
            if (end != s && v > 0) return static_cast<std::uint64_t>(v);
        }
        return std::uint64_t(1) << 24;
    }();
    return cap;
}

inline void check_cap(std::uint64_t work, std::uint64_t cap, const std::string& what) {
    if (work > cap) raise(errc::cap_exceeded, what + ": " + std::to_string(work) + " exceeds cap " + std::to_string(cap));
}

/// Runs fn(begin, end) over [0, n) split into contiguous chunks, one chunk
/// per worker. Results must be merged associatively by the caller so the
/// outcome is independent of the thread count.
template <typename Fn>
void parallel_for(std::uint64_t n, unsigned threads, Fn&& fn) {
    if (threads <= 1 || n < 1024) {
        fn(std::uint64_t(0), n);
        return;
    }
    unsigned workers = threads;
    if (std::uint64_t(workers) > n) workers = static_cast<unsigned>(n);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::uint64_t chunk = (n + workers - 1) / workers;
    std::exception_ptr first_error;
    std::mutex err_mutex;
    for (unsigned w = 0; w < workers; ++w) {
        std::uint64_t lo = w * chunk;
        std::uint64_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&, lo, hi] {
            try {
                fn(lo, hi);
            } catch (...) {
                std::lock_guard<std::mutex> g(err_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace formscheme
