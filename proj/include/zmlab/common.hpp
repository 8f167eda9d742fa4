#pragma once

#include <atomic>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <Eigen/Dense>

namespace zm {

using Real = double;
using Complex = std::complex<double>;

using Vec = Eigen::VectorXd;
using CVec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXd;
using CMat = Eigen::MatrixXcd;

inline constexpr double pi = 3.14159265358979323846;

// ---------------------------------------------------------------------------
// Error taxonomy.  Every throwing contract in the library uses one of these.
// ---------------------------------------------------------------------------

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct InvalidDimensionError : Error { using Error::Error; };
struct UnsupportedError : Error { using Error::Error; };
struct DegenerateRepresentationError : Error { using Error::Error; };
struct NoIntertwinerError : Error { using Error::Error; };
struct ValidationError : Error { using Error::Error; };
struct DomainError : Error { using Error::Error; };
struct DivergenceError : Error { using Error::Error; };
struct AccuracyError : Error {
    AccuracyError(const std::string& msg, double best, double est)
        : Error(msg), best_value(best), error_estimate(est) {}
    double best_value;
    double error_estimate;
};
struct ConvergenceError : Error { using Error::Error; };

// ---------------------------------------------------------------------------
// Randomness.  All randomness in a run is routed through seeded mt19937_64
// generators; sub-streams are derived by hashing so results do not depend on
// evaluation order.
// ---------------------------------------------------------------------------

using Rng = std::mt19937_64;

inline std::uint64_t hash_mix(std::uint64_t x) {
    // splitmix64 finalizer
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

inline Rng make_rng(std::uint64_t seed) { return Rng(hash_mix(seed)); }

inline Rng sub_rng(std::uint64_t seed, const std::string& tag, std::uint64_t index = 0) {
    std::uint64_t h = hash_mix(seed);
    for (unsigned char c : tag) h = hash_mix(h ^ c);
    h = hash_mix(h ^ index);
    return Rng(h);
}

inline double uniform(Rng& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline Vec random_point_in_ball(Rng& rng, int d, double radius) {
    std::normal_distribution<double> nd(0.0, 1.0);
    Vec x(d);
    for (int i = 0; i < d; ++i) x[i] = nd(rng);
    double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    double r = radius * std::pow(u, 1.0 / d);
    double nrm = x.norm();
    if (nrm < 1e-300) { x.setZero(); x[0] = 1.0; nrm = 1.0; }
    return (r / nrm) * x;
}

inline CVec random_unit_spinor(Rng& rng, int n) {
    std::normal_distribution<double> nd(0.0, 1.0);
    CVec v(n);
    for (int i = 0; i < n; ++i) v[i] = Complex(nd(rng), nd(rng));
    v /= v.norm();
    return v;
}

// ---------------------------------------------------------------------------
// Parallelism.  ZM_THREADS caps the worker count; tasks write to their own
// slots so aggregation order stays deterministic.
// ---------------------------------------------------------------------------

inline int thread_count() {
    if (const char* env = std::getenv("ZM_THREADS")) {
        int n = std::atoi(env);
        if (n >= 1) return n;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

inline void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& body) {
    int workers = thread_count();
    if (workers <= 1 || n < 2) {
        for (std::int64_t i = 0; i < n; ++i) body(i);
        return;
    }
    workers = static_cast<int>(std::min<std::int64_t>(workers, n));
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::atomic<std::int64_t> next{0};
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&]() {
            while (true) {
                std::int64_t i = next.fetch_add(1);
                if (i >= n) break;
                body(i);
            }
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace zm
