#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace cdimlab {

// Error taxonomy. Every throwing operation uses one of these kinds so that
// callers (and the CLI) can map failures to distinct exit codes.
enum class errc {
    bad_input,          // malformed file, inconsistent sizes, bad parameters
    cap_exceeded,       // instance larger than the configured resource cap
    precondition,       // a documented mathematical hypothesis failed
    internal,           // should-not-happen
};

class error : public std::runtime_error {
public:
    error(errc kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
    errc kind() const { return kind_; }

private:
    errc kind_;
};

[[noreturn]] inline void fail(errc kind, const std::string& msg) { throw error(kind, msg); }

// Resource caps. Defaults are deliberate desk-scale values; the environment
// variable CDIMLAB_CAP scales the point caps (not the graph caps) when set.
struct caps {
    int matrix_cache = 5000;       // largest n for which full distance rows are cached
    int hyperbolicity_scan = 128;  // largest n for the quartic delta scan
    int cantor_depth = 12;
    int space_points = 250000;     // largest generated point-sample size
    long long complex_faces = 3'000'000;  // largest face count for template builds
    long long graph_vertices = 12'000'000;

    static caps from_env();
};

// Deterministic RNG (splitmix64). Uniform doubles are derived bit-exactly so
// that a fixed seed reproduces byte-identical outputs across platforms.
class rng {
public:
    explicit rng(std::uint64_t seed) : s_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}

    std::uint64_t next_u64() {
        // splitmix64
        std::uint64_t z = (s_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0,1)
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // uniform integer in [0, n)
    std::uint64_t next_below(std::uint64_t n) {
        if (n == 0) return 0;
        return next_u64() % n;  // modulo bias irrelevant at desk scale
    }

private:
    std::uint64_t s_;
};

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Slack for comparisons between quantities that are equal as real numbers but
// reach a test through different rounding paths (e.g. 3^-j computed once by
// the cover builder and once as a product of stats).
inline constexpr double kNumSlack = 1e-12;

// Worst-case overestimate of an 8-neighbour grid path against the straight
// segment in a flat square: 1/cos(pi/8). All graph-metric tolerances in the
// test suites derive from this single constant.
inline constexpr double kGridStretch = 1.0823922002923940;
inline constexpr double kTolMetric = kGridStretch - 1.0;

}  // namespace cdimlab
