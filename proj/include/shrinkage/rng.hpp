#pragma once

#include <cmath>
#include <cstdint>

// Counter-based random streams. A stream is (key, counter); substreams are
// derived by mixing an id into the key, so replication r draws the same
// numbers no matter how work is scheduled across threads.

namespace shrinkage {

namespace detail {
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}
}  // namespace detail

class RngStream {
  public:
    explicit RngStream(std::uint64_t seed) : key_(detail::mix64(seed ^ 0x5851f42d4c957f2dULL)) {}

    // Independent stream for a numbered piece of work (replication, coordinate, ...).
    RngStream substream(std::uint64_t id) const {
        RngStream s(0);
        s.key_ = detail::mix64(key_ ^ detail::mix64(id + 0x8000000000000001ULL));
        s.counter_ = 0;
        s.has_spare_ = false;
        return s;
    }

    std::uint64_t next_u64() { return detail::mix64(key_ + 0x9e3779b97f4a7c15ULL * (++counter_)); }

    // Uniform on [0,1) with 53 random bits.
    double next_uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Standard normal via Box-Muller; both values of each pair are used.
    double next_normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = next_uniform();
        double u2 = next_uniform();
        if (u1 <= 0.0) u1 = 0x1.0p-53;
        double r = std::sqrt(-2.0 * std::log(u1));
        double angle = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(angle);
        has_spare_ = true;
        return r * std::cos(angle);
    }

  private:
    std::uint64_t key_ = 0;
    std::uint64_t counter_ = 0;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace shrinkage
