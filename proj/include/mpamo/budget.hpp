#pragma once

#include <chrono>
#include <cstdint>

namespace mpamo {

// Deterministic search budget. Solvers meter their work in fixed nominal
// costs (roughly nanoseconds of compute on the reference desk machine, see
// constants below), and the configured time limit is enforced on that
// virtual clock, so runtimes, timeouts and everything derived from them are
// reproducible bit-for-bit across runs. A wall-clock cap (same limit) backs
// it up in case the nominal costs ever badly underprice real work.
class SearchBudget {
public:
    // nominal cost per operation, in virtual nanoseconds
    static constexpr std::uint64_t kMohExpansion = 1500;
    static constexpr std::uint64_t kPamoExpansion = 4000;
    static constexpr std::uint64_t kSimStep = 800;        // per simulated timestep
    static constexpr std::uint64_t kHighLevelNode = 2000;  // CT bookkeeping per node
    static constexpr std::uint64_t kGuardBase = 300;       // NoAffectPlannedPaths call
    static constexpr std::uint64_t kGuardPerCell = 6;      // per path cell scanned
    static constexpr std::uint64_t kOracleExpansion = 2500;

    explicit SearchBudget(std::uint64_t limit_ms = 0)
        : limit_ns_(limit_ms * 1000000ULL),
          wall_start_(std::chrono::steady_clock::now()) {}

    void charge(std::uint64_t ns) { used_ns_ += ns; }

    bool exhausted() const {
        if (limit_ns_ == 0) return false;
        if (used_ns_ >= limit_ns_) return true;
        // Backstop at 4x the limit; never fires first under calibrated costs.
        auto wall = std::chrono::steady_clock::now() - wall_start_;
        return std::chrono::duration_cast<std::chrono::nanoseconds>(wall).count() >=
               std::int64_t(4 * limit_ns_);
    }

    std::uint64_t used_ns() const { return used_ns_; }
    std::uint64_t used_ms() const { return used_ns_ / 1000000ULL; }

private:
    std::uint64_t limit_ns_ = 0;
    std::uint64_t used_ns_ = 0;
    std::chrono::steady_clock::time_point wall_start_;
};

}  // namespace mpamo
