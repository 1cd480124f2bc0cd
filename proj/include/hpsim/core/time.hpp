#pragma once

#include <compare>
#include <cstdint>

namespace hpsim {

inline constexpr int kMinutesPerDay = 1440;
inline constexpr int kDaysPerWeek = 7;

/// Simulation clock with one-minute resolution.
struct SimTime {
    int day = 0;
    int minute_of_day = 0;

    constexpr auto operator<=>(const SimTime&) const = default;

    [[nodiscard]] constexpr std::int64_t total_minutes() const noexcept {
        return static_cast<std::int64_t>(day) * kMinutesPerDay + minute_of_day;
    }

    [[nodiscard]] static constexpr SimTime from_minutes(std::int64_t minutes) noexcept {
        return SimTime{static_cast<int>(minutes / kMinutesPerDay),
                       static_cast<int>(minutes % kMinutesPerDay)};
    }

    [[nodiscard]] constexpr SimTime plus_minutes(std::int64_t minutes) const noexcept {
        return from_minutes(total_minutes() + minutes);
    }

    [[nodiscard]] constexpr SimTime plus_days(int days) const noexcept {
        return SimTime{day + days, minute_of_day};
    }

    /// Zero-based week index (day 0..6 is week 0).
    [[nodiscard]] constexpr int week() const noexcept { return day / kDaysPerWeek; }
};

constexpr SimTime start_of_day(int day) noexcept { return SimTime{day, 0}; }

}  // namespace hpsim
