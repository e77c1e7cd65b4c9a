#pragma once

#include <cmath>
#include <cstdint>

namespace sketchtest {

inline constexpr const char* kArtifactVersion = "0.1.0";
inline constexpr int kReportFormatVersion = 1;

struct WilsonInterval {
    double low = 0.0;
    double high = 1.0;
};

/// Wilson score interval for a binomial rate; z defaults to the 95% level.
inline WilsonInterval wilson_interval(std::int64_t successes, std::int64_t total,
                                      double z = 1.959963984540054) {
    if (total <= 0) return {};
    const double n = static_cast<double>(total);
    const double phat = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = phat + z2 / (2.0 * n);
    const double spread = z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n));
    return {(center - spread) / denom, (center + spread) / denom};
}

} // namespace sketchtest
