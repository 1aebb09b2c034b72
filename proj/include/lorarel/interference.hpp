#pragma once

#include <cmath>
#include <cstddef>
#include <limits>

#include "lorarel/channel.hpp"
#include "lorarel/geometry.hpp"

namespace lorarel {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// P |h|^2 l(d) in mW.
double received_power_mw(const EndDevice& dev, const ChannelModel& model);

/// Received powers of one realization split by SF relative to the desired
/// device. Only active interferers are counted.
struct InterferenceTally {
  double signal_mw = 0.0;
  double co_sum_mw = 0.0;
  double co_max_mw = 0.0;
  double inter_sum_mw = 0.0;
  std::size_t co_count = 0;
  std::size_t inter_count = 0;
};

InterferenceTally tally_interference(const Realization& r, const ChannelModel& model);

/// Instantaneous SIR under the three interference scenarios; +inf when the
/// relevant interferer set is empty.
struct SirSample {
  double gamma_max_co = kInfinity;
  double gamma_co = kInfinity;
  double gamma_inter = kInfinity;
};

SirSample sir_from_tally(const InterferenceTally& t, double co_channel_rejection = 4.0);
SirSample sir_sample(const Realization& r, const ChannelModel& model,
                     double co_channel_rejection = 4.0);

/// rejection * S / (strongest active same-SF interferer).
double sir_max_co_sf(const Realization& r, const ChannelModel& model,
                     double co_channel_rejection = 4.0);
/// S / (sum of active same-SF interferers).
double sir_co_sf(const Realization& r, const ChannelModel& model);
/// S / (sum of active interferers on other SFs).
double sir_inter_sf(const Realization& r, const ChannelModel& model);

}  // namespace lorarel
