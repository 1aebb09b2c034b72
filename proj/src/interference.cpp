#include "lorarel/interference.hpp"

#include <algorithm>

namespace lorarel {

double received_power_mw(const EndDevice& dev, const ChannelModel& model) {
  return dev.tx_power_mw * dev.fading * path_loss(dev.position.distance_km, model);
}

InterferenceTally tally_interference(const Realization& r, const ChannelModel& model) {
  InterferenceTally t;
  t.signal_mw = received_power_mw(r.desired, model);
  CompensatedSum co;
  CompensatedSum inter;
  for (const EndDevice& dev : r.interferers) {
    if (!dev.active) continue;
    const double p = received_power_mw(dev, model);
    if (dev.sf == r.desired.sf) {
      co.add(p);
      t.co_max_mw = std::max(t.co_max_mw, p);
      ++t.co_count;
    } else {
      inter.add(p);
      ++t.inter_count;
    }
  }
  // A sum of non-negative terms is never below its largest term; keep that
  // exact so the capture SIR always dominates the co-SF SIR.
  t.co_sum_mw = std::max(co.value(), t.co_max_mw);
  t.inter_sum_mw = inter.value();
  return t;
}

SirSample sir_from_tally(const InterferenceTally& t, double co_channel_rejection) {
  SirSample s;
  if (t.co_count > 0) {
    s.gamma_max_co = co_channel_rejection * (t.signal_mw / t.co_max_mw);
    s.gamma_co = t.signal_mw / t.co_sum_mw;
  }
  if (t.inter_count > 0) s.gamma_inter = t.signal_mw / t.inter_sum_mw;
  return s;
}

SirSample sir_sample(const Realization& r, const ChannelModel& model, double co_channel_rejection) {
  return sir_from_tally(tally_interference(r, model), co_channel_rejection);
}

double sir_max_co_sf(const Realization& r, const ChannelModel& model, double co_channel_rejection) {
  return sir_sample(r, model, co_channel_rejection).gamma_max_co;
}

double sir_co_sf(const Realization& r, const ChannelModel& model) {
  return sir_sample(r, model).gamma_co;
}

double sir_inter_sf(const Realization& r, const ChannelModel& model) {
  return sir_sample(r, model).gamma_inter;
}

}  // namespace lorarel
