// Copyright 2026 The autoscale Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef AUTOSCALE_TRACE_HPP
#define AUTOSCALE_TRACE_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace autoscale {

/// Per-service request rates (req/min) indexed by sampling interval.
/// CSV form: header `interval,service_id,req_per_min`, one row per pair.
class Trace {
 public:
  static Trace read_csv(std::istream& in);
  static Trace read_csv_file(const std::string& path);
  void write_csv(std::ostream& out) const;
  void write_csv_file(const std::string& path) const;

  void set(const std::string& service, std::size_t interval, double req_per_min);
  /// Number of intervals every service has a value for.
  std::size_t length() const;
  bool has_service(const std::string& service) const { return series_.count(service) != 0; }
  double value(const std::string& service, std::size_t interval) const;
  const std::map<std::string, std::vector<double>>& series() const { return series_; }

 private:
  std::map<std::string, std::vector<double>> series_;
};

/// Ramp, plateau with ripple, a short spike to the peak, then decay: the
/// rough shape of a compressed World Cup '98 day.
struct TraceGeneratorParams {
  std::size_t intervals = 70;
  double peak = 300.0;             // req/min at the spike
  double base_fraction = 0.35;     // start of the ramp, fraction of peak
  double plateau_fraction = 0.65;
  double tail_fraction = 0.45;
  double noise = 0.05;             // relative Gaussian jitter
  std::uint64_t seed = 1;
  std::map<std::string, double> service_scale;  // service -> multiplier on peak
};

Trace generate_trace(const TraceGeneratorParams& params);

}  // namespace autoscale

#endif  // AUTOSCALE_TRACE_HPP
