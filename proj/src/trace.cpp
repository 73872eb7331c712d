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

#include <autoscale/trace.hpp>

#include <autoscale/domain.hpp>
#include <autoscale/rng.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

namespace autoscale {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Piecewise shape in [0, 1] time: ramp, rippled plateau, spike, decay, tail.
double shape(double x, const TraceGeneratorParams& p) {
  constexpr double kPi = 3.14159265358979323846;
  if (x < 0.3) return p.base_fraction + (p.plateau_fraction - p.base_fraction) * (x / 0.3);
  if (x < 0.6) return p.plateau_fraction * (1.0 + 0.08 * std::sin(2.0 * kPi * (x - 0.3) / 0.15));
  if (x < 0.68) return p.plateau_fraction + (1.0 - p.plateau_fraction) * ((x - 0.6) / 0.08);
  if (x < 0.72) return 1.0;
  if (x < 0.82) return 1.0 + (p.tail_fraction - 1.0) * ((x - 0.72) / 0.1);
  return p.tail_fraction;
}

}  // namespace

Trace Trace::read_csv(std::istream& in) {
  Trace trace;
  std::string line;
  if (!std::getline(in, line) || trim(line) != "interval,service_id,req_per_min") {
    throw ConfigError("trace: expected header 'interval,service_id,req_per_min'");
  }
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    std::istringstream row(line);
    std::string interval, service, rate;
    if (!std::getline(row, interval, ',') || !std::getline(row, service, ',') || !std::getline(row, rate)) {
      throw ConfigError("trace line " + std::to_string(lineno) + ": expected three fields");
    }
    try {
      const long long t = std::stoll(trim(interval));
      const double v = std::stod(trim(rate));
      if (t < 0) throw ConfigError("negative interval");
      if (!(v >= 0.0)) throw ConfigError("negative request rate");
      trace.set(trim(service), static_cast<std::size_t>(t), v);
    } catch (const ConfigError& e) {
      throw ConfigError("trace line " + std::to_string(lineno) + ": " + e.what());
    } catch (const std::exception&) {
      throw ConfigError("trace line " + std::to_string(lineno) + ": malformed number");
    }
  }
  for (const auto& [service, series] : trace.series_) {
    if (std::any_of(series.begin(), series.end(), [](double v) { return std::isnan(v); })) {
      throw ConfigError("trace: service " + service + " has gaps in its intervals");
    }
  }
  return trace;
}

Trace Trace::read_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open trace " + path);
  return read_csv(in);
}

void Trace::write_csv(std::ostream& out) const {
  out << "interval,service_id,req_per_min\n";
  const auto n = std::max_element(series_.begin(), series_.end(), [](const auto& a, const auto& b) {
    return a.second.size() < b.second.size();
  });
  const std::size_t len = n == series_.end() ? 0 : n->second.size();
  out << std::setprecision(10);
  for (std::size_t t = 0; t < len; ++t) {
    for (const auto& [service, values] : series_) {
      if (t < values.size()) out << t << ',' << service << ',' << values[t] << '\n';
    }
  }
}

void Trace::write_csv_file(const std::string& path) const {
  const auto parent = std::filesystem::path(path).parent_path();
  std::error_code ec;
  if (!parent.empty()) std::filesystem::create_directories(parent, ec);
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write trace " + path);
  write_csv(out);
}

void Trace::set(const std::string& service, std::size_t interval, double req_per_min) {
  if (!(req_per_min >= 0.0)) throw ConfigError("trace values must be non-negative");
  auto& s = series_[service];
  if (s.size() <= interval) s.resize(interval + 1, std::numeric_limits<double>::quiet_NaN());
  s[interval] = req_per_min;
}

std::size_t Trace::length() const {
  if (series_.empty()) return 0;
  std::size_t n = std::numeric_limits<std::size_t>::max();
  for (const auto& [_, s] : series_) n = std::min(n, s.size());
  return n;
}

double Trace::value(const std::string& service, std::size_t interval) const {
  auto it = series_.find(service);
  if (it == series_.end() || interval >= it->second.size()) return 0.0;
  return it->second[interval];
}

Trace generate_trace(const TraceGeneratorParams& params) {
  Trace trace;
  Rng rng = derive_rng({params.seed, 0x7472616365ull});
  std::normal_distribution<double> jitter(0.0, params.noise);
  const double denom = params.intervals > 1 ? static_cast<double>(params.intervals - 1) : 1.0;
  for (std::size_t t = 0; t < params.intervals; ++t) {
    const double base = params.peak * shape(static_cast<double>(t) / denom, params);
    for (const auto& [service, scale] : params.service_scale) {
      const double noise = params.noise > 0.0 ? jitter(rng) : 0.0;
      trace.set(service, t, std::max(0.0, base * scale * (1.0 + noise)));
    }
  }
  return trace;
}

}  // namespace autoscale
