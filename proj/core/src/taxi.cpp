#include "otap/taxi.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace otap {

namespace {

constexpr double kLonMin = -75.0, kLonMax = -73.0;
constexpr double kLatMin = 40.4, kLatMax = 40.95;
constexpr double kGridStep = 0.05;
constexpr double kMeanTripDistance = 2.7;

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

// Minutes since midnight from "YYYY-MM-DD HH:MM:SS"; -1 if unparseable.
int minute_of_day(const std::string& datetime) {
  int y, mo, d, h, mi, s;
  if (std::sscanf(datetime.c_str(), "%d-%d-%d %d:%d:%d", &y, &mo, &d, &h, &mi, &s) != 6)
    return -1;
  if (h < 0 || h > 23 || mi < 0 || mi > 59) return -1;
  return h * 60 + mi;
}

}  // namespace

int grid_cell(double lon, double lat) {
  if (lon < kLonMin || lon > kLonMax || lat < kLatMin || lat > kLatMax) return -1;
  const int nx = static_cast<int>(std::llround((kLonMax - kLonMin) / kGridStep));
  const int ny = static_cast<int>(std::llround((kLatMax - kLatMin) / kGridStep));
  int ix = static_cast<int>((lon - kLonMin) / kGridStep);
  int iy = static_cast<int>((lat - kLatMin) / kGridStep);
  ix = std::min(ix, nx - 1);
  iy = std::min(iy, ny - 1);
  return ix * ny + iy;
}

int occupation_slots(double trip_time_min, int slot_minutes, int horizon) {
  const double minutes = 2.0 * trip_time_min + 5.0;
  const int slots = static_cast<int>(std::ceil(minutes / slot_minutes));
  return std::clamp(slots, 1, horizon);
}

std::vector<TripRecord> parse_trip_records(std::istream& in) {
  std::vector<TripRecord> out;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("trip record stream is empty");
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    const auto cols = split_csv_line(line);
    if (cols.size() != 8)
      throw std::runtime_error("trip record line " + std::to_string(lineno) + " has " +
                               std::to_string(cols.size()) + " columns, expected 8");
    TripRecord r;
    try {
      r.driver_id = cols[0];
      r.pickup_lon = std::stod(cols[1]);
      r.pickup_lat = std::stod(cols[2]);
      r.dropoff_lon = std::stod(cols[3]);
      r.dropoff_lat = std::stod(cols[4]);
      r.pickup_datetime = cols[5];
      r.trip_time_min = std::stod(cols[6]);
      r.trip_distance_mi = std::stod(cols[7]);
    } catch (const std::exception&) {
      throw std::runtime_error("trip record line " + std::to_string(lineno) +
                               " is not parseable");
    }
    if (!std::isfinite(r.pickup_lon) || !std::isfinite(r.pickup_lat) ||
        !std::isfinite(r.dropoff_lon) || !std::isfinite(r.dropoff_lat) ||
        r.trip_time_min < 0.0 || r.trip_distance_mi < 0.0)
      throw std::runtime_error("trip record line " + std::to_string(lineno) +
                               " violates field bounds");
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<TripRecord> read_trip_records(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open trip record file: " + path);
  return parse_trip_records(in);
}

Instance ingest_trip_records(const std::vector<TripRecord>& records,
                             const IngestParams& params, std::uint64_t seed) {
  Rng rng = make_rng(mix64(seed, hash_tag("taxi-ingest")));

  // Keep in-area records, optionally restricted to the pickup-hour window.
  struct Filtered {
    const TripRecord* rec;
    int pickup_cell, dropoff_cell, minute;
  };
  std::vector<Filtered> rows;
  for (const auto& r : records) {
    const int pc = grid_cell(r.pickup_lon, r.pickup_lat);
    const int dc = grid_cell(r.dropoff_lon, r.dropoff_lat);
    if (pc < 0 || dc < 0) continue;
    const int minute = minute_of_day(r.pickup_datetime);
    if (minute < 0) throw std::runtime_error("unparseable pickup_datetime: " + r.pickup_datetime);
    if (params.hour_min >= 0 && params.hour_max >= 0) {
      const int hour = minute / 60;
      if (hour < params.hour_min || hour >= params.hour_max) continue;
    }
    rows.push_back({&r, pc, dc, minute});
  }

  // Drivers.
  std::map<std::string, std::vector<int>> pickup_cells_by_driver;
  for (const auto& f : rows) pickup_cells_by_driver[f.rec->driver_id].push_back(f.pickup_cell);
  if (static_cast<int>(pickup_cells_by_driver.size()) < params.n_agents)
    throw std::runtime_error("insufficient data: " +
                             std::to_string(pickup_cells_by_driver.size()) +
                             " distinct drivers, need " + std::to_string(params.n_agents));
  std::vector<std::string> driver_ids;
  driver_ids.reserve(pickup_cells_by_driver.size());
  for (const auto& [id, cells] : pickup_cells_by_driver) driver_ids.push_back(id);
  for (int i = 0; i < params.n_agents; ++i) {
    const int j = i + next_int(rng, static_cast<int>(driver_ids.size()) - i);
    std::swap(driver_ids[i], driver_ids[j]);
  }
  driver_ids.resize(params.n_agents);
  std::sort(driver_ids.begin(), driver_ids.end());

  std::vector<int> driver_location(params.n_agents);
  for (int u = 0; u < params.n_agents; ++u) {
    const auto& cells = pickup_cells_by_driver[driver_ids[u]];
    driver_location[u] = cells[next_int(rng, static_cast<int>(cells.size()))];
  }

  // Task types: most frequent (pickup, dropoff) cell pairs.
  std::map<std::pair<int, int>, std::vector<const Filtered*>> by_pair;
  for (const auto& f : rows) by_pair[{f.pickup_cell, f.dropoff_cell}].push_back(&f);
  if (static_cast<int>(by_pair.size()) < params.n_types)
    throw std::runtime_error("insufficient data: " + std::to_string(by_pair.size()) +
                             " distinct location pairs, need " +
                             std::to_string(params.n_types));
  std::vector<std::pair<std::pair<int, int>, const std::vector<const Filtered*>*>> ranked;
  ranked.reserve(by_pair.size());
  for (const auto& [key, recs] : by_pair) ranked.push_back({key, &recs});
  std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.second->size() != b.second->size()) return a.second->size() > b.second->size();
    return a.first < b.first;
  });
  ranked.resize(params.n_types);

  Instance inst;
  inst.horizon = params.horizon;
  std::vector<double> pickup_cost(params.n_agents);
  for (int u = 0; u < params.n_agents; ++u) {
    AgentSpec a;
    a.id = driver_ids[u];
    a.budget = params.budget_mode == BudgetMode::Unlimited ? kUnlimitedBudget
                                                           : 1 + next_int(rng, 3);
    pickup_cost[u] = next_uniform(rng, 0.0, kMeanTripDistance);
    inst.agents.push_back(std::move(a));
  }

  const int slots_per_day = 1440 / params.slot_minutes;
  std::vector<double> mean_distance(params.n_types);
  std::vector<OccupationPmf> type_occ(params.n_types);
  std::vector<std::vector<double>> weights(params.n_types);
  for (int v = 0; v < params.n_types; ++v) {
    const auto& recs = *ranked[v].second;
    TaskTypeSpec tt;
    tt.id = "p" + std::to_string(ranked[v].first.first) + "-d" +
            std::to_string(ranked[v].first.second);
    tt.capacity = params.capacity;
    inst.task_types.push_back(std::move(tt));

    double dist_sum = 0.0;
    std::map<int, double> occ;
    for (const auto* f : recs) {
      dist_sum += f->rec->trip_distance_mi;
      occ[occupation_slots(f->rec->trip_time_min, params.slot_minutes, params.horizon)] += 1.0;
    }
    mean_distance[v] = dist_sum / recs.size();
    if (params.non_reusable) {
      type_occ[v] = OccupationPmf::point_mass(params.horizon);
    } else {
      std::vector<std::pair<int, double>> masses;
      for (const auto& [len, count] : occ) masses.emplace_back(len, count / recs.size());
      type_occ[v] = OccupationPmf(std::move(masses));
    }

    if (params.kiid) {
      weights[v].push_back(static_cast<double>(recs.size()));
    } else {
      weights[v].assign(params.horizon, 0.0);
      for (const auto* f : recs) {
        const int day_slot = (f->minute / params.slot_minutes) % slots_per_day;
        for (int t = day_slot; t < params.horizon; t += slots_per_day) {
          weights[v][t] += 1.0;
        }
      }
    }
  }

  for (int u = 0; u < params.n_agents; ++u) {
    for (int v = 0; v < params.n_types; ++v) {
      if (driver_location[u] != ranked[v].first.first) continue;
      EdgeSpec e;
      e.agent = inst.agents[u].id;
      e.type = inst.task_types[v].id;
      e.weight = std::max(mean_distance[v] - pickup_cost[u], 0.0);
      e.accept_prob = next_uniform(rng, 0.5, 1.0);
      e.occupation = type_occ[v];
      inst.edges.push_back(std::move(e));
    }
  }

  inst.arrival = build_arrivals(params.kiid, weights, params.horizon);
  return inst;
}

}  // namespace otap
