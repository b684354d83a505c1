#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "otap/generator.hpp"
#include "otap/model.hpp"

namespace otap {

struct TripRecord {
  std::string driver_id;
  double pickup_lon = 0.0, pickup_lat = 0.0;
  double dropoff_lon = 0.0, dropoff_lat = 0.0;
  std::string pickup_datetime;  // "YYYY-MM-DD HH:MM:SS"
  double trip_time_min = 0.0;
  double trip_distance_mi = 0.0;
};

// Header: driver_id,pickup_lon,pickup_lat,dropoff_lon,dropoff_lat,
//         pickup_datetime,trip_time_min,trip_distance_mi
std::vector<TripRecord> parse_trip_records(std::istream& in);
std::vector<TripRecord> read_trip_records(const std::string& path);

struct IngestParams {
  int n_agents = 30;
  int n_types = 100;
  int horizon = 288;
  int capacity = 4;
  BudgetMode budget_mode = BudgetMode::Uniform123;
  bool kiid = false;
  bool non_reusable = false;
  int slot_minutes = 5;
  // Optional pickup-hour filter [hour_min, hour_max); -1 disables.
  int hour_min = -1;
  int hour_max = -1;
};

// Builds an instance from trip records: drivers are sampled as agents, the
// most frequent (pickup cell, dropoff cell) pairs become task types, edges
// connect drivers parked at the pickup cell, profits are trip distance minus
// a random pickup cost, and occupation times come from the empirical
// distribution of 2 * trip_time + 5 minutes in slot units.
// Throws std::runtime_error naming the deficient dimension when fewer
// drivers or location pairs are present than requested.
Instance ingest_trip_records(const std::vector<TripRecord>& records,
                             const IngestParams& params, std::uint64_t seed);

// Slot count for one trip: ceil((2 * trip_time + 5) / slot_minutes),
// clamped to [1, horizon].
int occupation_slots(double trip_time_min, int slot_minutes, int horizon);

// Grid cell id over lon [-75, -73], lat [40.4, 40.95] with step 0.05, or -1
// outside the box.
int grid_cell(double lon, double lat);

}  // namespace otap
