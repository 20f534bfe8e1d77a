#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "fringe/census.hpp"

namespace fringe {

/// A reproducible Monte Carlo census run. Each (size, replicate) pair draws
/// from its own random stream keyed by (seed, size index, replicate), so the
/// output is byte-identical for any worker count. Wall times are recorded
/// only when `timing` is set, since they would break that determinism.
struct ExperimentConfig {
  std::string family;  // descriptor, echoed into the output
  std::vector<std::uint64_t> sizes;
  std::uint32_t replicates = 1;
  std::uint64_t seed = 0;
  std::vector<IsoNotion> notions;  // empty = all applicable for the family
  std::string output_path;         // base path; empty = no files written
  std::string format = "csv";      // csv | json
  std::uint32_t workers = 1;       // 0 = hardware concurrency
  std::uint32_t hist_cap = 10000;
  bool timing = false;
};

struct CensusRecord {
  std::string family;
  std::uint64_t n = 0;
  std::uint32_t replicate = 0;
  std::vector<std::pair<IsoNotion, std::uint64_t>> distinct;
  std::vector<std::pair<std::uint32_t, std::uint64_t>> histogram;  // k = 0 is overflow
  double seconds = 0.0;

  std::uint64_t distinct_count(IsoNotion notion) const;
};

/// Sample and census replicates x sizes trees. Records come back sorted by
/// (size index, replicate). When output_path is set, also writes the CSV
/// pair (<path>.csv, <path>_hist.csv) or <path>.json.
std::vector<CensusRecord> run_census(const ExperimentConfig& config);

void write_census_csv(std::span<const CensusRecord> records, std::ostream& main_out,
                      std::ostream& hist_out);
void write_census_json(std::span<const CensusRecord> records, std::ostream& out);
std::vector<CensusRecord> read_census_csv(std::istream& main_in);

/// Normalized comparison against the established constant band: per size,
/// the mean and median of count * sqrt(ln n)/n (simply generated families)
/// or count * ln n / n (increasing families).
struct BandRow {
  std::uint64_t n = 0;
  std::uint64_t records = 0;
  double mean = 0.0;
  double median = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  bool inside = false;  // median within [lower, upper]
};

std::vector<BandRow> compare_to_theory(std::span<const CensusRecord> records,
                                       const std::string& family, IsoNotion notion);

/// Default notions for a family descriptor: all three for slotted families,
/// plane + unordered otherwise.
std::vector<IsoNotion> applicable_notions(const std::string& family);

}  // namespace fringe
