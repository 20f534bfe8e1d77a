#include "fringe/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <mutex>
#include <nlohmann/json.hpp>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <variant>

#include "fringe/constants.hpp"
#include "fringe/increasing.hpp"
#include "fringe/rng.hpp"
#include "fringe/simply_generated.hpp"

namespace fringe {

namespace {

using FamilyModel = std::variant<GwSampler, IncSampler>;

FamilyModel make_model(const std::string& descriptor) {
  try {
    return IncSampler(IncFamily::from_descriptor(descriptor));
  } catch (const std::invalid_argument& e) {
    if (std::string(e.what()).rfind("unknown increasing", 0) != 0) throw;
  }
  return GwSampler(WeightSequence::from_descriptor(descriptor));
}

Tree sample_model(const FamilyModel& model, std::uint64_t n, SplitRng& rng) {
  if (const auto* gw = std::get_if<GwSampler>(&model)) return gw->sample(n, rng);
  return std::get<IncSampler>(model).sample(n, rng).shape;
}

IsoNotion notion_from_string(const std::string& s) {
  if (s == "family") return IsoNotion::AsFamily;
  if (s == "plane") return IsoNotion::Plane;
  if (s == "unordered") return IsoNotion::Unordered;
  throw std::invalid_argument("unknown notion: " + s);
}

}  // namespace

std::uint64_t CensusRecord::distinct_count(IsoNotion notion) const {
  for (auto& [no, count] : distinct)
    if (no == notion) return count;
  throw std::invalid_argument(std::string("record lacks notion ") + to_string(notion));
}

std::vector<IsoNotion> applicable_notions(const std::string& family) {
  bool slotted;
  try {
    slotted = IncFamily::from_descriptor(family).slotted();
  } catch (const std::invalid_argument&) {
    slotted = WeightSequence::from_descriptor(family).slotted();
  }
  if (slotted)
    return {IsoNotion::AsFamily, IsoNotion::Plane, IsoNotion::Unordered};
  return {IsoNotion::Plane, IsoNotion::Unordered};
}

std::vector<CensusRecord> run_census(const ExperimentConfig& config) {
  if (config.sizes.empty()) throw std::invalid_argument("no sizes given");
  if (config.replicates == 0) throw std::invalid_argument("replicates must be positive");

  const FamilyModel model = make_model(config.family);
  std::vector<IsoNotion> notions =
      config.notions.empty() ? applicable_notions(config.family) : config.notions;

  const std::size_t tasks = config.sizes.size() * config.replicates;
  std::vector<CensusRecord> records(tasks);

  std::uint32_t workers = config.workers == 0
                              ? std::max(1u, std::thread::hardware_concurrency())
                              : config.workers;
  workers = static_cast<std::uint32_t>(std::min<std::size_t>(workers, tasks));

  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::string error_message;
  std::mutex error_mutex;

  auto worker = [&]() {
    for (;;) {
      const std::size_t task = next.fetch_add(1);
      if (task >= tasks || failed.load()) break;
      const std::size_t size_index = task / config.replicates;
      const auto replicate = static_cast<std::uint32_t>(task % config.replicates);
      const std::uint64_t n = config.sizes[size_index];
      try {
        SplitRng rng(config.seed, (static_cast<std::uint64_t>(size_index) << 32) | replicate);
        const auto start = std::chrono::steady_clock::now();
        const Tree t = sample_model(model, n, rng);
        TreeCensus census = census_tree(t, notions, config.hist_cap);
        const auto stop = std::chrono::steady_clock::now();

        CensusRecord& rec = records[task];
        rec.family = config.family;
        rec.n = n;
        rec.replicate = replicate;
        rec.distinct = std::move(census.distinct);
        rec.histogram = std::move(census.histogram);
        rec.seconds =
            config.timing ? std::chrono::duration<double>(stop - start).count() : 0.0;
      } catch (const std::exception& e) {
        std::scoped_lock lock(error_mutex);
        failed.store(true);
        if (error_message.empty()) error_message = e.what();
      }
    }
  };

  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::uint32_t i = 0; i < workers; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failed.load()) throw std::runtime_error(error_message);

  if (!config.output_path.empty()) {
    if (config.format == "json") {
      std::ofstream out(config.output_path + ".json");
      if (!out) throw std::runtime_error("cannot write " + config.output_path + ".json");
      write_census_json(records, out);
    } else if (config.format == "csv") {
      std::ofstream main_out(config.output_path + ".csv");
      std::ofstream hist_out(config.output_path + "_hist.csv");
      if (!main_out || !hist_out)
        throw std::runtime_error("cannot write " + config.output_path + ".csv");
      write_census_csv(records, main_out, hist_out);
    } else {
      throw std::invalid_argument("unknown output format: " + config.format);
    }
  }
  return records;
}

namespace {

std::string format_seconds(double seconds) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", seconds);
  return buf;
}

}  // namespace

void write_census_csv(std::span<const CensusRecord> records, std::ostream& main_out,
                      std::ostream& hist_out) {
  main_out << "# fringe census schema 1\n";
  main_out << "family,n,replicate,notion,distinct_count,seconds\n";
  for (const CensusRecord& rec : records)
    for (auto [notion, count] : rec.distinct)
      main_out << rec.family << ',' << rec.n << ',' << rec.replicate << ','
               << to_string(notion) << ',' << count << ',' << format_seconds(rec.seconds)
               << '\n';

  hist_out << "# fringe census histogram schema 1 (k = 0 collects sizes above the cap)\n";
  hist_out << "family,n,replicate,k,z\n";
  for (const CensusRecord& rec : records)
    for (auto [k, z] : rec.histogram)
      hist_out << rec.family << ',' << rec.n << ',' << rec.replicate << ',' << k << ',' << z
               << '\n';
}

void write_census_json(std::span<const CensusRecord> records, std::ostream& out) {
  nlohmann::json root;
  root["schema"] = 1;
  nlohmann::json rows = nlohmann::json::array();
  for (const CensusRecord& rec : records) {
    nlohmann::json row;
    row["family"] = rec.family;
    row["n"] = rec.n;
    row["replicate"] = rec.replicate;
    nlohmann::json distinct;
    for (auto [notion, count] : rec.distinct) distinct[to_string(notion)] = count;
    row["distinct"] = distinct;
    nlohmann::json hist = nlohmann::json::array();
    for (auto [k, z] : rec.histogram) hist.push_back({k, z});
    row["histogram"] = hist;
    row["seconds"] = rec.seconds;
    rows.push_back(std::move(row));
  }
  root["records"] = std::move(rows);
  out << root.dump(2) << '\n';
}

std::vector<CensusRecord> read_census_csv(std::istream& main_in) {
  std::vector<CensusRecord> records;
  std::string line;
  CensusRecord* current = nullptr;
  while (std::getline(main_in, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("family,", 0) == 0) continue;
    std::stringstream ss(line);
    std::string family, n_str, rep_str, notion_str, count_str, seconds_str;
    if (!std::getline(ss, family, ',') || !std::getline(ss, n_str, ',') ||
        !std::getline(ss, rep_str, ',') || !std::getline(ss, notion_str, ',') ||
        !std::getline(ss, count_str, ',') || !std::getline(ss, seconds_str))
      throw std::runtime_error("malformed census row: " + line);
    const std::uint64_t n = std::stoull(n_str);
    const auto rep = static_cast<std::uint32_t>(std::stoul(rep_str));
    if (current == nullptr || current->family != family || current->n != n ||
        current->replicate != rep) {
      records.emplace_back();
      current = &records.back();
      current->family = family;
      current->n = n;
      current->replicate = rep;
      current->seconds = std::stod(seconds_str);
    }
    current->distinct.emplace_back(notion_from_string(notion_str), std::stoull(count_str));
  }
  return records;
}

std::vector<BandRow> compare_to_theory(std::span<const CensusRecord> records,
                                       const std::string& family, IsoNotion notion) {
  const TheoryBand band = theory_band(family, notion);

  std::map<std::uint64_t, std::vector<double>> by_size;
  for (const CensusRecord& rec : records) {
    if (rec.family != family) continue;
    const double n = static_cast<double>(rec.n);
    const double scale = band.increasing ? std::log(n) / n : std::sqrt(std::log(n)) / n;
    by_size[rec.n].push_back(static_cast<double>(rec.distinct_count(notion)) * scale);
  }
  if (by_size.empty())
    throw std::invalid_argument("no records for family " + family);

  std::vector<BandRow> rows;
  for (auto& [n, values] : by_size) {
    std::sort(values.begin(), values.end());
    BandRow row;
    row.n = n;
    row.records = values.size();
    double sum = 0.0;
    for (double v : values) sum += v;
    row.mean = sum / static_cast<double>(values.size());
    const std::size_t mid = values.size() / 2;
    row.median = values.size() % 2 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
    row.lower = band.lower;
    row.upper = band.upper;
    row.inside = row.median >= band.lower && row.median <= band.upper;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace fringe
