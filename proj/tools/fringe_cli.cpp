// Command line front end: sampling, fringe censuses, minimal DAGs, family
// enumeration, the constants table, and seeded Monte Carlo experiments.
//
// Exit codes: 0 success, 2 usage error, 3 runtime failure.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <optional>
#include <sstream>
#include <variant>

#include "fringe/canonical.hpp"
#include "fringe/census.hpp"
#include "fringe/constants.hpp"
#include "fringe/experiments.hpp"
#include "fringe/increasing.hpp"
#include "fringe/rng.hpp"
#include "fringe/simply_generated.hpp"
#include "fringe/tree.hpp"

namespace {

using namespace fringe;

IsoNotion parse_notion(const std::string& name) {
  if (name == "family") return IsoNotion::AsFamily;
  if (name == "plane") return IsoNotion::Plane;
  if (name == "unordered") return IsoNotion::Unordered;
  throw CLI::ValidationError("--notion", "expected family|plane|unordered");
}

std::vector<IsoNotion> parse_notions(const std::string& csv, const std::string& family) {
  if (csv.empty() || csv == "all") return applicable_notions(family);
  std::vector<IsoNotion> notions;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) notions.push_back(parse_notion(item));
  return notions;
}

bool is_increasing_family(const std::string& descriptor) {
  try {
    IncFamily::from_descriptor(descriptor);
    return true;
  } catch (const std::invalid_argument&) {
    return false;
  }
}

int run_sample(const std::string& family, std::uint64_t n, std::uint64_t seed,
               std::uint32_t count, bool labels) {
  if (is_increasing_family(family)) {
    IncSampler sampler(IncFamily::from_descriptor(family));
    for (std::uint32_t i = 0; i < count; ++i) {
      SplitRng rng(seed, i);
      LabeledTree lt = sampler.sample(n, rng);
      std::cout << serialize_tree(lt.shape);
      if (labels) {
        std::cout << ';';
        for (std::size_t v = 0; v < lt.labels.size(); ++v)
          std::cout << (v ? "," : "") << lt.labels[v];
      }
      std::cout << '\n';
    }
    return 0;
  }
  GwSampler sampler(WeightSequence::from_descriptor(family));
  for (std::uint32_t i = 0; i < count; ++i) {
    SplitRng rng(seed, i);
    std::cout << serialize_tree(sampler.sample(n, rng)) << '\n';
  }
  return 0;
}

int run_dag(const std::string& notion_name, int arity, const std::string& input,
            bool full_export) {
  IsoNotion notion = parse_notion(notion_name);
  std::ifstream file;
  std::istream* in = &std::cin;
  if (!input.empty()) {
    file.open(input);
    if (!file) throw std::runtime_error("cannot read " + input);
    in = &file;
  }
  std::string line;
  while (std::getline(*in, line)) {
    if (line.empty()) continue;
    Tree t = arity > 0 ? parse_tree_slotted(line, arity) : parse_tree(line);
    if (full_export) {
      std::cout << export_minimal_dag(build_minimal_dag(t, notion));
    } else {
      std::cout << count_distinct_fringe(t, notion) << '\n';
    }
  }
  return 0;
}

int run_enumerate(const std::string& family, std::uint64_t n, const std::string& format) {
  nlohmann::json rows = nlohmann::json::array();
  const bool json = format == "json";
  if (is_increasing_family(family)) {
    IncFamily f = IncFamily::from_descriptor(family);
    for (auto& [lt, p] : enumerate_increasing(n, f)) {
      std::ostringstream labels;
      for (std::size_t v = 0; v < lt.labels.size(); ++v)
        labels << (v ? "," : "") << lt.labels[v];
      std::ostringstream prob;
      prob << p;
      if (json) {
        rows.push_back({{"shape", serialize_tree(lt.shape)},
                        {"labels", labels.str()},
                        {"probability", prob.str()}});
      } else {
        std::cout << serialize_tree(lt.shape) << ';' << labels.str() << ',' << prob.str()
                  << '\n';
      }
    }
  } else {
    WeightSequence w = WeightSequence::from_descriptor(family);
    for (auto& [t, weight] : enumerate_family(n, w)) {
      if (json) {
        rows.push_back({{"shape", serialize_tree(t)}, {"weight", weight}});
      } else {
        std::cout << serialize_tree(t) << ',' << weight << '\n';
      }
    }
  }
  if (json) std::cout << rows.dump(2) << '\n';
  return 0;
}

int run_constants(const std::string& id, const std::string& format) {
  std::vector<ConstantResult> rows;
  if (!id.empty()) {
    rows.push_back(theorem_constant(id));
  } else {
    for (const std::string& known : constant_ids()) rows.push_back(theorem_constant(known));
  }

  if (format == "json") {
    nlohmann::json out = nlohmann::json::array();
    for (const ConstantResult& r : rows) {
      nlohmann::json row = {{"id", r.id},
                            {"value", r.value},
                            {"error_bound", r.error_bound},
                            {"method", r.method}};
      if (r.published) row["published"] = *r.published;
      if (!r.note.empty()) row["note"] = r.note;
      out.push_back(std::move(row));
    }
    std::cout << out.dump(2) << '\n';
    return 0;
  }
  const char* sep = format == "csv" ? "," : "  ";
  if (format == "csv") std::cout << "id,value,error_bound,published,method\n";
  for (const ConstantResult& r : rows) {
    char value[40], err[24];
    std::snprintf(value, sizeof(value), "%.12f", r.value);
    std::snprintf(err, sizeof(err), "%.2e", r.error_bound);
    std::cout << r.id << sep << value << sep << err << sep;
    if (r.published) {
      char pub[40];
      std::snprintf(pub, sizeof(pub), "%.10f", *r.published);
      std::cout << pub;
    } else if (format != "csv") {
      std::cout << "-";
    }
    std::cout << sep << r.method << '\n';
  }
  return 0;
}

void print_band_rows(const std::vector<BandRow>& rows, const std::string& family,
                     IsoNotion notion, const std::string& format) {
  if (format == "json") {
    nlohmann::json out = nlohmann::json::array();
    for (const BandRow& row : rows)
      out.push_back({{"family", family},
                     {"notion", to_string(notion)},
                     {"n", row.n},
                     {"records", row.records},
                     {"mean", row.mean},
                     {"median", row.median},
                     {"lower", row.lower},
                     {"upper", row.upper},
                     {"inside", row.inside}});
    std::cout << out.dump(2) << '\n';
    return;
  }
  std::cout << "family,notion,n,records,mean,median,lower,upper,inside\n";
  for (const BandRow& row : rows) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%s,%s,%llu,%llu,%.6f,%.6f,%.6f,%.6f,%d", family.c_str(),
                  to_string(notion), static_cast<unsigned long long>(row.n),
                  static_cast<unsigned long long>(row.records), row.mean, row.median,
                  row.lower, row.upper, row.inside ? 1 : 0);
    std::cout << buf << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"random-tree fringe subtree census toolkit"};
  app.require_subcommand(1);

  // ---- sample
  auto* sample = app.add_subcommand("sample", "draw random trees, one per line");
  std::string sample_family = "plane";
  std::uint64_t sample_n = 10, sample_seed = 0;
  std::uint32_t sample_count = 1;
  bool sample_labels = false;
  sample->add_option("--family", sample_family, "family descriptor");
  sample->add_option("--n", sample_n, "tree size")->required();
  sample->add_option("--seed", sample_seed, "random seed");
  sample->add_option("--count", sample_count, "number of trees");
  sample->add_flag("--labels", sample_labels, "append increasing labels");

  // ---- census
  auto* census = app.add_subcommand("census", "sample trees and count distinct fringe subtrees");
  ExperimentConfig config;
  std::string census_sizes, census_notions;
  census->add_option("--family", config.family, "family descriptor")->required();
  census->add_option("--sizes", census_sizes, "comma separated tree sizes")->required();
  census->add_option("--replicates", config.replicates, "replicates per size");
  census->add_option("--seed", config.seed, "random seed");
  census->add_option("--notions", census_notions, "family,plane,unordered (default: applicable)");
  census->add_option("--out", config.output_path, "output base path");
  census->add_option("--format", config.format, "csv|json");
  census->add_option("--workers", config.workers, "worker threads (0 = hardware)");
  census->add_option("--hist-cap", config.hist_cap, "histogram size cap");
  census->add_flag("--timing", config.timing, "record wall times (breaks byte determinism)");

  // ---- dag
  auto* dag = app.add_subcommand("dag", "minimal DAG sizes for trees read one per line");
  std::string dag_notion = "plane", dag_input;
  int dag_arity = 0;
  bool dag_export = false;
  dag->add_option("--notion", dag_notion, "family|plane|unordered");
  dag->add_option("--arity", dag_arity, "parse slotted trees with this arity");
  dag->add_option("--in", dag_input, "input file (default: stdin)");
  dag->add_flag("--export", dag_export, "print full DAG exports instead of node counts");

  // ---- enumerate
  auto* enumerate = app.add_subcommand("enumerate", "list all trees of a family and size");
  std::string enum_family = "plane", enum_format = "csv";
  std::uint64_t enum_n = 4;
  enumerate->add_option("--family", enum_family, "family descriptor");
  enumerate->add_option("--n", enum_n, "tree size")->required();
  enumerate->add_option("--format", enum_format, "csv|json");

  // ---- constants
  auto* constants = app.add_subcommand("constants", "asymptotic constants table");
  std::string const_id, const_format = "table";
  constants->add_option("--id", const_id, "single constant id");
  constants->add_option("--format", const_format, "table|csv|json");

  // ---- experiment
  auto* experiment =
      app.add_subcommand("experiment", "census plus comparison against the constant bands");
  ExperimentConfig exp_config;
  std::string exp_sizes, exp_notion, exp_format = "csv";
  experiment->add_option("--family", exp_config.family, "family descriptor")->required();
  experiment->add_option("--sizes", exp_sizes, "comma separated tree sizes")->required();
  experiment->add_option("--replicates", exp_config.replicates, "replicates per size");
  experiment->add_option("--seed", exp_config.seed, "random seed");
  experiment->add_option("--notion", exp_notion, "notion to compare (default: all with bands)");
  experiment->add_option("--out", exp_config.output_path, "also write census files");
  experiment->add_option("--workers", exp_config.workers, "worker threads");
  experiment->add_option("--format", exp_format, "csv|json");

  // ---- compare
  auto* compare = app.add_subcommand("compare", "compare census records to the constant bands");
  std::string cmp_family, cmp_notion = "unordered", cmp_records, cmp_format = "csv";
  compare->add_option("--family", cmp_family, "family descriptor")->required();
  compare->add_option("--notion", cmp_notion, "family|plane|unordered");
  compare->add_option("--records", cmp_records, "census csv file")->required();
  compare->add_option("--format", cmp_format, "csv|json");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sample->parsed())
      return run_sample(sample_family, sample_n, sample_seed, sample_count, sample_labels);

    if (census->parsed()) {
      std::stringstream ss(census_sizes);
      std::string item;
      while (std::getline(ss, item, ',')) config.sizes.push_back(std::stoull(item));
      config.notions = parse_notions(census_notions, config.family);
      auto records = run_census(config);
      if (config.output_path.empty()) {
        std::ostringstream hist_sink;
        write_census_csv(records, std::cout, hist_sink);
      }
      return 0;
    }

    if (dag->parsed()) return run_dag(dag_notion, dag_arity, dag_input, dag_export);
    if (enumerate->parsed()) return run_enumerate(enum_family, enum_n, enum_format);
    if (constants->parsed()) return run_constants(const_id, const_format);

    if (experiment->parsed()) {
      std::stringstream ss(exp_sizes);
      std::string item;
      while (std::getline(ss, item, ',')) exp_config.sizes.push_back(std::stoull(item));
      auto records = run_census(exp_config);
      std::vector<IsoNotion> notions;
      if (!exp_notion.empty()) {
        notions.push_back(parse_notion(exp_notion));
      } else {
        for (IsoNotion notion : applicable_notions(exp_config.family)) {
          try {
            theory_band(exp_config.family, notion);
            notions.push_back(notion);
          } catch (const std::invalid_argument&) {
          }
        }
        if (notions.empty())
          throw std::invalid_argument("no constant bands known for " + exp_config.family);
      }
      for (IsoNotion notion : notions)
        print_band_rows(compare_to_theory(records, exp_config.family, notion),
                        exp_config.family, notion, exp_format);
      return 0;
    }

    if (compare->parsed()) {
      std::ifstream in(cmp_records);
      if (!in) throw std::runtime_error("cannot read " + cmp_records);
      auto records = read_census_csv(in);
      IsoNotion notion = parse_notion(cmp_notion);
      print_band_rows(compare_to_theory(records, cmp_family, notion), cmp_family, notion,
                      cmp_format);
      return 0;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 2;
}
