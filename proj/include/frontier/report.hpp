#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"

#include "frontier/harness.hpp"
#include "frontier/sampling.hpp"

namespace frontier {

enum class OutputFormat { Json, Csv, Table };

std::optional<OutputFormat> parse_output_format(std::string_view text);

/// "asset-in,weight-down" style names for a tabu list mask; "none" for 0.
std::string tabu_list_names(unsigned lists);
/// Inverse of tabu_list_names; also accepts "all". nullopt on an unknown name.
std::optional<unsigned> parse_tabu_lists(std::string_view text);

std::string_view to_string(Cooling c);
std::optional<Cooling> parse_cooling(std::string_view text);

/// %.17g; round-trips every double.
std::string csv_number(double x);
/// Fixed, 4 decimals.
std::string table_number(double x);

/// Inputs of a single run that belong in its report.
struct RunContext {
  std::string dataset;
  std::size_t assets = 0;
  std::uint64_t seed = 1;
  std::size_t k = 10;
  double min_weight = 0.01;
  std::size_t lambda_count = 50;
  double budget_seconds = 0.0;
  std::optional<std::uint64_t> sweep_cap;
};

nlohmann::json profile_json(const AlgorithmProfile& profile);
nlohmann::json host_json(const HostInfo& host);

nlohmann::json run_json(const RunContext& context, const RunOutcome& outcome);
nlohmann::json bench_json(const AggregateReport& report);
nlohmann::json tuning_json(const TabuTuningReport& report);
nlohmann::json sampling_json(const std::string& dataset, std::uint64_t seed, const SamplingComparison& data,
                             const Uef* uef);
nlohmann::json trace_json(const RunContext& context, const FrontierTrace& trace);

/// Asset indices in every format are 1-based, as in the data files.
void write_run(std::ostream& out, OutputFormat format, const RunContext& context, const RunOutcome& outcome);
void write_bench(std::ostream& out, OutputFormat format, const AggregateReport& report);
void write_tuning(std::ostream& out, OutputFormat format, const TabuTuningReport& report);
void write_sampling(std::ostream& out, OutputFormat format, const std::string& dataset, std::uint64_t seed,
                    const SamplingComparison& data, const Uef* uef);
void write_trace(std::ostream& out, OutputFormat format, const RunContext& context, const FrontierTrace& trace);

}  // namespace frontier
