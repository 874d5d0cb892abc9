#include "frontier/report.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>

namespace frontier {

using nlohmann::json;

std::optional<OutputFormat> parse_output_format(std::string_view text) {
  if (text == "json") return OutputFormat::Json;
  if (text == "csv") return OutputFormat::Csv;
  if (text == "table") return OutputFormat::Table;
  return std::nullopt;
}

namespace {

struct ListName {
  unsigned flag;
  std::string_view name;
};

constexpr ListName kListNames[] = {
    {kAssetInList, "asset-in"},
    {kAssetOutList, "asset-out"},
    {kWeightUpList, "weight-up"},
    {kWeightDownList, "weight-down"},
};

json list_array(unsigned lists) {
  json out = json::array();
  for (const auto& n : kListNames) {
    if (lists & n.flag) out.push_back(n.name);
  }
  return out;
}

}  // namespace

std::string tabu_list_names(unsigned lists) {
  std::string out;
  for (const auto& n : kListNames) {
    if (!(lists & n.flag)) continue;
    if (!out.empty()) out += ',';
    out += n.name;
  }
  return out.empty() ? "none" : out;
}

std::optional<unsigned> parse_tabu_lists(std::string_view text) {
  unsigned lists = 0;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const std::string_view item = text.substr(0, comma);
    if (item == "all") {
      lists = kAssetInList | kAssetOutList | kWeightUpList | kWeightDownList;
    } else if (item != "none") {
      const auto it = std::find_if(std::begin(kListNames), std::end(kListNames),
                                   [&](const ListName& n) { return n.name == item; });
      if (it == std::end(kListNames)) return std::nullopt;
      lists |= it->flag;
    }
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return lists;
}

std::string_view to_string(Cooling c) { return c == Cooling::PerStep ? "per-step" : "per-sweep"; }

std::optional<Cooling> parse_cooling(std::string_view text) {
  if (text == "per-sweep") return Cooling::PerSweep;
  if (text == "per-step") return Cooling::PerStep;
  return std::nullopt;
}

std::string csv_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string table_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4f", x);
  return buf;
}

namespace {

std::string budget_label(double seconds) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%g", seconds);
  return buf;
}

/// Column-aligned text: first column left-aligned, the rest right-aligned.
class TextTable {
 public:
  explicit TextTable(std::vector<std::string> header) { rows_.push_back(std::move(header)); }
  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  void print(std::ostream& out) const {
    std::vector<std::size_t> width;
    for (const auto& row : rows_) {
      width.resize(std::max(width.size(), row.size()), 0);
      for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
    }
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const auto& row = rows_[r];
      std::string line;
      for (std::size_t c = 0; c < row.size(); ++c) {
        const std::string pad(width[c] - row[c].size(), ' ');
        if (c > 0) line += "  ";
        line += c == 0 ? row[c] + pad : pad + row[c];
      }
      while (!line.empty() && line.back() == ' ') line.pop_back();
      out << line << '\n';
      if (r == 0) {
        std::size_t total = 0;
        for (const auto w : width) total += w;
        out << std::string(total + 2 * (width.size() - 1), '-') << '\n';
      }
    }
  }

 private:
  std::vector<std::vector<std::string>> rows_;
};

json holdings_json(const Portfolio& p) {
  json out = json::array();
  for (const auto& h : p.holdings()) out.push_back({{"asset", h.asset + 1}, {"weight", h.weight}});
  return out;
}

std::string holdings_text(const Portfolio& p) {
  std::string out;
  for (const auto& h : p.holdings()) {
    if (!out.empty()) out += ';';
    out += std::to_string(h.asset + 1) + ':' + csv_number(h.weight);
  }
  return out;
}

json stop_json(const RunContext& c) {
  if (c.sweep_cap) return {{"kind", "iterations"}, {"sweeps", *c.sweep_cap}};
  return {{"kind", "budget"}, {"seconds", c.budget_seconds}};
}

json stats_json(const RunStats& s, bool timed) {
  json out = {{"sweeps", s.sweeps},
              {"evaluations", s.evaluations},
              {"pool_size", s.pool_size},
              {"worsening_proposed", s.worsening_proposed},
              {"worsening_accepted", s.worsening_accepted},
              {"acceptance_rate", s.acceptance_rate()},
              {"final_temperature", s.final_temperature}};
  if (timed) {
    out["init_seconds"] = s.init_seconds;
    out["elapsed_seconds"] = s.elapsed_seconds;
  }
  return out;
}

json evaluation_json(const ErrorReport& e, const SolutionSet& solutions) {
  json errors = json::array();
  for (std::size_t i = 0; i < e.evaluated.size(); ++i) {
    const std::size_t idx = e.evaluated[i];
    errors.push_back({{"index", idx}, {"lambda", solutions.entries[idx].lambda}, {"error_pct", e.errors[i]}});
  }
  return {{"method", to_string(e.method)},
          {"dominance_filtered", e.dominance_filtered},
          {"mpe", e.mpe},
          {"errors", errors}};
}

json context_json(const RunContext& c) {
  return {{"dataset", c.dataset}, {"assets", c.assets}, {"seed", c.seed},   {"k", c.k},
          {"min_weight", c.min_weight}, {"lambda_count", c.lambda_count}, {"stop", stop_json(c)}};
}

std::optional<double> error_for(const ErrorReport& e, std::size_t index) {
  const auto it = std::find(e.evaluated.begin(), e.evaluated.end(), index);
  if (it == e.evaluated.end()) return std::nullopt;
  return e.errors[static_cast<std::size_t>(it - e.evaluated.begin())];
}

}  // namespace

json profile_json(const AlgorithmProfile& profile) {
  return std::visit(
      [](const auto& p) -> json {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, SaProfile>) {
          return {{"t_max", p.t_max}, {"alpha", p.alpha}, {"cooling", to_string(p.cooling)}};
        } else if constexpr (std::is_same_v<P, TsProfile>) {
          return {{"subset_size", p.subset_size},
                  {"tenure", p.tenure},
                  {"tabu_lists", list_array(p.active_lists)},
                  {"aspiration", p.aspiration}};
        } else {
          return {{"population_size", p.population_size},
                  {"pool_size", p.pool_size},
                  {"p_replace", p.p_replace},
                  {"p_weights", p.p_weights}};
        }
      },
      profile);
}

json host_json(const HostInfo& host) { return {{"cpu_model", host.cpu_model}, {"logical_cores", host.logical_cores}}; }

json run_json(const RunContext& context, const RunOutcome& outcome) {
  json out = {{"command", "run"}};
  out.update(context_json(context));
  out["algorithm"] = to_string(algorithm_of(outcome.profile));
  out["profile"] = profile_json(outcome.profile);
  out["stats"] = stats_json(outcome.result.stats, outcome.timed);
  if (outcome.timed) out["host"] = host_json(host_info());
  json portfolios = json::array();
  for (const auto& e : outcome.result.solutions.entries) {
    portfolios.push_back({{"lambda", e.lambda},
                          {"objective", e.objective},
                          {"mean_return", e.stats.mean_return},
                          {"std_dev", e.stats.std_dev},
                          {"variance", e.stats.variance},
                          {"holdings", holdings_json(e.portfolio)}});
  }
  out["portfolios"] = std::move(portfolios);
  if (outcome.errors) out["evaluation"] = evaluation_json(*outcome.errors, outcome.result.solutions);
  return out;
}

json bench_json(const AggregateReport& r) {
  json cells = json::array();
  for (const auto& c : r.cells) {
    json cell = {{"dataset", c.dataset},     {"algorithm", to_string(c.algorithm)},
                 {"budget_s", c.budget_seconds}, {"repetitions", c.mpes.size()},
                 {"seeds", c.seeds},         {"mpes", c.mpes},
                 {"mpe_mean", c.mpe_mean},   {"mpe_std", c.mpe_std}};
    if (r.timed) cell["wall_seconds"] = c.wall_seconds;
    cells.push_back(std::move(cell));
  }
  json averages = json::array();
  for (const auto& a : r.averages) {
    averages.push_back({{"algorithm", to_string(a.algorithm)},
                        {"budget_s", a.budget_seconds},
                        {"datasets", a.datasets},
                        {"mpe_mean", a.mpe_mean},
                        {"mpe_std", a.mpe_std}});
  }
  json improvements = json::array();
  for (const auto& i : r.improvements) {
    improvements.push_back({{"dataset", i.dataset},
                            {"algorithm", to_string(i.algorithm)},
                            {"from_budget_s", i.from_budget},
                            {"to_budget_s", i.to_budget},
                            {"earlier_mpe", i.earlier_mpe},
                            {"later_mpe", i.later_mpe},
                            {"improvement_pct", i.improvement}});
  }
  json failures = json::array();
  for (const auto& f : r.failures) failures.push_back({{"dataset", f.dataset}, {"message", f.message}});
  json out = {{"command", "bench"},
              {"method", to_string(r.method)},
              {"dominance_filtered", r.dominance_filtered},
              {"budgets", r.budgets},
              {"cells", cells},
              {"averages", averages},
              {"improvements", improvements},
              {"failures", failures}};
  if (r.timed) out["host"] = host_json(r.host);
  return out;
}

json tuning_json(const TabuTuningReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"tenure", row.tenure},
                    {"tabu_lists", list_array(row.lists)},
                    {"mpe", row.mpe_per_budget},
                    {"average", row.average}});
  }
  json out = {{"command", "tune-tabu"}, {"budgets", r.budgets}, {"rows", rows}};
  if (r.timed) out["host"] = host_json(r.host);
  return out;
}

json sampling_json(const std::string& dataset, std::uint64_t seed, const SamplingComparison& data, const Uef* uef) {
  auto stream = [](const std::vector<ScatterRecord>& records) {
    json out = json::array();
    for (const auto& r : records) out.push_back({{"std_dev", r.std_dev}, {"mean_return", r.mean_return}});
    return out;
  };
  json out = {{"command", "compare-sampling"},
              {"dataset", dataset},
              {"seed", seed},
              {"n", data.sequential.size()},
              {"sequential", stream(data.sequential)},
              {"independent", stream(data.independent)}};
  if (uef) {
    json frontier = json::array();
    for (const auto& p : uef->points()) frontier.push_back({{"std_dev", p.std_dev}, {"mean_return", p.mean_return}});
    out["frontier"] = std::move(frontier);
  }
  return out;
}

json trace_json(const RunContext& context, const FrontierTrace& trace) {
  json out = {{"command", "frontier"}};
  out.update(context_json(context));
  out["algorithm"] = to_string(trace.algorithm);
  json solutions = json::array();
  for (const auto& s : trace.solutions) {
    solutions.push_back({{"lambda", s.lambda}, {"std_dev", s.std_dev}, {"mean_return", s.mean_return}});
  }
  json frontier = json::array();
  for (const auto& p : trace.frontier) frontier.push_back({{"std_dev", p.std_dev}, {"mean_return", p.mean_return}});
  out["solutions"] = std::move(solutions);
  out["frontier"] = std::move(frontier);
  if (trace.outcome.errors) out["mpe"] = trace.outcome.errors->mpe;
  return out;
}

void write_run(std::ostream& out, OutputFormat format, const RunContext& context, const RunOutcome& outcome) {
  const auto& entries = outcome.result.solutions.entries;
  const ErrorReport* errors = outcome.errors ? &*outcome.errors : nullptr;
  switch (format) {
    case OutputFormat::Json:
      out << run_json(context, outcome).dump(2) << '\n';
      return;
    case OutputFormat::Csv:
      out << "lambda,objective,mean_return,std_dev,variance,error_pct,holdings\n";
      for (std::size_t i = 0; i < entries.size(); ++i) {
        const auto& e = entries[i];
        const auto err = errors ? error_for(*errors, i) : std::nullopt;
        out << csv_number(e.lambda) << ',' << csv_number(e.objective) << ',' << csv_number(e.stats.mean_return)
            << ',' << csv_number(e.stats.std_dev) << ',' << csv_number(e.stats.variance) << ','
            << (err ? csv_number(*err) : "") << ',' << holdings_text(e.portfolio) << '\n';
      }
      if (errors) {
        out << "\nmethod,dominance_filtered,evaluated,mpe\n"
            << to_string(errors->method) << ',' << (errors->dominance_filtered ? "true" : "false") << ','
            << errors->evaluated.size() << ',' << csv_number(errors->mpe) << '\n';
      }
      return;
    case OutputFormat::Table: {
      out << context.dataset << "  " << to_string(algorithm_of(outcome.profile)) << "  seed " << context.seed
          << "  sweeps " << outcome.result.stats.sweeps << '\n';
      TextTable t({"lambda", "objective", "return", "std_dev", "error_pct"});
      for (std::size_t i = 0; i < entries.size(); ++i) {
        const auto& e = entries[i];
        const auto err = errors ? error_for(*errors, i) : std::nullopt;
        t.add({table_number(e.lambda), table_number(e.objective), table_number(e.stats.mean_return),
               table_number(e.stats.std_dev), err ? table_number(*err) : "-"});
      }
      t.print(out);
      if (errors) out << "MPE (" << to_string(errors->method) << "): " << table_number(errors->mpe) << '\n';
      return;
    }
  }
}

void write_bench(std::ostream& out, OutputFormat format, const AggregateReport& r) {
  switch (format) {
    case OutputFormat::Json:
      out << bench_json(r).dump(2) << '\n';
      return;
    case OutputFormat::Csv:
      out << "dataset,algorithm,budget_s,repetitions,mpe_mean,mpe_std\n";
      for (const auto& c : r.cells) {
        out << c.dataset << ',' << to_string(c.algorithm) << ',' << csv_number(c.budget_seconds) << ','
            << c.mpes.size() << ',' << csv_number(c.mpe_mean) << ',' << csv_number(c.mpe_std) << '\n';
      }
      for (const auto& a : r.averages) {
        out << "Average," << to_string(a.algorithm) << ',' << csv_number(a.budget_seconds) << ',' << a.datasets
            << ',' << csv_number(a.mpe_mean) << ',' << csv_number(a.mpe_std) << '\n';
      }
      out << "\ndataset,algorithm,from_budget_s,to_budget_s,improvement_pct\n";
      for (const auto& i : r.improvements) {
        out << i.dataset << ',' << to_string(i.algorithm) << ',' << csv_number(i.from_budget) << ','
            << csv_number(i.to_budget) << ',' << csv_number(i.improvement) << '\n';
      }
      return;
    case OutputFormat::Table: {
      // Columns: algorithm x budget, in plan order; rows: datasets then Average.
      std::vector<std::pair<Algorithm, double>> columns;
      std::vector<std::string> datasets;
      for (const auto& c : r.cells) {
        if (std::find(columns.begin(), columns.end(), std::pair{c.algorithm, c.budget_seconds}) == columns.end()) {
          columns.emplace_back(c.algorithm, c.budget_seconds);
        }
        if (std::find(datasets.begin(), datasets.end(), c.dataset) == datasets.end()) datasets.push_back(c.dataset);
      }
      std::vector<std::string> header{"MPE"};
      for (const auto& [a, b] : columns) header.push_back(std::string(to_string(a)) + " " + budget_label(b) + "s");
      TextTable mpe(header);
      for (const auto& d : datasets) {
        std::vector<std::string> row{d};
        for (const auto& [a, b] : columns) {
          const auto it = std::find_if(r.cells.begin(), r.cells.end(), [&](const CellResult& c) {
            return c.dataset == d && c.algorithm == a && c.budget_seconds == b;
          });
          row.push_back(it == r.cells.end() ? "-" : table_number(it->mpe_mean));
        }
        mpe.add(std::move(row));
      }
      std::vector<std::string> avg{"Average"};
      for (const auto& [a, b] : columns) {
        const auto it = std::find_if(r.averages.begin(), r.averages.end(), [&](const AverageCell& c) {
          return c.algorithm == a && c.budget_seconds == b;
        });
        avg.push_back(it == r.averages.end() ? "-" : table_number(it->mpe_mean));
      }
      mpe.add(std::move(avg));
      mpe.print(out);

      if (!r.improvements.empty()) {
        std::vector<std::tuple<Algorithm, double, double>> pairs;
        for (const auto& i : r.improvements) {
          const std::tuple key{i.algorithm, i.from_budget, i.to_budget};
          if (std::find(pairs.begin(), pairs.end(), key) == pairs.end()) pairs.push_back(key);
        }
        std::vector<std::string> ih{"Improvement %"};
        for (const auto& [a, from, to] : pairs) {
          ih.push_back(std::string(to_string(a)) + " " + budget_label(from) + "-" + budget_label(to) + "s");
        }
        TextTable imp(ih);
        for (const auto& d : datasets) {
          std::vector<std::string> row{d};
          for (const auto& [a, from, to] : pairs) {
            const auto it = std::find_if(r.improvements.begin(), r.improvements.end(), [&](const ImprovementCell& c) {
              return c.dataset == d && c.algorithm == a && c.from_budget == from && c.to_budget == to;
            });
            row.push_back(it == r.improvements.end() ? "-" : table_number(it->improvement));
          }
          imp.add(std::move(row));
        }
        out << '\n';
        imp.print(out);
      }
      for (const auto& f : r.failures) out << "\nfailed: " << f.dataset << ": " << f.message << '\n';
      return;
    }
  }
}

void write_tuning(std::ostream& out, OutputFormat format, const TabuTuningReport& r) {
  switch (format) {
    case OutputFormat::Json:
      out << tuning_json(r).dump(2) << '\n';
      return;
    case OutputFormat::Csv:
      out << "tenure,asset_in,asset_out,weight_up,weight_down";
      for (const double b : r.budgets) out << ",mpe_" << budget_label(b) << "s";
      out << ",average\n";
      for (const auto& row : r.rows) {
        out << row.tenure;
        for (const auto& n : kListNames) out << ',' << ((row.lists & n.flag) ? 1 : 0);
        for (const double m : row.mpe_per_budget) out << ',' << csv_number(m);
        out << ',' << csv_number(row.average) << '\n';
      }
      return;
    case OutputFormat::Table: {
      std::vector<std::string> header{"tenure", "AI", "AO", "WU", "WD"};
      for (const double b : r.budgets) header.push_back(budget_label(b) + "s");
      header.push_back("average");
      TextTable t(header);
      for (const auto& row : r.rows) {
        std::vector<std::string> cells{std::to_string(row.tenure)};
        for (const auto& n : kListNames) cells.push_back((row.lists & n.flag) ? "x" : "");
        for (const double m : row.mpe_per_budget) cells.push_back(table_number(m));
        cells.push_back(table_number(row.average));
        t.add(std::move(cells));
      }
      t.print(out);
      return;
    }
  }
}

void write_sampling(std::ostream& out, OutputFormat format, const std::string& dataset, std::uint64_t seed,
                    const SamplingComparison& data, const Uef* uef) {
  switch (format) {
    case OutputFormat::Json:
      out << sampling_json(dataset, seed, data, uef).dump(2) << '\n';
      return;
    case OutputFormat::Csv: {
      out << "stream,std_dev,mean_return\n";
      for (const auto& r : data.sequential) out << "sequential," << csv_number(r.std_dev) << ',' << csv_number(r.mean_return) << '\n';
      for (const auto& r : data.independent) out << "independent," << csv_number(r.std_dev) << ',' << csv_number(r.mean_return) << '\n';
      if (uef) {
        for (const auto& p : uef->points()) out << "frontier," << csv_number(p.std_dev) << ',' << csv_number(p.mean_return) << '\n';
      }
      return;
    }
    case OutputFormat::Table: {
      TextTable t({"stream", "std_dev", "mean_return"});
      for (const auto& r : data.sequential) t.add({"sequential", table_number(r.std_dev), table_number(r.mean_return)});
      for (const auto& r : data.independent) t.add({"independent", table_number(r.std_dev), table_number(r.mean_return)});
      if (uef) {
        for (const auto& p : uef->points()) t.add({"frontier", table_number(p.std_dev), table_number(p.mean_return)});
      }
      t.print(out);
      return;
    }
  }
}

void write_trace(std::ostream& out, OutputFormat format, const RunContext& context, const FrontierTrace& trace) {
  switch (format) {
    case OutputFormat::Json:
      out << trace_json(context, trace).dump(2) << '\n';
      return;
    case OutputFormat::Csv:
      out << "stream,lambda,std_dev,mean_return\n";
      for (const auto& s : trace.solutions) {
        out << "solution," << csv_number(s.lambda) << ',' << csv_number(s.std_dev) << ',' << csv_number(s.mean_return) << '\n';
      }
      for (const auto& p : trace.frontier) out << "frontier,," << csv_number(p.std_dev) << ',' << csv_number(p.mean_return) << '\n';
      return;
    case OutputFormat::Table: {
      TextTable t({"stream", "lambda", "std_dev", "mean_return"});
      for (const auto& s : trace.solutions) {
        t.add({"solution", table_number(s.lambda), table_number(s.std_dev), table_number(s.mean_return)});
      }
      for (const auto& p : trace.frontier) t.add({"frontier", "", table_number(p.std_dev), table_number(p.mean_return)});
      t.print(out);
      if (trace.outcome.errors) out << "MPE: " << table_number(trace.outcome.errors->mpe) << '\n';
      return;
    }
  }
}

}  // namespace frontier
