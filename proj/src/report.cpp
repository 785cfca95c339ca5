#include "nls/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace nls {

using nlohmann::ordered_json;

double optimality_gap(double makespan, double optimum) {
  if (!(optimum > 0.0)) throw std::invalid_argument("optimum must be positive");
  return (makespan - optimum) / optimum;
}

std::string format_percent(double fraction) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f%%", 100.0 * fraction);
  return buf;
}

std::map<std::string, KnownBounds> load_known_bounds(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::map<std::string, KnownBounds> bounds;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string name;
    if (!(fields >> name)) continue;
    int jobs = 0, machines = 0;
    KnownBounds b;
    if (!(fields >> jobs >> machines >> b.lower >> b.upper) || b.lower > b.upper)
      throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                               ": expected 'name jobs machines lower upper'");
    bounds[name] = b;
  }
  return bounds;
}

std::vector<SizeSummary> BenchmarkReport::summaries() const {
  std::vector<SizeSummary> out;
  std::vector<std::vector<const InstanceResult*>> groups;
  for (const auto& r : instances) {
    auto it = std::find_if(out.begin(), out.end(),
                           [&](const SizeSummary& s) { return s.size == r.size(); });
    if (it == out.end()) {
      SizeSummary summary;
      summary.size = r.size();
      out.push_back(std::move(summary));
      groups.emplace_back();
      it = out.end() - 1;
    }
    auto& group = groups[static_cast<std::size_t>(it - out.begin())];
    if (r.error)
      ++it->failed;
    else
      group.push_back(&r);
  }
  for (std::size_t g = 0; g < out.size(); ++g) {
    auto& s = out[g];
    const auto& group = groups[g];
    s.count = group.size();
    if (group.empty()) continue;
    const double n = static_cast<double>(group.size());
    bool all_optima = true;
    double optimum_sum = 0.0, gap_sum = 0.0;
    for (const auto* r : group) {
      s.mean_initial += static_cast<double>(r->initial_makespan) / n;
      s.mean_makespan += static_cast<double>(r->makespan) / n;
      s.mean_seconds += r->wall_seconds / n;
      if (r->optimum) {
        optimum_sum += static_cast<double>(*r->optimum);
        gap_sum += optimality_gap(static_cast<double>(r->makespan),
                                  static_cast<double>(*r->optimum));
      } else {
        all_optima = false;
      }
    }
    if (all_optima) {
      s.mean_optimum = optimum_sum / n;
      s.gap = optimality_gap(s.mean_makespan, *s.mean_optimum);
      s.mean_instance_gap = gap_sum / n;
    }
  }
  return out;
}

std::string report_to_json(const BenchmarkReport& report) {
  ordered_json j;
  const auto& c = report.config;
  j["config"] = {{"policy", c.policy},         {"action_set", c.action_set},
                 {"steps", c.steps},           {"seed", c.seed},
                 {"rtg_factor", c.rtg_factor}, {"perturb_strength", c.perturb_strength},
                 {"context_length", c.context_length}};
  auto rows = ordered_json::array();
  for (const auto& r : report.instances) {
    ordered_json row;
    row["instance_id"] = r.instance_id;
    row["num_jobs"] = r.num_jobs;
    row["num_machines"] = r.num_machines;
    row["lower_bound"] = r.lower_bound;
    row["initial_makespan"] = r.initial_makespan;
    row["makespan"] = r.makespan;
    row["optimum"] = r.optimum ? ordered_json(*r.optimum) : ordered_json(nullptr);
    row["gap"] = r.optimum && !r.error
                     ? ordered_json(optimality_gap(static_cast<double>(r.makespan),
                                                   static_cast<double>(*r.optimum)))
                     : ordered_json(nullptr);
    row["wall_seconds"] = r.wall_seconds;
    row["best_by_step"] = r.best_by_step;
    row["seconds_by_step"] = r.seconds_by_step;
    row["action_counts"] = r.action_counts;
    row["error"] = r.error ? ordered_json(*r.error) : ordered_json(nullptr);
    rows.push_back(std::move(row));
  }
  j["instances"] = std::move(rows);
  auto sizes = ordered_json::array();
  for (const auto& s : report.summaries()) {
    ordered_json row;
    row["size"] = s.size;
    row["count"] = s.count;
    row["failed"] = s.failed;
    row["mean_initial"] = s.mean_initial;
    row["mean_makespan"] = s.mean_makespan;
    row["mean_optimum"] = s.mean_optimum ? ordered_json(*s.mean_optimum) : ordered_json(nullptr);
    row["gap"] = s.gap ? ordered_json(*s.gap) : ordered_json(nullptr);
    row["mean_instance_gap"] =
        s.mean_instance_gap ? ordered_json(*s.mean_instance_gap) : ordered_json(nullptr);
    row["mean_seconds"] = s.mean_seconds;
    sizes.push_back(std::move(row));
  }
  j["sizes"] = std::move(sizes);
  return j.dump(1);
}

BenchmarkReport report_from_json(std::string_view text) {
  BenchmarkReport report;
  try {
    const auto j = nlohmann::json::parse(text);
    const auto& c = j.at("config");
    report.config.policy = c.at("policy").get<std::string>();
    report.config.action_set = c.at("action_set").get<std::string>();
    report.config.steps = c.at("steps").get<int>();
    report.config.seed = c.at("seed").get<std::uint64_t>();
    report.config.rtg_factor = c.at("rtg_factor").get<double>();
    report.config.perturb_strength = c.value("perturb_strength", 5);
    report.config.context_length = c.value("context_length", 50);
    for (const auto& row : j.at("instances")) {
      InstanceResult r;
      r.instance_id = row.at("instance_id").get<std::string>();
      r.num_jobs = row.at("num_jobs").get<int>();
      r.num_machines = row.at("num_machines").get<int>();
      r.lower_bound = row.at("lower_bound").get<Time>();
      r.initial_makespan = row.at("initial_makespan").get<Time>();
      r.makespan = row.at("makespan").get<Time>();
      if (!row.at("optimum").is_null()) r.optimum = row.at("optimum").get<Time>();
      r.wall_seconds = row.at("wall_seconds").get<double>();
      r.best_by_step = row.at("best_by_step").get<std::vector<Time>>();
      r.seconds_by_step = row.at("seconds_by_step").get<std::vector<double>>();
      r.action_counts = row.at("action_counts").get<std::vector<std::size_t>>();
      if (!row.at("error").is_null()) r.error = row.at("error").get<std::string>();
      report.instances.push_back(std::move(r));
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("malformed report: ") + e.what());
  }
  return report;
}

BenchmarkReport read_report(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return report_from_json(buffer.str());
}

namespace {

std::string fixed(double value, int digits) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(digits) << value;
  return out.str();
}

// Left-aligns the first column, right-aligns the rest.
std::string render_columns(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& row : rows)
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (width.size() <= i) width.push_back(0);
      width[i] = std::max(width[i], row[i].size());
    }
  std::ostringstream out;
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << "  ";
      if (i == 0)
        out << std::left << std::setw(static_cast<int>(width[i])) << row[i];
      else
        out << std::right << std::setw(static_cast<int>(width[i])) << row[i];
    }
    out << '\n';
  }
  return out.str();
}

void check_same_instances(std::span<const BenchmarkReport> reports) {
  if (reports.empty()) throw std::invalid_argument("no reports given");
  const auto ids = [](const BenchmarkReport& r) {
    std::vector<std::string> out;
    for (const auto& i : r.instances) out.push_back(i.instance_id);
    return out;
  };
  const auto reference = ids(reports.front());
  for (const auto& r : reports.subspan(1))
    if (ids(r) != reference)
      throw std::invalid_argument("reports cover different instance sets");
}

std::vector<std::string> labels_or_default(std::span<const BenchmarkReport> reports,
                                           std::span<const std::string> labels) {
  if (!labels.empty() && labels.size() != reports.size())
    throw std::invalid_argument("one label per report expected");
  std::vector<std::string> out(labels.begin(), labels.end());
  for (std::size_t i = out.size(); i < reports.size(); ++i)
    out.push_back(reports[i].config.policy + "#" + std::to_string(i));
  return out;
}

}  // namespace

std::string render_report_table(const BenchmarkReport& report) {
  std::vector<std::vector<std::string>> rows{
      {"instance", "size", "lb", "initial", "makespan", "optimum", "gap", "seconds"}};
  for (const auto& r : report.instances) {
    if (r.error) {
      rows.push_back({r.instance_id, r.size(), std::to_string(r.lower_bound), "-",
                      "failed", "-", "-", "-"});
      continue;
    }
    rows.push_back(
        {r.instance_id, r.size(), std::to_string(r.lower_bound),
         std::to_string(r.initial_makespan), std::to_string(r.makespan),
         r.optimum ? std::to_string(*r.optimum) : "-",
         r.optimum ? format_percent(optimality_gap(static_cast<double>(r.makespan),
                                                   static_cast<double>(*r.optimum)))
                   : "-",
         fixed(r.wall_seconds, 3)});
  }
  for (const auto& s : report.summaries()) {
    rows.push_back({"mean", s.size, "", fixed(s.mean_initial, 1), fixed(s.mean_makespan, 1),
                    s.mean_optimum ? fixed(*s.mean_optimum, 1) : "-",
                    s.gap ? format_percent(*s.gap) : "-", fixed(s.mean_seconds, 3)});
  }
  std::ostringstream out;
  const auto& c = report.config;
  out << "policy=" << c.policy << " action_set=" << c.action_set << " steps=" << c.steps
      << " seed=" << c.seed << " rtg_factor=" << c.rtg_factor << '\n';
  out << render_columns(rows);
  return out.str();
}

std::string render_comparison(std::span<const BenchmarkReport> reports,
                              std::span<const std::string> labels) {
  check_same_instances(reports);
  const auto names = labels_or_default(reports, labels);
  std::vector<std::string> header{"instance", "initial"};
  header.insert(header.end(), names.begin(), names.end());
  header.push_back("optimum");
  std::vector<std::vector<std::string>> rows{header};
  const auto& first = reports.front();
  for (std::size_t i = 0; i < first.instances.size(); ++i) {
    const auto& base = first.instances[i];
    std::vector<std::string> row{base.instance_id, std::to_string(base.initial_makespan)};
    for (const auto& r : reports) {
      const auto& x = r.instances[i];
      row.push_back(x.error ? "failed" : std::to_string(x.makespan));
    }
    row.push_back(base.optimum ? std::to_string(*base.optimum) : "-");
    rows.push_back(std::move(row));
  }
  for (std::size_t g = 0; g < first.summaries().size(); ++g) {
    const auto base = first.summaries()[g];
    std::vector<std::string> mean_row{"mean " + base.size, fixed(base.mean_initial, 1)};
    std::vector<std::string> gap_row{"gap " + base.size, ""};
    for (const auto& r : reports) {
      const auto s = r.summaries()[g];
      mean_row.push_back(fixed(s.mean_makespan, 1));
      gap_row.push_back(s.gap ? format_percent(*s.gap) : "-");
    }
    mean_row.push_back(base.mean_optimum ? fixed(*base.mean_optimum, 1) : "-");
    gap_row.push_back("");
    rows.push_back(std::move(mean_row));
    rows.push_back(std::move(gap_row));
  }
  return render_columns(rows);
}

std::string iteration_series(std::span<const BenchmarkReport> reports,
                             std::span<const std::string> labels) {
  check_same_instances(reports);
  const auto names = labels_or_default(reports, labels);
  std::ostringstream out;
  out << "step";
  for (const auto& n : names) out << ',' << n;
  out << '\n';
  std::size_t steps = 0;
  for (const auto& r : reports)
    for (const auto& i : r.instances) steps = std::max(steps, i.best_by_step.size());
  for (std::size_t t = 0; t < steps; ++t) {
    out << t + 1;
    for (const auto& r : reports) {
      double sum = 0.0;
      std::size_t n = 0;
      for (const auto& i : r.instances) {
        if (i.error || i.best_by_step.empty()) continue;
        sum += static_cast<double>(i.best_by_step[std::min(t, i.best_by_step.size() - 1)]);
        ++n;
      }
      out << ',' << (n ? fixed(sum / static_cast<double>(n), 2) : "");
    }
    out << '\n';
  }
  return out.str();
}

std::string wallclock_series(std::span<const BenchmarkReport> reports,
                             std::span<const std::string> labels) {
  check_same_instances(reports);
  const auto names = labels_or_default(reports, labels);
  std::ostringstream out;
  out << "label,step,mean_seconds,mean_makespan\n";
  for (std::size_t k = 0; k < reports.size(); ++k) {
    std::size_t steps = 0;
    for (const auto& i : reports[k].instances) steps = std::max(steps, i.best_by_step.size());
    for (std::size_t t = 0; t < steps; ++t) {
      double seconds = 0.0, makespan = 0.0;
      std::size_t n = 0;
      for (const auto& i : reports[k].instances) {
        if (i.error || i.best_by_step.size() <= t) continue;
        seconds += i.seconds_by_step[t];
        makespan += static_cast<double>(i.best_by_step[t]);
        ++n;
      }
      if (!n) continue;
      out << names[k] << ',' << t + 1 << ',' << fixed(seconds / static_cast<double>(n), 6)
          << ',' << fixed(makespan / static_cast<double>(n), 2) << '\n';
    }
  }
  return out.str();
}

std::string action_frequency_series(std::span<const BenchmarkReport> reports,
                                    std::span<const std::string> labels) {
  const auto names = labels_or_default(reports, labels);
  std::ostringstream out;
  out << "label,action,count\n";
  for (std::size_t k = 0; k < reports.size(); ++k) {
    std::vector<std::size_t> total;
    for (const auto& i : reports[k].instances) {
      if (total.size() < i.action_counts.size()) total.resize(i.action_counts.size(), 0);
      for (std::size_t a = 0; a < i.action_counts.size(); ++a) total[a] += i.action_counts[a];
    }
    for (std::size_t a = 0; a < total.size(); ++a)
      out << names[k] << ',' << a << ',' << total[a] << '\n';
  }
  return out.str();
}

std::string rtg_factor_series(std::span<const BenchmarkReport> reports) {
  std::map<double, std::vector<double>> by_factor;
  for (const auto& r : reports)
    for (const auto& i : r.instances)
      if (!i.error) by_factor[r.config.rtg_factor].push_back(static_cast<double>(i.makespan));
  std::ostringstream out;
  out << "rtg_factor,count,mean_makespan,ci95_low,ci95_high\n";
  for (const auto& [factor, values] : by_factor) {
    const double n = static_cast<double>(values.size());
    double mean = 0.0;
    for (double v : values) mean += v / n;
    double var = 0.0;
    for (double v : values) var += (v - mean) * (v - mean);
    const double half = values.size() > 1 ? 1.96 * std::sqrt(var / (n - 1.0)) / std::sqrt(n) : 0.0;
    out << fixed(factor, 2) << ',' << values.size() << ',' << fixed(mean, 2) << ','
        << fixed(mean - half, 2) << ',' << fixed(mean + half, 2) << '\n';
  }
  return out.str();
}

}  // namespace nls
