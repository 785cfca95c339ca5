#include "nls/trajectory.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <stdexcept>

#include "json.hpp"
#include "nls/instance_io.hpp"

namespace nls {

using nlohmann::ordered_json;

std::vector<std::int64_t> returns_to_go(std::span<const std::int64_t> rewards) {
  std::vector<std::int64_t> out(rewards.size());
  std::int64_t running = 0;
  for (std::size_t i = rewards.size(); i-- > 0;) {
    running += rewards[i];
    out[i] = running;
  }
  return out;
}

Dataset make_dataset(std::span<const Trajectory> trajectories,
                     ActionSet action_set, int episode_len) {
  Dataset dataset;
  dataset.header.action_set = action_set;
  dataset.header.episode_len = episode_len;
  for (const auto& trajectory : trajectories) {
    dataset.header.lower_bounds[trajectory.instance_id] = trajectory.lower_bound;
    dataset.records.insert(dataset.records.end(), trajectory.records.begin(),
                           trajectory.records.end());
  }
  return dataset;
}

namespace {

ordered_json header_to_json(const DatasetHeader& header) {
  ordered_json j;
  j["type"] = "header";
  j["schema"] = "nls-trajectories";
  j["version"] = header.version;
  j["action_set"] = std::string(to_string(header.action_set));
  j["episode_len"] = header.episode_len;
  auto names = ordered_json::array();
  for (auto name : FeatureVector::names()) names.push_back(std::string(name));
  j["feature_names"] = std::move(names);
  j["normalization"] = {{"current_makespan", "lower_bound"},
                        {"best_makespan", "lower_bound"},
                        {"step", "episode_len"}};
  ordered_json bounds = ordered_json::object();
  for (const auto& [id, lb] : header.lower_bounds) bounds[id] = lb;
  j["lower_bounds"] = std::move(bounds);
  return j;
}

ordered_json record_to_json(const TrajectoryRecord& r) {
  ordered_json j;
  j["instance_id"] = r.instance_id;
  j["seed"] = r.seed;
  j["step"] = r.step;
  j["features"] = r.features.raw;
  j["action"] = r.action;
  j["reward"] = r.reward;
  if (r.rtg) j["rtg"] = *r.rtg;
  return j;
}

}  // namespace

void write_dataset(const Dataset& dataset, std::ostream& out) {
  out << header_to_json(dataset.header).dump() << '\n';
  for (const auto& record : dataset.records) {
    if (record.reward < 0)
      throw std::invalid_argument("trajectory record with negative reward");
    out << record_to_json(record).dump() << '\n';
  }
}

void write_dataset(const Dataset& dataset, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_dataset(dataset, out);
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

Dataset read_dataset(std::istream& in) {
  Dataset dataset;
  std::string line;
  int line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      if (!have_header) {
        if (j.at("type") != "header" || j.at("schema") != "nls-trajectories")
          throw ParseError(line_no, "missing dataset header");
        auto& h = dataset.header;
        h.version = j.at("version").get<int>();
        if (h.version != kDatasetVersion)
          throw ParseError(line_no, "unsupported dataset version " +
                                        std::to_string(h.version));
        h.action_set = parse_action_set(j.at("action_set").get<std::string>());
        h.episode_len = j.at("episode_len").get<int>();
        h.lower_bounds = j.at("lower_bounds").get<std::map<std::string, Time>>();
        have_header = true;
        continue;
      }
      TrajectoryRecord r;
      r.instance_id = j.at("instance_id").get<std::string>();
      r.seed = j.at("seed").get<std::uint64_t>();
      r.step = j.at("step").get<int>();
      const auto raw = j.at("features").get<std::vector<std::int64_t>>();
      if (raw.size() != kFeatureCount)
        throw ParseError(line_no, "expected " + std::to_string(kFeatureCount) +
                                      " features");
      std::copy(raw.begin(), raw.end(), r.features.raw.begin());
      const auto lb = dataset.header.lower_bounds.find(r.instance_id);
      if (lb == dataset.header.lower_bounds.end())
        throw ParseError(line_no, "instance '" + r.instance_id +
                                      "' has no lower bound in the header");
      r.features.lower_bound = std::max<Time>(lb->second, 1);
      r.features.episode_len = std::max(dataset.header.episode_len, 1);
      r.action = j.at("action").get<int>();
      r.reward = j.at("reward").get<std::int64_t>();
      if (r.reward < 0) throw ParseError(line_no, "negative reward");
      if (j.contains("rtg")) r.rtg = j.at("rtg").get<std::int64_t>();
      dataset.records.push_back(std::move(r));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(line_no, std::string("malformed record: ") + e.what());
    } catch (const std::invalid_argument& e) {
      throw ParseError(line_no, e.what());
    }
  }
  if (!have_header) throw ParseError(line_no + 1, "missing dataset header");
  return dataset;
}

Dataset read_dataset(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_dataset(in);
}

Dataset finalize(Dataset raw) {
  using Key = std::pair<std::string, std::uint64_t>;
  std::set<Key> finished;
  auto& records = raw.records;
  std::size_t begin = 0;
  while (begin < records.size()) {
    const Key key{records[begin].instance_id, records[begin].seed};
    if (finished.count(key))
      throw std::invalid_argument("trajectory " + key.first + "/" +
                                  std::to_string(key.second) + " is interleaved");
    std::size_t end = begin + 1;
    while (end < records.size() && records[end].instance_id == key.first &&
           records[end].seed == key.second) {
      if (records[end].step <= records[end - 1].step)
        throw std::invalid_argument("trajectory " + key.first + "/" +
                                    std::to_string(key.second) +
                                    " has duplicate or unordered steps");
      ++end;
    }
    std::vector<std::int64_t> rewards;
    for (std::size_t i = begin; i < end; ++i) rewards.push_back(records[i].reward);
    const auto rtg = returns_to_go(rewards);
    for (std::size_t i = begin; i < end; ++i) records[i].rtg = rtg[i - begin];
    finished.insert(key);
    begin = end;
  }
  return raw;
}

int ContextWindow::real_slots() const {
  return static_cast<int>(std::count(padded.begin(), padded.end(), false));
}

ContextWindow context_window(std::span<const TrajectoryRecord> records,
                             std::size_t t, int context_length) {
  if (context_length < 0) throw std::invalid_argument("context length must be >= 0");
  if (t >= records.size()) throw std::out_of_range("window end beyond trajectory");
  const std::size_t slots = static_cast<std::size_t>(context_length) + 1;
  ContextWindow w;
  w.context_length = context_length;
  w.rtg.assign(slots, 0);
  w.features.assign(slots, FeatureVector{});
  w.action.assign(slots, 0);
  w.step.assign(slots, 0);
  w.padded.assign(slots, true);

  const std::size_t real = std::min(t + 1, slots);
  const std::size_t first = t + 1 - real;
  for (std::size_t i = 0; i < real; ++i) {
    const auto& r = records[first + i];
    if (!r.rtg) throw std::invalid_argument("context window needs return-to-go values");
    const std::size_t slot = slots - real + i;
    w.rtg[slot] = *r.rtg;
    w.features[slot] = r.features;
    w.action[slot] = (first + i == t) ? 0 : r.action;
    w.step[slot] = r.step;
    w.padded[slot] = false;
  }
  return w;
}

}  // namespace nls
