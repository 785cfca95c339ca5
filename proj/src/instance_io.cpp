#include "nls/instance_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "json.hpp"

namespace nls {

namespace {

struct NumberLine {
  int line_no = 0;
  std::vector<long long> values;
};

std::vector<NumberLine> tokenize(std::string_view text) {
  std::vector<NumberLine> lines;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    ++line_no;
    pos = end + 1;

    std::size_t first = raw.find_first_not_of(" \t\r");
    if (first == std::string_view::npos || raw[first] == '#') continue;

    NumberLine parsed{line_no, {}};
    std::size_t i = first;
    while (i < raw.size()) {
      if (raw[i] == ' ' || raw[i] == '\t' || raw[i] == '\r') {
        ++i;
        continue;
      }
      long long value = 0;
      auto [ptr, ec] = std::from_chars(raw.data() + i, raw.data() + raw.size(), value);
      if (ec != std::errc() ||
          (ptr != raw.data() + raw.size() && *ptr != ' ' && *ptr != '\t' &&
           *ptr != '\r'))
        throw ParseError(line_no, "expected integers, got '" +
                                      std::string(raw.substr(first)) + "'");
      parsed.values.push_back(value);
      i = static_cast<std::size_t>(ptr - raw.data());
    }
    lines.push_back(std::move(parsed));
    if (end == text.size()) break;
  }
  return lines;
}

}  // namespace

Instance parse_taillard(std::string_view text) {
  const auto lines = tokenize(text);
  if (lines.empty()) throw ParseError(1, "empty instance file");

  const auto& header = lines.front();
  if (header.values.size() < 2)
    throw ParseError(header.line_no, "header must be 'jobs machines'");
  const long long jobs = header.values[0];
  const long long machines = header.values[1];
  if (jobs < 1 || machines < 1 || jobs > 100000 || machines > 100000)
    throw ParseError(header.line_no, "malformed dimensions " +
                                         std::to_string(jobs) + " x " +
                                         std::to_string(machines));

  const auto expect_row = [&](std::size_t idx) -> const NumberLine& {
    if (idx >= lines.size()) {
      int last = lines.back().line_no + 1;
      throw ParseError(last, "unexpected end of input, expected " +
                                 std::to_string(2 * jobs) + " matrix rows");
    }
    const auto& row = lines[idx];
    if (static_cast<long long>(row.values.size()) != machines)
      throw ParseError(row.line_no, "expected " + std::to_string(machines) +
                                        " values, got " +
                                        std::to_string(row.values.size()));
    return row;
  };

  std::vector<Time> proc;
  proc.reserve(static_cast<std::size_t>(jobs * machines));
  for (long long j = 0; j < jobs; ++j) {
    const auto& row = expect_row(1 + static_cast<std::size_t>(j));
    for (long long v : row.values) {
      if (v < 1) throw ParseError(row.line_no, "processing times must be positive");
      proc.push_back(v);
    }
  }

  bool has_zero = false;
  for (long long j = 0; j < jobs; ++j) {
    const auto& row = expect_row(1 + static_cast<std::size_t>(jobs + j));
    for (long long v : row.values) has_zero = has_zero || v == 0;
  }
  const long long offset = has_zero ? 0 : 1;

  std::vector<int> order;
  order.reserve(proc.size());
  for (long long j = 0; j < jobs; ++j) {
    const auto& row = lines[1 + static_cast<std::size_t>(jobs + j)];
    std::vector<bool> seen(static_cast<std::size_t>(machines), false);
    for (long long v : row.values) {
      long long machine = v - offset;
      if (machine < 0 || machine >= machines)
        throw ParseError(row.line_no, "machine index " + std::to_string(v) +
                                          " out of range");
      if (seen[static_cast<std::size_t>(machine)])
        throw ParseError(row.line_no, "machine order is not a permutation");
      seen[static_cast<std::size_t>(machine)] = true;
      order.push_back(static_cast<int>(machine));
    }
  }
  if (lines.size() > static_cast<std::size_t>(1 + 2 * jobs))
    throw ParseError(lines[static_cast<std::size_t>(1 + 2 * jobs)].line_no,
                     "trailing data after machine orders");

  return Instance(static_cast<int>(jobs), static_cast<int>(machines),
                  std::move(proc), std::move(order));
}

std::string render_taillard(const Instance& instance) {
  std::ostringstream out;
  out << instance.num_jobs() << ' ' << instance.num_machines() << '\n';
  for (int j = 0; j < instance.num_jobs(); ++j) {
    for (int k = 0; k < instance.num_machines(); ++k)
      out << (k ? " " : "") << instance.proc_time(j, k);
    out << '\n';
  }
  for (int j = 0; j < instance.num_jobs(); ++j) {
    for (int k = 0; k < instance.num_machines(); ++k)
      out << (k ? " " : "") << instance.machine_of(j, k) + 1;
    out << '\n';
  }
  return out.str();
}

std::string to_canonical_json(const Instance& instance) {
  nlohmann::ordered_json record;
  record["num_jobs"] = instance.num_jobs();
  record["num_machines"] = instance.num_machines();
  auto proc = nlohmann::ordered_json::array();
  auto order = nlohmann::ordered_json::array();
  for (int j = 0; j < instance.num_jobs(); ++j) {
    auto p = instance.proc_row(j);
    auto m = instance.machine_row(j);
    proc.push_back(std::vector<Time>(p.begin(), p.end()));
    order.push_back(std::vector<int>(m.begin(), m.end()));
  }
  record["proc_time"] = std::move(proc);
  record["machine_of"] = std::move(order);
  return record.dump();
}

Instance from_canonical_json(std::string_view line) {
  nlohmann::json record;
  try {
    record = nlohmann::json::parse(line);
    const int jobs = record.at("num_jobs").get<int>();
    const int machines = record.at("num_machines").get<int>();
    auto proc = record.at("proc_time").get<std::vector<std::vector<Time>>>();
    auto order = record.at("machine_of").get<std::vector<std::vector<int>>>();
    Instance instance = Instance::from_rows(proc, order);
    if (instance.num_jobs() != jobs || instance.num_machines() != machines)
      throw std::invalid_argument("dimensions disagree with matrices");
    return instance;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(1, std::string("malformed instance record: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(1, e.what());
  }
}

Instance read_instance_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  auto first = text.find_first_not_of(" \t\r\n");
  try {
    if (first != std::string::npos && text[first] == '{')
      return from_canonical_json(text);
    return parse_taillard(text);
  } catch (const ParseError& e) {
    throw ParseError(e.line(), path.string() + ": " +
                                   std::string(e.what()).substr(
                                       std::string(e.what()).find(": ") + 2));
  }
}

void write_instance_file(const std::filesystem::path& path,
                         const Instance& instance) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  if (path.extension() == ".txt")
    out << render_taillard(instance);
  else
    out << to_canonical_json(instance) << '\n';
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace nls
