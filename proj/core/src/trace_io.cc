#include "satpath/trace_io.h"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "json.hpp"
#include "satpath/errors.h"
#include "satpath/game_io.h"

namespace satpath {
namespace {

using nlohmann::json;

constexpr const char* kCsvHeader =
    "step,step_kind,player,action,probability,gap,satisfied";

struct StepView {
  const StrategyProfile* profile;
  const SatisfactionReport* report;
  std::string kind;
};

void WriteCsv(const std::vector<StepView>& steps, std::ostream& out) {
  out << kCsvHeader << "\n";
  for (std::size_t t = 0; t < steps.size(); ++t) {
    const StepView& s = steps[t];
    for (int i = 0; i < s.profile->num_players(); ++i) {
      const bool sat = s.report->IsSatisfied(i);
      for (int a = 0; a < (*s.profile)[i].num_actions(); ++a) {
        out << t + 1 << ',' << s.kind << ',' << i << ',' << a << ','
            << FormatDouble((*s.profile)[i][a]) << ','
            << FormatDouble(s.report->gaps[i]) << ',' << (sat ? 1 : 0)
            << "\n";
      }
    }
  }
}

void WriteNumberArray(std::ostream& out, std::span<const double> values) {
  out << '[';
  for (std::size_t k = 0; k < values.size(); ++k) {
    out << (k ? ", " : "") << FormatDouble(values[k]);
  }
  out << ']';
}

void WriteIntArray(std::ostream& out, const std::vector<int>& values) {
  out << '[';
  for (std::size_t k = 0; k < values.size(); ++k) {
    out << (k ? ", " : "") << values[k];
  }
  out << ']';
}

void WriteProfileJson(std::ostream& out, const StrategyProfile& profile) {
  out << '[';
  for (int i = 0; i < profile.num_players(); ++i) {
    if (i) out << ", ";
    WriteNumberArray(out, profile[i].probs());
  }
  out << ']';
}

void WriteStepsJson(const std::vector<StepView>& steps, std::ostream& out) {
  out << "  \"steps\": [\n";
  for (std::size_t t = 0; t < steps.size(); ++t) {
    const StepView& s = steps[t];
    out << "    {\"step\": " << t + 1 << ", \"step_kind\": \"" << s.kind
        << "\", \"profile\": ";
    WriteProfileJson(out, *s.profile);
    out << ", \"gaps\": ";
    WriteNumberArray(out, s.report->gaps);
    out << ", \"satisfied\": ";
    WriteIntArray(out, s.report->satisfied);
    out << ", \"unsatisfied\": ";
    WriteIntArray(out, s.report->unsatisfied);
    out << '}' << (t + 1 < steps.size() ? "," : "") << "\n";
  }
  out << "  ]\n";
}

void WriteShapeJson(const StrategyProfile& profile, std::ostream& out) {
  out << "  \"players\": " << profile.num_players() << ",\n  \"actions\": [";
  for (int i = 0; i < profile.num_players(); ++i) {
    out << (i ? ", " : "") << profile[i].num_actions();
  }
  out << "],\n";
}

template <typename Writer>
void ToDestination(const std::string& destination, Writer&& write) {
  if (destination == "-") {
    write(std::cout);
    std::cout.flush();
    if (!std::cout) throw IoError("failed writing to standard output");
    return;
  }
  std::ofstream out(destination);
  if (!out) throw IoError("cannot open '" + destination + "' for writing");
  write(out);
  out.flush();
  if (!out) throw IoError("failed writing '" + destination + "'");
}

double ParseDoubleField(const std::string& field, const std::string& where) {
  // strtod, unlike std::stod, accepts subnormal values.
  const char* begin = field.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (field.empty() || end != begin + field.size() || !std::isfinite(v)) {
    throw ParseError(where, "expected a finite number, got '" + field + "'");
  }
  return v;
}

long ParseIntField(const std::string& field, const std::string& where) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(field, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != field.size() || v < 0) {
    throw ParseError(where, "expected a nonnegative integer, got '" + field +
                                "'");
  }
  return v;
}

TraceDocument ParseCsvTrace(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw ParseError("line 1", "expected header '" + std::string(kCsvHeader) +
                                   "'");
  }
  // step -> player -> action -> probability
  std::map<long, std::map<long, std::map<long, double>>> cells;
  std::map<long, std::string> kinds;
  std::map<long, std::map<long, double>> gaps;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(line_no);
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 7) throw ParseError(where, "expected 7 fields");
    const long step = ParseIntField(fields[0], where + " step");
    const long player = ParseIntField(fields[2], where + " player");
    const long action = ParseIntField(fields[3], where + " action");
    const double prob = ParseDoubleField(fields[4], where + " probability");
    const double gap = ParseDoubleField(fields[5], where + " gap");
    if (step < 1) throw ParseError(where, "steps are 1-based");
    auto [it, inserted] = kinds.emplace(step, fields[1]);
    if (!inserted && it->second != fields[1]) {
      throw ParseError(where, "inconsistent step_kind within a step");
    }
    if (cells[step][player].contains(action)) {
      throw ParseError(where, "duplicate (step, player, action) row");
    }
    cells[step][player][action] = prob;
    gaps[step][player] = gap;
  }
  if (cells.empty()) throw ParseError("document", "trace has no steps");

  TraceDocument doc;
  long expected_step = 1;
  for (const auto& [step, players] : cells) {
    const std::string where = "step " + std::to_string(step);
    if (step != expected_step++) throw ParseError(where, "steps not contiguous");
    std::vector<MixedStrategy> strategies;
    std::vector<double> step_gaps;
    long expected_player = 0;
    for (const auto& [player, actions] : players) {
      if (player != expected_player++) {
        throw ParseError(where, "players not contiguous");
      }
      std::vector<double> probs;
      long expected_action = 0;
      for (const auto& [action, p] : actions) {
        if (action != expected_action++) {
          throw ParseError(where, "actions not contiguous");
        }
        probs.push_back(p);
      }
      try {
        strategies.emplace_back(std::move(probs));
      } catch (const InvalidInput& e) {
        throw ParseError(where + " player " + std::to_string(player), e.what());
      }
      step_gaps.push_back(gaps[step][player]);
    }
    doc.profiles.emplace_back(std::move(strategies));
    doc.step_kinds.push_back(kinds[step]);
    doc.gaps.push_back(std::move(step_gaps));
  }
  return doc;
}

TraceDocument ParseJsonTrace(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("document", e.what());
  }
  if (!doc.is_object() || !doc.contains("steps") || !doc["steps"].is_array()) {
    throw ParseError("steps", "expected an array of steps");
  }
  TraceDocument out;
  if (doc.contains("epsilon") && doc["epsilon"].is_number()) {
    out.epsilon = doc["epsilon"].get<double>();
  }
  const json& steps = doc["steps"];
  if (steps.empty()) throw ParseError("steps", "trace has no steps");
  for (std::size_t t = 0; t < steps.size(); ++t) {
    const std::string key = "steps[" + std::to_string(t) + "]";
    const json& s = steps[t];
    if (!s.is_object() || !s.contains("profile") || !s["profile"].is_array()) {
      throw ParseError(key + ".profile", "expected an array of strategies");
    }
    std::vector<MixedStrategy> strategies;
    const json& profile = s["profile"];
    for (std::size_t i = 0; i < profile.size(); ++i) {
      const std::string pkey = key + ".profile[" + std::to_string(i) + "]";
      if (!profile[i].is_array()) throw ParseError(pkey, "expected an array");
      std::vector<double> probs;
      for (const json& p : profile[i]) {
        if (!p.is_number()) throw ParseError(pkey, "expected numbers");
        probs.push_back(p.get<double>());
      }
      try {
        strategies.emplace_back(std::move(probs));
      } catch (const InvalidInput& e) {
        throw ParseError(pkey, e.what());
      }
    }
    out.profiles.emplace_back(std::move(strategies));
    out.step_kinds.push_back(s.contains("step_kind") && s["step_kind"].is_string()
                                 ? s["step_kind"].get<std::string>()
                                 : std::string());
    std::vector<double> g;
    if (s.contains("gaps") && s["gaps"].is_array()) {
      for (const json& v : s["gaps"]) {
        if (!v.is_number()) throw ParseError(key + ".gaps", "expected numbers");
        g.push_back(v.get<double>());
      }
    }
    out.gaps.push_back(std::move(g));
  }
  return out;
}

}  // namespace

OutputFormat OutputFormatFromName(const std::string& name) {
  if (name == "csv") return OutputFormat::kCsv;
  if (name == "json") return OutputFormat::kJson;
  throw InvalidInput("unknown output format '" + name + "' (csv or json)");
}

void WritePath(const SatisficingPath& path, OutputFormat format,
               std::ostream& out) {
  if (path.steps.empty()) throw InvalidInput("cannot emit an empty path");
  std::vector<StepView> steps;
  for (const auto& s : path.steps) {
    steps.push_back({&s.profile, &s.report, StepKindName(s.kind)});
  }
  if (format == OutputFormat::kCsv) {
    WriteCsv(steps, out);
    return;
  }
  out << "{\n  \"kind\": \"satisficing_path\",\n";
  WriteShapeJson(path.steps.front().profile, out);
  out << "  \"epsilon\": " << FormatDouble(path.epsilon) << ",\n";
  out << "  \"terminal_gap\": " << FormatDouble(path.terminal_gap) << ",\n";
  out << "  \"escalations\": " << path.escalations << ",\n";
  WriteStepsJson(steps, out);
  out << "}\n";
}

void WriteTrajectory(const Trajectory& trajectory, OutputFormat format,
                     std::ostream& out) {
  if (trajectory.profiles.empty() ||
      trajectory.profiles.size() != trajectory.reports.size()) {
    throw InvalidInput("cannot emit an empty trajectory");
  }
  std::vector<StepView> steps;
  for (std::size_t t = 0; t < trajectory.profiles.size(); ++t) {
    steps.push_back({&trajectory.profiles[t], &trajectory.reports[t],
                     t == 0 ? "initial" : "update"});
  }
  if (format == OutputFormat::kCsv) {
    WriteCsv(steps, out);
    return;
  }
  out << "{\n  \"kind\": \"trajectory\",\n";
  WriteShapeJson(trajectory.profiles.front(), out);
  out << "  \"epsilon\": " << FormatDouble(trajectory.epsilon) << ",\n";
  out << "  \"seed\": " << trajectory.seed << ",\n";
  out << "  \"hit_step\": "
      << (trajectory.hit_step ? std::to_string(*trajectory.hit_step) : "null")
      << ",\n";
  WriteStepsJson(steps, out);
  out << "}\n";
}

void EmitPath(const SatisficingPath& path, OutputFormat format,
              const std::string& destination) {
  if (path.steps.empty()) throw InvalidInput("cannot emit an empty path");
  ToDestination(destination,
                [&](std::ostream& out) { WritePath(path, format, out); });
}

void EmitTrajectory(const Trajectory& trajectory, OutputFormat format,
                    const std::string& destination) {
  if (trajectory.profiles.empty()) {
    throw InvalidInput("cannot emit an empty trajectory");
  }
  ToDestination(destination, [&](std::ostream& out) {
    WriteTrajectory(trajectory, format, out);
  });
}

TraceDocument ParseTrace(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) throw ParseError("document", "empty trace");
  return text[first] == '{' ? ParseJsonTrace(text) : ParseCsvTrace(text);
}

TraceDocument LoadTrace(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open trace file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseTrace(buffer.str());
}

void WriteProfile(const StrategyProfile& profile, double max_gap,
                  OutputFormat format, std::ostream& out) {
  if (format == OutputFormat::kCsv) {
    out << "player,action,probability\n";
    for (int i = 0; i < profile.num_players(); ++i) {
      for (int a = 0; a < profile[i].num_actions(); ++a) {
        out << i << ',' << a << ',' << FormatDouble(profile[i][a]) << "\n";
      }
    }
    return;
  }
  out << "{\n  \"kind\": \"equilibrium\",\n";
  WriteShapeJson(profile, out);
  out << "  \"max_gap\": " << FormatDouble(max_gap) << ",\n  \"profile\": ";
  WriteProfileJson(out, profile);
  out << "\n}\n";
}

void WriteBatch(const std::vector<BatchRow>& rows, OutputFormat format,
                std::ostream& out) {
  auto number = [](double v, const char* missing) {
    return std::isnan(v) ? std::string(missing) : FormatDouble(v);
  };
  if (format == OutputFormat::kCsv) {
    out << "game,name,trials,hits,hit_frequency,mean_hitting_time,"
           "median_hitting_time\n";
    for (const auto& r : rows) {
      out << r.game_index << ',' << r.game_name << ',' << r.trials << ','
          << r.hits << ',' << FormatDouble(r.hit_frequency) << ','
          << number(r.mean_hitting_time, "nan") << ','
          << number(r.median_hitting_time, "nan") << "\n";
    }
    return;
  }
  out << "{\n  \"kind\": \"batch\",\n  \"rows\": [";
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const auto& r = rows[k];
    out << (k ? ",\n" : "\n") << "    {\"game\": " << r.game_index
        << ", \"name\": " << json(r.game_name).dump()
        << ", \"trials\": " << r.trials << ", \"hits\": " << r.hits
        << ", \"hit_frequency\": " << FormatDouble(r.hit_frequency)
        << ", \"mean_hitting_time\": " << number(r.mean_hitting_time, "null")
        << ", \"median_hitting_time\": "
        << number(r.median_hitting_time, "null") << "}";
  }
  out << (rows.empty() ? "]\n}\n" : "\n  ]\n}\n");
}

}  // namespace satpath
