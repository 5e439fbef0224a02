#include "windings/report.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "windings/format.hpp"

namespace windings {
namespace {

using nlohmann::ordered_json;

const char* relation_name(Relation r) { return r == Relation::at_most ? "<=" : ">="; }

Relation relation_from(const std::string& s) {
  if (s == "<=") return Relation::at_most;
  if (s == ">=") return Relation::at_least;
  throw std::runtime_error("unknown relation '" + s + "' in report");
}

/// Non-finite numbers have no JSON form; they are written as strings.
ordered_json number(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

double read_number(const ordered_json& j) {
  if (j.is_number()) return j.get<double>();
  const auto s = j.get<std::string>();
  if (s == "nan") return std::nan("");
  if (s == "inf") return HUGE_VAL;
  if (s == "-inf") return -HUGE_VAL;
  throw std::runtime_error("bad number '" + s + "' in report");
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

bool CheckRecord::operator==(const CheckRecord& o) const {
  auto same = [](double a, double b) { return a == b || (std::isnan(a) && std::isnan(b)); };
  return id == o.id && anchor == o.anchor && same(alpha, o.alpha) && same(value, o.value) &&
         same(reference, o.reference) && same(statistic, o.statistic) &&
         same(threshold, o.threshold) && relation == o.relation && gating == o.gating &&
         passed == o.passed && n == o.n && note == o.note;
}

CheckRecord make_check(std::string id, std::string anchor, double alpha, double value,
                       double reference, double statistic, Relation relation, double threshold,
                       std::size_t n, bool gating, std::string note) {
  CheckRecord c;
  c.id = std::move(id);
  c.anchor = std::move(anchor);
  c.alpha = alpha;
  c.value = value;
  c.reference = reference;
  c.statistic = statistic;
  c.threshold = threshold;
  c.relation = relation;
  c.gating = gating;
  c.n = n;
  c.note = std::move(note);
  c.passed = relation == Relation::at_most ? statistic <= threshold : statistic >= threshold;
  return c;
}

bool ExperimentReport::passed() const {
  for (const auto& c : checks) {
    if (c.gating && !c.passed) return false;
  }
  return true;
}

std::string report_to_json(const ExperimentReport& r) {
  ordered_json checks = ordered_json::array();
  for (const auto& c : r.checks) {
    checks.push_back(ordered_json{
        {"id", c.id},
        {"anchor", c.anchor},
        {"alpha", number(c.alpha)},
        {"value", number(c.value)},
        {"reference", number(c.reference)},
        {"statistic", number(c.statistic)},
        {"relation", relation_name(c.relation)},
        {"threshold", number(c.threshold)},
        {"passed", c.passed},
        {"gating", c.gating},
        {"n", c.n},
        {"note", c.note},
    });
  }
  ordered_json j{
      {"suite", r.suite},
      {"passed", r.passed()},
      {"provenance", {{"seed", r.seed}, {"config_hash", r.config_hash}}},
      {"config", r.config_json.empty() ? ordered_json::object() : ordered_json::parse(r.config_json)},
      {"checks", checks},
  };
  return j.dump(2) + "\n";
}

ExperimentReport report_from_json(const std::string& text) {
  try {
    const auto j = ordered_json::parse(text);
    ExperimentReport r;
    r.suite = j.at("suite").get<std::string>();
    r.seed = j.at("provenance").at("seed").get<std::uint64_t>();
    r.config_hash = j.at("provenance").at("config_hash").get<std::string>();
    if (j.contains("config") && !j.at("config").empty()) r.config_json = j.at("config").dump(2) + "\n";  // as emit_config writes it
    for (const auto& c : j.at("checks")) {
      CheckRecord rec;
      rec.id = c.at("id").get<std::string>();
      rec.anchor = c.at("anchor").get<std::string>();
      rec.alpha = read_number(c.at("alpha"));
      rec.value = read_number(c.at("value"));
      rec.reference = read_number(c.at("reference"));
      rec.statistic = read_number(c.at("statistic"));
      rec.relation = relation_from(c.at("relation").get<std::string>());
      rec.threshold = read_number(c.at("threshold"));
      rec.passed = c.at("passed").get<bool>();
      rec.gating = c.at("gating").get<bool>();
      rec.n = c.at("n").get<std::size_t>();
      rec.note = c.at("note").get<std::string>();
      r.checks.push_back(std::move(rec));
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("malformed report: ") + e.what());
  }
}

std::string report_to_csv(const ExperimentReport& r) {
  std::ostringstream out;
  out << "suite,check,anchor,alpha,value,reference,statistic,relation,threshold,passed,gating,n,note\n";
  for (const auto& c : r.checks) {
    out << csv_field(r.suite) << ',' << csv_field(c.id) << ',' << csv_field(c.anchor) << ','
        << format_double(c.alpha) << ',' << format_double(c.value) << ','
        << format_double(c.reference) << ',' << format_double(c.statistic) << ','
        << relation_name(c.relation) << ',' << format_double(c.threshold) << ','
        << (c.passed ? "true" : "false") << ',' << (c.gating ? "true" : "false") << ',' << c.n << ','
        << csv_field(c.note) << '\n';
  }
  return out.str();
}

std::string format_report(const ExperimentReport& r) {
  std::ostringstream out;
  out << "suite " << r.suite << "  seed " << r.seed << "  config " << r.config_hash << "  "
      << (r.passed() ? "PASS" : "FAIL") << "\n";
  for (const auto& c : r.checks) {
    out << "  " << (c.passed ? "pass" : (c.gating ? "FAIL" : "info")) << "  " << std::left
        << std::setw(28) << c.id << " alpha=" << std::setw(4) << format_significant(c.alpha, 3)
        << " stat=" << std::setw(12) << format_significant(c.statistic, 5) << ' '
        << relation_name(c.relation) << ' ' << std::setw(8) << format_significant(c.threshold, 4)
        << " value=" << std::setw(12) << format_significant(c.value, 6)
        << " ref=" << std::setw(12) << format_significant(c.reference, 6) << " n=" << c.n;
    if (!c.gating) out << " [informational]";
    out << "\n      " << c.anchor;
    if (!c.note.empty()) out << " -- " << c.note;
    out << "\n";
  }
  return out.str();
}

std::string report_stem(const std::string& suite, const std::vector<double>& alphas,
                        std::uint64_t seed) {
  std::string s = suite + "_a";
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    if (i > 0) s += '-';
    s += format_double(alphas[i]);
  }
  return s + "_s" + std::to_string(seed);
}

}  // namespace windings
