// Copyright 2026 The Percolation Games Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "percolation/config.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "percolation/errors.hpp"

namespace percolation {
namespace {

struct Entry {
  std::string value;
  std::size_t line = 0;
  bool used = false;
};

using Section = std::map<std::string, Entry>;

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<std::string_view> words(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t k = 0;
  while (k < s.size()) {
    while (k < s.size() && (s[k] == ' ' || s[k] == '\t')) ++k;
    const std::size_t start = k;
    while (k < s.size() && s[k] != ' ' && s[k] != '\t') ++k;
    if (k > start) out.push_back(s.substr(start, k - start));
  }
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view source) : source_(source) {}

  [[noreturn]] void fail(std::size_t line, const std::string& msg) const {
    throw ConfigError(std::string(source_) + ":" + std::to_string(line) + ": " +
                      msg);
  }
  [[noreturn]] void fail(const std::string& section, const std::string& key,
                         const Entry& e, const std::string& msg) const {
    fail(e.line, "[" + section + "] " + key + ": " + msg);
  }

  template <class T>
  T number(const std::string& section, const std::string& key, const Entry& e,
           std::string_view token) const {
    T v{};
    const auto res = std::from_chars(token.data(), token.data() + token.size(), v);
    if (res.ec != std::errc() || res.ptr != token.data() + token.size() ||
        token.empty()) {
      fail(section, key, e, "cannot parse '" + std::string(token) + "' as a number");
    }
    return v;
  }

  template <class T>
  std::vector<T> numbers(const std::string& section, const std::string& key,
                         const Entry& e, std::string_view text) const {
    std::vector<T> out;
    for (auto w : words(text)) out.push_back(number<T>(section, key, e, w));
    return out;
  }

  template <class T>
  T scalar(const std::string& section, const std::string& key,
           const Entry& e) const {
    const auto w = words(e.value);
    if (w.size() != 1) fail(section, key, e, "expected a single value");
    return number<T>(section, key, e, w[0]);
  }

  bool boolean(const std::string& section, const std::string& key,
               const Entry& e) const {
    if (e.value == "true") return true;
    if (e.value == "false") return false;
    fail(section, key, e, "expected true or false");
  }

  LatticePoint point(const std::string& section, const std::string& key,
                     const Entry& e, std::string_view text,
                     std::size_t dim) const {
    auto c = numbers<Coord>(section, key, e, text);
    if (c.size() != dim) {
      fail(section, key, e,
           "expected " + std::to_string(dim) + " coordinates, got " +
               std::to_string(c.size()));
    }
    return LatticePoint(std::move(c));
  }

 private:
  std::string_view source_;
};

// Collects "<prefix>.<k>" keys, requiring k = 0..count-1 exactly.
std::vector<std::pair<std::string, Entry*>> indexed(const Parser& parser,
                                                    const std::string& section,
                                                    Section& entries,
                                                    const std::string& prefix) {
  std::map<std::size_t, std::pair<std::string, Entry*>> found;
  for (auto& [key, entry] : entries) {
    if (key.rfind(prefix + ".", 0) != 0) continue;
    const std::string_view tail = std::string_view(key).substr(prefix.size() + 1);
    std::size_t k = 0;
    const auto res = std::from_chars(tail.data(), tail.data() + tail.size(), k);
    if (res.ec != std::errc() || res.ptr != tail.data() + tail.size() ||
        tail.empty()) {
      parser.fail(section, key, entry, "index must be a non-negative integer");
    }
    found[k] = {key, &entry};
    entry.used = true;
  }
  std::vector<std::pair<std::string, Entry*>> out;
  for (auto& [k, item] : found) {
    if (k != out.size()) {
      parser.fail(section, item.first, *item.second,
                  prefix + " indexes must run 0, 1, 2, ... without gaps");
    }
    out.push_back(item);
  }
  return out;
}

Entry* take(Section& s, const std::string& key) {
  auto it = s.find(key);
  if (it == s.end()) return nullptr;
  it->second.used = true;
  return &it->second;
}

GameSpec parse_game(const Parser& p, Section& s, std::size_t header_line) {
  const std::string sec = "game";
  Entry* dim_e = take(s, "dim");
  Entry* act_e = take(s, "actions");
  if (!dim_e) p.fail(header_line, "[game] missing key 'dim'");
  if (!act_e) p.fail(header_line, "[game] missing key 'actions'");
  const auto dim = p.scalar<std::size_t>(sec, "dim", *dim_e);
  const auto acts = p.numbers<std::size_t>(sec, "actions", *act_e, act_e->value);
  if (acts.size() != 2) p.fail(sec, "actions", *act_e, "expected '|I| |J|'");
  const auto rows = indexed(p, sec, s, "q");
  if (rows.size() != acts[0]) {
    p.fail(header_line, "[game] expected " + std::to_string(acts[0]) +
                            " rows q.0 .. q." + std::to_string(acts[0] - 1) +
                            ", got " + std::to_string(rows.size()));
  }
  std::vector<LatticePoint> q;
  for (const auto& [key, e] : rows) {
    const auto cells = split(e->value, '|');
    if (cells.size() != acts[1]) {
      p.fail(sec, key, *e,
             "expected " + std::to_string(acts[1]) + " transitions separated by '|'");
    }
    for (auto cell : cells) q.push_back(p.point(sec, key, *e, cell, dim));
  }
  std::optional<LatticePoint> direction;
  if (Entry* d = take(s, "direction")) {
    direction = p.point(sec, "direction", *d, d->value, dim);
  }
  try {
    return GameSpec(dim, acts[0], acts[1], std::move(q), std::move(direction));
  } catch (const Error& err) {
    p.fail(header_line, std::string("[game] ") + err.what());
  }
}

EnvironmentModel parse_model(const Parser& p, Section& s,
                             std::size_t header_line) {
  const std::string sec = "model";
  Entry* kind_e = take(s, "kind");
  if (!kind_e) p.fail(header_line, "[model] missing key 'kind'");
  const std::string& kind = kind_e->value;
  if (kind == "iid-bernoulli") {
    Entry* pe = take(s, "p");
    if (!pe) p.fail(header_line, "[model] iid-bernoulli needs 'p'");
    return IidBernoulli{p.scalar<double>(sec, "p", *pe)};
  }
  if (kind == "iid-table") {
    IidTable t;
    for (const auto& [key, e] : indexed(p, sec, s, "support")) {
      PayoffMatrix m;
      for (auto row : split(e->value, ';')) {
        const auto vals = p.numbers<double>(sec, key, *e, row);
        if (m.rows == 0) m.cols = vals.size();
        if (vals.size() != m.cols || vals.empty()) {
          p.fail(sec, key, *e, "matrix rows must have equal, non-zero length");
        }
        m.entries.insert(m.entries.end(), vals.begin(), vals.end());
        ++m.rows;
      }
      t.support.push_back(std::move(m));
    }
    Entry* pe = take(s, "probs");
    if (!pe) p.fail(header_line, "[model] iid-table needs 'probs'");
    t.probs = p.numbers<double>(sec, "probs", *pe, pe->value);
    return t;
  }
  if (kind == "squares") {
    Squares q;
    if (Entry* e = take(s, "k_max")) q.k_max = p.scalar<int>(sec, "k_max", *e);
    if (Entry* e = take(s, "random_draws")) {
      q.random_draws = p.boolean(sec, "random_draws", *e);
    }
    for (const auto& [key, e] : indexed(p, sec, s, "plant")) {
      const auto w = words(e->value);
      if (w.size() != 5) p.fail(sec, key, *e, "expected 'kind scale x y h'");
      PlantedSquare plant;
      if (w[0] == "one") {
        plant.kind = SquareKind::kOne;
      } else if (w[0] == "zero") {
        plant.kind = SquareKind::kZero;
      } else {
        p.fail(sec, key, *e, "square kind must be 'one' or 'zero'");
      }
      plant.scale = p.number<int>(sec, key, *e, w[1]);
      plant.center = LatticePoint{p.number<Coord>(sec, key, *e, w[2]),
                                  p.number<Coord>(sec, key, *e, w[3]),
                                  p.number<Coord>(sec, key, *e, w[4])};
      q.plants.push_back(std::move(plant));
    }
    return q;
  }
  p.fail(sec, "kind", *kind_e,
         "unknown model kind '" + kind +
             "' (expected iid-bernoulli, iid-table or squares)");
}

void parse_experiment(const Parser& p, Section& s, ExperimentConfig& c) {
  const std::string sec = "experiment";
  if (Entry* e = take(s, "seed")) c.base_seed = p.scalar<std::uint64_t>(sec, "seed", *e);
  if (Entry* e = take(s, "num_seeds")) {
    c.num_seeds = p.scalar<std::size_t>(sec, "num_seeds", *e);
  }
  if (Entry* e = take(s, "horizons")) {
    c.horizons = p.numbers<std::size_t>(sec, "horizons", *e, e->value);
  }
  if (Entry* e = take(s, "lambdas")) {
    c.lambdas = p.numbers<double>(sec, "lambdas", *e, e->value);
  }
  if (Entry* e = take(s, "epsilon")) c.epsilon = p.scalar<double>(sec, "epsilon", *e);
  if (Entry* e = take(s, "origin")) {
    c.origin = p.point(sec, "origin", *e, e->value, c.spec.dim());
  }
  if (Entry* e = take(s, "pairs")) {
    c.pairs = p.numbers<std::size_t>(sec, "pairs", *e, e->value);
  }
  if (Entry* e = take(s, "scale")) c.scale = p.scalar<int>(sec, "scale", *e);
  if (Entry* e = take(s, "state_budget")) {
    c.solve.state_budget = p.scalar<std::uint64_t>(sec, "state_budget", *e);
  }
  if (Entry* e = take(s, "catalog_budget")) {
    c.catalog_budget = p.scalar<std::uint64_t>(sec, "catalog_budget", *e);
  }
  if (Entry* e = take(s, "record_cone_min")) {
    c.record_cone_min = p.boolean(sec, "record_cone_min", *e);
  }
}

std::string join_point(const LatticePoint& z) {
  std::string out;
  for (std::size_t k = 0; k < z.dim(); ++k) {
    if (k) out += ' ';
    out += std::to_string(z[k]);
  }
  return out;
}

template <class T, class Fmt>
std::string join(const std::vector<T>& v, Fmt fmt) {
  std::string out;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k) out += ' ';
    out += fmt(v[k]);
  }
  return out;
}

}  // namespace

ConfigFile parse_config_text(std::string_view text, std::string_view source) {
  const Parser parser(source);
  std::map<std::string, Section> sections;
  std::map<std::string, std::size_t> header_lines;
  std::string current;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') parser.fail(line_no, "malformed section header");
      current = std::string(trim(line.substr(1, line.size() - 2)));
      if (current != "game" && current != "model" && current != "experiment") {
        parser.fail(line_no, "unknown section [" + current + "]");
      }
      if (header_lines.contains(current)) {
        parser.fail(line_no, "duplicate section [" + current + "]");
      }
      header_lines[current] = line_no;
      sections[current];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) parser.fail(line_no, "expected 'key = value'");
    if (current.empty()) parser.fail(line_no, "key outside of any section");
    const std::string key(trim(line.substr(0, eq)));
    if (key.empty()) parser.fail(line_no, "empty key");
    auto& section = sections[current];
    if (auto it = section.find(key); it != section.end()) {
      parser.fail(line_no, "duplicate key '" + key + "' in [" + current +
                               "] (first set on line " +
                               std::to_string(it->second.line) + ")");
    }
    section[key] = Entry{std::string(trim(line.substr(eq + 1))), line_no, false};
  }

  ConfigFile out;
  if (sections.contains("game")) {
    out.has_game = true;
    out.experiment.spec = parse_game(parser, sections["game"], header_lines["game"]);
  }
  if (sections.contains("model")) {
    out.has_model = true;
    out.experiment.model =
        parse_model(parser, sections["model"], header_lines["model"]);
  }
  if (sections.contains("experiment")) {
    parse_experiment(parser, sections["experiment"], out.experiment);
  }
  for (const auto& [name, section] : sections) {
    for (const auto& [key, entry] : section) {
      if (!entry.used) {
        parser.fail(entry.line, "unknown key '" + key + "' in [" + name + "]");
      }
    }
  }
  try {
    if (out.has_model) validate_model(out.experiment.model, out.experiment.spec);
    if (out.experiment.origin &&
        out.experiment.origin->dim() != out.experiment.spec.dim()) {
      throw ConfigError("origin does not match game dimension");
    }
  } catch (const Error& e) {
    throw ConfigError(std::string(source) + ": " + e.what());
  }
  return out;
}

ConfigFile parse_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path);
}

std::string model_kind_name(const EnvironmentModel& model) {
  switch (model.index()) {
    case 0:
      return "iid-bernoulli";
    case 1:
      return "iid-table";
    default:
      return "squares";
  }
}

std::string serialize_config(const ExperimentConfig& c) {
  std::ostringstream out;
  const GameSpec& g = c.spec;
  out << "[game]\n";
  out << "dim = " << g.dim() << '\n';
  out << "actions = " << g.num_actions_p1() << ' ' << g.num_actions_p2() << '\n';
  for (std::size_t i = 0; i < g.num_actions_p1(); ++i) {
    out << "q." << i << " = ";
    for (std::size_t j = 0; j < g.num_actions_p2(); ++j) {
      if (j) out << " | ";
      out << join_point(g.transition(i, j));
    }
    out << '\n';
  }
  if (g.direction()) out << "direction = " << join_point(*g.direction()) << '\n';

  out << "\n[model]\n";
  out << "kind = " << model_kind_name(c.model) << '\n';
  if (const auto* b = std::get_if<IidBernoulli>(&c.model)) {
    out << "p = " << format_number(b->p) << '\n';
  } else if (const auto* t = std::get_if<IidTable>(&c.model)) {
    for (std::size_t k = 0; k < t->support.size(); ++k) {
      const auto& m = t->support[k];
      out << "support." << k << " = ";
      for (std::size_t r = 0; r < m.rows; ++r) {
        if (r) out << " ; ";
        for (std::size_t col = 0; col < m.cols; ++col) {
          if (col) out << ' ';
          out << format_number(m(r, col));
        }
      }
      out << '\n';
    }
    out << "probs = " << join(t->probs, format_number) << '\n';
  } else {
    const auto& s = std::get<Squares>(c.model);
    out << "k_max = " << s.k_max << '\n';
    out << "random_draws = " << (s.random_draws ? "true" : "false") << '\n';
    for (std::size_t k = 0; k < s.plants.size(); ++k) {
      const auto& p = s.plants[k];
      out << "plant." << k << " = "
          << (p.kind == SquareKind::kOne ? "one" : "zero") << ' ' << p.scale
          << ' ' << join_point(p.center) << '\n';
    }
  }

  auto to_s = [](std::size_t v) { return std::to_string(v); };
  out << "\n[experiment]\n";
  out << "seed = " << c.base_seed << '\n';
  out << "num_seeds = " << c.num_seeds << '\n';
  out << "horizons = " << join(c.horizons, to_s) << '\n';
  out << "lambdas = " << join(c.lambdas, format_number) << '\n';
  out << "epsilon = " << format_number(c.epsilon) << '\n';
  if (c.origin) out << "origin = " << join_point(*c.origin) << '\n';
  out << "pairs = " << join(c.pairs, to_s) << '\n';
  out << "scale = " << c.scale << '\n';
  out << "state_budget = " << c.solve.state_budget << '\n';
  out << "catalog_budget = " << c.catalog_budget << '\n';
  out << "record_cone_min = " << (c.record_cone_min ? "true" : "false") << '\n';
  return out.str();
}

}  // namespace percolation
