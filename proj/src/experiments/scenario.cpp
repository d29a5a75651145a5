#include "fuzzynv/experiments/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

namespace fuzzynv::experiments {

using nlohmann::json;

ConfigError::ConfigError(std::string source, int line, std::string path, const std::string& message)
    : InvalidArgument([&] {
        std::ostringstream os;
        os << source;
        if (line > 0) os << ':' << line;
        os << ": ";
        if (!path.empty()) os << path << ": ";
        os << message;
        return os.str();
      }()),
      source_(std::move(source)),
      line_(line),
      path_(std::move(path)) {}

std::vector<double> linear_grid(double start, double stop, double step) {
  if (!std::isfinite(start) || !std::isfinite(stop) || !(step > 0.0) || stop < start) {
    throw InvalidArgument("grid needs finite start <= stop and step > 0");
  }
  const double steps = (stop - start) / step;
  const double n = std::round(steps);
  if (std::abs(steps - n) > 1e-9 * std::max(1.0, n)) {
    throw InvalidArgument("grid step does not divide stop - start");
  }
  std::vector<double> out(static_cast<std::size_t>(n) + 1);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = start + static_cast<double>(i) * step;
  out.back() = stop;
  return out;
}

ScenarioConfig reference_scenario(double case2_p4) {
  ScenarioConfig s;
  s.costs = {{"high_margin", CostStructure(10.0, 50.0, 5.0)}, {"low_margin", CostStructure(10.0, 12.0, 5.0)}};
  s.weights = {{"case1", TrapezoidalFuzzyNumber::weight(0.1, 0.2, 0.4, 0.4)},
               {"case2", TrapezoidalFuzzyNumber::weight(0.6, 0.7, 0.9, case2_p4)}};
  s.beta_grid = linear_grid(0.0, 1.0, 0.05);
  s.density_grid = linear_grid(0.0, 320.0, 1.0);
  SimulationConfig sim;
  sim.rating_grid = linear_grid(0.5, 4.5, 0.01);
  sim.replicates = 10;
  s.simulation = sim;
  return s;
}

namespace {

// Counts the characters the JSON lexer has consumed so that SAX events can be
// mapped back to source lines.
class CountingIterator {
 public:
  using iterator_category = std::input_iterator_tag;
  using value_type = char;
  using difference_type = std::ptrdiff_t;
  using pointer = const char*;
  using reference = const char&;

  CountingIterator() = default;
  CountingIterator(const char* p, std::size_t* consumed) : p_(p), consumed_(consumed) {}

  reference operator*() const { return *p_; }
  CountingIterator& operator++() {
    ++p_;
    if (consumed_ != nullptr) ++*consumed_;
    return *this;
  }
  CountingIterator operator++(int) {
    CountingIterator t = *this;
    ++*this;
    return t;
  }
  friend bool operator==(const CountingIterator& a, const CountingIterator& b) { return a.p_ == b.p_; }

 private:
  const char* p_ = nullptr;
  std::size_t* consumed_ = nullptr;
};

using LineMap = std::map<std::string, int>;

std::string escape_token(const std::string& key) {
  std::string out;
  for (char c : key) {
    if (c == '~') {
      out += "~0";
    } else if (c == '/') {
      out += "~1";
    } else {
      out += c;
    }
  }
  return out;
}

class LocatingSax {
 public:
  LocatingSax(json& root, std::string_view text, const std::size_t* consumed)
      : dom_(root, false), text_(text), consumed_(consumed) {}

  bool null() { return scalar(dom_.null()); }
  bool boolean(bool v) { return scalar(dom_.boolean(v)); }
  bool number_integer(json::number_integer_t v) { return scalar(dom_.number_integer(v)); }
  bool number_unsigned(json::number_unsigned_t v) { return scalar(dom_.number_unsigned(v)); }
  bool number_float(json::number_float_t v, const std::string& s) { return scalar(dom_.number_float(v, s)); }
  bool string(std::string& v) { return scalar(dom_.string(v)); }
  bool binary(json::binary_t& v) { return scalar(dom_.binary(v)); }

  bool start_object(std::size_t n) {
    note();
    frames_.push_back({false, {}, 0});
    return dom_.start_object(n);
  }
  bool key(std::string& k) {
    frames_.back().key = k;
    note();
    return dom_.key(k);
  }
  bool end_object() {
    frames_.pop_back();
    advance();
    return dom_.end_object();
  }
  bool start_array(std::size_t n) {
    note();
    frames_.push_back({true, {}, 0});
    return dom_.start_array(n);
  }
  bool end_array() {
    frames_.pop_back();
    advance();
    return dom_.end_array();
  }
  bool parse_error(std::size_t position, const std::string& token, const nlohmann::detail::exception& ex) {
    return dom_.parse_error(position, token, ex);
  }

  LineMap take_lines() { return std::move(lines_); }

 private:
  struct Frame {
    bool array;
    std::string key;
    std::size_t index;
  };

  std::string path() const {
    std::string p;
    for (const Frame& f : frames_) {
      p += '/';
      p += f.array ? std::to_string(f.index) : escape_token(f.key);
    }
    return p;
  }

  int line_now() const {
    // Every event fires after its last character was consumed; that
    // character (a quote, bracket or delimiter) is not counted.
    const std::size_t end = *consumed_ > 0 ? std::min(*consumed_ - 1, text_.size()) : 0;
    return 1 + static_cast<int>(std::count(text_.begin(), text_.begin() + static_cast<std::ptrdiff_t>(end), '\n'));
  }

  void note() { lines_.emplace(path(), line_now()); }
  void advance() {
    if (!frames_.empty() && frames_.back().array) ++frames_.back().index;
  }
  bool scalar(bool ok) {
    // The DOM parser has already stored the value; record its location.
    note();
    advance();
    return ok;
  }

  nlohmann::detail::json_sax_dom_parser<json> dom_;
  std::string_view text_;
  const std::size_t* consumed_;
  std::vector<Frame> frames_;
  LineMap lines_;
};

class Reader {
 public:
  Reader(std::string source, LineMap lines) : source_(std::move(source)), lines_(std::move(lines)) {}

  [[noreturn]] void fail(const std::string& path, const std::string& message) const {
    int line = 0;
    for (std::string p = path;; p = p.substr(0, p.rfind('/'))) {
      if (auto it = lines_.find(p); it != lines_.end()) {
        line = it->second;
        break;
      }
      if (p.empty()) break;
    }
    throw ConfigError(source_, line, path.empty() ? "/" : path, message);
  }

  void expect_object(const json& j, const std::string& path, std::initializer_list<std::string_view> required,
                     std::initializer_list<std::string_view> optional = {}) const {
    if (!j.is_object()) fail(path, "expected an object");
    for (const auto& [k, v] : j.items()) {
      const auto known = [&](std::initializer_list<std::string_view> keys) {
        return std::find(keys.begin(), keys.end(), k) != keys.end();
      };
      if (!known(required) && !known(optional)) fail(path + "/" + escape_token(k), "unknown key '" + k + "'");
    }
    for (std::string_view k : required) {
      if (!j.contains(std::string(k))) fail(path, "missing required key '" + std::string(k) + "'");
    }
  }

  double number(const json& j, const std::string& path) const {
    if (!j.is_number()) fail(path, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) fail(path, "expected a finite number");
    return v;
  }

  std::int64_t integer(const json& j, const std::string& path) const {
    if (!j.is_number_integer()) fail(path, "expected an integer");
    return j.get<std::int64_t>();
  }

  std::uint64_t unsigned_integer(const json& j, const std::string& path) const {
    if (!j.is_number_unsigned()) fail(path, "expected a non-negative integer");
    return j.get<std::uint64_t>();
  }

  std::string string(const json& j, const std::string& path) const {
    if (!j.is_string()) fail(path, "expected a string");
    return j.get<std::string>();
  }

  std::vector<double> numbers(const json& j, const std::string& path, std::size_t exact_size = 0) const {
    if (!j.is_array()) fail(path, "expected an array of numbers");
    if (exact_size != 0 && j.size() != exact_size) {
      fail(path, "expected exactly " + std::to_string(exact_size) + " numbers");
    }
    std::vector<double> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], path + "/" + std::to_string(i)));
    return out;
  }

  /// Either an explicit list or {"start", "stop", "step"}.
  std::vector<double> grid(const json& j, const std::string& path) const {
    if (j.is_array()) {
      std::vector<double> g = numbers(j, path);
      if (g.empty()) fail(path, "grid must not be empty");
      return g;
    }
    expect_object(j, path, {"start", "stop", "step"});
    const double start = number(j["start"], path + "/start");
    const double stop = number(j["stop"], path + "/stop");
    const double step = number(j["step"], path + "/step");
    try {
      return linear_grid(start, stop, step);
    } catch (const InvalidArgument& e) {
      fail(path, e.what());
    }
  }

  void check_name(const std::string& name, const std::string& path) const {
    if (name.empty()) fail(path, "name must not be empty");
    if (name.find_first_of(",\"\n\r") != std::string::npos) fail(path, "name must not contain commas, quotes or newlines");
  }

 private:
  std::string source_;
  LineMap lines_;
};

template <class F>
auto guarded(const Reader& r, const std::string& path, F&& f) {
  try {
    return f();
  } catch (const ConfigError&) {
    throw;
  } catch (const InvalidArgument& e) {
    r.fail(path, e.what());
  }
}

SimulationConfig read_simulation(const Reader& r, const json& j, const std::string& path) {
  r.expect_object(j, path,
                  {"n_visitors", "prospect_fraction", "ric_fraction", "rsc_q_means", "prospect_q_means", "q_std",
                   "mean_rating", "seed"},
                  {"rating_grid", "replicates"});
  SimulationConfig s;
  PopulationConfig& p = s.population;
  p.n_visitors = r.integer(j["n_visitors"], path + "/n_visitors");
  p.prospect_fraction = r.number(j["prospect_fraction"], path + "/prospect_fraction");
  p.ric_fraction = r.number(j["ric_fraction"], path + "/ric_fraction");
  const auto rsc = r.numbers(j["rsc_q_means"], path + "/rsc_q_means", 2);
  const auto pro = r.numbers(j["prospect_q_means"], path + "/prospect_q_means", 2);
  p.rsc_q_means = {rsc[0], rsc[1]};
  p.prospect_q_means = {pro[0], pro[1]};
  p.q_std = r.number(j["q_std"], path + "/q_std");
  p.mean_rating = r.number(j["mean_rating"], path + "/mean_rating");
  p.seed = r.unsigned_integer(j["seed"], path + "/seed");
  guarded(r, path, [&] {
    p.validate();
    return 0;
  });
  s.rating_grid = j.contains("rating_grid") ? r.grid(j["rating_grid"], path + "/rating_grid")
                                            : linear_grid(0.5, 4.5, 0.01);
  for (double m : s.rating_grid) {
    if (!(m >= 0.0 && m <= 5.0)) r.fail(path + "/rating_grid", "ratings must lie in [0, 5]");
  }
  if (j.contains("replicates")) {
    const std::int64_t n = r.integer(j["replicates"], path + "/replicates");
    if (n < 1 || n > 1000) r.fail(path + "/replicates", "replicates must lie in [1, 1000]");
    s.replicates = static_cast<int>(n);
  }
  return s;
}

ScenarioConfig read_scenario(const Reader& r, const json& root) {
  r.expect_object(root, "", {"components", "costs", "weights", "beta_grid"},
                  {"density_grid", "simulation", "output_dir"});
  ScenarioConfig s;

  const json& comp = root["components"];
  r.expect_object(comp, "/components", {"mu1", "sigma1", "mu2", "sigma2"});
  const auto component = [&](const char* mu, const char* sigma) {
    const double m = r.number(comp[mu], std::string("/components/") + mu);
    const double sd = r.number(comp[sigma], std::string("/components/") + sigma);
    return guarded(r, std::string("/components/") + sigma, [&] { return GaussianComponent(m, sd); });
  };
  s.c1 = component("mu1", "sigma1");
  s.c2 = component("mu2", "sigma2");

  std::set<std::string> names;
  const json& costs = root["costs"];
  if (!costs.is_array() || costs.empty()) r.fail("/costs", "expected a non-empty array");
  for (std::size_t i = 0; i < costs.size(); ++i) {
    const std::string path = "/costs/" + std::to_string(i);
    r.expect_object(costs[i], path, {"name", "C", "M", "V"});
    const std::string name = r.string(costs[i]["name"], path + "/name");
    r.check_name(name, path + "/name");
    if (!names.insert(name).second) r.fail(path + "/name", "duplicate cost name '" + name + "'");
    const double C = r.number(costs[i]["C"], path + "/C");
    const double M = r.number(costs[i]["M"], path + "/M");
    const double V = r.number(costs[i]["V"], path + "/V");
    s.costs.push_back({name, guarded(r, path, [&] { return CostStructure(C, M, V); })});
  }

  names.clear();
  const json& weights = root["weights"];
  if (!weights.is_array() || weights.empty()) r.fail("/weights", "expected a non-empty array");
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const std::string path = "/weights/" + std::to_string(i);
    r.expect_object(weights[i], path, {"name", "p"});
    const std::string name = r.string(weights[i]["name"], path + "/name");
    r.check_name(name, path + "/name");
    if (!names.insert(name).second) r.fail(path + "/name", "duplicate weight name '" + name + "'");
    const auto p = r.numbers(weights[i]["p"], path + "/p", 4);
    s.weights.push_back({name, guarded(r, path + "/p", [&] {
                           return TrapezoidalFuzzyNumber::weight(p[0], p[1], p[2], p[3]);
                         })});
  }

  s.beta_grid = r.grid(root["beta_grid"], "/beta_grid");
  for (std::size_t i = 0; i < s.beta_grid.size(); ++i) {
    if (!(s.beta_grid[i] >= 0.0 && s.beta_grid[i] <= 1.0)) r.fail("/beta_grid", "beta values must lie in [0, 1]");
    if (i > 0 && !(s.beta_grid[i] > s.beta_grid[i - 1])) r.fail("/beta_grid", "beta grid must be strictly increasing");
  }

  if (root.contains("density_grid")) {
    s.density_grid = r.grid(root["density_grid"], "/density_grid");
  } else {
    const double hi = std::max(s.c1.mu() + 4.0 * s.c1.sigma(), s.c2.mu() + 4.0 * s.c2.sigma());
    s.density_grid = linear_grid(0.0, std::ceil(hi), 1.0);
  }
  if (!std::is_sorted(s.density_grid.begin(), s.density_grid.end())) {
    r.fail("/density_grid", "density grid must be sorted");
  }

  if (root.contains("simulation")) s.simulation = read_simulation(r, root["simulation"], "/simulation");
  if (root.contains("output_dir")) {
    s.output_dir = r.string(root["output_dir"], "/output_dir");
    if (s.output_dir.empty()) r.fail("/output_dir", "must not be empty");
  }
  return s;
}

}  // namespace

ScenarioConfig parse_scenario(std::string_view text, const std::string& source) {
  std::size_t consumed = 0;
  json root;
  LocatingSax sax(root, text, &consumed);
  try {
    json::sax_parse(CountingIterator(text.data(), &consumed), CountingIterator(text.data() + text.size(), nullptr),
                    &sax);
  } catch (const json::parse_error& e) {
    const std::size_t at = std::min<std::size_t>(e.byte, text.size());
    const int line = 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(at > 0 ? at - 1 : 0), '\n'));
    std::string msg = e.what();
    if (auto pos = msg.find("syntax error"); pos != std::string::npos) msg = msg.substr(pos);
    throw ConfigError(source, line, "", msg);
  }
  const Reader reader(source, sax.take_lines());
  return read_scenario(reader, root);
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path.string(), 0, "", "cannot open file");
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_scenario(text, path.string());
}

}  // namespace fuzzynv::experiments
