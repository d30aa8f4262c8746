#include "leglab/config.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "leglab/error.hpp"

namespace leglab {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

[[noreturn]] void config_error(std::string_view origin, std::size_t line,
                               const std::string& msg) {
  throw Error(ErrorCode::config, std::string(origin) + ":" +
                                     std::to_string(line) + ": " + msg);
}

std::optional<double> to_double(std::string_view s) {
  s = trim(s);
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

template <class Int>
std::optional<Int> to_int(std::string_view s) {
  s = trim(s);
  Int v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::optional<bool> to_bool(std::string_view s) {
  const std::string l = lower(trim(s));
  if (l == "true" || l == "yes" || l == "1") return true;
  if (l == "false" || l == "no" || l == "0") return false;
  return std::nullopt;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t p = s.find(sep, start);
    out.push_back(s.substr(start, p == std::string_view::npos ? p : p - start));
    if (p == std::string_view::npos) break;
    start = p + 1;
  }
  return out;
}

// Strips a trailing ';' or '#' comment.
std::string_view strip_comment(std::string_view line) {
  const std::size_t p = line.find_first_of("#;");
  return p == std::string_view::npos ? line : line.substr(0, p);
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::config, "cannot read file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ParamTable parse_param_list(std::string_view text) {
  ParamTable out;
  if (trim(text).empty()) return out;
  for (std::string_view item : split(text, ',')) {
    item = trim(item);
    const std::size_t eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::config,
                  "parameter '" + std::string(item) + "' is not k=v");
    }
    const std::string key(trim(item.substr(0, eq)));
    const auto v = to_double(item.substr(eq + 1));
    if (key.empty() || !v) {
      throw Error(ErrorCode::config,
                  "parameter '" + std::string(item) + "' is not k=v");
    }
    out[key] = *v;
  }
  return out;
}

GridSpec parse_grid(std::string_view text) {
  text = trim(text);
  const std::size_t p = text.find_first_of("xX");
  const auto nx = p == std::string_view::npos ? std::nullopt : to_int<int>(text.substr(0, p));
  const auto ny = p == std::string_view::npos ? std::nullopt : to_int<int>(text.substr(p + 1));
  if (!nx || !ny) {
    throw Error(ErrorCode::config,
                "grid '" + std::string(text) + "' is not NXxNY");
  }
  if (*nx < 4 || *ny < 4) {
    throw Error(ErrorCode::grid, "grid needs nx, ny >= 4 (got " +
                                     std::string(text) + ")");
  }
  return {*nx, *ny};
}

void apply_config_text(RunConfig& cfg, std::string_view text,
                       std::string_view origin) {
  std::string section;
  std::size_t line_no = 0;
  for (std::string_view raw : split(text, '\n')) {
    ++line_no;
    const std::string_view line = trim(strip_comment(raw));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') config_error(origin, line_no, "unterminated section header");
      section = lower(trim(line.substr(1, line.size() - 2)));
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) config_error(origin, line_no, "expected key = value");
    const std::string key = lower(trim(line.substr(0, eq)));
    const std::string_view val = trim(line.substr(eq + 1));
    try {
      if (section == "surface") {
        if (key == "name") cfg.surface = std::string(val);
        else if (key == "params") cfg.params = parse_param_list(val);
        else if (key == "expr_file") cfg.expr_file = std::string(val);
        else config_error(origin, line_no, "unknown key '" + key + "' in [surface]");
      } else if (section == "grid") {
        GridSpec g = cfg.grid.value_or(GridSpec{});
        if (key == "size") {
          g = parse_grid(val);
        } else if (key == "nx" || key == "ny") {
          const auto n = to_int<int>(val);
          if (!n) config_error(origin, line_no, "grid size must be an integer");
          if (*n < 4) throw Error(ErrorCode::grid, "grid needs nx, ny >= 4");
          (key == "nx" ? g.nx : g.ny) = *n;
        } else {
          config_error(origin, line_no, "unknown key '" + key + "' in [grid]");
        }
        cfg.grid = g;
      } else if (section == "tolerances") {
        const auto v = to_double(val);
        if (!v || !(*v > 0.0)) config_error(origin, line_no, "tolerance must be a positive number");
        cfg.tolerances[key] = *v;
      } else if (section == "output") {
        if (key != "format") config_error(origin, line_no, "unknown key '" + key + "' in [output]");
        const std::string f = lower(val);
        if (f == "text") cfg.format = OutputFormat::text;
        else if (f == "json") cfg.format = OutputFormat::json;
        else config_error(origin, line_no, "format must be text or json");
      } else if (section == "run") {
        if (key == "seed") {
          const auto v = to_int<std::uint64_t>(val);
          if (!v) config_error(origin, line_no, "seed must be a non-negative integer");
          cfg.seed = *v;
        } else if (key == "workers") {
          const auto v = to_int<unsigned>(val);
          if (!v || *v == 0) config_error(origin, line_no, "workers must be a positive integer");
          cfg.workers = *v;
        } else if (key == "sample_points") {
          const auto v = to_int<std::size_t>(val);
          if (!v) config_error(origin, line_no, "sample_points must be a non-negative integer");
          cfg.sample_points = *v;
        } else {
          config_error(origin, line_no, "unknown key '" + key + "' in [run]");
        }
      } else if (section == "ambient") {
        if (key != "reeb_sign") config_error(origin, line_no, "unknown key '" + key + "' in [ambient]");
        const std::string s = lower(val);
        if (s == "minus_i" || s == "-i") cfg.reeb = ReebSign::minus_i;
        else if (s == "plus_i" || s == "+i" || s == "i") cfg.reeb = ReebSign::plus_i;
        else config_error(origin, line_no, "reeb_sign must be minus_i or plus_i");
      } else {
        config_error(origin, line_no, "key outside a known section");
      }
    } catch (const Error& e) {
      if (std::string_view(e.what()).find(origin) != std::string_view::npos) throw;
      std::string_view msg = e.what();
      msg.remove_prefix(std::min(msg.size(), msg.find(": ") + 2));
      throw Error(e.code(), std::string(origin) + ":" + std::to_string(line_no) + ": " + std::string(msg));
    }
  }
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
  apply_config_text(cfg, read_text_file(path), path);
}

namespace {

struct ExprLine {
  std::size_t line = 0;
  std::size_t file_offset = 0;  // byte offset of the expression text
  std::string text;
};

double constant_value(const ExprLine& el, const ParamTable& params,
                      std::string_view label) {
  const ExprAst ast = parse(el.text);
  const Diagnostics diags = validate(ast, params);
  if (!diags.empty()) throw ValidationError(diags);
  const Complex v = eval(ast, 0.0, 0.0, params);
  if (v.imag() != 0.0) {
    throw Error(ErrorCode::config, std::string(label) + ":" +
                                       std::to_string(el.line) +
                                       ": range bound must be real");
  }
  return v.real();
}

}  // namespace

ImmersionSpec parse_expr_file(std::string_view text, std::string_view label,
                              std::string* diagnostic) {
  std::array<std::optional<ExprLine>, 3> coords;
  std::vector<std::pair<std::string, ExprLine>> param_lines;
  std::optional<ExprLine> x_range, y_range;
  std::array<bool, 2> periodic{false, false};

  std::size_t line_no = 0;
  std::size_t line_start = 0;
  for (std::string_view raw : split(text, '\n')) {
    ++line_no;
    const std::size_t this_start = line_start;
    line_start += raw.size() + 1;
    const std::size_t hash = raw.find('#');
    const std::string_view body = hash == std::string_view::npos ? raw : raw.substr(0, hash);
    if (trim(body).empty()) continue;
    const std::size_t eq = body.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::config, std::string(label) + ":" +
                                         std::to_string(line_no) +
                                         ": expected NAME = expression");
    }
    const std::string key(trim(body.substr(0, eq)));
    // Keep the expression text untrimmed on the left so offsets map back.
    std::string_view rhs = body.substr(eq + 1);
    std::size_t lead = 0;
    while (lead < rhs.size() && std::isspace(static_cast<unsigned char>(rhs[lead]))) ++lead;
    rhs = trim(rhs);
    ExprLine el{line_no, this_start + eq + 1 + lead, std::string(rhs)};

    if (key == "F1" || key == "F2" || key == "F3") {
      coords[static_cast<std::size_t>(key[1] - '1')] = el;
    } else if (key.rfind("param", 0) == 0 && key.size() > 5 &&
               std::isspace(static_cast<unsigned char>(key[5]))) {
      param_lines.emplace_back(std::string(trim(std::string_view(key).substr(5))), el);
    } else if (key == "x_range") {
      x_range = el;
    } else if (key == "y_range") {
      y_range = el;
    } else if (key == "periodic") {
      const auto parts = split(rhs, ',');
      const auto a = parts.size() == 2 ? to_bool(parts[0]) : std::nullopt;
      const auto b = parts.size() == 2 ? to_bool(parts[1]) : std::nullopt;
      if (!a || !b) {
        throw Error(ErrorCode::config, std::string(label) + ":" +
                                           std::to_string(line_no) +
                                           ": periodic expects two booleans");
      }
      periodic = {*a, *b};
    } else {
      throw Error(ErrorCode::config, std::string(label) + ":" +
                                         std::to_string(line_no) +
                                         ": unknown key '" + key + "'");
    }
  }

  auto locate = [&](const ExprLine& el, const std::string& what,
                    std::size_t offset, const std::string& msg) {
    if (diagnostic) {
      *diagnostic = std::string(label) + ":" + std::to_string(el.line) + ": " +
                    what + ": byte " + std::to_string(offset) + " (file byte " +
                    std::to_string(el.file_offset + offset) + "): " + msg;
    }
  };

  ParamTable params;
  for (const auto& [name, el] : param_lines) {
    try {
      params[name] = constant_value(el, params, label);
    } catch (const SyntaxError& e) {
      locate(el, "param " + name, e.offset(), e.detail());
      throw;
    }
  }

  std::array<ExprAst, 3> asts;
  for (std::size_t k = 0; k < 3; ++k) {
    const std::string name = "F" + std::to_string(k + 1);
    if (!coords[k]) {
      throw Error(ErrorCode::config,
                  std::string(label) + ": missing " + name + " = expression");
    }
    try {
      asts[k] = parse(coords[k]->text);
    } catch (const SyntaxError& e) {
      locate(*coords[k], name, e.offset(), e.detail());
      throw;
    }
    const Diagnostics d = validate(asts[k], params);
    if (!d.empty()) {
      locate(*coords[k], name, d.front().offset, d.front().message);
      throw ValidationError(d);
    }
  }

  ChartDomain dom{0.0, 1.0, 0.0, 1.0, periodic[0], periodic[1]};
  auto read_range = [&](const std::optional<ExprLine>& el, double& lo,
                        double& hi, const char* name) {
    if (!el) {
      throw Error(ErrorCode::config,
                  std::string(label) + ": missing " + name + " = lo, hi");
    }
    const auto parts = split(el->text, ',');
    if (parts.size() != 2) {
      throw Error(ErrorCode::config, std::string(label) + ":" +
                                         std::to_string(el->line) + ": " +
                                         name + " expects lo, hi");
    }
    ExprLine a = *el, b = *el;
    a.text = std::string(parts[0]);
    b.text = std::string(parts[1]);
    lo = constant_value(a, params, label);
    hi = constant_value(b, params, label);
  };
  read_range(x_range, dom.x_min, dom.x_max, "x_range");
  read_range(y_range, dom.y_min, dom.y_max, "y_range");
  return from_expression(std::move(asts), std::move(params), dom,
                         std::string(label));
}

ImmersionSpec build_surface(const RunConfig& cfg, std::string* diagnostic) {
  if (cfg.expr_file) {
    return parse_expr_file(read_text_file(*cfg.expr_file), *cfg.expr_file,
                           diagnostic);
  }
  return make_surface(cfg.surface, cfg.params);
}

}  // namespace leglab
