#include "cli_support.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "framelab/errors.hpp"
#include "framelab/numeric.hpp"

namespace framelab::cli {

namespace {

constexpr const char* kVersion = "0.1.0";

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split(const std::string& text, const std::string& seps) {
  std::vector<std::string> out;
  std::string cur;
  for (const char c : text) {
    if (seps.find(c) != std::string::npos) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(trim(cur));
  return out;
}

std::string scalar_to_token(const nlohmann::json& v) {
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number()) return io::format_double(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  throw UsageError("expected a number, string or boolean");
}

}  // namespace

double parse_real(const std::string& token) {
  const std::string t = trim(token);
  double v = 0.0;
  const char* first = t.data();
  const char* last = t.data() + t.size();
  if (!t.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (t.empty() || ec != std::errc() || ptr != last) {
    throw UsageError("not a number: '" + token + "'");
  }
  return v;
}

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& tok : split(text, ",;")) out.push_back(parse_real(tok));
  return out;
}

cplx parse_complex(const std::string& token) {
  const std::string t = trim(token);
  if (t.empty()) throw UsageError("empty complex number");
  const char last = t.back();
  if (last != 'i' && last != 'j') return {parse_real(t), 0.0};
  const std::string body = t.substr(0, t.size() - 1);
  std::size_t pos = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      pos = k;
      break;
    }
  }
  auto imag_part = [&](const std::string& s) {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    return parse_real(s);
  };
  try {
    if (pos == std::string::npos) return {0.0, imag_part(body)};
    return {parse_real(body.substr(0, pos)), imag_part(body.substr(pos))};
  } catch (const UsageError&) {
    throw UsageError("not a complex number: '" + token + "'");
  }
}

std::vector<cplx> parse_complex_list(const std::string& text) {
  std::vector<cplx> out;
  for (const auto& tok : split(text, ",;")) out.push_back(parse_complex(tok));
  return out;
}

std::string format_complex(cplx z) {
  std::string im = io::format_double(z.imag());
  if (im.front() != '-') im = "+" + im;
  return io::format_double(z.real()) + im + "i";
}

std::vector<BlaschkeZero> parse_zeros(const std::string& text) {
  const auto toks = split(text, ",;");
  if (toks.size() % 2 != 0) throw UsageError("--zeros expects re,im[:mult] pairs");
  std::vector<BlaschkeZero> out;
  for (std::size_t i = 0; i < toks.size(); i += 2) {
    const double re = parse_real(toks[i]);
    const auto [im_text, mult_text] = split_kind(toks[i + 1]);
    const double im = parse_real(im_text);
    int mult = 1;
    if (!mult_text.empty()) {
      const auto m = parse_count(mult_text, "multiplicity");
      if (m == 0) throw UsageError("multiplicity must be positive");
      mult = static_cast<int>(m);
    }
    out.push_back({DiskPoint(cplx{re, im}), mult});
  }
  return out;
}

LinearFractionalMap parse_symbol(const std::string& text) {
  const auto c = parse_complex_list(text);
  if (c.size() != 4) throw UsageError("--phi expects four coefficients a,b,c,d");
  return LinearFractionalMap(c[0], c[1], c[2], c[3]);
}

RationalWeight parse_weight_kind(const std::string& text) {
  const auto [kind, arg] = split_kind(text);
  if (kind == "one") {
    if (!arg.empty()) throw UsageError("weight 'one' takes no argument");
    return RationalWeight::one();
  }
  if (kind == "kernel") return RationalWeight::kernel(parse_complex(arg));
  if (kind == "bn") {
    const auto pc = parse_complex_list(arg);
    if (pc.size() != 2) throw UsageError("weight bn expects bn:p,c");
    return RationalWeight::bourdon_narayan(pc[0], pc[1]);
  }
  if (kind == "poly") return RationalWeight::polynomial(parse_complex_list(arg));
  throw UsageError("unknown weight kind '" + kind + "' (one, kernel:p, bn:p,c, poly:c0,c1,...)");
}

std::pair<std::string, std::string> split_kind(const std::string& text) {
  const auto pos = text.find(':');
  if (pos == std::string::npos) return {trim(text), ""};
  return {trim(text.substr(0, pos)), trim(text.substr(pos + 1))};
}

std::size_t parse_count(const std::string& token, const std::string& what) {
  const std::string t = trim(token);
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
    throw UsageError(what + ": expected a non-negative integer, got '" + token + "'");
  }
  return v;
}

nlohmann::json read_config_file(const std::string& path, std::string* raw_out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError(path + ": cannot open config file");
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string raw = ss.str();
  if (raw_out) *raw_out = raw;
  try {
    return nlohmann::json::parse(raw);
  } catch (const nlohmann::json::parse_error& e) {
    // Byte offset to line/column.
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < raw.size(); ++i) {
      if (raw[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw UsageError(path + ":" + std::to_string(line) + ":" + std::to_string(col) +
                     ": invalid JSON (" + e.what() + ")");
  }
}

std::size_t key_line(const std::string& raw, const std::string& key) {
  const std::string quoted = "\"" + key + "\"";
  std::size_t pos = 0;
  while ((pos = raw.find(quoted, pos)) != std::string::npos) {
    std::size_t k = pos + quoted.size();
    while (k < raw.size() && std::isspace(static_cast<unsigned char>(raw[k]))) ++k;
    if (k < raw.size() && raw[k] == ':') {
      return 1 + static_cast<std::size_t>(std::count(raw.begin(), raw.begin() + static_cast<long>(pos), '\n'));
    }
    pos += quoted.size();
  }
  return 0;
}

ConfigArgs config_to_args(const std::string& path,
                          const std::function<bool(const std::string&)>& known,
                          const std::function<bool(const std::string&)>& is_flag) {
  std::string raw;
  const nlohmann::json cfg = read_config_file(path, &raw);
  if (!cfg.is_object()) throw UsageError(path + ":1: config must be a JSON object");
  auto where = [&](const std::string& key) {
    const std::size_t line = key_line(raw, key);
    return path + ":" + (line > 0 ? std::to_string(line) : std::string("?")) + ": field '" + key + "'";
  };

  ConfigArgs out;
  for (const auto& [key, value] : cfg.items()) {
    if (key == "experiment") {
      if (!value.is_string()) throw UsageError(where(key) + ": must be a string");
      out.experiment = value.get<std::string>();
      continue;
    }
    if (key == "config") throw UsageError(where(key) + ": nested config files are not supported");
    // Fields may use the option spelling (n-max) or the report spelling (n_max).
    std::string name = key;
    std::replace(name.begin(), name.end(), '_', '-');
    if (!known(name)) throw UsageError(where(key) + ": unknown field");
    try {
      if (is_flag(name)) {
        if (!value.is_boolean()) throw UsageError("must be true or false");
        if (value.get<bool>()) out.tokens.push_back("--" + name);
        continue;
      }
      std::string token;
      if (value.is_array()) {
        if (value.empty()) throw UsageError("must not be empty");
        for (std::size_t i = 0; i < value.size(); ++i) {
          if (i > 0) token += ",";
          token += scalar_to_token(value[i]);
        }
      } else {
        token = scalar_to_token(value);
      }
      out.tokens.push_back("--" + name + "=" + token);
    } catch (const UsageError& e) {
      throw UsageError(where(key) + ": " + e.what());
    }
  }
  return out;
}

void write_output(const Output& out, const std::string& format, std::ostream& os) {
  nlohmann::json meta = {
      {"tool", "framelab"},
      {"version", kVersion},
      {"command", out.command},
      {"prng", Rng::kAlgorithm},
      {"seed", out.seed ? nlohmann::json(*out.seed) : nlohmann::json(nullptr)},
      {"parameters", out.parameters},
      {"verdict", out.verdict ? "pass" : "fail"},
  };
  if (format == "json") {
    const nlohmann::json doc = {{"meta", meta}, {"report", out.report}, {"rows", out.table.to_json()}};
    os << doc.dump(2) << '\n';
    return;
  }
  os << "# framelab " << kVersion << " " << out.command << '\n';
  os << "# prng=" << Rng::kAlgorithm << " seed=" << (out.seed ? std::to_string(*out.seed) : "none")
     << '\n';
  os << "# parameters=" << out.parameters.dump() << '\n';
  os << "# verdict=" << (out.verdict ? "pass" : "fail") << '\n';
  out.table.write_csv(os);
}

}  // namespace framelab::cli
