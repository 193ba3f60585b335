#include "dgldpc/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace dgldpc::config {

using json = nlohmann::ordered_json;

namespace {

std::string located(const std::string& message, const std::string& source,
                    int line, int column, const std::string& pointer) {
  std::ostringstream os;
  os << source;
  if (line > 0) os << ":" << line << ":" << column;
  os << ": " << message;
  if (!pointer.empty()) os << " (at " << pointer << ")";
  return os.str();
}

// 1-based line and column of a byte offset.
std::pair<int, int> position_of(std::string_view text, std::size_t byte) {
  int line = 1, column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

struct Reader {
  const std::string& source;

  [[noreturn]] void fail(const std::string& message, const std::string& ptr) const {
    throw ConfigError(message, source, 0, 0, ptr);
  }

  void only_keys(const json& j, const std::set<std::string>& allowed,
                 const std::string& ptr) const {
    for (const auto& [key, value] : j.items()) {
      if (!allowed.count(key)) fail("unknown key \"" + key + "\"", ptr);
    }
  }

  const json& member(const json& j, const char* key, const std::string& ptr) const {
    if (!j.contains(key)) fail(std::string("missing key \"") + key + "\"", ptr);
    return j.at(key);
  }

  int integer(const json& j, const std::string& ptr) const {
    if (!j.is_number_integer()) fail("expected an integer", ptr);
    return j.get<int>();
  }

  double number(const json& j, const std::string& ptr) const {
    if (!j.is_number()) fail("expected a number", ptr);
    return j.get<double>();
  }

  CodeSpec code(const json& j, const std::string& ptr) const {
    if (!j.is_object()) fail("code must be an object", ptr);
    const json& kind = member(j, "kind", ptr);
    if (!kind.is_string()) fail("kind must be a string", ptr + "/kind");
    CodeSpec spec;
    spec.kind = kind.get<std::string>();
    if (spec.kind == "repetition") {
      only_keys(j, {"kind", "q"}, ptr);
      spec.q = integer(member(j, "q", ptr), ptr + "/q");
    } else if (spec.kind == "spc") {
      only_keys(j, {"kind", "q", "form"}, ptr);
      spec.q = integer(member(j, "q", ptr), ptr + "/q");
      if (j.contains("form")) {
        if (!j["form"].is_string()) fail("form must be a string", ptr + "/form");
        try {
          spec.form = gf2::parse_spc_form(j["form"].get<std::string>());
        } catch (const Error& e) {
          fail(e.what(), ptr + "/form");
        }
      }
    } else if (spec.kind == "hamming74") {
      only_keys(j, {"kind"}, ptr);
    } else if (spec.kind == "explicit") {
      only_keys(j, {"kind", "rows"}, ptr);
      const json& rows = member(j, "rows", ptr);
      if (!rows.is_array() || rows.empty()) fail("rows must be a non-empty array", ptr + "/rows");
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!rows[i].is_string()) fail("row must be a string", ptr + "/rows/" + std::to_string(i));
        spec.rows.push_back(rows[i].get<std::string>());
      }
    } else {
      fail("unknown code kind \"" + spec.kind + "\"", ptr + "/kind");
    }
    try {
      build_code(spec);
    } catch (const Error& e) {
      fail(e.what(), ptr);
    }
    return spec;
  }

  std::vector<Entry> side(const json& root, const char* key, const char* fraction) const {
    const std::string ptr = std::string("/") + key;
    const json& list = member(root, key, "");
    if (!list.is_array() || list.empty()) fail("expected a non-empty array", ptr);
    std::vector<Entry> out;
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string p = ptr + "/" + std::to_string(i);
      if (!list[i].is_object()) fail("entry must be an object", p);
      only_keys(list[i], {"code", fraction}, p);
      Entry e;
      e.code = code(member(list[i], "code", p), p + "/code");
      e.fraction = number(member(list[i], fraction, p), p + "/" + fraction);
      out.push_back(std::move(e));
    }
    return out;
  }
};

json code_json(const CodeSpec& spec) {
  json j = {{"kind", spec.kind}};
  if (spec.kind == "repetition") j["q"] = spec.q;
  if (spec.kind == "spc") {
    j["q"] = spec.q;
    j["form"] = std::string(gf2::to_string(spec.form));
  }
  if (spec.kind == "explicit") j["rows"] = spec.rows;
  return j;
}

}  // namespace

ConfigError::ConfigError(const std::string& message, std::string source,
                         int line, int column, std::string pointer)
    : ValidationError(located(message, source, line, column, pointer)),
      source_(std::move(source)),
      line_(line),
      column_(column),
      pointer_(std::move(pointer)) {}

gf2::BinaryLinearCode build_code(const CodeSpec& spec) {
  if (spec.kind == "repetition") return gf2::make_repetition(spec.q);
  if (spec.kind == "spc") return gf2::make_spc(spec.q, spec.form);
  if (spec.kind == "hamming74") return gf2::make_hamming_7_4();
  if (spec.kind == "explicit") return gf2::make_explicit(spec.rows);
  throw InvalidParameter("unknown code kind \"" + spec.kind + "\"");
}

CodeSpec describe_code(const gf2::BinaryLinearCode& code) {
  const int q = code.length();
  if (code.dimension() == 1 && q >= 2 && code == gf2::make_repetition(q)) {
    return {"repetition", q, gf2::SpcForm::systematic, {}};
  }
  if (q >= 3 && code.dimension() == q - 1) {
    for (auto form : {gf2::SpcForm::systematic, gf2::SpcForm::cyclic,
                      gf2::SpcForm::antisystematic}) {
      if (form == gf2::SpcForm::antisystematic && q % 2 == 0) continue;
      if (code == gf2::make_spc(q, form)) return {"spc", q, form, {}};
    }
  }
  if (code == gf2::make_hamming_7_4()) return {"hamming74", 0, gf2::SpcForm::systematic, {}};
  CodeSpec spec{"explicit", 0, gf2::SpcForm::systematic, {}};
  for (int i = 0; i < code.dimension(); ++i) spec.rows.push_back(code.row_string(i));
  return spec;
}

CodeSpec parse_code_words(const std::vector<std::string>& words) {
  if (words.empty()) throw ValidationError("missing code kind");
  CodeSpec spec;
  spec.kind = words[0];
  auto arg_int = [&](std::size_t i) {
    if (i >= words.size()) throw ValidationError(spec.kind + " needs a length q");
    try {
      std::size_t used = 0;
      const int v = std::stoi(words[i], &used);
      if (used != words[i].size()) throw std::invalid_argument(words[i]);
      return v;
    } catch (const std::exception&) {
      throw ValidationError("\"" + words[i] + "\" is not an integer length");
    }
  };
  std::size_t expected = 1;
  if (spec.kind == "repetition") {
    spec.q = arg_int(1);
    expected = 2;
  } else if (spec.kind == "spc") {
    spec.q = arg_int(1);
    expected = 2;
    if (words.size() > 2) {
      spec.form = gf2::parse_spc_form(words[2]);
      expected = 3;
    }
  } else if (spec.kind == "hamming74") {
  } else if (spec.kind == "explicit") {
    spec.rows.assign(words.begin() + 1, words.end());
    if (spec.rows.empty()) throw ValidationError("explicit needs generator rows");
    expected = words.size();
  } else {
    throw ValidationError("unknown code kind \"" + spec.kind + "\"");
  }
  if (words.size() != expected) {
    throw ValidationError("unexpected argument \"" + words[expected] + "\" for " + spec.kind);
  }
  build_code(spec);
  return spec;
}

EnsembleConfig parse_config(std::string_view text, const std::string& source) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // e.byte is one past the offending character.
    const auto [line, column] = position_of(text, e.byte > 0 ? e.byte - 1 : 0);
    std::string msg = e.what();
    if (const auto pos = msg.find("syntax error"); pos != std::string::npos) msg = msg.substr(pos);
    throw ConfigError(msg, source, line, column);
  }
  const Reader r{source};
  if (!root.is_object()) r.fail("top level must be an object", "");
  r.only_keys(root, {"schema", "name", "vn", "cn", "reference"}, "");
  if (root.contains("schema") && r.integer(root["schema"], "/schema") != kSchemaVersion) {
    r.fail("unsupported schema version", "/schema");
  }
  EnsembleConfig cfg;
  if (root.contains("name")) {
    if (!root["name"].is_string()) r.fail("name must be a string", "/name");
    cfg.name = root["name"].get<std::string>();
  }
  cfg.vn = r.side(root, "vn", "lambda");
  cfg.cn = r.side(root, "cn", "rho");
  if (root.contains("reference")) {
    const json& ref = root["reference"];
    if (!ref.is_object()) r.fail("reference must be an object", "/reference");
    r.only_keys(ref, {"design_rate", "cv_product", "alpha_star"}, "/reference");
    auto opt = [&](const char* key, std::optional<double>& out) {
      if (ref.contains(key)) out = r.number(ref[key], std::string("/reference/") + key);
    };
    opt("design_rate", cfg.reference.design_rate);
    opt("cv_product", cfg.reference.cv_product);
    opt("alpha_star", cfg.reference.alpha_star);
  }
  return cfg;
}

EnsembleConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open file", path.string(), 0, 0);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path.string());
}

Ensemble to_ensemble(const EnsembleConfig& config) {
  std::vector<VnType> vns;
  std::vector<CnType> cns;
  for (const auto& e : config.vn) vns.emplace_back(build_code(e.code), e.fraction);
  for (const auto& e : config.cn) cns.emplace_back(build_code(e.code), e.fraction);
  return Ensemble::build(std::move(vns), std::move(cns));
}

std::string emit_config(const Ensemble& ensemble, const std::string& name,
                        const Reference& reference) {
  json root;
  root["schema"] = kSchemaVersion;
  if (!name.empty()) root["name"] = name;
  root["vn"] = json::array();
  for (std::size_t t = 0; t < ensemble.vn_types().size(); ++t) {
    root["vn"].push_back({{"code", code_json(describe_code(ensemble.vn_types()[t].code))},
                          {"lambda", ensemble.raw_lambda()[t]}});
  }
  root["cn"] = json::array();
  for (std::size_t t = 0; t < ensemble.cn_types().size(); ++t) {
    root["cn"].push_back({{"code", code_json(describe_code(ensemble.cn_types()[t].code))},
                          {"rho", ensemble.raw_rho()[t]}});
  }
  json ref = json::object();
  if (reference.design_rate) ref["design_rate"] = *reference.design_rate;
  if (reference.cv_product) ref["cv_product"] = *reference.cv_product;
  if (reference.alpha_star) ref["alpha_star"] = *reference.alpha_star;
  if (!ref.empty()) root["reference"] = ref;
  return root.dump(2) + "\n";
}

}  // namespace dgldpc::config
