#include "quillen/model_file.hpp"

#include <fstream>
#include <sstream>

#include "quillen/errors.hpp"
#include "quillen/lie_expr.hpp"

namespace quillen {

namespace {

std::string_view trim(std::string_view s) {
  const char* ws = " \t\r";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw InputError("line " + std::to_string(line) + ": " + what);
}

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

int parse_int(const std::string& s, std::size_t line, const std::string& what) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) fail(line, "bad " + what + " '" + s + "'");
  try {
    return std::stoi(s);
  } catch (const std::exception&) {
    fail(line, "bad " + what + " '" + s + "'");
  }
}

struct DiffLine {
  std::size_t line;
  std::string id;
  std::string expr;
};

}  // namespace

MapModel parse_model(std::string_view text) {
  Dgl l;
  std::vector<bool> domain;
  std::vector<DiffLine> diffs;
  bool named = false;

  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++lineno;
    if (auto h = raw.find('#'); h != std::string_view::npos) raw = raw.substr(0, h);
    std::string_view line = trim(raw);
    if (line.empty()) continue;

    auto sp = line.find_first_of(" \t");
    std::string_view key = line.substr(0, sp);
    std::string_view rest = sp == std::string_view::npos ? std::string_view{} : trim(line.substr(sp));

    if (key == "name") {
      if (named) fail(lineno, "duplicate name");
      std::string id(rest);
      if (!is_valid_identifier(id)) fail(lineno, "bad name '" + id + "'");
      l.set_name(id);
      named = true;
    } else if (key == "generator") {
      auto toks = split_ws(rest);
      if (toks.size() < 2) fail(lineno, "expected 'generator <id> <degree>'");
      if (!is_valid_identifier(toks[0])) fail(lineno, "bad generator id '" + toks[0] + "'");
      int deg = parse_int(toks[1], lineno, "degree");
      bool in_domain = false;
      std::optional<int> stage;
      for (std::size_t i = 2; i < toks.size(); ++i) {
        if (toks[i] == "domain" && !in_domain) {
          in_domain = true;
        } else if (toks[i].rfind("stage=", 0) == 0 && !stage) {
          stage = parse_int(toks[i].substr(6), lineno, "stage");
        } else {
          fail(lineno, "unexpected '" + toks[i] + "'");
        }
      }
      try {
        l.add_generator(toks[0], deg, {}, stage);
      } catch (const InputError& e) {
        fail(lineno, e.what());
      }
      domain.push_back(in_domain);
    } else if (key == "d") {
      auto idlen = detail::scan_identifier(rest, 0);
      if (idlen == 0) fail(lineno, "expected a generator id after 'd'");
      std::string id(rest.substr(0, idlen));
      std::string_view after = trim(rest.substr(idlen));
      if (after.empty() || after[0] != '=') fail(lineno, "expected '='");
      diffs.push_back({lineno, id, std::string(trim(after.substr(1)))});
    } else {
      fail(lineno, "unknown keyword '" + std::string(key) + "'");
    }
  }

  std::vector<bool> seen(l.size());
  for (const auto& d : diffs) {
    auto g = l.generators().find(d.id);
    if (!g) fail(d.line, "unknown generator '" + d.id + "'");
    if (seen[*g]) fail(d.line, "second differential for '" + d.id + "'");
    seen[*g] = true;
    try {
      LieExpr e = parse_lie(d.expr, l.generators());
      l.set_differential(*g, expand(e, l.degrees()));
    } catch (const ParseError& e) {
      fail(d.line, e.what());
    } catch (const InputError& e) {
      fail(d.line, e.what());
    }
  }
  MapModel m{std::make_shared<const Dgl>(std::move(l)), std::move(domain)};
  m.validate();
  return m;
}

MapModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_model(buf.str());
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

std::string serialize_model(const MapModel& m) {
  const Dgl& l = *m.dgl;
  std::ostringstream out;
  if (!l.name().empty()) out << "name " << l.name() << "\n";
  for (std::size_t g = 0; g < l.size(); ++g) {
    const Letter x = static_cast<Letter>(g);
    out << "generator " << l.id(x) << " " << l.degree(x);
    if (m.domain.at(g)) out << " domain";
    if (auto s = l.stage_tag(x)) out << " stage=" << *s;
    out << "\n";
  }
  for (std::size_t g = 0; g < l.size(); ++g) {
    const Letter x = static_cast<Letter>(g);
    if (l.differential(x).is_zero()) continue;
    out << "d " << l.id(x) << " = " << format(to_lie_expr(l.differential(x), l.degrees()), l.generators()) << "\n";
  }
  return out.str();
}

std::string serialize_model(const Dgl& l) {
  return serialize_model(MapModel{std::make_shared<const Dgl>(l), std::vector<bool>(l.size(), false)});
}

void save_model(const std::filesystem::path& path, const MapModel& m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << serialize_model(m);
}

void save_model(const std::filesystem::path& path, const Dgl& l) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << serialize_model(l);
}

}  // namespace quillen
