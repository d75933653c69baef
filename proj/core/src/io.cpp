#include "minvec/io.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "minvec/errors.hpp"

namespace minvec::io {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::int64_t parse_int(const std::string& s, int line, const std::string& key) {
  std::size_t used = 0;
  std::int64_t v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    throw ParseError("'" + key + "' expects an integer, got '" + s + "'", line);
  }
  if (used != s.size()) throw ParseError("'" + key + "' expects an integer, got '" + s + "'", line);
  return v;
}

struct Entry {
  std::string value;
  int line = 0;
};

// A flat section of key = value lines.
struct Section {
  int line = 0;
  std::map<std::string, Entry> kv;
  std::vector<std::pair<std::string, Entry>> repeated;  // keys allowed to repeat

  const Entry* get(const std::string& k) const {
    const auto it = kv.find(k);
    return it == kv.end() ? nullptr : &it->second;
  }
  const Entry& need(const std::string& k) const {
    const Entry* e = get(k);
    if (!e) throw ParseError("missing key '" + k + "'", line);
    return *e;
  }
};

std::vector<Section> split_sections(const std::string& text, const std::set<std::string>& allowed_top,
                                    const std::set<std::string>& allowed_block, const std::set<std::string>& repeatable) {
  std::vector<Section> out(1);
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  out[0].line = 1;
  while (std::getline(in, raw)) {
    ++line;
    const std::string s = trim(raw);
    if (s.empty() || s[0] == '#') continue;
    if (s == "[block]") {
      if (allowed_block.empty()) throw ParseError("unexpected [block] section", line);
      out.emplace_back();
      out.back().line = line;
      continue;
    }
    if (s.front() == '[') throw ParseError("unknown section " + s, line);
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ParseError("expected 'key = value'", line);
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    if (key.empty()) throw ParseError("empty key", line);
    const auto& allowed = out.size() == 1 ? allowed_top : allowed_block;
    if (!allowed.count(key)) throw ParseError("unknown key '" + key + "'", line);
    if (value.empty()) throw ParseError("empty value for '" + key + "'", line);
    Section& sec = out.back();
    if (repeatable.count(key)) {
      sec.repeated.emplace_back(key, Entry{value, line});
      continue;
    }
    if (sec.kv.count(key)) throw ParseError("repeated key '" + key + "'", line);
    sec.kv.emplace(key, Entry{value, line});
  }
  return out;
}

BlockSpec parse_block(const Section& s, std::int64_t p, const std::string& fallback_id) {
  BlockSpec b;
  b.id = s.get("id") ? s.get("id")->value : fallback_id;
  const auto& n = s.need("n");
  b.n = static_cast<int>(parse_int(n.value, n.line, "n"));
  if (b.n < 1 || b.n > kMaxDim) throw ParseError("n must lie in 1.." + std::to_string(kMaxDim), n.line);
  const auto& e = s.need("e");
  b.e = static_cast<int>(parse_int(e.value, e.line, "e"));
  if (b.e < 1) throw ParseError("e must be positive", e.line);
  if (b.n % b.e != 0) throw ParseError("e must divide n", e.line);
  if (const Entry* j = s.get("j")) b.j = static_cast<int>(parse_int(j->value, j->line, "j"));
  const auto& sc = s.need("scale");
  b.scale = static_cast<int>(parse_int(sc.value, sc.line, "scale"));
  const auto& beta = s.need("beta");
  b.unit = parse_matrix(beta.value, beta.line);
  if (b.unit.n != b.n) throw ParseError("beta is not " + std::to_string(b.n) + " x " + std::to_string(b.n), beta.line);
  if (const Entry* f = s.get("field")) {
    if (f->value == "defer")
      b.defer_field = true;
    else if (f->value != "require")
      throw ParseError("field must be 'require' or 'defer'", f->line);
  }
  (void)p;
  return b;
}

}  // namespace

ModMat parse_matrix(const std::string& s, int line) {
  std::vector<std::vector<std::int64_t>> rows;
  std::stringstream rs(s);
  std::string row;
  while (std::getline(rs, row, ';')) {
    std::istringstream es(row);
    std::vector<std::int64_t> r;
    std::string tok;
    while (es >> tok) r.push_back(parse_int(tok, line, "matrix entry"));
    rows.push_back(std::move(r));
  }
  if (rows.empty() || static_cast<int>(rows.size()) > kMaxDim) throw ParseError("matrix has a bad number of rows", line);
  for (const auto& r : rows)
    if (r.size() != rows.size()) throw ParseError("matrix must be square", line);
  return ModMat::from_rows(rows);
}

std::string format_matrix(const ModMat& m) {
  std::ostringstream os;
  for (int r = 0; r < m.n; ++r) {
    if (r) os << "; ";
    for (int c = 0; c < m.n; ++c) os << (c ? " " : "") << m(r, c);
  }
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

DatumFile parse_datum(const std::string& text) {
  const std::set<std::string> single{"id", "p", "n", "e", "j", "scale", "beta", "field"};
  const std::set<std::string> top{"id", "p", "n", "e", "j", "scale", "beta", "field", "c", "inequivalent"};
  const std::set<std::string> block{"id", "n", "e", "j", "scale", "beta", "field"};
  const auto secs = split_sections(text, top, block, {});
  const Section& head = secs[0];
  DatumFile d;
  d.id = head.need("id").value;
  const auto& p = head.need("p");
  d.p = parse_int(p.value, p.line, "p");
  if (!is_prime(d.p)) throw ParseError("p must be prime", p.line);
  const auto& n = head.need("n");
  d.n = static_cast<int>(parse_int(n.value, n.line, "n"));
  if (secs.size() == 1) {
    for (const auto& [k, v] : head.kv)
      if (!single.count(k)) throw ParseError("key '" + k + "' needs [block] sections", v.line);
    d.blocks.push_back(parse_block(head, d.p, d.id));
    return d;
  }
  d.parabolic = true;
  for (const auto& key : {"e", "j", "scale", "beta", "field"})
    if (const Entry* e = head.get(key)) throw ParseError(std::string("key '") + key + "' belongs in a [block]", e->line);
  if (const Entry* c = head.get("c")) d.c = static_cast<int>(parse_int(c->value, c->line, "c"));
  if (const Entry* q = head.get("inequivalent")) {
    if (q->value != "asserted") throw ParseError("inequivalent must be 'asserted'", q->line);
    d.inequivalent_asserted = true;
  }
  int total = 0;
  for (std::size_t i = 1; i < secs.size(); ++i) {
    d.blocks.push_back(parse_block(secs[i], d.p, d.id + "." + std::to_string(i)));
    total += d.blocks.back().n;
  }
  if (total != d.n) throw ParseError("block sizes sum to " + std::to_string(total) + ", not n = " + std::to_string(d.n), n.line);
  return d;
}

DatumFile read_datum(const std::string& path) { return parse_datum(read_file(path)); }

std::string format_datum(const DatumFile& d) {
  std::ostringstream os;
  auto block = [&](const BlockSpec& b, bool with_id) {
    if (with_id) os << "id = " << b.id << "\n";
    os << "n = " << b.n << "\n";
    os << "e = " << b.e << "\n";
    if (b.j) os << "j = " << *b.j << "\n";
    os << "scale = " << b.scale << "\n";
    os << "beta = " << format_matrix(b.unit) << "\n";
    if (b.defer_field) os << "field = defer\n";
  };
  os << "id = " << d.id << "\n";
  os << "p = " << d.p << "\n";
  if (!d.parabolic) {
    const BlockSpec& b = d.blocks.at(0);
    os << "n = " << b.n << "\n";
    os << "e = " << b.e << "\n";
    if (b.j) os << "j = " << *b.j << "\n";
    os << "scale = " << b.scale << "\n";
    os << "beta = " << format_matrix(b.unit) << "\n";
    if (b.defer_field) os << "field = defer\n";
    return os.str();
  }
  os << "n = " << d.n << "\n";
  if (d.c) os << "c = " << *d.c << "\n";
  if (d.inequivalent_asserted) os << "inequivalent = asserted\n";
  for (const auto& b : d.blocks) {
    os << "\n[block]\n";
    block(b, true);
  }
  return os.str();
}

std::vector<orders::InductionDatum> to_data(const DatumFile& d) {
  std::vector<orders::InductionDatum> out;
  for (const auto& b : d.blocks)
    out.push_back(orders::InductionDatum::make(
        b.id, d.p, orders::HereditaryOrder(b.n, b.e), b.unit, b.scale, b.j,
        b.defer_field ? orders::InductionDatum::FieldPolicy::defer : orders::InductionDatum::FieldPolicy::require));
  return out;
}

counting::LatticeQuery parse_query(const std::string& text) {
  const std::set<std::string> top{"id", "n", "m", "B", "p", "frak_c", "torus_gen", "torus_span"};
  const auto secs = split_sections(text, top, {}, {"torus_gen", "torus_span"});
  const Section& s = secs[0];
  counting::LatticeQuery q;
  q.id = s.need("id").value;
  auto geti = [&](const std::string& k) { return parse_int(s.need(k).value, s.need(k).line, k); };
  q.n = static_cast<int>(geti("n"));
  if (q.n < 1 || q.n > kMaxDim) throw ParseError("n must lie in 1.." + std::to_string(kMaxDim), s.need("n").line);
  q.m = geti("m");
  q.B = geti("B");
  q.p = geti("p");
  q.frak_c = static_cast<int>(geti("frak_c"));
  for (const auto& [k, e] : s.repeated) {
    const ModMat m = parse_matrix(e.value, e.line);
    if (m.n != q.n) throw ParseError(k + " is not " + std::to_string(q.n) + " x " + std::to_string(q.n), e.line);
    (k == "torus_gen" ? q.torus_gens : q.torus_span).push_back(m);
  }
  return q;
}

counting::LatticeQuery read_query(const std::string& path) { return parse_query(read_file(path)); }

std::string format_query(const counting::LatticeQuery& q) {
  std::ostringstream os;
  os << "id = " << q.id << "\nn = " << q.n << "\nm = " << q.m << "\nB = " << q.B << "\np = " << q.p
     << "\nfrak_c = " << q.frak_c << "\n";
  for (const auto& g : q.torus_gens) os << "torus_gen = " << format_matrix(g) << "\n";
  for (const auto& g : q.torus_span) os << "torus_span = " << format_matrix(g) << "\n";
  return os.str();
}

}  // namespace minvec::io
