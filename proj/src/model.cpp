#include "pic/model.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "json.hpp"

namespace pic {

using nlohmann::json;

Rat rat_from_string(const std::string& text) {
  auto fail = [&] { throw std::invalid_argument("bad rational: '" + text + "'"); };
  if (text.empty()) fail();
  size_t pos = 0;
  auto scan_int = [&]() {
    size_t start = pos;
    if (pos < text.size() && text[pos] == '-') ++pos;
    size_t digits = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      ++pos;
      ++digits;
    }
    if (digits == 0) fail();
    return text.substr(start, pos - start);
  };
  std::string num = scan_int();
  std::string den = "1";
  if (pos < text.size()) {
    if (text[pos] != '/') fail();
    ++pos;
    den = scan_int();
    if (pos != text.size()) fail();
    if (den == "0" || den == "-0") throw std::invalid_argument("zero denominator: " + text);
  }
  Rat r(mpz_class(num), mpz_class(den));
  r.canonicalize();
  return r;
}

std::string rat_to_string(const Rat& value) {
  Rat v = value;
  v.canonicalize();
  if (v.get_den() == 1) return v.get_num().get_str();
  return v.get_num().get_str() + "/" + v.get_den().get_str();
}

// ---------------------------------------------------------------- graph

SideInfoGraph::SideInfoGraph(int n_users, std::vector<std::vector<int>> side_info)
    : n_(n_users), side_info_(std::move(side_info)) {
  if (n_ < 1) throw ModelError("graph: need at least one user");
  if (n_ > 31) throw ModelError("graph: more than 31 users unsupported");
  if (static_cast<int>(side_info_.size()) != n_)
    throw ModelError("graph: side_info must list one set per user");
  adj_.assign(n_, 0);
  for (int i = 1; i <= n_; ++i) {
    auto& s = side_info_[i - 1];
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    for (int j : s) {
      if (j < 1 || j > n_)
        throw ModelError("graph: side-info index " + std::to_string(j) + " out of range");
      if (j == i)
        throw ModelError("graph: self-loop at user " + std::to_string(i));
      adj_[i - 1] |= 1u << (j - 1);
    }
  }
}

bool SideInfoGraph::operator==(const SideInfoGraph& other) const {
  return n_ == other.n_ && adj_ == other.adj_;
}

// -------------------------------------------------------------- pattern

KeyPattern::KeyPattern(int n_users, uint32_t mask) : n_(n_users), mask_(mask) {
  if (n_ < 1 || n_ > 31) throw ModelError("pattern: bad user count");
  const uint32_t all = (1u << n_) - 1;
  if (mask_ == 0 || mask_ == all || (mask_ & ~all))
    throw ModelError("pattern: mask must have at least one 0 and one 1 bit");
}

KeyPattern KeyPattern::from_string(const std::string& bits) {
  if (bits.empty()) throw ModelError("pattern: empty string");
  uint32_t mask = 0;
  for (size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1')
      mask |= 1u << i;
    else if (bits[i] != '0')
      throw ModelError("pattern: invalid character in '" + bits + "'");
  }
  return KeyPattern(static_cast<int>(bits.size()), mask);
}

std::string KeyPattern::str() const {
  std::string s(n_, '0');
  for (int i = 0; i < n_; ++i)
    if ((mask_ >> i) & 1u) s[i] = '1';
  return s;
}

KeyAccessStructure::KeyAccessStructure(std::vector<KeyPattern> patterns)
    : patterns_(std::move(patterns)) {
  std::sort(patterns_.begin(), patterns_.end(),
            [](const KeyPattern& a, const KeyPattern& b) { return a.mask() < b.mask(); });
  for (size_t i = 0; i + 1 < patterns_.size(); ++i) {
    if (patterns_[i].n() != patterns_[i + 1].n())
      throw ModelError("key structure: mixed pattern lengths");
    if (patterns_[i].mask() == patterns_[i + 1].mask())
      throw ModelError("key structure: duplicate pattern " + patterns_[i].str());
  }
}

int KeyAccessStructure::n() const { return patterns_.empty() ? 0 : patterns_.front().n(); }

bool KeyAccessStructure::contains(uint32_t mask) const {
  return std::any_of(patterns_.begin(), patterns_.end(),
                     [mask](const KeyPattern& p) { return p.mask() == mask; });
}

std::vector<KeyPattern> all_key_patterns(int n_users) {
  std::vector<KeyPattern> out;
  if (n_users < 2) return out;  // N=1 has no admissible pattern
  const uint32_t all = (1u << n_users) - 1;
  for (uint32_t m = 1; m < all; ++m) out.emplace_back(n_users, m);
  return out;
}

// ------------------------------------------------------------ rate tuple

Rat RateTuple::key_rate(uint32_t mask) const {
  auto it = key_rates.find(mask);
  return it == key_rates.end() ? Rat(0) : it->second;
}

Rat RateTuple::sum_key_rate() const {
  Rat s = 0;
  for (const auto& [m, r] : key_rates) s += r;
  return s;
}

bool RateTuple::operator==(const RateTuple& other) const {
  if (n_users != other.n_users || transmission_rate != other.transmission_rate) return false;
  // absent entries mean zero; compare as total functions
  for (const auto& [m, r] : key_rates)
    if (other.key_rate(m) != r) return false;
  for (const auto& [m, r] : other.key_rates)
    if (key_rate(m) != r) return false;
  return true;
}

// ---------------------------------------------------------------- scheme

const GFMatrix* LinearScheme::key_block(uint32_t mask) const {
  for (const auto& kb : keys)
    if (kb.pattern.mask() == mask) return &kb.columns;
  return nullptr;
}

void LinearScheme::validate() const {
  if (!is_prime(q)) throw ModelError("scheme: q must be prime");
  if (n < 1) throw ModelError("scheme: block length must be >= 1");
  if (r < 0) throw ModelError("scheme: negative transmission count");
  if (G.empty()) throw ModelError("scheme: no users");
  for (int i = 0; i < n_users(); ++i) {
    if (G[i].q() != q || G[i].rows() != r || G[i].cols() != n)
      throw ModelError("scheme: G matrix for user " + std::to_string(i + 1) +
                       " has wrong shape or field");
  }
  uint32_t prev = 0;
  bool first = true;
  for (const auto& kb : keys) {
    if (kb.pattern.n() != n_users())
      throw ModelError("scheme: key pattern length mismatch");
    if (!first && kb.pattern.mask() <= prev)
      throw ModelError("scheme: key patterns must be distinct and sorted");
    prev = kb.pattern.mask();
    first = false;
    if (kb.columns.q() != q || kb.columns.rows() != r)
      throw ModelError("scheme: key block " + kb.pattern.str() +
                       " has wrong shape or field");
  }
}

// ------------------------------------------------------------- multicast

void MulticastScheme::validate() const {
  if (!is_prime(q)) throw ModelError("multicast: q must be prime");
  if (n < 1 || n_users < 1) throw ModelError("multicast: bad dimensions");
  for (const auto& sess : sessions) {
    for (int u : sess.recipients)
      if (u < 1 || u > n_users) throw ModelError("multicast: recipient out of range");
    for (const auto& t : sess.terms) {
      if (t.user < 1 || t.user > n_users)
        throw ModelError("multicast: payload user out of range");
      if (t.coordinate < 1 || t.coordinate > n)
        throw ModelError("multicast: payload coordinate out of range");
      if (t.coeff < 0 || t.coeff >= q)
        throw ModelError("multicast: coefficient out of field range");
    }
  }
}

// ------------------------------------------------------------------ json

namespace {

json parse_json(const std::string& text, const char* what) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ModelError(std::string(what) + ": malformed JSON");
  return j;
}

GFMatrix matrix_from_json(const json& j, int q, int rows, int cols, const char* what) {
  if (!j.is_array()) throw ModelError(std::string(what) + ": matrix must be an array");
  // r x 0 matrices may be written as [] or as r empty rows
  if (cols == 0 && j.empty()) return GFMatrix(q, rows, 0);
  if (static_cast<int>(j.size()) != rows)
    throw ModelError(std::string(what) + ": expected " + std::to_string(rows) + " rows");
  GFMatrix m(q, rows, cols);
  for (int r = 0; r < rows; ++r) {
    const json& row = j[r];
    if (!row.is_array() || static_cast<int>(row.size()) != cols)
      throw ModelError(std::string(what) + ": row " + std::to_string(r) + " has wrong width");
    for (int c = 0; c < cols; ++c) {
      if (!row[c].is_number_integer())
        throw ModelError(std::string(what) + ": entries must be integers");
      const long long v = row[c].get<long long>();
      if (v < 0 || v >= q)
        throw ModelError(std::string(what) + ": entry " + std::to_string(v) +
                         " outside [0, q)");
      m.set(r, c, static_cast<int>(v));
    }
  }
  return m;
}

json matrix_to_json(const GFMatrix& m) {
  json rows = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(m.at(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

SideInfoGraph parse_graph(const std::string& text) {
  json j = parse_json(text, "graph");
  if (!j.is_object() || !j.contains("n") || !j.contains("side_info"))
    throw ModelError("graph: need fields n and side_info");
  if (!j["n"].is_number_integer()) throw ModelError("graph: n must be an integer");
  const int n = j["n"].get<int>();
  if (!j["side_info"].is_array()) throw ModelError("graph: side_info must be an array");
  std::vector<std::vector<int>> sets;
  for (const auto& lst : j["side_info"]) {
    if (!lst.is_array()) throw ModelError("graph: each side-info entry must be an array");
    std::vector<int> s;
    for (const auto& v : lst) {
      if (!v.is_number_integer()) throw ModelError("graph: side-info indices must be integers");
      s.push_back(v.get<int>());
    }
    sets.push_back(std::move(s));
  }
  return SideInfoGraph(n, std::move(sets));
}

std::string serialize_graph(const SideInfoGraph& g) {
  json j;
  j["n"] = g.n();
  json sets = json::array();
  for (int i = 1; i <= g.n(); ++i) sets.push_back(g.s(i));
  j["side_info"] = std::move(sets);
  return j.dump();
}

LinearScheme parse_scheme(const std::string& text) {
  json j = parse_json(text, "scheme");
  for (const char* field : {"q", "n", "r", "G", "keys"})
    if (!j.contains(field)) throw ModelError(std::string("scheme: missing field ") + field);
  LinearScheme s;
  s.q = j["q"].get<int>();
  if (!is_prime(s.q)) throw ModelError("scheme: q = " + std::to_string(s.q) + " is not prime");
  s.n = j["n"].get<int>();
  s.r = j["r"].get<int>();
  if (s.n < 1 || s.r < 0) throw ModelError("scheme: bad n or r");
  if (!j["G"].is_array() || j["G"].empty()) throw ModelError("scheme: G must list one matrix per user");
  const int N = static_cast<int>(j["G"].size());
  for (const auto& gj : j["G"]) s.G.push_back(matrix_from_json(gj, s.q, s.r, s.n, "scheme G"));
  if (!j["keys"].is_array()) throw ModelError("scheme: keys must be an array");
  for (const auto& kj : j["keys"]) {
    if (!kj.contains("pattern") || !kj.contains("H"))
      throw ModelError("scheme: each key needs pattern and H");
    KeyPattern p = KeyPattern::from_string(kj["pattern"].get<std::string>());
    if (p.n() != N) throw ModelError("scheme: key pattern length differs from user count");
    int w = 0;
    if (kj["H"].is_array() && !kj["H"].empty() && kj["H"][0].is_array())
      w = static_cast<int>(kj["H"][0].size());
    s.keys.push_back({p, matrix_from_json(kj["H"], s.q, s.r, w, "scheme H")});
  }
  std::sort(s.keys.begin(), s.keys.end(), [](const KeyBlock& a, const KeyBlock& b) {
    return a.pattern.mask() < b.pattern.mask();
  });
  for (size_t i = 0; i + 1 < s.keys.size(); ++i)
    if (s.keys[i].pattern.mask() == s.keys[i + 1].pattern.mask())
      throw ModelError("scheme: duplicate key pattern " + s.keys[i].pattern.str());
  s.validate();
  return s;
}

std::string serialize_scheme(const LinearScheme& s) {
  json j;
  j["q"] = s.q;
  j["n"] = s.n;
  j["r"] = s.r;
  json gs = json::array();
  for (const auto& g : s.G) gs.push_back(matrix_to_json(g));
  j["G"] = std::move(gs);
  json keys = json::array();
  for (const auto& kb : s.keys)
    keys.push_back({{"pattern", kb.pattern.str()}, {"H", matrix_to_json(kb.columns)}});
  j["keys"] = std::move(keys);
  return j.dump();
}

RateTuple parse_rate_tuple(const std::string& text) {
  json j = parse_json(text, "rate tuple");
  if (!j.contains("R")) throw ModelError("rate tuple: missing R");
  RateTuple t;
  t.transmission_rate = rat_from_string(j["R"].get<std::string>());
  if (sgn(t.transmission_rate) < 0) throw ModelError("rate tuple: R must be >= 0");
  if (j.contains("key_rates")) {
    for (auto it = j["key_rates"].begin(); it != j["key_rates"].end(); ++it) {
      KeyPattern p = KeyPattern::from_string(it.key());
      if (t.n_users != 0 && p.n() != t.n_users)
        throw ModelError("rate tuple: mixed pattern lengths");
      t.n_users = p.n();
      Rat r = rat_from_string(it.value().get<std::string>());
      if (sgn(r) < 0) throw ModelError("rate tuple: key rates must be >= 0");
      t.key_rates[p.mask()] = r;
    }
  }
  return t;
}

std::string serialize_rate_tuple(const RateTuple& t) {
  json j;
  j["R"] = rat_to_string(t.transmission_rate);
  json kr = json::object();
  for (const auto& [mask, rate] : t.key_rates) {
    if (sgn(rate) == 0) continue;
    kr[KeyPattern(t.n_users, mask).str()] = rat_to_string(rate);
  }
  j["key_rates"] = std::move(kr);
  return j.dump();
}

MulticastScheme parse_multicast(const std::string& text) {
  json j = parse_json(text, "multicast");
  for (const char* field : {"q", "n", "n_users", "sessions"})
    if (!j.contains(field)) throw ModelError(std::string("multicast: missing field ") + field);
  MulticastScheme m;
  m.q = j["q"].get<int>();
  m.n = j["n"].get<int>();
  m.n_users = j["n_users"].get<int>();
  for (const auto& sj : j["sessions"]) {
    MulticastSession sess;
    for (const auto& u : sj.at("recipients")) sess.recipients.push_back(u.get<int>());
    std::sort(sess.recipients.begin(), sess.recipients.end());
    for (const auto& t : sj.at("terms")) {
      if (!t.is_array() || t.size() != 3)
        throw ModelError("multicast: each term is [user, coordinate, coeff]");
      sess.terms.push_back({t[0].get<int>(), t[1].get<int>(), t[2].get<int>()});
    }
    m.sessions.push_back(std::move(sess));
  }
  m.validate();
  return m;
}

std::string serialize_multicast(const MulticastScheme& m) {
  json j;
  j["q"] = m.q;
  j["n"] = m.n;
  j["n_users"] = m.n_users;
  json sessions = json::array();
  for (const auto& sess : m.sessions) {
    json terms = json::array();
    for (const auto& t : sess.terms) terms.push_back({t.user, t.coordinate, t.coeff});
    sessions.push_back({{"recipients", sess.recipients}, {"terms", std::move(terms)}});
  }
  j["sessions"] = std::move(sessions);
  return j.dump();
}

KeyAccessStructure parse_key_structure(const std::string& csv, int n_users) {
  std::vector<KeyPattern> pats;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    KeyPattern p = KeyPattern::from_string(item);
    if (p.n() != n_users)
      throw ModelError("pattern '" + item + "' does not match user count " +
                       std::to_string(n_users));
    pats.push_back(p);
  }
  return KeyAccessStructure(std::move(pats));
}

DerivedSets derived_sets(const SideInfoGraph& g) {
  DerivedSets out;
  for (int i = 1; i <= g.n(); ++i) {
    std::vector<int> a = g.s(i);
    a.push_back(i);
    std::sort(a.begin(), a.end());
    out.a_sets.push_back(std::move(a));
  }
  for (int i = 1; i <= g.n(); ++i)
    for (int j = 1; j <= g.n(); ++j)
      if (!((g.a_mask(j) >> (i - 1)) & 1u)) out.pairs.emplace_back(i, j);
  return out;
}

}  // namespace pic
