#include "pic/oracle.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

namespace pic {

bool WeakOracleReport::clean() const {
  return decodable && std::none_of(pairs.begin(), pairs.end(),
                                   [](const WeakPairVerdict& p) { return p.leaks; });
}

namespace {

// States are indexed 0..q^D-1; digit d of state s is (s / q^d) % q.
struct DigitSpace {
  int q = 2;
  int digits = 0;
  std::vector<uint64_t> pow;

  void init(int q_, int digits_, uint64_t limit) {
    q = q_;
    digits = digits_;
    pow.assign(digits + 1, 1);
    for (int d = 0; d < digits; ++d) {
      if (pow[d] > limit / q) throw ModelError("oracle: state space exceeds limit");
      pow[d + 1] = pow[d] * q;
    }
  }
  uint64_t states() const { return pow[digits]; }
  int digit(uint64_t state, int d) const { return static_cast<int>((state / pow[d]) % q); }
  uint64_t pack(uint64_t state, const std::vector<int>& digit_list) const {
    uint64_t key = 0;
    for (size_t k = 0; k < digit_list.size(); ++k) key += pow[k] * digit(state, digit_list[k]);
    return key;
  }
};

std::string digits_string(const DigitSpace& ds, uint64_t packed, size_t count) {
  std::string out;
  for (size_t k = 0; k < count; ++k) {
    out += std::to_string(packed % ds.q);
    packed /= ds.q;
  }
  return out;
}

/// Exact conditional-independence tester for one user: counts outcomes of
/// (message, unknowns) inside each conditioning cell and demands exact
/// factorization, including zero cells (every marginal pair must occur).
struct CondIndepCheck {
  const DigitSpace* ds;
  std::vector<int> cell_digits, z_digits;
  std::unordered_map<uint64_t, uint64_t> n_cell, n_cm, n_cz, n_cmz;
  std::unordered_map<uint64_t, std::vector<uint64_t>> ms_of_cell, zs_of_cell;
  uint64_t m_space;    // number of distinct packed message values
  int m_digit_count;   // digits of the message, for witness rendering

  void init_guard() const {
    // combined (cell, m, z) keys must fit in 64 bits
    const long double mag = static_cast<long double>(ds->pow[cell_digits.size()]) *
                            static_cast<long double>(m_space) * 4294967296.0L;
    if (mag > 9.2e18L) throw ModelError("oracle: witness key space too large");
  }

  void add(uint64_t state, uint64_t m_packed) {
    const uint64_t cell = ds->pack(state, cell_digits);
    const uint64_t z = ds->pack(state, z_digits);
    ++n_cell[cell];
    if (++n_cm[cell * m_space + m_packed] == 1) ms_of_cell[cell].push_back(m_packed);
    if (++n_cz[(cell << 32) + z] == 1) zs_of_cell[cell].push_back(z);
    ++n_cmz[((cell * m_space + m_packed) << 32) + z];
  }

  /// Returns a witness string on failure, empty string when independent.
  std::string verdict() {
    for (auto& [cell, total] : n_cell) {
      auto& ms = ms_of_cell[cell];
      auto& zs = zs_of_cell[cell];
      std::sort(ms.begin(), ms.end());
      std::sort(zs.begin(), zs.end());
      for (uint64_t m : ms) {
        const uint64_t cm = n_cm[cell * m_space + m];
        for (uint64_t z : zs) {
          const uint64_t cz = n_cz[(cell << 32) + z];
          uint64_t joint = 0;
          if (auto it = n_cmz.find(((cell * m_space + m) << 32) + z); it != n_cmz.end())
            joint = it->second;
          if (joint * total != cm * cz) {
            std::ostringstream os;
            os << "cell=" << digits_string(*ds, cell, cell_digits.size())
               << " m=" << digits_string(*ds, m, m_digit_count)
               << " z=" << digits_string(*ds, z, z_digits.size())
               << " counts: N(cell,m,z)*N(cell)=" << joint << "*" << total
               << " vs N(cell,m)*N(cell,z)=" << cm << "*" << cz;
            return os.str();
          }
        }
      }
    }
    return {};
  }
};

std::vector<int> x_digit_list(int n, int block, uint32_t user_mask) {
  std::vector<int> out;
  for (int u = 0; u < 32; ++u)
    if ((user_mask >> u) & 1u)
      for (int c = 0; c < block; ++c) out.push_back(u * block + c);
  return out;
}

}  // namespace

OracleReport oracle_check_private(const LinearScheme& s, const SideInfoGraph& g,
                                  uint64_t state_limit) {
  s.validate();
  if (s.n_users() != g.n()) throw ModelError("oracle: scheme and graph disagree on N");
  const int N = g.n(), n = s.n, q = s.q, r = s.r;

  DigitSpace ds;
  int key_digits = 0;
  for (const auto& kb : s.keys) key_digits += kb.columns.cols();
  ds.init(q, N * n + key_digits, state_limit);

  // per-digit contribution to the transmitted vector
  std::vector<std::vector<int>> col_of_digit;
  for (int u = 0; u < N; ++u)
    for (int c = 0; c < n; ++c) col_of_digit.push_back(s.G[u].column(c));
  std::vector<std::vector<int>> key_digit_owner;  // digit lists per key block
  {
    int d = N * n;
    for (const auto& kb : s.keys) {
      std::vector<int> mine;
      for (int c = 0; c < kb.columns.cols(); ++c) {
        col_of_digit.push_back(kb.columns.column(c));
        mine.push_back(d++);
      }
      key_digit_owner.push_back(std::move(mine));
    }
  }

  const uint64_t states = ds.states();
  uint64_t m_space = 1;
  for (int i = 0; i < r; ++i) {
    if (m_space > (uint64_t(1) << 40)) throw ModelError("oracle: message space too large");
    m_space *= q;
  }

  std::vector<uint64_t> msg(states, 0);
  {
    std::vector<int> mvec(r, 0);
    std::vector<int> odo(ds.digits, 0);
    auto pack_m = [&]() {
      uint64_t key = 0;
      for (int row = r - 1; row >= 0; --row) key = key * q + mvec[row];
      return key;
    };
    msg[0] = pack_m();
    for (uint64_t st = 1; st < states; ++st) {
      int d = 0;
      for (;;) {
        for (int row = 0; row < r; ++row)
          mvec[row] = (mvec[row] + col_of_digit[d][row]) % q;
        if (++odo[d] < q) break;
        odo[d] = 0;
        ++d;
      }
      msg[st] = pack_m();
    }
  }

  OracleReport rep;
  rep.enumerated_states = states;
  for (int i = 1; i <= N && rep.decodable; ++i) {
    std::vector<int> side = x_digit_list(N, n, g.s_mask(i));
    for (size_t kb = 0; kb < s.keys.size(); ++kb)
      if (s.keys[kb].pattern.has_user(i))
        side.insert(side.end(), key_digit_owner[kb].begin(), key_digit_owner[kb].end());
    std::vector<int> mine = x_digit_list(N, n, 1u << (i - 1));
    std::unordered_map<uint64_t, uint64_t> table;
    table.reserve(states / q);
    for (uint64_t st = 0; st < states; ++st) {
      const uint64_t key = msg[st] + m_space * ds.pack(st, side);
      const uint64_t want = ds.pack(st, mine);
      auto [it, inserted] = table.emplace(key, want);
      if (!inserted && it->second != want) {
        rep.decodable = false;
        rep.decode_failure_user = i;
        break;
      }
    }
  }

  for (int i = 1; i <= N; ++i) {
    const uint32_t unknown = ((1u << N) - 1) & ~g.a_mask(i);
    if (unknown == 0) continue;
    CondIndepCheck chk;
    chk.ds = &ds;
    chk.m_space = m_space;
    chk.m_digit_count = r;
    chk.cell_digits = x_digit_list(N, n, g.s_mask(i));
    for (size_t kb = 0; kb < s.keys.size(); ++kb)
      if (s.keys[kb].pattern.has_user(i))
        chk.cell_digits.insert(chk.cell_digits.end(), key_digit_owner[kb].begin(),
                               key_digit_owner[kb].end());
    chk.z_digits = x_digit_list(N, n, unknown);
    chk.init_guard();
    for (uint64_t st = 0; st < states; ++st) chk.add(st, msg[st]);
    std::string w = chk.verdict();
    if (!w.empty()) rep.leaks.push_back({i, "user " + std::to_string(i) + ": " + w});
  }
  return rep;
}

WeakOracleReport oracle_check_weak(const LinearScheme& s, const SideInfoGraph& g,
                                   uint64_t state_limit) {
  s.validate();
  if (!s.keys.empty()) throw ModelError("oracle_check_weak: scheme must be keyless");
  if (s.n_users() != g.n()) throw ModelError("oracle: scheme and graph disagree on N");
  const int N = g.n(), n = s.n, q = s.q, r = s.r;

  DigitSpace ds;
  ds.init(q, N * n, state_limit);
  std::vector<std::vector<int>> col_of_digit;
  for (int u = 0; u < N; ++u)
    for (int c = 0; c < n; ++c) col_of_digit.push_back(s.G[u].column(c));

  const uint64_t states = ds.states();
  uint64_t m_space = 1;
  for (int i = 0; i < r; ++i) {
    if (m_space > (uint64_t(1) << 40)) throw ModelError("oracle: message space too large");
    m_space *= q;
  }
  std::vector<uint64_t> msg(states, 0);
  {
    std::vector<int> mvec(r, 0);
    std::vector<int> odo(ds.digits, 0);
    auto pack_m = [&]() {
      uint64_t key = 0;
      for (int row = r - 1; row >= 0; --row) key = key * q + mvec[row];
      return key;
    };
    msg[0] = pack_m();
    for (uint64_t st = 1; st < states; ++st) {
      int d = 0;
      for (;;) {
        for (int row = 0; row < r; ++row)
          mvec[row] = (mvec[row] + col_of_digit[d][row]) % q;
        if (++odo[d] < q) break;
        odo[d] = 0;
        ++d;
      }
      msg[st] = pack_m();
    }
  }

  WeakOracleReport rep;
  rep.enumerated_states = states;
  for (int i = 1; i <= N && rep.decodable; ++i) {
    std::vector<int> side = x_digit_list(N, n, g.s_mask(i));
    std::vector<int> mine = x_digit_list(N, n, 1u << (i - 1));
    std::unordered_map<uint64_t, uint64_t> table;
    for (uint64_t st = 0; st < states; ++st) {
      const uint64_t key = msg[st] + m_space * ds.pack(st, side);
      const uint64_t want = ds.pack(st, mine);
      auto [it, inserted] = table.emplace(key, want);
      if (!inserted && it->second != want) {
        rep.decodable = false;
        rep.decode_failure_user = i;
        break;
      }
    }
  }
  for (int i = 1; i <= N; ++i) {
    for (int j = 1; j <= N; ++j) {
      if ((g.a_mask(i) >> (j - 1)) & 1u) continue;
      CondIndepCheck chk;
      chk.ds = &ds;
      chk.m_space = m_space;
      chk.m_digit_count = r;
      chk.cell_digits = x_digit_list(N, n, g.s_mask(i));
      chk.z_digits = x_digit_list(N, n, 1u << (j - 1));
      chk.init_guard();
      for (uint64_t st = 0; st < states; ++st) chk.add(st, msg[st]);
      std::string w = chk.verdict();
      rep.pairs.push_back({i, j, !w.empty(), w});
    }
  }
  return rep;
}

OracleReport oracle_check_multicast(const MulticastScheme& ms, const SideInfoGraph& g,
                                    uint64_t state_limit) {
  ms.validate();
  if (ms.n_users != g.n()) throw ModelError("oracle: scheme and graph disagree on N");
  const int N = g.n(), n = ms.n, q = ms.q;
  const int K = static_cast<int>(ms.sessions.size());

  DigitSpace ds;
  ds.init(q, N * n, state_limit);
  const uint64_t states = ds.states();

  // session value of state = sum of its terms' digits
  std::vector<std::vector<std::pair<int, int>>> terms(K);  // (digit, coeff)
  for (int k = 0; k < K; ++k)
    for (const auto& t : ms.sessions[k].terms)
      terms[k].emplace_back((t.user - 1) * n + (t.coordinate - 1), t.coeff);

  std::vector<uint64_t> msg(states, 0);  // all K session symbols, base-q packed
  uint64_t all_m_space = 1;
  for (int k = 0; k < K; ++k) {
    if (all_m_space > (uint64_t(1) << 40)) throw ModelError("oracle: message space too large");
    all_m_space *= q;
  }
  for (uint64_t st = 0; st < states; ++st) {
    uint64_t key = 0;
    for (int k = K - 1; k >= 0; --k) {
      int v = 0;
      for (const auto& [d, coeff] : terms[k]) v += coeff * ds.digit(st, d);
      key = key * q + (v % q);
    }
    msg[st] = key;
  }
  std::vector<uint64_t> qpow(K + 1, 1);
  for (int k = 0; k < K; ++k) qpow[k + 1] = qpow[k] * q;

  auto user_msg = [&](int user, uint64_t packed) {
    uint64_t key = 0, mult = 1;
    for (int k = 0; k < K; ++k) {
      const bool mine = std::binary_search(ms.sessions[k].recipients.begin(),
                                           ms.sessions[k].recipients.end(), user);
      if (mine) {
        key += mult * ((packed / qpow[k]) % q);
        mult *= q;
      }
    }
    return key;
  };

  OracleReport rep;
  rep.enumerated_states = states;
  for (int i = 1; i <= N && rep.decodable; ++i) {
    std::vector<int> side = x_digit_list(N, n, g.s_mask(i));
    std::vector<int> mine = x_digit_list(N, n, 1u << (i - 1));
    std::unordered_map<uint64_t, uint64_t> table;
    for (uint64_t st = 0; st < states; ++st) {
      const uint64_t key = user_msg(i, msg[st]) + all_m_space * ds.pack(st, side);
      const uint64_t want = ds.pack(st, mine);
      auto [it, inserted] = table.emplace(key, want);
      if (!inserted && it->second != want) {
        rep.decodable = false;
        rep.decode_failure_user = i;
        break;
      }
    }
  }
  for (int i = 1; i <= N; ++i) {
    const uint32_t unknown = ((1u << N) - 1) & ~g.a_mask(i);
    if (unknown == 0) continue;
    CondIndepCheck chk;
    chk.ds = &ds;
    chk.m_space = all_m_space;
    chk.m_digit_count = K;
    chk.cell_digits = x_digit_list(N, n, g.s_mask(i));
    chk.z_digits = x_digit_list(N, n, unknown);
    chk.init_guard();
    for (uint64_t st = 0; st < states; ++st) chk.add(st, user_msg(i, msg[st]));
    std::string w = chk.verdict();
    if (!w.empty()) rep.leaks.push_back({i, "user " + std::to_string(i) + ": " + w});
  }
  return rep;
}

}  // namespace pic
