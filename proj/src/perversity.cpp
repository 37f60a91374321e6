#include "ihom/perversity.hpp"

#include <algorithm>
#include <stdexcept>

namespace ihom {

void check_perversity(const Stratification& s, const Perversity& p) {
  if (p.values.size() != s.size()) throw std::invalid_argument("perversity size does not match the strata");
  for (const auto& st : s.strata())
    if (st.regular && p(st.id) != ExtInt(0))
      throw std::invalid_argument("perversity is nonzero on regular stratum " + std::to_string(st.id));
}

Perversity make_perversity(const Stratification& s, const std::map<int, ExtInt>& singular_values) {
  Perversity p;
  p.values.assign(s.size(), ExtInt(0));
  for (const auto& [id, v] : singular_values) {
    if (id < 0 || static_cast<std::size_t>(id) >= s.size()) throw std::invalid_argument("unknown stratum id");
    if (s.regular(id) && v != ExtInt(0)) throw std::invalid_argument("regular strata carry perversity 0");
    p.values[static_cast<std::size_t>(id)] = v;
  }
  return p;
}

Perversity zero_perversity(const Stratification& s) { return make_perversity(s, {}); }

Perversity top_perversity(const Stratification& s) {
  Perversity p = zero_perversity(s);
  for (const auto& st : s.strata())
    if (!st.regular) p.values[static_cast<std::size_t>(st.id)] = ExtInt(s.codim(st.id) - 2);
  return p;
}

Perversity dual(const Stratification& s, const Perversity& p) {
  check_perversity(s, p);
  const Perversity t = top_perversity(s);
  Perversity d = zero_perversity(s);
  for (const auto& st : s.strata())
    if (!st.regular) d.values[static_cast<std::size_t>(st.id)] = t(st.id) - p(st.id);
  return d;
}

bool pointwise_le(const Perversity& a, const Perversity& b) {
  if (a.values.size() != b.values.size()) throw std::invalid_argument("perversities on different strata");
  for (std::size_t i = 0; i < a.values.size(); ++i)
    if (a.values[i] > b.values[i]) return false;
  return true;
}

Perversity pushforward(const RefinementPair& r, const Perversity& p) {
  check_perversity(r.fine, p);
  Perversity q;
  q.values.assign(r.coarse.size(), ExtInt::pos_inf());
  for (const auto& st : r.fine.strata()) {
    auto& v = q.values[static_cast<std::size_t>(r.target(st.id))];
    v = min(v, p(st.id));
  }
  for (const auto& st : r.coarse.strata())
    if (st.regular) q.values[static_cast<std::size_t>(st.id)] = ExtInt(0);
  return q;
}

Perversity pullback(const RefinementPair& r, const Perversity& q) {
  check_perversity(r.coarse, q);
  Perversity p;
  for (const auto& st : r.fine.strata()) p.values.push_back(q(r.target(st.id)));
  return p;
}

KReport is_K_perversity(const RefinementPair& r, const Perversity& p) {
  check_perversity(r.fine, p);
  KReport rep;
  const Perversity t = top_perversity(r.fine);
  std::vector<char> one_exc(r.fine.size(), 0);
  for (const auto& st : r.fine.strata())
    if (!st.regular && r.coarse.regular(r.target(st.id)) && r.fine.codim(st.id) == 1) {
      one_exc[static_cast<std::size_t>(st.id)] = 1;
      rep.one_exceptional.push_back(st.id);
    }
  const int count = static_cast<int>(r.fine.size());
  for (int s = 0; s < count; ++s)
    for (int q = 0; q < count; ++q) {
      if (r.target(s) != r.target(q)) continue;
      if (s != q && r.fine_order->le(s, q)) {
        const bool lower_ok = p(q) <= p(s);
        const bool upper_ok = p(s) <= p(q) + (t(s) - t(q));
        if (!lower_ok || !upper_ok) {
          KViolation v{"K1", s, q,
                       "p(Q)=" + p(q).to_string() + " p(S)=" + p(s).to_string() + " t(S)-t(Q)=" +
                           (t(s) - t(q)).to_string()};
          rep.strict.push_back(v);
          const bool relaxed_ok = one_exc[static_cast<std::size_t>(s)] ? lower_ok : false;
          if (!relaxed_ok) rep.relaxed.push_back(v);
        }
      }
      if (s < q && r.fine.dim(s) == r.fine.dim(q) && p(s) != p(q)) {
        KViolation v{"K2", s, q, "p(S)=" + p(s).to_string() + " p(Q)=" + p(q).to_string()};
        rep.strict.push_back(v);
        rep.relaxed.push_back(v);
      }
    }
  return rep;
}

void KingPerversity::validate() const {
  if (values.empty() || values[0] != 0) throw std::invalid_argument("King perversity must vanish in codimension 0");
  for (std::size_t k = 0; k + 1 < values.size(); ++k)
    if (values[k + 1] < values[k] || values[k + 1] > values[k] + 1)
      throw std::invalid_argument("King perversity violates p(k) <= p(k+1) <= p(k)+1 at k=" + std::to_string(k));
}

int KingPerversity::operator()(int codim) const {
  if (codim < 0 || static_cast<std::size_t>(codim) >= values.size())
    throw std::out_of_range("codimension outside the King perversity");
  return values[static_cast<std::size_t>(codim)];
}

KingPerversity KingPerversity::zero(int n) { return {std::vector<int>(static_cast<std::size_t>(n + 1), 0)}; }

KingPerversity KingPerversity::lower_middle(int n) {
  KingPerversity kp;
  for (int k = 0; k <= n; ++k) kp.values.push_back(k >= 2 ? (k - 2) / 2 : 0);
  return kp;
}

KingPerversity KingPerversity::upper_middle(int n) {
  KingPerversity kp;
  for (int k = 0; k <= n; ++k) kp.values.push_back(k >= 2 ? (k - 1) / 2 : 0);
  return kp;
}

Perversity from_king(const KingPerversity& kp, const Stratification& s) {
  kp.validate();
  Perversity p;
  for (const auto& st : s.strata()) p.values.push_back(ExtInt(kp(s.codim(st.id))));
  return p;
}

}  // namespace ihom
