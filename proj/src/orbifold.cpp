#include "alemass/orbifold.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace alemass {

LensGenerator lens_generator(long long q, long long p) {
  if (q < 1 || p < 0)
    throw std::invalid_argument("lens_generator: need q >= 1 and p >= 0");
  // Element j is diag(zeta^j, zeta^{jp}); it fixes a coordinate axis
  // pointwise exactly when one exponent vanishes mod q.
  for (long long j = 1; j < q; ++j) {
    const bool unit_on_z1 = j % q == 0;                // fixes {z2 = 0}
    const bool unit_on_z2 = (j * (p % q)) % q == 0;    // fixes {z1 = 0}
    if (unit_on_z1 || unit_on_z2)
      throw std::invalid_argument(
          "lens_generator: action of type (" + std::to_string(q) + "," + std::to_string(p) +
          ") is not free: element j=" + std::to_string(j) + " fixes the axis " +
          (unit_on_z1 ? "z2 = 0" : "z1 = 0") + " pointwise");
  }
  return LensGenerator{q, 1, p % q};
}

CentralQuotient central_quotient(const std::vector<LensGenerator>& generators,
                                 long long element_cap) {
  long long modulus = 1;
  for (const auto& g : generators) {
    if (g.q < 1) throw std::invalid_argument("central_quotient: generator order must be >= 1");
    modulus = std::lcm(modulus, g.q);
  }
  // Exponent pairs mod the common order; the diagonal group is abelian, so
  // closure is closure under addition.
  std::set<std::pair<long long, long long>> elements{{0, 0}};
  std::vector<std::pair<long long, long long>> frontier{{0, 0}};
  std::vector<std::pair<long long, long long>> steps;
  for (const auto& g : generators) {
    const long long scale = modulus / g.q;
    steps.emplace_back((g.a * scale) % modulus, (g.b * scale) % modulus);
  }
  while (!frontier.empty()) {
    const auto cur = frontier.back();
    frontier.pop_back();
    for (const auto& s : steps) {
      const std::pair<long long, long long> next{(cur.first + s.first) % modulus,
                                                 (cur.second + s.second) % modulus};
      if (elements.insert(next).second) {
        if (static_cast<long long>(elements.size()) > element_cap)
          throw std::runtime_error("central_quotient: group closure exceeded the element cap");
        frontier.push_back(next);
      }
    }
  }
  CentralQuotient out;
  out.group_order = static_cast<long long>(elements.size());
  out.scalar_count = 0;
  for (const auto& e : elements)
    if (e.first == e.second) ++out.scalar_count;
  out.effective_order = out.group_order / out.scalar_count;
  return out;
}

std::string OrbifoldGroupType::name() const {
  switch (kind) {
    case Kind::Trivial: return "trivial";
    case Kind::Cyclic: return "cyclic(" + std::to_string(n) + ")";
    case Kind::Dihedral: return "dihedral(" + std::to_string(n) + ")";
    case Kind::Tetrahedral: return "tetrahedral";
    case Kind::Octahedral: return "octahedral";
    case Kind::Icosahedral: return "icosahedral";
  }
  return "?";
}

OrbifoldGroupType OrbifoldGroupType::parse(const std::string& text) {
  OrbifoldGroupType t;
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  long long n = 0;
  if (colon != std::string::npos) {
    try {
      n = std::stoll(text.substr(colon + 1));
    } catch (const std::exception&) {
      throw std::invalid_argument("OrbifoldGroupType: bad order in '" + text + "'");
    }
  }
  if (head == "trivial") t.kind = Kind::Trivial;
  else if (head == "cyclic") t.kind = Kind::Cyclic;
  else if (head == "dihedral") t.kind = Kind::Dihedral;
  else if (head == "tetrahedral") t.kind = Kind::Tetrahedral;
  else if (head == "octahedral") t.kind = Kind::Octahedral;
  else if (head == "icosahedral") t.kind = Kind::Icosahedral;
  else throw std::invalid_argument("OrbifoldGroupType: unknown kind '" + head + "'");
  if (t.kind == Kind::Cyclic || t.kind == Kind::Dihedral) {
    if (n < 2)
      throw std::invalid_argument("OrbifoldGroupType: '" + head + "' needs an order n >= 2");
    t.n = n;
  } else if (colon != std::string::npos) {
    throw std::invalid_argument("OrbifoldGroupType: '" + head + "' takes no order");
  }
  return t;
}

std::vector<long long> classify_singularities(const OrbifoldGroupType& type) {
  using Kind = OrbifoldGroupType::Kind;
  switch (type.kind) {
    case Kind::Trivial: return {};
    case Kind::Cyclic: return {type.n, type.n};
    case Kind::Dihedral: return {2, 2, type.n};
    case Kind::Tetrahedral: return {2, 3, 3};
    case Kind::Octahedral: return {2, 3, 4};
    case Kind::Icosahedral: return {2, 5, 5};
  }
  throw std::logic_error("classify_singularities: unreachable");
}

CapsuleModel build_capsule(long long ell, const OrbifoldGroupType& gamma_check,
                           const std::vector<std::pair<long long, long long>>& local_types,
                           const std::string& central_weight) {
  if (ell != static_cast<long long>(local_types.size()))
    throw std::invalid_argument("build_capsule: ell=" + std::to_string(ell) + " but " +
                                std::to_string(local_types.size()) + " local types supplied");
  std::vector<long long> profile = classify_singularities(gamma_check);
  std::vector<long long> supplied;
  supplied.reserve(local_types.size());
  for (const auto& [q, p] : local_types) supplied.push_back(q);
  std::sort(profile.begin(), profile.end());
  std::vector<long long> sorted = supplied;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != profile) {
    std::string want, got;
    for (long long v : profile) want += (want.empty() ? "" : ",") + std::to_string(v);
    for (long long v : sorted) got += (got.empty() ? "" : ",") + std::to_string(v);
    throw std::invalid_argument("build_capsule: local orders [" + got +
                                "] do not match the " + gamma_check.name() + " profile [" +
                                want + "]");
  }

  CapsuleModel model;
  model.ell = ell;
  model.gamma_check = gamma_check;
  model.local_types = local_types;
  model.central_weight = central_weight;
  model.vertex_labels.push_back("sigma");
  for (std::size_t i = 0; i < local_types.size(); ++i) {
    const auto [q, p] = local_types[i];
    const HJString chain = hj_resolve(q, p);
    int prev = 0;  // central vertex
    for (std::size_t j = 0; j < chain.chain.size(); ++j) {
      model.vertex_labels.push_back("E" + std::to_string(i + 1) + "," + std::to_string(j + 1));
      const int cur = static_cast<int>(model.vertex_labels.size()) - 1;
      model.edges.emplace_back(prev, cur);
      prev = cur;
    }
    model.chains.push_back(chain);
  }

  // Tree check: connected with |V| - 1 edges.
  const int v = static_cast<int>(model.vertex_labels.size());
  if (static_cast<int>(model.edges.size()) != v - 1)
    throw std::logic_error("build_capsule: edge count is not |V| - 1");
  std::vector<int> seen(v, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  while (!stack.empty()) {
    const int cur = stack.back();
    stack.pop_back();
    for (const auto& [x, y] : model.edges) {
      const int other = x == cur ? y : (y == cur ? x : -1);
      if (other >= 0 && !seen[other]) {
        seen[other] = 1;
        stack.push_back(other);
      }
    }
  }
  if (std::count(seen.begin(), seen.end(), 1) != v)
    throw std::logic_error("build_capsule: graph is not connected");
  return model;
}

}  // namespace alemass
