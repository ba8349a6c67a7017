#include "coxalg/grading.hpp"

#include <algorithm>
#include <sstream>

namespace coxalg {

GroupElement make_element(const GroupSpec& spec, ZVec free, ZVec torsion) {
  if (free.size() != spec.free_rank || torsion.size() != spec.torsion_rank())
    throw std::invalid_argument("group element does not match group spec");
  for (Index j = 0; j < torsion.size(); ++j)
    torsion(j) = mod_floor(torsion(j), spec.moduli[static_cast<size_t>(j)]);
  return GroupElement{std::move(free), std::move(torsion)};
}

GroupElement zero_element(const GroupSpec& spec) {
  return GroupElement{ZVec::Zero(spec.free_rank), ZVec::Zero(spec.torsion_rank())};
}

GroupElement group_add(const GroupSpec& spec, const GroupElement& a, const GroupElement& b) {
  return make_element(spec, a.free + b.free, a.torsion + b.torsion);
}

GroupElement group_sub(const GroupSpec& spec, const GroupElement& a, const GroupElement& b) {
  return make_element(spec, a.free - b.free, a.torsion - b.torsion);
}

GroupElement group_neg(const GroupSpec& spec, const GroupElement& a) {
  return make_element(spec, -a.free, -a.torsion);
}

GroupElement group_scale(const GroupSpec& spec, const Integer& k, const GroupElement& a) {
  return make_element(spec, k * a.free, k * a.torsion);
}

bool degree_eq(const GroupElement& a, const GroupElement& b) {
  if (a.free.size() != b.free.size() || a.torsion.size() != b.torsion.size()) return false;
  for (Index i = 0; i < a.free.size(); ++i)
    if (a.free(i) != b.free(i)) return false;
  for (Index i = 0; i < a.torsion.size(); ++i)
    if (a.torsion(i) != b.torsion(i)) return false;
  return true;
}

bool degree_is_zero(const GroupElement& a) {
  for (Index i = 0; i < a.free.size(); ++i)
    if (a.free(i) != 0) return false;
  for (Index i = 0; i < a.torsion.size(); ++i)
    if (a.torsion(i) != 0) return false;
  return true;
}

bool DegreeLess::operator()(const GroupElement& a, const GroupElement& b) const {
  for (Index i = 0; i < std::min(a.free.size(), b.free.size()); ++i) {
    if (a.free(i) != b.free(i)) return a.free(i) < b.free(i);
  }
  if (a.free.size() != b.free.size()) return a.free.size() < b.free.size();
  for (Index i = 0; i < std::min(a.torsion.size(), b.torsion.size()); ++i) {
    if (a.torsion(i) != b.torsion(i)) return a.torsion(i) < b.torsion(i);
  }
  return a.torsion.size() < b.torsion.size();
}

std::string degree_to_string(const GroupSpec& spec, const GroupElement& g) {
  std::ostringstream os;
  os << '(';
  for (Index i = 0; i < g.free.size(); ++i) {
    if (i > 0) os << ',';
    os << g.free(i);
  }
  if (spec.torsion_rank() > 0) {
    os << ';';
    for (Index j = 0; j < g.torsion.size(); ++j) {
      if (j > 0) os << ',';
      os << g.torsion(j) << '~' << spec.moduli[static_cast<size_t>(j)];
    }
  }
  os << ')';
  return os.str();
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

}  // namespace

namespace {

Integer parse_int_token(const std::string& token, const std::string& context) {
  if (token.empty()) throw std::invalid_argument("empty integer in " + context);
  try {
    return Integer(token);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad integer \"" + token + "\" in " + context);
  }
}

}  // namespace

GroupElement parse_degree(const GroupSpec& spec, const std::string& text) {
  std::string s = text;
  s.erase(std::remove_if(s.begin(), s.end(),
                         [](unsigned char c) { return std::isspace(c); }),
          s.end());
  if (s.size() < 2 || s.front() != '(' || s.back() != ')')
    throw std::invalid_argument("degree must be parenthesized: " + text);
  s = s.substr(1, s.size() - 2);
  std::string free_part = s, tors_part;
  const auto semi = s.find(';');
  if (semi != std::string::npos) {
    free_part = s.substr(0, semi);
    tors_part = s.substr(semi + 1);
  }
  ZVec free = ZVec::Zero(spec.free_rank);
  if (!free_part.empty()) {
    const auto items = split(free_part, ',');
    if (static_cast<Index>(items.size()) != spec.free_rank)
      throw std::invalid_argument("degree has wrong free rank: " + text);
    for (Index i = 0; i < spec.free_rank; ++i)
      free(i) = parse_int_token(items[static_cast<size_t>(i)], text);
  } else if (spec.free_rank != 0) {
    throw std::invalid_argument("degree has wrong free rank: " + text);
  }
  ZVec tors = ZVec::Zero(spec.torsion_rank());
  if (!tors_part.empty()) {
    const auto items = split(tors_part, ',');
    if (static_cast<Index>(items.size()) != spec.torsion_rank())
      throw std::invalid_argument("degree has wrong torsion rank: " + text);
    for (Index j = 0; j < spec.torsion_rank(); ++j) {
      const std::string& item = items[static_cast<size_t>(j)];
      const auto tilde = item.find('~');
      if (tilde == std::string::npos)
        throw std::invalid_argument("torsion entry needs the form r~m: " + text);
      tors(j) = parse_int_token(item.substr(0, tilde), text);
      if (parse_int_token(item.substr(tilde + 1), text) != spec.moduli[static_cast<size_t>(j)])
        throw std::invalid_argument("torsion modulus mismatch: " + text);
    }
  } else if (spec.torsion_rank() != 0) {
    throw std::invalid_argument("degree has wrong torsion rank: " + text);
  }
  return make_element(spec, std::move(free), std::move(tors));
}

bool OrderSpec::operator==(const OrderSpec& other) const {
  if (mode != other.mode || functionals.size() != other.functionals.size()) return false;
  for (size_t i = 0; i < functionals.size(); ++i) {
    if (functionals[i].size() != other.functionals[i].size()) return false;
    for (Index j = 0; j < functionals[i].size(); ++j)
      if (functionals[i](j) != other.functionals[i](j)) return false;
  }
  return true;
}

namespace {

bool constraint_eq(const LinearConstraint& x, const LinearConstraint& y) {
  if (x.a.size() != y.a.size() || x.rhs != y.rhs) return false;
  for (Index i = 0; i < x.a.size(); ++i)
    if (x.a(i) != y.a(i)) return false;
  return true;
}

void push_unique(std::vector<LinearConstraint>& cs, LinearConstraint c) {
  for (const auto& other : cs)
    if (constraint_eq(other, c)) return;
  cs.push_back(std::move(c));
}

}  // namespace

std::optional<QVec> feasible_point(std::vector<LinearConstraint> constraints, Index dim) {
  if (dim == 0) {
    for (const auto& c : constraints)
      if (c.rhs > 0) return std::nullopt;
    return QVec(0);
  }
  const Index k = dim - 1;
  std::vector<LinearConstraint> lower, upper, rest;
  for (auto& c : constraints) {
    if (c.a(k) > 0)
      lower.push_back(std::move(c));  // x_k >= (rhs - a'.x') / a_k
    else if (c.a(k) < 0)
      upper.push_back(std::move(c));
    else
      rest.push_back(std::move(c));
  }
  std::vector<LinearConstraint> projected;
  for (auto& c : rest) push_unique(projected, {c.a.head(k), c.rhs});
  for (const auto& lo : lower) {
    for (const auto& up : upper) {
      // Scale so the x_k coefficients cancel; the projected constraint says
      // the lower bound for x_k stays below the upper bound.
      QVec a = lo.a.head(k) / lo.a(k) - up.a.head(k) / up.a(k);
      Rational rhs = lo.rhs / lo.a(k) - up.rhs / up.a(k);
      push_unique(projected, {std::move(a), std::move(rhs)});
    }
  }
  const auto inner = feasible_point(std::move(projected), k);
  if (!inner) return std::nullopt;
  QVec x(dim);
  x.head(k) = *inner;
  std::optional<Rational> max_lower, min_upper;
  for (const auto& lo : lower) {
    Rational bound = lo.rhs;
    for (Index i = 0; i < k; ++i) bound -= lo.a(i) * x(i);
    bound /= lo.a(k);
    if (!max_lower || bound > *max_lower) max_lower = bound;
  }
  for (const auto& up : upper) {
    Rational bound = up.rhs;
    for (Index i = 0; i < k; ++i) bound -= up.a(i) * x(i);
    bound /= up.a(k);
    if (!min_upper || bound < *min_upper) min_upper = bound;
  }
  if (max_lower && min_upper)
    x(k) = (*max_lower + *min_upper) / 2;
  else if (max_lower)
    x(k) = *max_lower;
  else if (min_upper)
    x(k) = *min_upper;
  else
    x(k) = 0;
  return x;
}

std::optional<PositivityCertificate> positivity_certificate_for(
    const GroupSpec& spec, const std::vector<GroupElement>& degrees) {
  if (spec.free_rank == 0) return std::nullopt;
  std::vector<LinearConstraint> cs;
  for (const auto& g : degrees) {
    QVec a(spec.free_rank);
    for (Index i = 0; i < spec.free_rank; ++i) a(i) = Rational(g.free(i));
    cs.push_back({std::move(a), Rational(1)});
  }
  auto point = feasible_point(std::move(cs), spec.free_rank);
  if (!point) return std::nullopt;
  PositivityCertificate cert{std::move(*point)};
  std::optional<Rational> min_value;
  for (const auto& g : degrees) {
    const Rational v = phi_value(cert, g);
    if (!min_value || v < *min_value) min_value = v;
  }
  if (min_value && *min_value != 1) cert.phi /= *min_value;
  return cert;
}

}  // namespace coxalg
