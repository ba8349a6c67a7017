#include "coxalg/polyring.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace coxalg {

bool mon_eq(const Monomial& a, const Monomial& b) {
  if (a.e.size() != b.e.size()) return false;
  for (Index i = 0; i < a.e.size(); ++i)
    if (a.e(i) != b.e(i)) return false;
  return true;
}

bool mon_divides(const Monomial& a, const Monomial& b) {
  if (a.e.size() != b.e.size()) return false;
  for (Index i = 0; i < a.e.size(); ++i)
    if (a.e(i) > b.e(i)) return false;
  return true;
}

bool MonLess::operator()(const Monomial& a, const Monomial& b) const {
  for (Index i = 0; i < std::min(a.e.size(), b.e.size()); ++i)
    if (a.e(i) != b.e(i)) return a.e(i) > b.e(i);
  return a.e.size() > b.e.size();
}

RingPtr GradedRingSpec::make(std::vector<std::string> names, std::vector<GroupElement> degrees,
                             GroupSpec group, OrderSpec order, Role role) {
  if (names.empty()) throw std::invalid_argument("ring needs at least one variable");
  if (names.size() != degrees.size())
    throw std::invalid_argument("one degree per variable required");
  {
    std::set<std::string> uniq(names.begin(), names.end());
    if (uniq.size() != names.size()) throw std::invalid_argument("variable names must be distinct");
  }
  if (group.free_rank < 0) throw std::invalid_argument("negative free rank");
  for (const auto& m : group.moduli)
    if (m < 2) throw std::invalid_argument("torsion moduli must be >= 2");
  auto ring = std::shared_ptr<GradedRingSpec>(new GradedRingSpec());
  const Index n = static_cast<Index>(names.size());
  ring->names_ = std::move(names);
  ring->group_ = std::move(group);
  ring->order_ = std::move(order);
  ring->role_ = role;
  ring->free_weights_ = ZMat::Zero(n, ring->group_.free_rank);
  ring->torsion_weights_ = ZMat::Zero(n, ring->group_.torsion_rank());
  ring->degrees_.reserve(degrees.size());
  for (Index i = 0; i < n; ++i) {
    GroupElement d = make_element(ring->group_, degrees[static_cast<size_t>(i)].free,
                                  degrees[static_cast<size_t>(i)].torsion);
    ring->free_weights_.row(i) = d.free.transpose();
    ring->torsion_weights_.row(i) = d.torsion.transpose();
    ring->degrees_.push_back(std::move(d));
  }
  ring->certificate_ = positivity_certificate_for(ring->group_, ring->degrees_);
  if (ring->order_.mode == OrderSpec::Mode::functional && ring->order_.functionals.empty())
    throw std::invalid_argument("functional order needs at least one functional");
  for (const auto& f : ring->order_.functionals)
    if (f.size() != ring->group_.free_rank)
      throw std::invalid_argument("order functional has wrong dimension");
  return ring;
}

const PositivityCertificate& GradedRingSpec::require_certificate() const {
  if (!certificate_)
    throw math_error(
        "unsupported grading: no positivity certificate (some degree fiber may be infinite)");
  return *certificate_;
}

RingPtr GradedRingSpec::dual() const {
  std::lock_guard<std::mutex> lock(mutex_);
  if (dual_memo_) return dual_memo_;
  std::vector<std::string> dual_names;
  dual_names.reserve(names_.size());
  for (const auto& name : names_) {
    std::string flipped = name;
    for (auto& c : flipped) {
      c = role_ == Role::S ? static_cast<char>(std::toupper(static_cast<unsigned char>(c)))
                           : static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    dual_names.push_back(flipped);
  }
  {
    std::set<std::string> uniq(dual_names.begin(), dual_names.end());
    if (uniq.size() != dual_names.size())
      throw std::invalid_argument("variable names collide when uppercased for the operator ring");
  }
  dual_memo_ = make(std::move(dual_names), degrees_, group_, order_,
                    role_ == Role::S ? Role::Q : Role::S);
  return dual_memo_;
}

namespace {

void enumerate_rec(const GradedRingSpec& ring, Index var, const Rational& budget,
                   ZVec& remaining_free, ZVec& remaining_tors, Eigen::VectorXi& exps,
                   std::vector<Monomial>& out) {
  const Index n = ring.var_count();
  if (var == n) {
    if (!remaining_free.isZero(0)) return;
    for (Index j = 0; j < remaining_tors.size(); ++j)
      if (mod_floor(remaining_tors(j), ring.group().moduli[static_cast<size_t>(j)]) != 0) return;
    out.push_back(Monomial{exps});
    return;
  }
  const Rational step = phi_value(*ring.certificate(), ring.degree_of(var));
  const Integer max_e = floor_rat(budget / step);
  for (Integer e = max_e; e >= 0; --e) {
    const int ei = static_cast<int>(e);
    exps(var) = ei;
    remaining_free -= e * ring.free_weights().row(var).transpose();
    remaining_tors -= e * ring.torsion_weights().row(var).transpose();
    enumerate_rec(ring, var + 1, budget - Rational(e) * step, remaining_free, remaining_tors, exps, out);
    remaining_free += e * ring.free_weights().row(var).transpose();
    remaining_tors += e * ring.torsion_weights().row(var).transpose();
  }
  exps(var) = 0;
}

}  // namespace

const std::vector<Monomial>& GradedRingSpec::monomial_basis(const GroupElement& g) const {
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = basis_memo_.find(g);
  if (it != basis_memo_.end()) return it->second;
  const PositivityCertificate& cert = require_certificate();
  std::vector<Monomial> result;
  const Rational budget = phi_value(cert, g);
  if (budget >= 0) {
    ZVec rem_free = g.free;
    ZVec rem_tors = g.torsion;
    Eigen::VectorXi exps = Eigen::VectorXi::Zero(var_count());
    enumerate_rec(*this, 0, budget, rem_free, rem_tors, exps, result);
  }
  return basis_memo_.emplace(g, std::move(result)).first->second;
}

bool same_variables(const GradedRingSpec& a, const GradedRingSpec& b) {
  if (&a == &b) return true;
  if (!(a.group() == b.group()) || a.var_count() != b.var_count()) return false;
  for (Index i = 0; i < a.var_count(); ++i)
    if (!degree_eq(a.degree_of(i), b.degree_of(i))) return false;
  return true;
}

bool same_ring(const RingPtr& a, const RingPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return a->role() == b->role() && a->names() == b->names() && a->order() == b->order() &&
         same_variables(*a, *b);
}

GroupElement monomial_degree(const GradedRingSpec& ring, const Monomial& m) {
  ZVec e(m.e.size());
  for (Index i = 0; i < m.e.size(); ++i) e(i) = m.e(i);
  return make_element(ring.group(), ring.free_weights().transpose() * e,
                      ring.torsion_weights().transpose() * e);
}

const std::vector<Monomial>& monomials_of_degree(const RingPtr& ring, const GroupElement& g) {
  return ring->monomial_basis(g);
}

bool is_realized(const RingPtr& ring, const GroupElement& g) {
  return !monomials_of_degree(ring, g).empty();
}

bool leq(const RingPtr& ring, const GroupElement& g, const GroupElement& h) {
  const GroupElement d = group_sub(ring->group(), h, g);
  if (ring->order().mode == OrderSpec::Mode::functional) {
    for (const auto& psi : ring->order().functionals) {
      Rational v = 0;
      for (Index i = 0; i < psi.size(); ++i) v += psi(i) * Rational(d.free(i));
      if (v < 0) return false;
    }
    return true;
  }
  return is_realized(ring, d);
}

bool strictly_less(const RingPtr& ring, const GroupElement& g, const GroupElement& h) {
  return leq(ring, g, h) && !leq(ring, h, g);
}

std::vector<std::pair<GroupElement, GroupElement>> cover_relations(
    const RingPtr& ring, const std::vector<GroupElement>& degrees) {
  std::vector<GroupElement> sorted = degrees;
  std::sort(sorted.begin(), sorted.end(), DegreeLess{});
  sorted.erase(std::unique(sorted.begin(), sorted.end(), degree_eq), sorted.end());
  std::vector<std::pair<GroupElement, GroupElement>> covers;
  for (const auto& g : sorted) {
    for (const auto& h : sorted) {
      if (!strictly_less(ring, g, h)) continue;
      bool has_middle = false;
      for (const auto& k : sorted) {
        if (strictly_less(ring, g, k) && strictly_less(ring, k, h)) {
          has_middle = true;
          break;
        }
      }
      if (!has_middle) covers.emplace_back(g, h);
    }
  }
  return covers;
}

namespace {

void normalize(Polynomial& p) {
  for (auto it = p.terms.begin(); it != p.terms.end();) {
    if (it->second == 0)
      it = p.terms.erase(it);
    else
      ++it;
  }
  p.degree.reset();
  if (p.terms.empty()) return;
  GroupElement deg = monomial_degree(*p.ring, p.terms.begin()->first);
  for (auto it = std::next(p.terms.begin()); it != p.terms.end(); ++it) {
    if (!degree_eq(monomial_degree(*p.ring, it->first), deg)) return;
  }
  p.degree = std::move(deg);
}

void check_same_ring(const Polynomial& p, const Polynomial& q) {
  if (!same_ring(p.ring, q.ring)) throw std::invalid_argument("polynomials over different rings");
}

}  // namespace

Polynomial poly_zero(const RingPtr& ring) { return Polynomial{ring, {}, {}}; }

Polynomial poly_constant(const RingPtr& ring, const Rational& c) {
  Polynomial p = poly_zero(ring);
  if (c != 0) p.terms.emplace(Monomial{Eigen::VectorXi::Zero(ring->var_count())}, c);
  normalize(p);
  return p;
}

Polynomial poly_monomial(const RingPtr& ring, Monomial m, Rational coeff) {
  if (m.e.size() != ring->var_count()) throw std::invalid_argument("monomial arity mismatch");
  Polynomial p = poly_zero(ring);
  if (coeff != 0) p.terms.emplace(std::move(m), std::move(coeff));
  normalize(p);
  return p;
}

Polynomial poly_variable(const RingPtr& ring, Index var) {
  Eigen::VectorXi e = Eigen::VectorXi::Zero(ring->var_count());
  e(var) = 1;
  return poly_monomial(ring, Monomial{std::move(e)});
}

bool poly_is_zero(const Polynomial& p) { return p.terms.empty(); }

bool poly_eq(const Polynomial& p, const Polynomial& q) {
  if (!same_ring(p.ring, q.ring) || p.terms.size() != q.terms.size()) return false;
  auto it = p.terms.begin();
  auto jt = q.terms.begin();
  for (; it != p.terms.end(); ++it, ++jt)
    if (!mon_eq(it->first, jt->first) || it->second != jt->second) return false;
  return true;
}

Polynomial add(const Polynomial& p, const Polynomial& q) {
  check_same_ring(p, q);
  Polynomial r = p;
  for (const auto& [m, c] : q.terms) {
    auto [it, inserted] = r.terms.emplace(m, c);
    if (!inserted) it->second += c;
  }
  normalize(r);
  return r;
}

Polynomial neg(const Polynomial& p) {
  Polynomial r = p;
  for (auto& [m, c] : r.terms) c = -c;
  return r;
}

Polynomial sub(const Polynomial& p, const Polynomial& q) { return add(p, neg(q)); }

Polynomial scale(const Polynomial& p, const Rational& c) {
  Polynomial r = p;
  for (auto& [m, coeff] : r.terms) coeff *= c;
  normalize(r);
  return r;
}

Polynomial multiply(const Polynomial& p, const Polynomial& q) {
  check_same_ring(p, q);
  Polynomial r = poly_zero(p.ring);
  for (const auto& [mp, cp] : p.terms) {
    for (const auto& [mq, cq] : q.terms) {
      Monomial m{mp.e + mq.e};
      auto [it, inserted] = r.terms.emplace(std::move(m), cp * cq);
      if (!inserted) it->second += cp * cq;
    }
  }
  normalize(r);
  return r;
}

Polynomial poly_pow(const Polynomial& p, Index k) {
  Polynomial r = poly_constant(p.ring, 1);
  for (Index i = 0; i < k; ++i) r = multiply(r, p);
  return r;
}

Rational evaluate(const Polynomial& p, const QVec& point) {
  if (point.size() != p.ring->var_count())
    throw std::invalid_argument("evaluation point has wrong arity");
  Rational total = 0;
  for (const auto& [m, c] : p.terms) {
    Rational term = c;
    for (Index i = 0; i < m.e.size(); ++i)
      for (int k = 0; k < m.e(i); ++k) term *= point(i);
    total += term;
  }
  return total;
}

Polynomial apply_diff(const Polynomial& alpha, const Polynomial& f) {
  if (!same_variables(*alpha.ring, *f.ring))
    throw std::invalid_argument("operator and polynomial have different variable sets");
  Polynomial r = poly_zero(f.ring);
  for (const auto& [a, ca] : alpha.terms) {
    for (const auto& [c, cf] : f.terms) {
      if (!mon_divides(a, c)) continue;
      Integer factor = 1;
      for (Index i = 0; i < a.e.size(); ++i) factor *= falling_factorial(c.e(i), a.e(i));
      Monomial m{c.e - a.e};
      const Rational coeff = ca * cf * Rational(factor);
      auto [it, inserted] = r.terms.emplace(std::move(m), coeff);
      if (!inserted) it->second += coeff;
    }
  }
  normalize(r);
  return r;
}

QMat catalecticant(const Polynomial& f, const GroupElement& g) {
  if (poly_is_zero(f) || !f.degree) throw std::invalid_argument("catalecticant needs homogeneous f");
  const RingPtr ring = f.ring;
  const GroupElement target = group_sub(ring->group(), *f.degree, g);
  const auto& rows = monomials_of_degree(ring, target);
  const auto& cols = monomials_of_degree(ring, g);
  QMat m = QMat::Zero(static_cast<Index>(rows.size()), static_cast<Index>(cols.size()));
  for (Index j = 0; j < m.cols(); ++j) {
    const Monomial& a = cols[static_cast<size_t>(j)];
    for (Index i = 0; i < m.rows(); ++i) {
      const Monomial c{a.e + rows[static_cast<size_t>(i)].e};
      const auto it = f.terms.find(c);
      if (it == f.terms.end()) continue;
      Integer factor = 1;
      for (Index k = 0; k < a.e.size(); ++k) factor *= falling_factorial(c.e(k), a.e(k));
      m(i, j) = it->second * Rational(factor);
    }
  }
  return m;
}

QVec coefficient_vector(const Polynomial& p, const std::vector<Monomial>& basis) {
  QVec v = QVec::Zero(static_cast<Index>(basis.size()));
  size_t found = 0;
  for (Index i = 0; i < v.size(); ++i) {
    const auto it = p.terms.find(basis[static_cast<size_t>(i)]);
    if (it != p.terms.end()) {
      v(i) = it->second;
      ++found;
    }
  }
  if (found != p.terms.size())
    throw std::invalid_argument("polynomial has terms outside the given basis");
  return v;
}

Polynomial poly_from_coefficients(const RingPtr& ring, const std::vector<Monomial>& basis,
                                  const QVec& coeffs) {
  Polynomial p = poly_zero(ring);
  for (Index i = 0; i < coeffs.size(); ++i)
    if (coeffs(i) != 0) p.terms.emplace(basis[static_cast<size_t>(i)], coeffs(i));
  normalize(p);
  return p;
}

std::string to_string(const Polynomial& p) {
  if (p.terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : p.terms) {
    const bool negative = c < 0;
    const Rational mag = negative ? Rational(-c) : c;
    if (first) {
      if (negative) os << '-';
      first = false;
    } else {
      os << (negative ? " - " : " + ");
    }
    const bool constant = total_degree(m) == 0;
    if (mag != 1 || constant) {
      os << mag.str();
      if (!constant) os << '*';
    }
    bool first_factor = true;
    for (Index i = 0; i < m.e.size(); ++i) {
      if (m.e(i) == 0) continue;
      if (!first_factor) os << '*';
      first_factor = false;
      os << p.ring->names()[static_cast<size_t>(i)];
      if (m.e(i) > 1) os << '^' << m.e(i);
    }
  }
  return os.str();
}

namespace {

struct Parser {
  const RingPtr& ring;
  const std::string& text;
  size_t pos = 0;

  void skip_space() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  bool at_end() {
    skip_space();
    return pos >= text.size();
  }

  char peek() {
    skip_space();
    return text[pos];
  }

  [[noreturn]] void fail(const std::string& what) {
    throw std::invalid_argument("polynomial parse error at position " + std::to_string(pos) +
                                ": " + what);
  }

  std::string read_integer() {
    skip_space();
    std::string digits;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
      digits += text[pos++];
    if (digits.empty()) fail("expected digits");
    return digits;
  }

  Rational read_number() {
    const Integer num(read_integer());
    skip_space();
    if (pos < text.size() && text[pos] == '/') {
      ++pos;
      return rat(num, Integer(read_integer()));
    }
    return Rational(num);
  }

  // Longest declared name matching at the current position.
  Index read_variable() {
    skip_space();
    Index best = -1;
    size_t best_len = 0;
    for (Index i = 0; i < ring->var_count(); ++i) {
      const std::string& name = ring->names()[static_cast<size_t>(i)];
      if (name.size() > best_len && text.compare(pos, name.size(), name) == 0) {
        best = i;
        best_len = name.size();
      }
    }
    if (best < 0) fail("unknown symbol");
    pos += best_len;
    return best;
  }

  // coefficient and variable factors separated by optional '*'
  Polynomial read_term() {
    Rational coeff = 1;
    Eigen::VectorXi exps = Eigen::VectorXi::Zero(ring->var_count());
    bool any = false;
    for (;;) {
      skip_space();
      if (pos >= text.size()) break;
      const char c = text[pos];
      if (c == '*') {
        ++pos;
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c))) {
        coeff *= read_number();
        any = true;
        continue;
      }
      if (c == '+' || c == '-') break;
      const Index var = read_variable();
      int e = 1;
      skip_space();
      if (pos < text.size() && text[pos] == '^') {
        ++pos;
        try {
          e = std::stoi(read_integer());
        } catch (const std::out_of_range&) {
          fail("exponent out of range");
        }
      }
      exps(var) += e;
      any = true;
    }
    if (!any) fail("empty term");
    return poly_monomial(ring, Monomial{std::move(exps)}, coeff);
  }
};

}  // namespace

Polynomial parse_polynomial(const RingPtr& ring, const std::string& text) {
  Parser parser{ring, text};
  Polynomial result = poly_zero(ring);
  bool negative = false;
  if (!parser.at_end() && (parser.peek() == '+' || parser.peek() == '-')) {
    negative = parser.peek() == '-';
    ++parser.pos;
  }
  if (parser.at_end()) parser.fail("empty polynomial");
  for (;;) {
    Polynomial term = parser.read_term();
    result = add(result, negative ? neg(term) : term);
    if (parser.at_end()) break;
    const char c = parser.peek();
    if (c != '+' && c != '-') parser.fail("expected + or -");
    negative = c == '-';
    ++parser.pos;
  }
  return result;
}

}  // namespace coxalg
