// Command-line front end: ring/ideal spec files in, reports and diagrams out.
//
// Exit codes: 0 success, 1 I/O or parse error, 2 mathematical error.

#include <CLI11.hpp>

#include "coxalg/hasse.hpp"
#include "coxalg/lefschetz.hpp"
#include "coxalg/specfile.hpp"
#include "coxalg/toric.hpp"

#include <fstream>
#include <iostream>

namespace {

using namespace coxalg;

const IdealPresentation& pick_ideal(const RingSpecFile& file, const std::string& name) {
  const auto it = file.ideals.find(name);
  if (it == file.ideals.end()) throw spec_error("no ideal named \"" + name + "\" in the spec file");
  return it->second;
}

const Polynomial& pick_polynomial(const RingSpecFile& file, const std::string& name) {
  const auto it = file.polynomials.find(name);
  if (it == file.polynomials.end())
    throw spec_error("no polynomial named \"" + name + "\" in the spec file");
  return it->second;
}

std::string matrix_to_string(const QMat& m) {
  std::ostringstream os;
  os << "[" << m.rows() << "x" << m.cols() << "]";
  for (Index i = 0; i < m.rows(); ++i) {
    os << "\n  [";
    for (Index j = 0; j < m.cols(); ++j) os << (j ? " " : "") << m(i, j);
    os << "]";
  }
  return os.str();
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path);
  if (!out) throw spec_error("cannot write to " + path);
  out << content;
}

AlgebraSupport certify_or_fail(const IdealPresentation& ideal, const Rational& cap) {
  AlgebraSupport support = artinian_certify(ideal, cap);
  if (support.status == ArtinianStatus::not_artinian) {
    std::string msg = "the quotient is not Artinian";
    if (support.growth)
      msg += " (powers of " +
             ideal.ring->names()[static_cast<size_t>(support.growth->first)] + " survive)";
    throw math_error(msg);
  }
  if (support.status == ArtinianStatus::inconclusive)
    throw math_error("Artinian certification inconclusive within the phi cap; raise --cap");
  return support;
}

void cmd_hilbert(const RingSpecFile& file, const std::string& ideal_name, double cap_flag,
                 bool have_cap) {
  const IdealPresentation& ideal = pick_ideal(file, ideal_name);
  const RingPtr& ring = ideal.ring;
  if (have_cap) {
    const Rational cap(static_cast<long>(cap_flag));
    const auto hf = hilbert_function(ideal, realized_degrees_up_to(ring, cap));
    std::cout << "Hilbert function of S/" << ideal_name << " on phi <= " << cap << ":\n";
    for (const auto& [g, h] : hf)
      if (h > 0) std::cout << "  h" << degree_to_string(ring->group(), g) << " = " << h << "\n";
    return;
  }
  const AlgebraSupport support = certify_or_fail(ideal, Rational(64));
  std::cout << "Artinian: yes\n";
  std::cout << "Hilbert function of S/" << ideal_name << ":\n";
  for (const auto& g : support.support())
    std::cout << "  h" << degree_to_string(ring->group(), g) << " = " << support.h(g) << "\n";
  if (support.greatest)
    std::cout << "greatest element: " << degree_to_string(ring->group(), *support.greatest)
              << "\n";
}

void cmd_annihilator(const RingSpecFile& file, const std::string& poly_name, double cap_flag,
                     bool have_cap) {
  const Polynomial& f = pick_polynomial(file, poly_name);
  if (poly_is_zero(f) || !f.degree) throw math_error("annihilator needs a nonzero homogeneous polynomial");
  const IdealPresentation ann = annihilator_ideal(f);
  const RingPtr& q_ring = ann.ring;
  const PositivityCertificate& cert = q_ring->require_certificate();

  Rational window = 0;
  for (Index i = 0; i < q_ring->var_count(); ++i)
    window = std::max(window, phi_value(cert, q_ring->degree_of(i)));
  Rational bound = phi_value(cert, *f.degree) + window;
  if (have_cap) bound = Rational(static_cast<long>(cap_flag));

  std::cout << "Ann(" << poly_name << ") minimal generators by degree (phi <= " << bound
            << "):\n";
  IdealPresentation collected = ideal_from_generators(q_ring, {});
  for (const auto& g : realized_degrees_up_to(q_ring, bound)) {
    const DegreeSliceBasis ann_slice = ideal_slice(ann, g);
    if (ann_slice.ideal_rref.rank == 0) continue;
    DegreeSliceBasis have = ideal_slice(collected, g);
    RrefResult running = have.ideal_rref;
    std::vector<Polynomial> new_gens;
    for (Index r = 0; r < ann_slice.ideal_rref.rank; ++r) {
      QVec reduced = reduce_by_rref(running, ann_slice.ideal_rref.r.row(r).transpose());
      if (reduced.isZero(0)) continue;
      for (Index t = 0; t < reduced.size(); ++t) {
        if (reduced(t) != 0) {
          reduced /= reduced(t);
          break;
        }
      }
      new_gens.push_back(poly_from_coefficients(q_ring, ann_slice.ambient, reduced));
      QMat stacked(running.r.rows() + 1, reduced.size());
      if (running.r.rows() > 0) stacked.topRows(running.r.rows()) = running.r;
      stacked.row(running.r.rows()) = reduced.transpose();
      running = rref(stacked);
    }
    if (new_gens.empty()) continue;
    std::cout << "  degree " << degree_to_string(q_ring->group(), g) << ":\n";
    for (const auto& gen : new_gens) {
      std::cout << "    " << to_string(gen) << "\n";
      collected.generators.push_back(gen);
    }
  }
}

void cmd_hasse(const RingSpecFile& file, const std::string& ideal_name, const std::string& dot_path,
               double cap) {
  const IdealPresentation& ideal = pick_ideal(file, ideal_name);
  const AlgebraSupport support = certify_or_fail(ideal, Rational(static_cast<long>(cap)));
  const HasseHilbertDiagram diagram = build_diagram(support);
  if (!dot_path.empty()) write_output(dot_path, to_dot(diagram));
  std::cout << "nodes: " << diagram.nodes.size() << "\n";
  std::cout << "edges: " << diagram.edges.size() << "\n";
  if (diagram.greatest) {
    const GroupElement& top = diagram.nodes[static_cast<size_t>(*diagram.greatest)];
    std::cout << "greatest element: " << degree_to_string(file.ring->group(), top) << "\n";
    std::cout << "symmetric about it: " << (symmetry_check(diagram, top) ? "yes" : "no") << "\n";
  } else {
    std::cout << "greatest element: none\n";
  }
  if (dot_path.empty()) std::cout << to_adjacency_text(diagram);
}

void cmd_gorenstein(const RingSpecFile& file, const std::string& ideal_name, double cap) {
  const IdealPresentation& ideal = pick_ideal(file, ideal_name);
  const RingPtr& ring = ideal.ring;
  const AlgebraSupport support = certify_or_fail(ideal, Rational(static_cast<long>(cap)));
  const GorensteinVerdict verdict = is_cox_gorenstein(support);
  std::cout << "socle degrees:";
  for (const auto& [g, dim] : verdict.socle_dims)
    std::cout << " " << degree_to_string(ring->group(), g) << " (dim " << dim << ")";
  std::cout << "\n";
  if (verdict.gorenstein) {
    std::cout << "Cox-Gorenstein: yes, socle degree "
              << degree_to_string(ring->group(), *verdict.socle_degree) << "\n";
  } else {
    std::cout << "Cox-Gorenstein: no\n";
  }
  if (support.greatest && support.h(*support.greatest) == 1) {
    const GroupElement omega = *support.greatest;
    std::cout << "pairing ranks against omega = " << degree_to_string(ring->group(), omega)
              << ":\n";
    for (const auto& g : support.support()) {
      if (!leq(ring, g, omega)) continue;
      const QMat pairing = poincare_pairing(support, omega, g);
      std::cout << "  " << degree_to_string(ring->group(), g) << " x "
                << degree_to_string(ring->group(), group_sub(ring->group(), omega, g)) << ": rank "
                << rank(pairing) << " (" << pairing.rows() << "x" << pairing.cols() << ")\n";
    }
  }
}

void cmd_artinianize(RingSpecFile& file, const std::string& ideal_name, const std::string& omega_text,
                     const std::string& out_path) {
  const IdealPresentation& ideal = pick_ideal(file, ideal_name);
  const GroupElement omega = parse_degree(file.ring->group(), omega_text);
  const IdealPresentation derived = artinianize(ideal, omega);
  file.ideals.emplace(ideal_name + "_artinianized", derived);
  write_output(out_path, ring_spec_to_json(file));
}

void cmd_gorensteinize(RingSpecFile& file, const std::string& ideal_name,
                       const std::string& omega_text, const std::string& out_path, double cap) {
  const IdealPresentation& ideal = pick_ideal(file, ideal_name);
  const AlgebraSupport support = certify_or_fail(ideal, Rational(static_cast<long>(cap)));
  GroupElement omega;
  if (!omega_text.empty()) {
    omega = parse_degree(file.ring->group(), omega_text);
  } else if (support.greatest) {
    omega = *support.greatest;
  } else {
    throw math_error("the support has no greatest element; pass --omega");
  }
  const IdealPresentation derived = gorensteinize(support, omega);
  file.ideals.emplace(ideal_name + "_gorensteinized", derived);
  write_output(out_path, ring_spec_to_json(file));
}

void cmd_lefschetz(const RingSpecFile& file, const std::string& poly_name, const std::string& mode,
                   Index trials, std::uint64_t seed) {
  const Polynomial& f = pick_polynomial(file, poly_name);
  const AlgebraSupport support = certify_or_fail(annihilator_ideal(f), Rational(64));
  LefschetzReport report;
  if (mode == "twlp")
    report = twlp_check(support, trials, seed);
  else if (mode == "tslp")
    report = tslp_check(support, trials, seed);
  else
    throw spec_error("--mode must be twlp or tslp");
  std::cout << format_report(report, support.ideal.ring);
}

void cmd_hessian(const RingSpecFile& file, const std::string& poly_name, const std::string& g_text,
                 const std::string& h_text, const std::string& l_text, Index k,
                 const std::string& linear_text) {
  const Polynomial& f = pick_polynomial(file, poly_name);
  const AlgebraSupport support = certify_or_fail(annihilator_ideal(f), Rational(64));
  const RingPtr& q_ring = support.ideal.ring;
  ComparabilityEdge edge;
  edge.g = parse_degree(q_ring->group(), g_text);
  edge.h = parse_degree(q_ring->group(), h_text);
  edge.k = k;
  if (!l_text.empty()) {
    edge.l = parse_degree(q_ring->group(), l_text);
  } else {
    if (k != 1) throw spec_error("--l is required when k != 1");
    edge.l = group_sub(q_ring->group(), edge.h, edge.g);
  }
  const Polynomial linear = parse_polynomial(q_ring, linear_text);
  const HessianCheckResult result = hessian_criterion_verify(support, f, edge, linear);
  std::cout << "phi = (";
  for (Index i = 0; i < result.phi.size(); ++i) std::cout << (i ? "," : "") << result.phi(i);
  std::cout << ")\n";
  std::cout << "multiplication matrix [.L^" << result.k
            << "]: " << matrix_to_string(result.multiplication) << "\n";
  std::cout << "k! * Hess(a): " << matrix_to_string(result.hessian_side) << "\n";
  std::cout << "identity holds: " << (result.equal ? "yes" : "NO") << "\n";
  if (!result.equal) throw math_error("Hessian criterion identity failed");
}

void cmd_toric_reconstruct(const RingSpecFile& file, const std::string& alphas_text) {
  std::vector<Integer> alphas;
  if (!alphas_text.empty()) {
    std::istringstream is(alphas_text);
    std::string item;
    while (std::getline(is, item, ',')) alphas.push_back(Integer(item));
  }
  const ToricReconstruction recon = reconstruct(file.ring, alphas);
  std::cout << format_reconstruction(recon, file.ring);
}

void cmd_ci_check(const RingSpecFile& file, const std::string& forms_text, double cap) {
  std::vector<Polynomial> forms;
  std::istringstream is(forms_text);
  std::string name;
  while (std::getline(is, name, ',')) forms.push_back(pick_polynomial(file, name));
  const CiReport report = ci_socle_check(file.ring, forms, Rational(static_cast<long>(cap)));
  std::cout << format_ci_report(report, file.ring);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact toolkit for multigraded algebras and toric data"};
  app.require_subcommand(1);

  std::string spec_path, ideal_name, poly_name, dot_path, out_path;
  std::string omega_text, g_text, h_text, l_text, linear_text, mode = "twlp";
  std::string alphas_text, forms_text;
  double cap = 64;
  Index k = 1;
  Index trials = 64;
  std::uint64_t seed = 0;

  auto add_spec = [&](CLI::App* cmd) {
    cmd->add_option("spec", spec_path, "ring spec file (JSON)")->required();
  };

  CLI::App* hilbert = app.add_subcommand("hilbert", "Hilbert function of a quotient");
  add_spec(hilbert);
  hilbert->add_option("--ideal", ideal_name, "ideal name")->required();
  CLI::Option* hilbert_cap = hilbert->add_option("--cap", cap, "phi bound for the region");

  CLI::App* annihilator = app.add_subcommand("annihilator", "annihilator ideal of a polynomial");
  add_spec(annihilator);
  annihilator->add_option("--poly", poly_name, "polynomial name")->required();
  CLI::Option* ann_cap = annihilator->add_option("--cap", cap, "phi bound for the scan");

  CLI::App* hasse = app.add_subcommand("hasse", "Hasse-Hilbert diagram");
  add_spec(hasse);
  hasse->add_option("--ideal", ideal_name, "ideal name")->required();
  hasse->add_option("--dot", dot_path, "write GraphViz DOT here");
  hasse->add_option("--cap", cap, "phi cap for certification");

  CLI::App* gorenstein = app.add_subcommand("gorenstein", "Cox-Gorenstein verdict");
  add_spec(gorenstein);
  gorenstein->add_option("--ideal", ideal_name, "ideal name")->required();
  gorenstein->add_option("--cap", cap, "phi cap for certification");

  CLI::App* artinianize_cmd = app.add_subcommand("artinianize", "minimal Artinian quotient");
  add_spec(artinianize_cmd);
  artinianize_cmd->add_option("--ideal", ideal_name, "ideal name")->required();
  artinianize_cmd->add_option("--omega", omega_text, "greatest degree, e.g. \"(4,1)\"")->required();
  artinianize_cmd->add_option("-o,--out", out_path, "output spec file (default stdout)");

  CLI::App* gorensteinize_cmd =
      app.add_subcommand("gorensteinize", "minimal Cox-Gorenstein quotient");
  add_spec(gorensteinize_cmd);
  gorensteinize_cmd->add_option("--ideal", ideal_name, "ideal name")->required();
  gorensteinize_cmd->add_option("--omega", omega_text, "socle degree (default: greatest element)");
  gorensteinize_cmd->add_option("-o,--out", out_path, "output spec file (default stdout)");
  gorensteinize_cmd->add_option("--cap", cap, "phi cap for certification");

  CLI::App* lefschetz = app.add_subcommand("lefschetz", "TWLP/TSLP check for Q/Ann(f)");
  add_spec(lefschetz);
  lefschetz->add_option("--poly", poly_name, "polynomial name")->required();
  lefschetz->add_option("--mode", mode, "twlp or tslp");
  lefschetz->add_option("--trials", trials, "witness candidates per edge");
  lefschetz->add_option("--seed", seed, "random seed");

  CLI::App* hessian = app.add_subcommand("hessian", "Hessian criterion verification");
  add_spec(hessian);
  hessian->add_option("--poly", poly_name, "polynomial name")->required();
  hessian->add_option("--from", g_text, "source degree")->required();
  hessian->add_option("--to", h_text, "target degree")->required();
  hessian->add_option("--l", l_text, "linear degree (default to-from with k=1)");
  hessian->add_option("--k", k, "power of the linear element");
  hessian->add_option("--L", linear_text, "linear element, e.g. \"U+V\"")->required();

  CLI::App* toric = app.add_subcommand("toric-reconstruct", "grading -> fan -> irrelevant ideal");
  add_spec(toric);
  toric->add_option("--alphas", alphas_text, "comma-separated alphas (default all -1)");

  CLI::App* ci = app.add_subcommand("ci-check", "socle checks for d+1 forms");
  add_spec(ci);
  ci->add_option("--forms", forms_text, "comma-separated polynomial names")->required();
  ci->add_option("--cap", cap, "phi cap for certification");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    RingSpecFile file = load_ring_spec(spec_path);
    if (hilbert->parsed()) cmd_hilbert(file, ideal_name, cap, hilbert_cap->count() > 0);
    if (annihilator->parsed()) cmd_annihilator(file, poly_name, cap, ann_cap->count() > 0);
    if (hasse->parsed()) cmd_hasse(file, ideal_name, dot_path, cap);
    if (gorenstein->parsed()) cmd_gorenstein(file, ideal_name, cap);
    if (artinianize_cmd->parsed()) cmd_artinianize(file, ideal_name, omega_text, out_path);
    if (gorensteinize_cmd->parsed()) cmd_gorensteinize(file, ideal_name, omega_text, out_path, cap);
    if (lefschetz->parsed()) cmd_lefschetz(file, poly_name, mode, trials, seed);
    if (hessian->parsed()) cmd_hessian(file, poly_name, g_text, h_text, l_text, k, linear_text);
    if (toric->parsed()) cmd_toric_reconstruct(file, alphas_text);
    if (ci->parsed()) cmd_ci_check(file, forms_text, cap);
  } catch (const spec_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const math_error& e) {
    std::cerr << "math error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
