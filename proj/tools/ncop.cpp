// Command-line front end. Every command prints a JSON run report on stdout:
//   {"command", "status": "ok"|"fail", "metrics": {name: number}, "artifacts": [paths], ...}
// Exit codes: 0 ok, 1 a mathematical check failed, 2 malformed input.

#include <cstdint>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ncop/ncop.hpp"

namespace {

using ncop::Complex;
using ncop::Matrix;
using ncop::OperatorTuple;
using ncop::Region;
using ncop::Word;
using ncop::io::Json;

constexpr int kExitFail = 1;
constexpr int kExitBadInput = 2;

struct Report {
  std::string command;
  bool ok = true;
  std::map<std::string, double> metrics;
  std::vector<std::string> artifacts;
  Json extra = Json::object();

  Json to_json() const {
    Json j = extra;
    j["command"] = command;
    j["status"] = ok ? "ok" : "fail";
    j["metrics"] = metrics;
    j["artifacts"] = artifacts;
    return j;
  }
};

/// A mathematical check failed; the report is printed and the exit code is 1.
struct CheckFailed {
  std::string message;
};

struct Options {
  std::uint64_t seed = 1;
  double tol = 1e-9;

  std::string moments, coeffs, basis, out, out_moments, out_basis, point, point2;
  int level = 0;
  int levels = 0;
  int truncate = 0;
  std::string method = "cholesky";
  std::string word;
  bool roundtrip = false;

  std::string op;
  int n = 0;
  int n_generators = 2;
  int dim = 2;
  int unit_dim = 1;
  double margin = 0.25;
  std::string region = "ball";
  bool inverse = false;
};

Json certificate_json(const ncop::PositivityResult& r) {
  Json c = Json::object();
  for (Eigen::Index i = 0; i < r.certificate.size(); ++i)
    if (std::abs(r.certificate(i)) > 1e-12)
      c[ncop::word_at(static_cast<std::size_t>(i), r.n_generators).str()] = ncop::io::to_json(r.certificate(i));
  return {{"word", r.certificate_word.str()}, {"coefficients", c}};
}

void add_matrix_metrics(Report& rep, const std::string& name, const Matrix& m) {
  if (m.rows() == 1 && m.cols() == 1) {
    rep.metrics[name + ".re"] = m(0, 0).real();
    rep.metrics[name + ".im"] = m(0, 0).imag();
  }
}

void write(Report& rep, const std::string& path, const Json& j) {
  if (path.empty()) return;
  ncop::io::write_file(path, j);
  rep.artifacts.push_back(path);
}

ncop::OrthoBasis basis_by_determinants(const ncop::MomentFunctional& f, int level, double tol) {
  const int n = f.n_generators();
  const auto m = static_cast<Eigen::Index>(ncop::words_up_to_count(static_cast<std::size_t>(level), n));
  Matrix a = Matrix::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const ncop::Vector v = ncop::determinant_formula(f, ncop::word_at(static_cast<std::size_t>(i), n), tol);
    a.row(i).head(v.size()) = v.transpose();
    a(i, i) = Complex(a(i, i).real(), 0.0);
  }
  return {n, level, std::move(a)};
}

void cmd_orthopoly(const Options& o, Report& rep) {
  const auto f = ncop::io::moments_from_json(ncop::io::read_file(o.moments));
  const auto g = ncop::gram(f, o.level);
  const auto pos = ncop::strict_positivity(g, o.tol);
  rep.metrics["min_eigenvalue"] = pos.min_eigenvalue;
  if (!pos.ok) {
    rep.extra["certificate"] = certificate_json(pos);
    throw CheckFailed{"functional is not strictly positive at level " + std::to_string(o.level)};
  }
  ncop::OrthoBasis b;
  if (o.method == "cholesky") b = ncop::orthogonalize(g, o.tol);
  else if (o.method == "determinant") b = basis_by_determinants(f, o.level, o.tol);
  else throw ncop::InvalidInput("unknown method '" + o.method + "'");
  rep.metrics["orthonormality_residual"] = ncop::orthonormality_residual(b, g);
  rep.extra["basis"] = ncop::io::basis_to_json(b);
  write(rep, o.out, ncop::io::basis_to_json(b));
}

void cmd_recurrence(const Options& o, Report& rep) {
  const auto f = ncop::io::moments_from_json(ncop::io::read_file(o.moments));
  const auto basis = ncop::orthogonalize(f, o.levels, o.tol);
  const auto rc = ncop::extract(f, basis, o.levels);
  rep.metrics["max_residual"] = ncop::residual_check(f, basis, rc);
  for (int n = 0; n < rc.levels; ++n)
    for (int k = 1; k <= rc.n_generators; ++k) {
      const std::string key = std::to_string(n) + "," + std::to_string(k);
      add_matrix_metrics(rep, "A[" + key + "]", rc.a(n, k));
      add_matrix_metrics(rep, "B[" + key + "]", rc.b(n, k));
    }
  if (o.roundtrip) {
    const auto back = ncop::favard(rc, o.levels);
    double err = 0.0;
    for (const auto& [w, s] : back.functional.moments()) err = std::max(err, std::abs(s - f.moment(w)));
    rep.metrics["roundtrip_error"] = err;
    if (err > 1e-8) throw CheckFailed{"favard(extract) does not reproduce the moments"};
  }
  rep.extra["coefficients"] = ncop::io::coeffs_to_json(rc);
  write(rep, o.out, ncop::io::coeffs_to_json(rc));
}

void cmd_favard(const Options& o, Report& rep) {
  const auto rc = ncop::io::coeffs_from_json(ncop::io::read_file(o.coeffs));
  const int levels = o.levels;
  const auto fr = ncop::favard(rc, levels);
  rep.metrics["hankel_discrepancy"] = fr.hankel_discrepancy;
  rep.metrics["orthonormality_residual"] =
      ncop::orthonormality_residual(fr.basis, ncop::gram(fr.functional, levels));
  for (const auto& [w, s] : fr.functional.moments())
    if (fr.functional.n_generators() == 1) rep.metrics["s[" + w.str() + "]"] = s.real();
  if (o.roundtrip && levels > 0) {
    const auto again = ncop::extract(fr.functional, fr.basis, levels);
    double err = 0.0;
    for (int n = 0; n < levels; ++n)
      for (int k = 1; k <= rc.n_generators; ++k)
        err = std::max({err, ncop::max_abs(again.a(n, k) - rc.a(n, k)), ncop::max_abs(again.b(n, k) - rc.b(n, k))});
    rep.metrics["roundtrip_error"] = err;
    if (err > 1e-8) throw CheckFailed{"extract(favard) does not reproduce the coefficients"};
  }
  write(rep, o.out_moments, ncop::io::moments_to_json(fr.functional));
  write(rep, o.out_basis, ncop::io::basis_to_json(fr.basis));
  if (fr.hankel_discrepancy > 1e-8)
    throw CheckFailed{"coefficients do not define a consistent set of moments"};
}

void cmd_jacobi(const Options& o, Report& rep) {
  const auto rc = ncop::io::coeffs_from_json(ncop::io::read_file(o.coeffs));
  const auto js = ncop::build(rc, o.truncate);
  rep.metrics["size"] = static_cast<double>(js.front().matrix.rows());
  Json mats = Json::array();
  for (const auto& j : js) mats.push_back(ncop::io::to_json(j.matrix));
  write(rep, o.out, Json{{"n_generators", rc.n_generators}, {"truncation", o.truncate}, {"J", mats}});
  if (!o.word.empty()) {
    const auto m = ncop::moment(js, Word::parse(o.word));
    rep.metrics["moment.re"] = m.value.real();
    rep.metrics["moment.im"] = m.value.imag();
    rep.metrics["truncation_warning"] = m.truncation_warning ? 1.0 : 0.0;
    rep.extra["word"] = o.word;
    if (m.truncation_warning) rep.extra["warning"] = "word longer than the truncation level";
  }
}

void cmd_hamburger(const Options& o, Report& rep) {
  const auto f = ncop::io::moments_from_json(ncop::io::read_file(o.moments));
  const auto r = ncop::hamburger_check(f, o.level, o.tol);
  rep.metrics["min_eigenvalue"] = r.min_eigenvalue;
  rep.metrics["threshold"] = r.threshold;
  rep.metrics["strictly_positive"] = r.strictly_positive ? 1.0 : 0.0;
  rep.extra["answer"] = r.positive ? "yes" : "no";
  if (r.witness) {
    rep.extra["witness"] = ncop::io::coeffs_to_json(*r.witness);
    write(rep, o.out, ncop::io::coeffs_to_json(*r.witness));
  }
  if (!r.positive) {
    rep.extra["certificate"] = certificate_json(*r.certificate);
    throw CheckFailed{"moments do not come from a positive functional"};
  }
}

OperatorTuple load_or_random(const std::string& path, ncop::Rng& rng, int n, int d, double margin, Region region) {
  if (!path.empty()) return ncop::io::point_from_json(ncop::io::read_file(path));
  return region == Region::siegel ? ncop::random_siegel_point(rng, n, d, margin)
                                  : ncop::random_ball_point(rng, n, d, margin);
}

void check_residual(Report& rep, double residual, double tol) {
  rep.metrics["residual"] = residual;
  if (!(residual <= tol)) throw CheckFailed{"residual exceeds tolerance"};
}

void cmd_kernel(const Options& o, Report& rep) {
  ncop::Rng rng(o.seed);
  rep.extra["op"] = o.op;
  const Region region = ncop::parse_region(o.region);
  if (o.op == "separate") {
    const Word sigma = Word::parse(o.word.empty() ? std::string("1") : o.word);
    const auto tuples = ncop::separating_tuples(sigma, o.n_generators, o.unit_dim);
    const auto r = ncop::verify_separating_tuples(sigma, o.n_generators, o.unit_dim);
    rep.metrics["tuples"] = static_cast<double>(tuples.size());
    rep.metrics["target_error"] = r.target_error;
    rep.metrics["other_words_max"] = r.other_words_max;
    rep.metrics["min_lambda"] = r.min_lambda;
    rep.metrics["stacked_rank"] = static_cast<double>(r.stacked_rank);
    rep.metrics["full_rank"] = static_cast<double>(r.full_rank);
    Json list = Json::array();
    for (const auto& t : tuples) list.push_back(ncop::io::point_to_json(t));
    write(rep, o.out, list);
    if (!r.ok()) throw CheckFailed{"separating tuples fail their defining identities"};
    return;
  }
  if (o.op == "cayley") {
    const Region from = o.inverse ? Region::siegel : Region::ball;
    const auto p = load_or_random(o.point, rng, o.n_generators, o.dim, o.margin, from);
    const auto q = o.inverse ? ncop::cayley_inverse(p, 0.0) : ncop::cayley(p, 0.0);
    const Region to = o.inverse ? Region::ball : Region::siegel;
    const auto mem = ncop::membership(q, to, 0.0);
    rep.metrics["lambda_min"] = mem.lambda_min;
    const auto back = o.inverse ? ncop::cayley(q, 0.0) : ncop::cayley_inverse(q, 0.0);
    double err = 0.0;
    for (int k = 1; k <= p.n(); ++k) err = std::max(err, ncop::max_abs(back[k] - p[k]));
    rep.metrics["roundtrip_error"] = err;
    rep.extra["point"] = ncop::io::point_to_json(q);
    write(rep, o.out, ncop::io::point_to_json(q));
    return;
  }
  if (o.op == "szego-ball" || o.op == "szego-siegel") {
    const Region r = o.op == "szego-ball" ? Region::ball : Region::siegel;
    const auto p = load_or_random(o.point, rng, o.n_generators, o.dim, o.margin, r);
    const auto q = load_or_random(o.point2, rng, p.n(), static_cast<int>(p.dim()), o.margin, r);
    const auto k = r == Region::ball ? ncop::szego_ball(p, q, o.tol) : ncop::szego_siegel(p, q, o.tol);
    rep.metrics["truncation_length"] = k.truncation_length;
    rep.metrics["tail_bound"] = k.tail_bound;
    rep.extra["value"] = ncop::io::to_json(k.value);
    write(rep, o.out, ncop::io::to_json(k.value));
    return;
  }
  if (o.op == "reproduce") {
    const auto p = load_or_random(o.point, rng, o.n_generators, o.dim, o.margin, region);
    const auto q = load_or_random(o.point2, rng, p.n(), static_cast<int>(p.dim()), o.margin, p.region());
    const Matrix t = ncop::random_matrix(rng, p.dim(), p.dim());
    const auto r = p.region() == Region::siegel ? ncop::reproduction_check_siegel(p, q, t, o.tol)
                                                : ncop::reproduction_check(p, q, t, o.tol);
    rep.metrics["tail_bound"] = r.tail_bound;
    rep.metrics["truncation_length"] = r.truncation_length;
    check_residual(rep, r.residual, o.tol);
    return;
  }
  if (o.op == "cd-inner" || o.op == "cd-full") {
    const auto basis = ncop::io::basis_from_json(ncop::io::read_file(o.basis));
    const auto rc = ncop::io::coeffs_from_json(ncop::io::read_file(o.coeffs));
    const auto p = load_or_random(o.point, rng, basis.n_generators(), o.dim, o.margin, Region::siegel);
    const auto q = load_or_random(o.point2, rng, basis.n_generators(), static_cast<int>(p.dim()), o.margin, Region::siegel);
    rep.metrics["n"] = o.n;
    if (o.op == "cd-inner") {
      const auto r = ncop::cd_inner_identity(basis, rc, o.n, p, q);
      rep.metrics["scale"] = r.scale;
      check_residual(rep, r.residual, o.tol);
    } else {
      const auto r = ncop::cd_full_check(basis, rc, o.n, p, q, o.tol);
      rep.metrics["tail_bound"] = r.tail_bound;
      rep.metrics["truncation_length"] = r.truncation_length;
      check_residual(rep, r.residual, std::max(o.tol, r.tail_bound));
    }
    return;
  }
  throw ncop::InvalidInput("unknown kernel op '" + o.op + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Orthogonal polynomials in non-commuting variables"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--seed", o.seed, "seed for random test points")->capture_default_str();
  app.add_option("--tol", o.tol, "numerical tolerance")->capture_default_str();

  auto* orth = app.add_subcommand("orthopoly", "orthonormal polynomials from moments");
  orth->add_option("--moments", o.moments, "moment file")->required();
  orth->add_option("--level", o.level, "highest word length")->required();
  orth->add_option("--method", o.method, "cholesky|determinant")->check(CLI::IsMember({"cholesky", "determinant"}));
  orth->add_option("--out", o.out, "basis file to write");

  auto* rec = app.add_subcommand("recurrence", "three-term recurrence coefficients");
  rec->add_option("--moments", o.moments, "moment file")->required();
  rec->add_option("--levels", o.levels, "number of levels")->required();
  rec->add_option("--out", o.out, "coefficients file to write");
  rec->add_flag("--roundtrip", o.roundtrip, "also rebuild the moments and report the error");

  auto* fav = app.add_subcommand("favard", "polynomials and moments from recurrence coefficients");
  fav->add_option("--coeffs", o.coeffs, "coefficients file")->required();
  fav->add_option("--levels", o.levels, "number of levels")->required();
  fav->add_option("--out-moments", o.out_moments, "moment file to write");
  fav->add_option("--out-basis", o.out_basis, "basis file to write");
  fav->add_flag("--roundtrip", o.roundtrip, "also re-extract the coefficients and report the error");

  auto* jac = app.add_subcommand("jacobi", "truncated block Jacobi matrices");
  jac->add_option("--coeffs", o.coeffs, "coefficients file")->required();
  jac->add_option("--truncate", o.truncate, "truncation level")->required();
  jac->add_option("--word", o.word, "word whose moment <J_w e, e> is printed");
  jac->add_option("--out", o.out, "file for the dense matrices");

  auto* ham = app.add_subcommand("hamburger", "decide the moment problem");
  ham->add_option("--moments", o.moments, "moment file")->required();
  ham->add_option("--level", o.level, "Gram level")->required();
  ham->add_option("--out", o.out, "coefficients file for the witness");

  auto* ker = app.add_subcommand("kernel", "Szego and Christoffel-Darboux kernels at matrix points");
  ker->add_option("--op", o.op, "operation")
      ->required()
      ->check(CLI::IsMember({"szego-ball", "szego-siegel", "cayley", "reproduce", "cd-inner", "cd-full", "separate"}));
  ker->add_option("--point", o.point, "point file (random if omitted)");
  ker->add_option("--point2", o.point2, "second point file (random if omitted)");
  ker->add_option("--basis", o.basis, "basis file (cd-inner, cd-full)");
  ker->add_option("--coeffs", o.coeffs, "coefficients file (cd-inner, cd-full)");
  ker->add_option("--n", o.n, "kernel order (cd-inner, cd-full)");
  ker->add_option("--word", o.word, "word to separate (separate)");
  ker->add_option("--N", o.n_generators, "number of variables for random points and separate")->capture_default_str();
  ker->add_option("--d", o.dim, "matrix size for random points")->capture_default_str();
  ker->add_option("--unit-dim", o.unit_dim, "block size of the separating tuples")->capture_default_str();
  ker->add_option("--margin", o.margin, "distance of random points from the boundary")->capture_default_str();
  ker->add_option("--region", o.region, "ball|siegel for random reproduce points")->check(CLI::IsMember({"ball", "siegel"}));
  ker->add_flag("--inverse", o.inverse, "cayley: map a Siegel point back to the ball");
  ker->add_option("--out", o.out, "output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitBadInput;
  }

  Report rep;
  rep.command = app.get_subcommands().front()->get_name();
  int code = 0;
  try {
    if (rep.command == "orthopoly") cmd_orthopoly(o, rep);
    else if (rep.command == "recurrence") cmd_recurrence(o, rep);
    else if (rep.command == "favard") cmd_favard(o, rep);
    else if (rep.command == "jacobi") cmd_jacobi(o, rep);
    else if (rep.command == "hamburger") cmd_hamburger(o, rep);
    else cmd_kernel(o, rep);
  } catch (const CheckFailed& e) {
    rep.ok = false;
    rep.extra["error"] = e.message;
    code = kExitFail;
  } catch (const ncop::PositivityError& e) {
    rep.ok = false;
    rep.extra["error"] = e.what();
    rep.metrics["min_eigenvalue"] = e.result().min_eigenvalue;
    rep.extra["certificate"] = certificate_json(e.result());
    code = kExitFail;
  } catch (const ncop::RegionError& e) {
    rep.ok = false;
    rep.extra["error"] = e.what();
    rep.metrics["lambda_min"] = e.lambda_min();
    code = kExitFail;
  } catch (const ncop::ConsistencyError& e) {
    rep.ok = false;
    rep.extra["error"] = e.what();
    code = kExitFail;
  } catch (const ncop::ConvergenceError& e) {
    rep.ok = false;
    rep.extra["error"] = e.what();
    code = kExitFail;
  } catch (const std::exception& e) {
    rep.ok = false;
    rep.extra["error"] = e.what();
    code = kExitBadInput;
  }
  std::cout << rep.to_json().dump(2) << '\n';
  return code;
}
