// Command-line front end: weighted pseudoinverses, Cramer-style solves,
// weighted SVD, and row/column determinants over JSON matrix files.
#include <cstdio>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "qwmp/cramer.hpp"
#include "qwmp/io.hpp"
#include "qwmp/verify.hpp"
#include "qwmp/wmp.hpp"

namespace {

using namespace qwmp;

struct CommonOpts {
  std::string matrix;
  std::string weight_m;
  std::string weight_n;
  std::string weight_n_inv;
  std::string backend = "float";
  std::string out = "text";
  std::string output_path;
  double tol = kDefaultTol;
  bool serial = false;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_weights = true) {
  cmd->add_option("--matrix", o.matrix, "matrix JSON file, or - for stdin")
      ->required();
  if (with_weights) {
    cmd->add_option("--weight-m", o.weight_m, "row-space weight M (default identity)");
    auto* n = cmd->add_option("--weight-n", o.weight_n,
                              "column-space weight N (default identity)");
    auto* ninv = cmd->add_option("--weight-n-inv", o.weight_n_inv,
                                 "N^{-1} directly, instead of --weight-n");
    n->excludes(ninv);
    ninv->excludes(n);
  }
  cmd->add_option("--backend", o.backend, "scalar backend")
      ->check(CLI::IsMember({"rational", "float"}));
  cmd->add_option("--tol", o.tol, "numeric tolerance (float backend)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--out", o.out, "output format")
      ->check(CLI::IsMember({"json", "text"}));
  cmd->add_option("--output", o.output_path, "write result to this file");
  cmd->add_flag("--serial", o.serial, "single-threaded determinant sums");
}

template <class R>
WeightPair<R> load_weights(const CommonOpts& o, std::size_t m, std::size_t n) {
  QMatrix<R> wm = o.weight_m.empty() ? QMatrix<R>::identity(m)
                                     : io::load_matrix<R>(o.weight_m);
  if (!o.weight_n.empty()) {
    return WeightPair<R>::with_n(std::move(wm), io::load_matrix<R>(o.weight_n));
  }
  if (!o.weight_n_inv.empty()) {
    return WeightPair<R>::with_n_inv(std::move(wm),
                                     io::load_matrix<R>(o.weight_n_inv));
  }
  return WeightPair<R>::with_n(std::move(wm), QMatrix<R>::identity(n));
}

void emit(const CommonOpts& o, const nlohmann::json& j, const std::string& text) {
  const std::string payload = o.out == "json" ? j.dump(2) + "\n" : text;
  if (o.output_path.empty()) {
    std::cout << payload;
  } else {
    io::write_file(o.output_path, payload);
  }
}

template <class R>
nlohmann::json residuals_json(const PenroseResiduals<R>& r) {
  return {{"ax1", r.rho1()}, {"ax2", r.rho2()}, {"ax3", r.rho3m()}, {"ax4", r.rho4n()}};
}

const std::map<std::string, WmpMethod> kMethods = {
    {"auto", WmpMethod::auto_},
    {"hermitian-col", WmpMethod::hermitian_col},
    {"hermitian-row", WmpMethod::hermitian_row},
    {"general-col", WmpMethod::general_col},
    {"general-row", WmpMethod::general_row},
    {"wsvd", WmpMethod::wsvd},
    {"limit", WmpMethod::limit},
    {"reduction", WmpMethod::reduction},
    {"all", WmpMethod::all},
};

template <class R>
int run_inverse(const CommonOpts& o, const std::string& method, bool verify) {
  const QMatrix<R> a = io::load_matrix<R>(o.matrix);
  const WeightPair<R> w = load_weights<R>(o, a.rows(), a.cols());
  WmpOptions opts;
  opts.method = kMethods.at(method);
  opts.tol = o.tol;
  opts.exec = o.serial ? Exec::serial : Exec::parallel;
  const WmpReport<R> rep = wmp(a, w, opts);

  nlohmann::json j;
  j["backend"] = ScalarTraits<R>::name();
  j["rank"] = rep.rank;
  j["method"] = method_name(rep.results.front().method);
  j["inverse"] = io::matrix_to_json(rep.inverse);
  std::string text = io::matrix_to_text(rep.inverse);
  text += "rank: " + std::to_string(rep.rank) + "   method: " +
          method_name(rep.results.front().method) + "\n";
  if (verify || rep.results.size() > 1) {
    j["max_pairwise"] = rep.max_pairwise;
    nlohmann::json ms = nlohmann::json::array();
    for (const auto& res : rep.results) {
      ms.push_back({{"method", method_name(res.method)},
                    {"residuals", residuals_json(res.residuals)}});
      char line[160];
      std::snprintf(line, sizeof line,
                    "%-13s  residuals  %.3e %.3e %.3e %.3e\n",
                    method_name(res.method), res.residuals.rho1(),
                    res.residuals.rho2(), res.residuals.rho3m(),
                    res.residuals.rho4n());
      text += line;
    }
    j["methods"] = std::move(ms);
    char line[80];
    std::snprintf(line, sizeof line, "max pairwise distance: %.3e\n",
                  rep.max_pairwise);
    text += line;
  }
  emit(o, j, text);
  return 0;
}

template <class R>
int run_solve(const CommonOpts& o, const std::string& rhs_path,
              const std::string& side) {
  const QMatrix<R> a = io::load_matrix<R>(o.matrix);
  const WeightPair<R> w = load_weights<R>(o, a.rows(), a.cols());
  const QMatrix<R> b = io::load_matrix<R>(rhs_path);
  const Exec exec = o.serial ? Exec::serial : Exec::parallel;
  const QMatrix<R> x = side == "right" ? solve_right(a, w, b, o.tol, exec)
                                       : solve_left(a, w, b, o.tol, exec);
  const double residual = side == "right" ? max_entry_dist(a * x, b)
                                          : max_entry_dist(x * a, b);
  nlohmann::json j;
  j["backend"] = ScalarTraits<R>::name();
  j["side"] = side;
  j["solution"] = io::matrix_to_json(x);
  j["residual"] = residual;
  char line[64];
  std::snprintf(line, sizeof line, "system residual: %.3e\n", residual);
  emit(o, j, io::matrix_to_text(x) + line);
  return 0;
}

int run_wsvd(const CommonOpts& o) {
  const QMatrix<double> a = io::load_matrix<double>(o.matrix);
  const WeightPair<double> w = load_weights<double>(o, a.rows(), a.cols());
  validate_weights(w, o.tol);
  const SVDResult s = wsvd(a, w, o.tol);
  QMatrix<double> d(a.rows(), a.cols());
  for (std::size_t t = 0; t < s.r; ++t) d.set(t, t, Quaternion<double>(s.sigma[t]));
  const double u_orth = max_entry_dist(conj_transpose(s.u) * w.m() * s.u,
                                       QMatrix<double>::identity(a.rows()));
  const double v_orth = max_entry_dist(conj_transpose(s.v) * w.n_inv() * s.v,
                                       QMatrix<double>::identity(a.cols()));
  const double recon = max_entry_dist(s.u * d * conj_transpose(s.v), a);
  nlohmann::json j;
  j["rank"] = s.r;
  j["sigma"] = s.sigma;
  j["u"] = io::matrix_to_json(s.u);
  j["v"] = io::matrix_to_json(s.v);
  j["residuals"] = {{"u_orth", u_orth}, {"v_orth", v_orth}, {"reconstruct", recon}};
  std::string text = "sigma:";
  for (double v : s.sigma) {
    char buf[32];
    std::snprintf(buf, sizeof buf, " %.12g", v);
    text += buf;
  }
  char line[128];
  std::snprintf(line, sizeof line,
                "\nrank: %zu\nresiduals: u_orth %.3e  v_orth %.3e  reconstruct %.3e\n",
                s.r, u_orth, v_orth, recon);
  text += line;
  text += "U:\n" + io::matrix_to_text(s.u) + "V:\n" + io::matrix_to_text(s.v);
  emit(o, j, text);
  return 0;
}

template <class R>
int run_det(const CommonOpts& o, const std::string& kind, std::size_t index) {
  const QMatrix<R> a = io::load_matrix<R>(o.matrix);
  if (index < 1 || index > a.rows()) {
    throw IndexOutOfRange("--index must be within [1, n]");
  }
  const Exec exec = o.serial ? Exec::serial : Exec::parallel;
  nlohmann::json j;
  j["backend"] = ScalarTraits<R>::name();
  j["kind"] = kind;
  std::string text;
  if (kind == "hermitian") {
    const R d = det_hermitian(a, o.tol, exec);
    j["det"] = io::detail::component_to_json(d);
    if constexpr (ScalarTraits<R>::is_exact) {
      text = d.str() + "\n";
    } else {
      char buf[48];
      std::snprintf(buf, sizeof buf, "%.17g\n", d);
      text = buf;
    }
  } else {
    const Quaternion<R> d = kind == "rdet" ? rdet(a, index - 1, exec)
                                           : cdet(a, index - 1, exec);
    j["index"] = index;
    QMatrix<R> one(1, 1);
    one.set(0, 0, d);
    j["det"] = io::matrix_to_json(one)["entries"][0][0];
    text = to_string(d) + "\n";
  }
  emit(o, j, text);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"weighted pseudoinverse toolkit for quaternion matrices"};
  app.require_subcommand(1);

  CommonOpts inv_o;
  std::string inv_method = "auto";
  bool inv_verify = false;
  auto* inv = app.add_subcommand("inverse", "weighted Moore-Penrose inverse");
  add_common(inv, inv_o);
  inv->add_option("--method", inv_method, "route to use")
      ->check(CLI::IsMember([] {
        std::vector<std::string> names;
        for (const auto& [k, v] : kMethods) names.push_back(k);
        return names;
      }()));
  inv->add_flag("--verify", inv_verify, "print per-method residuals");

  CommonOpts sol_o;
  std::string rhs, side = "right";
  auto* sol = app.add_subcommand("solve", "Cramer-style weighted least squares");
  add_common(sol, sol_o);
  sol->add_option("--rhs", rhs, "right-hand side JSON file")->required();
  sol->add_option("--side", side, "right: A x = b, left: x A = b")
      ->check(CLI::IsMember({"right", "left"}));

  CommonOpts svd_o;
  auto* svd = app.add_subcommand("wsvd", "weighted singular value decomposition");
  add_common(svd, svd_o);

  CommonOpts det_o;
  std::string det_kind = "hermitian";
  std::size_t det_index = 1;
  auto* det = app.add_subcommand("det", "row/column/Hermitian determinants");
  add_common(det, det_o, /*with_weights=*/false);
  det->add_option("--kind", det_kind, "determinant kind")
      ->check(CLI::IsMember({"rdet", "cdet", "hermitian"}));
  det->add_option("--index", det_index, "1-based row/column anchor");

  CLI11_PARSE(app, argc, argv);

  try {
    if (inv->parsed()) {
      return inv_o.backend == "rational"
                 ? run_inverse<Rational>(inv_o, inv_method, inv_verify)
                 : run_inverse<double>(inv_o, inv_method, inv_verify);
    }
    if (sol->parsed()) {
      return sol_o.backend == "rational" ? run_solve<Rational>(sol_o, rhs, side)
                                         : run_solve<double>(sol_o, rhs, side);
    }
    if (svd->parsed()) {
      if (svd_o.backend == "rational") {
        throw BackendUnsupported("wsvd needs the float backend");
      }
      return run_wsvd(svd_o);
    }
    if (det->parsed()) {
      return det_o.backend == "rational" ? run_det<Rational>(det_o, det_kind, det_index)
                                         : run_det<double>(det_o, det_kind, det_index);
    }
  } catch (const qwmp::AxiomViolation& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    return 2;
  } catch (const qwmp::NonConvergence& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    return 2;
  } catch (const qwmp::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
