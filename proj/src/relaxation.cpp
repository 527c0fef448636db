#include "ncg/relaxation.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "ncg/linalg.hpp"

namespace ncg {

// The complex Hermitian Gram matrix of side s is realified as the symmetric
// matrix ((Re G, -Im G), (Im G, Re G)) of side 2s; every Hermitian
// coefficient matrix A is emitted (divided by two) so that the realified
// inner product reproduces Tr(A G) exactly.
void realify_entry(std::vector<CooTerm>& coo, int blk, int r, int c, cd a,
                   int s) {
  const double ra = a.real();
  double ia = a.imag();
  if (r == c) {
    coo.push_back({blk, r, r, ra / 2});
    coo.push_back({blk, r + s, r + s, ra / 2});
    return;
  }
  if (r > c) {
    std::swap(r, c);
    ia = -ia;
  }
  coo.push_back({blk, r, c, ra / 2});
  coo.push_back({blk, r + s, c + s, ra / 2});
  if (ia != 0.0) {
    coo.push_back({blk, r, c + s, -ia / 2});
    coo.push_back({blk, c, r + s, ia / 2});
  }
}

namespace {

struct GramLayout {
  int n;
  bool complex_field;
  int side;  // complex (or real) Gram side 2n^2
  int x_index(int i, int j) const { return i * n + j; }
  int y_index(int k, int l) const { return n * n + k * n + l; }
};

// One scalar Gram-product entry sum_k G[u_k, v_k]; `row` picks XX* vs X*X.
std::vector<std::pair<int, int>> gram_entry(const GramLayout& lo, bool x_side,
                                            bool row, int i, int j) {
  std::vector<std::pair<int, int>> out;
  out.reserve(lo.n);
  for (int k = 0; k < lo.n; ++k) {
    int u, v;
    if (row) {
      u = x_side ? lo.x_index(i, k) : lo.y_index(i, k);
      v = x_side ? lo.x_index(j, k) : lo.y_index(j, k);
    } else {
      u = x_side ? lo.x_index(k, i) : lo.y_index(k, i);
      v = x_side ? lo.x_index(k, j) : lo.y_index(k, j);
    }
    out.emplace_back(u, v);
  }
  return out;
}

void emit_complex_sum(std::vector<CooTerm>& coo, int blk,
                      const std::vector<std::pair<int, int>>& ents, cd part,
                      int s) {
  for (auto [u, v] : ents) {
    cd a = part;
    if (u > v) a = std::conj(part);
    if (u == v) a = cd(part.real(), 0.0);
    if (a != cd(0.0, 0.0))
      realify_entry(coo, blk, std::min(u, v), std::max(u, v), a, s);
  }
}

struct BuiltProgram {
  ConicProgram prog;
  GramLayout layout;
  double trace_bound = 0.0;
};

BuiltProgram build_program(const Tensor4& m, RelaxationMode mode) {
  const int n = m.n();
  const bool cx = mode != RelaxationMode::UnitaryReal;
  BuiltProgram bp;
  bp.layout = {n, cx, 2 * n * n};
  ConicProgram& p = bp.prog;
  const int s = bp.layout.side;
  p.add_block(cx ? 2 * s : s);

  // Objective: Tr(C G) = Re sum M_ijkl G[x(ij), y(kl)].
  for (const auto& [idx, v] : m.nonzeros()) {
    const int u = bp.layout.x_index(idx[0], idx[1]);
    const int w = bp.layout.y_index(idx[2], idx[3]);
    if (cx) {
      realify_entry(p.objective, 0, u, w, std::conj(v) / 2.0, s);
    } else {
      p.objective.push_back({0, std::min(u, w), std::max(u, w), v.real() / 2});
    }
  }

  if (mode == RelaxationMode::UnitaryReal) {
    for (bool x_side : {true, false})
      for (bool row : {true, false})
        for (int i = 0; i < n; ++i)
          for (int j = i; j < n; ++j) {
            Constraint con;
            for (auto [u, v] : gram_entry(bp.layout, x_side, row, i, j))
              con.terms.push_back(
                  {0, std::min(u, v), std::max(u, v), u == v ? 1.0 : 0.5});
            con.b = (i == j) ? 1.0 : 0.0;
            p.constraints.push_back(std::move(con));
          }
    bp.trace_bound = 2.0 * n;
    return bp;
  }

  if (mode == RelaxationMode::UnitaryComplex) {
    for (bool x_side : {true, false})
      for (bool row : {true, false})
        for (int i = 0; i < n; ++i)
          for (int j = i; j < n; ++j) {
            const auto ents = gram_entry(bp.layout, x_side, row, i, j);
            {
              Constraint con;
              emit_complex_sum(con.terms, 0, ents, cd(1.0, 0.0), s);
              con.b = (i == j) ? 1.0 : 0.0;
              p.constraints.push_back(std::move(con));
            }
            if (i < j) {
              Constraint con;
              emit_complex_sum(con.terms, 0, ents, cd(0.0, 1.0), s);
              con.b = 0.0;
              p.constraints.push_back(std::move(con));
            }
          }
    bp.trace_bound = 2.0 * (2.0 * n);  // realified trace of G, Tr(G) = 2n
    return bp;
  }

  // nc mode: XX* + S1 = s_x I, X*X + S2 = (2 - s_x) I, likewise for Y with
  // its own scalar. Slack blocks are realified Hermitian n x n.
  const int sl1 = p.add_block(2 * n), sl2 = p.add_block(2 * n);
  const int sl3 = p.add_block(2 * n), sl4 = p.add_block(2 * n);
  const int sx = p.add_block(1), sy = p.add_block(1);
  struct Fam {
    bool x_side, row;
    int slack;
    int scalar;
    double scalar_sign;
    double rhs;
  };
  const std::vector<Fam> fams = {{true, true, sl1, sx, -1.0, 0.0},
                                 {true, false, sl2, sx, 1.0, 2.0},
                                 {false, true, sl3, sy, -1.0, 0.0},
                                 {false, false, sl4, sy, 1.0, 2.0}};
  for (const auto& f : fams)
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j)
        for (int part = 0; part < (i < j ? 2 : 1); ++part) {
          const cd ph = part == 0 ? cd(1.0, 0.0) : cd(0.0, 1.0);
          Constraint con;
          emit_complex_sum(con.terms, 0,
                           gram_entry(bp.layout, f.x_side, f.row, i, j), ph, s);
          realify_entry(con.terms, f.slack, i, j, ph, n);
          con.b = 0.0;
          if (i == j) {
            con.terms.push_back({f.scalar, 0, 0, f.scalar_sign});
            con.b = f.rhs;
          }
          p.constraints.push_back(std::move(con));
        }
  // Tr(G) <= 4n, four slacks each of trace <= 2n, scalars <= 2 (realified
  // doubles the Hermitian traces).
  bp.trace_bound = 2.0 * (4.0 * n + 4.0 * 2.0 * n) + 4.0;
  return bp;
}

// Rotate each column by a unit phase making its largest entry real positive.
// Keeps eigenvector factorizations of real-valued inputs exactly real.
void canonicalize_columns(Matrix& cols) {
  for (int c = 0; c < cols.cols(); ++c) {
    int arg = 0;
    cols.col(c).cwiseAbs().maxCoeff(&arg);
    const cd top = cols(arg, c);
    if (std::abs(top) > 0.0) cols.col(c) *= std::conj(top) / std::abs(top);
  }
}

Matrix extract_complex_gram(const Eigen::MatrixXd& g_real, int s) {
  Matrix g(s, s);
  // J-symmetrized readout of the realified blocks.
  for (int r = 0; r < s; ++r)
    for (int c = 0; c < s; ++c)
      g(r, c) = cd(0.5 * (g_real(r, c) + g_real(r + s, c + s)),
                   0.5 * (g_real(r + s, c) - g_real(r, c + s)));
  return 0.5 * (g + g.adjoint()).eval();
}

std::pair<VecMat, VecMat> factor_gram(const Matrix& g, int n) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(g);
  const auto& lam = es.eigenvalues();
  const double lmax = std::max(lam.maxCoeff(), 0.0);
  std::vector<int> keep;
  for (int i = 0; i < lam.size(); ++i)
    if (lam(i) > 1e-10 * lmax && lam(i) > 0.0) keep.push_back(i);
  const int d = std::max<int>(1, static_cast<int>(keep.size()));
  Matrix vecs = es.eigenvectors();
  canonicalize_columns(vecs);
  VecMat x(n, d), y(n, d);
  for (std::size_t c = 0; c < keep.size(); ++c) {
    const double w = std::sqrt(lam(keep[c]));
    for (int r = 0; r < n * n; ++r) {
      x.data()(r, static_cast<int>(c)) = w * vecs(r, keep[c]);
      y.data()(r, static_cast<int>(c)) = w * vecs(n * n + r, keep[c]);
    }
  }
  return {x, y};
}

}  // namespace

std::vector<double> gram_residuals(const VecMat& x, const VecMat& y,
                                   RelaxationMode mode) {
  const auto [xxs, xsx] = gram_products(x);
  const auto [yys, ysy] = gram_products(y);
  const int n = x.n();
  const Matrix id = Matrix::Identity(n, n);
  if (mode == RelaxationMode::NcNorm)
    return {std::max(0.0, op_norm(xxs) + op_norm(xsx) - 2.0),
            std::max(0.0, op_norm(yys) + op_norm(ysy) - 2.0)};
  return {op_norm(xxs - id), op_norm(xsx - id), op_norm(yys - id),
          op_norm(ysy - id)};
}

std::pair<VecMat, VecMat> compress_pair(const VecMat& x, const VecMat& y) {
  const int n = x.n(), d = x.d();
  Matrix all(2 * n * n, d);
  all.topRows(n * n) = x.data();
  all.bottomRows(n * n) = y.data();
  // Orthonormal basis of the row span via eigenvectors of the d x d Gram.
  Matrix gram = all.adjoint() * all;
  gram = 0.5 * (gram + gram.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<Matrix> es(gram);
  const auto& lam = es.eigenvalues();
  const double lmax = std::max(lam.maxCoeff(), 0.0);
  std::vector<int> keep;
  for (int i = 0; i < lam.size(); ++i)
    if (lam(i) > 1e-13 * std::max(lmax, 1e-30)) keep.push_back(i);
  const int d2 = std::max<int>(1, static_cast<int>(keep.size()));
  Matrix basis = Matrix::Zero(d, d2);
  for (int c = 0; c < static_cast<int>(keep.size()); ++c)
    basis.col(c) = es.eigenvectors().col(keep[c]);
  canonicalize_columns(basis);
  const Matrix proj = all * basis;  // coordinates in the new basis
  VecMat xo(n, d2), yo(n, d2);
  xo.data() = proj.topRows(n * n);
  yo.data() = proj.bottomRows(n * n);
  return {xo, yo};
}

std::pair<VecMat, VecMat> embed_to_exact_unitary(const VecMat& x,
                                                 const VecMat& y,
                                                 double feas_tol) {
  if (x.n() != y.n()) throw std::invalid_argument("embed: size mismatch");
  const int n = x.n();
  auto prepare = [&](const VecMat& w) {
    const auto [row, col] = gram_products(w);
    const double norm = std::max(op_norm(row), op_norm(col));
    if (norm > 1.0 + feas_tol)
      throw std::invalid_argument("embed: operator norm exceeds 1");
    VecMat scaled = w;
    if (norm > 1.0) scaled.data() /= std::sqrt(norm);
    return scaled;
  };
  const VecMat xs = prepare(x), ys = prepare(y);
  const int d = std::max(xs.d(), ys.d());
  const int dd = d + 2 * n * n;

  // Padding blocks sqrt(lam_i mu_j / sigma) u_i v_j* from the spectral
  // decompositions of I - WW* and I - W*W; X uses coordinates [d, d+n^2),
  // Y the complementary block, so cross inner products vanish.
  auto pad = [&](const VecMat& w, int offset) {
    VecMat out(n, dd);
    out.data().leftCols(w.d()) = w.data();
    const auto [row, col] = gram_products(w);
    const Matrix a = Matrix::Identity(n, n) - row;
    const Matrix bm = Matrix::Identity(n, n) - col;
    Eigen::SelfAdjointEigenSolver<Matrix> ea(a), eb(bm);
    const Eigen::VectorXd la = ea.eigenvalues().cwiseMax(0.0);
    const Eigen::VectorXd lb = eb.eigenvalues().cwiseMax(0.0);
    Matrix ua = ea.eigenvectors(), ub = eb.eigenvectors();
    canonicalize_columns(ua);
    canonicalize_columns(ub);
    const double sigma = la.sum();
    if (sigma > 1e-14) {
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          const double wgt = std::sqrt(la(i) * lb(j) / sigma);
          if (wgt == 0.0) continue;
          const Matrix blockm = wgt * ua.col(i) * ub.col(j).adjoint();
          const int coord = offset + i * n + j;
          for (int r = 0; r < n; ++r)
            for (int cc = 0; cc < n; ++cc)
              out.data()(r * n + cc, coord) = blockm(r, cc);
        }
    }
    return out;
  };
  return {pad(xs, d), pad(ys, d + n * n)};
}

GramSolution solve_relaxation(const Tensor4& m, RelaxationMode mode,
                              const SolveOptions& opt) {
  if (mode == RelaxationMode::UnitaryReal && !m.real_field())
    throw std::invalid_argument("solve_relaxation: real mode needs a real tensor");
  const int n = m.n();
  BuiltProgram bp = build_program(m, mode);
  IpmOptions iopt;
  iopt.tol = std::min(1e-9, opt.gap_tol * 1e-3);
  iopt.max_iterations = opt.max_iterations;
  iopt.verbose = opt.verbose;
  IpmResult r = ipm_solve(bp.prog, iopt);

  GramSolution sol;
  sol.mode = mode;
  sol.upper_bound = r.certified_upper_bound(bp.prog, bp.trace_bound);

  Matrix g;
  if (mode == RelaxationMode::UnitaryReal) {
    g = r.X[0].cast<cd>();
    g = 0.5 * (g + g.adjoint()).eval();
  } else {
    g = extract_complex_gram(r.X[0], bp.layout.side);
  }
  auto [x, y] = factor_gram(g, n);

  if (mode == RelaxationMode::NcNorm) {
    const auto rescale = [&](VecMat& w) {
      const auto [row, col] = gram_products(w);
      const double tot = op_norm(row) + op_norm(col);
      if (tot > 2.0) w.data() /= std::sqrt(tot / 2.0);
    };
    rescale(x);
    rescale(y);
  } else {
    const auto rescale = [&](VecMat& w) {
      const auto [row, col] = gram_products(w);
      const double norm = std::max({1.0, op_norm(row), op_norm(col)});
      if (norm > 1.0) w.data() /= std::sqrt(norm);
    };
    rescale(x);
    rescale(y);
    std::tie(x, y) = embed_to_exact_unitary(x, y, opt.feas_tol);
    std::tie(x, y) = compress_pair(x, y);
  }

  if (mode == RelaxationMode::UnitaryReal) {
    // The real relaxation lives over R^d; drop fp-level imaginary residue.
    x.data() = x.data().real().cast<cd>();
    y.data() = y.data().real().cast<cd>();
  }

  cd val = evaluate(m, x, y);
  if (std::abs(val) > 0.0) {
    // Phase freedom: rotate X so the achieved value is real nonnegative.
    const cd phase = std::conj(val) / std::abs(val);
    if (mode == RelaxationMode::UnitaryReal) {
      if (val.real() < 0.0) x.data() *= -1.0;
    } else {
      x.data() *= phase;
    }
    val = evaluate(m, x, y);
  }
  sol.X = x;
  sol.Y = y;
  sol.value = std::abs(val);
  sol.residuals = gram_residuals(x, y, mode);
  return sol;
}

}  // namespace ncg
