#include "ncg/sdp_core.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>

namespace ncg {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

using Blocks = std::vector<MatrixXd>;

// Expanded (non-symmetric-compressed) entry list of one constraint matrix,
// grouped by block for the sparse Schur formation.
struct Expanded {
  // per block: list of (r, c, v) covering both mirror positions
  std::vector<std::vector<std::array<double, 3>>> by_block;
};

Blocks zeros_like(const std::vector<int>& sizes) {
  Blocks out;
  out.reserve(sizes.size());
  for (int s : sizes) out.emplace_back(MatrixXd::Zero(s, s));
  return out;
}

void add_coo(Blocks& mats, const std::vector<CooTerm>& coo) {
  for (const auto& t : coo) {
    mats[t.blk](t.r, t.c) += t.v;
    if (t.r != t.c) mats[t.blk](t.c, t.r) += t.v;
  }
}

double inner(const Blocks& a, const Blocks& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k)
    s += (a[k].array() * b[k].array()).sum();
  return s;
}

double coo_inner(const Expanded& a, const Blocks& x) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.by_block.size(); ++k)
    for (const auto& e : a.by_block[k])
      s += e[2] * x[k](static_cast<int>(e[0]), static_cast<int>(e[1]));
  return s;
}

Expanded expand(const std::vector<CooTerm>& coo, std::size_t nblocks) {
  Expanded out;
  out.by_block.resize(nblocks);
  for (const auto& t : coo) {
    out.by_block[t.blk].push_back(
        {static_cast<double>(t.r), static_cast<double>(t.c), t.v});
    if (t.r != t.c)
      out.by_block[t.blk].push_back(
          {static_cast<double>(t.c), static_cast<double>(t.r), t.v});
  }
  return out;
}

double fro(const Blocks& a) {
  double s = 0.0;
  for (const auto& m : a) s += m.squaredNorm();
  return std::sqrt(s);
}

// Largest alpha with X + alpha*D >= 0, via L^{-1} D L^{-T}.
double max_step(const Blocks& x, const Blocks& d) {
  double alpha = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < x.size(); ++k) {
    Eigen::LLT<MatrixXd> llt(x[k]);
    MatrixXd m;
    if (llt.info() == Eigen::Success) {
      const MatrixXd l = llt.matrixL();
      m = l.triangularView<Eigen::Lower>().solve(d[k]);
      m = l.triangularView<Eigen::Lower>()
              .solve(m.transpose())
              .transpose();
    } else {
      // Near-singular iterate; fall back to a spectral transform.
      Eigen::SelfAdjointEigenSolver<MatrixXd> es(x[k]);
      const VectorXd lam = es.eigenvalues().cwiseMax(1e-300);
      const MatrixXd s =
          es.eigenvectors() * lam.cwiseSqrt().cwiseInverse().asDiagonal();
      m = s.transpose() * d[k] * s;
    }
    m = 0.5 * (m + m.transpose()).eval();
    const double lmin = Eigen::SelfAdjointEigenSolver<MatrixXd>(m)
                            .eigenvalues()
                            .minCoeff();
    if (lmin < -1e-14) alpha = std::min(alpha, -1.0 / lmin);
  }
  return alpha;
}

struct Scaling {
  Blocks w;      // NT scaling point, W Z W = X
  Blocks z_inv;  // Z^{-1}
};

Scaling nt_scaling(const Blocks& x, const Blocks& z) {
  Scaling sc;
  sc.w.reserve(x.size());
  sc.z_inv.reserve(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    Eigen::SelfAdjointEigenSolver<MatrixXd> ex(x[k]);
    const VectorXd lx = ex.eigenvalues().cwiseMax(1e-300);
    const MatrixXd xh = ex.eigenvectors() * lx.cwiseSqrt().asDiagonal() *
                        ex.eigenvectors().transpose();
    MatrixXd t = xh * z[k] * xh;
    t = 0.5 * (t + t.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<MatrixXd> et(t);
    const VectorXd lt = et.eigenvalues().cwiseMax(1e-300);
    const MatrixXd tmh = et.eigenvectors() *
                         lt.cwiseSqrt().cwiseInverse().asDiagonal() *
                         et.eigenvectors().transpose();
    sc.w.emplace_back(xh * tmh * xh);

    Eigen::SelfAdjointEigenSolver<MatrixXd> ez(z[k]);
    const VectorXd lz = ez.eigenvalues().cwiseMax(1e-300);
    sc.z_inv.emplace_back(ez.eigenvectors() * lz.cwiseInverse().asDiagonal() *
                          ez.eigenvectors().transpose());
  }
  return sc;
}

}  // namespace

double IpmResult::certified_upper_bound(const ConicProgram& p,
                                        double trace_bound) const {
  Blocks zc = zeros_like(p.block_sizes);
  for (std::size_t i = 0; i < p.constraints.size(); ++i) {
    for (const auto& t : p.constraints[i].terms) {
      zc[t.blk](t.r, t.c) += y(static_cast<int>(i)) * t.v;
      if (t.r != t.c) zc[t.blk](t.c, t.r) += y(static_cast<int>(i)) * t.v;
    }
  }
  for (const auto& t : p.objective) {
    zc[t.blk](t.r, t.c) -= t.v;
    if (t.r != t.c) zc[t.blk](t.c, t.r) -= t.v;
  }
  double lmin = 0.0;
  for (const auto& m : zc)
    lmin = std::min(
        lmin,
        Eigen::SelfAdjointEigenSolver<MatrixXd>(m).eigenvalues().minCoeff());
  double by = 0.0;
  for (std::size_t i = 0; i < p.constraints.size(); ++i)
    by += y(static_cast<int>(i)) * p.constraints[i].b;
  return by + std::max(0.0, -lmin) * trace_bound;
}

IpmResult ipm_solve(const ConicProgram& p, const IpmOptions& opt) {
  const std::size_t nb = p.block_sizes.size();
  const int m = static_cast<int>(p.constraints.size());
  int total_dim = 0;
  for (int s : p.block_sizes) total_dim += s;
  const double nd = static_cast<double>(total_dim);

  Blocks c = zeros_like(p.block_sizes);
  add_coo(c, p.objective);
  std::vector<Expanded> acoo;
  acoo.reserve(m);
  VectorXd b(m);
  for (int i = 0; i < m; ++i) {
    acoo.push_back(expand(p.constraints[i].terms, nb));
    b(i) = p.constraints[i].b;
  }

  const double norm_c = std::max(1.0, fro(c));
  double norm_a = 1.0;
  for (const auto& a : acoo) {
    double s = 0.0;
    for (const auto& blk : a.by_block)
      for (const auto& e : blk) s += e[2] * e[2];
    norm_a = std::max(norm_a, std::sqrt(s));
  }

  const double xi = std::max({10.0, std::sqrt(nd),
                              nd * (1.0 + b.cwiseAbs().maxCoeff()) /
                                  (1.0 + norm_a)});
  const double eta = std::max({10.0, std::sqrt(nd), norm_c, norm_a});
  Blocks x = zeros_like(p.block_sizes), z = zeros_like(p.block_sizes);
  for (std::size_t k = 0; k < nb; ++k) {
    x[k].diagonal().setConstant(xi);
    z[k].diagonal().setConstant(eta);
  }
  VectorXd y = VectorXd::Zero(m);

  IpmResult res;
  IpmResult best;
  double best_score = std::numeric_limits<double>::infinity();
  int since_improvement = 0;

  for (int it = 0; it < opt.max_iterations; ++it) {
    VectorXd rp(m);
    for (int i = 0; i < m; ++i) rp(i) = b(i) - coo_inner(acoo[i], x);
    Blocks rd = c;  // Rd = C - sum y_i A_i + Z
    for (std::size_t k = 0; k < nb; ++k) rd[k] += z[k];
    for (int i = 0; i < m; ++i)
      for (std::size_t k = 0; k < nb; ++k)
        for (const auto& e : acoo[i].by_block[k])
          rd[k](static_cast<int>(e[0]), static_cast<int>(e[1])) -= y(i) * e[2];

    const double mu = inner(x, z) / nd;
    const double pobj = inner(c, x);
    const double dobj = b.dot(y);
    res.iterations = it;
    res.primal_objective = pobj;
    res.dual_objective = dobj;
    res.relative_gap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj) + std::abs(dobj));
    res.primal_infeasibility = rp.norm() / (1.0 + b.norm());
    res.dual_infeasibility = fro(rd) / (1.0 + norm_c);
    if (opt.verbose)
      std::fprintf(stderr, "ipm %3d mu=%.3e gap=%.3e pin=%.3e din=%.3e\n", it,
                   mu, res.relative_gap, res.primal_infeasibility,
                   res.dual_infeasibility);
    const double score = std::max({res.relative_gap, res.primal_infeasibility,
                                   res.dual_infeasibility});
    if (!std::isfinite(score) || !std::isfinite(mu)) break;
    if (score < best_score) {
      best_score = score;
      best = res;
      best.X = x;
      best.Z = z;
      best.y = y;
      since_improvement = 0;
    } else if (++since_improvement > 15) {
      break;  // numerically stagnant endgame
    }
    if (score < opt.tol) {
      res.converged = true;
      res.X = x;
      res.Z = z;
      res.y = y;
      return res;
    }

    const Scaling sc = nt_scaling(x, z);

    // Schur matrix S_ij = <A_i, W A_j W>, formed entry-wise from the sparse
    // constraint lists.
    MatrixXd s_mat(m, m);
    for (int i = 0; i < m; ++i) {
      for (int j = i; j < m; ++j) {
        double acc = 0.0;
        for (std::size_t k = 0; k < nb; ++k) {
          const auto& ai = acoo[i].by_block[k];
          const auto& aj = acoo[j].by_block[k];
          if (ai.empty() || aj.empty()) continue;
          const MatrixXd& w = sc.w[k];
          for (const auto& ei : ai) {
            const int pi = static_cast<int>(ei[0]), qi = static_cast<int>(ei[1]);
            double row = 0.0;
            for (const auto& ej : aj) {
              const int rj = static_cast<int>(ej[0]), tj = static_cast<int>(ej[1]);
              row += ej[2] * w(qi, rj) * w(tj, pi);
            }
            acc += ei[2] * row;
          }
        }
        s_mat(i, j) = s_mat(j, i) = acc;
      }
    }
    s_mat.diagonal().array() += 1e-14 * (1.0 + s_mat.trace() / std::max(1, m));
    Eigen::LDLT<MatrixXd> schur(s_mat);

    Blocks wrdw(nb);
    for (std::size_t k = 0; k < nb; ++k) wrdw[k] = sc.w[k] * rd[k] * sc.w[k];
    VectorXd a_zinv(m), a_wrdw(m);
    for (int i = 0; i < m; ++i) {
      a_zinv(i) = coo_inner(acoo[i], sc.z_inv);
      a_wrdw(i) = coo_inner(acoo[i], wrdw);
    }

    // dX = sigma*mu*Z^{-1} - X - W dZ W,  dZ = sum dy_i A_i - Rd.
    auto newton = [&](double sigmu, Blocks& dx, VectorXd& dy, Blocks& dz) {
      const VectorXd rhs = sigmu * a_zinv + a_wrdw - b;
      dy = schur.solve(rhs);
      dz = rd;
      for (std::size_t k = 0; k < nb; ++k) dz[k] = -rd[k];
      for (int i = 0; i < m; ++i)
        for (std::size_t k = 0; k < nb; ++k)
          for (const auto& e : acoo[i].by_block[k])
            dz[k](static_cast<int>(e[0]), static_cast<int>(e[1])) +=
                dy(i) * e[2];
      dx = zeros_like(p.block_sizes);
      for (std::size_t k = 0; k < nb; ++k) {
        dx[k] = sigmu * sc.z_inv[k] - x[k] - sc.w[k] * dz[k] * sc.w[k];
        dx[k] = 0.5 * (dx[k] + dx[k].transpose()).eval();
      }
    };

    Blocks dxa, dza;
    VectorXd dya;
    newton(0.0, dxa, dya, dza);
    const double ap_a = std::min(1.0, 0.98 * max_step(x, dxa));
    const double ad_a = std::min(1.0, 0.98 * max_step(z, dza));
    double mu_aff = 0.0;
    for (std::size_t k = 0; k < nb; ++k)
      mu_aff += ((x[k] + ap_a * dxa[k]).array() * (z[k] + ad_a * dza[k]).array())
                    .sum();
    mu_aff /= nd;
    const double ratio = std::clamp(mu_aff / mu, 0.0, 1.0);
    const double sigma = std::clamp(ratio * ratio * ratio, 1e-10, 1.0);

    Blocks dx, dz;
    VectorXd dy;
    newton(sigma * mu, dx, dy, dz);
    const double ap = std::min(1.0, 0.98 * max_step(x, dx));
    const double ad = std::min(1.0, 0.98 * max_step(z, dz));
    for (std::size_t k = 0; k < nb; ++k) {
      x[k] += ap * dx[k];
      z[k] += ad * dz[k];
    }
    y += ad * dy;
  }

  if (best_score < opt.tol) {
    best.converged = true;
    return best;
  }
  // The best iterate is attached so the caller keeps usable bounds.
  throw SolverError("interior-point solver did not reach tolerance", best);
}

}  // namespace ncg
