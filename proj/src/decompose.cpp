#include "ncg/decompose.hpp"

#include <cmath>

#include "ncg/linalg.hpp"

namespace ncg {

Tensor4 rank_one_term(cd alpha, const Matrix& a, const Matrix& b, Field field) {
  const int n = static_cast<int>(a.rows());
  Tensor4 out(n, field);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const cd left = alpha * std::conj(a(i, j));
      if (left == cd(0.0, 0.0)) continue;
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          cd v = left * b(k, l);
          if (field == Field::Real) v = cd(v.real(), 0.0);
          if (v != cd(0.0, 0.0)) out.add(i, j, k, l, v);
        }
    }
  return out;
}

Tensor4 Decomposition::reconstruct() const {
  Tensor4 acc = residual;
  for (const auto& term : terms) {
    const Tensor4 t =
        rank_one_term(term.alpha, term.A, term.B, residual.field());
    for (const auto& [idx, v] : t.nonzeros())
      acc.add(idx[0], idx[1], idx[2], idx[3], v);
  }
  return acc;
}

Decomposition decompose(const Tensor4& m, double eps,
                        const DecomposeConfig& config) {
  if (!(eps > 0.0 && eps <= 0.5))
    throw std::invalid_argument("decompose: eps in (0, 1/2]");
  if (m.nnz() == 0 || m.frobenius() == 0.0)
    throw std::invalid_argument("decompose: zero tensor");
  const int n = m.n();
  const bool real_mode = m.real_field();
  const RelaxationMode mode =
      real_mode ? RelaxationMode::UnitaryReal : RelaxationMode::UnitaryComplex;

  Decomposition out;
  out.residual = m;
  double energy = m.frobenius();
  int hard_cap = config.max_terms;

  for (int step = 0;; ++step) {
    GramSolution sol;
    try {
      sol = solve_relaxation(out.residual, mode, config.solve);
    } catch (const SolverError& e) {
      throw DecomposeError(std::string("decompose: relaxation failed: ") +
                               e.what(),
                           out);
    }

    SecantSampler sampler(Rng::substream(config.seed, 0x1000 + step));
    RoundedPair best;
    if (real_mode) {
      Rng rng = Rng::substream(config.seed, 0x2000 + step);
      bool have = false;
      for (int t = 0; t < std::max(1, config.trials); ++t) {
        RoundedPair r = round_real_direct(out.residual, sol.X, sol.Y, rng);
        auto [u, v] = to_orthogonal(out.residual, r.A, r.B);
        const double val = std::abs(evaluate_matrices(out.residual, u, v).real());
        if (!have || val > best.value) {
          best = {u, v, val, RoundedMode::Orthogonal};
          have = true;
        }
      }
    } else {
      best = round_complex_best_of(out.residual, sol.X, sol.Y,
                                   std::max(1, config.trials), sampler)
                 .best;
    }

    out.certificates.push_back({sol.upper_bound, best.value});
    if (step == 0) {
      out.lower_bound = best.value;
      if (out.lower_bound <= 0.0)
        throw std::invalid_argument("decompose: vanishing lower bound");
      if (hard_cap == 0) {
        const double denom = eps * (1.0 - eps) * out.lower_bound;
        hard_cap = static_cast<int>(std::ceil(
                       4.0 * n * n * m.frobenius() * m.frobenius() /
                       (denom * denom))) +
                   4;
      }
    }
    if (sol.upper_bound <= eps * out.lower_bound) {
      out.residual_upper_bound = sol.upper_bound;
      return out;
    }
    if (static_cast<int>(out.terms.size()) >= hard_cap)
      throw ResourceError("decompose: term cap exceeded");

    // Phase-align so the achieved value is real nonnegative.
    Matrix a = best.A, b = best.B;
    cd v = evaluate_matrices(out.residual, a, b);
    if (std::abs(v) >= 1e-14) {
      if (real_mode) {
        if (v.real() < 0.0) a = -a;
      } else {
        a *= std::conj(v) / std::abs(v);
      }
      v = evaluate_matrices(out.residual, a, b);
    }
    // ||A||_2^2 = ||B||_2^2 = n for unitary factors.
    const cd alpha = v / static_cast<double>(n * n);
    out.terms.push_back({alpha, a, b});
    out.residual = out.residual - rank_one_term(alpha, a, b, m.field());
    out.residual.compact(0.0);

    const double next_energy = out.residual.frobenius();
    if (next_energy >= energy)
      throw std::logic_error("decompose: energy did not decrease");
    energy = next_energy;
  }
}

namespace {

// Feasibility oracle: is there X with ||X|| <= 1 and Tr(A_t^* X) within
// `box` of a_t (per real/imaginary part) for every t? Cast as minimizing
// the largest violation over the PSD lift ((I, X), (X^*, I)).
class TraceBoxOracle {
 public:
  TraceBoxOracle(std::vector<Matrix> mats, double box)
      : mats_(std::move(mats)), box_(box), n_(static_cast<int>(mats_[0].rows())) {}

  bool feasible(const std::vector<cd>& targets) const {
    const int two_n = 2 * n_;
    ConicProgram p;
    p.add_block(2 * two_n);  // realified Hermitian lift of side 2n
    const int s_blk = p.add_block(1);
    std::vector<int> slack;
    for (std::size_t i = 0; i < 4 * mats_.size(); ++i)
      slack.push_back(p.add_block(1));
    p.objective.push_back({s_blk, 0, 0, -1.0});

    // Diagonal blocks pinned to the identity.
    for (int r = 0; r < two_n; ++r)
      for (int c = r; c < two_n; ++c) {
        const bool same_block = (r < n_) == (c < n_);
        if (!same_block) continue;
        {
          Constraint con;
          realify_entry(con.terms, 0, r, c, cd(1.0, 0.0), two_n);
          con.b = r == c ? 1.0 : 0.0;
          p.constraints.push_back(std::move(con));
        }
        if (r < c) {
          Constraint con;
          realify_entry(con.terms, 0, r, c, cd(0.0, 1.0), two_n);
          con.b = 0.0;
          p.constraints.push_back(std::move(con));
        }
      }

    // For each matrix and each of the four one-sided bounds:
    // sgn * (Re or Im)(Tr(A^* X)) - s + u = sgn * target.
    for (std::size_t t = 0; t < mats_.size(); ++t) {
      const Matrix& a = mats_[t];
      for (int im = 0; im < 2; ++im)
        for (int sgn = 0; sgn < 2; ++sgn) {
          const double sg = sgn == 0 ? 1.0 : -1.0;
          Constraint con;
          // W = ((0, c A/2), (conj(c) A^*/2, 0)) realified, c = 1 or i.
          for (int r = 0; r < n_; ++r)
            for (int c = 0; c < n_; ++c) {
              cd w = 0.5 * std::conj(a(r, c));
              if (im == 1) w *= cd(0.0, 1.0);
              realify_entry(con.terms, 0, r, n_ + c, sg * w, two_n);
            }
          con.terms.push_back({s_blk, 0, 0, -1.0});
          con.terms.push_back({slack[4 * t + 2 * im + sgn], 0, 0, 1.0});
          con.b = sg * (im == 0 ? targets[t].real() : targets[t].imag());
          p.constraints.push_back(std::move(con));
        }
    }

    IpmOptions opt;
    opt.tol = 1e-9;
    opt.max_iterations = 120;
    try {
      const IpmResult r = ipm_solve(p, opt);
      return -r.primal_objective <= box_ + 1e-6;
    } catch (const SolverError&) {
      return false;
    }
  }

 private:
  std::vector<Matrix> mats_;
  double box_;
  int n_;
};

}  // namespace

double ptas_dense(const Tensor4& m, double kappa, double eps,
                  const PtasConfig& config) {
  if (!(eps > 0.0 && eps < 1.0) || kappa <= 0.0)
    throw std::invalid_argument("ptas_dense: bad parameters");
  const int n = m.n();
  const double fro = m.frobenius();

  // Dense-regime certificate via rounding.
  PipelineConfig pc;
  pc.seed = config.seed;
  pc.trials = config.certificate_trials;
  pc.solve = config.solve;
  double lb;
  if (m.real_field()) {
    pc.route = RealRoute::Direct;
    lb = approximate_opt_real(m, pc).pair.value;
  } else {
    lb = approximate_opt_complex(m, pc).pair.value;
  }
  if (lb < kappa * n * fro)
    throw std::invalid_argument("ptas_dense: dense-regime certificate failed");

  DecomposeConfig dc;
  dc.seed = config.seed;
  dc.trials = config.certificate_trials;
  dc.solve = config.solve;
  const Decomposition dec = decompose(m, eps / 4.0, dc);
  const int terms = static_cast<int>(dec.terms.size());
  if (terms == 0) return 0.0;

  // Square lattice of step delta on the radius-n disc.
  const double delta = eps * kappa * n / terms;
  std::vector<cd> grid;
  const int half = static_cast<int>(std::floor(n / delta));
  for (int gr = -half; gr <= half; ++gr)
    for (int gi = -half; gi <= half; ++gi) {
      const cd a(gr * delta, gi * delta);
      if (std::abs(a) <= n + 1e-12) grid.push_back(a);
    }

  std::size_t tuples = 1;
  for (int t = 0; t < terms; ++t) {
    tuples *= grid.size();
    if (tuples > config.feasibility_budget)
      throw ResourceError("ptas_dense: enumeration budget exceeded");
  }

  std::vector<Matrix> amats, bmats;
  for (const auto& term : dec.terms) {
    amats.push_back(term.A);
    bmats.push_back(term.B);
  }
  const TraceBoxOracle a_oracle(amats, delta / 2.0);
  const TraceBoxOracle b_oracle(bmats, delta / 2.0);

  auto feasible_tuples = [&](const TraceBoxOracle& oracle) {
    std::vector<std::vector<cd>> out;
    std::vector<std::size_t> digits(terms, 0);
    std::vector<cd> tuple(terms);
    while (true) {
      for (int t = 0; t < terms; ++t) tuple[t] = grid[digits[t]];
      if (oracle.feasible(tuple)) out.push_back(tuple);
      int pos = 0;
      while (pos < terms && ++digits[pos] == grid.size()) digits[pos++] = 0;
      if (pos == terms) break;
    }
    return out;
  };
  const auto fa = feasible_tuples(a_oracle);
  const auto fb = feasible_tuples(b_oracle);

  if (fa.size() * fb.size() > config.pair_budget)
    throw ResourceError("ptas_dense: pair budget exceeded");
  double best = 0.0;
  for (const auto& at : fa)
    for (const auto& bt : fb) {
      cd acc(0.0, 0.0);
      for (int t = 0; t < terms; ++t)
        acc += dec.terms[t].alpha * at[t] * std::conj(bt[t]);
      best = std::max(best, std::abs(acc));
    }
  return best;
}

}  // namespace ncg
