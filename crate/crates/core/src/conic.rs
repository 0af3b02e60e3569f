//! First-order SDP engine: theta-function relaxations over the PSD and
//! doubly-nonnegative cones, K-isomorphism decisions via the isomorphism
//! product, and level-1 Lasserre feasibility.
//!
//! The solver is a consensus ADMM (equivalently, Douglas–Rachford on a
//! product space): one block carries the affine constraints plus the
//! linear objective, one the PSD cone, and for DNN a third carries the
//! nonnegative orthant. Deterministic by construction: fixed iteration
//! order, no data-dependent parallelism.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::graphs::{isomorphism_product, Graph};
use crate::spectral::eigendecompose;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ConeKind {
    Psd,
    Dnn,
}

impl std::fmt::Display for ConeKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ConeKind::Psd => "psd",
            ConeKind::Dnn => "dnn",
        })
    }
}

impl std::str::FromStr for ConeKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "psd" => Ok(ConeKind::Psd),
            "dnn" => Ok(ConeKind::Dnn),
            other => Err(format!("unknown cone '{}'", other)),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SolverOptions {
    pub tol: f64,
    pub max_iters: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            tol: 1e-6,
            max_iters: 100_000,
        }
    }
}

/// Primal solution with diagnostics recomputed from the returned matrix,
/// never trusted from internal solver state.
#[derive(Debug, Clone)]
pub struct SdpSolution {
    pub m: DMatrix<f64>,
    /// objective sum of entries, tr(MJ)
    pub value: f64,
    pub primal_residual: f64,
    pub dual_residual: f64,
    pub min_eigenvalue: f64,
    pub min_entry: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// Nearest (Frobenius) positive semidefinite matrix: negative eigenvalues
/// clamped to zero.
pub fn project_psd(a: &DMatrix<f64>) -> DMatrix<f64> {
    let n = a.nrows();
    let sym = (a + a.transpose()) * 0.5;
    let (vals, vecs) = eigendecompose(&sym);
    let pos = vals.iter().take_while(|&&l| l > 0.0).count();
    if pos == 0 {
        return DMatrix::zeros(n, n);
    }
    // P = W Wᵀ with W the positive eigenvectors scaled by sqrt(λ)
    let mut w = vecs.columns(0, pos).clone_owned();
    for k in 0..pos {
        let s = vals[k].sqrt();
        w.column_mut(k).scale_mut(s);
    }
    &w * w.transpose()
}

/// Orthogonal projection onto {X : X_{uv} = 0 for uv in `edges`, tr X = 1}.
/// The two constraint blocks touch disjoint coordinates (edges are
/// off-diagonal), so zeroing then shifting the diagonal is exact.
fn project_theta_affine(x: &mut DMatrix<f64>, edges: &[(usize, usize)]) {
    for &(u, v) in edges {
        x[(u, v)] = 0.0;
        x[(v, u)] = 0.0;
    }
    let n = x.nrows();
    let shift = (x.trace() - 1.0) / n as f64;
    for i in 0..n {
        x[(i, i)] -= shift;
    }
}

/// Euclidean projection of `d` onto the probability simplex
/// {d : d_i >= 0, sum d_i = 1}.
fn project_simplex(d: &mut [f64]) {
    let n = d.len();
    let mut sorted = d.to_vec();
    sorted.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let mut acc = 0.0;
    let mut tau = 0.0;
    for (k, &v) in sorted.iter().enumerate() {
        acc += v;
        let t = (acc - 1.0) / (k + 1) as f64;
        if v - t > 0.0 {
            tau = t;
        } else {
            break;
        }
    }
    let _ = n;
    for v in d.iter_mut() {
        *v = (*v - tau).max(0.0);
    }
}

/// Orthogonal projection onto the theta feasible slab for the DNN cone
/// minus its PSD part: zero on edges, entrywise nonnegative, diagonal on
/// the probability simplex. The coordinate groups are disjoint, so the
/// composite is the exact projection.
fn project_theta_affine_nonneg(x: &mut DMatrix<f64>, edges: &[(usize, usize)], is_edge: &[bool]) {
    let n = x.nrows();
    for &(u, v) in edges {
        x[(u, v)] = 0.0;
        x[(v, u)] = 0.0;
    }
    for u in 0..n {
        for v in 0..n {
            if u != v && !is_edge[u * n + v] && x[(u, v)] < 0.0 {
                x[(u, v)] = 0.0;
            }
        }
    }
    let mut diag: Vec<f64> = (0..n).map(|i| x[(i, i)]).collect();
    project_simplex(&mut diag);
    for i in 0..n {
        x[(i, i)] = diag[i];
    }
}

/// Maximizes the sum of entries of M subject to tr(M) = 1, M zero on the
/// edge pattern, and M in the chosen cone.
///
/// Two-block ADMM: the first block carries the affine slab (plus, for DNN,
/// the nonnegativity constraints — all exactly projectable coordinatewise)
/// together with the linear objective; the second block is the PSD cone.
pub fn solve_theta(g: &Graph, cone: ConeKind, opts: &SolverOptions) -> SdpSolution {
    let n = g.n();
    assert!(n >= 1, "theta of the empty-vertex graph is undefined");
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let mut is_edge = vec![false; n * n];
    for &(u, v) in &edges {
        is_edge[u * n + v] = true;
        is_edge[v * n + u] = true;
    }

    let nf = n as f64;
    let ones = DMatrix::from_element(n, n, 1.0);
    let mut z = DMatrix::from_diagonal_element(n, n, 1.0 / nf);
    let mut u = DMatrix::zeros(n, n);
    let mut x;

    // the feasible set lives at entry scale 1/n while the objective
    // gradient J is O(1); starting rho near n balances the two
    let mut rho = nf;
    let alpha = 1.6; // over-relaxation
    let mut primal = f64::INFINITY;
    let mut dual = f64::INFINITY;
    let mut iterations = 0;
    let mut converged = false;
    let trace = std::env::var("ISORELAX_TRACE").ok().as_deref() == Some("1");

    let project_block = |x: &mut DMatrix<f64>| match cone {
        ConeKind::Psd => project_theta_affine(x, &edges),
        ConeKind::Dnn => project_theta_affine_nonneg(x, &edges, &is_edge),
    };

    for it in 0..opts.max_iters {
        iterations = it + 1;
        let z_prev = z.clone();

        x = &z - &u + &ones * (1.0 / rho);
        project_block(&mut x);
        let relaxed = alpha * &x + (1.0 - alpha) * &z_prev;
        z = project_psd(&(&relaxed + &u));
        u += relaxed - &z;

        primal = (&x - &z).norm();
        dual = rho * (&z - &z_prev).norm();
        let scale = z.norm().max(1.0);
        if primal <= opts.tol * scale && dual <= opts.tol * scale {
            converged = true;
            break;
        }

        if trace && it % 500 == 0 {
            eprintln!(
                "iter {:6} value {:.8} primal {:.3e} dual {:.3e} rho {:.3e}",
                it,
                x.sum(),
                primal,
                dual,
                rho
            );
        }

        // residual balancing keeps the two rates comparable
        if it % 50 == 49 {
            if primal > 10.0 * dual {
                rho *= 2.0;
                u /= 2.0;
            } else if dual > 10.0 * primal {
                rho /= 2.0;
                u *= 2.0;
            }
        }
    }

    // report the first-block iterate: exact zero pattern, unit trace, and
    // for DNN exact nonnegativity
    let mut m = &z - &u + &ones * (1.0 / rho);
    project_block(&mut m);
    let value = m.sum();
    let (evals, _) = eigendecompose(&m);
    let min_eigenvalue = evals[n - 1];
    let min_entry = m.iter().cloned().fold(f64::INFINITY, f64::min);

    SdpSolution {
        m,
        value,
        primal_residual: primal,
        dual_residual: dual,
        min_eigenvalue,
        min_entry,
        iterations,
        converged,
    }
}

/// Outcome of an SDP-side isomorphism decision.
#[derive(Debug, Clone, Serialize)]
pub struct SdpIsoReport {
    pub cone: ConeKind,
    /// None = undecided (value in the margin band or non-convergence)
    pub holds: Option<bool>,
    pub value: f64,
    /// |V_G| - value
    pub gap: f64,
    pub iterations: usize,
    pub converged: bool,
    /// worst deviation of the rescaled block sums from 1 (holds only)
    pub block_sum_residual: Option<f64>,
}

/// Decides K-isomorphism numerically: G and H are cone-isomorphic iff
/// theta of the isomorphism product attains |V_G|.
pub fn k_isomorphic_sdp(
    g: &Graph,
    h: &Graph,
    cone: ConeKind,
    opts: &SolverOptions,
) -> (SdpIsoReport, SdpSolution) {
    assert!(g.n() >= 1 && h.n() >= 1);
    let product = isomorphism_product(g, h);

    let mut sol = solve_theta(&product, cone, opts);
    let mut report = classify(g, h, cone, &sol);
    if g.n() == h.n() && report.holds.is_none() && sol.converged {
        // value in the undecided band: re-solve tighter
        let tight = SolverOptions {
            tol: 1e-8,
            max_iters: opts.max_iters,
        };
        sol = solve_theta(&product, cone, &tight);
        report = classify(g, h, cone, &sol);
    }
    (report, sol)
}

fn classify(g: &Graph, h: &Graph, cone: ConeKind, sol: &SdpSolution) -> SdpIsoReport {
    let n = g.n() as f64;
    let value = sol.value;
    let gap = n - value;
    let margin = 1e-3 * n;
    let holds = if g.n() != h.n() {
        Some(false)
    } else if !sol.converged {
        None
    } else if value >= n - margin {
        Some(true)
    } else if value < n - 1e-2 {
        Some(false)
    } else {
        None
    };
    let block_sum_residual = if holds == Some(true) {
        Some(block_sum_deviation(g, h, &sol.m))
    } else {
        None
    };
    SdpIsoReport {
        cone,
        holds,
        value,
        gap,
        iterations: sol.iterations,
        converged: sol.converged,
        block_sum_residual,
    }
}

/// Rescales M (unit trace) by |V_G| and returns the worst deviation from 1
/// of the per-(g,g') and per-(h,h') block sums.
pub fn block_sum_deviation(g: &Graph, h: &Graph, m: &DMatrix<f64>) -> f64 {
    let ng = g.n();
    let nh = h.n();
    let scale = ng as f64 / m.trace();
    let mut worst: f64 = 0.0;
    for a in 0..ng {
        for a2 in 0..ng {
            let mut s = 0.0;
            for b in 0..nh {
                for b2 in 0..nh {
                    s += m[(a * nh + b, a2 * nh + b2)];
                }
            }
            worst = worst.max((s * scale - 1.0).abs());
        }
    }
    for b in 0..nh {
        for b2 in 0..nh {
            let mut s = 0.0;
            for a in 0..ng {
                for a2 in 0..ng {
                    s += m[(a * nh + b, a2 * nh + b2)];
                }
            }
            worst = worst.max((s * scale - 1.0).abs());
        }
    }
    worst
}

/// Feasibility status of a convex feasibility run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Feasibility {
    Feasible,
    Infeasible,
    Undecided,
}

/// Index layout and constraint data of the level-1 moment matrix for the
/// isomorphism system of G and H: order 1 + |V_G||V_H|, variable (g,h) at
/// index 1 + g|V_H| + h.
pub struct LasserreSystem {
    pub n: usize,
    pub m: usize,
    pub nonneg: bool,
    /// pairs of distinct variable indices forced to zero by rel mismatch
    zero_pairs: Vec<(usize, usize)>,
}

impl LasserreSystem {
    pub fn new(g: &Graph, h: &Graph, nonneg: bool) -> Self {
        let n = g.n();
        let m = h.n();
        let mut zero_pairs = Vec::new();
        for a in 0..n {
            for b in 0..m {
                for a2 in 0..n {
                    for b2 in 0..m {
                        let i = a * m + b;
                        let j = a2 * m + b2;
                        if i < j && g.rel(a, a2).unwrap() != h.rel(b, b2).unwrap() {
                            zero_pairs.push((1 + i, 1 + j));
                        }
                    }
                }
            }
        }
        LasserreSystem {
            n,
            m,
            nonneg,
            zero_pairs,
        }
    }

    pub fn order(&self) -> usize {
        1 + self.n * self.m
    }

    /// Orthogonal projection onto the affine constraint set:
    /// symmetry; M[0,0] = 1; M[0,i] = M[i,0] = M[i,i] (the shared value
    /// y_i); zero pattern on mismatched pairs; the y-vector, viewed as an
    /// n x m matrix, has unit row and column sums.
    fn project_affine(&self, x: &mut DMatrix<f64>) {
        let nm = self.n * self.m;
        // symmetrize first (projection onto symmetric matrices)
        let sym = (&*x + x.transpose()) * 0.5;
        x.copy_from(&sym);

        x[(0, 0)] = 1.0;
        // triple groups -> group means, then row/column-sum projection of
        // the mean matrix (uniform weights, so the unweighted closed form
        // applies)
        let mut y = DMatrix::zeros(self.n, self.m);
        for i in 0..nm {
            let v = (x[(0, 1 + i)] + x[(1 + i, 0)] + x[(1 + i, 1 + i)]) / 3.0;
            y[(i / self.m, i % self.m)] = v;
        }
        if self.n == self.m {
            let nf = self.n as f64;
            let e = DMatrix::from_element(self.n, 1, 1.0);
            let r = &y * &e - &e; // row-sum residual
            let c = y.transpose() * &e - &e; // column-sum residual
            let s = (e.transpose() * &y * &e)[(0, 0)] - nf;
            y -= &r * e.transpose() / nf;
            y -= &e * c.transpose() / nf;
            y += DMatrix::from_element(self.n, self.m, s / (nf * nf));
        }
        for i in 0..nm {
            let v = y[(i / self.m, i % self.m)];
            x[(0, 1 + i)] = v;
            x[(1 + i, 0)] = v;
            x[(1 + i, 1 + i)] = v;
        }
        for &(i, j) in &self.zero_pairs {
            x[(i, j)] = 0.0;
            x[(j, i)] = 0.0;
        }
    }

    /// A feasible moment matrix from a vertex bijection (e.g. the identity
    /// when G = H): y is the indicator of the permutation.
    pub fn moment_matrix_from_bijection(&self, f: &[usize]) -> DMatrix<f64> {
        assert_eq!(self.n, self.m);
        let order = self.order();
        let mut v = DMatrix::zeros(order, 1);
        v[(0, 0)] = 1.0;
        for (g, &h) in f.iter().enumerate() {
            v[(1 + g * self.m + h, 0)] = 1.0;
        }
        &v * v.transpose()
    }
}

/// Decides feasibility of the level-1 Lasserre system by consensus ADMM
/// between the affine set, the PSD cone, and (if `nonneg`) the orthant.
///
/// Feasible when the consensus residual falls below 1e-6; infeasible when
/// the residual plateaus at a clearly positive level (the iterates then
/// converge to the minimal gap between the sets); undecided otherwise.
pub fn lasserre1_solve(sys: &LasserreSystem, opts: &SolverOptions) -> (Feasibility, f64) {
    if sys.n != sys.m {
        // row sums force |V_G| = |V_H|
        return (Feasibility::Infeasible, f64::INFINITY);
    }
    let order = sys.order();
    let blocks = if sys.nonneg { 3 } else { 2 };
    let mut z = DMatrix::identity(order, order);
    z[(0, 0)] = 1.0;
    let mut u: Vec<DMatrix<f64>> = vec![DMatrix::zeros(order, order); blocks];
    let mut x: Vec<DMatrix<f64>> = vec![z.clone(); blocks];

    let feas_tol = 1e-6;
    let mut residual = f64::INFINITY;
    let mut window_best = f64::INFINITY;
    let mut last_window_best = f64::INFINITY;

    for it in 0..opts.max_iters {
        x[0] = &z - &u[0];
        sys.project_affine(&mut x[0]);
        x[1] = project_psd(&(&z - &u[1]));
        if blocks == 3 {
            x[2] = (&z - &u[2]).map(|t| t.max(0.0));
        }
        let mut acc = DMatrix::zeros(order, order);
        for i in 0..blocks {
            acc += &x[i] + &u[i];
        }
        z = acc / blocks as f64;
        for i in 0..blocks {
            u[i] += &x[i] - &z;
        }

        let mut r2 = 0.0_f64;
        for xi in x.iter().take(blocks) {
            r2 += (xi - &z).norm_squared();
        }
        residual = (r2 / blocks as f64).sqrt();
        let scale = z.norm().max(1.0);
        if residual <= feas_tol * scale {
            return (Feasibility::Feasible, residual);
        }

        window_best = window_best.min(residual);
        if it % 500 == 499 {
            // plateau test: essentially no progress across a window while
            // the residual stays clearly positive
            if window_best > 1e-4 * scale
                && window_best >= last_window_best * (1.0 - 1e-6)
                && last_window_best.is_finite()
            {
                return (Feasibility::Infeasible, residual);
            }
            last_window_best = window_best;
            window_best = f64::INFINITY;
        }
    }
    (Feasibility::Undecided, residual)
}

#[derive(Debug, thiserror::Error)]
#[error("Lasserre level-1 feasibility ({feasibility:?}, nonneg={nonneg}) contradicts the exact algebraic decision ({algebraic})")]
pub struct LasserreDisagreement {
    pub feasibility: Feasibility,
    pub nonneg: bool,
    pub algebraic: bool,
}

/// Level-1 Lasserre feasibility, cross-checked against the exact algebraic
/// decision for the matching relation (partial equivalence without
/// nonnegativity, WL equivalence with it). A disagreement is an error,
/// never silently reconciled.
pub fn lasserre1_feasible(
    g: &Graph,
    h: &Graph,
    nonneg: bool,
    opts: &SolverOptions,
) -> Result<Feasibility, LasserreDisagreement> {
    let sys = LasserreSystem::new(g, h, nonneg);
    let (feas, _residual) = lasserre1_solve(&sys, opts);
    let algebraic = if nonneg {
        crate::wl::wl_equivalent(g, h).is_some()
    } else {
        crate::closure::partial_equivalence(g, h)
    };
    match feas {
        Feasibility::Feasible if !algebraic => Err(LasserreDisagreement {
            feasibility: feas,
            nonneg,
            algebraic,
        }),
        Feasibility::Infeasible if algebraic => Err(LasserreDisagreement {
            feasibility: feas,
            nonneg,
            algebraic,
        }),
        other => Ok(other),
    }
}

/// Exact independence number bound helper: alpha(G) computed from clique
/// search on the complement (small graphs only).
pub fn independence_number(g: &Graph) -> usize {
    crate::graphs::independence_number(g)
}

/// rel-mismatch zero pattern of the isomorphism product, exposed for
/// verification code.
pub fn product_zero_pattern(g: &Graph, h: &Graph) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let nh = h.n();
    for a in 0..g.n() {
        for b in 0..nh {
            for a2 in 0..g.n() {
                for b2 in 0..nh {
                    if g.rel(a, a2).unwrap() != h.rel(b, b2).unwrap() {
                        out.push((a * nh + b, a2 * nh + b2));
                    }
                }
            }
        }
    }
    out
}
