//! Choi matrices of isomorphism maps: application in both directions,
//! Kraus decomposition, full condition verification, and the exact
//! constructions from explicit isomorphisms and from WL class pairings.
//!
//! Index convention: the pair (g, h) maps to row/column g·|V_H| + h, i.e.
//! vect stacks rows (vect(e_i e_jᵀ) = e_i ⊗ e_j).

use nalgebra::DMatrix;
use num::{BigInt, BigRational, One, Signed, Zero};

use crate::conic::ConeKind;
use crate::exact::{rational_to_f64, IMat, RMat};
use crate::graphs::{is_isomorphism, Graph};
use crate::spectral::{eigendecompose, eigenprojectors, Eigenprojectors};
use crate::wl::WlEquivalence;

/// Entries of an isomorphism-matrix candidate: exact rational when the
/// construction is rational, floating when it came from a solver.
#[derive(Debug, Clone)]
pub enum IsoEntries {
    Exact(RMat),
    Float(DMatrix<f64>),
}

/// Symmetric matrix of order |V_G||V_H| indexed by vertex pairs, together
/// with the cone it is claimed to live in.
#[derive(Debug, Clone)]
pub struct IsoMatrix {
    pub n_g: usize,
    pub n_h: usize,
    pub cone: ConeKind,
    pub entries: IsoEntries,
}

#[derive(Debug, thiserror::Error)]
pub enum IsoMapError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is not positive semidefinite (min eigenvalue {0:.3e})")]
    NotPsd(f64),
    #[error("bijection {0} is not an isomorphism")]
    NotIsomorphism(usize),
    #[error("weights must be positive and sum to 1")]
    BadWeights,
}

impl IsoMatrix {
    pub fn order(&self) -> usize {
        self.n_g * self.n_h
    }

    pub fn idx(&self, g: usize, h: usize) -> usize {
        g * self.n_h + h
    }

    pub fn to_f64(&self) -> DMatrix<f64> {
        match &self.entries {
            IsoEntries::Exact(r) => r.to_f64(),
            IsoEntries::Float(m) => m.clone(),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.entries, IsoEntries::Exact(_))
    }

    /// Exact entry access, rational view (floats converted on the fly are
    /// not offered: exact getters exist only for exact matrices).
    pub fn exact(&self) -> Option<&RMat> {
        match &self.entries {
            IsoEntries::Exact(r) => Some(r),
            IsoEntries::Float(_) => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapDirection {
    Forward,
    Adjoint,
}

/// Applies the map of a Choi matrix: forward sends V_G-indexed matrices to
/// V_H-indexed ones via (Φ(X))_{h,h'} = Σ_{g,g'} M_{gh,g'h'} X_{g,g'};
/// adjoint transposes the index roles.
pub fn apply_map(
    m: &IsoMatrix,
    x: &DMatrix<f64>,
    direction: MapDirection,
) -> Result<DMatrix<f64>, IsoMapError> {
    let (nin, nout) = match direction {
        MapDirection::Forward => (m.n_g, m.n_h),
        MapDirection::Adjoint => (m.n_h, m.n_g),
    };
    if x.nrows() != nin || x.ncols() != nin {
        return Err(IsoMapError::Dimension(format!(
            "expected {0}x{0} input, got {1}x{2}",
            nin,
            x.nrows(),
            x.ncols()
        )));
    }
    let mf = m.to_f64();
    let mut out = DMatrix::zeros(nout, nout);
    for a in 0..nout {
        for b in 0..nout {
            let mut acc = 0.0;
            for c in 0..nin {
                for d in 0..nin {
                    let (row, col) = match direction {
                        MapDirection::Forward => (m.idx(c, a), m.idx(d, b)),
                        MapDirection::Adjoint => (m.idx(a, c), m.idx(b, d)),
                    };
                    acc += mf[(row, col)] * x[(c, d)];
                }
            }
            out[(a, b)] = acc;
        }
    }
    Ok(out)
}

/// Exact-rational map application for exact Choi matrices.
pub fn apply_map_exact(
    m: &IsoMatrix,
    x: &RMat,
    direction: MapDirection,
) -> Result<RMat, IsoMapError> {
    let r = m
        .exact()
        .ok_or_else(|| IsoMapError::Dimension("exact application needs exact entries".into()))?;
    let (nin, nout) = match direction {
        MapDirection::Forward => (m.n_g, m.n_h),
        MapDirection::Adjoint => (m.n_h, m.n_g),
    };
    if x.rows != nin || x.cols != nin {
        return Err(IsoMapError::Dimension(format!(
            "expected {0}x{0} input, got {1}x{2}",
            nin, x.rows, x.cols
        )));
    }
    let mut out = RMat::zeros(nout, nout);
    for a in 0..nout {
        for b in 0..nout {
            let mut acc = BigRational::zero();
            for c in 0..nin {
                for d in 0..nin {
                    let (row, col) = match direction {
                        MapDirection::Forward => (m.idx(c, a), m.idx(d, b)),
                        MapDirection::Adjoint => (m.idx(a, c), m.idx(b, d)),
                    };
                    acc += &r[(row, col)] * &x[(c, d)];
                }
            }
            out[(a, b)] = acc;
        }
    }
    Ok(out)
}

/// Choi matrix of an arbitrary linear map given by its action on the
/// standard basis: C_{gh,g'h'} = Φ(e_g e_{g'}ᵀ)_{h,h'}.
pub fn choi_of(
    n_g: usize,
    n_h: usize,
    mut map: impl FnMut(&DMatrix<f64>) -> DMatrix<f64>,
) -> DMatrix<f64> {
    let order = n_g * n_h;
    let mut c = DMatrix::zeros(order, order);
    for g in 0..n_g {
        for g2 in 0..n_g {
            let mut e = DMatrix::zeros(n_g, n_g);
            e[(g, g2)] = 1.0;
            let y = map(&e);
            for h in 0..n_h {
                for h2 in 0..n_h {
                    c[(g * n_h + h, g2 * n_h + h2)] = y[(h, h2)];
                }
            }
        }
    }
    c
}

/// Kraus decomposition of a PSD Choi matrix: each positive eigenpair
/// (λ, v) yields K = √λ · mat(v) of shape |V_H| × |V_G| with
/// K_{h,g} = √λ · v_{gh}, so that Φ(X) = Σ K_i X K_iᵀ.
pub fn kraus_decompose(m: &IsoMatrix) -> Result<Vec<DMatrix<f64>>, IsoMapError> {
    let mf = m.to_f64();
    let (vals, vecs) = eigendecompose(&mf);
    let scale = vals[0].abs().max(1.0);
    let order = m.order();
    if vals[order - 1] < -1e-9 * scale {
        return Err(IsoMapError::NotPsd(vals[order - 1]));
    }
    let mut out = Vec::new();
    for k in 0..order {
        if vals[k] <= 1e-12 * scale {
            continue;
        }
        let s = vals[k].sqrt();
        let mut kmat = DMatrix::zeros(m.n_h, m.n_g);
        for g in 0..m.n_g {
            for h in 0..m.n_h {
                kmat[(h, g)] = s * vecs[(m.idx(g, h), k)];
            }
        }
        out.push(kmat);
    }
    Ok(out)
}

/// Per-condition residuals for the four defining conditions of an
/// isomorphism matrix plus the derived map identities.
#[derive(Debug, Clone, serde::Serialize)]
pub struct IsoVerifyReport {
    /// worst |Σ_{h,h'} M_{gh,g'h'} − 1| over (g,g')
    pub block_row_residual: f64,
    /// worst |Σ_{g,g'} M_{gh,g'h'} − 1| over (h,h')
    pub block_col_residual: f64,
    /// worst |M| entry on rel-mismatched index pairs
    pub zero_pattern_residual: f64,
    /// min eigenvalue (PSD membership when ≥ −1e-8)
    pub min_eigenvalue: f64,
    /// min entry (DNN membership when ≥ −1e-10)
    pub min_entry: f64,
    /// worst entry residual of Φ(I) − I, Φ(A_G) − A_H, Φ(J) − J
    pub map_identity_residual: f64,
    /// affine/pattern/identity residuals are exactly zero (exact inputs)
    pub exact_affine: bool,
    pub pass: bool,
}

/// Checks all defining conditions, reporting each residual separately.
/// Exact inputs must satisfy the affine and pattern conditions with zero
/// residual; floating inputs are held to 1e-8. PSD membership is always
/// judged numerically at 1e-8 (plus 1e-10 entrywise for DNN).
pub fn verify_iso_matrix(m: &IsoMatrix, g: &Graph, h: &Graph) -> IsoVerifyReport {
    assert_eq!(m.n_g, g.n(), "Choi matrix order does not match G");
    assert_eq!(m.n_h, h.n(), "Choi matrix order does not match H");

    let (block_row, block_col, pattern, ident, exact_affine) = match &m.entries {
        IsoEntries::Exact(r) => {
            let (a, b, c) = exact_condition_residuals(r, m, g, h);
            let i = exact_identity_residual(m, g, h);
            let all_zero = a.is_zero() && b.is_zero() && c.is_zero() && i.is_zero();
            (
                rational_to_f64(&a),
                rational_to_f64(&b),
                rational_to_f64(&c),
                rational_to_f64(&i),
                all_zero,
            )
        }
        IsoEntries::Float(mf) => {
            let (a, b, c) = float_condition_residuals(mf, m, g, h);
            let i = float_identity_residual(m, g, h);
            (a, b, c, i, false)
        }
    };

    let mf = m.to_f64();
    let (vals, _) = eigendecompose(&mf);
    let min_eigenvalue = vals[m.order() - 1];
    let min_entry = mf.iter().cloned().fold(f64::INFINITY, f64::min);

    let affine_tol = if m.is_exact() { 0.0 } else { 1e-8 };
    let mut pass = block_row <= affine_tol
        && block_col <= affine_tol
        && pattern <= affine_tol
        && ident <= affine_tol
        && min_eigenvalue >= -1e-8;
    if m.cone == ConeKind::Dnn {
        pass = pass && min_entry >= -1e-10;
    }

    IsoVerifyReport {
        block_row_residual: block_row,
        block_col_residual: block_col,
        zero_pattern_residual: pattern,
        min_eigenvalue,
        min_entry,
        map_identity_residual: ident,
        exact_affine,
        pass,
    }
}

fn exact_condition_residuals(
    r: &RMat,
    m: &IsoMatrix,
    g: &Graph,
    h: &Graph,
) -> (BigRational, BigRational, BigRational) {
    let one = BigRational::one();
    let mut worst_row = BigRational::zero();
    for a in 0..m.n_g {
        for a2 in 0..m.n_g {
            let mut s = BigRational::zero();
            for b in 0..m.n_h {
                for b2 in 0..m.n_h {
                    s += &r[(m.idx(a, b), m.idx(a2, b2))];
                }
            }
            let dev = (s - &one).abs();
            if dev > worst_row {
                worst_row = dev;
            }
        }
    }
    let mut worst_col = BigRational::zero();
    for b in 0..m.n_h {
        for b2 in 0..m.n_h {
            let mut s = BigRational::zero();
            for a in 0..m.n_g {
                for a2 in 0..m.n_g {
                    s += &r[(m.idx(a, b), m.idx(a2, b2))];
                }
            }
            let dev = (s - &one).abs();
            if dev > worst_col {
                worst_col = dev;
            }
        }
    }
    let mut worst_pat = BigRational::zero();
    for a in 0..m.n_g {
        for b in 0..m.n_h {
            for a2 in 0..m.n_g {
                for b2 in 0..m.n_h {
                    if g.rel(a, a2).unwrap() != h.rel(b, b2).unwrap() {
                        let dev = r[(m.idx(a, b), m.idx(a2, b2))].abs();
                        if dev > worst_pat {
                            worst_pat = dev;
                        }
                    }
                }
            }
        }
    }
    (worst_row, worst_col, worst_pat)
}

fn float_condition_residuals(
    mf: &DMatrix<f64>,
    m: &IsoMatrix,
    g: &Graph,
    h: &Graph,
) -> (f64, f64, f64) {
    let mut worst_row = 0.0_f64;
    for a in 0..m.n_g {
        for a2 in 0..m.n_g {
            let mut s = 0.0;
            for b in 0..m.n_h {
                for b2 in 0..m.n_h {
                    s += mf[(m.idx(a, b), m.idx(a2, b2))];
                }
            }
            worst_row = worst_row.max((s - 1.0).abs());
        }
    }
    let mut worst_col = 0.0_f64;
    for b in 0..m.n_h {
        for b2 in 0..m.n_h {
            let mut s = 0.0;
            for a in 0..m.n_g {
                for a2 in 0..m.n_g {
                    s += mf[(m.idx(a, b), m.idx(a2, b2))];
                }
            }
            worst_col = worst_col.max((s - 1.0).abs());
        }
    }
    let mut worst_pat = 0.0_f64;
    for a in 0..m.n_g {
        for b in 0..m.n_h {
            for a2 in 0..m.n_g {
                for b2 in 0..m.n_h {
                    if g.rel(a, a2).unwrap() != h.rel(b, b2).unwrap() {
                        worst_pat = worst_pat.max(mf[(m.idx(a, b), m.idx(a2, b2))].abs());
                    }
                }
            }
        }
    }
    (worst_row, worst_col, worst_pat)
}

fn exact_identity_residual(m: &IsoMatrix, g: &Graph, h: &Graph) -> BigRational {
    let probes = [
        (IMat::identity(g.n()), IMat::identity(h.n())),
        (g.adjacency(), h.adjacency()),
        (IMat::ones(g.n(), g.n()), IMat::ones(h.n(), h.n())),
    ];
    let mut worst = BigRational::zero();
    for (x, y) in &probes {
        let img = apply_map_exact(m, &x.to_rational(), MapDirection::Forward).unwrap();
        let diff = img.sub(&y.to_rational());
        for i in 0..diff.rows {
            for j in 0..diff.cols {
                let dev = diff[(i, j)].abs();
                if dev > worst {
                    worst = dev;
                }
            }
        }
    }
    worst
}

fn float_identity_residual(m: &IsoMatrix, g: &Graph, h: &Graph) -> f64 {
    let probes = [
        (
            DMatrix::identity(g.n(), g.n()),
            DMatrix::identity(h.n(), h.n()),
        ),
        (g.adjacency_f64(), h.adjacency_f64()),
        (
            DMatrix::from_element(g.n(), g.n(), 1.0),
            DMatrix::from_element(h.n(), h.n(), 1.0),
        ),
    ];
    let mut worst = 0.0_f64;
    for (x, y) in &probes {
        let img = apply_map(m, x, MapDirection::Forward).unwrap();
        worst = worst.max((img - y).amax());
    }
    worst
}

/// Exact CP isomorphism matrix from explicit isomorphisms: the convex
/// combination Σ λ_i v_i v_iᵀ of the permutation indicator vectors
/// v_i[(g,h)] = [h = f_i(g)]. The returned vectors certify CP membership.
pub fn build_cp_from_isomorphisms(
    g: &Graph,
    h: &Graph,
    fs: &[Vec<usize>],
    weights: &[BigRational],
) -> Result<(IsoMatrix, Vec<Vec<usize>>), IsoMapError> {
    if fs.is_empty() || fs.len() != weights.len() {
        return Err(IsoMapError::BadWeights);
    }
    if weights.iter().any(|w| !w.is_positive())
        || weights.iter().sum::<BigRational>() != BigRational::one()
    {
        return Err(IsoMapError::BadWeights);
    }
    for (i, f) in fs.iter().enumerate() {
        if !is_isomorphism(g, h, f) {
            return Err(IsoMapError::NotIsomorphism(i));
        }
    }
    let nh = h.n();
    let order = g.n() * nh;
    let mut r = RMat::zeros(order, order);
    for (f, w) in fs.iter().zip(weights) {
        for (a, &fa) in f.iter().enumerate() {
            for (a2, &fa2) in f.iter().enumerate() {
                let i = a * nh + fa;
                let j = a2 * nh + fa2;
                r[(i, j)] += w.clone();
            }
        }
    }
    Ok((
        IsoMatrix {
            n_g: g.n(),
            n_h: h.n(),
            cone: ConeKind::Dnn,
            entries: IsoEntries::Exact(r),
        },
        fs.to_vec(),
    ))
}

/// Exact DNN isomorphism matrix from a WL equivalence: the Choi matrix of
/// X ↦ Σ_i (1/m_i) tr(A_iᵀ X) B_{f(i)}, i.e.
/// M_{gh,g'h'} = Σ_i (1/m_i) (A_i)_{g,g'} (B_{f(i)})_{h,h'}.
pub fn build_dnn_choi_from_wl(g: &Graph, h: &Graph, eq: &WlEquivalence) -> IsoMatrix {
    let nh = h.n();
    let order = g.n() * nh;
    let mut r = RMat::zeros(order, order);
    for (i, a_i) in eq.basis_g.mats.iter().enumerate() {
        let b_i = &eq.basis_h.mats[eq.pairing[i]];
        let m_i = &eq.basis_g.class_sizes[i];
        let coef = BigRational::new(BigInt::one(), m_i.clone());
        for a in 0..g.n() {
            for a2 in 0..g.n() {
                if a_i[(a, a2)].is_zero() {
                    continue;
                }
                for b in 0..nh {
                    for b2 in 0..nh {
                        if b_i[(b, b2)].is_zero() {
                            continue;
                        }
                        r[(a * nh + b, a2 * nh + b2)] += coef.clone();
                    }
                }
            }
        }
    }
    IsoMatrix {
        n_g: g.n(),
        n_h: h.n(),
        cone: ConeKind::Dnn,
        entries: IsoEntries::Exact(r),
    }
}

/// Report for a family of claimed quantum-isomorphism projectors P_{gh}.
#[derive(Debug, Clone, serde::Serialize)]
pub struct QuantumCertReport {
    /// worst ‖P² − P‖ and ‖P − Pᵀ‖ entry residual
    pub projector_residual: f64,
    /// worst ‖Σ_h P_{gh} − I‖ and ‖Σ_g P_{gh} − I‖ entry residual
    pub partition_residual: f64,
    /// worst ‖P_{gh} P_{g'h'}‖ entry residual on rel-mismatched pairs
    pub orthogonality_residual: f64,
    /// the assembled Gram matrix tr(P P')/d passed the DNN verifier
    pub gram_matrix_pass: bool,
    pub pass: bool,
}

/// Verifies the reformulated quantum-isomorphism conditions for a family
/// of projectors indexed by (g, h), then assembles the normalized Gram
/// matrix M_{gh,g'h'} = tr(P_{gh} P_{g'h'})/d and runs the DNN verifier
/// on it (a Gram matrix of PSD matrices is doubly nonnegative).
pub fn verify_quantum_certificate(
    cert: &[Vec<DMatrix<f64>>],
    g: &Graph,
    h: &Graph,
) -> Result<QuantumCertReport, IsoMapError> {
    if cert.len() != g.n() || cert.iter().any(|row| row.len() != h.n()) {
        return Err(IsoMapError::Dimension(
            "certificate must be a |V_G| x |V_H| family".into(),
        ));
    }
    let d = cert[0][0].nrows();
    for row in cert {
        for p in row {
            if p.nrows() != d || p.ncols() != d {
                return Err(IsoMapError::Dimension(
                    "all projectors must share one dimension".into(),
                ));
            }
        }
    }
    let tol = 1e-8;

    let mut projector_residual = 0.0_f64;
    for row in cert {
        for p in row {
            projector_residual = projector_residual.max((p * p - p).amax());
            projector_residual = projector_residual.max((p - p.transpose()).amax());
        }
    }

    let id = DMatrix::identity(d, d);
    let mut partition_residual = 0.0_f64;
    for row in cert {
        let mut s = DMatrix::zeros(d, d);
        for p in row {
            s += p;
        }
        partition_residual = partition_residual.max((s - &id).amax());
    }
    for b in 0..h.n() {
        let mut s = DMatrix::zeros(d, d);
        for row in cert {
            s += &row[b];
        }
        partition_residual = partition_residual.max((s - &id).amax());
    }

    let mut orthogonality_residual = 0.0_f64;
    for a in 0..g.n() {
        for b in 0..h.n() {
            for a2 in 0..g.n() {
                for b2 in 0..h.n() {
                    if g.rel(a, a2).unwrap() != h.rel(b, b2).unwrap() {
                        orthogonality_residual =
                            orthogonality_residual.max((&cert[a][b] * &cert[a2][b2]).amax());
                    }
                }
            }
        }
    }

    let conditions_pass = projector_residual <= tol
        && partition_residual <= tol
        && orthogonality_residual <= tol;

    let gram_matrix_pass = if conditions_pass {
        let nh = h.n();
        let order = g.n() * nh;
        let mut mf = DMatrix::zeros(order, order);
        for a in 0..g.n() {
            for b in 0..nh {
                for a2 in 0..g.n() {
                    for b2 in 0..nh {
                        mf[(a * nh + b, a2 * nh + b2)] =
                            (&cert[a][b] * &cert[a2][b2]).trace() / d as f64;
                    }
                }
            }
        }
        let iso = IsoMatrix {
            n_g: g.n(),
            n_h: h.n(),
            cone: ConeKind::Dnn,
            entries: IsoEntries::Float(mf),
        };
        verify_iso_matrix(&iso, g, h).pass
    } else {
        false
    };

    Ok(QuantumCertReport {
        projector_residual,
        partition_residual,
        orthogonality_residual,
        gram_matrix_pass,
        pass: conditions_pass && gram_matrix_pass,
    })
}

/// Map-level property report: intertwining with the adjacency matrices,
/// eigenprojector transport, and exact cospectrality.
#[derive(Debug, Clone, serde::Serialize)]
pub struct MapPropertyReport {
    /// worst entry of Φ(A_G W) − A_H Φ(W) over the probes
    pub commutation_residual: f64,
    /// worst entry of Φ(E_λ) − F_λ over eigenvalues
    pub projector_transport_residual: f64,
    /// worst entry of Φ†(F_λ) − E_λ over eigenvalues
    pub adjoint_transport_residual: f64,
    /// characteristic polynomials of A_G, A_H agree exactly
    pub cospectral: bool,
    pub pass: bool,
}

/// Validates the spectral consequences of a verified PSD isomorphism
/// matrix on random probes and on the actual eigenprojectors.
pub fn verify_map_properties(
    m: &IsoMatrix,
    g: &Graph,
    h: &Graph,
    seed: u64,
) -> MapPropertyReport {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let ag = g.adjacency_f64();
    let ah = h.adjacency_f64();

    let mut commutation_residual = 0.0_f64;
    for _ in 0..5 {
        let raw = DMatrix::from_fn(g.n(), g.n(), |_, _| rng.gen_range(-1.0..1.0));
        let w = (&raw + raw.transpose()) * 0.5;
        let lhs = apply_map(m, &(&ag * &w), MapDirection::Forward).unwrap();
        let rhs = &ah * apply_map(m, &w, MapDirection::Forward).unwrap();
        commutation_residual = commutation_residual.max((lhs - rhs).amax());
    }

    let eg = projector_list(&eigenprojectors(&g.adjacency()));
    let eh = projector_list(&eigenprojectors(&h.adjacency()));
    let mut projector_transport_residual = 0.0_f64;
    let mut adjoint_transport_residual = 0.0_f64;
    let transportable = eg.len() == eh.len()
        && eg
            .iter()
            .zip(&eh)
            .all(|((l1, _), (l2, _))| (l1 - l2).abs() <= 1e-8);
    if transportable {
        for ((_, e), (_, f)) in eg.iter().zip(&eh) {
            let img = apply_map(m, e, MapDirection::Forward).unwrap();
            projector_transport_residual = projector_transport_residual.max((img - f).amax());
            let pre = apply_map(m, f, MapDirection::Adjoint).unwrap();
            adjoint_transport_residual = adjoint_transport_residual.max((pre - e).amax());
        }
    } else {
        projector_transport_residual = f64::INFINITY;
        adjoint_transport_residual = f64::INFINITY;
    }

    let cospectral = crate::spectral::adjacency_cospectral(g, h);
    let tol = 1e-6;
    MapPropertyReport {
        commutation_residual,
        projector_transport_residual,
        adjoint_transport_residual,
        cospectral,
        pass: cospectral
            && commutation_residual <= tol
            && projector_transport_residual <= tol
            && adjoint_transport_residual <= tol,
    }
}

fn projector_list(p: &Eigenprojectors) -> Vec<(f64, DMatrix<f64>)> {
    p.to_f64()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{cycle, exact_isomorphism, Graph};
    use num::FromPrimitive;

    fn half() -> BigRational {
        BigRational::from_f64(0.5).unwrap()
    }

    fn identity_iso(g: &Graph) -> IsoMatrix {
        let f: Vec<usize> = (0..g.n()).collect();
        build_cp_from_isomorphisms(g, g, &[f], &[BigRational::one()])
            .unwrap()
            .0
    }

    #[test]
    fn identity_choi_acts_as_identity() {
        let g = cycle(5);
        let m = identity_iso(&g);
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(71);
        for _ in 0..3 {
            let raw = DMatrix::from_fn(5, 5, |_, _| rng.gen_range(-1.0..1.0));
            let x = (&raw + raw.transpose()) * 0.5;
            let y = apply_map(&m, &x, MapDirection::Forward).unwrap();
            assert!((y - &x).amax() < 1e-12);
        }
    }

    #[test]
    fn adjoint_defining_identity() {
        use rand::{Rng, SeedableRng};
        let g = cycle(4);
        let perm = vec![1usize, 2, 3, 0]; // rotation automorphism
        let (m, _) =
            build_cp_from_isomorphisms(&g, &g, &[perm, (0..4).collect()], &[half(), half()])
                .unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(73);
        for _ in 0..50 {
            let rx = DMatrix::from_fn(4, 4, |_, _| rng.gen_range(-1.0..1.0));
            let ry = DMatrix::from_fn(4, 4, |_, _| rng.gen_range(-1.0..1.0));
            let x = (&rx + rx.transpose()) * 0.5;
            let y = (&ry + ry.transpose()) * 0.5;
            let fx = apply_map(&m, &x, MapDirection::Forward).unwrap();
            let ay = apply_map(&m, &y, MapDirection::Adjoint).unwrap();
            let lhs = (fx.transpose() * &y).trace();
            let rhs = (x.transpose() * ay).trace();
            assert!((lhs - rhs).abs() < 1e-10);
        }
    }

    #[test]
    fn kraus_of_identity_choi() {
        let g = cycle(4);
        let m = identity_iso(&g);
        let ks = kraus_decompose(&m).unwrap();
        assert_eq!(ks.len(), 1);
        // single Kraus operator is the identity up to sign
        let k = &ks[0];
        let id = DMatrix::identity(4, 4);
        assert!((k - &id).amax() < 1e-8 || (k + &id).amax() < 1e-8);
    }

    #[test]
    fn kraus_reconstructs_map() {
        use rand::{Rng, SeedableRng};
        let g = cycle(4);
        let perm = vec![1usize, 2, 3, 0];
        let (m, _) =
            build_cp_from_isomorphisms(&g, &g, &[perm, (0..4).collect()], &[half(), half()])
                .unwrap();
        let ks = kraus_decompose(&m).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(79);
        for _ in 0..10 {
            let raw = DMatrix::from_fn(4, 4, |_, _| rng.gen_range(-1.0..1.0));
            let x = (&raw + raw.transpose()) * 0.5;
            let direct = apply_map(&m, &x, MapDirection::Forward).unwrap();
            let mut rebuilt = DMatrix::zeros(4, 4);
            for k in &ks {
                rebuilt += k * &x * k.transpose();
            }
            assert!((direct - rebuilt).amax() < 1e-8);
        }
        // unital and trace-preserving
        let mut s1 = DMatrix::zeros(4, 4);
        let mut s2 = DMatrix::zeros(4, 4);
        for k in &ks {
            s1 += k.transpose() * k;
            s2 += k * k.transpose();
        }
        let id = DMatrix::identity(4, 4);
        assert!((s1 - &id).amax() < 1e-8);
        assert!((s2 - &id).amax() < 1e-8);
    }

    #[test]
    fn verify_identity_permutation_passes() {
        let g = cycle(5);
        let m = identity_iso(&g);
        let rep = verify_iso_matrix(&m, &g, &g);
        assert!(rep.pass, "{:?}", rep);
        assert!(rep.exact_affine);
    }

    #[test]
    fn verify_rejects_uniform_matrix() {
        let g = cycle(4);
        let h = crate::graphs::complete(4);
        let order = 16;
        let mf = DMatrix::from_element(order, order, 1.0 / 16.0);
        let iso = IsoMatrix {
            n_g: 4,
            n_h: 4,
            cone: ConeKind::Dnn,
            entries: IsoEntries::Float(mf),
        };
        let rep = verify_iso_matrix(&iso, &g, &h);
        assert!(!rep.pass);
        assert!(rep.zero_pattern_residual > 1e-3);
    }

    #[test]
    fn choi_round_trip() {
        let g = cycle(4);
        let perm = vec![1usize, 2, 3, 0];
        let (m, _) =
            build_cp_from_isomorphisms(&g, &g, &[perm, (0..4).collect()], &[half(), half()])
                .unwrap();
        let rebuilt = choi_of(4, 4, |x| apply_map(&m, x, MapDirection::Forward).unwrap());
        assert!((rebuilt - m.to_f64()).amax() < 1e-12);
    }

    #[test]
    fn cp_build_rejects_non_isomorphism() {
        let g = cycle(4);
        let h = crate::graphs::complete(4);
        let f: Vec<usize> = (0..4).collect();
        assert!(matches!(
            build_cp_from_isomorphisms(&g, &h, &[f], &[BigRational::one()]),
            Err(IsoMapError::NotIsomorphism(0))
        ));
        let f2: Vec<usize> = (0..4).collect();
        assert!(matches!(
            build_cp_from_isomorphisms(&g, &g, &[f2], &[half()]),
            Err(IsoMapError::BadWeights)
        ));
    }

    #[test]
    fn dnn_choi_from_wl_self_projection() {
        let g = cycle(5);
        let eq = crate::wl::wl_equivalent(&g, &g).unwrap();
        let m = build_dnn_choi_from_wl(&g, &g, &eq);
        let rep = verify_iso_matrix(&m, &g, &g);
        assert!(rep.pass, "{:?}", rep);
        assert!(rep.exact_affine);
        // the map is the orthogonal projection onto the coherent algebra:
        // idempotent on the adjacency matrix
        let a = g.adjacency_f64();
        let img = apply_map(&m, &a, MapDirection::Forward).unwrap();
        assert!((img - &a).amax() < 1e-10);
    }

    #[test]
    fn quantum_certificate_classical_strategy() {
        let g = cycle(5);
        let f = exact_isomorphism(&g, &g).unwrap();
        // d = 1 projectors: P_{gh} = [1] iff h = f(g)
        let cert: Vec<Vec<DMatrix<f64>>> = (0..5)
            .map(|a| {
                (0..5)
                    .map(|b| DMatrix::from_element(1, 1, if f[a] == b { 1.0 } else { 0.0 }))
                    .collect()
            })
            .collect();
        let rep = verify_quantum_certificate(&cert, &g, &g).unwrap();
        assert!(rep.pass, "{:?}", rep);
    }

    #[test]
    fn quantum_certificate_rejects_perturbation() {
        let g = cycle(4);
        let f: Vec<usize> = (0..4).collect();
        let mut cert: Vec<Vec<DMatrix<f64>>> = (0..4)
            .map(|a| {
                (0..4)
                    .map(|b| DMatrix::from_element(1, 1, if f[a] == b { 1.0 } else { 0.0 }))
                    .collect()
            })
            .collect();
        cert[0][0][(0, 0)] += 1e-3;
        let rep = verify_quantum_certificate(&cert, &g, &g).unwrap();
        assert!(!rep.pass);
        assert!(rep.projector_residual > 1e-4 || rep.partition_residual > 1e-4);
    }

    #[test]
    fn map_properties_identity() {
        let g = cycle(5);
        let m = identity_iso(&g);
        let rep = verify_map_properties(&m, &g, &g, 83);
        assert!(rep.pass, "{:?}", rep);
        assert!(rep.commutation_residual < 1e-10);
        assert!(rep.projector_transport_residual < 1e-8);
    }
}
