//! Dense complex matrix helpers: unitarity checks, ranks, null spaces,
//! commutants and generated algebras.

use nalgebra::{Complex, DMatrix, DVector};

pub type C64 = Complex<f64>;
pub type CMatrix = DMatrix<C64>;

/// Relative singular-value cutoff used for ranks and null spaces.
pub const RANK_TOL: f64 = 1e-9;

pub fn c(re: f64, im: f64) -> C64 {
    Complex::new(re, im)
}

/// `e^{iθ}`.
pub fn phase(theta: f64) -> C64 {
    Complex::from_polar(1.0, theta)
}

pub fn identity(n: usize) -> CMatrix {
    CMatrix::identity(n, n)
}

pub fn scalar_matrix(n: usize, s: C64) -> CMatrix {
    CMatrix::identity(n, n) * s
}

/// Largest entrywise modulus of `a - b`.
pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    if a.shape() != b.shape() {
        return f64::INFINITY;
    }
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

pub fn is_unitary(m: &CMatrix, tol: f64) -> bool {
    m.is_square() && max_abs_diff(&(m.adjoint() * m), &identity(m.nrows())) <= tol
}

pub fn is_identity(m: &CMatrix, tol: f64) -> bool {
    m.is_square() && max_abs_diff(m, &identity(m.nrows())) <= tol
}

/// Pads `m` with zero rows so that a thin SVD yields a full right basis.
fn padded(m: &CMatrix) -> CMatrix {
    let (r, cols) = m.shape();
    if r >= cols {
        return m.clone();
    }
    let mut out = CMatrix::zeros(cols, cols);
    out.view_mut((0, 0), (r, cols)).copy_from(m);
    out
}

fn cutoff(sv: &DVector<f64>, tol: f64) -> f64 {
    let max = sv.iter().cloned().fold(0.0, f64::max);
    tol * max.max(1.0)
}

pub fn rank(m: &CMatrix, tol: f64) -> usize {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0;
    }
    let svd = padded(m).svd(false, false);
    let cut = cutoff(&svd.singular_values, tol);
    svd.singular_values.iter().filter(|s| **s > cut).count()
}

/// Orthonormal basis of `{x : m x = 0}`.
pub fn null_space(m: &CMatrix, tol: f64) -> Vec<DVector<C64>> {
    let cols = m.ncols();
    if cols == 0 {
        return Vec::new();
    }
    if m.nrows() == 0 {
        return (0..cols)
            .map(|k| {
                let mut v = DVector::zeros(cols);
                v[k] = c(1.0, 0.0);
                v
            })
            .collect();
    }
    let svd = padded(m).svd(false, true);
    let cut = cutoff(&svd.singular_values, tol);
    let v_t = svd.v_t.expect("requested V^T");
    svd.singular_values.iter().enumerate().filter(|(_, s)| **s <= cut).map(|(k, _)| v_t.row(k).adjoint()).collect()
}

/// Column-major vectorization.
pub fn vectorize(m: &CMatrix) -> DVector<C64> {
    DVector::from_iterator(m.len(), m.iter().cloned())
}

pub fn unvectorize(v: &DVector<C64>, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_iterator(rows, cols, v.iter().cloned())
}

/// Rows of the linear system `X U - U X = 0` acting on `vec(X)`.
fn commutation_rows(u: &CMatrix) -> CMatrix {
    let n = u.nrows();
    let id = identity(n);
    // vec(UX) = (I ⊗ U) vec X, vec(XU) = (Uᵀ ⊗ I) vec X
    id.kronecker(u) - u.transpose().kronecker(&id)
}

fn stack(blocks: &[CMatrix], cols: usize) -> CMatrix {
    let rows: usize = blocks.iter().map(|b| b.nrows()).sum();
    let mut out = CMatrix::zeros(rows, cols);
    let mut at = 0;
    for b in blocks {
        out.view_mut((at, 0), (b.nrows(), cols)).copy_from(b);
        at += b.nrows();
    }
    out
}

/// Basis of the commutant `{X : X U_i = U_i X}` of a set of square matrices.
pub fn commutant_basis(mats: &[CMatrix]) -> Vec<CMatrix> {
    let Some(first) = mats.first() else {
        return Vec::new();
    };
    let n = first.nrows();
    let blocks: Vec<CMatrix> = mats.iter().map(commutation_rows).collect();
    null_space(&stack(&blocks, n * n), RANK_TOL).iter().map(|v| unvectorize(v, n, n)).collect()
}

/// Complex dimension of the commutant of `mats`.
pub fn commutant_dimension(mats: &[CMatrix]) -> usize {
    let Some(first) = mats.first() else {
        return 0;
    };
    let n = first.nrows();
    let blocks: Vec<CMatrix> = mats.iter().map(commutation_rows).collect();
    n * n - rank(&stack(&blocks, n * n), RANK_TOL)
}

/// Linear span tracker over vectorized matrices (Gram-Schmidt with reorthogonalization).
struct Span {
    basis: Vec<DVector<C64>>,
}

impl Span {
    fn insert(&mut self, v: DVector<C64>) -> bool {
        let scale = v.norm().max(1.0);
        let mut w = v;
        for _ in 0..2 {
            for b in &self.basis {
                let proj = b.dotc(&w);
                w -= b * proj;
            }
        }
        let norm = w.norm();
        if norm <= RANK_TOL * scale {
            return false;
        }
        self.basis.push(w / C64::from(norm));
        true
    }
}

/// Basis of the unital algebra generated by `gens` (and their adjoints), obtained
/// by closing under products until the span stops growing. Returns the basis and
/// the number of multiplication rounds performed.
pub fn algebra_basis(gens: &[CMatrix], max_rounds: usize) -> (Vec<CMatrix>, usize) {
    let Some(first) = gens.first() else {
        return (Vec::new(), 0);
    };
    let n = first.nrows();
    let mut span = Span { basis: Vec::new() };
    let mut mats = Vec::new();
    let mut letters: Vec<CMatrix> = gens.to_vec();
    letters.extend(gens.iter().map(|g| g.adjoint()));
    span.insert(vectorize(&identity(n)));
    mats.push(identity(n));
    let mut frontier = mats.clone();
    let mut rounds = 0;
    while !frontier.is_empty() && rounds < max_rounds.max(n * n) {
        rounds += 1;
        let mut next = Vec::new();
        for m in &frontier {
            for g in &letters {
                let p = g * m;
                if span.insert(vectorize(&p)) {
                    mats.push(p.clone());
                    next.push(p);
                }
            }
        }
        frontier = next;
    }
    (mats, rounds)
}

/// Dimension of `alg ∩ {gens}'`, the center of the algebra spanned by `alg`
/// when `gens` generate it.
pub fn center_dimension(alg: &[CMatrix], gens: &[CMatrix]) -> usize {
    if alg.is_empty() {
        return 0;
    }
    let n = alg[0].nrows();
    // unknown coefficients c_k of X = Σ c_k B_k; constraint Σ c_k [B_k, U] = 0
    let mut blocks = Vec::new();
    for u in gens {
        let mut block = CMatrix::zeros(n * n, alg.len());
        for (k, b) in alg.iter().enumerate() {
            let comm = b * u - u * b;
            block.set_column(k, &vectorize(&comm));
        }
        blocks.push(block);
    }
    alg.len() - rank(&stack(&blocks, alg.len()), RANK_TOL)
}
