//! Lie pairs over a point: a finite-dimensional Lie algebra `g` given by
//! rational structure constants together with a subalgebra `J` spanned by the
//! first `q` basis vectors.
//!
//! The quotient `g/J` carries the flat Bott representation
//! `∇ᴶ_j ā = class of [j, a]`. An extension is a bilinear connection
//! `∇: g × g → g` preserving `J` in the second slot whose induced quotient
//! connection restricts to `∇ᴶ` along `J`. The Atiyah cocycle of an extension
//! is `ω(j)(ā)(b̄) = class of R(j,a)b`, and the Atiyah class is decided
//! exactly: either a primitive `φ` with `dφ = ω` is produced, or a Fredholm
//! certificate of unsolvability.

use std::fmt;

use crate::linalg::{linear_solve, LinalgError, SolveOutcome};
use crate::matrix::Mat;
use crate::rat::Rat;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PointError {
    #[error("invalid Lie pair: {0}")]
    InvalidPair(String),
    #[error("connection is not an extension: {0}")]
    NotExtension(String),
    #[error("unsupported form degree {0}")]
    UnsupportedDegree(usize),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl From<LinalgError> for PointError {
    fn from(e: LinalgError) -> Self {
        PointError::Internal(e.to_string())
    }
}

/// A finite-dimensional Lie algebra by structure constants:
/// `[e_i, e_j] = Σ_k c[i][j][k] e_k` (all indices 0-based).
#[derive(Clone, PartialEq)]
pub struct LieAlgebra {
    dim: usize,
    c: Vec<Vec<Vec<Rat>>>,
}

/// One violated axiom instance, reported by [`LieAlgebra::validate`].
#[derive(Debug, Clone, PartialEq)]
pub enum LieViolation {
    /// `c[i][j][k] + c[j][i][k] != 0` (the stored value is the sum).
    Antisymmetry { i: usize, j: usize, k: usize, value: Rat },
    /// Component `k` of the Jacobiator on `(e_i, e_j, e_l)` is nonzero.
    Jacobi { i: usize, j: usize, l: usize, k: usize, value: Rat },
}

impl fmt::Display for LieViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LieViolation::Antisymmetry { i, j, k, value } => write!(
                f,
                "antisymmetry fails: c[{}][{}][{}] + c[{}][{}][{}] = {}",
                i + 1, j + 1, k + 1, j + 1, i + 1, k + 1, value
            ),
            LieViolation::Jacobi { i, j, l, k, value } => write!(
                f,
                "jacobi fails on ({},{},{}) component {}: {}",
                i + 1, j + 1, l + 1, k + 1, value
            ),
        }
    }
}

impl LieAlgebra {
    /// Builds from a raw structure-constant tensor. Only shapes are checked;
    /// axioms are the validator's job.
    pub fn from_structure_constants(dim: usize, c: Vec<Vec<Vec<Rat>>>) -> Result<Self, PointError> {
        if c.len() != dim || c.iter().any(|p| p.len() != dim || p.iter().any(|r| r.len() != dim)) {
            return Err(PointError::Shape(format!(
                "structure constants must form a {dim}x{dim}x{dim} tensor"
            )));
        }
        Ok(LieAlgebra { dim, c })
    }

    /// Builds from brackets `[e_i, e_j] = Σ v e_k` given as `(i, j, k, v)`
    /// with `i < j`; antisymmetric partners are filled in.
    pub fn from_brackets(dim: usize, brackets: &[(usize, usize, usize, Rat)]) -> Self {
        let mut c = vec![vec![vec![Rat::zero(); dim]; dim]; dim];
        for (i, j, k, v) in brackets {
            assert!(i < j && *j < dim && *k < dim, "bad bracket indices");
            c[*i][*j][*k] = &c[*i][*j][*k] + v;
            c[*j][*i][*k] = &c[*j][*i][*k] - v;
        }
        LieAlgebra { dim, c }
    }

    pub fn abelian(dim: usize) -> Self {
        LieAlgebra::from_brackets(dim, &[])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn c(&self, i: usize, j: usize, k: usize) -> &Rat {
        &self.c[i][j][k]
    }

    /// Checks antisymmetry and the Jacobi identity exactly, listing every
    /// violated instance.
    pub fn validate(&self) -> Vec<LieViolation> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in i..self.dim {
                for k in 0..self.dim {
                    let sum = &self.c[i][j][k] + &self.c[j][i][k];
                    if !sum.is_zero() {
                        out.push(LieViolation::Antisymmetry { i, j, k, value: sum });
                    }
                }
            }
        }
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                for l in (j + 1)..self.dim {
                    for k in 0..self.dim {
                        let v = self.jacobiator(i, j, l, k);
                        if !v.is_zero() {
                            out.push(LieViolation::Jacobi { i, j, l, k, value: v });
                        }
                    }
                }
            }
        }
        out
    }

    /// Component `k` of `[[e_i,e_j],e_l] + [[e_j,e_l],e_i] + [[e_l,e_i],e_j]`.
    fn jacobiator(&self, i: usize, j: usize, l: usize, k: usize) -> Rat {
        let mut acc = Rat::zero();
        for m in 0..self.dim {
            acc = &acc + &(&self.c[i][j][m] * &self.c[m][l][k]);
            acc = &acc + &(&self.c[j][l][m] * &self.c[m][i][k]);
            acc = &acc + &(&self.c[l][i][m] * &self.c[m][j][k]);
        }
        acc
    }

    /// Bracket of coefficient vectors (bilinear extension over `Rat`).
    pub fn bracket(&self, a: &[Rat], b: &[Rat]) -> Vec<Rat> {
        assert_eq!(a.len(), self.dim);
        assert_eq!(b.len(), self.dim);
        let mut out = vec![Rat::zero(); self.dim];
        for i in 0..self.dim {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if b[j].is_zero() {
                    continue;
                }
                let f = &a[i] * &b[j];
                for (k, out_k) in out.iter_mut().enumerate() {
                    *out_k = &*out_k + &(&f * &self.c[i][j][k]);
                }
            }
        }
        out
    }
}

impl fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LieAlgebra(dim {})", self.dim)
    }
}

/// A Lie pair `(g, J)` in an adapted basis: `J = span{e_1, ..., e_q}`.
#[derive(Clone, PartialEq, Debug)]
pub struct LiePair {
    alg: LieAlgebra,
    q: usize,
}

impl LiePair {
    pub fn new(alg: LieAlgebra, q: usize) -> Result<Self, PointError> {
        if q > alg.dim() {
            return Err(PointError::Shape(format!(
                "subalgebra rank {q} exceeds dimension {}",
                alg.dim()
            )));
        }
        Ok(LiePair { alg, q })
    }

    pub fn alg(&self) -> &LieAlgebra {
        &self.alg
    }

    pub fn dim(&self) -> usize {
        self.alg.dim()
    }

    pub fn q(&self) -> usize {
        self.q
    }

    /// Dimension of the quotient `g/J`.
    pub fn quotient_dim(&self) -> usize {
        self.alg.dim() - self.q
    }

    /// Closure failures `c[i][j][k] != 0` with `i, j < q <= k`.
    pub fn closure_violations(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.q {
            for j in 0..self.q {
                for k in self.q..self.dim() {
                    if !self.alg.c(i, j, k).is_zero() {
                        out.push((i, j, k));
                    }
                }
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.alg.validate().is_empty() && self.closure_violations().is_empty()
    }

    fn require_valid(&self) -> Result<(), PointError> {
        let v = self.alg.validate();
        if !v.is_empty() {
            return Err(PointError::InvalidPair(format!(
                "{} Lie algebra axiom violation(s), first: {}",
                v.len(),
                v[0]
            )));
        }
        let c = self.closure_violations();
        if !c.is_empty() {
            let (i, j, k) = c[0];
            return Err(PointError::InvalidPair(format!(
                "J is not a subalgebra: c[{}][{}][{}] != 0",
                i + 1, j + 1, k + 1
            )));
        }
        Ok(())
    }

    /// The Bott representation matrices `B_1..B_q` on `g/J`:
    /// `(B_j)[k][l] = c[j][q+l][q+k]`, i.e. column `l` holds the class of
    /// `[e_j, e_{q+l}]`. Flatness is asserted.
    pub fn bott_rep(&self) -> Result<Vec<Mat<Rat>>, PointError> {
        self.require_valid()?;
        let m = self.quotient_dim();
        let reps: Vec<Mat<Rat>> = (0..self.q)
            .map(|j| Mat::from_fn(m, m, |k, l| self.alg.c(j, self.q + l, self.q + k).clone()))
            .collect();
        for j1 in 0..self.q {
            for j2 in (j1 + 1)..self.q {
                let mut lhs: Mat<Rat> = Mat::zeros(m, m);
                for (k, rep) in reps.iter().enumerate().take(self.q) {
                    if !self.alg.c(j1, j2, k).is_zero() {
                        lhs = lhs.add(&rep.scale(self.alg.c(j1, j2, k)));
                    }
                }
                if lhs != reps[j1].commutator(&reps[j2]) {
                    return Err(PointError::Internal(format!(
                        "Bott representation is not flat on (e{}, e{})",
                        j1 + 1, j2 + 1
                    )));
                }
            }
        }
        Ok(reps)
    }

    /// Whether `J` is a naive ideal: `[a, j] ∈ J` for all `a ∈ g`, `j ∈ J`.
    pub fn naive_ideal(&self) -> bool {
        for a in 0..self.dim() {
            for i in 0..self.q {
                for k in self.q..self.dim() {
                    if !self.alg.c(a, i, k).is_zero() {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// The deterministic extension: `∇_{e_j} e_b` is the coordinate lift of
    /// the Bott action for `j <= q < b`, every other value is zero.
    pub fn default_extension(&self) -> PointConnection {
        let n = self.dim();
        let mut gamma = vec![vec![vec![Rat::zero(); n]; n]; n];
        for j in 0..self.q {
            for b in self.q..n {
                for k in self.q..n {
                    gamma[j][b][k] = self.alg.c(j, b, k).clone();
                }
            }
        }
        PointConnection { gamma }
    }

    /// Checks the two extension conditions:
    /// (i) `∇_a j ∈ J` for all `a` — `gamma[a][j][k] = 0` for `j < q <= k`;
    /// (ii) for `j < q <= b` the class of `∇_{e_j} e_b` equals the Bott
    /// action, `gamma[j][b][k] = c[j][b][k]` for `k >= q`.
    pub fn extension_report(&self, conn: &PointConnection) -> ExtensionCheck {
        let n = self.dim();
        let mut off_subalgebra = Vec::new();
        let mut bott_mismatch = Vec::new();
        if conn.dim() != n {
            return ExtensionCheck {
                shape_ok: false,
                off_subalgebra,
                bott_mismatch,
            };
        }
        for a in 0..n {
            for j in 0..self.q {
                for k in self.q..n {
                    if !conn.gamma[a][j][k].is_zero() {
                        off_subalgebra.push((a, j, k));
                    }
                }
            }
        }
        for j in 0..self.q {
            for b in self.q..n {
                for k in self.q..n {
                    if &conn.gamma[j][b][k] != self.alg.c(j, b, k) {
                        bott_mismatch.push((j, b, k));
                    }
                }
            }
        }
        ExtensionCheck {
            shape_ok: true,
            off_subalgebra,
            bott_mismatch,
        }
    }

    pub fn is_extension(&self, conn: &PointConnection) -> bool {
        self.extension_report(conn).is_extension()
    }

    fn require_extension(&self, conn: &PointConnection) -> Result<(), PointError> {
        let rep = self.extension_report(conn);
        if !rep.shape_ok {
            return Err(PointError::Shape("connection dimension mismatch".into()));
        }
        if !rep.is_extension() {
            return Err(PointError::NotExtension(rep.describe()));
        }
        Ok(())
    }

    /// Atiyah cocycle of an extension:
    /// `ω(e_j)(ē_a)(ē_b) = class of (∇_j ∇_a − ∇_a ∇_j − ∇_{[e_j, e_a]}) e_b`.
    pub fn atiyah_cocycle(&self, conn: &PointConnection) -> Result<CeForm, PointError> {
        self.require_valid()?;
        self.require_extension(conn)?;
        let n = self.dim();
        let q = self.q;
        let m = n - q;
        let mut form = CeForm::zero(1, q, m);
        for j in 0..q {
            let cube = form.comp_mut(j);
            for ai in 0..m {
                let a = q + ai;
                for bi in 0..m {
                    let b = q + bi;
                    let basis = unit_vec(n, b);
                    let term1 = conn.apply(j, &conn.apply(a, &basis));
                    let term2 = conn.apply(a, &conn.apply(j, &basis));
                    // ∇ along [e_j, e_a] expanded by bilinearity
                    let mut term3 = vec![Rat::zero(); n];
                    for i in 0..n {
                        let coeff = self.alg.c(j, a, i);
                        if coeff.is_zero() {
                            continue;
                        }
                        let v = conn.apply(i, &basis);
                        for (t3, vk) in term3.iter_mut().zip(v.iter()) {
                            *t3 = &*t3 + &(coeff * vk);
                        }
                    }
                    for k in 0..m {
                        let val = &(&term1[q + k] - &term2[q + k]) - &term3[q + k];
                        cube.set(ai, bi, k, val);
                    }
                }
            }
        }
        Ok(form)
    }

    /// Chevalley-Eilenberg differential of forms valued in
    /// `Hom(g/J, End(g/J))`, degrees 0 and 1 only.
    pub fn ce_differential(&self, form: &CeForm) -> Result<CeForm, PointError> {
        if form.degree > 1 {
            return Err(PointError::UnsupportedDegree(form.degree));
        }
        self.require_valid()?;
        let q = self.q;
        let m = self.quotient_dim();
        if form.q != q || form.m != m {
            return Err(PointError::Shape("form does not match pair shape".into()));
        }
        let bott = self.bott_rep()?;
        match form.degree {
            0 => {
                let mut out = CeForm::zero(1, q, m);
                for j in 0..q {
                    *out.comp_mut(j) = nabla_hom(&bott[j], form.comp(0));
                }
                Ok(out)
            }
            1 => {
                let mut out = CeForm::zero(2, q, m);
                for j1 in 0..q {
                    for j2 in (j1 + 1)..q {
                        let mut cube = nabla_hom(&bott[j1], form.comp(j2))
                            .sub(&nabla_hom(&bott[j2], form.comp(j1)));
                        for k in 0..q {
                            let coeff = self.alg.c(j1, j2, k);
                            if !coeff.is_zero() {
                                cube = cube.sub(&form.comp(k).scale(coeff));
                            }
                        }
                        *out.comp_pair_mut(j1, j2) = cube;
                    }
                }
                Ok(out)
            }
            _ => unreachable!(),
        }
    }

    /// Difference 0-form of two extensions, `φ̄(ā)(b̄) = class of (∇−∇')(σā, b)`.
    pub fn difference_form(
        &self,
        c1: &PointConnection,
        c2: &PointConnection,
    ) -> Result<CeForm, PointError> {
        self.require_extension(c1)?;
        self.require_extension(c2)?;
        let q = self.q;
        let m = self.quotient_dim();
        let mut out = CeForm::zero(0, q, m);
        let cube = out.comp_mut(0);
        for a in 0..m {
            for b in 0..m {
                for k in 0..m {
                    let v = &c1.gamma[q + a][q + b][q + k] - &c2.gamma[q + a][q + b][q + k];
                    cube.set(a, b, k, v);
                }
            }
        }
        Ok(out)
    }

    /// Assembles the exact linear system `dφ = ω` over degree-0 forms.
    /// Returns `(A, b)` with unknowns indexed like [`Cube`] entries.
    pub fn atiyah_system(&self, omega: &CeForm) -> Result<(Mat<Rat>, Vec<Rat>), PointError> {
        if omega.degree != 1 {
            return Err(PointError::UnsupportedDegree(omega.degree));
        }
        let q = self.q;
        let m = self.quotient_dim();
        let unknowns = m * m * m;
        let rows = q * unknowns;
        let mut a: Mat<Rat> = Mat::zeros(rows, unknowns);
        for u in 0..unknowns {
            let mut basis_form = CeForm::zero(0, q, m);
            basis_form.comp_mut(0).v[u] = Rat::one();
            let image = self.ce_differential(&basis_form)?;
            for j in 0..q {
                for w in 0..unknowns {
                    a.set(j * unknowns + w, u, image.comp(j).v[w].clone());
                }
            }
        }
        let mut b = Vec::with_capacity(rows);
        for j in 0..q {
            b.extend(omega.comp(j).v.iter().cloned());
        }
        Ok((a, b))
    }

    /// Decides vanishing of the Atiyah class exactly: computes the cocycle of
    /// the default extension, asserts closedness, and solves `dφ = ω`.
    pub fn atiyah_class(&self) -> Result<AtiyahVerdict, PointError> {
        self.require_valid()?;
        let conn = self.default_extension();
        let omega = self.atiyah_cocycle(&conn)?;
        let closed = self.ce_differential(&omega)?;
        if !closed.is_zero() {
            return Err(PointError::Internal(
                "cocycle of the default extension is not closed".into(),
            ));
        }
        let (a, b) = self.atiyah_system(&omega)?;
        match linear_solve(&a, &b)? {
            SolveOutcome::Solution(x) => {
                let q = self.q;
                let m = self.quotient_dim();
                let mut primitive = CeForm::zero(0, q, m);
                primitive.comp_mut(0).v = x;
                let check = self.ce_differential(&primitive)?;
                if check != omega {
                    return Err(PointError::Internal(
                        "solver returned a non-primitive".into(),
                    ));
                }
                Ok(AtiyahVerdict::Vanishes { primitive })
            }
            SolveOutcome::NoSolution { certificate } => {
                Ok(AtiyahVerdict::Nonzero { certificate })
            }
        }
    }
}

/// `(∇ᴴᵒᵐ_B F)(a,b) = B·F(a,b) − F(B a, b) − F(a, B b)` for one Bott matrix.
fn nabla_hom(b: &Mat<Rat>, f: &Cube) -> Cube {
    let m = f.m;
    let mut out = Cube::zero(m);
    for a in 0..m {
        for bb in 0..m {
            for k in 0..m {
                let mut acc = Rat::zero();
                for s in 0..m {
                    acc = &acc + &(b.get(k, s) * f.get(a, bb, s));
                    acc = &acc - &(b.get(s, a) * f.get(s, bb, k));
                    acc = &acc - &(b.get(s, bb) * f.get(a, s, k));
                }
                out.set(a, bb, k, acc);
            }
        }
    }
    out
}

fn unit_vec(n: usize, i: usize) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); n];
    v[i] = Rat::one();
    v
}

/// A bilinear connection table `∇_{e_a} e_b = Σ_k gamma[a][b][k] e_k`.
#[derive(Clone, PartialEq, Debug)]
pub struct PointConnection {
    gamma: Vec<Vec<Vec<Rat>>>,
}

impl PointConnection {
    pub fn new(gamma: Vec<Vec<Vec<Rat>>>) -> Self {
        let n = gamma.len();
        assert!(
            gamma.iter().all(|p| p.len() == n && p.iter().all(|r| r.len() == n)),
            "connection table must be n x n x n"
        );
        PointConnection { gamma }
    }

    pub fn zero(n: usize) -> Self {
        PointConnection {
            gamma: vec![vec![vec![Rat::zero(); n]; n]; n],
        }
    }

    pub fn dim(&self) -> usize {
        self.gamma.len()
    }

    pub fn get(&self, a: usize, b: usize, k: usize) -> &Rat {
        &self.gamma[a][b][k]
    }

    pub fn set(&mut self, a: usize, b: usize, k: usize, v: Rat) {
        self.gamma[a][b][k] = v;
    }

    /// `∇_{e_a}` applied to a coefficient vector.
    fn apply(&self, a: usize, v: &[Rat]) -> Vec<Rat> {
        let n = self.dim();
        let mut out = vec![Rat::zero(); n];
        for b in 0..n {
            if v[b].is_zero() {
                continue;
            }
            for (k, out_k) in out.iter_mut().enumerate() {
                *out_k = &*out_k + &(&v[b] * &self.gamma[a][b][k]);
            }
        }
        out
    }
}

/// Detailed result of the extension check.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtensionCheck {
    pub shape_ok: bool,
    /// `(a, j, k)` with `gamma[a][j][k] != 0`, `j < q <= k`.
    pub off_subalgebra: Vec<(usize, usize, usize)>,
    /// `(j, b, k)` where the quotient class differs from the Bott action.
    pub bott_mismatch: Vec<(usize, usize, usize)>,
}

impl ExtensionCheck {
    pub fn is_extension(&self) -> bool {
        self.shape_ok && self.off_subalgebra.is_empty() && self.bott_mismatch.is_empty()
    }

    fn describe(&self) -> String {
        if let Some((a, j, k)) = self.off_subalgebra.first() {
            format!("∇_e{} e{} leaves J (component e{})", a + 1, j + 1, k + 1)
        } else if let Some((j, b, k)) = self.bott_mismatch.first() {
            format!(
                "quotient of ∇_e{} e{} differs from the Bott action at e{}",
                j + 1, b + 1, k + 1
            )
        } else {
            "ok".into()
        }
    }
}

/// Dense storage for a bilinear map `(g/J) × (g/J) → g/J`.
#[derive(Clone, PartialEq, Debug)]
pub struct Cube {
    m: usize,
    v: Vec<Rat>,
}

impl Cube {
    pub fn zero(m: usize) -> Self {
        Cube {
            m,
            v: vec![Rat::zero(); m * m * m],
        }
    }

    fn idx(&self, a: usize, b: usize, k: usize) -> usize {
        (a * self.m + b) * self.m + k
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn get(&self, a: usize, b: usize, k: usize) -> &Rat {
        &self.v[self.idx(a, b, k)]
    }

    pub fn set(&mut self, a: usize, b: usize, k: usize, val: Rat) {
        let i = self.idx(a, b, k);
        self.v[i] = val;
    }

    pub fn is_zero(&self) -> bool {
        self.v.iter().all(Rat::is_zero)
    }

    pub fn add(&self, other: &Cube) -> Cube {
        assert_eq!(self.m, other.m);
        Cube {
            m: self.m,
            v: self.v.iter().zip(&other.v).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Cube) -> Cube {
        assert_eq!(self.m, other.m);
        Cube {
            m: self.m,
            v: self.v.iter().zip(&other.v).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, s: &Rat) -> Cube {
        Cube {
            m: self.m,
            v: self.v.iter().map(|a| a * s).collect(),
        }
    }

    pub fn entries(&self) -> &[Rat] {
        &self.v
    }
}

/// A Chevalley-Eilenberg form on `J` valued in `Hom(g/J, End(g/J))`.
///
/// Degree 0 stores one [`Cube`]; degree 1 stores one per `j < q`; degree 2
/// stores one per pair `j1 < j2` in lexicographic order (antisymmetry is
/// implicit in the indexing).
#[derive(Clone, PartialEq, Debug)]
pub struct CeForm {
    degree: usize,
    q: usize,
    m: usize,
    comps: Vec<Cube>,
}

/// Number of ordered index tuples for a degree on `q` generators.
fn comp_count(degree: usize, q: usize) -> usize {
    match degree {
        0 => 1,
        1 => q,
        2 => q * q.saturating_sub(1) / 2,
        d => panic!("unsupported form degree {d}"),
    }
}

/// Position of `(j1, j2)`, `j1 < j2`, in lexicographic pair order.
pub fn pair_index(q: usize, j1: usize, j2: usize) -> usize {
    assert!(j1 < j2 && j2 < q);
    j1 * q - j1 * (j1 + 1) / 2 + (j2 - j1 - 1)
}

impl CeForm {
    pub fn zero(degree: usize, q: usize, m: usize) -> Self {
        CeForm {
            degree,
            q,
            m,
            comps: vec![Cube::zero(m); comp_count(degree, q)],
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn comp(&self, i: usize) -> &Cube {
        &self.comps[i]
    }

    pub fn comp_mut(&mut self, i: usize) -> &mut Cube {
        &mut self.comps[i]
    }

    pub fn comp_pair(&self, j1: usize, j2: usize) -> &Cube {
        self.comp(pair_index(self.q, j1, j2))
    }

    pub fn comp_pair_mut(&mut self, j1: usize, j2: usize) -> &mut Cube {
        let i = pair_index(self.q, j1, j2);
        self.comp_mut(i)
    }

    pub fn comps(&self) -> &[Cube] {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Cube::is_zero)
    }

    pub fn sub(&self, other: &CeForm) -> CeForm {
        assert_eq!((self.degree, self.q, self.m), (other.degree, other.q, other.m));
        CeForm {
            degree: self.degree,
            q: self.q,
            m: self.m,
            comps: self
                .comps
                .iter()
                .zip(&other.comps)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }
}

/// Exact decision on the Atiyah class of a Lie pair over a point.
#[derive(Clone, PartialEq, Debug)]
pub enum AtiyahVerdict {
    /// The class vanishes; a verified primitive `φ` with `dφ = ω` is attached.
    Vanishes { primitive: CeForm },
    /// The class is nonzero; the certificate `y` satisfies `yᵀA = 0`,
    /// `yᵀb != 0` for the assembled system `(A, b)`.
    Nonzero { certificate: Vec<Rat> },
}

impl AtiyahVerdict {
    pub fn vanishes(&self) -> bool {
        matches!(self, AtiyahVerdict::Vanishes { .. })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rat {
        Rat::from_int(n)
    }

    /// aff(1): [e1, e2] = e2.
    fn aff1() -> LiePair {
        let alg = LieAlgebra::from_brackets(2, &[(0, 1, 1, r(1))]);
        LiePair::new(alg, 1).unwrap()
    }

    /// Heisenberg reordered so the center comes first: [e2, e3] = e1.
    fn heisenberg_center() -> LiePair {
        let alg = LieAlgebra::from_brackets(3, &[(1, 2, 0, r(1))]);
        LiePair::new(alg, 1).unwrap()
    }

    /// Heisenberg in the standard order: [e1, e2] = e3, J = span{e1}.
    fn heisenberg_span_e1() -> LiePair {
        let alg = LieAlgebra::from_brackets(3, &[(0, 1, 2, r(1))]);
        LiePair::new(alg, 1).unwrap()
    }

    /// sl2 with its Borel: [e1,e2] = -e2, [e1,e3] = e3, [e2,e3] = e1,
    /// J = span{e1, e2}.
    fn sl2_borel() -> LiePair {
        let alg = LieAlgebra::from_brackets(
            3,
            &[(0, 1, 1, r(-1)), (0, 2, 2, r(1)), (1, 2, 0, r(1))],
        );
        LiePair::new(alg, 2).unwrap()
    }

    #[test]
    fn validate_passes_on_known_algebras() {
        assert!(LieAlgebra::abelian(3).validate().is_empty());
        assert!(aff1().alg().validate().is_empty());
        assert!(heisenberg_center().alg().validate().is_empty());
        assert!(sl2_borel().alg().validate().is_empty());
    }

    #[test]
    fn validate_reports_jacobi_violation() {
        // [e1,e2] = e3, [e1,e3] = e1, [e2,e3] = 0: the Jacobiator on
        // (e1,e2,e3) is -e3.
        let alg = LieAlgebra::from_brackets(3, &[(0, 1, 2, r(1)), (0, 2, 0, r(1))]);
        let violations = alg.validate();
        assert_eq!(
            violations,
            vec![LieViolation::Jacobi {
                i: 0,
                j: 1,
                l: 2,
                k: 2,
                value: r(-1)
            }]
        );
    }

    #[test]
    fn bott_rep_values() {
        // aff(1): [e1, e2] = e2 gives B_1 = [1] on the quotient line.
        let b = aff1().bott_rep().unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].get(0, 0), &r(1));

        // abelian: all zero
        let ab = LiePair::new(LieAlgebra::abelian(4), 2).unwrap();
        assert!(ab.bott_rep().unwrap().iter().all(Mat::is_zero));

        // the center acts trivially
        let hb = heisenberg_center().bott_rep().unwrap();
        assert!(hb[0].is_zero());

        // non-central span{e1} in Heisenberg: e2 -> e3, e3 -> 0
        let h = heisenberg_span_e1().bott_rep().unwrap();
        assert_eq!(h[0].get(1, 0), &r(1));
        assert_eq!(h[0].get(0, 0), &r(0));
        assert_eq!(h[0].get(0, 1), &r(0));
        assert_eq!(h[0].get(1, 1), &r(0));
    }

    #[test]
    fn bott_rep_rejects_non_subalgebra() {
        // J = span{e1} with [e1, e2] landing on e2 is fine, but J = span{e2}
        // adapted wrongly: use the Heisenberg pair with q = 2 where
        // [e1,e2] = e3 leaves span{e1,e2}.
        let alg = LieAlgebra::from_brackets(3, &[(0, 1, 2, r(1))]);
        let pair = LiePair::new(alg, 2).unwrap();
        assert!(matches!(pair.bott_rep(), Err(PointError::InvalidPair(_))));
    }

    #[test]
    fn default_extension_matches_rule() {
        let pair = aff1();
        let conn = pair.default_extension();
        assert_eq!(conn.get(0, 1, 1), &r(1));
        let mut total_nonzero = 0;
        for a in 0..2 {
            for b in 0..2 {
                for k in 0..2 {
                    if !conn.get(a, b, k).is_zero() {
                        total_nonzero += 1;
                    }
                }
            }
        }
        assert_eq!(total_nonzero, 1);
        assert!(pair.is_extension(&conn));

        // abelian and central cases are identically zero
        let ab = LiePair::new(LieAlgebra::abelian(3), 1).unwrap();
        assert_eq!(ab.default_extension(), PointConnection::zero(3));
        assert_eq!(
            heisenberg_center().default_extension(),
            PointConnection::zero(3)
        );
    }

    #[test]
    fn extension_check_catches_violations() {
        let pair = aff1();
        // sending e1 (in J) off J under ∇_{e2}
        let mut bad = pair.default_extension();
        bad.set(1, 0, 1, r(1));
        let rep = pair.extension_report(&bad);
        assert_eq!(rep.off_subalgebra, vec![(1, 0, 1)]);
        assert!(!rep.is_extension());

        // values into J on quotient directions are allowed
        let mut ok = pair.default_extension();
        ok.set(1, 1, 0, r(5));
        assert!(pair.is_extension(&ok));
    }

    #[test]
    fn aff1_cocycle_of_perturbed_extension() {
        // ∇_{e2} e2 = δ e2 with δ = 3/5 gives ω(e1)(ē2)(ē2) = -3/5.
        let pair = aff1();
        let delta = Rat::new(3, 5);
        let mut conn = pair.default_extension();
        conn.set(1, 1, 1, delta.clone());
        let omega = pair.atiyah_cocycle(&conn).unwrap();
        assert_eq!(omega.comp(0).get(0, 0, 0), &-&delta);
    }

    #[test]
    fn zero_cocycles() {
        let ab = LiePair::new(LieAlgebra::abelian(3), 1).unwrap();
        let omega = ab.atiyah_cocycle(&ab.default_extension()).unwrap();
        assert!(omega.is_zero());

        let h = heisenberg_center();
        let omega = h.atiyah_cocycle(&h.default_extension()).unwrap();
        assert!(omega.is_zero());
    }

    #[test]
    fn differential_on_zero_forms() {
        // aff(1), φ(ē2)(ē2) = c: (dφ)(e1)(ē2)(ē2) = -c.
        let pair = aff1();
        let c = Rat::new(2, 7);
        let mut phi = CeForm::zero(0, 1, 1);
        phi.comp_mut(0).set(0, 0, 0, c.clone());
        let d = pair.ce_differential(&phi).unwrap();
        assert_eq!(d.comp(0).get(0, 0, 0), &-&c);

        // abelian: everything dies
        let ab = LiePair::new(LieAlgebra::abelian(3), 1).unwrap();
        let mut phi = CeForm::zero(0, 1, 2);
        phi.comp_mut(0).set(0, 1, 1, r(4));
        assert!(ab.ce_differential(&phi).unwrap().is_zero());
    }

    #[test]
    fn differential_rejects_degree_two() {
        let pair = sl2_borel();
        let two_form = CeForm::zero(2, 2, 1);
        assert!(matches!(
            pair.ce_differential(&two_form),
            Err(PointError::UnsupportedDegree(2))
        ));
    }

    #[test]
    fn atiyah_class_vanishing_cases() {
        // Heisenberg center (a naive ideal): vanishes with primitive 0.
        let h = heisenberg_center();
        assert!(h.naive_ideal());
        match h.atiyah_class().unwrap() {
            AtiyahVerdict::Vanishes { primitive } => assert!(primitive.is_zero()),
            v => panic!("expected vanishing, got {v:?}"),
        }

        // aff(1): not a naive ideal, class still vanishes. The default
        // extension has ω = 0, so the primitive is 0 as well.
        let pair = aff1();
        assert!(!pair.naive_ideal());
        assert!(pair.atiyah_class().unwrap().vanishes());
    }

    #[test]
    fn aff1_perturbed_cocycle_has_primitive() {
        // dφ = ω with ω(e1)(ē2)(ē2) = -δ is solved by φ(ē2)(ē2) = δ.
        let pair = aff1();
        let delta = Rat::new(3, 5);
        let mut conn = pair.default_extension();
        conn.set(1, 1, 1, delta.clone());
        let omega = pair.atiyah_cocycle(&conn).unwrap();
        let (a, b) = pair.atiyah_system(&omega).unwrap();
        match linear_solve(&a, &b).unwrap() {
            SolveOutcome::Solution(x) => assert_eq!(x, vec![delta]),
            other => panic!("expected solution, got {other:?}"),
        }
    }

    #[test]
    fn sl2_borel_class_is_nonzero() {
        let pair = sl2_borel();
        let conn = pair.default_extension();
        let omega = pair.atiyah_cocycle(&conn).unwrap();
        // ω(e1) = 0, ω(e2)(ē3)(ē3) = -1
        assert!(omega.comp(0).is_zero());
        assert_eq!(omega.comp(1).get(0, 0, 0), &r(-1));
        match pair.atiyah_class().unwrap() {
            AtiyahVerdict::Nonzero { certificate } => {
                assert_eq!(certificate, vec![r(0), r(1)]);
            }
            v => panic!("expected nonzero class, got {v:?}"),
        }
    }

    #[test]
    fn difference_of_extensions_is_exact() {
        let pair = aff1();
        let c1 = pair.default_extension();
        let mut c2 = pair.default_extension();
        c2.set(1, 1, 1, Rat::new(3, 5));
        c2.set(1, 1, 0, r(2));
        let w1 = pair.atiyah_cocycle(&c1).unwrap();
        let w2 = pair.atiyah_cocycle(&c2).unwrap();
        let phi = pair.difference_form(&c1, &c2).unwrap();
        let dphi = pair.ce_differential(&phi).unwrap();
        assert_eq!(w1.sub(&w2), dphi);
    }

    #[test]
    fn naive_ideal_examples() {
        assert!(heisenberg_center().naive_ideal());
        assert!(!aff1().naive_ideal());
        assert!(LiePair::new(LieAlgebra::abelian(4), 2).unwrap().naive_ideal());
    }
}
