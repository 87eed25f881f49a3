//! Sparse multivariate polynomials over [`Rat`].
//!
//! Terms are keyed by exponent multi-indices with trailing zeros trimmed, so
//! a polynomial embeds canonically into any chart with enough variables and
//! zero never carries a spurious variable count. Chart types validate at
//! their constructors that every coefficient function fits the declared
//! number of variables (`max_var`).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::rat::Rat;

/// A polynomial in variables `x1, x2, ...` (0-indexed internally).
///
/// Invariants: no stored zero coefficients; exponent keys carry no trailing
/// zeros, so representation is unique and `==` is semantic equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    terms: BTreeMap<Vec<u32>, Rat>,
}

fn trim(mut exp: Vec<u32>) -> Vec<u32> {
    while exp.last() == Some(&0) {
        exp.pop();
    }
    exp
}

impl Poly {
    pub fn zero() -> Self {
        Poly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Poly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        Poly { terms }
    }

    pub fn from_int(n: i64) -> Self {
        Poly::constant(Rat::from_int(n))
    }

    /// The variable `x_{idx+1}` (0-based index).
    pub fn var(idx: usize) -> Self {
        let mut exp = vec![0u32; idx + 1];
        exp[idx] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(exp, Rat::one());
        Poly { terms }
    }

    /// Builds from raw (exponents, coefficient) pairs, normalizing.
    pub fn from_terms<I: IntoIterator<Item = (Vec<u32>, Rat)>>(it: I) -> Self {
        let mut p = Poly::zero();
        for (exp, c) in it {
            p.add_term(&trim(exp), &c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.is_empty())
    }

    /// The constant coefficient.
    pub fn constant_part(&self) -> Rat {
        self.terms.get(&Vec::new()).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exp: &[u32]) -> Rat {
        self.terms
            .get(&trim(exp.to_vec()))
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    fn add_term(&mut self, exp: &[u32], c: &Rat) {
        if c.is_zero() {
            return;
        }
        let key = trim(exp.to_vec());
        match self.terms.get_mut(&key) {
            Some(existing) => {
                let sum = &*existing + c;
                if sum.is_zero() {
                    self.terms.remove(&key);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(key, c.clone());
            }
        }
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (e.clone(), v * c))
                .collect(),
        }
    }

    /// Formal partial derivative by `x_{var+1}` (0-based).
    pub fn diff(&self, var: usize) -> Poly {
        let mut out = Poly::zero();
        for (exp, c) in &self.terms {
            let e = exp.get(var).copied().unwrap_or(0);
            if e == 0 {
                continue;
            }
            let mut nexp = exp.clone();
            nexp[var] = e - 1;
            out.add_term(&trim(nexp), &(c * &Rat::from_int(e as i64)));
        }
        out
    }

    /// Total degree; 0 for the zero polynomial.
    pub fn total_degree(&self) -> usize {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&x| x as usize).sum())
            .max()
            .unwrap_or(0)
    }

    /// Largest 0-based variable index appearing, `None` for constants.
    pub fn max_var(&self) -> Option<usize> {
        self.terms
            .keys()
            .filter(|e| !e.is_empty())
            .map(|e| e.len() - 1)
            .max()
    }

    /// Degree in the first `p` variables only.
    pub fn leaf_degree(&self, p: usize) -> usize {
        self.terms
            .keys()
            .map(|e| e.iter().take(p).map(|&x| x as usize).sum())
            .max()
            .unwrap_or(0)
    }

    /// Terms whose degree in the first `p` variables is exactly `k`.
    pub fn leaf_component(&self, p: usize, k: usize) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().take(p).map(|&x| x as usize).sum::<usize>() == k)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Terms whose degree in the first `p` variables is at most `k`.
    pub fn leaf_truncate(&self, p: usize, k: usize) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().take(p).map(|&x| x as usize).sum::<usize>() <= k)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Renames `x_{p+1}..` to `x_1..` after checking the first `p` variables
    /// are absent. `None` if some term involves a dropped variable.
    pub fn lower_vars(&self, p: usize) -> Option<Poly> {
        let mut terms = BTreeMap::new();
        for (exp, c) in &self.terms {
            if exp.iter().take(p).any(|&e| e != 0) {
                return None;
            }
            let nexp: Vec<u32> = exp.iter().skip(p).copied().collect();
            terms.insert(trim(nexp), c.clone());
        }
        Some(Poly { terms })
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut out = Poly::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Graded-lexicographic descending term order used for serialization.
    fn sorted_terms(&self) -> Vec<(&Vec<u32>, &Rat)> {
        let mut ts: Vec<_> = self.terms.iter().collect();
        ts.sort_by(|(ea, _), (eb, _)| {
            let da: u64 = ea.iter().map(|&x| x as u64).sum();
            let db: u64 = eb.iter().map(|&x| x as u64).sum();
            db.cmp(&da).then_with(|| {
                let len = ea.len().max(eb.len());
                for i in 0..len {
                    let a = ea.get(i).copied().unwrap_or(0);
                    let b = eb.get(i).copied().unwrap_or(0);
                    match b.cmp(&a) {
                        std::cmp::Ordering::Equal => continue,
                        ord => return ord,
                    }
                }
                std::cmp::Ordering::Equal
            })
        });
        ts
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (exp, c) in &rhs.terms {
            out.add_term(exp, c);
        }
        out
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (exp, c) in &rhs.terms {
            out.add_term(exp, &-c);
        }
        out
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let len = ea.len().max(eb.len());
                let mut exp = vec![0u32; len];
                for i in 0..len {
                    exp[i] = ea.get(i).copied().unwrap_or(0) + eb.get(i).copied().unwrap_or(0);
                }
                out.add_term(&trim(exp), &(ca * cb));
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, exp: &[u32]) -> fmt::Result {
    let mut first = true;
    for (i, &e) in exp.iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        write!(f, "x{}", i + 1)?;
        if e > 1 {
            write!(f, "^{}", e)?;
        }
    }
    Ok(())
}

impl fmt::Display for Poly {
    /// Canonical text form: graded-lex descending, `p/q` coefficients,
    /// explicit `*`, e.g. `3/2*x1^2*x2 - x3`. Round-trips through the parser.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (exp, c)) in self.sorted_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if exp.iter().all(|&e| e == 0) {
                write!(f, "{}", mag)?;
            } else if mag.is_one() {
                write_monomial(f, exp)?;
            } else {
                write!(f, "{}*", mag)?;
                write_monomial(f, exp)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}
