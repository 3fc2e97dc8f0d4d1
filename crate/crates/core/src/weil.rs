//! The Weil algebra W(g), its canonical connection η, and invariant polynomials.
//!
//! Generators of W(g) are `e1..en` (the degree-1 copies `1⊗ξ^i`) and `s1..sn`
//! (the degree-2 copies `ξ^i⊗1`).

use std::collections::BTreeMap;
use std::fmt;

use num::{One, Zero};

use crate::algebra::{q, q_frac, Element, GenTable, Generator, Rational};
use crate::error::{presentation, Error, Result};
use crate::gda::{GVector, GdAlgebra};
use crate::lie::LieAlgebraData;

pub fn weil_algebra(lie: &LieAlgebraData) -> GdAlgebra {
    weil_algebra_with_prefix(lie, "")
}

/// W(g) with generator ids `{prefix}e{i}` and `{prefix}s{i}`.
pub fn weil_algebra_with_prefix(lie: &LieAlgebraData, prefix: &str) -> GdAlgebra {
    let n = lie.dim();
    let mut gens = Vec::with_capacity(2 * n);
    for i in 1..=n {
        gens.push(Generator::new(format!("{prefix}e{i}"), 1));
        gens.push(Generator::new(format!("{prefix}s{i}"), 2));
    }
    let table = GenTable::new(gens).expect("Weil generator ids are distinct");
    let e: Vec<Element> = (1..=n).map(|i| Element::generator_by_id(&table, &format!("{prefix}e{i}")).unwrap()).collect();
    let s: Vec<Element> = (1..=n).map(|i| Element::generator_by_id(&table, &format!("{prefix}s{i}")).unwrap()).collect();
    let idx = |id: String| table.lookup(&id).unwrap() as usize;

    let half = q_frac(1, 2);
    let mut d_images = vec![Element::zero(&table); table.len()];
    for i in 0..n {
        // d e^i = s^i - 1/2 Σ f^i_{jk} e^j e^k
        let mut de = s[i].clone();
        // d s^i = Σ f^i_{jk} s^j e^k
        let mut ds = Element::zero(&table);
        for j in 0..n {
            for k in 0..n {
                let c = lie.f(i, j, k);
                if c.is_zero() {
                    continue;
                }
                de.add_scaled(&(&e[j] * &e[k]), &(-(c * &half)));
                ds.add_scaled(&(&s[j] * &e[k]), c);
            }
        }
        d_images[idx(format!("{prefix}e{}", i + 1))] = de;
        d_images[idx(format!("{prefix}s{}", i + 1))] = ds;
    }
    let mut contractions = Vec::with_capacity(n);
    for j in 0..n {
        let mut im = vec![Element::zero(&table); table.len()];
        im[idx(format!("{prefix}e{}", j + 1))] = Element::one(&table);
        contractions.push(im);
    }
    GdAlgebra::new(table, d_images, vec![(lie.clone(), contractions)]).expect("Weil presentation has correct degrees")
}

/// η = Σ e_i ⊗ X_i in W(g).
pub fn canonical_connection(w: &GdAlgebra) -> GVector {
    canonical_connection_with_prefix(w, "")
}

pub fn canonical_connection_with_prefix(w: &GdAlgebra, prefix: &str) -> GVector {
    let n = w.lie().dim();
    GVector::new((1..=n).map(|i| w.gen(&format!("{prefix}e{i}")).expect("Weil generator")).collect()).unwrap()
}

/// The curvature generators `Σ s_i ⊗ X_i`.
pub fn weil_curvature(w: &GdAlgebra, prefix: &str) -> GVector {
    let n = w.lie().dim();
    GVector::new((1..=n).map(|i| w.gen(&format!("{prefix}s{i}")).expect("Weil generator")).collect()).unwrap()
}

/// A homogeneous polynomial in `ξ^1..ξ^n`, stored as exponent vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantPolynomial {
    dim: usize,
    degree: u32,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl InvariantPolynomial {
    /// Checks homogeneity and invariance under the coadjoint action of `lie`.
    pub fn new(lie: &LieAlgebraData, terms: impl IntoIterator<Item = (Vec<u32>, Rational)>) -> Result<Self> {
        let p = Self::unchecked(lie.dim(), terms)?;
        p.check_invariance(lie)?;
        Ok(p)
    }

    fn unchecked(dim: usize, terms: impl IntoIterator<Item = (Vec<u32>, Rational)>) -> Result<Self> {
        let mut map: BTreeMap<Vec<u32>, Rational> = BTreeMap::new();
        for (exps, c) in terms {
            if exps.len() != dim {
                return Err(Error::Dimension(format!("exponent vector of length {} for dim {dim}", exps.len())));
            }
            *map.entry(exps).or_insert_with(Rational::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        let degrees: Vec<u32> = map.keys().map(|e| e.iter().sum()).collect();
        let degree = degrees.first().copied().unwrap_or(0);
        if degrees.iter().any(|&d| d != degree) {
            return Err(presentation("invariant polynomial is not homogeneous"));
        }
        Ok(InvariantPolynomial { dim, degree, terms: map })
    }

    pub fn one(dim: usize) -> Self {
        Self::unchecked(dim, [(vec![0; dim], Rational::one())]).unwrap()
    }

    /// The linear form `ξ^i` (0-based index); invariant only when `X_i` spans
    /// an abelian direction, checked against `lie`.
    pub fn coordinate(lie: &LieAlgebraData, i: usize) -> Result<Self> {
        let mut e = vec![0; lie.dim()];
        e[i] = 1;
        Self::new(lie, [(e, Rational::one())])
    }

    /// `Σ (ξ^i)^2`.
    pub fn sum_of_squares(lie: &LieAlgebraData) -> Result<Self> {
        let n = lie.dim();
        Self::new(
            lie,
            (0..n).map(|i| {
                let mut e = vec![0; n];
                e[i] = 2;
                (e, Rational::one())
            }),
        )
    }

    /// `B(ξ, ξ)` for the Killing form `B(X_j, X_k) = tr(ad X_j ad X_k)`.
    pub fn killing(lie: &LieAlgebraData) -> Result<Self> {
        let n = lie.dim();
        let mut terms = Vec::new();
        for j in 0..n {
            for k in 0..n {
                let mut b = Rational::zero();
                for i in 0..n {
                    for m in 0..n {
                        b += lie.f(i, j, m) * lie.f(m, k, i);
                    }
                }
                let mut e = vec![0; n];
                e[j] += 1;
                e[k] += 1;
                terms.push((e, b));
            }
        }
        Self::new(lie, terms)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Polynomial degree `k`; the evaluated class has degree `2k`.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn mul(&self, other: &InvariantPolynomial) -> InvariantPolynomial {
        let mut out = Vec::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.push((a.iter().zip(b).map(|(x, y)| x + y).collect(), ca * cb));
            }
        }
        let mut p = Self::unchecked(self.dim, out).expect("product of homogeneous polynomials");
        if p.terms.is_empty() {
            p.degree = self.degree + other.degree;
        }
        p
    }

    /// `Σ_{i,k} f^i_{jk} ξ^k ∂f/∂ξ^i = 0` for every `j`.
    pub fn check_invariance(&self, lie: &LieAlgebraData) -> Result<()> {
        if lie.dim() != self.dim {
            return Err(Error::Dimension(format!("polynomial in {} variables for dim {}", self.dim, lie.dim())));
        }
        let n = self.dim;
        for j in 0..n {
            let mut acc: BTreeMap<Vec<u32>, Rational> = BTreeMap::new();
            for (exps, c) in &self.terms {
                for i in 0..n {
                    if exps[i] == 0 {
                        continue;
                    }
                    for k in 0..n {
                        let f = lie.f(i, j, k);
                        if f.is_zero() {
                            continue;
                        }
                        let mut e = exps.clone();
                        e[i] -= 1;
                        e[k] += 1;
                        *acc.entry(e).or_insert_with(Rational::zero) += c * f * q(exps[i] as i64);
                    }
                }
            }
            if acc.values().any(|v| !v.is_zero()) {
                return Err(Error::CheckFailed(format!("polynomial is not invariant under X_{j}")));
            }
        }
        Ok(())
    }
}

impl fmt::Display for InvariantPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mono: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &x)| x > 0)
                    .map(|(i, &x)| if x == 1 { format!("x{}", i + 1) } else { format!("x{}^{x}", i + 1) })
                    .collect();
                if mono.is_empty() {
                    c.to_string()
                } else {
                    format!("({c})*{}", mono.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Substitutes `ξ^i ↦ omega_i`. Components must be of even degree so the
/// substitution does not depend on the order of factors.
pub fn evaluate_invariant(f: &InvariantPolynomial, omega: &GVector) -> Result<Element> {
    if omega.dim() != f.dim() {
        return Err(Error::Dimension(format!("curvature of dim {} for a polynomial in {} variables", omega.dim(), f.dim())));
    }
    for (i, c) in omega.components().iter().enumerate() {
        if c.degrees().iter().any(|d| d % 2 == 1) {
            return Err(presentation(format!("component {i} has odd degree")));
        }
    }
    let table = omega.component(0).table();
    let mut powers: Vec<Vec<Element>> = omega.components().iter().map(|c| vec![Element::one(table), c.clone()]).collect();
    let mut out = Element::zero(table);
    for (exps, c) in f.terms() {
        let mut acc = Element::one(table);
        for (i, &e) in exps.iter().enumerate() {
            while powers[i].len() <= e as usize {
                let next = &powers[i][powers[i].len() - 1] * &powers[i][1];
                powers[i].push(next);
            }
            acc = &acc * &powers[i][e as usize];
            if acc.is_zero() {
                break;
            }
        }
        out.add_scaled(&acc, c);
    }
    Ok(out)
}
