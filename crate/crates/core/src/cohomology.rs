//! Cohomology of total complexes in a finite window.

use std::collections::HashMap;
use std::hash::Hash;

use num::{One, Zero};

use crate::algebra::{degree_window_basis, Element, Monomial, Rational};
use crate::error::{Error, Result};
use crate::simplicial::{BigradedElement, SimplicialGda};
use crate::linalg::SparseMatrix;

/// A cochain complex presented by a finite basis in each degree of a window.
pub trait TotalComplex {
    type Cochain: Clone;
    type Key: Clone + Eq + Hash;

    /// A basis of the cochains of `degree`. Must fail with
    /// [`Error::WindowIncomplete`] when the window cannot represent them.
    fn basis(&self, degree: u32) -> Result<Vec<Self::Cochain>>;

    fn delta(&self, x: &Self::Cochain) -> Self::Cochain;

    /// Coordinates in an ambient space in which every basis is expressed.
    fn coordinates(&self, x: &Self::Cochain) -> Vec<(Self::Key, Rational)>;

    /// `Σ c_i b_i`.
    fn combine(&self, coeffs: &[Rational], basis: &[Self::Cochain]) -> Self::Cochain;
}

#[derive(Clone, Debug)]
pub struct CohomologyWindow<C> {
    pub degree: u32,
    pub dimension: usize,
    pub cocycle_dimension: usize,
    pub coboundary_rank: usize,
    pub representatives: Vec<C>,
}

/// Assigns row indices to ambient keys.
struct Rows<K> {
    index: HashMap<K, usize>,
}

impl<K: Clone + Eq + Hash> Rows<K> {
    fn new() -> Self {
        Rows { index: HashMap::new() }
    }

    fn row(&mut self, k: &K) -> usize {
        let next = self.index.len();
        *self.index.entry(k.clone()).or_insert(next)
    }

    fn len(&self) -> usize {
        self.index.len()
    }
}

fn column_matrix<K: Clone + Eq + Hash>(rows: &mut Rows<K>, cols: &[Vec<(K, Rational)>]) -> Vec<Vec<(usize, Rational)>> {
    cols.iter().map(|c| c.iter().map(|(k, v)| (rows.row(k), v.clone())).collect()).collect()
}

fn to_matrix(n_rows: usize, cols: &[Vec<(usize, Rational)>]) -> SparseMatrix {
    let mut m = SparseMatrix::new(n_rows, cols.len());
    for (j, col) in cols.iter().enumerate() {
        for (i, v) in col {
            m.add_to(*i, j, v);
        }
    }
    m
}

/// `ker δ / im δ` in the given degree.
pub fn cohomology_window<C: TotalComplex>(c: &C, degree: u32) -> Result<CohomologyWindow<C::Cochain>> {
    let basis = c.basis(degree)?;
    let lower = if degree == 0 { Vec::new() } else { c.basis(degree - 1)? };

    // kernel of δ on the span of `basis`
    let mut out_rows = Rows::new();
    let images: Vec<_> = basis.iter().map(|b| c.coordinates(&c.delta(b))).collect();
    let cols = column_matrix(&mut out_rows, &images);
    let kernel = to_matrix(out_rows.len(), &cols).kernel();

    // coboundaries, then greedy complement inside the cocycles
    let mut rows = Rows::new();
    let bnd: Vec<_> = lower.iter().map(|b| c.coordinates(&c.delta(b))).collect();
    let mut cols = column_matrix(&mut rows, &bnd);
    let basis_coords: Vec<_> = basis.iter().map(|b| c.coordinates(b)).collect();
    let basis_cols = column_matrix(&mut rows, &basis_coords);
    let coboundary_rank = to_matrix(rows.len(), &cols).rank();
    let mut rank = coboundary_rank;
    let mut representatives = Vec::new();
    for v in &kernel {
        let mut col: HashMap<usize, Rational> = HashMap::new();
        for (coef, bc) in v.iter().zip(&basis_cols) {
            if coef.is_zero() {
                continue;
            }
            for (i, x) in bc {
                *col.entry(*i).or_insert_with(Rational::zero) += coef * x;
            }
        }
        cols.push(col.into_iter().filter(|(_, x)| !x.is_zero()).collect());
        let r = to_matrix(rows.len(), &cols).rank();
        if r > rank {
            rank = r;
            representatives.push(c.combine(v, &basis));
        } else {
            cols.pop();
        }
    }
    Ok(CohomologyWindow {
        degree,
        dimension: representatives.len(),
        cocycle_dimension: kernel.len(),
        coboundary_rank,
        representatives,
    })
}

/// Solves `δx = y` for `x` of degree `degree - 1` in the window.
pub fn primitive<C: TotalComplex>(c: &C, degree: u32, y: &C::Cochain) -> Result<C::Cochain> {
    if degree == 0 {
        return Err(Error::WindowIncomplete("degree-zero cochains have no primitives".into()));
    }
    let lower = c.basis(degree - 1)?;
    let mut rows = Rows::new();
    let images: Vec<_> = lower.iter().map(|b| c.coordinates(&c.delta(b))).collect();
    let cols = column_matrix(&mut rows, &images);
    let target: Vec<(usize, Rational)> = c.coordinates(y).iter().map(|(k, v)| (rows.row(k), v.clone())).collect();
    let m = to_matrix(rows.len(), &cols);
    let mut rhs = vec![Rational::zero(); rows.len()];
    for (i, v) in target {
        rhs[i] += v;
    }
    let x = m.solve(&rhs)?;
    Ok(c.combine(&x, &lower))
}

/// The total complex of a simplicial algebra restricted to levels
/// `≤ level_bound` and form degrees `≤ degree_bound`, optionally to the basic
/// elements of one structure.
pub struct SimplicialWindow<'a> {
    pub s: &'a SimplicialGda,
    pub level_bound: usize,
    pub degree_bound: u32,
    pub basic: Option<usize>,
}

impl<'a> SimplicialWindow<'a> {
    pub fn new(s: &'a SimplicialGda, level_bound: usize, degree_bound: u32) -> Self {
        SimplicialWindow { s, level_bound, degree_bound, basic: None }
    }

    pub fn basic(mut self, block: usize) -> Self {
        self.basic = Some(block);
        self
    }
}

impl TotalComplex for SimplicialWindow<'_> {
    type Cochain = BigradedElement;
    type Key = (usize, Monomial);

    fn basis(&self, degree: u32) -> Result<Vec<BigradedElement>> {
        // δ out of degree D reaches level D + 1 and form degree D + 1
        if (degree as usize) + 1 > self.level_bound || degree + 1 > self.degree_bound {
            return Err(Error::WindowIncomplete(format!(
                "total degree {degree} needs level bound and degree bound at least {}, have {} and {}",
                degree + 1,
                self.level_bound,
                self.degree_bound
            )));
        }
        let mut out = Vec::new();
        for n in 0..=degree as usize {
            let k = degree - n as u32;
            let alg = self.s.alg(n);
            match self.basic {
                Some(block) => {
                    for b in alg.basic_subspace_in(&[block], k)? {
                        out.push(BigradedElement::at(n, b));
                    }
                }
                None => {
                    for m in degree_window_basis(alg.table(), k)? {
                        out.push(BigradedElement::at(n, Element::monomial(alg.table(), m, Rational::one())));
                    }
                }
            }
        }
        Ok(out)
    }

    fn delta(&self, x: &BigradedElement) -> BigradedElement {
        self.s.delta(x)
    }

    fn coordinates(&self, x: &BigradedElement) -> Vec<((usize, Monomial), Rational)> {
        x.parts().iter().flat_map(|(&n, e)| e.terms().map(move |(m, c)| ((n, m.clone()), c.clone()))).collect()
    }

    fn combine(&self, coeffs: &[Rational], basis: &[BigradedElement]) -> BigradedElement {
        let mut out = BigradedElement::zero();
        for (c, b) in coeffs.iter().zip(basis) {
            if !c.is_zero() {
                out = out.add(&b.scale(c));
            }
        }
        out
    }
}
