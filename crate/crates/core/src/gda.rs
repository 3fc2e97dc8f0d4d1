//! G-differential algebras: a free graded-commutative algebra with a degree +1
//! differential and, for each acting Lie algebra, degree -1 contractions.
//!
//! An algebra may carry several commuting structures (the Bott-Tu setting needs
//! a G-structure and an H-structure side by side). Structure `0` is the primary
//! one; the `_in` variants of the operations take an explicit structure index.

use std::collections::HashMap;
use std::sync::Arc;

use num::{One, Zero};

use crate::algebra::{degree_window_basis, same_table, Derivation, Element, GenTable, Generator, Homomorphism, Monomial, Rational};
use crate::error::{presentation, Error, Result};
use crate::lie::LieAlgebraData;
use crate::linalg::SparseMatrix;

#[derive(Clone, Debug)]
pub struct GStructure {
    lie: LieAlgebraData,
    contractions: Vec<Derivation>,
}

impl GStructure {
    pub fn lie(&self) -> &LieAlgebraData {
        &self.lie
    }

    pub fn contraction(&self, j: usize) -> &Derivation {
        &self.contractions[j]
    }
}

#[derive(Clone, Debug)]
pub struct GdAlgebra {
    table: Arc<GenTable>,
    d: Derivation,
    structures: Vec<GStructure>,
}

/// Contraction images of one structure: `images[j][g]` is `i_{X_j}` of generator `g`.
pub type ContractionImages = Vec<Vec<Element>>;

impl GdAlgebra {
    /// Checks degrees of all images; the algebraic identities are checked by
    /// [`GdAlgebra::validate_presentation`].
    pub fn new(table: Arc<GenTable>, d_images: Vec<Element>, structures: Vec<(LieAlgebraData, ContractionImages)>) -> Result<Self> {
        if structures.is_empty() {
            return Err(presentation("a G-differential algebra needs at least one structure"));
        }
        let d = Derivation::new(&table, 1, d_images)?;
        let mut out = Vec::with_capacity(structures.len());
        for (lie, images) in structures {
            if images.len() != lie.dim() {
                return Err(presentation(format!(
                    "{} contraction families for a Lie algebra of dimension {}",
                    images.len(),
                    lie.dim()
                )));
            }
            let contractions = images.into_iter().map(|im| Derivation::new(&table, -1, im)).collect::<Result<Vec<_>>>()?;
            out.push(GStructure { lie, contractions });
        }
        Ok(GdAlgebra { table, d, structures: out })
    }

    /// The trivial algebra (scalars only) with the given structures.
    pub fn scalars(lies: &[LieAlgebraData]) -> Self {
        let table = GenTable::empty();
        let structures = lies
            .iter()
            .map(|l| (l.clone(), vec![Vec::new(); l.dim()]))
            .collect();
        GdAlgebra::new(table, Vec::new(), structures).expect("scalars are a valid presentation")
    }

    pub fn table(&self) -> &Arc<GenTable> {
        &self.table
    }

    pub fn structures(&self) -> &[GStructure] {
        &self.structures
    }

    pub fn structure(&self, block: usize) -> &GStructure {
        &self.structures[block]
    }

    pub fn lie(&self) -> &LieAlgebraData {
        &self.structures[0].lie
    }

    pub fn differential(&self) -> &Derivation {
        &self.d
    }

    pub fn zero(&self) -> Element {
        Element::zero(&self.table)
    }

    pub fn one(&self) -> Element {
        Element::one(&self.table)
    }

    pub fn gen(&self, id: &str) -> Result<Element> {
        Element::generator_by_id(&self.table, id)
    }

    pub fn d(&self, x: &Element) -> Element {
        self.d.apply(x)
    }

    pub fn contract(&self, j: usize, x: &Element) -> Element {
        self.contract_in(0, j, x)
    }

    pub fn contract_in(&self, block: usize, j: usize, x: &Element) -> Element {
        self.structures[block].contractions[j].apply(x)
    }

    pub fn lie_derivative(&self, j: usize, x: &Element) -> Element {
        self.lie_derivative_in(0, j, x)
    }

    /// `L_{X_j} = i_{X_j} d + d i_{X_j}`.
    pub fn lie_derivative_in(&self, block: usize, j: usize, x: &Element) -> Element {
        let c = &self.structures[block].contractions[j];
        &c.apply(&self.d.apply(x)) + &self.d.apply(&c.apply(x))
    }

    /// Graded tensor product. Generator ids get the given prefixes and tags so
    /// that every generator of `self` precedes every generator of `other`.
    pub fn tensor(&self, other: &GdAlgebra, prefix_a: &str, prefix_b: &str) -> Result<GdAlgebra> {
        Ok(tensor_many(&[(self, prefix_a, "0"), (other, prefix_b, "1")])?.0)
    }

    /// Appends a structure whose contractions all vanish.
    pub fn with_trivial_structure(&self, lie: &LieAlgebraData) -> GdAlgebra {
        let mut out = self.clone();
        let zero = Element::zero(&self.table);
        let contractions = (0..lie.dim())
            .map(|_| Derivation::new(&self.table, -1, vec![zero.clone(); self.table.len()]).unwrap())
            .collect();
        out.structures.push(GStructure { lie: lie.clone(), contractions });
        out
    }

    /// Inserts a trivial structure in front of the existing ones.
    pub fn with_trivial_structure_first(&self, lie: &LieAlgebraData) -> GdAlgebra {
        let mut out = self.with_trivial_structure(lie);
        let s = out.structures.pop().unwrap();
        out.structures.insert(0, s);
        out
    }

    /// Checks the defining identities on every monomial up to `degree_bound`.
    pub fn validate_presentation(&self, degree_bound: u32) -> ValidationReport {
        let mut checked = 0usize;
        for degree in 0..=degree_bound {
            let basis = match degree_window_basis(&self.table, degree) {
                Ok(b) => b,
                Err(e) => return ValidationReport::fail(checked, e.to_string()),
            };
            for m in basis {
                let x = Element::monomial(&self.table, m, Rational::one());
                if let Some(msg) = self.check_identities_on(&x) {
                    return ValidationReport::fail(checked, format!("{msg} on {x}"));
                }
                checked += 1;
            }
        }
        ValidationReport { passed: true, monomials_checked: checked, first_failure: None }
    }

    fn check_identities_on(&self, x: &Element) -> Option<String> {
        if !self.d(&self.d(x)).is_zero() {
            return Some("d^2 != 0".into());
        }
        for (ba, sa) in self.structures.iter().enumerate() {
            let n = sa.lie.dim();
            for j in 0..n {
                for (bb, sb) in self.structures.iter().enumerate() {
                    for k in 0..sb.lie.dim() {
                        let ij = &sa.contractions[j];
                        let ik = &sb.contractions[k];
                        if !(&ij.apply(&ik.apply(x)) + &ik.apply(&ij.apply(x))).is_zero() {
                            return Some(format!("contractions {ba}:{j} and {bb}:{k} do not anticommute"));
                        }
                        // [L_j, i_k] = i_{[X_j, X_k]} and [L_j, L_k] = L_{[X_j, X_k]}
                        let lj = |y: &Element| self.lie_derivative_in(ba, j, y);
                        let lk = |y: &Element| self.lie_derivative_in(bb, k, y);
                        let lhs_i = &lj(&ik.apply(x)) - &ik.apply(&lj(x));
                        let lhs_l = &lj(&lk(x)) - &lk(&lj(x));
                        let mut rhs_i = Element::zero(&self.table);
                        let mut rhs_l = Element::zero(&self.table);
                        if ba == bb {
                            for i in 0..n {
                                let c = sa.lie.f(i, j, k);
                                if !c.is_zero() {
                                    rhs_i.add_scaled(&sa.contractions[i].apply(x), c);
                                    rhs_l.add_scaled(&self.lie_derivative_in(ba, i, x), c);
                                }
                            }
                        }
                        if lhs_i != rhs_i {
                            return Some(format!("[L_{ba}:{j}, i_{bb}:{k}] != i of the bracket"));
                        }
                        if lhs_l != rhs_l {
                            return Some(format!("[L_{ba}:{j}, L_{bb}:{k}] != L of the bracket"));
                        }
                    }
                }
            }
        }
        None
    }

    pub fn is_basic(&self, x: &Element) -> bool {
        self.is_basic_in(0, x)
    }

    pub fn is_basic_in(&self, block: usize, x: &Element) -> bool {
        let n = self.structures[block].lie.dim();
        (0..n).all(|j| self.contract_in(block, j, x).is_zero() && self.lie_derivative_in(block, j, x).is_zero())
    }

    /// A basis of the basic elements of the given degree (primary structure).
    pub fn basic_subspace(&self, degree: u32) -> Result<Vec<Element>> {
        self.basic_subspace_in(&[0], degree)
    }

    /// Joint kernel of all contractions and Lie derivatives of the listed
    /// structures on the degree window.
    pub fn basic_subspace_in(&self, blocks: &[usize], degree: u32) -> Result<Vec<Element>> {
        let basis = degree_window_basis(&self.table, degree)?;
        let mut ops: Vec<LinearOp<'_>> = Vec::new();
        for &b in blocks {
            for j in 0..self.structures[b].lie.dim() {
                ops.push(Box::new(move |x| self.contract_in(b, j, x)));
                ops.push(Box::new(move |x| self.lie_derivative_in(b, j, x)));
            }
        }
        Ok(joint_kernel(&self.table, &basis, &ops))
    }
}

/// Tensor product of several factors `(algebra, id prefix, order tag)`. The
/// factors appear in the generator order in the listed order provided the tags
/// sort that way. Returns the product and, per factor, the index map from the
/// factor's generators into the product.
pub fn tensor_many(factors: &[(&GdAlgebra, &str, &str)]) -> Result<(GdAlgebra, Vec<Vec<u32>>)> {
    let Some((first, _, _)) = factors.first() else {
        return Err(presentation("tensor product of no factors"));
    };
    for (f, _, _) in factors {
        if f.structures.len() != first.structures.len() || f.structures.iter().zip(&first.structures).any(|(a, b)| a.lie != b.lie) {
            return Err(presentation("tensor factors carry different Lie algebra structures"));
        }
    }
    let mut gens = Vec::new();
    for (f, prefix, tag) in factors {
        for g in f.table.generators() {
            let mut tags = Vec::with_capacity(g.tags.len() + 1);
            if !tag.is_empty() {
                tags.push(tag.to_string());
            }
            tags.extend(g.tags.iter().cloned());
            gens.push(Generator::tagged(format!("{prefix}{}", g.id), g.degree, tags));
        }
    }
    let table = GenTable::new(gens)?;
    let maps: Vec<Vec<u32>> = factors
        .iter()
        .map(|(f, prefix, _)| f.table.generators().iter().map(|g| table.lookup(&format!("{prefix}{}", g.id)).unwrap()).collect())
        .collect();
    let mut d_images = vec![Element::zero(&table); table.len()];
    for ((f, _, _), map) in factors.iter().zip(&maps) {
        for (g, &t) in map.iter().enumerate() {
            d_images[t as usize] = f.d.images()[g].relabel(&table, map);
        }
    }
    let mut structures = Vec::new();
    for (b, s) in first.structures.iter().enumerate() {
        let mut fam = Vec::new();
        for j in 0..s.lie.dim() {
            let mut im = vec![Element::zero(&table); table.len()];
            for ((f, _, _), map) in factors.iter().zip(&maps) {
                for (g, &t) in map.iter().enumerate() {
                    im[t as usize] = f.structures[b].contractions[j].images()[g].relabel(&table, map);
                }
            }
            fam.push(im);
        }
        structures.push((s.lie.clone(), fam));
    }
    Ok((GdAlgebra::new(table, d_images, structures)?, maps))
}

pub(crate) type LinearOp<'a> = Box<dyn Fn(&Element) -> Element + 'a>;

/// Kernel of a family of linear operators restricted to the span of `basis`.
pub(crate) fn joint_kernel(table: &Arc<GenTable>, basis: &[Monomial], ops: &[LinearOp<'_>]) -> Vec<Element> {
    let mut rows: HashMap<(usize, Monomial), usize> = HashMap::new();
    let mut entries = Vec::new();
    for (col, m) in basis.iter().enumerate() {
        let x = Element::monomial(table, m.clone(), Rational::one());
        for (k, op) in ops.iter().enumerate() {
            for (mm, c) in op(&x).terms() {
                let next = rows.len();
                let r = *rows.entry((k, mm.clone())).or_insert(next);
                entries.push((r, col, c.clone()));
            }
        }
    }
    let mut mat = SparseMatrix::new(rows.len(), basis.len());
    for (r, c, v) in entries {
        mat.add_to(r, c, &v);
    }
    mat.kernel()
        .into_iter()
        .map(|v| {
            let mut e = Element::zero(table);
            for (m, c) in basis.iter().zip(v) {
                e.add_term(m.clone(), c);
            }
            e
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub passed: bool,
    pub monomials_checked: usize,
    pub first_failure: Option<String>,
}

impl ValidationReport {
    fn fail(checked: usize, msg: String) -> Self {
        ValidationReport { passed: false, monomials_checked: checked, first_failure: Some(msg) }
    }
}

/// A g-valued element `Σ_i a_i ⊗ X_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GVector {
    components: Vec<Element>,
}

impl GVector {
    pub fn new(components: Vec<Element>) -> Result<Self> {
        if let Some(first) = components.first() {
            if components.iter().any(|c| !same_table(c.table(), first.table())) {
                return Err(presentation("g-vector components live over different tables"));
            }
        }
        Ok(GVector { components })
    }

    pub fn zero(table: &Arc<GenTable>, dim: usize) -> Self {
        GVector { components: vec![Element::zero(table); dim] }
    }

    pub fn components(&self) -> &[Element] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &Element {
        &self.components[i]
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Element::is_zero)
    }

    pub fn map(&self, f: impl Fn(&Element) -> Element) -> GVector {
        GVector { components: self.components.iter().map(f).collect() }
    }

    pub fn scale(&self, c: &Rational) -> GVector {
        self.map(|x| x.scale(c))
    }

    pub fn add(&self, other: &GVector) -> GVector {
        GVector { components: self.components.iter().zip(&other.components).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &GVector) -> GVector {
        GVector { components: self.components.iter().zip(&other.components).map(|(a, b)| a - b).collect() }
    }

    pub fn apply_hom(&self, h: &Homomorphism) -> GVector {
        self.map(|x| h.apply(x))
    }

    /// Acts on the g factor by a matrix: component `i` of the result is
    /// `Σ_j m[i][j] a_j`.
    pub fn transform(&self, m: &[Vec<Rational>]) -> GVector {
        let table = self.components[0].table();
        let mut out = Vec::with_capacity(self.dim());
        for row in m {
            let mut e = Element::zero(table);
            for (c, a) in row.iter().zip(&self.components) {
                e.add_scaled(a, c);
            }
            out.push(e);
        }
        GVector { components: out }
    }
}

/// `[a, b]^i = Σ_{j,k} f^i_{jk} a_j b_k` with the algebra product.
pub fn bracket(lie: &LieAlgebraData, a: &GVector, b: &GVector) -> GVector {
    bracket_with(lie, a, b, |x, y| x * y)
}

pub fn bracket_with(lie: &LieAlgebraData, a: &GVector, b: &GVector, mul: impl Fn(&Element, &Element) -> Element) -> GVector {
    let n = lie.dim();
    let table = a.components[0].table().clone();
    let mut out = vec![Element::zero(&table); n];
    for j in 0..n {
        if a.components[j].is_zero() {
            continue;
        }
        for k in 0..n {
            if b.components[k].is_zero() {
                continue;
            }
            let mut prod = None;
            for (i, o) in out.iter_mut().enumerate() {
                let c = lie.f(i, j, k);
                if !c.is_zero() {
                    let p = prod.get_or_insert_with(|| mul(&a.components[j], &b.components[k]));
                    o.add_scaled(p, c);
                }
            }
        }
    }
    GVector { components: out }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectionReport {
    pub is_connection: bool,
    pub failure: Option<String>,
}

pub fn is_connection(alg: &GdAlgebra, theta: &GVector) -> Result<ConnectionReport> {
    is_connection_in(alg, 0, theta)
}

/// `i_{X_j} θ_i = δ_{ij}` and `L_{X_j} θ_i + Σ_k f^i_{jk} θ_k = 0`.
pub fn is_connection_in(alg: &GdAlgebra, block: usize, theta: &GVector) -> Result<ConnectionReport> {
    let lie = alg.structure(block).lie();
    if theta.dim() != lie.dim() {
        return Err(Error::Dimension(format!("connection has {} components for dim {}", theta.dim(), lie.dim())));
    }
    for (i, c) in theta.components.iter().enumerate() {
        if !c.is_zero() && c.degree() != Some(1) {
            return Err(presentation(format!("connection component {i} is not of degree 1")));
        }
        if !same_table(c.table(), alg.table()) {
            return Err(presentation("connection lives over another algebra"));
        }
    }
    let fail = |msg: String| Ok(ConnectionReport { is_connection: false, failure: Some(msg) });
    for j in 0..lie.dim() {
        for (i, th) in theta.components.iter().enumerate() {
            let want = if i == j { Element::one(alg.table()) } else { alg.zero() };
            if alg.contract_in(block, j, th) != want {
                return fail(format!("i_{j} of component {i} is not {}", if i == j { 1 } else { 0 }));
            }
            let mut inv = alg.lie_derivative_in(block, j, th);
            for (k, tk) in theta.components.iter().enumerate() {
                inv.add_scaled(tk, lie.f(i, j, k));
            }
            if !inv.is_zero() {
                return fail(format!("component {i} is not invariant under X_{j}"));
            }
        }
    }
    Ok(ConnectionReport { is_connection: true, failure: None })
}

pub fn curvature(alg: &GdAlgebra, theta: &GVector) -> GVector {
    curvature_in(alg, 0, theta)
}

/// `Ω = dθ + ½[θ, θ]`.
pub fn curvature_in(alg: &GdAlgebra, block: usize, theta: &GVector) -> GVector {
    let lie = alg.structure(block).lie();
    let half = Rational::new(1.into(), 2.into());
    let br = bracket(lie, theta, theta);
    GVector {
        components: theta
            .components
            .iter()
            .zip(&br.components)
            .map(|(t, b)| {
                let mut o = alg.d(t);
                o.add_scaled(b, &half);
                o
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::q;
    use crate::weil::{canonical_connection, weil_algebra};

    #[test]
    fn lie_derivative_of_unit_vanishes() {
        let w = weil_algebra(&LieAlgebraData::so3());
        for j in 0..3 {
            assert!(w.lie_derivative(j, &w.one()).is_zero());
        }
    }

    #[test]
    fn abelian_coadjoint_action_is_trivial() {
        let w = weil_algebra(&LieAlgebraData::u1());
        assert!(w.lie_derivative(0, &w.gen("e1").unwrap()).is_zero());
    }

    #[test]
    fn so3_lie_derivative_on_exterior_generator() {
        // L_1 e2 = -f^2_{1k} e_k = -ε_{213} e3 = e3
        let w = weil_algebra(&LieAlgebraData::so3());
        assert_eq!(w.lie_derivative(0, &w.gen("e2").unwrap()), w.gen("e3").unwrap());
    }

    #[test]
    fn connection_examples() {
        let lie = LieAlgebraData::so3();
        let w = weil_algebra(&lie);
        let eta = canonical_connection(&w);
        assert!(is_connection(&w, &eta).unwrap().is_connection);
        let zero = GVector::zero(w.table(), 3);
        assert!(!is_connection(&w, &zero).unwrap().is_connection);
        assert!(!is_connection(&w, &eta.scale(&q(2))).unwrap().is_connection);
        let bad = GVector::new(vec![w.gen("s1").unwrap(), w.zero(), w.zero()]).unwrap();
        assert!(is_connection(&w, &bad).is_err());
    }

    #[test]
    fn curvature_of_canonical_connection() {
        for lie in [LieAlgebraData::u1(), LieAlgebraData::so3(), LieAlgebraData::sl2(), LieAlgebraData::heisenberg()] {
            let w = weil_algebra(&lie);
            let omega = curvature(&w, &canonical_connection(&w));
            for i in 0..lie.dim() {
                assert_eq!(omega.component(i), &w.gen(&format!("s{}", i + 1)).unwrap());
            }
            assert!(curvature(&w, &GVector::zero(w.table(), lie.dim())).is_zero());
        }
    }

    #[test]
    fn basic_subspace_examples() {
        let w = weil_algebra(&LieAlgebraData::u1());
        let b2 = w.basic_subspace(2).unwrap();
        assert_eq!(b2, vec![w.gen("s1").unwrap()]);
        assert!(w.basic_subspace(1).unwrap().is_empty());

        let w3 = weil_algebra(&LieAlgebraData::so3());
        let b4 = w3.basic_subspace(4).unwrap();
        assert_eq!(b4.len(), 1);
        let killing = (1..=3).fold(w3.zero(), |acc, i| {
            let s = w3.gen(&format!("s{i}")).unwrap();
            &acc + &(&s * &s)
        });
        // the kernel vector is a multiple of the Killing quadratic
        let m = b4[0].term_map().keys().next().unwrap().clone();
        let ratio = b4[0].coefficient(&m) / killing.coefficient(&m);
        assert_eq!(b4[0], killing.scale(&ratio));
    }

    #[test]
    fn basic_elements_stay_basic_under_d() {
        let w = weil_algebra(&LieAlgebraData::so3());
        for deg in 0..=5 {
            for b in w.basic_subspace(deg).unwrap() {
                assert!(w.is_basic(&w.d(&b)));
            }
        }
    }

    #[test]
    fn tensor_product_validates() {
        let w = weil_algebra(&LieAlgebraData::so3());
        let ww = w.tensor(&w, "A.", "B.").unwrap();
        assert!(ww.validate_presentation(4).passed);
        assert_eq!(ww.table().len(), 12);
    }

    #[test]
    fn broken_presentation_is_caught() {
        // d(e) = s but s is not closed under d: d(s) = e*s breaks d^2 = 0
        let t = GenTable::new(vec![Generator::new("e", 1), Generator::new("s", 2)]).unwrap();
        let e = Element::generator(&t, 0);
        let s = Element::generator(&t, 1);
        let alg = GdAlgebra::new(
            t.clone(),
            vec![s.clone(), &e * &s],
            vec![(LieAlgebraData::u1(), vec![vec![Element::one(&t), Element::zero(&t)]])],
        )
        .unwrap();
        let report = alg.validate_presentation(3);
        assert!(!report.passed);
    }

    #[test]
    fn degree_violation_rejected_at_load() {
        let t = GenTable::new(vec![Generator::new("e", 1)]).unwrap();
        let e = Element::generator(&t, 0);
        let res = GdAlgebra::new(t.clone(), vec![e], vec![(LieAlgebraData::u1(), vec![vec![Element::one(&t)]])]);
        assert!(res.is_err());
    }
}
