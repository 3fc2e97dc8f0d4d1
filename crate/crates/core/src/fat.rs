//! The fat realization: polynomial forms on simplices tensored with the levels
//! of a simplicial algebra, and the integration map back to the double complex.
//!
//! `Ω(Δ_m) ⊗ A_n` is presented as one free algebra with generators
//! `t1..tm` (degree 0), `dt1..dtm` (degree 1) and the generators of `A_n`. The
//! barycentric coordinate `t_0` is eliminated as `1 - Σ t_i`. Simplex
//! generators sort before algebra generators, so a normal-form monomial reads
//! `ω · x` with `ω` a simplex form.
//!
//! Sign pack: the total differential is the derivation `t_i ↦ dt_i` plus the
//! level differential (the Koszul sign comes from the derivation rule),
//! `dt_1 ∧ … ∧ dt_n` is positive and `∫ ω·x = (∫ ω) x` with no further
//! sign. With `δ = (-1)^n d + ∂` this makes `I` a chain map.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num::{BigInt, One};

use crate::algebra::{Element, GenTable, Generator, Homomorphism, Rational};
use crate::gda::{GVector, GdAlgebra};
use crate::simplicial::{BigradedElement, GenMap, SimplicialGda};

/// `Ω(Δ_m) ⊗ A_n`.
#[derive(Debug)]
pub struct FatAlgebra {
    m: usize,
    n: usize,
    alg: GdAlgebra,
    /// generators of `A_n` into this table
    level_map: GenMap,
    /// index of `t_j`, `j = 1..=m`, at position `j - 1`
    t: Vec<u32>,
    dt: Vec<u32>,
    /// inverse of `level_map` on algebra generators
    level_of: Vec<Option<u32>>,
}

impl FatAlgebra {
    pub fn alg(&self) -> &GdAlgebra {
        &self.alg
    }

    pub fn table(&self) -> &Arc<GenTable> {
        self.alg.table()
    }

    pub fn simplex_dim(&self) -> usize {
        self.m
    }

    pub fn level(&self) -> usize {
        self.n
    }

    /// Barycentric coordinate `t_j`, with `t_0 = 1 - Σ_{i≥1} t_i`.
    pub fn t(&self, j: usize) -> Element {
        let table = self.table();
        if j == 0 {
            let mut out = Element::one(table);
            for &g in &self.t {
                out.add_scaled(&Element::generator(table, g), &-Rational::one());
            }
            out
        } else {
            Element::generator(table, self.t[j - 1])
        }
    }

    pub fn dt(&self, j: usize) -> Element {
        self.alg.d(&self.t(j))
    }

    /// `1 ⊗ x` for `x` in `A_n`.
    pub fn include(&self, x: &Element) -> Element {
        x.relabel(self.table(), &self.level_map)
    }

    pub fn include_gvector(&self, v: &GVector) -> GVector {
        v.map(|x| self.include(x))
    }
}

/// Fat-realization algebras of one simplicial algebra, built on demand.
#[derive(Debug)]
pub struct FatRealization {
    s: Arc<SimplicialGda>,
    cache: Mutex<HashMap<(usize, usize), Arc<FatAlgebra>>>,
}

/// A compatible family `k_n ∈ Ω(Δ_n) ⊗ A_n` for `n = 0..=N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FatElement {
    levels: Vec<Element>,
}

impl FatElement {
    pub fn new(levels: Vec<Element>) -> Self {
        FatElement { levels }
    }

    pub fn levels(&self) -> &[Element] {
        &self.levels
    }

    pub fn level(&self, n: usize) -> &Element {
        &self.levels[n]
    }

    pub fn top(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn zip_with(&self, other: &FatElement, f: impl Fn(&Element, &Element) -> Element) -> FatElement {
        FatElement { levels: self.levels.iter().zip(&other.levels).map(|(a, b)| f(a, b)).collect() }
    }

    pub fn add(&self, other: &FatElement) -> FatElement {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn mul(&self, other: &FatElement) -> FatElement {
        self.zip_with(other, |a, b| a * b)
    }

    pub fn scale(&self, c: &Rational) -> FatElement {
        FatElement { levels: self.levels.iter().map(|x| x.scale(c)).collect() }
    }
}

/// A g-valued fat element, one g-vector per level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FatGVector {
    pub levels: Vec<GVector>,
}

impl FatGVector {
    pub fn component(&self, i: usize) -> FatElement {
        FatElement { levels: self.levels.iter().map(|v| v.component(i).clone()).collect() }
    }

    pub fn top(&self) -> usize {
        self.levels.len() - 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CompatibilityFailure {
    Face { level: usize, index: usize },
    Degeneracy { level: usize, index: usize },
}

impl FatRealization {
    pub fn new(s: &Arc<SimplicialGda>) -> Self {
        FatRealization { s: s.clone(), cache: Mutex::new(HashMap::new()) }
    }

    pub fn simplicial(&self) -> &Arc<SimplicialGda> {
        &self.s
    }

    /// `Ω(Δ_m) ⊗ A_n`.
    pub fn algebra(&self, m: usize, n: usize) -> Arc<FatAlgebra> {
        if let Some(a) = self.cache.lock().expect("fat cache poisoned").get(&(m, n)) {
            return a.clone();
        }
        let built = Arc::new(self.build(m, n));
        self.cache.lock().expect("fat cache poisoned").entry((m, n)).or_insert(built).clone()
    }

    pub fn level(&self, n: usize) -> Arc<FatAlgebra> {
        self.algebra(n, n)
    }

    fn build(&self, m: usize, n: usize) -> FatAlgebra {
        let level = self.s.alg(n);
        let lt = level.table();
        let mut gens: Vec<Generator> = Vec::with_capacity(2 * m + lt.len());
        for j in 1..=m {
            gens.push(Generator::new(format!("t{j}"), 0));
            gens.push(Generator::new(format!("dt{j}"), 1));
        }
        gens.extend(lt.generators().iter().cloned());
        let table = GenTable::new(gens).expect("simplex generator ids do not clash with level ids");
        let level_map: GenMap = lt.generators().iter().map(|g| table.lookup(&g.id).unwrap()).collect();
        let t: Vec<u32> = (1..=m).map(|j| table.lookup(&format!("t{j}")).unwrap()).collect();
        let dt: Vec<u32> = (1..=m).map(|j| table.lookup(&format!("dt{j}")).unwrap()).collect();
        let mut d_images = vec![Element::zero(&table); table.len()];
        for j in 0..m {
            d_images[t[j] as usize] = Element::generator(&table, dt[j]);
        }
        for (g, &f) in level_map.iter().enumerate() {
            d_images[f as usize] = level.differential().images()[g].relabel(&table, &level_map);
        }
        let mut structures = Vec::new();
        for s in level.structures() {
            let mut fam = Vec::new();
            for j in 0..s.lie().dim() {
                let mut im = vec![Element::zero(&table); table.len()];
                for (g, &f) in level_map.iter().enumerate() {
                    im[f as usize] = s.contraction(j).images()[g].relabel(&table, &level_map);
                }
                fam.push(im);
            }
            structures.push((s.lie().clone(), fam));
        }
        let alg = GdAlgebra::new(table.clone(), d_images, structures).expect("fat presentation has correct degrees");
        let mut level_of = vec![None; table.len()];
        for (g, &f) in level_map.iter().enumerate() {
            level_of[f as usize] = Some(g as u32);
        }
        FatAlgebra { m, n, alg, level_map, t, dt, level_of }
    }

    /// The homomorphism `Ω(Δ_m)⊗A_n → Ω(Δ_m')⊗A_n'` given by the images of
    /// `t_1..t_m` and an index map on level generators; `dt_j ↦ D(image of t_j)`.
    fn fat_hom(&self, src: &FatAlgebra, dst: &FatAlgebra, t_images: Vec<Element>, level: &GenMap) -> Homomorphism {
        let mut images = vec![Element::zero(dst.table()); src.table().len()];
        for (j, img) in t_images.into_iter().enumerate() {
            images[src.dt[j] as usize] = dst.alg.d(&img);
            images[src.t[j] as usize] = img;
        }
        for (g, &f) in src.level_map.iter().enumerate() {
            images[f as usize] = Element::generator(dst.table(), dst.level_map[level[g] as usize]);
        }
        Homomorphism::new(src.table(), dst.table(), images).expect("fat maps preserve degrees")
    }

    fn identity_map(&self, n: usize) -> GenMap {
        (0..self.s.table(n).len() as u32).collect()
    }

    /// `ε̃_i^{n*} ⊗ id : Ω(Δ_n)⊗A_n → Ω(Δ_{n-1})⊗A_n`.
    pub fn face_pullback(&self, n: usize, i: usize) -> Homomorphism {
        let src = self.algebra(n, n);
        let dst = self.algebra(n - 1, n);
        let images = (1..=n)
            .map(|j| match j.cmp(&i) {
                std::cmp::Ordering::Less => dst.t(j),
                std::cmp::Ordering::Equal => Element::zero(dst.table()),
                std::cmp::Ordering::Greater => dst.t(j - 1),
            })
            .collect();
        self.fat_hom(&src, &dst, images, &self.identity_map(n))
    }

    /// `id ⊗ ε_i^n : Ω(Δ_{n-1})⊗A_{n-1} → Ω(Δ_{n-1})⊗A_n`.
    pub fn face_push(&self, n: usize, i: usize) -> Homomorphism {
        let src = self.algebra(n - 1, n - 1);
        let dst = self.algebra(n - 1, n);
        let images = (1..n).map(|j| dst.t(j)).collect();
        self.fat_hom(&src, &dst, images, &self.s.face_map(n, i))
    }

    /// `η̃_i^{n-1*} ⊗ id : Ω(Δ_{n-1})⊗A_{n-1} → Ω(Δ_n)⊗A_{n-1}`.
    pub fn degeneracy_pullback(&self, n: usize, i: usize) -> Homomorphism {
        let src = self.algebra(n - 1, n - 1);
        let dst = self.algebra(n, n - 1);
        let images = (1..n)
            .map(|j| match j.cmp(&i) {
                std::cmp::Ordering::Less => dst.t(j),
                std::cmp::Ordering::Equal => &dst.t(j) + &dst.t(j + 1),
                std::cmp::Ordering::Greater => dst.t(j + 1),
            })
            .collect();
        self.fat_hom(&src, &dst, images, &self.identity_map(n - 1))
    }

    /// `id ⊗ η_i^{n-1} : Ω(Δ_n)⊗A_n → Ω(Δ_n)⊗A_{n-1}`.
    pub fn degeneracy_push(&self, n: usize, i: usize) -> Homomorphism {
        let src = self.algebra(n, n);
        let dst = self.algebra(n, n - 1);
        let images = (1..=n).map(|j| dst.t(j)).collect();
        self.fat_hom(&src, &dst, images, &self.s.degeneracy_map(n - 1, i))
    }

    /// Checks both compatibility conditions between every pair of adjacent levels.
    pub fn check_compatibility(&self, x: &FatElement) -> std::result::Result<(), CompatibilityFailure> {
        for n in 1..=x.top() {
            for i in 0..=n {
                let lhs = self.face_pullback(n, i).apply(x.level(n));
                let rhs = self.face_push(n, i).apply(x.level(n - 1));
                if lhs != rhs {
                    return Err(CompatibilityFailure::Face { level: n, index: i });
                }
            }
            for i in 0..n {
                let lhs = self.degeneracy_pullback(n, i).apply(x.level(n - 1));
                let rhs = self.degeneracy_push(n, i).apply(x.level(n));
                if lhs != rhs {
                    return Err(CompatibilityFailure::Degeneracy { level: n, index: i });
                }
            }
        }
        Ok(())
    }

    /// `α̃_n = Σ_i t_i ⊗ p_i^n(α)` for `α` in `A_0`, levels `0..=top`.
    pub fn lift(&self, alpha: &Element, top: usize) -> FatElement {
        FatElement {
            levels: (0..=top)
                .map(|n| {
                    let fa = self.level(n);
                    let mut out = Element::zero(fa.table());
                    for i in 0..=n {
                        let pi = fa.include(&self.s.p(n, i, alpha));
                        out = &out + &(&fa.t(i) * &pi);
                    }
                    out
                })
                .collect(),
        }
    }

    /// `θ̃` componentwise.
    pub fn lift_connection(&self, theta: &GVector, top: usize) -> FatGVector {
        let comps: Vec<FatElement> = theta.components().iter().map(|c| self.lift(c, top)).collect();
        FatGVector {
            levels: (0..=top)
                .map(|n| GVector::new(comps.iter().map(|c| c.level(n).clone()).collect()).unwrap())
                .collect(),
        }
    }

    /// The constant family `c ⊗ 1`.
    pub fn constant(&self, c: &Rational, top: usize) -> FatElement {
        FatElement { levels: (0..=top).map(|n| Element::scalar(self.level(n).table(), c.clone())).collect() }
    }

    pub fn total_differential(&self, x: &FatElement) -> FatElement {
        FatElement { levels: x.levels.iter().enumerate().map(|(n, e)| self.level(n).alg.d(e)).collect() }
    }

    /// Curvature of a fat g-vector, levelwise.
    pub fn curvature(&self, theta: &FatGVector) -> FatGVector {
        self.curvature_in(0, theta)
    }

    pub fn curvature_in(&self, block: usize, theta: &FatGVector) -> FatGVector {
        FatGVector {
            levels: theta
                .levels
                .iter()
                .enumerate()
                .map(|(n, v)| crate::gda::curvature_in(self.level(n).alg(), block, v))
                .collect(),
        }
    }

    /// `I(x)_n = ∫_{Δ_n} x_n`.
    pub fn integrate(&self, x: &FatElement) -> BigradedElement {
        let mut out = BigradedElement::zero();
        for (n, xn) in x.levels.iter().enumerate() {
            out.add_at(n, &self.integrate_level(n, xn));
        }
        out
    }

    /// Integrates one element of `Ω(Δ_n)⊗A_n` to `A_n`.
    pub fn integrate_level(&self, n: usize, x: &Element) -> Element {
        let fa = self.level(n);
        let target = self.s.table(n);
        let mut out = Element::zero(&target);
        'terms: for (m, c) in x.terms() {
            let mut t_exps = vec![0u32; n];
            let mut dt_seen = 0usize;
            let mut rest = Vec::new();
            for &(g, e) in m.factors() {
                if let Some(j) = fa.t.iter().position(|&h| h == g) {
                    t_exps[j] = e;
                } else if fa.dt.contains(&g) {
                    dt_seen += 1;
                } else {
                    rest.push((fa.level_of[g as usize].expect("algebra generator"), e));
                }
            }
            if dt_seen != n {
                continue 'terms;
            }
            let weight = simplex_integral(&t_exps);
            // rest is already ordered: level generators keep their relative order
            let part = Element::from_terms(&target, [(c * &weight, rest)]).expect("level generators");
            out = &out + &part;
        }
        out
    }
}

/// `∫_{Δ_n} t_1^{a_1}…t_n^{a_n} dt_1∧…∧dt_n = a_1!…a_n! / (n + Σ a_i)!`.
pub fn simplex_integral(exps: &[u32]) -> Rational {
    let fact = |k: u32| -> BigInt { (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i)) };
    let num = exps.iter().fold(BigInt::one(), |acc, &a| acc * fact(a));
    let total: u32 = exps.len() as u32 + exps.iter().sum::<u32>();
    Rational::new(num, fact(total))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{q, q_frac};
    use crate::lie::LieAlgebraData;
    use crate::weil::{canonical_connection_with_prefix, weil_algebra};

    fn fat_weil(lie: &LieAlgebraData) -> FatRealization {
        FatRealization::new(&SimplicialGda::tensor_power(&weil_algebra(lie)))
    }

    #[test]
    fn simplex_integrals() {
        assert_eq!(simplex_integral(&[0]), q(1));
        assert_eq!(simplex_integral(&[1]), q_frac(1, 2));
        assert_eq!(simplex_integral(&[1, 0]), q_frac(1, 6));
        assert_eq!(simplex_integral(&[]), q(1));
    }

    #[test]
    fn lift_at_levels_zero_and_one() {
        let fr = fat_weil(&LieAlgebraData::u1());
        let s = fr.simplicial().clone();
        let eta = canonical_connection_with_prefix(&s.alg(0), "0:");
        let lifted = fr.lift_connection(&eta, 2);
        assert_eq!(lifted.levels[0], eta);
        let f1 = fr.level(1);
        let e = s.tower().gen("e1").unwrap();
        let expected = &(&f1.t(0) * &f1.include(&s.embed_tower(1, 0, &e))) + &(&f1.t(1) * &f1.include(&s.embed_tower(1, 1, &e)));
        assert_eq!(lifted.levels[1].component(0), &expected);
    }

    #[test]
    fn lifted_connection_is_compatible_and_contracts_to_one() {
        let fr = fat_weil(&LieAlgebraData::so3());
        let s = fr.simplicial().clone();
        let eta = canonical_connection_with_prefix(&s.alg(0), "0:");
        let lifted = fr.lift_connection(&eta, 3);
        for i in 0..3 {
            assert_eq!(fr.check_compatibility(&lifted.component(i)), Ok(()));
        }
        for (n, v) in lifted.levels.iter().enumerate() {
            let fa = fr.level(n);
            for j in 0..3 {
                for i in 0..3 {
                    let want = if i == j { Element::one(fa.table()) } else { Element::zero(fa.table()) };
                    assert_eq!(fa.alg().contract(j, v.component(i)), want);
                }
            }
        }
    }

    #[test]
    fn perturbed_family_fails_compatibility() {
        let fr = fat_weil(&LieAlgebraData::u1());
        let one = fr.constant(&q(1), 2);
        assert_eq!(fr.check_compatibility(&one), Ok(()));
        let mut levels = one.levels().to_vec();
        let f1 = fr.level(1);
        levels[1] = &levels[1] + &f1.t(1);
        let bad = FatElement::new(levels);
        assert!(matches!(fr.check_compatibility(&bad), Err(CompatibilityFailure::Face { level: 1, .. })));
    }

    #[test]
    fn differential_on_simplex_coordinates() {
        let fr = fat_weil(&LieAlgebraData::u1());
        let s = fr.simplicial().clone();
        let f1 = fr.level(1);
        let x = f1.include(&s.embed_tower(1, 0, &s.tower().gen("e1").unwrap()));
        let dx = f1.include(&s.embed_tower(1, 0, &s.tower().gen("s1").unwrap()));
        let lhs = f1.alg().d(&(&f1.t(1) * &x));
        assert_eq!(lhs, &(&f1.dt(1) * &x) + &(&f1.t(1) * &dx));
    }

    #[test]
    fn integration_of_lift_and_its_differential() {
        let fr = fat_weil(&LieAlgebraData::u1());
        let s = fr.simplicial().clone();
        let e = s.embed_tower(0, 0, &s.tower().gen("e1").unwrap());
        let lifted = fr.lift(&e, 1);
        let d = fr.total_differential(&lifted);
        // ∫_{Δ_1} D(ẽ) picks dt_1 (1⊗e - e⊗1) = ∂e
        let i = fr.integrate(&d);
        assert_eq!(i.get(1).unwrap(), &s.partial(0, &e));
    }
}
