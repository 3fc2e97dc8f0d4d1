//! G-differential simplicial algebras built from a tensor tower.
//!
//! Level `n` is `A^{⊗(n+1)} ⊗ B`: `n + 1` copies of the tower algebra `A`
//! (slots `0..=n`) followed by a base algebra `B` that every face and
//! degeneracy fixes. With `B` the scalars this is the tensor-power algebra of
//! `A`; with `A` the scalars it is the constant simplicial algebra on `B`.
//!
//! Level generators are named `{slot}:{id}` and `b:{id}`. Faces insert a unit
//! slot, degeneracies multiply two adjacent slots; both are relabelings of
//! generators, so they are stored as index maps.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num::{One, Zero};

use crate::algebra::{same_table, Element, GenTable, Homomorphism, Rational};
use crate::error::{presentation, Error, Result};
use crate::gda::{tensor_many, GVector, GdAlgebra};

/// An index map between generator tables: generator `g` goes to `map[g]`.
pub type GenMap = Vec<u32>;

pub(crate) fn compose_maps(outer: &GenMap, inner: &GenMap) -> GenMap {
    inner.iter().map(|&g| outer[g as usize]).collect()
}

/// One materialized level.
#[derive(Debug)]
pub struct Level {
    alg: GdAlgebra,
    slots: Vec<GenMap>,
    base: GenMap,
    /// For each level generator: `Some(slot)` or `None` for the base.
    origin: Vec<Option<usize>>,
    /// For each level generator: its index in the tower or base table.
    source_index: Vec<u32>,
}

impl Level {
    pub fn alg(&self) -> &GdAlgebra {
        &self.alg
    }

    pub fn table(&self) -> &Arc<GenTable> {
        self.alg.table()
    }

    /// Index map from the tower table into this level, at `slot`.
    pub fn slot_map(&self, slot: usize) -> &GenMap {
        &self.slots[slot]
    }

    pub fn base_map(&self) -> &GenMap {
        &self.base
    }

    pub fn n_slots(&self) -> usize {
        self.slots.len()
    }
}

#[derive(Debug)]
pub struct SimplicialGda {
    tower: GdAlgebra,
    base: GdAlgebra,
    levels: Mutex<Vec<Arc<Level>>>,
}

impl SimplicialGda {
    /// `A_n = a^{⊗(n+1)}`.
    pub fn tensor_power(a: &GdAlgebra) -> Arc<Self> {
        let base = GdAlgebra::scalars(&a.structures().iter().map(|s| s.lie().clone()).collect::<Vec<_>>());
        Self::with_base(a, &base).expect("scalars match the tower structures")
    }

    /// `A_n = tower^{⊗(n+1)} ⊗ base`.
    pub fn with_base(tower: &GdAlgebra, base: &GdAlgebra) -> Result<Arc<Self>> {
        if tower.structures().len() != base.structures().len()
            || tower.structures().iter().zip(base.structures()).any(|(a, b)| a.lie() != b.lie())
        {
            return Err(presentation("tower and base carry different Lie algebra structures"));
        }
        Ok(Arc::new(SimplicialGda { tower: tower.clone(), base: base.clone(), levels: Mutex::new(Vec::new()) }))
    }

    /// The constant simplicial algebra: every level is `base`, faces are identities.
    pub fn constant(base: &GdAlgebra) -> Arc<Self> {
        let tower = GdAlgebra::scalars(&base.structures().iter().map(|s| s.lie().clone()).collect::<Vec<_>>());
        Self::with_base(&tower, base).expect("scalars match the base structures")
    }

    pub fn tower(&self) -> &GdAlgebra {
        &self.tower
    }

    pub fn base(&self) -> &GdAlgebra {
        &self.base
    }

    /// Materializes (once) and returns level `n`. Concurrent callers get the
    /// same `Arc`.
    pub fn level(&self, n: usize) -> Arc<Level> {
        let mut levels = self.levels.lock().expect("level cache poisoned");
        while levels.len() <= n {
            let k = levels.len();
            levels.push(Arc::new(self.build_level(k)));
        }
        levels[n].clone()
    }

    pub fn alg(&self, n: usize) -> GdAlgebra {
        self.level(n).alg.clone()
    }

    pub fn table(&self, n: usize) -> Arc<GenTable> {
        self.level(n).table().clone()
    }

    fn build_level(&self, n: usize) -> Level {
        let prefixes: Vec<(String, String)> = (0..=n).map(|s| (format!("{s}:"), s.to_string())).collect();
        let mut factors: Vec<(&GdAlgebra, &str, &str)> =
            prefixes.iter().map(|(p, t)| (&self.tower, p.as_str(), t.as_str())).collect();
        factors.push((&self.base, "b:", "b"));
        let (alg, mut maps) = tensor_many(&factors).expect("level generators are distinct");
        let base = maps.pop().unwrap();
        let mut origin = vec![None; alg.table().len()];
        let mut source_index = vec![0; alg.table().len()];
        for (s, m) in maps.iter().enumerate() {
            for (g, &t) in m.iter().enumerate() {
                origin[t as usize] = Some(s);
                source_index[t as usize] = g as u32;
            }
        }
        for (g, &t) in base.iter().enumerate() {
            source_index[t as usize] = g as u32;
        }
        Level { alg, slots: maps, base, origin, source_index }
    }

    fn slot_relabel(&self, from: usize, to: usize, slot: impl Fn(usize) -> usize) -> GenMap {
        let src = self.level(from);
        let dst = self.level(to);
        (0..src.table().len())
            .map(|g| match src.origin[g] {
                Some(s) => dst.slots[slot(s)][src.source_index[g] as usize],
                None => dst.base[src.source_index[g] as usize],
            })
            .collect()
    }

    /// `ε_i^n : A_{n-1} → A_n` as an index map, `0 ≤ i ≤ n`, `n ≥ 1`.
    pub fn face_map(&self, n: usize, i: usize) -> GenMap {
        assert!(n >= 1 && i <= n, "face ε_{i}^{n} does not exist");
        self.slot_relabel(n - 1, n, |s| if s < i { s } else { s + 1 })
    }

    /// `η_i^n : A_{n+1} → A_n` as an index map, `0 ≤ i ≤ n`.
    pub fn degeneracy_map(&self, n: usize, i: usize) -> GenMap {
        assert!(i <= n, "degeneracy η_{i}^{n} does not exist");
        self.slot_relabel(n + 1, n, |s| if s <= i { s } else { s - 1 })
    }

    pub fn face(&self, n: usize, i: usize, x: &Element) -> Element {
        x.relabel(&self.table(n), &self.face_map(n, i))
    }

    pub fn degeneracy(&self, n: usize, i: usize, x: &Element) -> Element {
        x.relabel(&self.table(n), &self.degeneracy_map(n, i))
    }

    pub fn face_hom(&self, n: usize, i: usize) -> Homomorphism {
        Homomorphism::relabeling(&self.table(n - 1), &self.table(n), &self.face_map(n, i)).unwrap()
    }

    pub fn degeneracy_hom(&self, n: usize, i: usize) -> Homomorphism {
        Homomorphism::relabeling(&self.table(n + 1), &self.table(n), &self.degeneracy_map(n, i)).unwrap()
    }

    /// Identity index map of level `n`.
    fn identity_map(&self, n: usize) -> GenMap {
        (0..self.table(n).len() as u32).collect()
    }

    /// `ε_{m+k}^{m+k} ∘ … ∘ ε_{m+1}^{m+1} : A_m → A_{m+k}`.
    pub fn back_faces(&self, m: usize, k: usize) -> GenMap {
        let mut map = self.identity_map(m);
        for l in m + 1..=m + k {
            map = compose_maps(&self.face_map(l, l), &map);
        }
        map
    }

    /// `ε_0^{n+k} ∘ … ∘ ε_0^{n+1} : A_n → A_{n+k}`.
    pub fn front_faces(&self, n: usize, k: usize) -> GenMap {
        let mut map = self.identity_map(n);
        for l in n + 1..=n + k {
            map = compose_maps(&self.face_map(l, 0), &map);
        }
        map
    }

    /// `p_i^n : A_0 → A_n` as the composite of faces: first the last faces up to
    /// level `n - i`, then `i` zeroth faces.
    pub fn p_map(&self, n: usize, i: usize) -> GenMap {
        assert!(i <= n, "p_{i}^{n} does not exist");
        let first = self.back_faces(0, n - i);
        compose_maps(&self.front_faces(n - i, i), &first)
    }

    pub fn p(&self, n: usize, i: usize, x: &Element) -> Element {
        x.relabel(&self.table(n), &self.p_map(n, i))
    }

    pub fn p_gvector(&self, n: usize, i: usize, theta: &GVector) -> GVector {
        let map = self.p_map(n, i);
        let table = self.table(n);
        theta.map(|x| x.relabel(&table, &map))
    }

    /// Embeds an element of the tower algebra into slot `slot` of level `n`.
    pub fn embed_tower(&self, n: usize, slot: usize, x: &Element) -> Element {
        let lvl = self.level(n);
        x.relabel(lvl.table(), &lvl.slots[slot])
    }

    /// Embeds an element of the base algebra into level `n`.
    pub fn embed_base(&self, n: usize, x: &Element) -> Element {
        let lvl = self.level(n);
        x.relabel(lvl.table(), &lvl.base)
    }

    /// Checks the cosimplicial identities on generators for all levels `≤ max_level`.
    pub fn check_cosimplicial(&self, max_level: usize) -> Result<()> {
        let fail = |msg: String| Err(Error::CheckFailed(msg));
        // ε_j ε_i = ε_i ε_{j-1}, i < j, as maps A_{n-1} → A_{n+1}
        for n in 1..max_level {
            for j in 0..=n + 1 {
                for i in 0..j {
                    let lhs = compose_maps(&self.face_map(n + 1, j), &self.face_map(n, i));
                    let rhs = compose_maps(&self.face_map(n + 1, i), &self.face_map(n, j - 1));
                    if lhs != rhs {
                        return fail(format!("face identity fails for i = {i}, j = {j} at level {}", n + 1));
                    }
                }
            }
        }
        // η_j η_i = η_i η_{j+1}, i ≤ j, as maps A_{n+2} → A_n
        for n in 0..max_level.saturating_sub(1) {
            for j in 0..=n {
                for i in 0..=j {
                    let lhs = compose_maps(&self.degeneracy_map(n, j), &self.degeneracy_map(n + 1, i));
                    let rhs = compose_maps(&self.degeneracy_map(n, i), &self.degeneracy_map(n + 1, j + 1));
                    if lhs != rhs {
                        return fail(format!("degeneracy identity fails for i = {i}, j = {j} at level {n}"));
                    }
                }
            }
        }
        // mixed identities, as maps A_n → A_n (through A_{n+1})
        for n in 1..max_level {
            for j in 0..=n {
                for i in 0..=n + 1 {
                    let lhs = compose_maps(&self.degeneracy_map(n, j), &self.face_map(n + 1, i));
                    let rhs = if i < j {
                        compose_maps(&self.face_map(n, i), &self.degeneracy_map(n - 1, j - 1))
                    } else if i == j || i == j + 1 {
                        self.identity_map(n)
                    } else {
                        compose_maps(&self.face_map(n, i - 1), &self.degeneracy_map(n - 1, j))
                    };
                    if lhs != rhs {
                        return fail(format!("mixed identity fails for η_{j} ε_{i} at level {n}"));
                    }
                }
            }
        }
        // η_0^0 ε_i^1 = id on A_0
        for i in 0..=1 {
            if max_level >= 1 && compose_maps(&self.degeneracy_map(0, 0), &self.face_map(1, i)) != self.identity_map(0) {
                return fail(format!("η_0 ε_{i} is not the identity on level 0"));
            }
        }
        Ok(())
    }

    /// Faces and degeneracies commute with `d` and every contraction.
    pub fn check_structure_maps(&self, max_level: usize) -> Result<()> {
        let check = |src: usize, dst: usize, map: &GenMap, what: &str| -> Result<()> {
            let a = self.alg(src);
            let b = self.alg(dst);
            for g in 0..a.table().len() as u32 {
                let x = Element::generator(a.table(), g);
                let apply = |y: &Element| y.relabel(b.table(), map);
                if apply(&a.d(&x)) != b.d(&apply(&x)) {
                    return Err(Error::CheckFailed(format!("{what} does not commute with d")));
                }
                for (blk, s) in a.structures().iter().enumerate() {
                    for j in 0..s.lie().dim() {
                        if apply(&a.contract_in(blk, j, &x)) != b.contract_in(blk, j, &apply(&x)) {
                            return Err(Error::CheckFailed(format!("{what} does not commute with i_{j}")));
                        }
                    }
                }
            }
            Ok(())
        };
        for n in 1..=max_level {
            for i in 0..=n {
                check(n - 1, n, &self.face_map(n, i), &format!("ε_{i}^{n}"))?;
            }
        }
        for n in 0..max_level {
            for i in 0..=n {
                check(n + 1, n, &self.degeneracy_map(n, i), &format!("η_{i}^{n}"))?;
            }
        }
        Ok(())
    }

    /// `δ = (-1)^n d + ∂` with `∂ = Σ_i (-1)^i ε_i`.
    pub fn delta(&self, x: &BigradedElement) -> BigradedElement {
        self.delta_truncated(x, usize::MAX)
    }

    /// `δ` with every output level above `max_level` dropped.
    pub fn delta_truncated(&self, x: &BigradedElement, max_level: usize) -> BigradedElement {
        let mut out = BigradedElement::zero();
        for (&n, xn) in &x.parts {
            let alg = self.alg(n);
            let dx = alg.d(xn);
            out.add_at(n, &if n % 2 == 0 { dx } else { -&dx });
            if n < max_level {
                let mut bd = Element::zero(&self.table(n + 1));
                for i in 0..=n + 1 {
                    let f = self.face(n + 1, i, xn);
                    bd.add_scaled(&f, &sign(i));
                }
                out.add_at(n + 1, &bd);
            }
        }
        out
    }

    /// `∂` alone.
    pub fn partial(&self, n: usize, x: &Element) -> Element {
        let mut bd = Element::zero(&self.table(n + 1));
        for i in 0..=n + 1 {
            bd.add_scaled(&self.face(n + 1, i, x), &sign(i));
        }
        bd
    }

    /// `a ∨ b = (-1)^{kn} (back faces of a) · (front faces of b)` for `a` of
    /// form degree `k` at level `m` and `b` at level `n`, extended bilinearly.
    pub fn cup(&self, a: &BigradedElement, b: &BigradedElement) -> BigradedElement {
        let mut out = BigradedElement::zero();
        for (&m, am) in &a.parts {
            for (&n, bn) in &b.parts {
                let table = self.table(m + n);
                let bb = bn.relabel(&table, &self.front_faces(n, m));
                let back = self.back_faces(m, n);
                for k in am.degrees() {
                    let piece = am.homogeneous_part(k).relabel(&table, &back);
                    let prod = &piece * &bb;
                    out.add_at(m + n, &if (k as usize * n).is_multiple_of(2) { prod } else { -&prod });
                }
            }
        }
        out
    }

    /// Applies `f` to each part with its level.
    pub fn map_parts(&self, x: &BigradedElement, f: impl Fn(usize, &Element) -> Element) -> BigradedElement {
        let mut out = BigradedElement::zero();
        for (&n, xn) in &x.parts {
            out.add_at(n, &f(n, xn));
        }
        out
    }

    /// Applies every contraction and Lie derivative of structure `block` levelwise.
    pub fn is_basic_in(&self, block: usize, x: &BigradedElement) -> bool {
        x.parts.iter().all(|(&n, xn)| self.alg(n).is_basic_in(block, xn))
    }

    pub fn is_basic(&self, x: &BigradedElement) -> bool {
        self.is_basic_in(0, x)
    }
}

fn sign(i: usize) -> Rational {
    if i.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// An element of the double complex: one algebra element per level.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct BigradedElement {
    parts: BTreeMap<usize, Element>,
}

impl BigradedElement {
    pub fn zero() -> Self {
        BigradedElement { parts: BTreeMap::new() }
    }

    pub fn at(level: usize, x: Element) -> Self {
        let mut out = Self::zero();
        out.add_at(level, &x);
        out
    }

    pub fn parts(&self) -> &BTreeMap<usize, Element> {
        &self.parts
    }

    pub fn get(&self, level: usize) -> Option<&Element> {
        self.parts.get(&level)
    }

    pub fn levels(&self) -> Vec<usize> {
        self.parts.keys().copied().collect()
    }

    pub fn max_level(&self) -> Option<usize> {
        self.parts.keys().next_back().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn add_at(&mut self, level: usize, x: &Element) {
        if x.is_zero() {
            return;
        }
        match self.parts.get_mut(&level) {
            Some(cur) => {
                assert!(same_table(cur.table(), x.table()), "level {level} parts live over different tables");
                cur.add_scaled(x, &Rational::one());
                if cur.is_zero() {
                    self.parts.remove(&level);
                }
            }
            None => {
                self.parts.insert(level, x.clone());
            }
        }
    }

    pub fn add(&self, other: &BigradedElement) -> BigradedElement {
        let mut out = self.clone();
        for (&n, x) in &other.parts {
            out.add_at(n, x);
        }
        out
    }

    pub fn sub(&self, other: &BigradedElement) -> BigradedElement {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> BigradedElement {
        if c.is_zero() {
            return Self::zero();
        }
        BigradedElement { parts: self.parts.iter().map(|(&n, x)| (n, x.scale(c))).collect() }
    }

    /// Drops every level above `max_level`.
    pub fn truncate(&self, max_level: usize) -> BigradedElement {
        BigradedElement { parts: self.parts.range(..=max_level).map(|(&n, x)| (n, x.clone())).collect() }
    }

    /// `level + form degree`, if the element is homogeneous in total degree.
    pub fn total_degree(&self) -> Option<u32> {
        let mut total = None;
        for (&n, x) in &self.parts {
            for k in x.degrees() {
                let t = n as u32 + k;
                if *total.get_or_insert(t) != t {
                    return None;
                }
            }
        }
        total
    }
}

impl fmt::Debug for BigradedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for BigradedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.parts.iter().map(|(n, x)| format!("[{n}] {x}")).collect();
        write!(f, "{}", parts.join("; "))
    }
}

/// A levelwise homomorphism between simplicial algebras induced by a
/// homomorphism of tower algebras and one of base algebras.
#[derive(Clone, Debug)]
pub struct SimplicialHom {
    source: Arc<SimplicialGda>,
    target: Arc<SimplicialGda>,
    tower: Homomorphism,
    base: Homomorphism,
}

impl SimplicialHom {
    pub fn new(source: &Arc<SimplicialGda>, target: &Arc<SimplicialGda>, tower: Homomorphism, base: Homomorphism) -> Result<Self> {
        if !same_table(tower.source(), source.tower().table()) || !same_table(tower.target(), target.tower().table()) {
            return Err(presentation("tower homomorphism does not match the tower algebras"));
        }
        if !same_table(base.source(), source.base().table()) || !same_table(base.target(), target.base().table()) {
            return Err(presentation("base homomorphism does not match the base algebras"));
        }
        Ok(SimplicialHom { source: source.clone(), target: target.clone(), tower, base })
    }

    pub fn identity(s: &Arc<SimplicialGda>) -> Self {
        SimplicialHom {
            source: s.clone(),
            target: s.clone(),
            tower: Homomorphism::identity(s.tower().table()),
            base: Homomorphism::identity(s.base().table()),
        }
    }

    pub fn source(&self) -> &Arc<SimplicialGda> {
        &self.source
    }

    pub fn target(&self) -> &Arc<SimplicialGda> {
        &self.target
    }

    /// The homomorphism at level `n`: the tower map in every slot, the base map on the base.
    pub fn level_hom(&self, n: usize) -> Homomorphism {
        let src = self.source.level(n);
        let dst = self.target.level(n);
        let mut images = vec![Element::zero(dst.table()); src.table().len()];
        for s in 0..=n {
            for (g, &t) in src.slots[s].iter().enumerate() {
                images[t as usize] = self.tower.images()[g].relabel(dst.table(), &dst.slots[s]);
            }
        }
        for (g, &t) in src.base.iter().enumerate() {
            images[t as usize] = self.base.images()[g].relabel(dst.table(), &dst.base);
        }
        Homomorphism::new(src.table(), dst.table(), images).expect("slotwise images keep degrees")
    }

    pub fn apply(&self, x: &BigradedElement) -> BigradedElement {
        let mut out = BigradedElement::zero();
        for (&n, xn) in x.parts() {
            out.add_at(n, &self.level_hom(n).apply(xn));
        }
        out
    }

    /// Checks that the tower and base maps commute with `d` and the contractions
    /// on generators. Face and degeneracy compatibility is automatic for
    /// slotwise maps but is re-checked through `max_level`.
    pub fn check(&self, max_level: usize) -> Result<()> {
        for (hom, a, b, what) in [
            (&self.tower, self.source.tower(), self.target.tower(), "tower"),
            (&self.base, self.source.base(), self.target.base(), "base"),
        ] {
            check_gda_hom(hom, a, b).map_err(|e| Error::CheckFailed(format!("{what} map: {e}")))?;
        }
        for n in 1..=max_level {
            let phi_n = self.level_hom(n);
            let phi_prev = self.level_hom(n - 1);
            for i in 0..=n {
                for g in 0..self.source.table(n - 1).len() as u32 {
                    let x = Element::generator(&self.source.table(n - 1), g);
                    if phi_n.apply(&self.source.face(n, i, &x)) != self.target.face(n, i, &phi_prev.apply(&x)) {
                        return Err(Error::CheckFailed(format!("map does not commute with ε_{i}^{n}")));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Checks `φ d = d φ` and `φ i = i φ` on generators.
pub fn check_gda_hom(hom: &Homomorphism, a: &GdAlgebra, b: &GdAlgebra) -> std::result::Result<(), String> {
    for g in 0..a.table().len() as u32 {
        let x = Element::generator(a.table(), g);
        if hom.apply(&a.d(&x)) != b.d(&hom.apply(&x)) {
            return Err(format!("does not commute with d on `{}`", a.table().get(g).id));
        }
        for (blk, s) in a.structures().iter().enumerate() {
            for j in 0..s.lie().dim() {
                if hom.apply(&a.contract_in(blk, j, &x)) != b.contract_in(blk, j, &hom.apply(&x)) {
                    return Err(format!("does not commute with i_{j} on `{}`", a.table().get(g).id));
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::LieAlgebraData;
    use crate::weil::weil_algebra;

    fn tower(lie: &LieAlgebraData) -> Arc<SimplicialGda> {
        SimplicialGda::tensor_power(&weil_algebra(lie))
    }

    #[test]
    fn level_zero_is_the_algebra() {
        let s = tower(&LieAlgebraData::so3());
        assert_eq!(s.table(0).len(), 6);
        assert_eq!(s.table(2).len(), 18);
    }

    #[test]
    fn first_faces_on_tensor_tower() {
        let s = tower(&LieAlgebraData::u1());
        let w = s.tower().clone();
        let x = w.gen("e1").unwrap();
        // ε_0 x = 1⊗x, ε_1 x = x⊗1
        assert_eq!(s.face(1, 0, &s.embed_tower(0, 0, &x)), s.embed_tower(1, 1, &x));
        assert_eq!(s.face(1, 1, &s.embed_tower(0, 0, &x)), s.embed_tower(1, 0, &x));
    }

    #[test]
    fn degeneracy_multiplies_adjacent_slots() {
        let s = tower(&LieAlgebraData::u1());
        let w = s.tower().clone();
        let (e, sg) = (w.gen("e1").unwrap(), w.gen("s1").unwrap());
        let xy = &s.embed_tower(1, 0, &sg) * &s.embed_tower(1, 1, &e);
        assert_eq!(s.degeneracy(0, 0, &xy), s.embed_tower(0, 0, &(&sg * &e)));
        // two odd factors in adjacent slots multiply to zero when equal
        let ee = &s.embed_tower(1, 0, &e) * &s.embed_tower(1, 1, &e);
        assert!(s.degeneracy(0, 0, &ee).is_zero());
    }

    #[test]
    fn quillen_sign_across_slots() {
        let s = tower(&LieAlgebraData::u1());
        let e = s.tower().gen("e1").unwrap();
        let a = s.embed_tower(1, 0, &e);
        let b = s.embed_tower(1, 1, &e);
        assert_eq!(&b * &a, -(&a * &b));
    }

    #[test]
    fn cosimplicial_identities_hold() {
        for lie in [LieAlgebraData::u1(), LieAlgebraData::so3()] {
            let s = tower(&lie);
            s.check_cosimplicial(4).unwrap();
            s.check_structure_maps(3).unwrap();
        }
    }

    #[test]
    fn p_maps_put_the_element_in_slot_i() {
        let s = tower(&LieAlgebraData::u1());
        let x = s.tower().gen("s1").unwrap();
        for n in 0..=3 {
            for i in 0..=n {
                assert_eq!(s.p(n, i, &s.embed_tower(0, 0, &x)), s.embed_tower(n, i, &x));
            }
        }
    }

    #[test]
    fn partial_of_level_zero_element() {
        let s = tower(&LieAlgebraData::u1());
        let x = s.tower().gen("e1").unwrap();
        let dx = s.partial(0, &s.embed_tower(0, 0, &x));
        assert_eq!(dx, &s.embed_tower(1, 1, &x) - &s.embed_tower(1, 0, &x));
    }

    #[test]
    fn delta_squares_to_zero_on_generators() {
        let s = tower(&LieAlgebraData::so3());
        for n in 0..=2 {
            for g in 0..s.table(n).len() as u32 {
                let x = BigradedElement::at(n, Element::generator(&s.table(n), g));
                assert!(s.delta(&s.delta(&x)).is_zero());
            }
        }
    }

    #[test]
    fn unit_is_neutral_for_cup() {
        let s = tower(&LieAlgebraData::u1());
        let one = BigradedElement::at(0, Element::one(&s.table(0)));
        let x = BigradedElement::at(2, Element::generator(&s.table(2), 3));
        assert_eq!(s.cup(&one, &x), x);
        assert_eq!(s.cup(&x, &one), x);
    }

    #[test]
    fn constant_simplicial_algebra_has_trivial_boundary() {
        let w = weil_algebra(&LieAlgebraData::u1());
        let s = SimplicialGda::constant(&w);
        let x = s.embed_base(0, &w.gen("e1").unwrap());
        assert_eq!(s.face(1, 0, &x), s.face(1, 1, &x));
        assert!(s.partial(0, &x).is_zero());
        s.check_cosimplicial(3).unwrap();
    }

    #[test]
    fn shared_level_objects() {
        let s = tower(&LieAlgebraData::u1());
        let a = s.level(2);
        let b = s.level(2);
        assert!(Arc::ptr_eq(&a, &b));
    }
}
