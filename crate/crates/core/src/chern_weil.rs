//! The Chern-Weil map of a simplicial G-differential algebra with a
//! pseudo-connection, computed two ways: through the fat realization and
//! through the simplicial Weil algebra.

use std::sync::Arc;

use num::{One, Zero};

use crate::algebra::{q_frac, same_table, Element, GenTable, Homomorphism, Rational};
use crate::cohomology::{primitive, SimplicialWindow};
use crate::error::{presentation, Error, Result};
use crate::fat::{FatElement, FatRealization};
use crate::gda::{bracket, curvature_in, is_connection_in, GVector, GdAlgebra};
use crate::lie::LieAlgebraData;
use crate::simplicial::{BigradedElement, SimplicialGda, SimplicialHom};
use crate::weil::{canonical_connection, evaluate_invariant, weil_algebra, InvariantPolynomial};

/// A connection on level 0 of a simplicial algebra, for one of its structures.
#[derive(Clone, Debug)]
pub struct PseudoConnection {
    host: Arc<SimplicialGda>,
    block: usize,
    theta: GVector,
}

impl PseudoConnection {
    pub fn new(host: &Arc<SimplicialGda>, theta: GVector) -> Result<Self> {
        Self::new_in(host, 0, theta)
    }

    pub fn new_in(host: &Arc<SimplicialGda>, block: usize, theta: GVector) -> Result<Self> {
        let alg = host.alg(0);
        if block >= alg.structures().len() {
            return Err(presentation(format!("level 0 has no structure {block}")));
        }
        let report = is_connection_in(&alg, block, &theta)?;
        if !report.is_connection {
            return Err(Error::CheckFailed(format!(
                "not a connection on level 0: {}",
                report.failure.unwrap_or_default()
            )));
        }
        Ok(PseudoConnection { host: host.clone(), block, theta })
    }

    /// `η` on `W(g)_•`.
    pub fn canonical(lie: &LieAlgebraData) -> Self {
        let w = weil_algebra(lie);
        let host = SimplicialGda::tensor_power(&w);
        let eta = canonical_connection(&w);
        let theta = eta.map(|x| host.embed_tower(0, 0, x));
        PseudoConnection { host, block: 0, theta }
    }

    pub fn host(&self) -> &Arc<SimplicialGda> {
        &self.host
    }

    pub fn block(&self) -> usize {
        self.block
    }

    pub fn theta(&self) -> &GVector {
        &self.theta
    }

    pub fn lie(&self) -> LieAlgebraData {
        self.host.alg(0).structure(self.block).lie().clone()
    }

    /// `Ω = dθ + ½[θ, θ]` on level 0.
    pub fn curvature(&self) -> GVector {
        curvature_in(&self.host.alg(0), self.block, &self.theta)
    }
}

/// `Ω_total = ∂θ + Ω`: the part at level 1 and the part at level 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TotalCurvature {
    pub del_theta: GVector,
    pub omega: GVector,
}

impl TotalCurvature {
    /// Component `i` as a bigraded element of total degree 2.
    pub fn component(&self, i: usize) -> BigradedElement {
        let mut out = BigradedElement::at(0, self.omega.component(i).clone());
        out.add_at(1, self.del_theta.component(i));
        out
    }

    /// True when `∂θ = 0`, i.e. θ is a connection in the simplicial sense.
    pub fn is_connection_case(&self) -> bool {
        self.del_theta.is_zero()
    }
}

pub fn total_curvature(pc: &PseudoConnection) -> TotalCurvature {
    TotalCurvature { del_theta: pc.theta.map(|x| pc.host.partial(0, x)), omega: pc.curvature() }
}

#[derive(Clone, Debug)]
pub struct IdentityReport {
    pub holds: bool,
    /// `lhs - rhs`, per component where that makes sense.
    pub residual: Vec<BigradedElement>,
}

impl IdentityReport {
    fn from_residual(residual: Vec<BigradedElement>) -> Self {
        IdentityReport { holds: residual.iter().all(|r| r.is_zero()), residual }
    }
}

/// `[a, b]^i = Σ f^i_{jk} a_j ∨ b_k`.
fn cup_bracket(s: &SimplicialGda, lie: &LieAlgebraData, a: &[BigradedElement], b: &[BigradedElement]) -> Vec<BigradedElement> {
    let n = lie.dim();
    let mut out = vec![BigradedElement::zero(); n];
    for j in 0..n {
        for k in 0..n {
            let mut prod = None;
            for (i, o) in out.iter_mut().enumerate() {
                let c = lie.f(i, j, k);
                if c.is_zero() {
                    continue;
                }
                let p = prod.get_or_insert_with(|| s.cup(&a[j], &b[k]));
                *o = o.add(&p.scale(c));
            }
        }
    }
    out
}

/// `δΩ_total = ½([Ω_total, θ] - [θ, Ω_total])` with the cup bracket.
pub fn check_bianchi(pc: &PseudoConnection) -> IdentityReport {
    let s = &pc.host;
    let lie = pc.lie();
    let tc = total_curvature(pc);
    let omega: Vec<BigradedElement> = (0..lie.dim()).map(|i| tc.component(i)).collect();
    let theta: Vec<BigradedElement> = pc.theta.components().iter().map(|x| BigradedElement::at(0, x.clone())).collect();
    let left = cup_bracket(s, &lie, &omega, &theta);
    let right = cup_bracket(s, &lie, &theta, &omega);
    let half = q_frac(1, 2);
    let residual = (0..lie.dim())
        .map(|i| s.delta(&omega[i]).sub(&left[i].sub(&right[i]).scale(&half)))
        .collect();
    IdentityReport::from_residual(residual)
}

fn check_polynomial(pc: &PseudoConnection, f: &InvariantPolynomial) -> Result<()> {
    let lie = pc.lie();
    if f.dim() != lie.dim() {
        return Err(Error::Dimension(format!("polynomial in {} variables for dim {}", f.dim(), lie.dim())));
    }
    f.check_invariance(&lie)
}

/// `c_θ̃(f) = f(Ω̃)` in the fat realization, levels `0..=2·deg f`.
pub fn fat_chern_weil_form(pc: &PseudoConnection, f: &InvariantPolynomial) -> Result<(FatRealization, FatElement)> {
    check_polynomial(pc, f)?;
    let fat = FatRealization::new(&pc.host);
    let top = 2 * f.degree() as usize;
    let theta = fat.lift_connection(&pc.theta, top);
    let omega = fat.curvature_in(pc.block, &theta);
    let levels = omega.levels.iter().map(|o| evaluate_invariant(f, o)).collect::<Result<Vec<_>>>()?;
    Ok((fat, FatElement::new(levels)))
}

/// First construction: `z_θ(f) = I(f(Ω̃))`.
pub fn z_theta_fat(pc: &PseudoConnection, f: &InvariantPolynomial) -> Result<BigradedElement> {
    let (fat, form) = fat_chern_weil_form(pc, f)?;
    Ok(fat.integrate(&form))
}

/// `c_θ : W(g) → A` for a connection `θ` on `alg`, where `w` is `W(g)` with
/// generators `e1..en`, `s1..sn`.
pub fn weil_homomorphism(w: &GdAlgebra, alg: &GdAlgebra, block: usize, theta: &GVector) -> Homomorphism {
    let omega = curvature_in(alg, block, theta);
    weil_images(w.table(), alg.table(), theta, &omega)
}

fn weil_images(w: &Arc<GenTable>, target: &Arc<GenTable>, theta: &GVector, omega: &GVector) -> Homomorphism {
    let mut images = vec![Element::zero(target); w.len()];
    for i in 0..theta.dim() {
        images[w.lookup(&format!("e{}", i + 1)).expect("Weil generator") as usize] = theta.component(i).clone();
        images[w.lookup(&format!("s{}", i + 1)).expect("Weil generator") as usize] = omega.component(i).clone();
    }
    Homomorphism::new(w, target, images).expect("connection components have degree 1, curvature degree 2")
}

/// The map `c : W(g)_• → A_•`, `c(x_0⊗…⊗x_n) = c_{θ_0^n}(x_0)⋯c_{θ_n^n}(x_n)`
/// with `θ_i^n = p_i^n(θ)`.
#[derive(Clone, Debug)]
pub struct SimplicialWeilMap {
    /// `η` on `W(g)_•`
    universal: PseudoConnection,
    pc: PseudoConnection,
}

impl SimplicialWeilMap {
    pub fn new(pc: &PseudoConnection) -> Self {
        SimplicialWeilMap { universal: PseudoConnection::canonical(&pc.lie()), pc: pc.clone() }
    }

    /// `W(g)_•`.
    pub fn source(&self) -> &Arc<SimplicialGda> {
        &self.universal.host
    }

    pub fn level(&self, n: usize) -> Homomorphism {
        let host = &self.pc.host;
        let target = host.table(n);
        let src = self.universal.host.level(n);
        let omega = self.pc.curvature();
        let w = self.universal.host.tower().table();
        let mut images = vec![Element::zero(&target); src.table().len()];
        for i in 0..=n {
            let c_i = weil_images(w, &target, &host.p_gvector(n, i, &self.pc.theta), &host.p_gvector(n, i, &omega));
            for (g, &t) in src.slot_map(i).iter().enumerate() {
                images[t as usize] = c_i.images()[g].clone();
            }
        }
        Homomorphism::new(src.table(), &target, images).expect("slotwise images keep degrees")
    }

    pub fn apply(&self, x: &BigradedElement) -> BigradedElement {
        let mut out = BigradedElement::zero();
        for (&n, xn) in x.parts() {
            out.add_at(n, &self.level(n).apply(xn));
        }
        out
    }

    /// Checks on generators, for all levels `≤ max_level`, that `c` commutes
    /// with `d`, the contractions of its structure, every face and every
    /// degeneracy.
    pub fn check(&self, max_level: usize) -> Result<()> {
        let host = &self.pc.host;
        let fail = |what: String| Err(Error::CheckFailed(what));
        let maps: Vec<Homomorphism> = (0..=max_level).map(|n| self.level(n)).collect();
        for (n, c) in maps.iter().enumerate() {
            let src = self.universal.host.alg(n);
            let dst = host.alg(n);
            for g in 0..src.table().len() as u32 {
                let x = Element::generator(src.table(), g);
                let cx = c.apply(&x);
                if c.apply(&src.d(&x)) != dst.d(&cx) {
                    return fail(format!("c does not commute with d at level {n}"));
                }
                for j in 0..src.lie().dim() {
                    if c.apply(&src.contract(j, &x)) != dst.contract_in(self.pc.block, j, &cx) {
                        return fail(format!("c does not commute with i_{j} at level {n}"));
                    }
                }
            }
            if n == 0 {
                continue;
            }
            let prev = self.universal.host.alg(n - 1);
            for g in 0..prev.table().len() as u32 {
                let x = Element::generator(prev.table(), g);
                for i in 0..=n {
                    if c.apply(&self.universal.host.face(n, i, &x)) != host.face(n, i, &maps[n - 1].apply(&x)) {
                        return fail(format!("c does not commute with ε_{i}^{n}"));
                    }
                }
            }
            for g in 0..src.table().len() as u32 {
                let x = Element::generator(src.table(), g);
                for i in 0..n {
                    if maps[n - 1].apply(&self.universal.host.degeneracy(n - 1, i, &x)) != host.degeneracy(n - 1, i, &c.apply(&x)) {
                        return fail(format!("c does not commute with η_{i}^{}", n - 1));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Second construction: `z^s_θ(f) = c(Z(f))` with `Z(f) = z_η(f)` on `W(g)_•`.
pub fn z_theta_simplicial(pc: &PseudoConnection, f: &InvariantPolynomial) -> Result<BigradedElement> {
    check_polynomial(pc, f)?;
    let c = SimplicialWeilMap::new(pc);
    let z = z_theta_fat(&c.universal, f)?;
    Ok(c.apply(&z))
}

/// Checks `z_{φ(θ)}(f) = φ(z_θ(f))`. With `twist`, the transported connection
/// is `M·φ(θ)`: this is how a map induced by an automorphism of g is turned
/// back into a connection for the original action, and then `f` must be
/// invariant under `M`.
pub fn check_functoriality(
    phi: &SimplicialHom,
    pc: &PseudoConnection,
    f: &InvariantPolynomial,
    twist: Option<&[Vec<Rational>]>,
) -> Result<IdentityReport> {
    if !same_table(&phi.source().table(0), &pc.host.table(0)) {
        return Err(presentation("the map does not start at the host of the connection"));
    }
    let phi0 = phi.level_hom(0);
    let mut moved = pc.theta.apply_hom(&phi0);
    if let Some(m) = twist {
        moved = moved.transform(m);
    }
    let target = PseudoConnection::new_in(phi.target(), pc.block, moved)?;
    let lhs = z_theta_fat(&target, f)?;
    let rhs = phi.apply(&z_theta_fat(pc, f)?);
    Ok(IdentityReport::from_residual(vec![lhs.sub(&rhs)]))
}

/// A finite window `levels ≤ level_bound`, form degrees `≤ degree_bound`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Window {
    pub level_bound: usize,
    pub degree_bound: u32,
}

/// Solves `δx = z_{θ1}(f) - z_{θ2}(f)` in the basic part of the window.
pub fn certify_connection_independence(
    pc1: &PseudoConnection,
    pc2: &PseudoConnection,
    f: &InvariantPolynomial,
    window: Window,
) -> Result<BigradedElement> {
    if !Arc::ptr_eq(&pc1.host, &pc2.host) || pc1.block != pc2.block {
        return Err(presentation("the two connections live on different algebras"));
    }
    let diff = z_theta_fat(pc1, f)?.sub(&z_theta_fat(pc2, f)?);
    if diff.is_zero() {
        return Ok(BigradedElement::zero());
    }
    let w = SimplicialWindow::new(&pc1.host, window.level_bound, window.degree_bound).basic(pc1.block);
    primitive(&w, 2 * f.degree(), &diff)
}

#[derive(Clone, Debug)]
pub struct MultiplicativityReport {
    /// `z(fg) = z(f) ∨ z(g)` exactly.
    pub on_the_nose: bool,
    /// A basic `x` with `δx = z(fg) - z(f) ∨ z(g)` when they differ.
    pub primitive: Option<BigradedElement>,
}

pub fn check_multiplicativity(
    pc: &PseudoConnection,
    f: &InvariantPolynomial,
    g: &InvariantPolynomial,
    window: Window,
) -> Result<MultiplicativityReport> {
    let lhs = z_theta_fat(pc, &f.mul(g))?;
    let rhs = pc.host.cup(&z_theta_fat(pc, f)?, &z_theta_fat(pc, g)?);
    let diff = lhs.sub(&rhs);
    if diff.is_zero() {
        return Ok(MultiplicativityReport { on_the_nose: true, primitive: None });
    }
    let w = SimplicialWindow::new(&pc.host, window.level_bound, window.degree_bound).basic(pc.block);
    let x = primitive(&w, 2 * (f.degree() + g.degree()), &diff)?;
    Ok(MultiplicativityReport { on_the_nose: false, primitive: Some(x) })
}

/// The fat curvature at level `n` written through `θ_i = p_i^n θ`,
/// `η_k = θ_{k+1} - θ_k` and `s_i = t_0 + … + t_i`:
///
/// `Ω̃_n = -Σ_{i<n} ds_i η_i + Σ_i t_i Ω_i - ½ Σ_{k,l} c_{kl} [η_k, η_l]`,
/// `c_{kl} = Σ_{i>max(k,l)} t_i - (Σ_{i>k} t_i)(Σ_{j>l} t_j)`.
pub fn expanded_fat_curvature(pc: &PseudoConnection, n: usize) -> GVector {
    expanded_with_sign(pc, n, -Rational::one())
}

fn expanded_with_sign(pc: &PseudoConnection, n: usize, product_sign: Rational) -> GVector {
    let fat = FatRealization::new(&pc.host);
    let fa = fat.level(n);
    let lie = pc.lie();
    let omega = pc.curvature();
    let theta: Vec<GVector> = (0..=n).map(|i| fa.include_gvector(&pc.host.p_gvector(n, i, &pc.theta))).collect();
    let omegas: Vec<GVector> = (0..=n).map(|i| fa.include_gvector(&pc.host.p_gvector(n, i, &omega))).collect();
    let t: Vec<Element> = (0..=n).map(|i| fa.t(i)).collect();
    let eta: Vec<GVector> = (0..n).map(|k| theta[k + 1].sub(&theta[k])).collect();
    let tail = |k: usize| -> Element {
        let mut out = Element::zero(fa.table());
        for ti in &t[k + 1..] {
            out = &out + ti;
        }
        out
    };

    let mut out = GVector::zero(fa.table(), lie.dim());
    let mut s = Element::zero(fa.table());
    for i in 0..n {
        s = &s + &t[i];
        let ds = fa.alg().d(&s);
        out = out.sub(&eta[i].map(|x| &ds * x));
    }
    for i in 0..=n {
        out = out.add(&omegas[i].map(|x| &t[i] * x));
    }
    let half = q_frac(1, 2);
    for k in 0..n {
        for l in 0..n {
            let c = &tail(k.max(l)) + &(&tail(k) * &tail(l)).scale(&product_sign);
            let br = bracket(&lie, &eta[k], &eta[l]);
            out = out.sub(&br.map(|x| (&c * x).scale(&half)));
        }
    }
    out
}

/// Compares `expanded_fat_curvature` with the fat curvature of `θ̃` at every
/// level `≤ top`.
pub fn check_curvature_expansion(pc: &PseudoConnection, top: usize) -> Result<()> {
    let fat = FatRealization::new(&pc.host);
    let omega = fat.curvature_in(pc.block, &fat.lift_connection(&pc.theta, top));
    for (n, o) in omega.levels.iter().enumerate() {
        if *o != expanded_fat_curvature(pc, n) {
            return Err(Error::CheckFailed(format!("curvature expansion differs at level {n}")));
        }
    }
    Ok(())
}

/// `W(g) ⊗ W(g)` with generator ids `ae*`, `as*`, `be*`, `bs*`, and its
/// tensor-power tower.
pub fn weil_pair_host(lie: &LieAlgebraData) -> (GdAlgebra, Arc<SimplicialGda>) {
    let w = weil_algebra(lie);
    let tower = w.tensor(&w, "a", "b").expect("distinct prefixes");
    let host = SimplicialGda::tensor_power(&tower);
    (tower, host)
}

/// The copy `η` of the factor with `prefix` on level 0 of a pair host.
pub fn pair_copy(host: &SimplicialGda, prefix: &str) -> Result<GVector> {
    let dim = host.tower().lie().dim();
    GVector::new(
        (1..=dim)
            .map(|i| Ok(host.embed_tower(0, 0, &host.tower().gen(&format!("{prefix}e{i}"))?)))
            .collect::<Result<Vec<_>>>()?,
    )
}

/// The endomorphism of a pair host sending the `b` factor onto the `a` factor.
/// It kills no simplicial structure, so it is the collapse used for
/// functoriality.
pub fn collapse_map(host: &Arc<SimplicialGda>) -> Result<SimplicialHom> {
    let tower = host.tower();
    let table = tower.table();
    let images = table
        .generators()
        .iter()
        .map(|g| tower.gen(&g.id.replacen('b', "a", 1)))
        .collect::<Result<Vec<_>>>()?;
    let collapse = Homomorphism::new(table, table, images)?;
    SimplicialHom::new(host, host, collapse, Homomorphism::identity(host.base().table()))
}

/// The map of `W(g)_•` induced by an automorphism `m` of g (columns are the
/// images of the basis), with the twist matrix turning `φ(η)` back into a
/// connection for the original action.
pub fn lie_automorphism_map(pc: &PseudoConnection, m: &[Vec<Rational>]) -> Result<(SimplicialHom, Vec<Vec<Rational>>)> {
    let lie = pc.lie();
    lie.check_automorphism(m)?;
    let w = pc.host.tower().clone();
    let dim = lie.dim();
    // dual action: e^i ↦ Σ_j m_ji e^j, same for s
    let mut images = Vec::with_capacity(w.table().len());
    for g in w.table().generators() {
        let (kind, idx) = g.id.split_at(1);
        let i = idx.parse::<usize>().map_err(|_| presentation(format!("{} is not a Weil generator", g.id)))? - 1;
        let mut out = w.zero();
        for (j, row) in m.iter().enumerate() {
            out.add_scaled(&w.gen(&format!("{kind}{}", j + 1))?, &row[i]);
        }
        images.push(out);
    }
    let tower = Homomorphism::new(w.table(), w.table(), images)?;
    let phi = SimplicialHom::new(&pc.host, &pc.host, tower, Homomorphism::identity(pc.host.base().table()))?;
    let inverse = crate::lie::invert(m).ok_or_else(|| Error::CheckFailed("matrix is not invertible".into()))?;
    let twist = (0..dim).map(|i| (0..dim).map(|j| inverse[j][i].clone()).collect()).collect();
    Ok((phi, twist))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::q;
    use crate::weil::weil_curvature;

    fn canonical(lie: LieAlgebraData) -> PseudoConnection {
        PseudoConnection::canonical(&lie)
    }

    #[test]
    fn total_curvature_of_eta() {
        let pc = canonical(LieAlgebraData::u1());
        let s = pc.host();
        let tc = total_curvature(&pc);
        let e = s.tower().gen("e1").unwrap();
        let want = &s.embed_tower(1, 1, &e) - &s.embed_tower(1, 0, &e);
        assert_eq!(tc.del_theta.component(0), &want);
        assert_eq!(tc.omega, weil_curvature(s.tower(), "").map(|x| s.embed_tower(0, 0, x)));
        assert_eq!(tc.component(0).total_degree(), Some(2));
        assert!(!tc.is_connection_case());
    }

    #[test]
    fn bianchi_holds_for_eta() {
        for lie in [LieAlgebraData::u1(), LieAlgebraData::so3(), LieAlgebraData::sl2()] {
            let report = check_bianchi(&canonical(lie));
            assert!(report.holds, "{:?}", report.residual);
        }
    }

    #[test]
    fn unit_polynomial_gives_unit() {
        let pc = canonical(LieAlgebraData::so3());
        let one = InvariantPolynomial::one(3);
        let z = z_theta_fat(&pc, &one).unwrap();
        assert_eq!(z, BigradedElement::at(0, Element::one(&pc.host().table(0))));
        assert_eq!(z_theta_simplicial(&pc, &one).unwrap(), z);
    }

    #[test]
    fn u1_linear_class_is_closed_and_basic() {
        let pc = canonical(LieAlgebraData::u1());
        let f = InvariantPolynomial::coordinate(&LieAlgebraData::u1(), 0).unwrap();
        let z = z_theta_fat(&pc, &f).unwrap();
        assert!(pc.host().delta(&z).is_zero());
        assert!(pc.host().is_basic(&z));
        assert_eq!(z.max_level(), Some(1));
        assert_eq!(z_theta_simplicial(&pc, &f).unwrap(), z);
    }

    #[test]
    fn weil_map_is_simplicial() {
        let lie = LieAlgebraData::so3();
        let w = weil_algebra(&lie);
        // a nontrivial host: W(g) ⊗ W(g) tower, θ the average of the two copies
        let tower = w.tensor(&w, "a", "b").unwrap();
        let host = SimplicialGda::tensor_power(&tower);
        let half = q_frac(1, 2);
        let theta = GVector::new(
            (1..=3)
                .map(|i| {
                    let a = host.embed_tower(0, 0, &tower.gen(&format!("ae{i}")).unwrap());
                    let b = host.embed_tower(0, 0, &tower.gen(&format!("be{i}")).unwrap());
                    (&a + &b).scale(&half)
                })
                .collect(),
        )
        .unwrap();
        let pc = PseudoConnection::new(&host, theta).unwrap();
        SimplicialWeilMap::new(&pc).check(3).unwrap();
    }

    #[test]
    fn curvature_expansion_matches_fat_curvature() {
        let pc = canonical(LieAlgebraData::so3());
        check_curvature_expansion(&pc, 3).unwrap();
    }

    #[test]
    fn printed_product_sign_does_not_match() {
        let pc = canonical(LieAlgebraData::so3());
        let fat = FatRealization::new(pc.host());
        let omega = fat.curvature(&fat.lift_connection(pc.theta(), 2));
        assert_ne!(omega.levels[2], expanded_with_sign(&pc, 2, q(1)));
        assert_eq!(omega.levels[2], expanded_with_sign(&pc, 2, q(-1)));
    }
}
