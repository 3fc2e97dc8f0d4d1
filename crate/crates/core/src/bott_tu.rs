//! The equivariant layer: an algebra `a` with commuting G- and H-structures
//! (structure 0 is G, structure 1 is H), the connection
//! `Ξ = Σ (1⊗ξ^i) L_i + 1⊗θ` on `W(h)⊗a` with `L_i = -i^H_{Y_i} θ`, and the
//! map `K = I ∘ (c_η̃ ⊗ id)` into `W(h)_• ⊗ a`.

use std::sync::Arc;

use crate::algebra::{Element, Homomorphism};
use crate::chern_weil::PseudoConnection;
use crate::error::{presentation, Error, Result};
use crate::fat::FatRealization;
use crate::gda::{curvature_in, is_connection_in, tensor_many, GVector, GdAlgebra};
use crate::lie::LieAlgebraData;
use crate::simplicial::{BigradedElement, GenMap, SimplicialGda};
use crate::weil::{evaluate_invariant, weil_algebra, InvariantPolynomial};

pub const G: usize = 0;
pub const H: usize = 1;

#[derive(Debug)]
pub struct BottTu {
    a: GdAlgebra,
    theta: GVector,
    total: GdAlgebra,
    weil_map: GenMap,
    a_map: GenMap,
    xi: GVector,
    tower: Arc<SimplicialGda>,
    eta: PseudoConnection,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BottTuReport {
    pub g_connection: bool,
    pub h_basic: bool,
    pub failure: Option<String>,
}

/// `W(h)` with a trivial G-structure in front.
fn weil_h(g: &LieAlgebraData, h: &LieAlgebraData) -> GdAlgebra {
    weil_algebra(h).with_trivial_structure_first(g)
}

/// Builds `Ξ` for an H-invariant G-connection `theta` on `a`.
pub fn bott_tu_connection(a: &GdAlgebra, theta: &GVector) -> Result<BottTu> {
    if a.structures().len() != 2 {
        return Err(presentation("expected a G-structure and an H-structure"));
    }
    let g = a.structure(G).lie().clone();
    let h = a.structure(H).lie().clone();
    let report = is_connection_in(a, G, theta)?;
    if !report.is_connection {
        return Err(Error::CheckFailed(format!("not a G-connection: {}", report.failure.unwrap_or_default())));
    }
    for j in 0..h.dim() {
        for (i, c) in theta.components().iter().enumerate() {
            if !a.lie_derivative_in(H, j, c).is_zero() {
                return Err(Error::CheckFailed(format!("connection component {i} is not H-invariant under Y_{j}")));
            }
        }
    }
    let wh = weil_h(&g, &h);
    let (total, maps) = tensor_many(&[(&wh, "w", "0"), (a, "", "1")])?;
    let (weil_map, a_map) = (maps[0].clone(), maps[1].clone());
    let embed_a = |x: &Element| x.relabel(total.table(), &a_map);
    let mut xi: Vec<Element> = theta.components().iter().map(embed_a).collect();
    for j in 0..h.dim() {
        let e = Element::generator(total.table(), weil_map[wh.table().lookup(&format!("e{}", j + 1)).unwrap() as usize]);
        for (comp, c) in xi.iter_mut().zip(theta.components()) {
            // L_j is a constant: the contraction of a degree-one element
            let l = -a.contract_in(H, j, c).constant_term();
            comp.add_scaled(&e, &l);
        }
    }
    let xi = GVector::new(xi)?;

    let tower = SimplicialGda::with_base(&wh, a)?;
    let eta = GVector::new((1..=h.dim()).map(|i| tower.embed_tower(0, 0, &wh.gen(&format!("e{i}")).unwrap())).collect())?;
    let eta = PseudoConnection::new_in(&tower, H, eta)?;
    Ok(BottTu { a: a.clone(), theta: theta.clone(), total, weil_map, a_map, xi, tower, eta })
}

impl BottTu {
    pub fn algebra(&self) -> &GdAlgebra {
        &self.a
    }

    pub fn theta(&self) -> &GVector {
        &self.theta
    }

    /// `W(h) ⊗ a`.
    pub fn total(&self) -> &GdAlgebra {
        &self.total
    }

    /// `Ξ`.
    pub fn connection(&self) -> &GVector {
        &self.xi
    }

    /// `W(h)_• ⊗ a`.
    pub fn simplicial(&self) -> &Arc<SimplicialGda> {
        &self.tower
    }

    pub fn embed_a(&self, x: &Element) -> Element {
        x.relabel(self.total.table(), &self.a_map)
    }

    pub fn embed_weil(&self, x: &Element) -> Element {
        x.relabel(self.total.table(), &self.weil_map)
    }

    /// Checks that `Ξ` is a G-connection and is H-basic.
    pub fn check(&self) -> Result<BottTuReport> {
        let conn = is_connection_in(&self.total, G, &self.xi)?;
        if !conn.is_connection {
            return Ok(BottTuReport { g_connection: false, h_basic: false, failure: conn.failure });
        }
        let h_basic = self.xi.components().iter().all(|c| self.total.is_basic_in(H, c));
        let failure = (!h_basic).then(|| "Ξ is not H-basic".to_string());
        Ok(BottTuReport { g_connection: true, h_basic, failure })
    }

    /// `z_BT(f) = f(curvature of Ξ)`.
    pub fn z_bt(&self, f: &InvariantPolynomial) -> Result<Element> {
        let g = self.total.structure(G).lie();
        if f.dim() != g.dim() {
            return Err(Error::Dimension(format!("polynomial in {} variables for dim {}", f.dim(), g.dim())));
        }
        f.check_invariance(g)?;
        evaluate_invariant(f, &curvature_in(&self.total, G, &self.xi))
    }

    /// `K(x) = I((c_η̃ ⊗ id)(x))`.
    pub fn k_map(&self, x: &Element) -> BigradedElement {
        let top = x.degrees().into_iter().max().unwrap_or(0) as usize;
        let fat = FatRealization::new(&self.tower);
        let eta = fat.lift_connection(self.eta.theta(), top);
        let omega = fat.curvature_in(H, &eta);
        let wh = self.tower.tower();
        let mut out = BigradedElement::zero();
        for n in 0..=top {
            let fa = fat.level(n);
            let mut images = vec![Element::zero(fa.table()); self.total.table().len()];
            for i in 0..wh.structure(H).lie().dim() {
                let e = wh.table().lookup(&format!("e{}", i + 1)).unwrap() as usize;
                let s = wh.table().lookup(&format!("s{}", i + 1)).unwrap() as usize;
                images[self.weil_map[e] as usize] = eta.levels[n].component(i).clone();
                images[self.weil_map[s] as usize] = omega.levels[n].component(i).clone();
            }
            for (g, &t) in self.a_map.iter().enumerate() {
                let gen = Element::generator(self.a.table(), g as u32);
                images[t as usize] = fa.include(&self.tower.embed_base(n, &gen));
            }
            let hom = Homomorphism::new(self.total.table(), fa.table(), images).expect("K keeps degrees");
            out.add_at(n, &fat.integrate_level(n, &hom.apply(x)));
        }
        out
    }
}

/// The model `a = W(g) ⊗ W(h)` with G acting on the first factor and H on the
/// second, and `θ = η_g + C·η_h` for a linear map `C : h → g` (rows indexed by
/// g). `θ` is a G-connection when `C` is G-equivariant, which for the trivial
/// G-action on `W(h)` means `g` abelian or `C = 0`, and it is H-invariant when
/// `C` kills `[h, h]`.
pub fn product_model(g: &LieAlgebraData, h: &LieAlgebraData, c: &[Vec<crate::algebra::Rational>]) -> Result<(GdAlgebra, GVector)> {
    if c.len() != g.dim() || c.iter().any(|row| row.len() != h.dim()) {
        return Err(Error::Dimension("C must be dim g × dim h".into()));
    }
    let wg = weil_algebra(g).with_trivial_structure(h);
    let wh = weil_h(g, h);
    let (a, _) = tensor_many(&[(&wg, "g", "0"), (&wh, "h", "1")])?;
    let mut theta = Vec::with_capacity(g.dim());
    for (i, row) in c.iter().enumerate() {
        let mut comp = a.gen(&format!("ge{}", i + 1))?;
        for (j, cij) in row.iter().enumerate() {
            comp.add_scaled(&a.gen(&format!("he{}", j + 1))?, cij);
        }
        theta.push(comp);
    }
    Ok((a, GVector::new(theta)?))
}
