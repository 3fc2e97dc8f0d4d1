//! JSON documents. Every file carries a `kind` field; rationals are strings
//! such as `"-3/2"`, elements are lists of terms `{c, m}` where `m` lists
//! `[generator id, exponent]` pairs, and all indices are 0-based.

use std::collections::BTreeMap;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{Element, GenTable, Generator, Rational};
use crate::chern_weil::{pair_copy, weil_pair_host, PseudoConnection};
use crate::error::{presentation, Error, Result};
use crate::gda::{GVector, GdAlgebra};
use crate::groupoid::{ArrowRecord, BundleCocycle, FiniteGroup, FiniteGroupoid};
use crate::lie::LieAlgebraData;
use crate::simplicial::{BigradedElement, SimplicialGda};
use crate::weil::{canonical_connection, weil_algebra, InvariantPolynomial};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Document {
    LieAlgebra(LieDoc),
    Weil(WeilDoc),
    GdAlgebra(GdAlgebraDoc),
    InvariantPolynomial(PolynomialDoc),
    Connection(ConnectionDoc),
    LieAutomorphism(MatrixDoc),
    BottTu(BottTuDoc),
    Groupoid(GroupoidDoc),
    Bundle(BundleDoc),
    Cocycle(CocycleDoc),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::LieAlgebra(_) => "lie_algebra",
            Document::Weil(_) => "weil",
            Document::GdAlgebra(_) => "gd_algebra",
            Document::InvariantPolynomial(_) => "invariant_polynomial",
            Document::Connection(_) => "connection",
            Document::LieAutomorphism(_) => "lie_automorphism",
            Document::BottTu(_) => "bott_tu",
            Document::Groupoid(_) => "groupoid",
            Document::Bundle(_) => "bundle",
            Document::Cocycle(_) => "cocycle",
        }
    }
}

/// Parses a document, reporting line and column on malformed input.
pub fn parse_document(text: &str) -> Result<Document> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("line {}, column {}: {e}", e.line(), e.column())))
}

pub fn to_json<T: Serialize>(x: &T) -> String {
    serde_json::to_string_pretty(x).expect("documents serialize")
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    Rational::from_str(s.trim()).map_err(|_| Error::Parse(format!("not a rational number: {s:?}")))
}

fn rationals(v: &[String]) -> Result<Vec<Rational>> {
    v.iter().map(|s| parse_rational(s)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LieDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub dim: usize,
    /// `[i, j, k, f^i_{jk}]`, all nonzero entries (antisymmetric partners included)
    pub structure_constants: Vec<(usize, usize, usize, String)>,
}

impl LieDoc {
    pub fn from_lie(lie: &LieAlgebraData) -> Self {
        LieDoc {
            name: lie.name().map(str::to_string),
            dim: lie.dim(),
            structure_constants: lie.nonzero_entries().into_iter().map(|(i, j, k, c)| (i, j, k, c.to_string())).collect(),
        }
    }

    pub fn build(&self) -> Result<LieAlgebraData> {
        let entries = self
            .structure_constants
            .iter()
            .map(|(i, j, k, c)| Ok((*i, *j, *k, parse_rational(c)?)))
            .collect::<Result<Vec<_>>>()?;
        LieAlgebraData::from_entries(self.name.clone(), self.dim, &entries)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeilDoc {
    pub lie: LieDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDoc {
    pub c: String,
    pub m: Vec<(String, u32)>,
}

pub type ElementDoc = Vec<TermDoc>;

pub fn element_to_doc(x: &Element) -> ElementDoc {
    let table = x.table();
    x.terms()
        .map(|(m, c)| TermDoc {
            c: c.to_string(),
            m: m.factors().iter().map(|&(g, e)| (table.get(g).id.clone(), e)).collect(),
        })
        .collect()
}

pub fn element_from_doc(table: &Arc<GenTable>, doc: &[TermDoc]) -> Result<Element> {
    let terms = doc
        .iter()
        .map(|t| {
            let factors = t.m.iter().map(|(id, e)| Ok((table.lookup_or_err(id)?, *e))).collect::<Result<Vec<_>>>()?;
            Ok((parse_rational(&t.c)?, factors))
        })
        .collect::<Result<Vec<_>>>()?;
    Element::from_terms(table, terms)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorDoc {
    pub id: String,
    pub degree: u32,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub tags: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureDoc {
    pub lie: LieDoc,
    /// `contractions[j][id]` is `i_{X_j}` of the generator; missing ids map to 0
    pub contractions: Vec<BTreeMap<String, ElementDoc>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GdAlgebraDoc {
    pub generators: Vec<GeneratorDoc>,
    /// `d` of each generator; missing ids map to 0
    pub d: BTreeMap<String, ElementDoc>,
    pub structures: Vec<StructureDoc>,
}

fn images_from_doc(table: &Arc<GenTable>, map: &BTreeMap<String, ElementDoc>) -> Result<Vec<Element>> {
    for id in map.keys() {
        table.lookup_or_err(id)?;
    }
    table
        .generators()
        .iter()
        .map(|g| match map.get(&g.id) {
            Some(doc) => element_from_doc(table, doc),
            None => Ok(Element::zero(table)),
        })
        .collect()
}

fn images_to_doc(table: &GenTable, images: &[Element]) -> BTreeMap<String, ElementDoc> {
    table
        .generators()
        .iter()
        .zip(images)
        .filter(|(_, x)| !x.is_zero())
        .map(|(g, x)| (g.id.clone(), element_to_doc(x)))
        .collect()
}

impl GdAlgebraDoc {
    pub fn from_algebra(a: &GdAlgebra) -> Self {
        let table = a.table();
        GdAlgebraDoc {
            generators: table
                .generators()
                .iter()
                .map(|g| GeneratorDoc { id: g.id.clone(), degree: g.degree, tags: g.tags.clone() })
                .collect(),
            d: images_to_doc(table, a.differential().images()),
            structures: a
                .structures()
                .iter()
                .map(|s| StructureDoc {
                    lie: LieDoc::from_lie(s.lie()),
                    contractions: (0..s.lie().dim()).map(|j| images_to_doc(table, s.contraction(j).images())).collect(),
                })
                .collect(),
        }
    }

    pub fn build(&self) -> Result<GdAlgebra> {
        let table = GenTable::new(self.generators.iter().map(|g| Generator::tagged(g.id.clone(), g.degree, g.tags.clone())).collect())?;
        let d = images_from_doc(&table, &self.d)?;
        let structures = self
            .structures
            .iter()
            .map(|s| {
                let lie = s.lie.build()?;
                let images = s.contractions.iter().map(|m| images_from_doc(&table, m)).collect::<Result<Vec<_>>>()?;
                Ok((lie, images))
            })
            .collect::<Result<Vec<_>>>()?;
        GdAlgebra::new(table, d, structures)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyTermDoc {
    pub exponents: Vec<u32>,
    pub c: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialDoc {
    /// when present, validation checks invariance against it
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lie: Option<LieDoc>,
    pub dim: usize,
    pub terms: Vec<PolyTermDoc>,
}

impl PolynomialDoc {
    pub fn from_polynomial(f: &InvariantPolynomial) -> Self {
        PolynomialDoc {
            lie: None,
            dim: f.dim(),
            terms: f.terms().iter().map(|(e, c)| PolyTermDoc { exponents: e.clone(), c: c.to_string() }).collect(),
        }
    }

    /// Checks the dimension and invariance under `lie`.
    pub fn build(&self, lie: &LieAlgebraData) -> Result<InvariantPolynomial> {
        if self.dim != lie.dim() {
            return Err(Error::Dimension(format!("polynomial in {} variables for a Lie algebra of dimension {}", self.dim, lie.dim())));
        }
        let terms = self.terms.iter().map(|t| Ok((t.exponents.clone(), parse_rational(&t.c)?))).collect::<Result<Vec<_>>>()?;
        InvariantPolynomial::new(lie, terms)
    }
}

/// The simplicial algebras a connection document can live on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HostKind {
    /// `W(g)_•`, level-0 ids `0:e1`, `0:s1`, …
    WeilTower,
    /// `(W(g) ⊗ W(g))_•`, level-0 ids `0:ae1`, `0:be1`, …
    WeilPair,
    /// the constant simplicial algebra on `W(g)`, ids `b:e1`, …
    ConstantWeil,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectionDoc {
    pub lie: LieDoc,
    pub host: HostKind,
    /// components on level 0; omitted means the canonical `η` (the `a` copy
    /// on a pair host)
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub components: Option<Vec<ElementDoc>>,
}

/// A host built from a connection document, shared by every connection
/// parsed against it.
#[derive(Clone, Debug)]
pub struct Host {
    pub lie: LieAlgebraData,
    pub kind: HostKind,
    pub simplicial: Arc<SimplicialGda>,
}

impl Host {
    pub fn build(lie: &LieAlgebraData, kind: HostKind) -> Self {
        let simplicial = match kind {
            HostKind::WeilTower => SimplicialGda::tensor_power(&weil_algebra(lie)),
            HostKind::WeilPair => weil_pair_host(lie).1,
            HostKind::ConstantWeil => SimplicialGda::constant(&weil_algebra(lie)),
        };
        Host { lie: lie.clone(), kind, simplicial }
    }

    pub fn default_connection(&self) -> Result<GVector> {
        let s = &self.simplicial;
        match self.kind {
            HostKind::WeilTower => Ok(canonical_connection(s.tower()).map(|x| s.embed_tower(0, 0, x))),
            HostKind::WeilPair => pair_copy(s, "a"),
            HostKind::ConstantWeil => Ok(canonical_connection(s.base()).map(|x| s.embed_base(0, x))),
        }
    }
}

impl ConnectionDoc {
    pub fn host(&self) -> Result<Host> {
        Ok(Host::build(&self.lie.build()?, self.host))
    }

    /// Parses the components on `host`, which must match the document.
    pub fn build_on(&self, host: &Host) -> Result<PseudoConnection> {
        if self.host != host.kind || self.lie.build()? != host.lie {
            return Err(presentation("connection lives on a different host"));
        }
        let theta = match &self.components {
            None => host.default_connection()?,
            Some(cs) => {
                if cs.len() != host.lie.dim() {
                    return Err(Error::Dimension(format!("{} components for dimension {}", cs.len(), host.lie.dim())));
                }
                let table = host.simplicial.table(0);
                GVector::new(cs.iter().map(|c| element_from_doc(&table, c)).collect::<Result<Vec<_>>>()?)?
            }
        };
        PseudoConnection::new(&host.simplicial, theta)
    }

    pub fn build(&self) -> Result<(Host, PseudoConnection)> {
        let host = self.host()?;
        let pc = self.build_on(&host)?;
        Ok((host, pc))
    }
}

/// A square matrix; for a Lie automorphism column `j` is the image of `X_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixDoc {
    pub matrix: Vec<Vec<String>>,
}

impl MatrixDoc {
    pub fn build(&self) -> Result<Vec<Vec<Rational>>> {
        self.matrix.iter().map(|r| rationals(r)).collect()
    }
}

/// The product model `W(g) ⊗ W(h)` with `θ = η_g + C·η_h`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BottTuDoc {
    pub g: LieDoc,
    pub h: LieDoc,
    /// `dim g` rows of `dim h` entries
    pub c: Vec<Vec<String>>,
}

impl BottTuDoc {
    pub fn build(&self) -> Result<(LieAlgebraData, LieAlgebraData, Vec<Vec<Rational>>)> {
        Ok((self.g.build()?, self.h.build()?, self.c.iter().map(|r| rationals(r)).collect::<Result<_>>()?))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowDoc {
    pub id: String,
    pub src: String,
    pub tgt: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupoidDoc {
    pub objects: Vec<String>,
    pub arrows: Vec<ArrowDoc>,
    /// `[a, b, ab]` for every composable pair (`src a = tgt b`)
    pub composition: Vec<(String, String, String)>,
    pub identity: BTreeMap<String, String>,
    pub inverse: BTreeMap<String, String>,
}

impl GroupoidDoc {
    pub fn from_groupoid(g: &FiniteGroupoid) -> Self {
        let name = |a: usize| g.arrows()[a].id.clone();
        let mut composition = Vec::new();
        for a in 0..g.n_arrows() {
            for b in 0..g.n_arrows() {
                if let Some(c) = g.compose(a, b) {
                    composition.push((name(a), name(b), name(c)));
                }
            }
        }
        GroupoidDoc {
            objects: g.objects().to_vec(),
            arrows: g
                .arrows()
                .iter()
                .map(|a| ArrowDoc { id: a.id.clone(), src: g.objects()[a.src].clone(), tgt: g.objects()[a.tgt].clone() })
                .collect(),
            composition,
            identity: (0..g.n_objects()).map(|x| (g.objects()[x].clone(), name(g.identity(x)))).collect(),
            inverse: (0..g.n_arrows()).map(|a| (name(a), name(g.inverse(a)))).collect(),
        }
    }

    pub fn build(&self) -> Result<FiniteGroupoid> {
        let obj = |s: &str| self.objects.iter().position(|o| o == s).ok_or_else(|| presentation(format!("unknown object {s:?}")));
        let arr = |s: &str| self.arrows.iter().position(|a| a.id == s).ok_or_else(|| presentation(format!("unknown arrow {s:?}")));
        let arrows = self
            .arrows
            .iter()
            .map(|a| Ok(ArrowRecord { id: a.id.clone(), src: obj(&a.src)?, tgt: obj(&a.tgt)? }))
            .collect::<Result<Vec<_>>>()?;
        let n = arrows.len();
        let mut compose = vec![None; n * n];
        for (a, b, c) in &self.composition {
            compose[arr(a)? * n + arr(b)?] = Some(arr(c)?);
        }
        let mut identity = Vec::with_capacity(self.objects.len());
        for o in &self.objects {
            let id = self.identity.get(o).ok_or_else(|| presentation(format!("object {o:?} has no identity entry")))?;
            identity.push(arr(id)?);
        }
        let mut inverse = Vec::with_capacity(n);
        for a in &self.arrows {
            let inv = self.inverse.get(&a.id).ok_or_else(|| presentation(format!("arrow {:?} has no inverse entry", a.id)))?;
            inverse.push(arr(inv)?);
        }
        FiniteGroupoid::new(self.objects.clone(), arrows, compose, identity, inverse)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupDoc {
    pub elements: Vec<String>,
    /// `table[a][b]` is the name of `ab`
    pub table: Vec<Vec<String>>,
}

impl GroupDoc {
    pub fn from_group(g: &FiniteGroup) -> Self {
        let n = g.names();
        GroupDoc { elements: n.to_vec(), table: g.table().iter().map(|r| r.iter().map(|&x| n[x].clone()).collect()).collect() }
    }

    pub fn build(&self) -> Result<FiniteGroup> {
        let idx = |s: &str| self.elements.iter().position(|e| e == s).ok_or_else(|| presentation(format!("unknown group element {s:?}")));
        let table = self.table.iter().map(|r| r.iter().map(|x| idx(x)).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()?;
        FiniteGroup::new(self.elements.clone(), table).map_err(|e| match e {
            Error::Groupoid(m) => Error::Groupoid(format!("group: {m}")),
            other => other,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BundleDoc {
    pub groupoid: GroupoidDoc,
    pub group: GroupDoc,
    /// `ψ` on every arrow
    pub psi: BTreeMap<String, String>,
}

impl BundleDoc {
    pub fn from_bundle(b: &BundleCocycle) -> Self {
        BundleDoc {
            groupoid: GroupoidDoc::from_groupoid(&b.base),
            group: GroupDoc::from_group(&b.group),
            psi: b.psi.iter().enumerate().map(|(a, &g)| (b.base.arrows()[a].id.clone(), b.group.names()[g].clone())).collect(),
        }
    }

    pub fn build(&self) -> Result<BundleCocycle> {
        let base = self.groupoid.build()?;
        let group = self.group.build()?;
        let psi = base
            .arrows()
            .iter()
            .map(|a| {
                let g = self.psi.get(&a.id).ok_or_else(|| presentation(format!("ψ is missing on arrow {:?}", a.id)))?;
                group.lookup(g).ok_or_else(|| presentation(format!("unknown group element {g:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        BundleCocycle::new(base, group, psi)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelDoc {
    pub level: usize,
    pub terms: ElementDoc,
}

/// A cochain of a simplicial algebra, together with the connection document
/// that fixes its host.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CocycleDoc {
    pub connection: ConnectionDoc,
    pub levels: Vec<LevelDoc>,
}

pub fn bigraded_to_doc(x: &BigradedElement) -> Vec<LevelDoc> {
    x.parts().iter().map(|(&level, e)| LevelDoc { level, terms: element_to_doc(e) }).collect()
}

pub fn bigraded_from_doc(host: &SimplicialGda, levels: &[LevelDoc]) -> Result<BigradedElement> {
    let mut out = BigradedElement::zero();
    for l in levels {
        out.add_at(l.level, &element_from_doc(&host.table(l.level), &l.terms)?);
    }
    Ok(out)
}

/// Renders an element as LaTeX. Slot prefixes `n:` become superscripts.
pub fn latex_element(x: &Element) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let table = x.table();
    let mut out = String::new();
    for (k, (m, c)) in x.terms().enumerate() {
        let neg = c < &Rational::from_integer(0.into());
        let a = if neg { -c.clone() } else { c.clone() };
        if k > 0 {
            out.push_str(if neg { " - " } else { " + " });
        } else if neg {
            out.push('-');
        }
        let unit = m.is_unit();
        let one = a == Rational::from_integer(1.into());
        if !one || unit {
            if a.is_integer() {
                out.push_str(&a.to_string());
            } else {
                out.push_str(&format!("\\frac{{{}}}{{{}}}", a.numer(), a.denom()));
            }
        }
        for &(g, e) in m.factors() {
            let gen = latex_generator(&table.get(g).id);
            if e > 1 {
                out.push_str(&format!("{{{gen}}}^{{{e}}}"));
            } else {
                out.push_str(&gen);
            }
        }
    }
    out
}

fn latex_generator(id: &str) -> String {
    let (slot, name) = match id.split_once(':') {
        Some((s, n)) => (Some(s), n),
        None => (None, id),
    };
    let split = name.find(|c: char| c.is_ascii_digit()).unwrap_or(name.len());
    let (letters, digits) = name.split_at(split);
    let mut out = format!("\\mathrm{{{letters}}}");
    if !digits.is_empty() {
        out.push_str(&format!("_{{{digits}}}"));
    }
    if let Some(s) = slot {
        out = format!("{{{out}}}^{{({s})}}");
    }
    out
}

pub fn latex_bigraded(x: &BigradedElement) -> String {
    if x.is_zero() {
        return "0".into();
    }
    x.parts().iter().map(|(n, e)| format!("\\left[{}\\right]_{{{n}}}", latex_element(e))).collect::<Vec<_>>().join(" + ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chern_weil::z_theta_fat;

    #[test]
    fn weil_algebra_round_trips() {
        let w = weil_algebra(&LieAlgebraData::so3());
        let doc = GdAlgebraDoc::from_algebra(&w);
        let back = doc.build().unwrap();
        assert_eq!(GdAlgebraDoc::from_algebra(&back), doc);
        assert!(back.validate_presentation(4).passed);
    }

    #[test]
    fn lie_document_round_trips() {
        let doc = Document::LieAlgebra(LieDoc::from_lie(&LieAlgebraData::sl2()));
        assert_eq!(parse_document(&to_json(&doc)).unwrap(), doc);
    }

    #[test]
    fn malformed_json_reports_position() {
        let err = parse_document("{\n  \"kind\": \"lie_algebra\",\n  \"dim\": }").unwrap_err();
        assert!(matches!(&err, Error::Parse(m) if m.starts_with("line 3, column")), "{err}");
    }

    #[test]
    fn jacobi_failure_is_named() {
        let doc = LieDoc {
            name: None,
            dim: 3,
            structure_constants: vec![
                (2, 0, 1, "1".into()),
                (2, 1, 0, "-1".into()),
                (0, 0, 2, "1".into()),
                (0, 2, 0, "-1".into()),
            ],
        };
        assert!(matches!(doc.build(), Err(Error::Jacobi { .. })));
    }

    #[test]
    fn cocycles_round_trip() {
        let lie = LieAlgebraData::so3();
        let cdoc = ConnectionDoc { lie: LieDoc::from_lie(&lie), host: HostKind::WeilTower, components: None };
        let (host, pc) = cdoc.build().unwrap();
        let z = z_theta_fat(&pc, &InvariantPolynomial::killing(&lie).unwrap()).unwrap();
        let doc = Document::Cocycle(CocycleDoc { connection: cdoc, levels: bigraded_to_doc(&z) });
        let Document::Cocycle(parsed) = parse_document(&to_json(&doc)).unwrap() else { panic!() };
        assert_eq!(bigraded_from_doc(&host.simplicial, &parsed.levels).unwrap(), z);
    }

    #[test]
    fn bundles_round_trip() {
        let z4 = FiniteGroupoid::from_group(&FiniteGroup::cyclic(4));
        let b = BundleCocycle::new(z4, FiniteGroup::cyclic(2), vec![0, 1, 0, 1]).unwrap();
        let doc = BundleDoc::from_bundle(&b);
        assert_eq!(doc.build().unwrap(), b);
    }

    #[test]
    fn latex_of_a_curvature() {
        let w = weil_algebra(&LieAlgebraData::so3());
        let s = w.gen("s1").unwrap();
        assert_eq!(latex_element(&s.scale(&crate::algebra::q_frac(-1, 2))), "-\\frac{1}{2}\\mathrm{s}_{1}");
    }
}
