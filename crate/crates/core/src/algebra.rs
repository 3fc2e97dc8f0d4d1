//! Free graded-commutative algebras over the rationals.
//!
//! Every algebra in the crate (Weil algebras, tensor towers, polynomial forms on
//! simplices tensored with a level) is free graded-commutative on a finite table
//! of generators. Elements are kept in a canonical normal form: monomials list
//! their factors in the table order, odd generators appear at most once, and the
//! Koszul sign of every reordering is folded into the coefficient.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num::{One, Signed, Zero};

use crate::error::{presentation, Result};

pub type Rational = num::BigRational;

pub fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn q_frac(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub id: String,
    pub degree: u32,
    pub tags: Vec<String>,
}

impl Generator {
    pub fn new(id: impl Into<String>, degree: u32) -> Self {
        Generator { id: id.into(), degree, tags: Vec::new() }
    }

    pub fn tagged(id: impl Into<String>, degree: u32, tags: Vec<String>) -> Self {
        Generator { id: id.into(), degree, tags }
    }

    pub fn is_odd(&self) -> bool {
        self.degree % 2 == 1
    }
}

/// Compares strings with embedded digit runs numerically, so "s2" < "s10".
pub fn natural_cmp(a: &str, b: &str) -> Ordering {
    let (mut ai, mut bi) = (a.char_indices().peekable(), b.char_indices().peekable());
    loop {
        match (ai.peek().copied(), bi.peek().copied()) {
            (None, None) => return Ordering::Equal,
            (None, Some(_)) => return Ordering::Less,
            (Some(_), None) => return Ordering::Greater,
            (Some((sa, ca)), Some((sb, cb))) => {
                if ca.is_ascii_digit() && cb.is_ascii_digit() {
                    let mut ea = sa;
                    while let Some(&(i, c)) = ai.peek() {
                        if !c.is_ascii_digit() {
                            break;
                        }
                        ea = i + c.len_utf8();
                        ai.next();
                    }
                    let mut eb = sb;
                    while let Some(&(i, c)) = bi.peek() {
                        if !c.is_ascii_digit() {
                            break;
                        }
                        eb = i + c.len_utf8();
                        bi.next();
                    }
                    let (na, nb) = (a[sa..ea].trim_start_matches('0'), b[sb..eb].trim_start_matches('0'));
                    let ord = na.len().cmp(&nb.len()).then_with(|| na.cmp(nb));
                    if ord != Ordering::Equal {
                        return ord;
                    }
                } else {
                    if ca != cb {
                        return ca.cmp(&cb);
                    }
                    ai.next();
                    bi.next();
                }
            }
        }
    }
}

fn generator_order(a: &Generator, b: &Generator) -> Ordering {
    for (ta, tb) in a.tags.iter().zip(&b.tags) {
        let ord = natural_cmp(ta, tb);
        if ord != Ordering::Equal {
            return ord;
        }
    }
    a.tags.len().cmp(&b.tags.len()).then_with(|| natural_cmp(&a.id, &b.id))
}

/// An ordered generator table. The position of a generator in the table is its
/// place in the global order (tags first, then id, both compared naturally).
#[derive(Debug, Clone)]
pub struct GenTable {
    gens: Vec<Generator>,
    index: HashMap<String, u32>,
}

impl PartialEq for GenTable {
    fn eq(&self, other: &Self) -> bool {
        self.gens == other.gens
    }
}

impl Eq for GenTable {}

impl GenTable {
    pub fn new(mut gens: Vec<Generator>) -> Result<Arc<Self>> {
        gens.sort_by(generator_order);
        let mut index = HashMap::with_capacity(gens.len());
        for (i, g) in gens.iter().enumerate() {
            if index.insert(g.id.clone(), i as u32).is_some() {
                return Err(presentation(format!("duplicate generator id `{}`", g.id)));
            }
        }
        Ok(Arc::new(GenTable { gens, index }))
    }

    pub fn empty() -> Arc<Self> {
        Arc::new(GenTable { gens: Vec::new(), index: HashMap::new() })
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn get(&self, idx: u32) -> &Generator {
        &self.gens[idx as usize]
    }

    pub fn lookup(&self, id: &str) -> Option<u32> {
        self.index.get(id).copied()
    }

    pub fn lookup_or_err(&self, id: &str) -> Result<u32> {
        self.lookup(id).ok_or_else(|| presentation(format!("unknown generator `{id}`")))
    }

    pub fn degree_of(&self, idx: u32) -> u32 {
        self.gens[idx as usize].degree
    }

    pub fn is_odd(&self, idx: u32) -> bool {
        self.gens[idx as usize].degree % 2 == 1
    }

    pub fn monomial_degree(&self, m: &Monomial) -> u32 {
        m.0.iter().map(|&(g, e)| self.degree_of(g) * e).sum()
    }

    /// Product of two monomials in normal form, with the Koszul sign.
    /// `None` means the product vanishes (an odd generator repeated).
    pub fn mul_monomials(&self, a: &Monomial, b: &Monomial) -> Option<(Monomial, bool)> {
        let mut out = Vec::with_capacity(a.0.len() + b.0.len());
        let mut odd_left_in_a = a.0.iter().filter(|&&(g, _)| self.is_odd(g)).count();
        let mut negative = false;
        let (mut i, mut j) = (0, 0);
        while i < a.0.len() || j < b.0.len() {
            let take_a = match (a.0.get(i), b.0.get(j)) {
                (Some(&(ga, _)), Some(&(gb, _))) => match ga.cmp(&gb) {
                    Ordering::Less => Some(true),
                    Ordering::Greater => Some(false),
                    Ordering::Equal => None,
                },
                (Some(_), None) => Some(true),
                (None, Some(_)) => Some(false),
                (None, None) => unreachable!(),
            };
            match take_a {
                Some(true) => {
                    let (g, e) = a.0[i];
                    if self.is_odd(g) {
                        odd_left_in_a -= 1;
                    }
                    out.push((g, e));
                    i += 1;
                }
                Some(false) => {
                    let (g, e) = b.0[j];
                    if self.is_odd(g) && odd_left_in_a % 2 == 1 {
                        negative = !negative;
                    }
                    out.push((g, e));
                    j += 1;
                }
                None => {
                    let (g, ea) = a.0[i];
                    let (_, eb) = b.0[j];
                    if self.is_odd(g) {
                        return None;
                    }
                    out.push((g, ea + eb));
                    i += 1;
                    j += 1;
                }
            }
        }
        Some((Monomial(out), negative))
    }
}

/// A product of generators, listed in table order with exponents.
/// Odd generators never carry an exponent above one.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(pub Vec<(u32, u32)>);

impl Monomial {
    pub fn unit() -> Self {
        Monomial(Vec::new())
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn generator(idx: u32) -> Self {
        Monomial(vec![(idx, 1)])
    }

    pub fn factors(&self) -> &[(u32, u32)] {
        &self.0
    }

    pub fn exponent_of(&self, g: u32) -> u32 {
        self.0.iter().find(|&&(h, _)| h == g).map_or(0, |&(_, e)| e)
    }

    /// Builds a normal-form monomial from unordered factors; returns the sign
    /// picked up while sorting, or `None` if an odd generator repeats.
    pub fn from_factors(table: &GenTable, factors: &[(u32, u32)]) -> Option<(Monomial, bool)> {
        let mut acc = (Monomial::unit(), false);
        for &(g, e) in factors {
            if e == 0 {
                continue;
            }
            if table.is_odd(g) && e > 1 {
                return None;
            }
            let (m, s) = table.mul_monomials(&acc.0, &Monomial(vec![(g, e)]))?;
            acc = (m, acc.1 ^ s);
        }
        Some(acc)
    }
}

/// A finite linear combination of normal-form monomials.
#[derive(Clone)]
pub struct Element {
    table: Arc<GenTable>,
    terms: BTreeMap<Monomial, Rational>,
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        same_table(&self.table, &other.table) && self.terms == other.terms
    }
}

impl Eq for Element {}

pub fn same_table(a: &Arc<GenTable>, b: &Arc<GenTable>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Element {
    pub fn zero(table: &Arc<GenTable>) -> Self {
        Element { table: table.clone(), terms: BTreeMap::new() }
    }

    pub fn one(table: &Arc<GenTable>) -> Self {
        Self::scalar(table, Rational::one())
    }

    pub fn scalar(table: &Arc<GenTable>, c: Rational) -> Self {
        Self::monomial(table, Monomial::unit(), c)
    }

    pub fn monomial(table: &Arc<GenTable>, m: Monomial, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Element { table: table.clone(), terms }
    }

    pub fn generator(table: &Arc<GenTable>, idx: u32) -> Self {
        Self::monomial(table, Monomial::generator(idx), Rational::one())
    }

    pub fn generator_by_id(table: &Arc<GenTable>, id: &str) -> Result<Self> {
        Ok(Self::generator(table, table.lookup_or_err(id)?))
    }

    /// Builds an element from `(coefficient, factors)` pairs whose factors may be
    /// unordered.
    pub fn from_terms<I>(table: &Arc<GenTable>, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Rational, Vec<(u32, u32)>)>,
    {
        let mut out = Element::zero(table);
        for (c, factors) in terms {
            if let Some(&(g, _)) = factors.iter().find(|&&(g, _)| g as usize >= table.len()) {
                return Err(presentation(format!("generator index {g} outside table")));
            }
            if let Some((m, neg)) = Monomial::from_factors(table, &factors) {
                out.add_term(m, if neg { -c } else { c });
            }
        }
        Ok(out)
    }

    pub fn table(&self) -> &Arc<GenTable> {
        &self.table
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn term_map(&self) -> &BTreeMap<Monomial, Rational> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// The coefficient of the unit monomial.
    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Monomial::unit())
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Element, c: &Rational) {
        assert_same_table(&self.table, &other.table);
        if c.is_zero() {
            return;
        }
        for (m, v) in &other.terms {
            self.add_term(m.clone(), v * c);
        }
    }

    pub fn scale(&self, c: &Rational) -> Element {
        if c.is_zero() {
            return Element::zero(&self.table);
        }
        Element {
            table: self.table.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    /// Degrees present in the element (sorted, deduplicated).
    pub fn degrees(&self) -> Vec<u32> {
        let mut d: Vec<u32> = self.terms.keys().map(|m| self.table.monomial_degree(m)).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// The degree of a nonzero homogeneous element; `None` for zero or mixed.
    pub fn degree(&self) -> Option<u32> {
        let d = self.degrees();
        (d.len() == 1).then(|| d[0])
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degrees().len() <= 1
    }

    pub fn homogeneous_part(&self, degree: u32) -> Element {
        self.filter(|m| self.table.monomial_degree(m) == degree)
    }

    pub fn filter(&self, mut keep: impl FnMut(&Monomial) -> bool) -> Element {
        Element {
            table: self.table.clone(),
            terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, v)| (m.clone(), v.clone())).collect(),
        }
    }

    /// Graded-commutative product; fails when the operands live over different
    /// generator tables.
    pub fn multiply(&self, other: &Element) -> Result<Element> {
        if !same_table(&self.table, &other.table) {
            return Err(presentation("operands live over different generator tables"));
        }
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Element) -> Element {
        let mut out = Element::zero(&self.table);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some((m, neg)) = self.table.mul_monomials(ma, mb) {
                    let c = ca * cb;
                    out.add_term(m, if neg { -c } else { c });
                }
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Element {
        let mut acc = Element::one(&self.table);
        for _ in 0..e {
            acc = acc.mul_unchecked(self);
        }
        acc
    }

    /// Re-expresses the element over another table using an index map
    /// (generators map to generators). The images are multiplied in order so
    /// Koszul signs are recomputed.
    pub fn relabel(&self, target: &Arc<GenTable>, map: &[u32]) -> Element {
        let mut out = Element::zero(target);
        for (m, c) in &self.terms {
            let factors: Vec<(u32, u32)> = m.0.iter().map(|&(g, e)| (map[g as usize], e)).collect();
            if let Some((mm, neg)) = Monomial::from_factors(target, &factors) {
                out.add_term(mm, if neg { -c.clone() } else { c.clone() });
            }
        }
        out
    }
}

fn assert_same_table(a: &Arc<GenTable>, b: &Arc<GenTable>) {
    assert!(same_table(a, b), "elements live over different generator tables");
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else if k > 0 { "+" } else { "" };
            if k > 0 {
                write!(f, " {sign} ")?;
            } else {
                write!(f, "{sign}")?;
            }
            let a = c.abs();
            let mono = format_monomial(&self.table, m);
            if mono.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{a}*{mono}")?;
            }
        }
        Ok(())
    }
}

pub fn format_monomial(table: &GenTable, m: &Monomial) -> String {
    m.0.iter()
        .map(|&(g, e)| {
            let id = &table.get(g).id;
            if e == 1 {
                id.clone()
            } else {
                format!("{id}^{e}")
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        out.add_scaled(rhs, &Rational::one());
        out
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Rational::one());
        out
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        self.scale(&-Rational::one())
    }
}

impl Mul for &Element {
    type Output = Element;
    fn mul(self, rhs: &Element) -> Element {
        assert_same_table(&self.table, &rhs.table);
        self.mul_unchecked(rhs)
    }
}

impl Add for Element {
    type Output = Element;
    fn add(self, rhs: Element) -> Element {
        &self + &rhs
    }
}

impl Sub for Element {
    type Output = Element;
    fn sub(self, rhs: Element) -> Element {
        &self - &rhs
    }
}

impl Mul for Element {
    type Output = Element;
    fn mul(self, rhs: Element) -> Element {
        &self * &rhs
    }
}

impl Neg for Element {
    type Output = Element;
    fn neg(self) -> Element {
        -&self
    }
}

/// A derivation of fixed degree, given by its values on generators.
#[derive(Clone, Debug)]
pub struct Derivation {
    degree: i32,
    images: Vec<Element>,
}

impl Derivation {
    /// Checks that every image is zero or homogeneous of degree
    /// `deg(generator) + degree`.
    pub fn new(table: &Arc<GenTable>, degree: i32, images: Vec<Element>) -> Result<Self> {
        if images.len() != table.len() {
            return Err(presentation(format!(
                "derivation has {} images for {} generators",
                images.len(),
                table.len()
            )));
        }
        for (g, img) in table.generators().iter().zip(&images) {
            if !same_table(img.table(), table) {
                return Err(presentation(format!("image of `{}` lives over another table", g.id)));
            }
            if img.is_zero() {
                continue;
            }
            let want = g.degree as i32 + degree;
            match img.degree() {
                Some(d) if d as i32 == want => {}
                Some(d) => {
                    return Err(presentation(format!(
                        "image of `{}` has degree {d}, expected {want}",
                        g.id
                    )))
                }
                None => return Err(presentation(format!("image of `{}` is not homogeneous", g.id))),
            }
        }
        Ok(Derivation { degree, images })
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn images(&self) -> &[Element] {
        &self.images
    }

    pub fn apply(&self, x: &Element) -> Element {
        let table = x.table();
        let mut out = Element::zero(table);
        for (m, c) in x.terms() {
            out.add_scaled(&self.apply_monomial(table, m), c);
        }
        out
    }

    fn apply_monomial(&self, table: &Arc<GenTable>, m: &Monomial) -> Element {
        let mut out = Element::zero(table);
        let mut prefix_degree = 0u32;
        for (k, &(g, e)) in m.0.iter().enumerate() {
            let img = &self.images[g as usize];
            if !img.is_zero() {
                // D(x^e) = e x^(e-1) D(x) for even x; odd x has e = 1.
                let mut rest: Vec<(u32, u32)> = m.0[k + 1..].to_vec();
                if e > 1 {
                    rest.insert(0, (g, e - 1));
                }
                let prefix = Monomial(m.0[..k].to_vec());
                let suffix = Monomial(rest);
                let mut coeff = q(e as i64);
                if (self.degree.rem_euclid(2) as u32) * prefix_degree % 2 == 1 {
                    coeff = -coeff;
                }
                for (im, ic) in &img.terms {
                    let Some((m1, s1)) = table.mul_monomials(&prefix, im) else { continue };
                    let Some((m2, s2)) = table.mul_monomials(&m1, &suffix) else { continue };
                    let c = &coeff * ic;
                    out.add_term(m2, if s1 ^ s2 { -c } else { c });
                }
            }
            prefix_degree += table.degree_of(g) * e;
        }
        out
    }
}

/// Extends `images` (one per generator) to the derivation of the given degree and
/// applies it to `target`.
pub fn extend_derivation(degree: i32, images: Vec<Element>, target: &Element) -> Result<Element> {
    let d = Derivation::new(target.table(), degree, images)?;
    Ok(d.apply(target))
}

/// A unital algebra homomorphism between free graded-commutative algebras,
/// given by degree-preserving images of the source generators.
#[derive(Clone, Debug)]
pub struct Homomorphism {
    source: Arc<GenTable>,
    target: Arc<GenTable>,
    images: Vec<Element>,
}

impl Homomorphism {
    pub fn new(source: &Arc<GenTable>, target: &Arc<GenTable>, images: Vec<Element>) -> Result<Self> {
        if images.len() != source.len() {
            return Err(presentation(format!(
                "homomorphism has {} images for {} generators",
                images.len(),
                source.len()
            )));
        }
        for (g, img) in source.generators().iter().zip(&images) {
            if !same_table(img.table(), target) {
                return Err(presentation(format!("image of `{}` lives over another table", g.id)));
            }
            if img.is_zero() {
                continue;
            }
            if img.degree() != Some(g.degree) {
                return Err(presentation(format!(
                    "image of `{}` does not have degree {}",
                    g.id, g.degree
                )));
            }
        }
        Ok(Homomorphism { source: source.clone(), target: target.clone(), images })
    }

    /// The homomorphism sending generator `i` to generator `map[i]`.
    pub fn relabeling(source: &Arc<GenTable>, target: &Arc<GenTable>, map: &[u32]) -> Result<Self> {
        let images = map.iter().map(|&g| Element::generator(target, g)).collect();
        Self::new(source, target, images)
    }

    pub fn identity(table: &Arc<GenTable>) -> Self {
        let images = (0..table.len() as u32).map(|g| Element::generator(table, g)).collect();
        Homomorphism { source: table.clone(), target: table.clone(), images }
    }

    pub fn source(&self) -> &Arc<GenTable> {
        &self.source
    }

    pub fn target(&self) -> &Arc<GenTable> {
        &self.target
    }

    pub fn images(&self) -> &[Element] {
        &self.images
    }

    pub fn apply(&self, x: &Element) -> Element {
        assert_same_table(x.table(), &self.source);
        let mut out = Element::zero(&self.target);
        for (m, c) in x.terms() {
            // single-term images are multiplied monomially; the rest as elements
            let mut mono = (Monomial::unit(), c.clone());
            let mut general: Option<Element> = None;
            let mut vanished = false;
            for &(g, e) in &m.0 {
                let img = &self.images[g as usize];
                if img.terms.len() == 1 {
                    let (im, ic) = img.terms.iter().next().unwrap();
                    for _ in 0..e {
                        match self.target.mul_monomials(&mono.0, im) {
                            Some((mm, neg)) => {
                                let v = &mono.1 * ic;
                                mono = (mm, if neg { -v } else { v });
                            }
                            None => {
                                vanished = true;
                                break;
                            }
                        }
                    }
                } else {
                    let p = img.pow(e);
                    let lead = Element::monomial(&self.target, mono.0.clone(), mono.1.clone());
                    let acc = match general.take() {
                        Some(gacc) => &gacc * &lead,
                        None => lead,
                    };
                    mono = (Monomial::unit(), Rational::one());
                    general = Some(&acc * &p);
                }
                if vanished || general.as_ref().is_some_and(Element::is_zero) {
                    vanished = true;
                    break;
                }
            }
            if vanished {
                continue;
            }
            match general {
                None => out.add_term(mono.0, mono.1),
                Some(gacc) => {
                    let tail = Element::monomial(&self.target, mono.0, mono.1);
                    out.add_scaled(&(&gacc * &tail), &Rational::one());
                }
            }
        }
        out
    }

    /// `self ∘ first`.
    pub fn compose_after(&self, first: &Homomorphism) -> Homomorphism {
        let images = first.images.iter().map(|x| self.apply(x)).collect();
        Homomorphism { source: first.source.clone(), target: self.target.clone(), images }
    }
}

pub fn extend_homomorphism(
    source: &Arc<GenTable>,
    target_table: &Arc<GenTable>,
    images: Vec<Element>,
    x: &Element,
) -> Result<Element> {
    let h = Homomorphism::new(source, target_table, images)?;
    if !same_table(x.table(), source) {
        return Err(presentation("argument does not live over the source table"));
    }
    Ok(h.apply(x))
}

/// All normal-form monomials of exactly `degree`, in increasing monomial order.
/// Degree-zero generators would make the window infinite and are rejected.
pub fn degree_window_basis(table: &GenTable, degree: u32) -> Result<Vec<Monomial>> {
    if let Some(g) = table.generators().iter().find(|g| g.degree == 0) {
        return Err(presentation(format!(
            "degree window is infinite: generator `{}` has degree 0",
            g.id
        )));
    }
    let mut out = Vec::new();
    let mut current = Vec::new();
    enumerate(table, 0, degree, &mut current, &mut out);
    out.sort();
    Ok(out)
}

fn enumerate(table: &GenTable, start: usize, remaining: u32, current: &mut Vec<(u32, u32)>, out: &mut Vec<Monomial>) {
    if remaining == 0 {
        out.push(Monomial(current.clone()));
        return;
    }
    for g in start..table.len() {
        let deg = table.degree_of(g as u32);
        if deg > remaining {
            continue;
        }
        let max_e = if deg % 2 == 1 { 1 } else { remaining / deg };
        for e in 1..=max_e {
            current.push((g as u32, e));
            enumerate(table, g + 1, remaining - deg * e, current, out);
            current.pop();
        }
    }
}
